"""Space-size ratio curves, qubit-requirement reports, and gate-count estimates."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

from .circuits import build_initial_reflection, build_marked_reflection, build_pipeline
from .errors import CapacityError, ValidationError
from .problem import (COIN_FRESH, COIN_REUSE, FULL, REDUCED, Instance,
                      build_layout, comparison_needs_spare, job_register_width,
                      new_instance, offset_register_width, space_sizes)
from .statevector import SWAP, X, Circuit, GateOp

# Decomposition rule table, version v1:
#   m-controlled X        -> (2(m-2) + 1) ancilla-assisted Toffolis, 15 basic gates each
#   singly controlled phase-type gate -> 3 basic gates
#   m-controlled phase-type gate      -> ancilla-free gray-code walk, 3 * (2^m - 1);
#       no clean ancilla can be borrowed because the reflections condition on
#       every ancilla wire at once
#   anti-control          -> 2 extra X gates
#   SWAP                  -> 3 CNOTs, controls inherited by each
GATE_RULES_VERSION = "v1"


def _controlled_x_cost(m: int) -> int:
    if m <= 1:
        return 1
    return 15 * (2 * (m - 2) + 1)


def basic_gate_cost(op: GateOp) -> int:
    """Basic-gate count (generic 1-qubit + CNOT) of one op under rule table v1."""
    m = len(op.controls) + len(op.anti_controls)
    anti = 2 * len(op.anti_controls)
    if op.kind == SWAP:
        return anti + 3 * _controlled_x_cost(m + 1)
    if op.kind == X:
        return anti + _controlled_x_cost(m)
    if m == 0:
        return anti + 1
    if m == 1:
        return anti + 3
    return anti + 3 * ((1 << m) - 1)


def circuit_basic_cost(circuit: Circuit) -> int:
    return sum(basic_gate_cost(op) for op in circuit.ops)


@dataclass(frozen=True)
class RatioRow:
    machines: int
    jobs: int
    window: int
    mode: str
    space_size: int
    solutions: int
    sqrt_ratio: float


@dataclass(frozen=True)
class ResourceReport:
    machines: int
    jobs: int
    window: int
    max_offset: int
    mode: str
    coin_style: str
    data_qubits: int
    offset_qubits: int
    coin_qubits: int
    flag_qubits: int
    overlap_ancillas: int
    resource_ancillas: int
    compare_qubits: int
    total: int
    gate_count_per_iteration: int | None
    gate_rules_version: str

    def to_json_text(self) -> str:
        return json.dumps(asdict(self), indent=2) + "\n"


def _sqrt_ratio(space: int, solutions: int) -> float:
    # log-domain sqrt: space sizes overflow doubles long before ints give up
    return math.exp(0.5 * (math.log(space) - math.log(solutions)))


def ratio_curves(window: int, machine_counts, job_counts, budget: int | None = None,
                 ) -> list[RatioRow]:
    """Full and reduced sqrt(N/M) rows per (I, K) point; points past the
    enumeration budget are skipped."""
    rows: list[RatioRow] = []
    for i_count in machine_counts:
        for k_count in job_counts:
            inst = new_instance(i_count, k_count, window)
            try:
                sizes = space_sizes(inst) if budget is None else space_sizes(inst, budget)
            except CapacityError:
                continue
            for mode, space in ((FULL, sizes.n_full), (REDUCED, sizes.n_reduced)):
                rows.append(RatioRow(i_count, k_count, window, mode, space,
                                     sizes.m_solutions, _sqrt_ratio(space, sizes.m_solutions)))
    return rows


def ratio_rows_csv(rows) -> str:
    lines = ["I,K,C,mode,space_size,solutions,sqrt_ratio"]
    lines += [f"{r.machines},{r.jobs},{r.window},{r.mode},{r.space_size},"
              f"{r.solutions},{r.sqrt_ratio:.10g}" for r in rows]
    return "\n".join(lines) + "\n"


def qubit_totals(machines: int, jobs: int, window: int, max_offset: int, mode: str,
                 coin_style: str = COIN_REUSE) -> dict:
    """Wire counts from raw parameters; works for any window width >= 2.

    Mirrors the layout builder arithmetic so the scaling analyses can cover
    window widths the circuit pipeline does not accept.
    """
    if mode not in (FULL, REDUCED):
        raise ValidationError(f"mode must be {FULL!r} or {REDUCED!r}")
    if window < 2:
        raise ValidationError("window must be >= 2")
    widths = [job_register_width(window, max_offset, k) for k in range(jobs)]
    ow = offset_register_width(max_offset)
    data = machines * sum(widths)
    offset_q = machines * ow
    coin = 0
    flags = 0
    spare = 0
    if mode == REDUCED:
        coin_w = max(1, math.ceil(math.log2(window)))
        coin = coin_w * (1 if coin_style == COIN_REUSE else max(0, jobs - 1))
    else:
        flags = machines * (2 * (jobs - 1) + (2 if max_offset > 0 else 0))
        need = any(comparison_needs_spare(window, widths[k], widths[k + 1])
                   for k in range(jobs - 1))
        if max_offset > 0:
            need = need or comparison_needs_spare(window, ow, widths[0])
        spare = 1 if need else 0
    overlap = machines * (machines - 1) // 2 * jobs
    resource = 1
    return {
        "data_qubits": data,
        "offset_qubits": offset_q,
        "coin_qubits": coin,
        "flag_qubits": flags,
        "overlap_ancillas": overlap,
        "resource_ancillas": resource,
        "compare_qubits": spare,
        "total": data + offset_q + coin + flags + overlap + resource + spare,
    }


def gate_count_report(instance: Instance, mode: str,
                      coin_style: str = COIN_FRESH) -> int:
    """Basic gates of one (solution reflection, prepared-state reflection) pair.

    Counted on the fresh-coin pipeline by default: the walk then spends one
    coin register per step, which is what the decomposition rule table prices.
    """
    pipeline = build_pipeline(instance, mode, coin_style=coin_style, max_wires=None)
    marked = build_marked_reflection(pipeline, math.pi)
    initial = build_initial_reflection(pipeline, math.pi)
    return circuit_basic_cost(marked) + circuit_basic_cost(initial)


def qubit_report(instance: Instance, mode: str, coin_style: str = COIN_REUSE,
                 with_gate_count: bool = True) -> ResourceReport:
    """Exact per-group wire counts of the layout, plus the gate-count estimate."""
    layout = build_layout(instance, mode, coin_style=coin_style, max_wires=None)
    data = sum(r.width for regs in layout.data_regs for r in regs)
    offset_q = sum(r.width for r in layout.offset_regs)
    coin = len(layout.coin_wires)
    flags = len(layout.flag_wires)
    overlap = len(layout.overlap_wires)
    resource = 1 if layout.resource_wire is not None else 0
    spare = 1 if layout.compare_spare is not None else 0
    count = gate_count_report(instance, mode) if with_gate_count else None
    return ResourceReport(instance.machines, instance.jobs, instance.window,
                          instance.max_offset, mode, coin_style, data, offset_q,
                          coin, flags, overlap, resource, spare, layout.n_wires,
                          count, GATE_RULES_VERSION)
