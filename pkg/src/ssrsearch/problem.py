"""Scheduling instances, qubit layouts, and the brute-force solution counter.

Dates are global-absolute integers anchored at the earliest first-job date
over all machines, so register values equal dates directly and cross-machine
equality of register values means equality of dates.  Job indices are 0-based
internally; the register width formula counts jobs from 1.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, LayoutError, ValidationError
from .qarith import RegisterSpan
from .statevector import MAX_QUBITS

DEFAULT_PATH_BUDGET = 1 << 20       # per-machine feasible paths (C**K)
DEFAULT_PRODUCT_BUDGET = 100_000    # naive full-product enumeration (C**(K*I))
DEFAULT_MASK_BUDGET = 1 << 22       # basis patterns over the data wires

FULL = "full"
REDUCED = "reduced"
COIN_REUSE = "reuse"
COIN_FRESH = "fresh"


@dataclass(frozen=True)
class Instance:
    """A scheduling problem: I machines, K jobs each, window width C, offsets O_i."""

    machines: int
    jobs: int
    window: int
    offsets: tuple[int, ...]

    @property
    def max_offset(self) -> int:
        return max(self.offsets)


@dataclass(frozen=True)
class Schedule:
    """Absolute job dates, ``dates[i][k]`` = date of job k on machine i."""

    dates: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SpaceSizes:
    n_full: int
    n_reduced: int
    m_solutions: int


def new_instance(machines: int, jobs: int, window: int, offsets=None) -> Instance:
    """Validate parameters and normalize offsets so the smallest is zero."""
    if machines < 1 or jobs < 1:
        raise ValidationError("machine and job counts must be >= 1")
    if window < 2 or window & (window - 1):
        raise ValidationError(f"window must be a power of two >= 2, got {window}")
    offsets = tuple(offsets) if offsets is not None else (0,) * machines
    if len(offsets) != machines:
        raise ValidationError(f"expected {machines} offsets, got {len(offsets)}")
    if any(not isinstance(o, int) or o < 0 for o in offsets):
        raise ValidationError("offsets must be non-negative integers")
    lo = min(offsets)
    return Instance(machines, jobs, window, tuple(o - lo for o in offsets))


def load_instance(source) -> Instance:
    """Read an instance from a JSON file path or an already-parsed mapping.

    Schema: {"machines": int, "jobs": int, "window": int, "offsets": [int, ...]};
    unknown keys are rejected.
    """
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = source
    if not isinstance(data, dict):
        raise ValidationError("instance file must contain a JSON object")
    required = {"machines", "jobs", "window", "offsets"}
    unknown = set(data) - required
    if unknown:
        raise ValidationError(f"unknown instance keys: {sorted(unknown)}")
    missing = required - set(data)
    if missing:
        raise ValidationError(f"missing instance keys: {sorted(missing)}")
    return new_instance(data["machines"], data["jobs"], data["window"], data["offsets"])


def job_register_width(window: int, max_offset: int, k0: int) -> int:
    """Wires for the job with 0-based index k0: dates span [0, O + (C-1)(k0+1)]."""
    return max(1, math.ceil(math.log2(max_offset + (window - 1) * (k0 + 1) + 1)))


def offset_register_width(max_offset: int) -> int:
    """Wires holding a machine offset; zero when every offset is zero."""
    return math.ceil(math.log2(max_offset + 1)) if max_offset > 0 else 0


def job_widths(instance: Instance) -> tuple[int, ...]:
    return tuple(job_register_width(instance.window, instance.max_offset, k)
                 for k in range(instance.jobs))


@dataclass(frozen=True)
class QubitLayout:
    """Deterministic wire assignment for one instance and search mode.

    Wire order: job data registers (machine-major, jobs ascending, LSB first),
    offset registers, coin registers, feasibility flags, overlap ancillas, the
    aggregate resource ancilla, and finally the shared comparison spare wire.
    """

    instance: Instance
    mode: str
    coin_style: str
    data_regs: tuple[tuple[RegisterSpan, ...], ...]
    offset_regs: tuple[RegisterSpan, ...]
    coin_regs: tuple[RegisterSpan, ...]
    window_flags: tuple[tuple[int, int] | None, ...]
    pair_flags: tuple[tuple[tuple[int, int], ...], ...]
    overlap_wires: tuple[int, ...]
    resource_wire: int | None
    compare_spare: int | None
    n_wires: int

    @property
    def n_data_wires(self) -> int:
        return sum(r.width for regs in self.data_regs for r in regs)

    @property
    def flag_wires(self) -> tuple[int, ...]:
        out = []
        for wf in self.window_flags:
            if wf is not None:
                out.extend(wf)
        for machine in self.pair_flags:
            for lo, hi in machine:
                out.extend((lo, hi))
        return tuple(out)

    @property
    def coin_wires(self) -> tuple[int, ...]:
        return tuple(w for reg in self.coin_regs for w in reg.wires)

    def overlap_wire(self, i: int, i2: int, k: int) -> int:
        pairs = list(itertools.combinations(range(self.instance.machines), 2))
        return self.overlap_wires[pairs.index((i, i2)) * self.instance.jobs + k]


def comparison_needs_spare(window: int, w_lo: int, w_hi: int) -> bool:
    # Without a spare top wire the flag conjunction is exact iff C <= 2^hi - 2^lo.
    return window > (1 << w_hi) - (1 << w_lo)


def build_layout(instance: Instance, mode: str, coin_style: str = COIN_REUSE,
                 oracle_wires: bool = True, max_wires: int | None = MAX_QUBITS) -> QubitLayout:
    """Assign every register and ancilla of the pipeline to concrete wires."""
    if mode not in (FULL, REDUCED):
        raise ValidationError(f"mode must be {FULL!r} or {REDUCED!r}, got {mode!r}")
    if coin_style not in (COIN_REUSE, COIN_FRESH):
        raise ValidationError(f"coin_style must be reuse|fresh, got {coin_style!r}")
    I, K, C, O = instance.machines, instance.jobs, instance.window, instance.max_offset
    widths = job_widths(instance)
    cursor = 0

    def take(width: int) -> RegisterSpan:
        nonlocal cursor
        span = RegisterSpan(tuple(range(cursor, cursor + width)))
        cursor += width
        return span

    data_regs = tuple(tuple(take(w) for w in widths) for _ in range(I))
    ow = offset_register_width(O)
    offset_regs = tuple(take(ow) for _ in range(I)) if ow else ()

    coin_regs: tuple[RegisterSpan, ...] = ()
    if mode == REDUCED:
        cw = int(math.log2(C))
        n_coins = 1 if coin_style == COIN_REUSE else max(0, K - 1)
        coin_regs = tuple(take(cw) for _ in range(n_coins))

    window_flags: list[tuple[int, int] | None] = [None] * I
    pair_flags: list[tuple[tuple[int, int], ...]] = [()] * I
    if mode == FULL and oracle_wires:
        wf = []
        pf = []
        for _ in range(I):
            wf.append((take(1).wires[0], take(1).wires[0]) if O > 0 else None)
            pf.append(tuple((take(1).wires[0], take(1).wires[0]) for _ in range(K - 1)))
        window_flags, pair_flags = wf, pf

    overlap_wires: tuple[int, ...] = ()
    resource_wire = None
    if oracle_wires:
        n_overlap = (I * (I - 1) // 2) * K
        overlap_wires = tuple(take(1).wires[0] for _ in range(n_overlap))
        resource_wire = take(1).wires[0]

    compare_spare = None
    if mode == FULL and oracle_wires:
        need = any(comparison_needs_spare(C, widths[k], widths[k + 1]) for k in range(K - 1))
        if O > 0:
            need = need or comparison_needs_spare(C, ow, widths[0])
        if need:
            compare_spare = take(1).wires[0]

    if max_wires is not None and cursor > max_wires:
        raise CapacityError(f"layout needs {cursor} wires, capacity is {max_wires}")
    return QubitLayout(instance, mode, coin_style, data_regs, offset_regs, coin_regs,
                       tuple(window_flags), tuple(pair_flags), overlap_wires,
                       resource_wire, compare_spare, cursor)


def decode_basis(layout: QubitLayout, basis_index: int) -> Schedule:
    """Read the job registers of a data-wire basis pattern as absolute dates."""
    rows = []
    for regs in layout.data_regs:
        row = []
        for reg in regs:
            v = 0
            for p, wire in enumerate(reg.wires):
                v |= ((basis_index >> wire) & 1) << p
            row.append(v)
        rows.append(tuple(row))
    return Schedule(tuple(rows))


def encode_schedule(layout: QubitLayout, schedule: Schedule) -> int:
    """Inverse of :func:`decode_basis` over the data wires."""
    idx = 0
    for regs, row in zip(layout.data_regs, schedule.dates):
        for reg, v in zip(regs, row):
            if not 0 <= v < (1 << reg.width):
                raise ValidationError(f"date {v} not representable in {reg.width} wires")
            for p, wire in enumerate(reg.wires):
                idx |= ((v >> p) & 1) << wire
    return idx


def is_feasible_path(instance: Instance, machine_index: int, dates) -> bool:
    """True iff the per-machine window and spacing constraints hold."""
    dates = tuple(dates)
    if len(dates) != instance.jobs:
        raise ValidationError(f"expected {instance.jobs} dates, got {len(dates)}")
    o = instance.offsets[machine_index]
    if not o <= dates[0] <= o + instance.window - 1:
        return False
    return all(0 <= b - a <= instance.window - 1 for a, b in zip(dates, dates[1:]))


def satisfies_resources(instance: Instance, schedule: Schedule) -> bool:
    """True iff no two machines share a date for the same job index."""
    for k in range(instance.jobs):
        col = [schedule.dates[i][k] for i in range(instance.machines)]
        if len(set(col)) != instance.machines:
            return False
    return True


def enumerate_feasible_paths(instance: Instance, machine_index: int) -> list[tuple[int, ...]]:
    """All C**K feasible date tuples of one machine, in lexicographic order."""
    C = instance.window
    o = instance.offsets[machine_index]
    paths = [(d,) for d in range(o, o + C)]
    for _ in range(instance.jobs - 1):
        paths = [p + (p[-1] + inc,) for p in paths for inc in range(C)]
    return paths


def _count_paths_excluding(instance: Instance, machine_index: int,
                           forbidden: list[set[int]]) -> int:
    """Count feasible paths of one machine avoiding per-job forbidden dates (DP over dates)."""
    C = instance.window
    o = instance.offsets[machine_index]
    f = {d: 1 for d in range(o, o + C) if d not in forbidden[0]}
    for k in range(1, instance.jobs):
        nxt: dict[int, int] = {}
        for d, cnt in f.items():
            for inc in range(C):
                d2 = d + inc
                if d2 in forbidden[k]:
                    continue
                nxt[d2] = nxt.get(d2, 0) + cnt
        f = nxt
    return sum(f.values())


def count_solutions(instance: Instance, budget: int = DEFAULT_PATH_BUDGET) -> int:
    """Exact number of schedules meeting path and resource constraints.

    Backtracks machine by machine over explicitly enumerated feasible paths
    with column-wise distinctness pruning; the last machine is counted by
    dynamic programming instead of enumeration.
    """
    C, K, I = instance.window, instance.jobs, instance.machines
    if C ** K > budget:
        raise CapacityError(f"{C}**{K} per-machine paths exceed budget {budget}")
    forbidden: list[set[int]] = [set() for _ in range(K)]

    def recurse(i: int) -> int:
        if i == I - 1:
            return _count_paths_excluding(instance, i, forbidden)
        total = 0
        for path in enumerate_feasible_paths(instance, i):
            if any(d in forbidden[k] for k, d in enumerate(path)):
                continue
            for k, d in enumerate(path):
                forbidden[k].add(d)
            total += recurse(i + 1)
            for k, d in enumerate(path):
                forbidden[k].remove(d)
        return total

    return recurse(0)


def count_solutions_naive(instance: Instance, budget: int = DEFAULT_PRODUCT_BUDGET) -> int:
    """Full-product enumeration cross-check for tiny instances."""
    C, K, I = instance.window, instance.jobs, instance.machines
    if C ** (K * I) > budget:
        raise CapacityError(f"{C}**{K * I} combinations exceed budget {budget}")
    per = [enumerate_feasible_paths(instance, i) for i in range(I)]
    total = 0
    for combo in itertools.product(*per):
        if all(len({combo[i][k] for i in range(I)}) == I for k in range(K)):
            total += 1
    return total


def space_sizes(instance: Instance, budget: int = DEFAULT_PATH_BUDGET) -> SpaceSizes:
    """Full and reduced search-space sizes together with the exact solution count."""
    n_full = 1 << (instance.machines * sum(job_widths(instance)))
    n_reduced = instance.window ** (instance.jobs * instance.machines)
    return SpaceSizes(n_full, n_reduced, count_solutions(instance, budget))


def _register_values(layout: QubitLayout, idx: np.ndarray) -> list[list[np.ndarray]]:
    """Vectorized register extraction: values[i][k] over all given basis indices."""
    out = []
    for regs in layout.data_regs:
        row = []
        for reg in regs:
            v = np.zeros_like(idx)
            for p, wire in enumerate(reg.wires):
                v |= ((idx >> wire) & 1) << p
            row.append(v)
        out.append(row)
    return out


def marked_mask(instance: Instance, layout: QubitLayout | None = None,
                budget: int = DEFAULT_MASK_BUDGET) -> np.ndarray:
    """Sorted data-wire basis indices whose decoded schedule is a full solution."""
    if layout is None:
        layout = build_layout(instance, REDUCED, oracle_wires=False, max_wires=None)
    d = layout.n_data_wires
    if (1 << d) > budget:
        raise CapacityError(f"2**{d} data patterns exceed budget {budget}")
    idx = np.arange(1 << d, dtype=np.int64)
    vals = _register_values(layout, idx)
    C, K, I = instance.window, instance.jobs, instance.machines
    ok = np.ones(idx.shape, dtype=bool)
    for i in range(I):
        o = instance.offsets[i]
        ok &= (vals[i][0] >= o) & (vals[i][0] <= o + C - 1)
        for k in range(K - 1):
            diff = vals[i][k + 1] - vals[i][k]
            ok &= (diff >= 0) & (diff <= C - 1)
    for i, i2 in itertools.combinations(range(I), 2):
        for k in range(K):
            ok &= vals[i][k] != vals[i2][k]
    return idx[ok]
