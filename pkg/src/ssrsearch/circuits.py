"""State preparations, condition oracles, and the two search reflections.

Full mode prepares the uniform superposition over all data patterns and
conditions on window/spacing flags plus the resource flag.  Reduced mode
prepares, via a coined-walk construction, the uniform superposition over
per-machine feasible paths only, and conditions on the resource flag alone.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import ValidationError
from .problem import (COIN_REUSE, FULL, REDUCED, Instance, QubitLayout,
                      build_layout, comparison_needs_spare)
from .qarith import RegisterSpan, add_constant, qft, range_check
from .statevector import MAX_QUBITS, PHASE, ROT, Circuit, GateOp, H, X

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PreparedPipeline:
    """Prep circuit plus the computed-condition circuit feeding the reflections.

    ``condition_wires`` all reading 1 after ``condition`` means the basis state
    is a solution; ``condition.inverse()`` restores every ancilla.
    """

    instance: Instance
    layout: QubitLayout
    mode: str
    prep: Circuit
    condition: Circuit
    condition_wires: tuple[int, ...]


def build_uniform_prep(layout: QubitLayout) -> Circuit:
    """Hadamard every job-register wire; write each machine offset classically."""
    circ = Circuit(layout.n_wires)
    with circ.segment("prep"):
        for regs in layout.data_regs:
            for reg in regs:
                for w in reg.wires:
                    circ.add(GateOp(H, (w,)))
        _set_offsets(layout, circ)
    return circ


def _set_offsets(layout: QubitLayout, circ: Circuit) -> None:
    for i, reg in enumerate(layout.offset_regs):
        o = layout.instance.offsets[i]
        for p, w in enumerate(reg.wires):
            if (o >> p) & 1:
                circ.add(GateOp(X, (w,)))


def _coin_update_ops(coin: RegisterSpan, minus: RegisterSpan, plus: RegisterSpan):
    """Fourier-basis update coin <- coin - minus + plus (mod 2^coin.width).

    Only the low coin-width bits of either register contribute; higher bits
    rotate by multiples of 2 pi.
    """
    cw = coin.width
    ops = list(qft(coin).ops)
    for sign, reg in ((-1.0, minus), (1.0, plus)):
        for a in range(min(reg.width, cw)):
            for p in range(cw - a):
                ops.append(GateOp(ROT, (coin.wires[p],), controls=(reg.wires[a],),
                                  angle=sign * _TWO_PI * (1 << (a + p)) / (1 << cw)))
    ops.extend(op.inverse() for op in reversed(qft(coin).ops))
    return ops


def build_walk_prep(instance: Instance, layout: QubitLayout) -> Circuit:
    """Coined-walk preparation of the uniform superposition over feasible paths.

    Per machine: the first job register is put in uniform superposition over
    its window; then for each following job the previous register is copied
    forward, a Hadamard wall on the coin picks one of C increments, per-coin-bit
    controlled additions apply the increment, and (in coin-reuse style) the
    coin is returned to |0..0> by subtracting the realized increment.
    """
    if layout.mode != REDUCED:
        raise ValidationError("walk preparation requires a reduced-mode layout")
    C = instance.window
    cw = int(math.log2(C))
    circ = Circuit(layout.n_wires)
    with circ.segment("prep"):
        _set_offsets(layout, circ)
        for i in range(instance.machines):
            with circ.segment(f"init:{i}"):
                first = layout.data_regs[i][0]
                for w in first.wires[:cw]:
                    circ.add(GateOp(H, (w,)))
                o = instance.offsets[i]
                if o:
                    circ.extend(add_constant(first, o, "add").ops)
            for k in range(instance.jobs - 1):
                with circ.segment(f"step:{i}:{k}"):
                    src = layout.data_regs[i][k]
                    dst = layout.data_regs[i][k + 1]
                    coin = layout.coin_regs[0 if layout.coin_style == COIN_REUSE else k]
                    for p in range(src.width):
                        circ.add(GateOp(X, (dst.wires[p],), controls=(src.wires[p],)))
                    for w in coin.wires:
                        circ.add(GateOp(H, (w,)))
                    for j, cwire in enumerate(coin.wires):
                        circ.extend(add_constant(dst, 1 << j, "add", controls=(cwire,)).ops)
                    if layout.coin_style == COIN_REUSE:
                        circ.extend(_coin_update_ops(coin, minus=dst, plus=src))
    return circ


def _comparison_span(layout: QubitLayout, lower: RegisterSpan, upper: RegisterSpan) -> RegisterSpan:
    if comparison_needs_spare(layout.instance.window, lower.width, upper.width):
        if layout.compare_spare is None:
            raise ValidationError("layout lacks the comparison spare wire it needs")
        return RegisterSpan(upper.wires + (layout.compare_spare,))
    return upper


def build_path_flags(instance: Instance, layout: QubitLayout) -> Circuit:
    """Window and spacing checks of every machine, one flag pair per comparison."""
    if layout.mode != FULL:
        raise ValidationError("path flags exist only in full mode")
    C = instance.window
    circ = Circuit(layout.n_wires)
    for i in range(instance.machines):
        regs = layout.data_regs[i]
        if layout.window_flags[i] is not None:
            lo, hi = layout.window_flags[i]
            span = _comparison_span(layout, layout.offset_regs[i], regs[0])
            circ.extend(range_check(layout.offset_regs[i], span, C, lo, hi).ops)
        for k in range(instance.jobs - 1):
            lo, hi = layout.pair_flags[i][k]
            span = _comparison_span(layout, regs[k], regs[k + 1])
            circ.extend(range_check(regs[k], span, C, lo, hi).ops)
    return circ


def build_resource_flags(instance: Instance, layout: QubitLayout) -> Circuit:
    """Per (machine pair, job) overlap detection, aggregated onto the resource wire.

    XOR-ing one register onto the other leaves all-zeros exactly on equal
    dates; an all-zero-controlled X records the overlap, and the XOR wall is
    repeated to restore the data.  The resource wire flips to 1 only when every
    overlap ancilla stayed 0.
    """
    circ = Circuit(layout.n_wires)
    for i, i2 in itertools.combinations(range(instance.machines), 2):
        for k in range(instance.jobs):
            a = layout.data_regs[i][k]
            b = layout.data_regs[i2][k]
            wall = [GateOp(X, (b.wires[p],), controls=(a.wires[p],)) for p in range(a.width)]
            circ.extend(wall)
            circ.add(GateOp(X, (layout.overlap_wire(i, i2, k),), anti_controls=b.wires))
            circ.extend(wall)
    circ.add(GateOp(X, (layout.resource_wire,), anti_controls=layout.overlap_wires))
    return circ


def build_pipeline(instance: Instance, mode: str, coin_style: str = COIN_REUSE,
                   max_wires: int | None = MAX_QUBITS) -> PreparedPipeline:
    """Assemble layout, preparation, and condition circuit for one search mode."""
    layout = build_layout(instance, mode, coin_style=coin_style, max_wires=max_wires)
    if mode == FULL:
        prep = build_uniform_prep(layout)
        condition = Circuit(layout.n_wires)
        condition.extend(build_path_flags(instance, layout).ops)
        condition.extend(build_resource_flags(instance, layout).ops)
        condition_wires = layout.flag_wires + (layout.resource_wire,)
    else:
        prep = build_walk_prep(instance, layout)
        condition = build_resource_flags(instance, layout)
        condition_wires = (layout.resource_wire,)
    return PreparedPipeline(instance, layout, mode, prep, condition, condition_wires)


def build_marked_reflection(pipeline: PreparedPipeline, angle: float) -> Circuit:
    """Phase exp(i*angle) on solution states: compute conditions, phase, uncompute."""
    circ = Circuit(pipeline.layout.n_wires)
    with circ.segment("condition"):
        circ.extend(pipeline.condition.ops)
    with circ.segment("phase"):
        circ.add(GateOp(PHASE, (pipeline.condition_wires[0],),
                        controls=pipeline.condition_wires[1:], angle=angle))
    with circ.segment("uncompute"):
        circ.extend(pipeline.condition.inverse().ops)
    return circ


def build_initial_reflection(pipeline: PreparedPipeline, angle: float) -> Circuit:
    """Phase exp(i*angle) on the prepared state |phi>, identity on its complement.

    Un-compute the preparation, phase the all-zeros pattern of every wire,
    re-compute the preparation.
    """
    n = pipeline.layout.n_wires
    circ = Circuit(n)
    with circ.segment("unprepare"):
        circ.extend(pipeline.prep.inverse().ops)
    with circ.segment("zero-phase"):
        others = tuple(range(1, n))
        circ.add(GateOp(X, (0,)))
        circ.add(GateOp(PHASE, (0,), anti_controls=others, angle=angle))
        circ.add(GateOp(X, (0,)))
    with circ.segment("reprepare"):
        circ.extend(pipeline.prep.ops)
    return circ


def dump_circuit(circuit: Circuit) -> str:
    """One gate per line: ``KIND targets=<list> controls=<list> anti=<list> angle=<radians>``."""
    lines = []
    for op in circuit.ops:
        lines.append(
            f"{op.kind} targets={','.join(map(str, op.targets))}"
            f" controls={','.join(map(str, op.controls))}"
            f" anti={','.join(map(str, op.anti_controls))}"
            f" angle={op.angle:.12g}"
        )
    return "\n".join(lines) + ("\n" if lines else "")
