"""Reversible arithmetic circuit builders in the Fourier basis.

All registers are little-endian: ``wires[0]`` carries significance 1.  Every
addition here is modular over 2**width and built as QFT, one layer of phase
rotations encoding the addend, inverse QFT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import LayoutError, ValidationError, WiringError
from .statevector import PHASE, ROT, SWAP, Circuit, GateOp, H, X

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RegisterSpan:
    """Ordered wire list of one register, least-significant wire first."""

    wires: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(self.wires))
        if not self.wires:
            raise LayoutError("register needs at least one wire")
        if len(set(self.wires)) != len(self.wires):
            raise WiringError(f"duplicate wires in register {self.wires}")

    @property
    def width(self) -> int:
        return len(self.wires)


def _new_circuit(spans, n_qubits: int | None, extra: tuple[int, ...] = ()) -> Circuit:
    wires = [w for s in spans for w in s.wires] + list(extra)
    n = max(wires) + 1 if n_qubits is None else n_qubits
    return Circuit(n)


def _qft_ops(reg: RegisterSpan):
    """Exact Fourier transform over the register: |y> -> sum_k e^{2 pi i yk/2^w} |k> / 2^{w/2}."""
    w = reg.width
    ops = []
    for i in range(w - 1, -1, -1):
        ops.append(GateOp(H, (reg.wires[i],)))
        for j in range(i - 1, -1, -1):
            ops.append(GateOp(ROT, (reg.wires[i],), controls=(reg.wires[j],),
                              angle=math.pi / (1 << (i - j))))
    for i in range(w // 2):
        ops.append(GateOp(SWAP, (reg.wires[i], reg.wires[w - 1 - i])))
    return ops


def qft(reg: RegisterSpan, n_qubits: int | None = None) -> Circuit:
    """Quantum Fourier transform circuit on ``reg`` (O(width^2) gates)."""
    circ = _new_circuit([reg], n_qubits)
    circ.extend(_qft_ops(reg))
    return circ


def _addend_rotations(reg: RegisterSpan, c: int, sign: float, controls: tuple[int, ...] = ()):
    """Phase layer adding sign*c to a Fourier-transformed register."""
    w = reg.width
    ops = []
    for p in range(w):
        angle = sign * _TWO_PI * ((c << p) % (1 << w)) / (1 << w)
        if angle % _TWO_PI == 0.0:  # identity rotation, not emitted
            continue
        ops.append(GateOp(ROT, (reg.wires[p],), controls=controls, angle=angle))
    return ops


def add_constant(reg: RegisterSpan, c: int, direction: str = "add",
                 controls: tuple[int, ...] = (), n_qubits: int | None = None) -> Circuit:
    """Map |y> to |y +- c mod 2^width>, optionally under controls."""
    if direction not in ("add", "subtract"):
        raise ValidationError(f"direction must be add|subtract, got {direction!r}")
    if not 0 <= c < (1 << reg.width):
        raise ValidationError(f"constant {c} outside 0..{(1 << reg.width) - 1}")
    controls = tuple(controls)
    if set(controls) & set(reg.wires):
        raise WiringError("controls overlap the target register")
    circ = _new_circuit([reg], n_qubits, extra=controls)
    sign = 1.0 if direction == "add" else -1.0
    circ.extend(_qft_ops(reg))
    circ.extend(_addend_rotations(reg, c, sign, controls))
    circ.extend(op.inverse() for op in reversed(_qft_ops(reg)))
    return circ


def plus_one(reg: RegisterSpan, n_qubits: int | None = None) -> Circuit:
    """Increment the register by one modulo 2^width."""
    return add_constant(reg, 1, "add", n_qubits=n_qubits)


def controlled_add_constant(reg: RegisterSpan, c: int, controls,
                            n_qubits: int | None = None) -> Circuit:
    """``add_constant`` active only when every control wire is |1>."""
    return add_constant(reg, c, "add", controls=tuple(controls), n_qubits=n_qubits)


def add_register(src: RegisterSpan, dst: RegisterSpan, subtract: bool = False,
                 n_qubits: int | None = None) -> Circuit:
    """Map |a>|b> to |a>|b +- a mod 2^dst.width>.

    The source value enters through controlled rotations, so a narrower source
    is implicitly sign-extended: subtraction is exact modular subtraction.
    """
    if set(src.wires) & set(dst.wires):
        raise WiringError("source and destination registers overlap")
    if dst.width < src.width:
        raise LayoutError(f"destination width {dst.width} < source width {src.width}")
    circ = _new_circuit([src, dst], n_qubits)
    w = dst.width
    sign = -1.0 if subtract else 1.0
    circ.extend(_qft_ops(dst))
    for a in range(src.width):
        for p in range(w):
            if a + p >= w:  # rotation is a multiple of 2 pi
                continue
            circ.add(GateOp(ROT, (dst.wires[p],), controls=(src.wires[a],),
                            angle=sign * _TWO_PI * (1 << (a + p)) / (1 << w)))
    circ.extend(op.inverse() for op in reversed(_qft_ops(dst)))
    return circ


def twos_complement(reg: RegisterSpan, n_qubits: int | None = None) -> Circuit:
    """Map |y> to |2^width - y mod 2^width>: invert every wire, then add one."""
    circ = _new_circuit([reg], n_qubits)
    for wq in reg.wires:
        circ.add(GateOp(X, (wq,)))
    circ.extend(plus_one(reg).ops)
    return circ


def range_check(xk: RegisterSpan, xk1: RegisterSpan, bound_c: int,
                flag_lo: int, flag_hi: int, n_qubits: int | None = None) -> Circuit:
    """Flag whether 0 <= xk1 - xk < bound_c, restoring both registers.

    ``xk1`` is the comparison span; its top wire acts as the sign read-out and
    should include one spare high wire above the data when the caller needs
    individually exact flags.  Writes:

    * ``flag_lo`` = 1  iff  xk1 - xk >= 0   (exact when xk1 has a spare top wire),
    * ``flag_hi`` = 1  iff  xk1 - xk <= bound_c - 1  (exact whenever the
      difference is >= bound_c - 2^(width-1)),
    * the conjunction of both flags equals 0 <= diff < bound_c for every input
      whenever bound_c <= 2^width - 2^xk.width (always true with a spare wire).

    The sequence is: subtract xk, read sign into flag_lo (anti-control),
    subtract the bound, read sign into flag_hi (control), then undo both
    subtractions.
    """
    if xk1.width < xk.width:
        raise LayoutError("comparison register narrower than the subtrahend")
    if not 0 < bound_c < (1 << xk1.width):
        raise ValidationError(f"bound {bound_c} not representable in {xk1.width} wires")
    for f in (flag_lo, flag_hi):
        if f in xk.wires or f in xk1.wires:
            raise WiringError("flag wire overlaps a data register")
    circ = _new_circuit([xk, xk1], n_qubits, extra=(flag_lo, flag_hi))
    sign_wire = xk1.wires[-1]
    sub = add_register(xk, xk1, subtract=True).ops
    sub_c = add_constant(xk1, bound_c, "subtract").ops
    circ.extend(sub)
    circ.add(GateOp(X, (flag_lo,), anti_controls=(sign_wire,)))
    circ.extend(sub_c)
    circ.add(GateOp(X, (flag_hi,), controls=(sign_wire,)))
    circ.extend(op.inverse() for op in reversed(sub_c))
    circ.extend(op.inverse() for op in reversed(sub))
    return circ
