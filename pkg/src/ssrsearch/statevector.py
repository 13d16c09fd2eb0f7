"""Dense statevector simulation of controlled primitive gates.

Conventions used throughout the package:

* Wires are numbered 0..n-1.  Basis index bit j addresses wire j
  (little-endian: wire j carries significance 2**j).
* Multi-controlled gates are applied natively by slicing the controlled
  subspace, never by decomposition; decomposition only happens in the
  gate-count estimator of :mod:`ssrsearch.analysis`.
* Gate application mutates the statevector in place and returns it.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, ValidationError, WiringError

# 26 wires (1 GiB of complex128 amplitudes) covers every desk-scale run.
MAX_QUBITS = 26

H = "H"
X = "X"
Z = "Z"
PHASE = "PHASE"
ROT = "ROT"  # phase rotation used by Fourier-basis arithmetic; same unitary as PHASE
SWAP = "SWAP"

_ONE_TARGET = (H, X, Z, PHASE, ROT)
_KINDS = _ONE_TARGET + (SWAP,)
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class GateOp:
    """One primitive gate with optional (anti-)controls.

    ``controls`` condition on wire value 1, ``anti_controls`` on 0.  PHASE and
    ROT multiply the target-|1> component by exp(i*angle).
    """

    kind: str
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    anti_controls: tuple[int, ...] = ()
    angle: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValidationError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "controls", tuple(self.controls))
        object.__setattr__(self, "anti_controls", tuple(self.anti_controls))
        want = 2 if self.kind == SWAP else 1
        if len(self.targets) != want:
            raise WiringError(f"{self.kind} takes {want} target(s), got {self.targets}")
        seen: set[int] = set()
        for w in self.targets + self.controls + self.anti_controls:
            if w < 0:
                raise WiringError(f"negative wire {w}")
            if w in seen:
                raise WiringError(f"wire {w} used more than once in {self.kind}")
            seen.add(w)

    @property
    def wires(self) -> tuple[int, ...]:
        return self.targets + self.controls + self.anti_controls

    def inverse(self) -> "GateOp":
        if self.kind in (PHASE, ROT):
            return GateOp(self.kind, self.targets, self.controls, self.anti_controls, -self.angle)
        return self  # H, X, Z, SWAP are involutions


@dataclass
class Circuit:
    """Ordered gate list over a fixed wire count, with named segments."""

    n_qubits: int
    ops: list[GateOp] = field(default_factory=list)
    segments: list[tuple[str, int, int]] = field(default_factory=list)

    def add(self, op: GateOp) -> None:
        if op.wires and max(op.wires) >= self.n_qubits:
            raise WiringError(f"wire {max(op.wires)} outside 0..{self.n_qubits - 1}")
        self.ops.append(op)

    def extend(self, ops) -> None:
        for op in ops:
            self.add(op)

    @contextmanager
    def segment(self, name: str):
        start = len(self.ops)
        yield self
        self.segments.append((name, start, len(self.ops)))

    def inverse(self) -> "Circuit":
        inv = Circuit(self.n_qubits, [op.inverse() for op in reversed(self.ops)])
        n = len(self.ops)
        inv.segments = [(name, n - stop, n - start) for name, start, stop in reversed(self.segments)]
        return inv

    def __len__(self) -> int:
        return len(self.ops)


@dataclass
class StateVector:
    """2**n_qubits complex amplitudes; index bit j addresses wire j."""

    n_qubits: int
    amps: np.ndarray

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amps.copy())

    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


def init_state(n_qubits: int) -> StateVector:
    """Prepare the all-zeros basis state on ``n_qubits`` wires."""
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise CapacityError(f"n_qubits must be in 1..{MAX_QUBITS}, got {n_qubits}")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def _controlled_view(state: StateVector, op: GateOp):
    """Return (view, target axis positions) for the subspace selected by the controls."""
    n = state.n_qubits
    if max(op.wires) >= n:
        raise WiringError(f"wire {max(op.wires)} outside 0..{n - 1}")
    psi = state.amps.reshape((2,) * n)  # axis a holds wire n-1-a
    key: list = [slice(None)] * n
    for w in op.controls:
        key[n - 1 - w] = 1
    for w in op.anti_controls:
        key[n - 1 - w] = 0
    sub = psi[tuple(key)]
    fixed = sorted(n - 1 - w for w in op.controls + op.anti_controls)
    positions = []
    for t in op.targets:
        a = n - 1 - t
        positions.append(a - sum(1 for f in fixed if f < a))
    return sub, positions


def apply(state: StateVector, op: GateOp) -> StateVector:
    """Apply one gate in place; controls gate the action on |1>, anti-controls on |0>."""
    sub, pos = _controlled_view(state, op)
    if op.kind == SWAP:
        a, b = pos
        i01 = [slice(None)] * sub.ndim
        i10 = [slice(None)] * sub.ndim
        i01[a], i01[b] = 0, 1
        i10[a], i10[b] = 1, 0
        tmp = sub[tuple(i01)].copy()
        sub[tuple(i01)] = sub[tuple(i10)]
        sub[tuple(i10)] = tmp
        return state

    ax = pos[0]
    i0 = [slice(None)] * sub.ndim
    i1 = [slice(None)] * sub.ndim
    i0[ax], i1[ax] = 0, 1
    i0, i1 = tuple(i0), tuple(i1)
    if op.kind == X:
        tmp = sub[i0].copy()
        sub[i0] = sub[i1]
        sub[i1] = tmp
    elif op.kind == Z:
        sub[i1] *= -1.0
    elif op.kind in (PHASE, ROT):
        sub[i1] *= complex(math.cos(op.angle), math.sin(op.angle))
    elif op.kind == H:
        s0 = sub[i0].copy()
        s1 = sub[i1]
        sub[i0] = (s0 + s1) * _INV_SQRT2
        sub[i1] = (s0 - s1) * _INV_SQRT2
    return state


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Apply every op of ``circuit`` in order; wire counts must match."""
    if circuit.n_qubits != state.n_qubits:
        raise WiringError(
            f"circuit is on {circuit.n_qubits} wires, state on {state.n_qubits}"
        )
    for op in circuit.ops:
        apply(state, op)
    return state


def marked_probability(state: StateVector, marked) -> float:
    """Total probability of the given basis indices."""
    dim = state.amps.shape[0]
    idx = np.fromiter(marked, dtype=np.int64) if not isinstance(marked, np.ndarray) else marked
    if idx.size == 0:
        return 0.0
    if idx.min() < 0 or idx.max() >= dim:
        raise WiringError("marked index outside the basis range")
    return float(np.sum(np.abs(state.amps[idx]) ** 2))


def low_wire_probabilities(state: StateVector, n_low: int) -> np.ndarray:
    """Probability of each pattern of the ``n_low`` lowest wires, traced over the rest."""
    if not 0 < n_low <= state.n_qubits:
        raise WiringError(f"n_low must be in 1..{state.n_qubits}")
    p = np.abs(state.amps) ** 2
    return p.reshape(-1, 1 << n_low).sum(axis=0)


def apply_phase_to_low_wire_mask(state: StateVector, mask, n_low: int, angle: float) -> StateVector:
    """Multiply by exp(i*angle) every amplitude whose low ``n_low`` wire bits are in ``mask``.

    Semantic counterpart of a computed-and-uncomputed condition circuit; used
    when an instance's oracle ancillas would exceed the simulator capacity.
    """
    idx = np.fromiter(mask, dtype=np.int64) if not isinstance(mask, np.ndarray) else mask
    if idx.size == 0:
        return state
    if idx.min() < 0 or idx.max() >= (1 << n_low):
        raise WiringError("mask index outside the low-wire range")
    view = state.amps.reshape(-1, 1 << n_low)
    view[:, idx] *= complex(math.cos(angle), math.sin(angle))
    return state


def sample(state: StateVector, shots: int, seed: int) -> dict[int, int]:
    """Multinomial sample of basis indices; reproducible for a fixed seed."""
    if shots < 1:
        raise ValidationError(f"shots must be >= 1, got {shots}")
    p = np.abs(state.amps) ** 2
    p = p / p.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, p)
    nz = np.nonzero(counts)[0]
    return {int(i): int(counts[i]) for i in nz}
