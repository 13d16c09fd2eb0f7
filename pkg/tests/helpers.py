"""Independent test oracles: dense gate matrices, the 2x2 search model,
and the closed-form amplitude-amplification probability.

Everything here works index-by-index on explicit matrices, deliberately
avoiding the reshape/slicing machinery of the package under test.
"""

import math

import numpy as np

from ssrsearch.statevector import PHASE, ROT, SWAP, H, X, Z

SQ2 = 1.0 / math.sqrt(2.0)


def gate_matrix(op, n_qubits: int) -> np.ndarray:
    """Explicit 2^n x 2^n unitary of one GateOp."""
    dim = 1 << n_qubits
    mat = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        active = all((col >> c) & 1 for c in op.controls) and \
            all(((col >> c) & 1) == 0 for c in op.anti_controls)
        if not active:
            mat[col, col] = 1.0
            continue
        if op.kind == H:
            t = op.targets[0]
            bit = (col >> t) & 1
            base = col & ~(1 << t)
            mat[base, col] += SQ2
            mat[base | (1 << t), col] += SQ2 * (-1.0 if bit else 1.0)
        elif op.kind == X:
            t = op.targets[0]
            mat[col ^ (1 << t), col] = 1.0
        elif op.kind == Z:
            t = op.targets[0]
            mat[col, col] = -1.0 if (col >> t) & 1 else 1.0
        elif op.kind in (PHASE, ROT):
            t = op.targets[0]
            mat[col, col] = np.exp(1j * op.angle) if (col >> t) & 1 else 1.0
        elif op.kind == SWAP:
            a, b = op.targets
            ba, bb = (col >> a) & 1, (col >> b) & 1
            row = (col & ~(1 << a) & ~(1 << b)) | (bb << a) | (ba << b)
            mat[row, col] = 1.0
        else:
            raise AssertionError(op.kind)
    return mat


def circuit_matrix(circuit) -> np.ndarray:
    mat = np.eye(1 << circuit.n_qubits, dtype=complex)
    for op in circuit.ops:
        mat = gate_matrix(op, circuit.n_qubits) @ mat
    return mat


def two_level_trace(w: float, alphas, betas) -> list[float]:
    """Exact success probabilities of the reflection-pair iteration on
    span{bad, good}, starting from sqrt(1-w)|bad> + sqrt(w)|good>."""
    phi = np.array([math.sqrt(1.0 - w), math.sqrt(w)], dtype=complex)
    state = phi.copy()
    probs = [abs(state[1]) ** 2]
    for a, b in zip(alphas, betas):
        state = state * np.array([1.0, np.exp(1j * a)])
        state = state + (np.exp(1j * b) - 1.0) * phi * np.vdot(phi, state)
        probs.append(abs(state[1]) ** 2)
    return probs


def grover_probability(w: float, iterations: int) -> float:
    theta = math.asin(math.sqrt(w))
    return math.sin((2 * iterations + 1) * theta) ** 2


def first_crossing(probs, threshold: float = 0.99):
    for i, p in enumerate(probs):
        if p >= threshold:
            return i
    return None


def register_value(index: int, wires) -> int:
    v = 0
    for p, w in enumerate(wires):
        v |= ((index >> w) & 1) << p
    return v


def basis_index_for(values_by_span) -> int:
    """Build a basis index from {RegisterSpan-like: value} pairs."""
    idx = 0
    for span, value in values_by_span:
        for p, w in enumerate(span.wires):
            idx |= ((value >> p) & 1) << w
    return idx
