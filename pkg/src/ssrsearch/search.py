"""Fixed-point amplitude amplification, plain Grover mode, and trace output.

The fixed-point phase schedule is the Chebyshev closed form: for L reflection
pairs the underlying polynomial degree is D = 2L + 1, the damping parameter is
gamma^-1 = T_{1/D}(1/delta) = cosh(arccosh(1/delta)/D), and the base angles
are a_j = 2*arccot(tan(2 pi j / D) * sqrt(1 - gamma^2)), j = 1..L.  The
reflection on solutions uses alpha_l = -a_{L-l+1}, the reflection on the
prepared state uses beta_l = -a_l, so alpha_l = beta_{L-l+1}.  Once the true
solution fraction w satisfies w >= 1 - gamma^2, the final success probability
is at least 1 - delta^2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .circuits import (PreparedPipeline, build_initial_reflection,
                       build_marked_reflection, build_pipeline, build_uniform_prep,
                       build_walk_prep)
from .errors import CapacityError, ValidationError
from .problem import (COIN_REUSE, FULL, Instance, build_layout, job_widths,
                      marked_mask)
from .statevector import (MAX_QUBITS, PHASE, Circuit, GateOp, StateVector, X,
                          apply, apply_circuit, apply_phase_to_low_wire_mask,
                          init_state, low_wire_probabilities, sample)

FIXED_POINT = "fixed_point"
GROVER = "grover"
ORACLE_AUTO = "auto"
ORACLE_CIRCUIT = "circuit"
ORACLE_MASK = "mask"

# Above this wire count the condition ancillas push desk instances past what a
# dense simulation can turn around quickly; the semantic mask oracle takes over.
AUTO_CIRCUIT_MAX_WIRES = 22


@dataclass(frozen=True)
class AngleSequence:
    """Phase schedule for L reflection pairs; alphas feed the solution
    reflection, betas the prepared-state reflection."""

    rounds: int
    delta: float
    alphas: tuple[float, ...]
    betas: tuple[float, ...]


@dataclass
class SearchTrace:
    """Per-iteration exact probability of the solution set.

    Iteration 0 is recorded right after preparation; one record follows each
    (solution reflection, prepared-state reflection) pair.
    """

    machines: int
    jobs: int
    window: int
    offsets: tuple[int, ...]
    mode: str
    engine: str
    oracle: str
    coin_style: str
    rounds: int
    delta: float | None
    marked_count: int
    space_size: int
    records: tuple[tuple[int, float], ...]

    def probabilities(self) -> list[float]:
        return [p for _, p in self.records]

    def to_csv_text(self) -> str:
        lines = ["iteration,marked_probability"]
        lines += [f"{i},{p:.10g}" for i, p in self.records]
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "machines": self.machines,
            "jobs": self.jobs,
            "window": self.window,
            "offsets": list(self.offsets),
            "mode": self.mode,
            "engine": self.engine,
            "oracle": self.oracle,
            "coin_style": self.coin_style,
            "rounds": self.rounds,
            "delta": self.delta,
            "marked_count": self.marked_count,
            "space_size": self.space_size,
            "records": [{"iteration": i, "marked_probability": p} for i, p in self.records],
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def min_overlap(rounds: int, delta: float) -> float:
    """Smallest solution fraction the L-pair schedule certifies to 1 - delta^2."""
    _check_delta(delta)
    if rounds < 1:
        raise ValidationError("rounds must be >= 1")
    gamma = 1.0 / math.cosh(math.acosh(1.0 / delta) / (2 * rounds + 1))
    return 1.0 - gamma * gamma


def fixed_point_angles(rounds: int, delta: float) -> AngleSequence:
    """Chebyshev phase schedule for ``rounds`` reflection pairs."""
    _check_delta(delta)
    if rounds < 1:
        raise ValidationError("rounds must be >= 1")
    degree = 2 * rounds + 1
    gamma = 1.0 / math.cosh(math.acosh(1.0 / delta) / degree)
    sg = math.sqrt(max(0.0, 1.0 - gamma * gamma))
    base = [2.0 * math.atan2(1.0, math.tan(2.0 * math.pi * j / degree) * sg)
            for j in range(1, rounds + 1)]
    alphas = tuple(-base[rounds - l] for l in range(1, rounds + 1))
    betas = tuple(-base[l - 1] for l in range(1, rounds + 1))
    return AngleSequence(rounds, delta, alphas, betas)


def required_rounds(w_min: float, delta: float) -> int:
    """Smallest pair count L with L >= ln(2/delta)/sqrt(w_min)."""
    if not 0.0 < w_min <= 1.0:
        raise ValidationError(f"w_min must be in (0, 1], got {w_min}")
    _check_delta(delta)
    return max(1, math.ceil(math.log(2.0 / delta) / math.sqrt(w_min)))


def _check_delta(delta: float) -> None:
    if not 0.0 < delta < 1.0:
        raise ValidationError(f"delta must be in (0, 1), got {delta}")


def _resolve_oracle(instance: Instance, mode: str, coin_style: str, oracle: str) -> str:
    if oracle not in (ORACLE_AUTO, ORACLE_CIRCUIT, ORACLE_MASK):
        raise ValidationError(f"oracle must be auto|circuit|mask, got {oracle!r}")
    if oracle != ORACLE_AUTO:
        return oracle
    layout = build_layout(instance, mode, coin_style=coin_style, max_wires=None)
    return ORACLE_CIRCUIT if layout.n_wires <= AUTO_CIRCUIT_MAX_WIRES else ORACLE_MASK


def run_search(instance: Instance, mode: str, alphas, betas, *,
               coin_style: str = COIN_REUSE, oracle: str = ORACLE_AUTO,
               ) -> tuple[list[tuple[int, float]], StateVector, str, np.ndarray]:
    """Apply the reflection-pair schedule, recording the exact solution probability.

    Returns (records, final state, resolved oracle style, solution mask).
    The circuit oracle computes and uncomputes the condition ancillas around a
    multi-controlled phase; the mask oracle applies the identical diagonal
    directly on the data wires (equivalence is pinned down by the test suite).
    """
    alphas, betas = list(alphas), list(betas)
    if len(alphas) != len(betas):
        raise ValidationError("alpha and beta lists must have equal length")
    style = _resolve_oracle(instance, mode, coin_style, oracle)
    mask = marked_mask(instance)

    if style == ORACLE_CIRCUIT:
        pipeline = build_pipeline(instance, mode, coin_style=coin_style)
        layout = pipeline.layout
        prep = pipeline.prep
    else:
        layout = build_layout(instance, mode, coin_style=coin_style, oracle_wires=False)
        prep = build_uniform_prep(layout) if mode == FULL else build_walk_prep(instance, layout)
    d = layout.n_data_wires

    state = init_state(layout.n_wires)
    apply_circuit(state, prep)
    records = [(0, _mask_probability(state, mask, d))]

    if style == ORACLE_CIRCUIT:
        cond_ops = pipeline.condition.ops
        uncond_ops = pipeline.condition.inverse().ops
        cwires = pipeline.condition_wires
    inv_prep_ops = prep.inverse().ops
    zero_anti = tuple(range(1, layout.n_wires))

    for l, (a, b) in enumerate(zip(alphas, betas), start=1):
        if style == ORACLE_CIRCUIT:
            for op in cond_ops:
                apply(state, op)
            apply(state, GateOp(PHASE, (cwires[0],), controls=cwires[1:], angle=a))
            for op in uncond_ops:
                apply(state, op)
        else:
            apply_phase_to_low_wire_mask(state, mask, d, a)
        for op in inv_prep_ops:
            apply(state, op)
        apply(state, GateOp(X, (0,)))
        apply(state, GateOp(PHASE, (0,), anti_controls=zero_anti, angle=b))
        apply(state, GateOp(X, (0,)))
        for op in prep.ops:
            apply(state, op)
        records.append((l, _mask_probability(state, mask, d)))
    return records, state, style, mask


def _mask_probability(state: StateVector, mask: np.ndarray, n_data: int) -> float:
    return float(low_wire_probabilities(state, n_data)[mask].sum())


def _space_size(instance: Instance, mode: str) -> int:
    if mode == FULL:
        return 1 << (instance.machines * sum(job_widths(instance)))
    return instance.window ** (instance.machines * instance.jobs)


def run_fixed_point(instance: Instance, mode: str, rounds: int | None = None,
                    delta: float = 0.1, *, coin_style: str = COIN_REUSE,
                    oracle: str = ORACLE_AUTO) -> SearchTrace:
    """Fixed-point search trace; ``rounds`` defaults to the sufficient pair count
    for the instance's exact solution fraction."""
    n = _space_size(instance, mode)
    m = int(marked_mask(instance).size)
    if m == 0:
        raise ValidationError("instance has no solutions; nothing to amplify")
    if rounds is None:
        rounds = required_rounds(m / n, delta)
    seq = fixed_point_angles(rounds, delta)
    records, _, style, _ = run_search(instance, mode, seq.alphas, seq.betas,
                                      coin_style=coin_style, oracle=oracle)
    return SearchTrace(instance.machines, instance.jobs, instance.window,
                       instance.offsets, mode, FIXED_POINT, style, coin_style,
                       rounds, delta, m, n, tuple(records))


def run_grover(instance: Instance, mode: str, iterations: int, *,
               coin_style: str = COIN_REUSE, oracle: str = ORACLE_AUTO) -> SearchTrace:
    """Plain amplitude amplification: every phase is pi."""
    if iterations < 0:
        raise ValidationError("iterations must be >= 0")
    n = _space_size(instance, mode)
    m = int(marked_mask(instance).size)
    angles = [math.pi] * iterations
    records, _, style, _ = run_search(instance, mode, angles, angles,
                                      coin_style=coin_style, oracle=oracle)
    return SearchTrace(instance.machines, instance.jobs, instance.window,
                       instance.offsets, mode, GROVER, style, coin_style,
                       iterations, None, m, n, tuple(records))


def verify_samples(instance: Instance, mode: str, rounds: int | None = None,
                   delta: float = 0.1, shots: int = 10_000, seed: int = 0, *,
                   coin_style: str = COIN_REUSE, oracle: str = ORACLE_AUTO) -> dict:
    """Sample the final search state and check the pass fraction against the
    exact probability within five binomial standard deviations."""
    if shots < 1:
        raise ValidationError("shots must be >= 1")
    n = _space_size(instance, mode)
    mask = marked_mask(instance)
    m = int(mask.size)
    if rounds is None:
        rounds = required_rounds(m / n, delta)
    seq = fixed_point_angles(rounds, delta)
    records, state, style, _ = run_search(instance, mode, seq.alphas, seq.betas,
                                          coin_style=coin_style, oracle=oracle)
    exact = records[-1][1]
    d = build_layout(instance, mode, oracle_wires=False).n_data_wires
    mask_set = set(int(x) for x in mask)
    hist = sample(state, shots, seed)
    hits = sum(c for idx, c in hist.items() if (idx & ((1 << d) - 1)) in mask_set)
    frac = hits / shots
    sigma = math.sqrt(max(exact * (1.0 - exact), 0.0) / shots)
    return {
        "mode": mode,
        "oracle": style,
        "rounds": rounds,
        "delta": delta,
        "shots": shots,
        "seed": seed,
        "exact_final_probability": exact,
        "sample_pass_fraction": frac,
        "sigma": sigma,
        "within_5_sigma": abs(frac - exact) <= 5.0 * sigma + 1e-12,
    }


def prep_support_report(instance: Instance, coin_style: str = COIN_REUSE) -> dict:
    """Enumerate the nonzero data amplitudes after walk preparation.

    Reports the support as per-register bit strings (most significant bit
    first, jobs left to right, machines separated by '|'), the amplitude
    magnitude spread, and the probability that every coin wire reads 0.
    """
    layout = build_layout(instance, "reduced", coin_style=coin_style, oracle_wires=False)
    prep = build_walk_prep(instance, layout)
    state = init_state(layout.n_wires)
    apply_circuit(state, prep)
    d = layout.n_data_wires
    probs = low_wire_probabilities(state, d)
    support = np.nonzero(probs > 1e-18)[0]

    coin_zero = 1.0
    if layout.coin_wires:
        keep = np.abs(state.amps) ** 2
        idx = np.arange(keep.size, dtype=np.int64)
        sel = np.ones(keep.size, dtype=bool)
        for w in layout.coin_wires:
            sel &= ((idx >> w) & 1) == 0
        coin_zero = float(keep[sel].sum())

    expected = instance.window ** (instance.machines * instance.jobs)
    patterns = [_format_pattern(layout, int(i)) for i in support]
    mags = np.sqrt(probs[support])
    return {
        "machines": instance.machines,
        "jobs": instance.jobs,
        "window": instance.window,
        "offsets": list(instance.offsets),
        "coin_style": coin_style,
        "support_size": int(support.size),
        "expected_support_size": expected,
        "patterns": patterns,
        "magnitude_min": float(mags.min()),
        "magnitude_max": float(mags.max()),
        "coin_zero_probability": coin_zero,
        "uniform": bool(mags.max() - mags.min() < 1e-9),
    }


def _format_pattern(layout, basis_index: int) -> str:
    groups = []
    for regs in layout.data_regs:
        parts = []
        for reg in regs:
            bits = "".join(str((basis_index >> w) & 1) for w in reversed(reg.wires))
            parts.append(bits)
        groups.append(" ".join(parts))
    return "|".join(groups)
