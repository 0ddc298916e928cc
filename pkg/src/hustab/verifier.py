"""Empirical checks of stability constants.

An epsilon-approximate solution is generated by forcing the recurrence
phi(sigma(t)) = (1 + lam*mu(t)) phi(t) + mu(t) q(t) with |q| <= eps. The
closest exact solution c*e_lam in the sup norm is found by a one-parameter
minimax fit, and the worst sign pattern q in {-eps, +eps}^(n-1) gives a lower
bound on any valid constant over that horizon.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .classifier import Case, classify
from .constants import theorem_constant
from .errors import PatternLengthMismatchError, TooLargeError
from .timescale import (
    GridFunction,
    Phase,
    StepPair,
    check_regressive,
    exp_values,
    factors,
    grid,
)

BRUTE_FORCE_CAP = 16
FIT_TOL = 1e-12
_MAX_TERNARY_ITER = 400
UPPER_SLACK = 1e-9
GROWTH_FACTOR = 1.05


class Envelope(str, enum.Enum):
    E1 = "E1"
    E2 = "E2"
    E3 = "E3"


@dataclass(frozen=True)
class Alternating:
    envelope: Envelope
    sign: int = 1


@dataclass(frozen=True)
class Greedy:
    pass


@dataclass(frozen=True)
class Explicit:
    values: tuple[float, ...]


@dataclass(frozen=True)
class RandomPattern:
    seed: int


Pattern = Union[Alternating, Greedy, Explicit, RandomPattern]


@dataclass(frozen=True)
class Perturbation:
    epsilon: float
    pattern: Pattern

    def __post_init__(self) -> None:
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if isinstance(self.pattern, Explicit):
            vals = tuple(float(v) for v in self.pattern.values)
            bad = [v for v in vals if not abs(v) <= self.epsilon]
            if bad:
                raise ValueError(f"explicit perturbation exceeds epsilon={self.epsilon}: {bad[:3]}")
            object.__setattr__(self, "pattern", Explicit(vals))
        elif isinstance(self.pattern, Alternating) and self.pattern.sign not in (1, -1):
            raise ValueError("alternating sign must be +1 or -1")


@dataclass(frozen=True)
class Trajectory:
    steps: StepPair
    lam: float
    phi: GridFunction
    q: tuple[float, ...]
    epsilon: float


@dataclass(frozen=True)
class FitResult:
    c_star: float
    deviation: float
    ratio: float


class SearchMode(str, enum.Enum):
    BRUTE_FORCE = "bruteforce"
    GREEDY = "greedy"
    ALTERNATING_BEST = "alternating"


@dataclass(frozen=True)
class AdversarialResult:
    ratio: float
    pattern: tuple[int, ...]
    mode: SearchMode


@dataclass(frozen=True)
class VerifyReport:
    case: Case
    n_points: int
    mode: Optional[SearchMode]
    claimed_constant: Optional[float]
    empirical_lower_bound: Optional[float]
    margin: Optional[float]
    passed: bool
    pattern: tuple[int, ...] = ()
    growth: Optional[tuple[float, float]] = field(default=None)


def envelope_signs(steps: StepPair, lam: float, envelope: Envelope, n: int) -> np.ndarray:
    """Signs of the proof envelopes E1/E2/E3 at the first ``n`` grid points.

    A zero envelope value counts as +1 so the pattern stays in {-1, +1}.
    """
    a, b = steps.alpha, steps.beta
    even_val, odd_val, alternate = {
        Envelope.E1: (lam + 1 / a + 1 / b, lam + 1 / a - 1 / b, True),
        Envelope.E2: (1 / a - 1 / b - lam, 1 / a + 1 / b + lam, True),
        Envelope.E3: (1 / a - 1 / b - lam, 1 / a - 1 / b + lam, False),
    }[Envelope(envelope)]
    out = np.empty(n)
    for p in grid(n):
        s = math.copysign(1.0, even_val if p.phase is Phase.EVEN else odd_val)
        if alternate and p.k % 2:
            s = -s
        out[p.index] = s
    return out


def _step_arrays(steps: StepPair, lam: float, n_points: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-step growth factor and graininess for the n_points - 1 transitions."""
    fa, fb = factors(steps, lam)
    m = n_points - 1
    growth = np.where(np.arange(m) % 2 == 0, fa, fb)
    mus = np.where(np.arange(m) % 2 == 0, steps.alpha, steps.beta)
    return growth, mus


def _sup_dev(phi: np.ndarray, e: np.ndarray, c: np.ndarray) -> np.ndarray:
    return np.max(np.abs(phi - c[..., None] * e), axis=-1)


def _minimax(phi: np.ndarray, e: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise argmin_c max_n |phi_n - c e_n| by ternary search.

    ``phi`` has shape (m, n), ``e`` shape (n,) with no zeros. The objective is
    convex and piecewise linear in c, so ternary search converges to the
    unique minimizer.
    """
    ratios = phi / e
    span = np.max(np.abs(ratios), axis=1) + 1.0
    lo = np.min(ratios, axis=1) - span
    hi = np.max(ratios, axis=1) + span
    # tolerance in c tight enough that the deviation is accurate to ~FIT_TOL
    tol = FIT_TOL / max(1.0, float(np.max(np.abs(e))))
    for _ in range(_MAX_TERNARY_ITER):
        width = hi - lo
        if np.all(width <= tol):
            break
        d = width / 3.0
        m1 = lo + d
        m2 = hi - d
        left = _sup_dev(phi, e, m1) < _sup_dev(phi, e, m2)
        new_hi = np.where(left, m2, hi)
        new_lo = np.where(left, lo, m1)
        if np.array_equal(new_hi, hi) and np.array_equal(new_lo, lo):
            break
        lo, hi = new_lo, new_hi
    c = 0.5 * (lo + hi)
    return c, _sup_dev(phi, e, c)


def _fit_values(phi: np.ndarray, e: np.ndarray) -> tuple[float, float]:
    c, dev = _minimax(phi[None, :], e)
    return float(c[0]), float(dev[0])


def integrate(steps: StepPair, lam: float, phi0: float, perturbation: Perturbation,
              n_points: int) -> Trajectory:
    """Forward recursion of an epsilon-approximate solution from phi(0) = phi0."""
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    check_regressive(steps, lam)
    eps = perturbation.epsilon
    pat = perturbation.pattern
    m = n_points - 1
    growth, mus = _step_arrays(steps, lam, n_points)
    phi = np.empty(n_points)
    phi[0] = phi0

    if isinstance(pat, Greedy):
        e = exp_values(steps, lam, n_points)
        q = np.empty(m)
        for i in range(m):
            c_prev, _ = _fit_values(phi[: i + 1], e[: i + 1])
            base = growth[i] * phi[i]
            up = base + mus[i] * eps
            down = base - mus[i] * eps
            target = c_prev * e[i + 1]
            q[i] = eps if abs(up - target) >= abs(down - target) else -eps
            phi[i + 1] = up if q[i] > 0 else down
    else:
        if isinstance(pat, Alternating):
            q = pat.sign * eps * envelope_signs(steps, lam, pat.envelope, m)
        elif isinstance(pat, Explicit):
            if len(pat.values) != m:
                raise PatternLengthMismatchError(
                    f"explicit pattern has {len(pat.values)} values, need {m}")
            q = np.asarray(pat.values, dtype=float)
        elif isinstance(pat, RandomPattern):
            q = np.random.default_rng(pat.seed).uniform(-eps, eps, m)
        else:
            raise TypeError(f"unknown perturbation pattern {pat!r}")
        for i in range(m):
            phi[i + 1] = growth[i] * phi[i] + mus[i] * q[i]

    return Trajectory(steps, lam, GridFunction(steps, tuple(phi)), tuple(float(v) for v in q), eps)


def best_fit(traj: Trajectory) -> FitResult:
    """Exact solution c*e_lam closest to the trajectory in the sup norm."""
    phi = traj.phi.as_array()
    e = exp_values(traj.steps, traj.lam, len(phi))
    c, dev = _fit_values(phi, e)
    return FitResult(c, dev, dev / traj.epsilon)


def _all_patterns(m: int) -> np.ndarray:
    """All sign sequences of length m in lexicographic order (-1 before +1)."""
    return np.array(list(itertools.product((-1.0, 1.0), repeat=m)))


def _brute_force(steps: StepPair, lam: float, n_points: int) -> AdversarialResult:
    growth, mus = _step_arrays(steps, lam, n_points)
    e = exp_values(steps, lam, n_points)
    qs = _all_patterns(n_points - 1)
    phi = np.zeros((qs.shape[0], n_points))
    for i in range(n_points - 1):
        phi[:, i + 1] = growth[i] * phi[:, i] + mus[i] * qs[:, i]
    _, dev = _minimax(phi, e)
    best = float(np.max(dev))
    # lexicographically smallest among maximizers, up to rounding
    idx = int(np.argmax(dev >= best * (1.0 - 1e-12)))
    return AdversarialResult(float(dev[idx]), tuple(int(s) for s in qs[idx]), SearchMode.BRUTE_FORCE)


def _signs(q: tuple[float, ...]) -> tuple[int, ...]:
    return tuple(1 if v >= 0 else -1 for v in q)


def adversarial_lower_bound(steps: StepPair, lam: float, n_points: int,
                            mode: SearchMode | str = SearchMode.BRUTE_FORCE) -> AdversarialResult:
    """Largest deviation/epsilon ratio over sign patterns (computed at eps = 1)."""
    mode = SearchMode(mode)
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    check_regressive(steps, lam)
    if mode is SearchMode.BRUTE_FORCE:
        if n_points > BRUTE_FORCE_CAP:
            raise TooLargeError(
                f"brute force is capped at {BRUTE_FORCE_CAP} points, got {n_points}")
        return _brute_force(steps, lam, n_points)
    if mode is SearchMode.GREEDY:
        traj = integrate(steps, lam, 0.0, Perturbation(1.0, Greedy()), n_points)
        return AdversarialResult(best_fit(traj).ratio, _signs(traj.q), mode)

    best: Optional[AdversarialResult] = None
    for env in Envelope:
        for sign in (1, -1):
            traj = integrate(steps, lam, 0.0, Perturbation(1.0, Alternating(env, sign)), n_points)
            r = best_fit(traj).ratio
            if best is None or r > best.ratio:
                best = AdversarialResult(r, _signs(traj.q), mode)
    return best


def verify_case(steps: StepPair, lam: float, n_points: int = 13,
                mode: SearchMode | str | None = None) -> VerifyReport:
    """Compare the worst observed ratio with the claimed constant.

    Cases A-I pass when the lower bound does not exceed the constant; J passes
    when the greedy ratio grows by at least 5% from n to 2n points; K passes
    when the equation is recognised as non-regressive.
    """
    tag = classify(steps, lam).tag
    if tag is Case.K:
        return VerifyReport(tag, n_points, None, None, None, None, True)

    if tag is Case.J:
        r_n = adversarial_lower_bound(steps, lam, n_points, SearchMode.GREEDY)
        r_2n = adversarial_lower_bound(steps, lam, 2 * n_points, SearchMode.GREEDY)
        growth = (r_n.ratio, r_2n.ratio)
        return VerifyReport(
            tag, n_points, SearchMode.GREEDY, None, r_2n.ratio,
            r_2n.ratio / r_n.ratio - 1.0 if r_n.ratio > 0 else math.inf,
            r_2n.ratio >= GROWTH_FACTOR * r_n.ratio, r_2n.pattern, growth,
        )

    if mode is None:
        mode = SearchMode.BRUTE_FORCE if n_points <= BRUTE_FORCE_CAP else SearchMode.GREEDY
    mode = SearchMode(mode)
    claimed = theorem_constant(steps, lam).constant
    res = adversarial_lower_bound(steps, lam, n_points, mode)
    return VerifyReport(
        tag, n_points, mode, claimed, res.ratio, claimed - res.ratio,
        res.ratio <= claimed * (1.0 + UPPER_SLACK), res.pattern,
    )

