"""Arithmetic on the two-step time scale {0, a, a+b, 2a+b, 2(a+b), ...}.

Grid points are addressed as ``(k, phase)`` and never by their real
coordinate, so the even/odd logic stays exact. The real coordinate is
available through :func:`t_of`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import (
    InvalidStepsError,
    NonRegressiveError,
    NotConvergentError,
    OutOfRangeError,
)

REGRESSIVE_TOL = 1e-12


class Phase(enum.IntEnum):
    EVEN = 0
    ODD = 1


@dataclass(frozen=True)
class StepPair:
    """The two alternating step sizes; ``alpha`` is taken first from t=0.

    ``strict=False`` allows ``alpha == beta`` (the uniform grid hZ), which is
    only used to check how the two-step constants reduce on hZ.
    """

    alpha: float
    beta: float
    strict: bool = True

    def __post_init__(self) -> None:
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise InvalidStepsError(f"{name} must be a positive finite real, got {v!r}")
        if self.strict and self.alpha == self.beta:
            raise InvalidStepsError("alpha and beta must differ (use strict=False for hZ)")

    @property
    def period(self) -> float:
        return self.alpha + self.beta


@dataclass(frozen=True, order=True)
class GridPoint:
    k: int
    phase: Phase = Phase.EVEN

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"cycle index must be nonnegative, got {self.k}")
        object.__setattr__(self, "phase", Phase(self.phase))

    @property
    def index(self) -> int:
        """Position in the enumeration (0,E), (0,O), (1,E), ..."""
        return 2 * self.k + int(self.phase)

    @classmethod
    def from_index(cls, n: int) -> "GridPoint":
        return cls(n // 2, Phase(n % 2))


def grid(n_points: int) -> Iterator[GridPoint]:
    """The first ``n_points`` grid points in increasing order."""
    for n in range(n_points):
        yield GridPoint.from_index(n)


def t_of(steps: StepPair, p: GridPoint) -> float:
    return p.k * steps.period + (steps.alpha if p.phase is Phase.ODD else 0.0)


def mu(steps: StepPair, p: GridPoint) -> float:
    """Graininess: alpha at even points, beta at odd points."""
    return steps.alpha if p.phase is Phase.EVEN else steps.beta


def sigma(p: GridPoint) -> GridPoint:
    """Forward jump."""
    if p.phase is Phase.EVEN:
        return GridPoint(p.k, Phase.ODD)
    return GridPoint(p.k + 1, Phase.EVEN)


def is_regressive(steps: StepPair, lam: float, tol: float = REGRESSIVE_TOL) -> bool:
    return abs(lam + 1.0 / steps.alpha) > tol and abs(lam + 1.0 / steps.beta) > tol


def check_regressive(steps: StepPair, lam: float, tol: float = REGRESSIVE_TOL) -> None:
    if not is_regressive(steps, lam, tol):
        raise NonRegressiveError(
            f"lambda={lam!r} hits -1/alpha or -1/beta (alpha={steps.alpha}, beta={steps.beta})"
        )


def factors(steps: StepPair, lam: float) -> tuple[float, float]:
    """The one-step growth factors (1 + lam*alpha, 1 + lam*beta)."""
    return 1.0 + lam * steps.alpha, 1.0 + lam * steps.beta


def cycle_product(steps: StepPair, lam: float) -> float:
    fa, fb = factors(steps, lam)
    return fa * fb


def exp_lambda(steps: StepPair, lam: float, p: GridPoint, tol: float = REGRESSIVE_TOL) -> float:
    """e_lam(t, 0) at grid point ``p``.

    The cycle product is raised to the integer power k, so negative products
    keep the right sign.
    """
    check_regressive(steps, lam, tol)
    fa, fb = factors(steps, lam)
    value = (fa * fb) ** p.k
    if p.phase is Phase.ODD:
        value *= fa
    return value


def exp_values(steps: StepPair, lam: float, n_points: int, tol: float = REGRESSIVE_TOL) -> np.ndarray:
    """e_lam at the first ``n_points`` grid points, as an array."""
    check_regressive(steps, lam, tol)
    return np.array([exp_lambda(steps, lam, p, tol) for p in grid(n_points)])


@dataclass(frozen=True)
class GridFunction:
    """Samples of a real function on consecutive grid points from (0, EVEN)."""

    steps: StepPair
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.values) < 2:
            raise ValueError("a grid function needs at least two samples")

    @classmethod
    def from_callable(cls, steps: StepPair, f, n_points: int) -> "GridFunction":
        """Sample ``f(t)`` at the first ``n_points`` grid points."""
        return cls(steps, tuple(f(t_of(steps, p)) for p in grid(n_points)))

    def __len__(self) -> int:
        return len(self.values)

    def __call__(self, p: GridPoint) -> float:
        if p.index >= len(self.values):
            raise OutOfRangeError(f"{p} is outside the {len(self.values)} sampled points")
        return self.values[p.index]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values)


def delta_derivative(f: GridFunction, p: GridPoint) -> float:
    """(f(sigma(p)) - f(p)) / mu(p)."""
    return (f(sigma(p)) - f(p)) / mu(f.steps, p)


def _geometric(r: float, n: int) -> float:
    """sum_{j<n} r**j for r >= 0."""
    if r == 1.0:
        return float(n)
    return (r**n - 1.0) / (r - 1.0)


def delta_sum_abs_exp(steps: StepPair, lam: float, end: GridPoint,
                      tol: float = REGRESSIVE_TOL) -> float:
    """Closed form of int_0^t |e_lam(t, sigma(s))| Delta s with t = t(end).

    The kernel is taken as |p|**((t - sigma(s))/(alpha+beta)) with
    p = (1+lam*alpha)(1+lam*beta), i.e. the modulus interpolated along the
    real exponent. This is the form the comparison constant is built from;
    :func:`delta_sum_abs_exp_direct` sums the same kernel point by point.
    """
    check_regressive(steps, lam, tol)
    a, b = steps.alpha, steps.beta
    r = abs(cycle_product(steps, lam))
    k = end.k
    if end.phase is Phase.EVEN:
        return _geometric(r, k) * (a * r ** (b / (a + b)) + b)
    return b * r ** (a / (a + b)) * _geometric(r, k) + a * _geometric(r, k + 1)


def delta_sum_abs_exp_direct(steps: StepPair, lam: float, end: GridPoint,
                             kernel: str = "interpolated",
                             tol: float = REGRESSIVE_TOL) -> float:
    """Brute-force Delta-sum of |e_lam(t, sigma(s))| over grid points s < t.

    ``kernel="interpolated"`` uses |p|**((t - sigma(s))/(alpha+beta)) and
    agrees with :func:`delta_sum_abs_exp`. ``kernel="exact"`` uses the true
    two-factor exponential e_lam(t, 0)/e_lam(sigma(s), 0); the two differ
    whenever |1+lam*alpha| != |p|**(alpha/(alpha+beta)).
    """
    check_regressive(steps, lam, tol)
    if kernel not in ("interpolated", "exact"):
        raise ValueError(f"unknown kernel {kernel!r}")
    r = abs(cycle_product(steps, lam))
    t_end = t_of(steps, end)
    e_end = exp_lambda(steps, lam, end, tol)
    total = 0.0
    for n in range(end.index):
        s = GridPoint.from_index(n)
        nxt = sigma(s)
        if kernel == "interpolated":
            w = r ** ((t_end - t_of(steps, nxt)) / steps.period)
        else:
            w = abs(e_end / exp_lambda(steps, lam, nxt, tol))
        total += mu(steps, s) * w
    return total


def delta_sum_limit(steps: StepPair, lam: float, phase: Phase,
                    tol: float = REGRESSIVE_TOL) -> float:
    """Limit of :func:`delta_sum_abs_exp` as k -> infinity along ``phase``."""
    check_regressive(steps, lam, tol)
    a, b = steps.alpha, steps.beta
    r = abs(cycle_product(steps, lam))
    if r >= 1.0:
        raise NotConvergentError(f"|(1+lam*alpha)(1+lam*beta)| = {r} >= 1; the sum diverges")
    if Phase(phase) is Phase.EVEN:
        return (b + a * r ** (b / (a + b))) / (1.0 - r)
    return (a + b * r ** (a / (a + b))) / (1.0 - r)

