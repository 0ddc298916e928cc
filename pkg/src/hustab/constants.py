"""Stability constants per case, the sup-plus-integral comparison constant,
and side-by-side comparison tables."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .classifier import THRESHOLD_TOL, Case, CaseLabel, classify
from .errors import HusError, NotApplicableError, OutOfRegimeError
from .timescale import Phase, StepPair, check_regressive, cycle_product, delta_sum_limit, factors


class Reason(str, enum.Enum):
    HAS_CONSTANT = "HasConstant"
    NO_HUS = "NoHus"
    NOT_REGRESSIVE = "NotRegressive"


@dataclass(frozen=True)
class HusVerdict:
    case: CaseLabel
    constant: Optional[float]
    minimal: bool
    reason: Reason


@dataclass(frozen=True)
class AndrasConstant:
    """sup|e| + sup of the Delta-integral, split by the phase of t."""

    sup_even: float
    sup_odd: float
    tail_even: float
    tail_odd: float

    @property
    def even_branch(self) -> float:
        return self.sup_even + self.tail_even

    @property
    def odd_branch(self) -> float:
        return self.sup_odd + self.tail_odd

    @property
    def best(self) -> float:
        return min(self.even_branch, self.odd_branch)


def _quad(steps: StepPair, lam: float) -> float:
    """(2 + (a+b)lam + a*b*lam**2)/(a*b), which is (lam-lam+)(lam-lam-) when real."""
    a, b = steps.alpha, steps.beta
    return (2.0 + a * lam + b * lam + a * b * lam * lam) / (a * b)


def _roots_product(label: CaseLabel, lam: float) -> float:
    th = label.thresholds
    return (lam - th.lambda_plus) * (lam - th.lambda_minus)


def gh_constant(alpha: float, beta: float, lam: float) -> float:
    """Constant for both factors negative; symmetric in alpha and beta."""
    num = max(1 / beta - 1 / alpha - lam, 1 / alpha - 1 / beta - lam)
    return num / (abs(lam) * abs(lam + 1 / alpha + 1 / beta))


def theorem_constant(steps: StepPair, lam: float, tol: float = THRESHOLD_TOL) -> HusVerdict:
    label = classify(steps, lam, tol)
    a, b = steps.alpha, steps.beta
    tag = label.tag
    if tag is Case.K:
        return HusVerdict(label, None, False, Reason.NOT_REGRESSIVE)
    if tag is Case.J:
        return HusVerdict(label, None, False, Reason.NO_HUS)

    if tag is Case.A:
        k = abs(lam + 1 / a - 1 / b) / _roots_product(label, lam)
    elif tag is Case.B:
        k = abs((lam + 1 / a - 1 / b) / _roots_product(label, lam))
    elif tag is Case.C:
        k = abs((lam + 1 / a - 1 / b) / _quad(steps, lam))
    elif tag is Case.D:
        k = (1 / a - 1 / b - lam) / _roots_product(label, lam)
    elif tag is Case.E:
        k = (1 / a - 1 / b - lam) / abs(_roots_product(label, lam))
    elif tag is Case.F:
        k = abs((1 / a - 1 / b - lam) / _quad(steps, lam))
    elif tag in (Case.G, Case.H):
        k = gh_constant(a, b, lam)
    else:
        k = 1 / abs(lam)
    return HusVerdict(label, k, tag is Case.I, Reason.HAS_CONSTANT)


def andras_constant(steps: StepPair, lam: float) -> AndrasConstant:
    """Comparison constant sup|e_lam| + sup int_0^t |e_lam(t, sigma(s))| Delta s.

    The sups are taken separately over even and odd points. Raises
    NotApplicableError when |(1+lam*alpha)(1+lam*beta)| >= 1, where the
    integral is unbounded.
    """
    check_regressive(steps, lam)
    p = cycle_product(steps, lam)
    if abs(p) >= 1.0:
        raise NotApplicableError(f"|(1+lam*alpha)(1+lam*beta)| = {abs(p)} >= 1")
    fa, _ = factors(steps, lam)
    return AndrasConstant(
        sup_even=1.0,
        sup_odd=abs(fa),
        tail_even=delta_sum_limit(steps, lam, Phase.EVEN),
        tail_odd=delta_sum_limit(steps, lam, Phase.ODD),
    )


def hz_reduction_check(h: float, lam: float, tol: float = THRESHOLD_TOL) -> tuple[float, float]:
    """Evaluate the two-step G/H constant at alpha = beta = h next to 1/|lam + 2/h|.

    Valid for lam < -1/h with lam != -2/h; returns (reduced, uniform).
    """
    if not (h > 0 and math.isfinite(h)):
        raise OutOfRegimeError(f"step must be positive, got {h}")
    if lam >= -1 / h - tol or abs(lam + 2 / h) <= tol:
        raise OutOfRegimeError(f"lambda={lam} is not below -1/h or equals -2/h (h={h})")
    steps = StepPair(h, h, strict=False)
    reduced = gh_constant(steps.alpha, steps.beta, lam)
    return reduced, 1 / abs(lam + 2 / h)


@dataclass(frozen=True)
class CompareRow:
    lam: float
    case: Optional[Case]
    theorem_constant: Optional[float] = None
    andras_even: Optional[float] = None
    andras_odd: Optional[float] = None
    winner: Optional[str] = None
    error: Optional[str] = None


def _winner(theorem: Optional[float], andras: Optional[float]) -> Optional[str]:
    if theorem is None and andras is None:
        return None
    if andras is None:
        return "theorem"
    if theorem is None:
        return "andras"
    if theorem < andras:
        return "theorem"
    if andras < theorem:
        return "andras"
    return "tie"


def compare_row(steps: StepPair, lam: float, tol: float = THRESHOLD_TOL) -> CompareRow:
    try:
        verdict = theorem_constant(steps, lam, tol)
    except HusError as exc:
        return CompareRow(lam, None, error=str(exc))
    tag = verdict.case.tag
    if tag in (Case.J, Case.K):
        return CompareRow(lam, tag)
    try:
        ak = andras_constant(steps, lam)
    except NotApplicableError:
        ak = None
    return CompareRow(
        lam,
        tag,
        theorem_constant=verdict.constant,
        andras_even=ak.even_branch if ak else None,
        andras_odd=ak.odd_branch if ak else None,
        winner=_winner(verdict.constant, ak.best if ak else None),
    )


def compare_table(steps: StepPair, lambdas: Iterable[float],
                  tol: float = THRESHOLD_TOL) -> list[CompareRow]:
    return [compare_row(steps, lam, tol) for lam in lambdas]
