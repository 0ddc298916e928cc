"""Partition of (alpha, beta, lambda) into the stability cases A through K.

Cases, for lambda between -1/alpha and -1/beta (factors of opposite sign):

    alpha >= (3+2*sqrt2)*beta    A outside [lam-, lam+], B strictly inside
    beta < alpha < (3+2*sqrt2)*beta    C
    alpha <= (3-2*sqrt2)*beta    D outside, E inside
    (3-2*sqrt2)*beta < alpha < beta    F

Both factors negative: G above -1/alpha-1/beta, H below. Both positive: I.
J collects lambda in {0, lam+, lam-, -1/alpha-1/beta}, K the two
non-regressive values. Exceptional sets are checked first (K, then J).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidStepsError
from .timescale import StepPair, factors

THRESHOLD_TOL = 1e-9


class Case(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"
    H = "H"
    I = "I"  # noqa: E741
    J = "J"
    K = "K"


class Signature(str, enum.Enum):
    """Where p = (1+lam*alpha)(1+lam*beta) sits; an independent view of the case."""

    POS_REGRESSIVE = "PosRegressive"
    IN_UNIT_NEG = "InUnitNeg"
    BEYOND_UNIT_NEG = "BeyondUnitNeg"
    IN_UNIT_POS = "InUnitPos"
    BEYOND_UNIT_POS = "BeyondUnitPos"
    ON_UNIT = "OnUnit"
    ZERO = "Zero"


@dataclass(frozen=True)
class Thresholds:
    product: float
    neg_inv_alpha: float
    neg_inv_beta: float
    neg_sum: float
    discriminant: float
    lambda_plus: Optional[float] = None
    lambda_minus: Optional[float] = None

    @property
    def has_roots(self) -> bool:
        return self.lambda_plus is not None


@dataclass(frozen=True)
class CaseLabel:
    tag: Case
    thresholds: Thresholds


def unit_roots(alpha: float, beta: float) -> Optional[tuple[float, float]]:
    """Real roots (lam+, lam-) of alpha*beta*x**2 + (alpha+beta)*x + 2 = 0, or None."""
    disc = alpha * alpha + beta * beta - 6.0 * alpha * beta
    if disc < 0:
        return None
    s = math.sqrt(disc)
    # lam- never cancels; recover lam+ from the product of roots 2/(alpha*beta)
    lam_minus = (-alpha - beta - s) / (2.0 * alpha * beta)
    lam_plus = 2.0 / (alpha * beta * lam_minus)
    return lam_plus, lam_minus


def thresholds(steps: StepPair, lam: float) -> Thresholds:
    a, b = steps.alpha, steps.beta
    fa, fb = factors(steps, lam)
    roots = unit_roots(a, b)
    lp, lm = roots if roots is not None else (None, None)
    return Thresholds(
        product=fa * fb,
        neg_inv_alpha=-1.0 / a,
        neg_inv_beta=-1.0 / b,
        neg_sum=-1.0 / a - 1.0 / b,
        discriminant=a * a + b * b - 6.0 * a * b,
        lambda_plus=lp,
        lambda_minus=lm,
    )


def classify(steps: StepPair, lam: float, tol: float = THRESHOLD_TOL) -> CaseLabel:
    if not steps.strict or steps.alpha == steps.beta:
        raise InvalidStepsError("classification requires two distinct step sizes")
    th = thresholds(steps, lam)

    def near(x: Optional[float]) -> bool:
        return x is not None and abs(lam - x) <= tol

    if near(th.neg_inv_alpha) or near(th.neg_inv_beta):
        tag = Case.K
    elif near(0.0) or near(th.lambda_plus) or near(th.lambda_minus) or near(th.neg_sum):
        tag = Case.J
    else:
        fa, fb = factors(steps, lam)
        if fa > 0 and fb > 0:
            tag = Case.I
        elif fa < 0 and fb < 0:
            tag = Case.G if lam > th.neg_sum else Case.H
        else:
            inside = th.has_roots and th.lambda_minus < lam < th.lambda_plus
            if steps.alpha > steps.beta:
                tag = (Case.B if inside else Case.A) if th.has_roots else Case.C
            else:
                tag = (Case.E if inside else Case.D) if th.has_roots else Case.F
    return CaseLabel(tag, th)


def product_signature(steps: StepPair, lam: float, tol: float = THRESHOLD_TOL) -> Signature:
    fa, fb = factors(steps, lam)
    p = fa * fb
    if abs(p) <= tol:
        return Signature.ZERO
    if abs(abs(p) - 1.0) <= tol:
        return Signature.ON_UNIT
    if fa > 0 and fb > 0:
        return Signature.POS_REGRESSIVE
    if p < 0:
        return Signature.IN_UNIT_NEG if p > -1.0 else Signature.BEYOND_UNIT_NEG
    return Signature.IN_UNIT_POS if p < 1.0 else Signature.BEYOND_UNIT_POS


EXPECTED_SIGNATURE = {
    Case.A: Signature.IN_UNIT_NEG,
    Case.C: Signature.IN_UNIT_NEG,
    Case.D: Signature.IN_UNIT_NEG,
    Case.F: Signature.IN_UNIT_NEG,
    Case.B: Signature.BEYOND_UNIT_NEG,
    Case.E: Signature.BEYOND_UNIT_NEG,
    Case.G: Signature.IN_UNIT_POS,
    Case.H: Signature.BEYOND_UNIT_POS,
    Case.I: Signature.POS_REGRESSIVE,
    Case.J: Signature.ON_UNIT,
    Case.K: Signature.ZERO,
}
