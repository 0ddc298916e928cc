"""Hyers-Ulam stability constants for x^Delta = lam*x on a two-step time scale."""
from .classifier import Case, CaseLabel, Signature, Thresholds, classify, product_signature, thresholds
from .constants import (
    AndrasConstant,
    CompareRow,
    HusVerdict,
    Reason,
    andras_constant,
    compare_table,
    hz_reduction_check,
    theorem_constant,
)
from .errors import HusError
from .timescale import GridFunction, GridPoint, Phase, StepPair, exp_lambda, mu, sigma
from .verifier import adversarial_lower_bound, best_fit, integrate, verify_case

__version__ = "0.1.0"
