"""Reference comparisons with their published (rounded) values.

Each entry records the parameters, the expected case, and the printed values
of the case constant and of both branches of the sup-plus-integral constant,
together with which side the published comparison favours.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ReferenceRow:
    example: int
    alpha: float
    beta: float
    lam: float
    case: str
    theorem_constant: float
    andras_even: float
    andras_odd: float
    winner: str


REFERENCE_ROWS: tuple[ReferenceRow, ...] = (
    ReferenceRow(1, 6.0, 1.0, -1 / 5, "A", 7.38, 7.688, 7.59, "theorem"),
    ReferenceRow(1, 6.0, 1.0, -4 / 5, "A", 40.8333, 29.2055, 32.0933, "andras"),
    ReferenceRow(2, 3.0, 1.0, -1 / 2, "C", 4.66, 5.16, 4.97, "theorem"),
    ReferenceRow(2, 3.0, 1.0, -4 / 5, "C", 6.111, 5.42, 6.101, "andras"),
    ReferenceRow(3, 0.1, 1.0, -1.2, "D", 1.238, 2.238, 2.037, "theorem"),
    ReferenceRow(3, 0.1, 1.0, -9.2, "D", 5.29, 4.10, 3.168, "andras"),
    ReferenceRow(4, 1.0, 0.5, -2.5, "G", 2.8, 2.95, 3.52, "theorem"),
    ReferenceRow(4, 1.0, 0.5, -2.9, "G", 13.45, 10.99, 11.9, "andras"),
)
