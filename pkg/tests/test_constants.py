import numpy as np
import pytest

from hustab.classifier import Case, classify
from hustab.constants import (
    Reason,
    _quad,
    andras_constant,
    compare_table,
    hz_reduction_check,
    theorem_constant,
)
from hustab.errors import NotApplicableError, NonRegressiveError, OutOfRegimeError
from hustab.timescale import StepPair

from test_classifier import sample_params


@pytest.mark.parametrize("alpha,beta,lam,tag,expected,rel", [
    (6, 1, -1 / 5, Case.A, 155 / 21, 1e-12),
    (6, 1, -4 / 5, Case.A, 40.8333, 1e-5),
    (3, 1, -1 / 2, Case.C, 14 / 3, 1e-12),
    (3, 1, -4 / 5, Case.C, 6.111, 1e-4),
    (0.1, 1, -1.2, Case.D, 1.238, 2e-4),
    (0.1, 1, -9.2, Case.D, 5.29, 2e-4),
    (1, 0.5, -2.5, Case.G, 2.8, 1e-12),
    (1, 0.5, -2.9, Case.G, 13.45, 2e-4),
    (3, 1, 3.0, Case.I, 1 / 3, 1e-15),
])
def test_theorem_constant_examples(alpha, beta, lam, tag, expected, rel):
    v = theorem_constant(StepPair(alpha, beta), lam)
    assert v.case.tag is tag
    assert v.reason is Reason.HAS_CONSTANT
    assert v.constant == pytest.approx(expected, rel=rel)
    assert v.minimal is (tag is Case.I)


def test_no_constant_cases():
    s = StepPair(6, 1)
    j = theorem_constant(s, 0.0)
    assert j.constant is None and j.reason is Reason.NO_HUS and not j.minimal
    k = theorem_constant(s, -1 / 6)
    assert k.constant is None and k.reason is Reason.NOT_REGRESSIVE


def test_remaining_case_formulas():
    # B, E, F, H against direct transcription of each formula
    s = StepPair(6, 1)
    lam = -0.6
    lp, lm = -0.5, -2 / 3
    assert theorem_constant(s, lam).constant == pytest.approx(
        abs((lam + 1 / 6 - 1) / ((lam - lp) * (lam - lm))), rel=1e-12)
    s = StepPair(0.1, 1)
    th = classify(s, -5.0).thresholds
    assert theorem_constant(s, -5.0).constant == pytest.approx(
        (10 - 1 + 5) / abs((-5 - th.lambda_plus) * (-5 - th.lambda_minus)), rel=1e-12)
    s = StepPair(0.5, 1)
    assert theorem_constant(s, -1.5).constant == pytest.approx(
        abs((2 - 1 + 1.5) / ((2 - 1.5 * 1.5 + 0.5 * 2.25) / 0.5)), rel=1e-12)
    s = StepPair(1, 0.5)
    assert theorem_constant(s, -4.0).constant == pytest.approx(
        max(2 - 1 + 4, 1 - 2 + 4) / (4 * abs(-4 + 3)), rel=1e-12)


def test_positivity_and_quad_identity():
    rng = np.random.default_rng(7)
    for alpha, beta, lam in sample_params(rng, 4000):
        s = StepPair(alpha, beta)
        v = theorem_constant(s, lam)
        tag = v.case.tag
        if tag in (Case.J, Case.K):
            assert v.constant is None
            continue
        assert v.constant > 0
        th = v.case.thresholds
        if tag in (Case.A, Case.D):
            rp = (lam - th.lambda_plus) * (lam - th.lambda_minus)
            assert _quad(s, lam) == pytest.approx(rp, rel=1e-10, abs=1e-12)
        if tag in (Case.G, Case.H):
            assert theorem_constant(StepPair(beta, alpha), lam).constant == pytest.approx(
                v.constant, rel=1e-12)


class TestAndras:
    @pytest.mark.parametrize("alpha,beta,lam,even,odd", [
        (6, 1, -0.2, 7.688, 7.59),
        (6, 1, -0.8, 29.2055, 32.0933),
        (3, 1, -0.5, 5.16, 4.97),
        (3, 1, -0.8, 5.42, 6.101),
        (0.1, 1, -1.2, 2.238, 2.037),
        (0.1, 1, -9.2, 4.10, 3.168),
        (1, 0.5, -2.5, 2.95, 3.52),
        (1, 0.5, -2.9, 10.99, 11.9),
    ])
    def test_branches(self, alpha, beta, lam, even, odd):
        ak = andras_constant(StepPair(alpha, beta), lam)
        # the printed values are rounded to their last shown digit (some truncated)
        assert ak.even_branch == pytest.approx(even, abs=6e-3)
        assert ak.odd_branch == pytest.approx(odd, abs=6e-3)

    def test_closed_form_example_1(self):
        ak = andras_constant(StepPair(6, 1), -0.2)
        assert ak.even_branch == pytest.approx(2 + 25 / 21 * (1 + 6 * 0.4 ** (2 / 7)) - 1, rel=1e-14)
        assert ak.odd_branch == pytest.approx(0.2 + 25 / 21 * (6 + 0.4 ** (12 / 7)), rel=1e-14)

    def test_components(self):
        ak = andras_constant(StepPair(1, 0.5), -2.5)
        assert ak.sup_even == 1.0
        assert ak.sup_odd == pytest.approx(1.5)
        assert ak.even_branch == ak.sup_even + ak.tail_even
        assert ak.odd_branch == ak.sup_odd + ak.tail_odd
        assert min(ak.sup_even, ak.sup_odd, ak.tail_even, ak.tail_odd) > 0

    @pytest.mark.parametrize("alpha,beta,lam", [(6, 1, -0.6), (0.1, 1, -5.0), (1, 0.5, -4.0), (6, 1, 0.0)])
    def test_not_applicable(self, alpha, beta, lam):
        with pytest.raises(NotApplicableError):
            andras_constant(StepPair(alpha, beta), lam)

    def test_non_regressive(self):
        with pytest.raises(NonRegressiveError):
            andras_constant(StepPair(6, 1), -1 / 6)


class TestHZ:
    def test_examples(self):
        assert hz_reduction_check(1, -3) == pytest.approx((1.0, 1.0), rel=1e-15)
        assert hz_reduction_check(2, -1.5) == pytest.approx((2.0, 2.0), rel=1e-15)

    @pytest.mark.parametrize("h,lam", [(1, -2), (1, -1), (1, -0.5), (2, 0.3)])
    def test_out_of_regime(self, h, lam):
        with pytest.raises(OutOfRegimeError):
            hz_reduction_check(h, lam)


class TestCompareTable:
    def test_example_1(self):
        rows = compare_table(StepPair(6, 1), [-0.2, -0.8])
        assert [r.winner for r in rows] == ["theorem", "andras"]
        assert rows[1].andras_even == pytest.approx(29.2055, abs=5e-4)
        assert rows[1].theorem_constant == pytest.approx(40.8333, abs=5e-4)

    def test_example_3(self):
        rows = compare_table(StepPair(0.1, 1), [-1.2, -9.2])
        assert [r.winner for r in rows] == ["theorem", "andras"]
        assert rows[1].andras_odd == pytest.approx(3.168, abs=5e-4)

    def test_exceptional_rows(self):
        rows = compare_table(StepPair(6, 1), [0.0, -1 / 6])
        assert rows[0].case is Case.J and rows[1].case is Case.K
        for r in rows:
            assert r.theorem_constant is None and r.andras_even is None and r.andras_odd is None
            assert r.winner is None

    def test_andras_absent_beyond_unit(self):
        (row,) = compare_table(StepPair(1, 0.5), [-4.0])
        assert row.case is Case.H and row.andras_even is None and row.winner == "theorem"

    def test_order_preserved(self):
        lams = [-0.9, 0.4, -0.2, -0.55]
        assert [r.lam for r in compare_table(StepPair(6, 1), lams)] == lams
