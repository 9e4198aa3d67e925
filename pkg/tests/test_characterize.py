# tests/test_characterize.py

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from models.report_model import Outcome, ReplayReport
from qcalculus.core.scalar import ONE, ZERO, QScalar, eval_exact, qpow
from qcalculus.errors import ConstraintIndexError, DomainError, ReplayInputError
from qcalculus.families.polys import Q
from qcalculus.proofs.characterize import (
    C_SQUARED,
    EXCEPTIONAL_ALPHA,
    AppellExpansion,
    OpsCandidate,
    beta_forcing_check,
    case1_closed_form,
    case1_residual_form,
    case2_endgame,
    check_system,
    constraint_residual,
    derive_beta,
    hermite_gamma,
    hermite_soundness,
    recurrence_defect,
    replay_case1,
    replay_case2,
    uniqueness_report,
)
from qcalculus.proofs.unipoly import UniPolyA

HALF = Fraction(1, 2)


def alpha_expansion(length: int) -> AppellExpansion:
    """a_0 = 1, a_1 = alpha, the rest 0"""
    return AppellExpansion(
        (UniPolyA.const(1), UniPolyA.gen()) + tuple(UniPolyA() for _ in range(length - 2))
    )


class TestUniPoly:
    def test_ring(self):
        alpha = UniPolyA.gen()
        assert (alpha + 1) ** 2 == alpha ** 2 + 2 * alpha + 1
        assert (alpha + 1) * (alpha - 1) == alpha ** 2 - 1
        assert (alpha * Q) / Q == alpha
        assert UniPolyA.const(Q) == Q

    def test_valuation_and_shift(self):
        alpha = UniPolyA.gen()
        p = alpha ** 3 * (1 - Q) + alpha ** 2
        assert p.valuation == 2
        assert p.shift_down(2) == alpha * (1 - Q) + 1
        with pytest.raises(ValueError):
            p.shift_down(3)
        assert UniPolyA().valuation == -1

    def test_substitute(self):
        alpha = UniPolyA.gen()
        assert (alpha ** 2 - Q).substitute(qpow(HALF)).is_zero()
        assert (alpha + 1).eval_coefficients(HALF) == (Fraction(1), Fraction(1))


class TestConstraintResidual:
    def test_hermite_data_vanishes(self):
        exp, cand = AppellExpansion.hermite(9), OpsCandidate.hermite(7)
        for n in range(8):
            for k in range(n + 2):
                assert constraint_residual(n, k, exp, cand).is_zero()

    def test_k_equals_n_is_linear_in_a1(self):
        exp = alpha_expansion(8)
        cand = OpsCandidate(6, (ZERO,) * 7, (ZERO,) * 7)
        alpha = UniPolyA.gen()
        for n in range(7):
            expected = (1 - qpow(HALF)) * (1 + qpow(n + HALF)) * alpha
            assert constraint_residual(n, n, exp, cand) == expected

    def test_trivial_cell(self):
        exp, cand = AppellExpansion.hermite(3), OpsCandidate.hermite(1)
        assert constraint_residual(0, 1, exp, cand) == ZERO

    def test_index_errors(self):
        exp, cand = AppellExpansion.hermite(4), OpsCandidate.hermite(2)
        with pytest.raises(ConstraintIndexError):
            constraint_residual(1, 3, exp, cand)
        with pytest.raises(ConstraintIndexError):
            constraint_residual(3, 0, exp, cand)
        with pytest.raises(ConstraintIndexError):
            AppellExpansion.hermite(2).at(2)

    def test_expansion_must_start_with_one(self):
        with pytest.raises(ValueError):
            AppellExpansion((QScalar(2),))

    def test_defect_polynomial_matches_cells(self):
        exp = AppellExpansion((ONE, QScalar(Fraction(1, 3)), QScalar(Fraction(1, 7)), ZERO, Q, 1 - Q))
        cand = OpsCandidate.hermite(4).perturbed("beta", 2, Q).perturbed("gamma", 3, ONE)
        for n in range(5):
            assert recurrence_defect(n, exp, cand) == [constraint_residual(n, k, exp, cand) for k in range(n + 2)]


class TestCheckSystem:
    def test_hermite(self):
        report = check_system(AppellExpansion.hermite(14), OpsCandidate.hermite(12), 12)
        assert report.outcome is Outcome.FORCED_HERMITE
        assert report.witness is None
        assert len(report.gamma) == 12

    def test_beta_perturbation(self):
        cand = OpsCandidate.hermite(6).perturbed("beta", 0, ONE)
        report = check_system(AppellExpansion.hermite(8), cand, 6)
        assert report.outcome is Outcome.CONTRADICTION_WITNESS
        assert (report.witness.n, report.witness.k) == (0, 0)
        assert report.witness.certificate == "-1"

    def test_gamma_perturbation(self):
        cand = OpsCandidate.hermite(6).perturbed("gamma", 1, ONE)
        report = check_system(AppellExpansion.hermite(8), cand, 6)
        assert (report.witness.n, report.witness.k) == (1, 0)
        assert report.witness.certificate == "1"

    @given(
        st.sampled_from(["beta", "gamma"]),
        st.integers(min_value=1, max_value=5),
        st.fractions(min_value=-3, max_value=3, max_denominator=5).filter(lambda f: f != 0),
    )
    def test_any_perturbation_is_detected(self, which, n, delta):
        cand = OpsCandidate.hermite(6).perturbed(which, n, QScalar(delta) * Q)
        report = check_system(AppellExpansion.hermite(8), cand, 6)
        assert report.outcome is Outcome.CONTRADICTION_WITNESS
        assert report.witness.n <= n + 1
        assert Fraction(report.witness.certificate) != 0

    def test_too_short(self):
        with pytest.raises(ConstraintIndexError):
            check_system(AppellExpansion.hermite(4), OpsCandidate.hermite(6), 6)


class TestBeta:
    def test_zero_a1(self):
        assert all(derive_beta(n, ZERO).is_zero() for n in range(8))

    def test_first(self):
        alpha = UniPolyA.gen()
        assert derive_beta(0, alpha) == alpha * (1 - Q)

    def test_forcing_record(self):
        assert beta_forcing_check(6).passed

    def test_negative(self):
        with pytest.raises(ValueError):
            derive_beta(-1, ONE)


class TestCaseOne:
    def test_closed_form(self):
        alpha = UniPolyA.gen()
        assert case1_closed_form(2, alpha) == alpha
        assert case1_closed_form(3, alpha).is_zero()
        assert case1_closed_form(4, alpha) == alpha ** 2 * ((1 - Q) ** 2 / ((1 - Q) * (1 - Q ** 2)))

    def test_residual_form(self, sample_s):
        alpha = UniPolyA.gen()
        for k in range(2, 5):
            form = case1_residual_form(2 * k, k, alpha)
            assert form.valuation == k - 1
            assert form.substitute(EXCEPTIONAL_ALPHA).is_zero()
            assert eval_exact(form.coeff(k), sample_s) != 0

    def test_replay(self):
        report = replay_case1(8)
        assert report.outcome is Outcome.FORCED_HERMITE
        assert report.all_checks_passed
        names = {c.name for c in report.checks}
        assert {"odd-vanish", "gamma-closed-form", "even-residual-factorization", "exceptional-alpha"} <= names
        assert report.witness is not None
        assert report.components[0].outcome is Outcome.FORCED_HERMITE

    def test_minimum_size(self):
        with pytest.raises(DomainError):
            replay_case1(3)


class TestCaseTwo:
    @pytest.mark.parametrize("a1,a2,s", [(1, 0, HALF), (Fraction(1, 3), Fraction(1, 7), Fraction(2, 3)), (-1, 0, HALF)])
    def test_witness(self, a1, a2, s):
        report = replay_case2(10, Fraction(a1), Fraction(a2), s)
        assert report.outcome is Outcome.CONTRADICTION_WITNESS
        assert report.all_checks_passed
        assert Fraction(report.witness.certificate) != 0

    def test_first_witness_cell(self):
        report = replay_case2(6, Fraction(1), Fraction(0), HALF)
        assert (report.witness.n, report.witness.k) == (2, 0)

    def test_gamma_formula(self):
        report = replay_case2(4, Fraction(1), Fraction(0), HALF)
        q = Fraction(1, 16)
        root = Fraction(1, 4)
        gamma_1 = Fraction(1, 4) * (1 - q) ** 2 * q / root + (1 - root) * (1 + q * root)
        assert Fraction(report.gamma[0]) == gamma_1

    def test_endgame(self):
        records = case2_endgame(6)
        assert [r.name for r in records] == ["endgame-b-forced", "endgame-c-squared", "endgame-gamma-zero"]
        assert all(r.passed for r in records)
        assert C_SQUARED == (1 - Q) ** 2 * qpow(-HALF) / 4

    def test_invalid_samples(self):
        with pytest.raises(ReplayInputError):
            replay_case2(6, Fraction(0), Fraction(1), HALF)
        with pytest.raises(ReplayInputError):
            replay_case2(6, Fraction(1), Fraction(0), Fraction(1))
        with pytest.raises(DomainError):
            replay_case2(3, Fraction(1), Fraction(0), HALF)


class TestReport:
    def test_soundness(self):
        report = hermite_soundness(6)
        assert report.outcome is Outcome.FORCED_HERMITE
        assert report.all_checks_passed
        assert report.gamma[0] == str(hermite_gamma(1))

    def test_case_one_only(self):
        report = uniqueness_report(4, [])
        assert report.outcome is Outcome.FORCED_HERMITE
        assert not report.complete
        assert len(report.components) == 2

    def test_with_sample(self):
        report = uniqueness_report(4, [(Fraction(1), Fraction(0), HALF)])
        assert report.outcome is Outcome.FORCED_HERMITE
        assert report.complete
        assert report.components[2].outcome is Outcome.CONTRADICTION_WITNESS

    def test_serialization(self):
        report = uniqueness_report(4, [(Fraction(1), Fraction(0), HALF)])
        data = report.to_dict()
        assert list(data)[:5] == ["outcome", "witness", "beta", "gamma", "notes"]
        assert data["outcome"] == "ForcedHermite"
        assert ReplayReport.from_dict(data) == report
