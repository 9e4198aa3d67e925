# tests/test_families.py

from fractions import Fraction

import pytest

from qcalculus.core.opcore import PolyX, dq, mul_2x
from qcalculus.core.scalar import ONE, ZERO, QScalar, qpow
from qcalculus.families.genfun import a_coefficient, hermite_product_check
from qcalculus.families.polys import (
    FAMILY_BUILDERS,
    Q,
    c_coeff,
    h_small,
    hermite,
    psi,
    psi_even_product_corrected,
    psi_even_product_printed,
    psi_odd_product,
)
from qcalculus.families.qseries import QExpVariant, SeriesT, qexp_trunc, qpoch

HALF = Fraction(1, 2)
X = PolyX.x()


def quadratic(constant) -> PolyX:
    return PolyX((constant, ZERO, QScalar(4)))


class TestQPoch:
    def test_empty_product(self):
        assert qpoch(Q ** 3, Q, 0) == ONE

    def test_single_factor(self):
        assert qpoch(Q, Q, 1) == 1 - Q

    def test_two_factors(self):
        assert qpoch(Q, Q, 2) == (1 - Q) * (1 - Q ** 2)

    def test_other_bases(self):
        half = qpow(HALF)
        assert qpoch(half, half, 2) == (1 - half) * (1 - Q)
        assert qpoch(Q ** 2, Q ** 2, 2) == (1 - Q ** 2) * (1 - Q ** 4)

    def test_negative_length(self):
        with pytest.raises(ValueError):
            qpoch(Q, Q, -1)


class TestPsi:
    def test_small(self):
        assert psi(0) == PolyX.const(1)
        assert psi(1) == X.scale(2)
        assert psi(2) == quadratic((1 - Q) ** 2 / Q)
        assert psi(3) == X.scale(2) * quadratic(-(1 - Q ** 2) * (1 - qpow(-2)))

    def test_parity(self):
        for n in range(9):
            assert all(psi(n).coeff(k).is_zero() for k in range((n + 1) % 2, n + 1, 2))

    def test_odd_product(self):
        for m in range(6):
            assert psi_odd_product(m) == psi(2 * m + 1)

    def test_even_product(self):
        for m in range(7):
            assert psi_even_product_corrected(m) == psi(2 * m)

    def test_printed_even_product_has_wrong_sign(self):
        assert psi_even_product_printed(0) == psi(0)
        # 4x^2 + (1-q)(1-q^-1) = 4x^2 - (1-q)^2/q
        assert psi_even_product_printed(1) == quadratic(-(1 - Q) ** 2 / Q)
        for m in range(1, 7):
            assert psi_even_product_printed(m) != psi(2 * m)

    def test_negative_index(self):
        with pytest.raises(ValueError):
            psi(-1)


class TestHermite:
    def test_small(self):
        assert hermite(0) == PolyX.const(1)
        assert hermite(1) == X.scale(2)
        assert hermite(2) == quadratic(-(1 - Q))

    def test_recurrence(self):
        for n in range(1, 10):
            assert hermite(n + 1) == mul_2x(hermite(n)) - hermite(n - 1).scale(1 - Q ** n)

    def test_generating_product(self):
        assert hermite_product_check(8)

    def test_dq_scales_down(self):
        for n in range(1, 9):
            scale = 2 * qpow(Fraction(1 - n, 2)) * (1 - Q ** n) / (1 - Q)
            assert dq(hermite(n)) == hermite(n - 1).scale(scale)


class TestNormalized:
    def test_coefficients(self):
        assert c_coeff(0) == ONE
        assert c_coeff(1) == QScalar(HALF)
        assert c_coeff(2) == (1 - Q) ** 2 * qpow(HALF) / (4 * qpoch(Q, Q, 2))

    def test_small(self):
        assert h_small(0) == PolyX.const(1)
        assert h_small(1) == X
        assert h_small(2) == hermite(2).scale((1 - Q) ** 2 * qpow(HALF) / (4 * qpoch(Q, Q, 2)))

    def test_appell(self):
        for n in range(1, 11):
            assert dq(h_small(n)) == h_small(n - 1)

    def test_recurrence(self):
        for n in range(1, 10):
            lhs = h_small(n + 1).scale(1 - Q ** (n + 1))
            rhs = h_small(n).mul_x().scale((1 - Q) * qpow(Fraction(n, 2))) - h_small(n - 1).scale(
                (1 - Q) ** 2 * qpow(Fraction(2 * n - 1, 2)) / 4
            )
            assert lhs == rhs

    def test_expansion_in_psi(self):
        for n in range(9):
            total = PolyX()
            for k in range(n + 1):
                total = total + psi(k).scale(a_coefficient(n - k) * c_coeff(k))
            assert total == h_small(n)

    def test_builders(self):
        assert set(FAMILY_BUILDERS) == {"psi", "hermite", "h"}
        assert FAMILY_BUILDERS["h"](1) == X


class TestHighDegree:
    @pytest.mark.parametrize("n", range(14, 21))
    def test_appell(self, n):
        assert dq(h_small(n)) == h_small(n - 1)

    @pytest.mark.parametrize("n", [14, 16, 20])
    def test_normalization(self, n):
        h = h_small(n)
        assert h.degree == n
        assert h.leading == c_coeff(n) * 2 ** n
        assert h.coeff(n - 1).is_zero()

    def test_recurrence(self):
        n = 15
        lhs = h_small(n + 1).scale(1 - Q ** (n + 1))
        rhs = h_small(n).mul_x().scale((1 - Q) * qpow(Fraction(n, 2))) - h_small(n - 1).scale(
            (1 - Q) ** 2 * qpow(Fraction(2 * n - 1, 2)) / 4
        )
        assert lhs == rhs


class TestSeries:
    def test_length_is_validated(self):
        with pytest.raises(ValueError):
            SeriesT(2, (ONE,))
        with pytest.raises(ValueError):
            SeriesT(2, (ONE, ZERO, ZERO)).truncate(3)

    def test_qexp_heads(self):
        a, b = Q ** 2, qpow(HALF)
        forward = qexp_trunc(a, b, QExpVariant.E_Q, 1)
        backward = qexp_trunc(a, b, "reciprocal", 1)
        assert forward.coeffs == (ONE, a / (1 - b))
        assert backward.coeffs == (ONE, -a / (1 - b))

    def test_qexp_pair_is_inverse(self):
        for base in (Q, Q ** 2):
            pair = qexp_trunc(Q, base, QExpVariant.E_Q, 4) * qexp_trunc(Q, base, QExpVariant.RECIPROCAL, 4)
            assert pair.is_one()

    def test_rescale(self):
        series = SeriesT(2, (ONE, ONE, ONE)).rescale(Q)
        assert series.coeffs == (ONE, Q, Q ** 2)

    def test_mixed_coefficients(self):
        poly = SeriesT(1, (PolyX.const(1), X))
        scalar = SeriesT(1, (ONE, ONE))
        product = poly * scalar
        assert product.equals(SeriesT(1, (PolyX.const(1), X + PolyX.const(1))))

    def test_product_is_truncated(self):
        a = SeriesT(3, (ONE, ONE, ZERO, ZERO))
        b = SeriesT(2, (ONE, -ONE, ONE))
        assert (a * b).coeffs == (ONE, ZERO, ZERO)

    def test_scalar_product_stays_scalar(self):
        product = SeriesT(1, (Q, ONE)) * SeriesT(1, (ONE, QScalar(HALF)))
        assert product.coeffs == (Q, ONE + Q * HALF)
        assert all(isinstance(c, QScalar) for c in product.coeffs)
