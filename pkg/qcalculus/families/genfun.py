# qcalculus/families/genfun.py
"""Generating series: the q-exponential E(x;t), the multiplier A(t) and the H_n series"""

import logging
from fractions import Fraction
from typing import Sequence

from qcalculus.core.opcore import PolyX
from qcalculus.core.scalar import ONE, ZERO, QScalar, qpow
from qcalculus.errors import InconsistentSystemError
from qcalculus.families.polys import Q, c_coeff, h_small, hermite, psi
from qcalculus.families.qseries import QExpVariant, SeriesT, qexp_trunc, qpoch

logger = logging.getLogger(__name__)

# (1-q)^2 q^{-1/2} / 4, the argument of the reciprocal q^2-exponential in A(t)
A_ARGUMENT = (1 - Q) ** 2 * qpow(Fraction(-1, 2)) / 4


def big_e_series(order: int) -> SeriesT:
    """E(x;t) = sum_n c_n Psi_n(x) t^n"""
    return SeriesT.from_function(order, lambda n: psi(n).scale(c_coeff(n)))


def a_coefficient(n: int) -> QScalar:
    """Closed form: a_{2j} = (-1)^j (1-q)^{2j} q^{j(j-3/2)} / (4^j (q^2;q^2)_j), odd a_n = 0"""
    if n % 2:
        return ZERO
    j = n // 2
    value = (1 - Q) ** (2 * j) * qpow(Fraction(2 * j * j - 3 * j, 2)) / (4 ** j * qpoch(Q ** 2, Q ** 2, j))
    return -value if j % 2 else value


def a_series_closed(order: int) -> SeriesT:
    return SeriesT.from_function(order, a_coefficient)


def a_series_product(order: int) -> SeriesT:
    """A(t) = ((1-q)^2 t^2 q^{-1/2}/4; q^2)_inf, expanded in t^2"""
    half = qexp_trunc(A_ARGUMENT, Q ** 2, QExpVariant.RECIPROCAL, order // 2)
    return SeriesT.from_function(order, lambda n: ZERO if n % 2 else half[n // 2])


def _a_system_terms(n: int, k: int):
    """Coefficients of a_{n+2-k}, a_{n-k}, a_{n-2-k} in the (n, k) equation"""
    upper = 4 / (1 - Q) ** 2 * qpow(Fraction(-2 * n - 1, 2)) * (1 - qpow(n - k + 2)) * (1 - qpow(n + k + 1))
    middle = qpow(-k - 1) * (1 + qpow(2 * k + 2) - qpow(n + k + 1) - qpow(n + k + 2))
    lower = (1 - Q) ** 2 / 4 * qpow(Fraction(2 * n - 3, 2))
    return upper, middle, lower


def _a_at(a: Sequence[QScalar], m: int) -> QScalar:
    return a[m] if 0 <= m < len(a) else ZERO


def a_system_residual(n: int, k: int, a: Sequence[QScalar]) -> QScalar:
    """Residual of the (n, k) equation obtained by matching Psi_k after multiplying by 4x^2"""
    upper, middle, lower = _a_system_terms(n, k)
    return upper * _a_at(a, n + 2 - k) + middle * _a_at(a, n - k) + lower * _a_at(a, n - 2 - k)


def check_a_system(a: Sequence[QScalar]) -> int:
    """Check every equation whose indices stay inside `a`; returns the count checked"""
    order = len(a) - 1
    checked = 0
    for n in range(order + 1):
        for k in range(n + 3):
            if n + 2 - k > order:
                continue
            residual = a_system_residual(n, k, a)
            checked += 1
            if not residual.is_zero():
                raise InconsistentSystemError(n, k, residual, system="A(t) coefficient")
    logger.debug(f"A(t) system: {checked} equations vanish through order {order}")
    return checked


def a_series_recurrence(order: int) -> SeriesT:
    """Forward solve with a_0 = 1 from the k = 1 equations, then check the whole system"""
    a = [ONE]
    for m in range(1, order + 1):
        upper, middle, lower = _a_system_terms(m - 1, 1)
        a.append(-(middle * _a_at(a, m - 2) + lower * _a_at(a, m - 4)) / upper)
    check_a_system(a)
    return SeriesT(order, tuple(a))


def genfun_hermite_lhs(order: int) -> SeriesT:
    """sum_n q^{n(n-1)/4} H_n(x|q) t^n / (q;q)_n"""
    return SeriesT.from_function(
        order, lambda n: hermite(n).scale(qpow(Fraction(n * (n - 1), 4)) / qpoch(Q, Q, n))
    )


def h_series(order: int) -> SeriesT:
    return SeriesT.from_function(order, h_small)


def hermite_product_defect(order: int) -> SeriesT:
    """(1 - 2xt + t^2) F(t) - F(qt) for F = sum_n H_n t^n / (q;q)_n

    Zero through `order` exactly when F is the product prod_k (1 - 2xtq^k + t^2 q^2k)^-1.
    """
    f = SeriesT.from_function(order, lambda n: hermite(n).scale(qpoch(Q, Q, n).inv()))
    factor = SeriesT.from_function(
        order, lambda n: {0: PolyX.const(ONE), 1: PolyX.x().scale(-2), 2: PolyX.const(ONE)}.get(n, PolyX())
    )
    shifted = f.rescale(Q).map(lambda c: -c)
    return factor * f + shifted


def hermite_product_check(order: int) -> bool:
    return all(c.is_zero() for c in hermite_product_defect(order).coeffs)
