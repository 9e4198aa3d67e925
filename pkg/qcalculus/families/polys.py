# qcalculus/families/polys.py
"""The Psi_n basis, Rogers q-Hermite H_n and the normalized h_n"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict

from qcalculus.core.opcore import PolyX, mul_2x
from qcalculus.core.scalar import ONE, ZERO, QScalar, qpow
from qcalculus.families.qseries import qpoch

logger = logging.getLogger(__name__)

Q = qpow(1)


def _psi_gap(m: int) -> QScalar:
    """(1 - q^m)(1 - q^-m)"""
    return (1 - qpow(m)) * (1 - qpow(-m))


@lru_cache(maxsize=None)
def psi(n: int) -> PolyX:
    """Psi_n from Psi_{n+2} = (4x^2 - (1-q^{n+1})(1-q^{-n-1})) Psi_n"""
    if n < 0:
        raise ValueError("Psi_n needs n >= 0")
    if n == 0:
        return PolyX.const(ONE)
    if n == 1:
        return PolyX.x().scale(2)
    # fill the cache upward so the lookup below stays one level deep
    for k in range(n % 2, n - 2, 2):
        psi(k)
    prev = psi(n - 2)
    return mul_2x(mul_2x(prev)) - prev.scale(_psi_gap(n - 1))


@lru_cache(maxsize=None)
def hermite(n: int) -> PolyX:
    """H_n(x|q): H_{n+1} = 2x H_n - (1 - q^n) H_{n-1}"""
    if n < 0:
        raise ValueError("H_n needs n >= 0")
    if n == 0:
        return PolyX.const(ONE)
    if n == 1:
        return PolyX.x().scale(2)
    for k in range(2, n - 1):
        hermite(k)
    return mul_2x(hermite(n - 1)) - hermite(n - 2).scale(1 - qpow(n - 1))


@lru_cache(maxsize=None)
def c_coeff(k: int) -> QScalar:
    """(1-q)^k q^{k(k-1)/4} / (2^k (q;q)_k)"""
    if k < 0:
        raise ValueError("c_k needs k >= 0")
    return (1 - Q) ** k * qpow(Fraction(k * (k - 1), 4)) / (2 ** k * qpoch(Q, Q, k))


@lru_cache(maxsize=None)
def h_small(n: int) -> PolyX:
    """h_n = c_n H_n, the normalization with D_q h_n = h_{n-1}"""
    return hermite(n).scale(c_coeff(n))


def _quadratic(constant: QScalar) -> PolyX:
    return PolyX((constant, ZERO, QScalar(4)))


def psi_odd_product(n: int) -> PolyX:
    """Psi_{2n+1} = 2x prod_{k<n} [4x^2 - (1-q^{2n-2k})(1-q^{2k-2n})]"""
    out = PolyX.x().scale(2)
    for k in range(n):
        out = out * _quadratic(-_psi_gap(2 * n - 2 * k))
    return out


def psi_even_product_printed(n: int) -> PolyX:
    """Even product line as printed in the source, with a plus sign

    Disagrees with psi(2n) for every n >= 1; kept so the discrepancy stays
    a checked fact.
    """
    out = PolyX.const(ONE)
    for k in range(n):
        out = out * _quadratic(_psi_gap(2 * n - 1 - 2 * k))
    return out


def psi_even_product_corrected(n: int) -> PolyX:
    """Psi_{2n} = prod_{k<n} [4x^2 - (1-q^{2n-1-2k})(1-q^{1-2n+2k})]"""
    out = PolyX.const(ONE)
    for k in range(n):
        out = out * _quadratic(-_psi_gap(2 * n - 1 - 2 * k))
    return out


FAMILY_BUILDERS: Dict[str, Callable[[int], PolyX]] = {
    "psi": psi,
    "hermite": hermite,
    "h": h_small,
}
