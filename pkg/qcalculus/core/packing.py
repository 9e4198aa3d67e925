# qcalculus/core/packing.py
"""Q(s)-coefficient polynomials packed into QQ[s, x, t] for sympy ring arithmetic

A family of scalars c_(i,j) is stored as one polynomial P in s, x, t with
c_(i,j) = [x^i t^j] P / divisor, where the divisor clears every denominator
and every negative power of s. Products then run in the sparse ring, which
needs no gcd, and only the unpacked coefficients are cancelled.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from sympy import QQ, ring
from sympy.polys.ring_series import rs_mul
from sympy.polys.rings import PolyElement

from qcalculus.core.scalar import ONE, LaurentPoly, QScalar, common_denominator, s_pow

PACK_RING, S, X, T = ring("s,x,t", QQ)

Index = Tuple[int, int]

_UNIT_DEN = LaurentPoly(0, (Fraction(1),))


@dataclass(frozen=True)
class Packed:
    poly: PolyElement
    divisor: QScalar = ONE

    def __mul__(self, other: "Packed") -> "Packed":
        return Packed(self.poly * other.poly, self.divisor * other.divisor)

    def mul_trunc(self, other: "Packed", order: int) -> "Packed":
        """Product with every t^j, j > order, dropped"""
        return Packed(rs_mul(self.poly, other.poly, T, order + 1), self.divisor * other.divisor)

    def __pow__(self, exponent: int) -> "Packed":
        return Packed(self.poly ** exponent, self.divisor ** exponent)


def pack(terms: Mapping[Index, QScalar]) -> Packed:
    live = {k: c for k, c in terms.items() if not c.is_zero()}
    if not live:
        return Packed(PACK_RING.zero)
    den = common_denominator(live.values())
    cleared = {k: c * den for k, c in live.items()}
    shift = min(c.num.min_exp for c in cleared.values())
    body = {}
    for (i, j), c in cleared.items():
        if c.den != _UNIT_DEN:
            raise ArithmeticError(f"denominator of {c} survived clearing")
        for e, v in c.num.terms().items():
            body[(e - shift, i, j)] = QQ(v.numerator, v.denominator)
    return Packed(PACK_RING.from_dict(body), den * s_pow(-shift))


def unpack(packed: Packed) -> Dict[Index, QScalar]:
    groups: Dict[Index, Dict[int, Fraction]] = {}
    for (e, i, j), v in packed.poly.items():
        groups.setdefault((i, j), {})[e] = Fraction(int(v.numerator), int(v.denominator))
    inv = packed.divisor.inv()
    return {k: QScalar.from_laurent(LaurentPoly.from_terms(t), _UNIT_DEN) * inv for k, t in groups.items()}
