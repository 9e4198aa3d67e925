# qcalculus/proofs/unipoly.py
"""Polynomials in one formal parameter with coefficients in Q(s)"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from qcalculus.core.packing import Packed, pack, unpack
from qcalculus.core.scalar import ZERO, QScalar, ScalarLike, as_scalar, eval_exact, to_string


def _trim(coeffs) -> Tuple[QScalar, ...]:
    out = [as_scalar(c) for c in coeffs]
    while out and out[-1].is_zero():
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class UniPolyA:
    """sum_i coeffs[i] * var^i; `var` only affects printing"""

    coeffs: Tuple[QScalar, ...] = ()
    var: str = "alpha"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def const(cls, c: ScalarLike, var: str = "alpha") -> "UniPolyA":
        return cls((c,), var)

    @classmethod
    def gen(cls, var: str = "alpha") -> "UniPolyA":
        return cls((ZERO, QScalar(1)), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> QScalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    @property
    def valuation(self) -> int:
        """Lowest power with a nonzero coefficient; -1 for zero"""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return -1

    def shift_down(self, k: int) -> "UniPolyA":
        """Divide by var^k; the lower coefficients must vanish"""
        if any(not c.is_zero() for c in self.coeffs[:k]):
            raise ValueError(f"not divisible by {self.var}^{k}")
        return UniPolyA(self.coeffs[k:], self.var)

    def _lift(self, other) -> "UniPolyA":
        if isinstance(other, UniPolyA):
            return other
        if isinstance(other, (QScalar, int, Fraction)) and not isinstance(other, bool):
            return UniPolyA.const(other, self.var)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPolyA(tuple(self.coeff(i) + o.coeff(i) for i in range(n)), self.var)

    __radd__ = __add__

    def __neg__(self) -> "UniPolyA":
        return UniPolyA(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else o + (-self)

    def _packed(self) -> Packed:
        return pack({(i, 0): c for i, c in enumerate(self.coeffs)})

    def _from_packed(self, packed: Packed) -> "UniPolyA":
        terms = {i: c for (i, _), c in unpack(packed).items()}
        return UniPolyA(tuple(terms.get(i, ZERO) for i in range(max(terms, default=-1) + 1)), self.var)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return UniPolyA((), self.var)
        return self._from_packed(self._packed() * o._packed())

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a scalar only"""
        if isinstance(other, (QScalar, int, Fraction)) and not isinstance(other, bool):
            d = as_scalar(other).inv()
            return UniPolyA(tuple(c * d for c in self.coeffs), self.var)
        return NotImplemented

    def __pow__(self, exponent: int) -> "UniPolyA":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        if exponent == 0:
            return UniPolyA.const(1, self.var)
        if self.is_zero():
            return self
        return self._from_packed(self._packed() ** exponent)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def substitute(self, value: ScalarLike) -> QScalar:
        """Value at var = value, in Q(s)"""
        value = as_scalar(value)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def eval_coefficients(self, s_val: Union[int, Fraction]) -> Tuple[Fraction, ...]:
        return tuple(eval_exact(c, s_val) for c in self.coeffs)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            body = to_string(c)
            if i == 1:
                body += f"*{self.var}"
            elif i > 1:
                body += f"*{self.var}^{i}"
            parts.append(body)
        return " + ".join(parts)
