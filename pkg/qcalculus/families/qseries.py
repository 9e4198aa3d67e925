# qcalculus/families/qseries.py
"""q-Pochhammer symbols and truncated power series in t"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Tuple, Union

from qcalculus.core.opcore import PolyX
from qcalculus.core.packing import Packed, pack, unpack
from qcalculus.core.scalar import ONE, ZERO, QScalar, ScalarLike, as_scalar

logger = logging.getLogger(__name__)

Coeff = Union[QScalar, PolyX]


def qpoch(a: ScalarLike, base: ScalarLike, n: int) -> QScalar:
    """(a; base)_n = prod_{j<n} (1 - a base^j)"""
    if n < 0:
        raise ValueError("qpoch length must be nonnegative")
    a, base = as_scalar(a), as_scalar(base)
    out, term = ONE, a
    for _ in range(n):
        out = out * (1 - term)
        term = term * base
    return out


def _as_poly(c: Coeff) -> PolyX:
    return c if isinstance(c, PolyX) else PolyX.const(c)


def _add(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, QScalar) and isinstance(b, QScalar):
        return a + b
    return _as_poly(a) + _as_poly(b)


def _times(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, QScalar):
        return a * b if isinstance(b, QScalar) else b.scale(a)
    if isinstance(b, QScalar):
        return a.scale(b)
    return a * b


def _is_zero(c: Coeff) -> bool:
    return c.is_zero()


@dataclass(frozen=True)
class SeriesT:
    """Power series in t truncated after t^order; coeffs[n] is the t^n coefficient"""

    order: int
    coeffs: Tuple[Coeff, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("series order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"expected {self.order + 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_function(cls, order: int, fn: Callable[[int], Coeff]) -> "SeriesT":
        return cls(order, tuple(fn(n) for n in range(order + 1)))

    @property
    def is_scalar(self) -> bool:
        return all(isinstance(c, QScalar) for c in self.coeffs)

    def __getitem__(self, n: int) -> Coeff:
        return self.coeffs[n]

    def truncate(self, order: int) -> "SeriesT":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return SeriesT(order, self.coeffs[: order + 1])

    def __add__(self, other: "SeriesT") -> "SeriesT":
        order = min(self.order, other.order)
        return SeriesT(order, tuple(_add(self.coeffs[n], other.coeffs[n]) for n in range(order + 1)))

    def _packed(self) -> Packed:
        terms = {}
        for n, c in enumerate(self.coeffs):
            for k, v in enumerate(_as_poly(c).coeffs):
                terms[(k, n)] = v
        return pack(terms)

    def __mul__(self, other: "SeriesT") -> "SeriesT":
        """Cauchy product, truncated at the smaller order"""
        order = min(self.order, other.order)
        product = unpack(self._packed().mul_trunc(other._packed(), order))
        rows: Dict[int, Dict[int, QScalar]] = {}
        for (k, n), v in product.items():
            rows.setdefault(n, {})[k] = v
        scalar = self.is_scalar and other.is_scalar
        out = []
        for n in range(order + 1):
            row = rows.get(n, {})
            if scalar:
                out.append(row.get(0, ZERO))
            else:
                out.append(PolyX(tuple(row.get(k, ZERO) for k in range(max(row, default=-1) + 1))))
        return SeriesT(order, tuple(out))

    def rescale(self, lam: ScalarLike) -> "SeriesT":
        """Substitute t -> lam * t"""
        lam = as_scalar(lam)
        out, power = [], ONE
        for c in self.coeffs:
            out.append(_times(power, c))
            power = power * lam
        return SeriesT(self.order, tuple(out))

    def map(self, fn: Callable[[Coeff], Coeff]) -> "SeriesT":
        return SeriesT(self.order, tuple(fn(c) for c in self.coeffs))

    def is_one(self) -> bool:
        """1 + O(t^(order+1))"""
        head = self.coeffs[0]
        if isinstance(head, PolyX):
            head_ok = head == PolyX.const(ONE)
        else:
            head_ok = head == ONE
        return head_ok and all(_is_zero(c) for c in self.coeffs[1:])

    def equals(self, other: "SeriesT") -> bool:
        """Coefficient-wise equality, promoting scalars to constant polynomials"""
        if self.order != other.order:
            return False
        return all(_as_poly(a) == _as_poly(b) for a, b in zip(self.coeffs, other.coeffs))


class QExpVariant(str, Enum):
    E_Q = "e_q"
    RECIPROCAL = "reciprocal"


def qexp_trunc(arg_scale: ScalarLike, base: ScalarLike, variant: QExpVariant, order: int) -> SeriesT:
    """e_base(arg_scale * t) or its reciprocal (arg_scale * t; base)_inf, truncated"""
    arg_scale, base = as_scalar(arg_scale), as_scalar(base)
    variant = QExpVariant(variant)
    out = []
    poch, arg_power = ONE, ONE
    for k in range(order + 1):
        if k:
            poch = poch * (1 - base ** k)
            arg_power = arg_power * arg_scale
        term = arg_power / poch
        if variant is QExpVariant.RECIPROCAL:
            term = term * base ** (k * (k - 1) // 2)
            if k % 2:
                term = -term
        out.append(term)
    return SeriesT(order, tuple(out))