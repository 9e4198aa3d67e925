# qcalculus/core/opcore.py
"""Polynomials in x = cos(theta) and the Askey-Wilson divided difference operator

Polynomials are stored on the monomial basis (PolyX). The operator acts on
the symmetric Laurent form in z = exp(i*theta), where x = (z + 1/z)/2 and the
shifts z -> q^(+-1/2) z multiply the z^k coefficient by s^(+-2k).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

import mpmath
from mpmath import mp, mpf
from sympy import ZZ
from sympy.polys.orthopolys import dup_chebyshevt

from qcalculus.core.packing import Packed, pack, unpack
from qcalculus.core.scalar import (
    ONE,
    ZERO,
    QScalar,
    ScalarLike,
    as_scalar,
    eval_exact,
    evaluate_mpf,
    parse_qscalar,
    s_pow,
    to_string,
)
from qcalculus.errors import DomainError, OperatorConsistencyError, ParseError

logger = logging.getLogger(__name__)


def _trim(coeffs: Iterable[ScalarLike]) -> Tuple[QScalar, ...]:
    out = [as_scalar(c) for c in coeffs]
    while out and out[-1].is_zero():
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class PolyX:
    """Polynomial in x; coeffs[k] multiplies x^k and the top entry is nonzero"""

    coeffs: Tuple[QScalar, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def const(cls, c: ScalarLike) -> "PolyX":
        return cls((c,))

    @classmethod
    def x(cls) -> "PolyX":
        return cls((ZERO, ONE))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial"""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> QScalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    @property
    def leading(self) -> QScalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def packed(self, t_power: int = 0) -> Packed:
        return pack({(k, t_power): c for k, c in enumerate(self.coeffs)})

    @classmethod
    def from_packed(cls, packed: Packed) -> "PolyX":
        """Coefficients of x^k t^0"""
        terms = {i: c for (i, j), c in unpack(packed).items() if j == 0}
        return cls(tuple(terms.get(k, ZERO) for k in range(max(terms, default=-1) + 1)))

    def __add__(self, other: "PolyX") -> "PolyX":
        if not isinstance(other, PolyX):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyX(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    def __sub__(self, other: "PolyX") -> "PolyX":
        if not isinstance(other, PolyX):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyX(tuple(self.coeff(k) - other.coeff(k) for k in range(n)))

    def __neg__(self) -> "PolyX":
        return PolyX(tuple(-c for c in self.coeffs))

    def scale(self, a: ScalarLike) -> "PolyX":
        a = as_scalar(a)
        if a.is_zero():
            return PolyX()
        return PolyX(tuple(a * c for c in self.coeffs))

    def mul_x(self) -> "PolyX":
        if self.is_zero():
            return self
        return PolyX((ZERO,) + self.coeffs)

    def __mul__(self, other: Union["PolyX", ScalarLike]) -> "PolyX":
        if isinstance(other, PolyX):
            if self.is_zero() or other.is_zero():
                return PolyX()
            return PolyX.from_packed(self.packed() * other.packed())
        if isinstance(other, (QScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: ScalarLike) -> "PolyX":
        if isinstance(other, (QScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def evaluate(self, x_val: Union[int, Fraction], s_val: Union[int, Fraction]) -> Fraction:
        """Exact value at rational x and rational s (q = s^4)"""
        x_val = Fraction(x_val)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x_val + eval_exact(c, s_val)
        return acc

    def evaluate_float(self, x_val: Union[float, str, Fraction], q_val: Union[float, str, Fraction], precision: int = 128) -> float:
        with mp.workprec(precision):
            q_mp = mpf(q_val.numerator) / q_val.denominator if isinstance(q_val, Fraction) else mpf(q_val)
            if not 0 < q_mp < 1:
                raise DomainError(f"q must lie in (0, 1), got {q_val}")
            x_mp = mpf(x_val.numerator) / x_val.denominator if isinstance(x_val, Fraction) else mpf(x_val)
            s_mp = mpmath.root(q_mp, 4)
            acc = mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * x_mp + evaluate_mpf(c, s_mp)
            return float(acc)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            body = to_string(c)
            if k == 1:
                body += "*x"
            elif k > 1:
                body += f"*x^{k}"
            parts.append(body)
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "PolyX":
        """Inverse of str()"""
        body = text.strip()
        if body == "0":
            return cls()
        terms: dict = {}
        for piece in _split_top_level(body):
            scalar_txt, power = _split_power(piece)
            k = power
            terms[k] = terms.get(k, ZERO) + parse_qscalar(scalar_txt)
        if not terms:
            raise ParseError(f"empty polynomial: {text!r}")
        top = max(terms)
        return cls(tuple(terms.get(k, ZERO) for k in range(top + 1)))

    def to_json(self) -> List[str]:
        return [to_string(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, items: Sequence[str]) -> "PolyX":
        return cls(tuple(parse_qscalar(t) for t in items))


def _split_top_level(text: str) -> List[str]:
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        elif ch == "+" and depth == 0:
            pieces.append(text[start:i].strip())
            start = i + 1
    if depth:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    pieces.append(text[start:].strip())
    if any(not p for p in pieces):
        raise ParseError(f"empty term in {text!r}")
    return pieces


def _split_power(piece: str) -> Tuple[str, int]:
    if piece.endswith("*x"):
        return piece[:-2], 1
    head, sep, tail = piece.rpartition("*x^")
    if sep and tail.isdigit():
        return head, int(tail)
    if piece.endswith(")"):
        return piece, 0
    raise ParseError(f"malformed term {piece!r}")


@dataclass(frozen=True)
class SymLaurent:
    """c[0] + sum_{k>=1} c[k] (z^k + z^-k)"""

    c: Tuple[QScalar, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "c", _trim(self.c))


@dataclass(frozen=True)
class AntiLaurent:
    """sum_{k>=1} d[k-1] (z^k - z^-k); index i holds the z^(i+1) coefficient"""

    d: Tuple[QScalar, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "d", _trim(self.d))

    def coeff(self, k: int) -> QScalar:
        return self.d[k - 1] if 1 <= k <= len(self.d) else ZERO


def _times_x(c: Sequence[QScalar]) -> List[QScalar]:
    """x * f on symmetric coefficients"""
    m = len(c)
    if m == 0:
        return []
    out = [ZERO] * (m + 1)
    out[0] = c[1] if m > 1 else ZERO
    half = Fraction(1, 2)
    for j in range(1, m + 1):
        lo = c[j - 1] if j - 1 < m else ZERO
        hi = c[j + 1] if j + 1 < m else ZERO
        out[j] = (lo + hi) * half
    return out


def to_sym(p: PolyX) -> SymLaurent:
    acc: List[QScalar] = []
    for a in reversed(p.coeffs):
        acc = _times_x(acc)
        if acc:
            acc[0] = acc[0] + a
        else:
            acc = [a]
    return SymLaurent(tuple(acc))


@lru_cache(maxsize=None)
def _chebyshev(k: int) -> Tuple[int, ...]:
    """Integer monomial coefficients of T_k, lowest degree first"""
    return tuple(int(c) for c in reversed(dup_chebyshevt(k, ZZ)))


def from_sym(f: SymLaurent) -> PolyX:
    """Uses z^k + z^-k = 2 T_k(x)"""
    if not f.c:
        return PolyX()
    out = [ZERO] * len(f.c)
    out[0] = f.c[0]
    for k in range(1, len(f.c)):
        ck = f.c[k]
        if ck.is_zero():
            continue
        for j, t in enumerate(_chebyshev(k)):
            if t:
                out[j] = out[j] + ck * (2 * t)
    return PolyX(tuple(out))


def delta_q(f: SymLaurent) -> AntiLaurent:
    """g(q^(1/2) z) - g(q^(-1/2) z); the constant term drops out"""
    return AntiLaurent(tuple((s_pow(2 * k) - s_pow(-2 * k)) * f.c[k] for k in range(1, len(f.c))))


def _divide_by_z_minus_inv_z(g: AntiLaurent) -> SymLaurent:
    """Exact quotient of an antisymmetric Laurent polynomial by (z - 1/z)"""
    top = len(g.d)
    if top == 0:
        return SymLaurent()

    def g_at(m: int) -> QScalar:
        if m > 0:
            return g.coeff(m)
        if m < 0:
            return -g.coeff(-m)
        return ZERO

    # G_m = H_{m-1} - H_{m+1}, solved from the top
    h = {top + 1: ZERO, top: ZERO}
    for m in range(top, -top + 1, -1):
        h[m - 1] = g_at(m) + h[m + 1]
    for m in (-top + 1, -top):
        rem = g_at(m) - (h.get(m - 1, ZERO) - h.get(m + 1, ZERO))
        if not rem.is_zero():
            raise OperatorConsistencyError(f"nonzero remainder {rem} at z^{m} dividing by z - 1/z")
    for k in range(1, top):
        if h[k] != h[-k]:
            raise OperatorConsistencyError(f"quotient is not symmetric at z^{k}")
    return SymLaurent(tuple(h[k] for k in range(0, top)))


def dq(p: PolyX) -> PolyX:
    """Askey-Wilson divided difference: delta_q p / delta_q x"""
    if p.degree < 1:
        return PolyX()
    quotient = from_sym(_divide_by_z_minus_inv_z(delta_q(to_sym(p))))
    # delta_q x = (s^2 - s^-2)/2 * (z - 1/z)
    out = quotient.scale(2 / (s_pow(2) - s_pow(-2)))
    if out.degree != p.degree - 1:
        raise OperatorConsistencyError(f"dq lowered degree {p.degree} to {out.degree}")
    return out


def dq_iter(p: PolyX, k: int) -> PolyX:
    if k < 0:
        raise ValueError("iteration count must be nonnegative")
    for _ in range(k):
        if p.is_zero():
            break
        p = dq(p)
    return p


def mul_2x(p: PolyX) -> PolyX:
    return p.mul_x().scale(2)
