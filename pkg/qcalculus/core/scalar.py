# qcalculus/core/scalar.py
"""Exact scalars: rational functions of s with q = s^4"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, Optional, Tuple, Union

import mpmath
from mpmath import mp, mpf
from sympy import QQ, field
from sympy.polys.fields import FracElement

from qcalculus.errors import DomainError, ParseError, PoleError, QPowerError, ScalarDivisionError

logger = logging.getLogger(__name__)

_FIELD, _S = field("s", QQ)
_RING = _FIELD.ring

Rational = Union[int, Fraction]


def _to_fraction(value) -> Fraction:
    """Convert a ground-domain coefficient (QQ) into a Fraction"""
    return Fraction(int(value.numerator), int(value.denominator))


def _to_qq(value: Rational):
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    raise TypeError(f"cannot make a scalar from {type(value).__name__}")


@dataclass(frozen=True)
class LaurentPoly:
    """Finite Laurent polynomial in s: coeffs[i] multiplies s^(min_exp + i)"""

    min_exp: int
    coeffs: Tuple[Fraction, ...]

    @classmethod
    def from_terms(cls, terms: Dict[int, Fraction]) -> "LaurentPoly":
        live = {e: Fraction(c) for e, c in terms.items() if c != 0}
        if not live:
            return cls(0, ())
        lo, hi = min(live), max(live)
        return cls(lo, tuple(live.get(e, Fraction(0)) for e in range(lo, hi + 1)))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    def terms(self) -> Dict[int, Fraction]:
        return {self.min_exp + i: c for i, c in enumerate(self.coeffs) if c != 0}

    def evaluate(self, s_val: Fraction) -> Fraction:
        """Exact value at a nonzero rational s"""
        if self.is_zero:
            return Fraction(0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * s_val + c
        return acc * s_val ** self.min_exp

    def evaluate_mpf(self, s_val: mpf) -> mpf:
        """Value at an mpf, using the caller's working precision"""
        if self.is_zero:
            return mpf(0)
        acc = mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * s_val + mpf(c.numerator) / c.denominator
        return acc * s_val ** self.min_exp

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        out = ""
        for e, c in sorted(self.terms().items()):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                body = "s" if e == 1 else f"s^{e}"
                if mag != 1:
                    body = f"{mag}*{body}"
            if not out:
                out = f"-{body}" if c < 0 else body
            else:
                out += f" - {body}" if c < 0 else f" + {body}"
        return out

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of str(); accepts terms `c`, `c*s^e`, `s^e`, `s`"""
        compact = text.replace(" ", "")
        if not compact:
            raise ParseError("empty polynomial")
        # negative exponents would otherwise split as terms
        compact = compact.replace("^-", "^~")
        terms: Dict[int, Fraction] = {}
        pieces = re.findall(r"[+-]?[^+-]+", compact)
        if "".join(pieces) != compact:
            raise ParseError(f"malformed polynomial: {text!r}")
        for piece in pieces:
            sign = -1 if piece.startswith("-") else 1
            body = piece.lstrip("+-")
            m = _TERM_RE.fullmatch(body)
            if m is None:
                raise ParseError(f"malformed term {piece!r} in {text!r}")
            coeff_txt, exp_with_coeff, bare_s, exp_bare = m.group(1, 3, 4, 5)
            if coeff_txt is not None:
                coeff = Fraction(coeff_txt)
                has_s = m.group(2) is not None
                exp_txt = exp_with_coeff
            else:
                coeff = Fraction(1)
                has_s = bare_s is not None
                exp_txt = exp_bare
            exp = 0
            if has_s:
                exp = int(exp_txt.replace("~", "-")) if exp_txt else 1
            terms[exp] = terms.get(exp, Fraction(0)) + sign * coeff
        return cls.from_terms(terms)


_TERM_RE = re.compile(r"(\d+(?:/\d+)?)(\*s(?:\^(~?\d+))?)?|(s(?:\^(~?\d+))?)")


def _poly_from_laurent(lp: LaurentPoly):
    """Split a Laurent polynomial into (ring element, s-shift)"""
    body = _RING.from_dict({(e - lp.min_exp,): _to_qq(c) for e, c in lp.terms().items()})
    return body, lp.min_exp


def _reduced(numer, denom) -> FracElement:
    """numer/denom in lowest terms

    The sparse field cancels through the heuristic gcd alone, which gives up
    on the h_n normalization from degree 14 on. The dense cancel retries with
    a subresultant PRS gcd.
    """
    if not denom:
        raise ScalarDivisionError("zero denominator")
    if not numer:
        return _FIELD.zero
    p, d = _RING.dup_cancel(numer, denom)
    return _FIELD.raw_new(p, d)


class QScalar:
    """Immutable element of Q(s) in lowest terms

    Equality and hashing go through the canonical form: numerator and
    denominator as Laurent polynomials, denominator with lowest exponent 0
    and leading coefficient 1.
    """

    __slots__ = ("_frac", "_key")

    def __init__(self, value: Union["QScalar", Rational, FracElement] = 0):
        if isinstance(value, QScalar):
            frac = value._frac
        elif isinstance(value, FracElement):
            if value.field != _FIELD:
                raise TypeError("fraction from a foreign field")
            frac = value
        else:
            frac = _FIELD(_to_qq(value))
        self._frac = frac
        self._key: Optional[Tuple[LaurentPoly, LaurentPoly]] = None

    @classmethod
    def from_laurent(cls, num: LaurentPoly, den: LaurentPoly) -> "QScalar":
        if den.is_zero:
            raise ScalarDivisionError("zero denominator")
        p, p_shift = _poly_from_laurent(num)
        d, d_shift = _poly_from_laurent(den)
        shift = p_shift - d_shift
        if shift >= 0:
            p = p * _RING.gens[0] ** shift
        else:
            d = d * _RING.gens[0] ** (-shift)
        return cls(_reduced(p, d))

    def _canonical(self) -> Tuple[LaurentPoly, LaurentPoly]:
        if self._key is None:
            numer, denom = self._frac.numer, self._frac.denom
            if not numer:
                self._key = (LaurentPoly(0, ()), LaurentPoly(0, (Fraction(1),)))
            else:
                den_terms = {e: _to_fraction(c) for (e,), c in denom.items()}
                shift = min(den_terms)
                lead = den_terms[max(den_terms)]
                num_terms = {e - shift: _to_fraction(c) / lead for (e,), c in numer.items()}
                self._key = (
                    LaurentPoly.from_terms(num_terms),
                    LaurentPoly.from_terms({e - shift: c / lead for e, c in den_terms.items()}),
                )
        return self._key

    @property
    def num(self) -> LaurentPoly:
        return self._canonical()[0]

    @property
    def den(self) -> LaurentPoly:
        return self._canonical()[1]

    @property
    def frac(self) -> FracElement:
        return self._frac

    def is_zero(self) -> bool:
        return not self._frac.numer

    def inv(self) -> "QScalar":
        if self.is_zero():
            raise ScalarDivisionError("inverse of the zero scalar")
        # already coprime
        return QScalar(_FIELD.raw_new(self._frac.denom, self._frac.numer))

    @staticmethod
    def _coerce(other) -> Optional[FracElement]:
        if isinstance(other, QScalar):
            return other._frac
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return _FIELD(_to_qq(other))
        return None

    @staticmethod
    def _sum(a: FracElement, b: FracElement, sign: int = 1) -> "QScalar":
        if a.denom == b.denom:
            return QScalar(_reduced(a.numer + sign * b.numer, a.denom))
        return QScalar(_reduced(a.numer * b.denom + sign * b.numer * a.denom, a.denom * b.denom))

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._sum(self._frac, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._sum(self._frac, o, -1)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._sum(o, self._frac, -1)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QScalar(_reduced(self._frac.numer * o.numer, self._frac.denom * o.denom))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.numer:
            raise ScalarDivisionError(f"division of {self} by zero")
        return QScalar(_reduced(self._frac.numer * o.denom, self._frac.denom * o.numer))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QScalar(o) / self

    def __neg__(self) -> "QScalar":
        return QScalar(_FIELD.raw_new(-self._frac.numer, self._frac.denom))

    def __pos__(self) -> "QScalar":
        return self

    def __pow__(self, exponent: int) -> "QScalar":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inv() ** (-exponent)
        return QScalar(self._frac ** exponent)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._canonical() == QScalar(o)._canonical()

    def __hash__(self) -> int:
        return hash(self._canonical())

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        return to_string(self)

    def __repr__(self) -> str:
        return f"QScalar({to_string(self)!r})"


ScalarLike = Union[QScalar, int, Fraction]

ZERO = QScalar(0)
ONE = QScalar(1)


def qpow(r: Union[Rational, str]) -> QScalar:
    """q^r = s^(4r); r must be a multiple of 1/4"""
    exp4 = Fraction(r) * 4
    if exp4.denominator != 1:
        raise QPowerError(f"q^{r} is not a power of s (4r = {exp4})")
    return QScalar(_S ** int(exp4))


def s_pow(e: int) -> QScalar:
    return QScalar(_S ** e)


def as_scalar(value: ScalarLike) -> QScalar:
    return value if isinstance(value, QScalar) else QScalar(value)


def add(a: ScalarLike, b: ScalarLike) -> QScalar:
    return as_scalar(a) + b


def mul(a: ScalarLike, b: ScalarLike) -> QScalar:
    return as_scalar(a) * b


def neg(a: ScalarLike) -> QScalar:
    return -as_scalar(a)


def inv(a: ScalarLike) -> QScalar:
    return as_scalar(a).inv()


def div(a: ScalarLike, b: ScalarLike) -> QScalar:
    return as_scalar(a) / as_scalar(b)


def common_denominator(values: Iterable[QScalar]) -> QScalar:
    """Monic lcm of the denominators, as a scalar"""
    dens = [v.frac.denom for v in values]
    if not dens:
        return ONE
    return QScalar(_FIELD.raw_new(reduce(_RING.dup_lcm, dens)))


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Strict rational parser used for s, a1, a2 and x arguments"""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise DomainError(f"not an exact rational: {text!r}") from e


def eval_exact(a: QScalar, s_val: Rational) -> Fraction:
    """Exact value at rational s != 0"""
    s_val = Fraction(s_val)
    if s_val == 0:
        raise DomainError("s = 0 is not an admissible evaluation point")
    den_val = a.den.evaluate(s_val)
    if den_val == 0:
        raise PoleError(str(a.den), s_val)
    return a.num.evaluate(s_val) / den_val


def evaluate_mpf(a: QScalar, s_val: mpf) -> mpf:
    """Value at an mpf s under the current mpmath precision"""
    den_val = a.den.evaluate_mpf(s_val)
    if den_val == 0:
        raise PoleError(str(a.den), s_val)
    return a.num.evaluate_mpf(s_val) / den_val


def eval_float(a: QScalar, q_val: Union[float, str, Fraction], precision: int = 128) -> float:
    """Floating value at real q in (0, 1)

    Evaluated in mpmath with `precision` working bits and then rounded to a
    double. Each arithmetic step carries relative error at most
    2^(1 - precision); the count of steps grows with the degrees of the
    numerator and denominator.
    """
    if isinstance(q_val, Fraction):
        q_val = mpf(q_val.numerator) / q_val.denominator
    with mp.workprec(precision):
        q_mp = mpf(q_val)
        if not 0 < q_mp < 1:
            raise DomainError(f"q must lie in (0, 1), got {q_val}")
        s_mp = mpmath.root(q_mp, 4)
        return float(evaluate_mpf(a, s_mp))


def to_string(a: QScalar) -> str:
    num, den = a.num, a.den
    return f"({num})/({den})"


def parse_qscalar(text: str) -> QScalar:
    """Inverse of to_string(); a bare Laurent polynomial is also accepted"""
    body = text.strip()
    m = re.fullmatch(r"\(([^()]*)\)\s*(?:/\s*\(([^()]*)\))?", body)
    if m is None:
        return QScalar.from_laurent(LaurentPoly.parse(body), LaurentPoly(0, (Fraction(1),)))
    num = LaurentPoly.parse(m.group(1))
    den = LaurentPoly.parse(m.group(2)) if m.group(2) is not None else LaurentPoly(0, (Fraction(1),))
    if den.is_zero:
        raise ParseError(f"zero denominator in {text!r}")
    return QScalar.from_laurent(num, den)
