# services/calc_service.py
"""Operations shared by the CLI and the HTTP service"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import config
from models.report_model import ConversionTable, EvalResult, FamilyTable, ReplayReport, SuiteResult
from qcalculus.core.opcore import PolyX
from qcalculus.core.scalar import parse_rational
from qcalculus.errors import DomainError
from qcalculus.families.conversions import ROW_BUILDERS, Direction
from qcalculus.families.polys import FAMILY_BUILDERS
from qcalculus.proofs.characterize import MIN_REPLAY_N, uniqueness_report
from qcalculus.proofs.suites import SUITES, run_suite
from services.export_service import conversion_table, family_table

logger = logging.getLogger(__name__)

FAMILY_NAMES = tuple(FAMILY_BUILDERS)
SUITE_NAMES = tuple(SUITES)
DIRECTIONS = tuple(d.value for d in Direction)


def _check_index(n: int):
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    if n > config.MAX_REQUEST_N:
        raise DomainError(f"n = {n} exceeds the limit {config.MAX_REQUEST_N} (QCALC_MAX_REQUEST_N)")


def _check_bound(name: str, value: int):
    if value > config.MAX_REQUEST_BOUND:
        raise DomainError(f"{name} = {value} exceeds the limit {config.MAX_REQUEST_BOUND} (QCALC_MAX_REQUEST_BOUND)")


def _as_float(value: Union[str, Fraction, float]) -> float:
    """Decimal or rational text, as for x"""
    try:
        return float(Fraction(value)) if isinstance(value, str) else float(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise DomainError(f"not a number: {value!r}") from e


def build_family(name: str, n: int) -> Tuple[FamilyTable, PolyX]:
    if name not in FAMILY_BUILDERS:
        raise DomainError(f"unknown family {name!r}; expected one of {', '.join(FAMILY_NAMES)}")
    _check_index(n)
    p = FAMILY_BUILDERS[name](n)
    return family_table(name, n, p), p


def evaluate(
    name: str,
    n: int,
    x: Union[str, Fraction, float],
    s: Optional[Union[str, Fraction]] = None,
    q: Optional[Union[str, float]] = None,
    precision: int = config.PRECISION_BITS,
) -> EvalResult:
    """Exact value when s is given, mpmath value when q is given"""
    if (s is None) == (q is None):
        raise DomainError("give exactly one of s (exact) or q (float)")
    _, p = build_family(name, n)
    if s is not None:
        s_val = parse_rational(s)
        x_val = parse_rational(x)
        if not 0 < s_val < 1:
            raise DomainError(f"s must lie in (0, 1), got {s_val}")
        value = p.evaluate(x_val, s_val)
        return EvalResult(family=name, n=n, mode="exact", x=str(x_val), s=str(s_val), value=str(value))
    q_val = _as_float(q)
    x_val = _as_float(x)
    value = p.evaluate_float(x_val, q_val, precision)
    return EvalResult(family=name, n=n, mode="float", x=repr(x_val), q=repr(q_val), value=repr(value))


def float_rows(name: str, n: int, q_values: Sequence[float], x_values: Sequence[float], precision: int) -> List[list]:
    _, p = build_family(name, n)
    return [[n, repr(q), repr(x), repr(p.evaluate_float(x, q, precision))] for q in q_values for x in x_values]


def convert(direction: str, n: int) -> ConversionTable:
    try:
        key = Direction(direction)
    except ValueError as e:
        raise DomainError(f"unknown direction {direction!r}; expected one of {', '.join(DIRECTIONS)}") from e
    _check_index(n)
    build, _ = ROW_BUILDERS[key]
    return conversion_table(key.value, build(n))


def verify(suite: str, max_n: int, t_order: int, iterated_max_n: int = config.ITERATED_MAX_N) -> SuiteResult:
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; expected one of {', '.join(SUITE_NAMES)}")
    if max_n < 1 or t_order < 0:
        raise DomainError("max_n must be >= 1 and t_order >= 0")
    for name, value in (("max_n", max_n), ("t_order", t_order), ("iterated_max_n", iterated_max_n)):
        _check_bound(name, value)
    return run_suite(suite, max_n=max_n, t_order=t_order, iterated_max_n=iterated_max_n)


def characterize(
    max_n: int,
    samples: Sequence[Tuple[Fraction, Fraction, Fraction]],
    s_cert: Fraction = config.CERT_S,
) -> ReplayReport:
    if max_n < MIN_REPLAY_N:
        raise DomainError(f"max_n must be at least {MIN_REPLAY_N}, got {max_n}")
    _check_bound("max_n", max_n)
    logger.debug(f"characterize up to n = {max_n} with {len(samples)} samples")
    return uniqueness_report(max_n, list(samples), s_cert)
