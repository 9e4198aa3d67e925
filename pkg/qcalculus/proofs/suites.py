# qcalculus/proofs/suites.py
"""Identity suites: every displayed identity checked with exact zero residual"""

import logging
import time
from fractions import Fraction
from typing import Callable, Dict, List, Union

from models.report_model import SuiteFailure, SuiteResult
from qcalculus.core.opcore import PolyX, dq, dq_iter, mul_2x
from qcalculus.core.scalar import QScalar, qpow
from qcalculus.errors import InconsistentSystemError
from qcalculus.families.conversions import (
    Direction,
    apply_row,
    conversion_matrix,
    heat_apply,
    hermite_to_psi,
    is_identity,
    matmul,
    psi_to_hermite,
)
from qcalculus.families.genfun import (
    a_series_closed,
    a_series_product,
    a_series_recurrence,
    big_e_series,
    check_a_system,
    genfun_hermite_lhs,
    h_series,
    hermite_product_defect,
)
from qcalculus.families.polys import (
    Q,
    h_small,
    hermite,
    psi,
    psi_even_product_corrected,
    psi_even_product_printed,
    psi_odd_product,
)
from qcalculus.families.qseries import QExpVariant, qexp_trunc, qpoch

logger = logging.getLogger(__name__)


class _Cases:
    """Collects exact comparisons for one suite"""

    def __init__(self, suite: str):
        self.result = SuiteResult(suite=suite)

    def equal(self, identity: str, params: Dict[str, int], lhs: Union[PolyX, QScalar], rhs: Union[PolyX, QScalar]):
        self.result.cases_run += 1
        diff = lhs - rhs
        if not diff.is_zero():
            self.result.failures.append(SuiteFailure(identity=identity, parameters=params, residual=str(diff)))

    def holds(self, identity: str, params: Dict[str, int], ok: bool, detail: str = "false"):
        self.result.cases_run += 1
        if not ok:
            self.result.failures.append(SuiteFailure(identity=identity, parameters=params, residual=detail))


def suite_dq_psi(max_n: int, iterated_max_n: int, **_) -> SuiteResult:
    cases = _Cases("dq-psi")
    for n in range(1, max_n + 1):
        scale = 2 * qpow(Fraction(1 - n, 2)) * (1 - qpow(n)) / (1 - Q)
        cases.equal("dq-psi", {"n": n}, dq(psi(n)), psi(n - 1).scale(scale))
        ratio = (qpow(Fraction(1 + n, 2)) - qpow(Fraction(-(n + 1), 2))) / (qpow(Fraction(1, 2)) - qpow(Fraction(-1, 2)))
        cases.equal("dq-x-psi", {"n": n}, dq(psi(n).mul_x()), mul_2x(psi(n - 1)).scale(ratio))
    for n in range(min(max_n, iterated_max_n) + 1):
        current = psi(n)
        for k in range(n + 1):
            if k:
                current = dq(current)
            closed = (
                2 ** k
                * qpow(Fraction(k * (k + 1), 4) - Fraction(n * k, 2))
                * qpoch(Q, Q, n)
                / (qpoch(Q, Q, n - k) * (1 - Q) ** k)
            )
            cases.equal("dq-iter-psi", {"n": n, "k": k}, current, psi(n - k).scale(closed))
    return cases.result


def suite_dq_h(max_n: int, **_) -> SuiteResult:
    cases = _Cases("dq-h")
    for n in range(1, max_n + 1):
        cases.equal("dq-h", {"n": n}, dq(h_small(n)), h_small(n - 1))
        scale = 2 * qpow(Fraction(1 - n, 2)) * (1 - qpow(n)) / (1 - Q)
        cases.equal("dq-hermite", {"n": n}, dq(hermite(n)), hermite(n - 1).scale(scale))
    return cases.result


def suite_recurrences(max_n: int, **_) -> SuiteResult:
    cases = _Cases("recurrences")
    for n in range(1, max_n + 1):
        lhs = h_small(n + 1).scale(1 - qpow(n + 1))
        rhs = h_small(n).mul_x().scale((1 - Q) * qpow(Fraction(n, 2))) - h_small(n - 1).scale(
            (1 - Q) ** 2 * qpow(Fraction(2 * n - 1, 2)) / 4
        )
        cases.equal("h-recurrence", {"n": n}, lhs, rhs)
    for n in range(2, max_n - 1):
        lhs = mul_2x(mul_2x(h_small(n)))
        rhs = (
            h_small(n + 2).scale(4 * (1 - qpow(n + 1)) * (1 - qpow(n + 2)) * qpow(Fraction(-2 * n - 1, 2)) / (1 - Q) ** 2)
            + h_small(n).scale(2 - qpow(n) - qpow(n + 1))
            + h_small(n - 2).scale((1 - Q) ** 2 * qpow(Fraction(2 * n - 3, 2)) / 4)
        )
        cases.equal("h-doubled-recurrence", {"n": n}, lhs, rhs)
    for m in range((max_n - 1) // 2 + 1):
        cases.equal("psi-odd-product", {"n": 2 * m + 1}, psi(2 * m + 1), psi_odd_product(m))
    for m in range(max_n // 2 + 1):
        cases.equal("psi-even-product", {"n": 2 * m}, psi(2 * m), psi_even_product_corrected(m))
        if m:
            # the printed sign gives a different polynomial for every m >= 1
            cases.holds(
                "psi-even-product-printed-differs",
                {"n": 2 * m},
                psi(2 * m) != psi_even_product_printed(m),
                "printed even product coincides with the recurrence",
            )
    defect = hermite_product_defect(max_n)
    for n, c in enumerate(defect.coeffs):
        cases.equal("hermite-generating-product", {"n": n}, c, PolyX())
    return cases.result


def suite_genfun(t_order: int, **_) -> SuiteResult:
    cases = _Cases("genfun")
    product = a_series_closed(t_order) * big_e_series(t_order)
    target = h_series(t_order)
    for n in range(t_order + 1):
        cases.equal("appell-expansion", {"n": n}, product[n], target[n])
    rescaled = product.rescale(2 / (1 - Q))
    lhs = genfun_hermite_lhs(t_order)
    for n in range(t_order + 1):
        cases.equal("hermite-generating-function", {"n": n}, rescaled[n], lhs[n])
    pair = qexp_trunc(Q, Q, QExpVariant.E_Q, t_order) * qexp_trunc(Q, Q, QExpVariant.RECIPROCAL, t_order)
    cases.holds("qexp-inverse-pair", {"order": t_order}, pair.is_one(), "e_q * (1/e_q) != 1")
    closed, prod = a_series_closed(t_order), a_series_product(t_order)
    for n in range(t_order + 1):
        cases.equal("a-product-form", {"n": n}, closed[n], prod[n])
    return cases.result


def suite_inverse(max_n: int, **_) -> SuiteResult:
    cases = _Cases("inverse")
    for n in range(max_n + 1):
        cases.equal("psi-in-hermite", {"n": n}, apply_row(psi_to_hermite(n), hermite), psi(n))
        cases.equal("hermite-in-psi", {"n": n}, apply_row(hermite_to_psi(n), psi), hermite(n))
    forward = conversion_matrix(Direction.PSI_TO_HERMITE, max_n + 1)
    backward = conversion_matrix(Direction.HERMITE_TO_PSI, max_n + 1)
    cases.holds("matrix-inverse", {"size": max_n + 1}, is_identity(matmul(forward, backward)), "forward * backward != I")
    cases.holds("matrix-inverse", {"size": max_n + 1}, is_identity(matmul(backward, forward)), "backward * forward != I")
    return cases.result


def suite_heat(max_n: int, iterated_max_n: int, **_) -> SuiteResult:
    cases = _Cases("heat")
    for n in range(min(max_n, iterated_max_n) + 1):
        cases.equal("heat-analog", {"n": n}, heat_apply(n), hermite(n))
    return cases.result


def suite_big_e(t_order: int, **_) -> SuiteResult:
    cases = _Cases("big-e")
    series = big_e_series(t_order)
    for n in range(t_order):
        cases.equal("dq-eigen", {"n": n}, dq(series[n + 1]), series[n])
    return cases.result


def suite_a_coeffs(t_order: int, **_) -> SuiteResult:
    cases = _Cases("a-coeffs")
    closed = a_series_closed(t_order)
    try:
        solved = a_series_recurrence(t_order)
    except InconsistentSystemError as e:
        cases.holds("a-system", {"n": e.n, "k": e.k}, False, str(e.residual))
        return cases.result
    for n in range(t_order + 1):
        cases.equal("a-recurrence-vs-closed", {"n": n}, solved[n], closed[n])
    for n in range(1, t_order + 1, 2):
        cases.holds("a-odd-vanish", {"n": n}, closed[n].is_zero(), str(closed[n]))
    try:
        checked = check_a_system(list(closed.coeffs))
        cases.holds("a-system-closed", {"equations": checked}, True)
    except InconsistentSystemError as e:
        cases.holds("a-system-closed", {"n": e.n, "k": e.k}, False, str(e.residual))
    return cases.result


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "dq-psi": suite_dq_psi,
    "dq-h": suite_dq_h,
    "recurrences": suite_recurrences,
    "genfun": suite_genfun,
    "inverse": suite_inverse,
    "heat": suite_heat,
    "big-e": suite_big_e,
    "a-coeffs": suite_a_coeffs,
}


def run_suite(name: str, max_n: int = 20, t_order: int = 16, iterated_max_n: int = 16) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    started = time.perf_counter()
    result = SUITES[name](max_n=max_n, t_order=t_order, iterated_max_n=iterated_max_n)
    result.wall_time = time.perf_counter() - started
    logger.debug(f"suite {name}: {result.cases_run} cases, {len(result.failures)} failures, {result.wall_time:.2f}s")
    return result


def run_all(max_n: int = 20, t_order: int = 16, iterated_max_n: int = 16) -> List[SuiteResult]:
    return [run_suite(name, max_n, t_order, iterated_max_n) for name in SUITES]
