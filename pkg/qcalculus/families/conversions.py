# qcalculus/families/conversions.py
"""Connection coefficients between Psi_n and H_n, and the heat-operator analog"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Tuple

from qcalculus.core.opcore import PolyX, dq
from qcalculus.core.scalar import ONE, ZERO, QScalar, qpow
from qcalculus.families.genfun import A_ARGUMENT
from qcalculus.families.polys import Q, hermite, psi
from qcalculus.families.qseries import QExpVariant, qexp_trunc, qpoch

logger = logging.getLogger(__name__)


class Direction(str, Enum):
    PSI_TO_HERMITE = "psi-to-hermite"
    HERMITE_TO_PSI = "hermite-to-psi"


@dataclass(frozen=True)
class ConversionRow:
    """Weights (k, w_k) for 0 <= 2k <= n"""

    n: int
    weights: Tuple[Tuple[int, QScalar], ...]

    def weight(self, k: int) -> QScalar:
        for j, w in self.weights:
            if j == k:
                return w
        return ZERO


def _row(n: int, term: Callable[[int], QScalar]) -> ConversionRow:
    if n < 0:
        raise ValueError("conversion rows need n >= 0")
    return ConversionRow(n, tuple((k, term(k)) for k in range(n // 2 + 1)))


def psi_to_hermite(n: int) -> ConversionRow:
    """Psi_n = sum_k w_k H_{n-2k}"""
    return _row(
        n,
        lambda k: qpoch(Q, Q, n) * qpow(k * (k - n)) / (qpoch(Q ** 2, Q ** 2, k) * qpoch(Q, Q, n - 2 * k)),
    )


def hermite_to_psi(n: int) -> ConversionRow:
    """H_n = sum_k v_k Psi_{n-2k}"""

    def term(k: int) -> QScalar:
        v = qpoch(Q, Q, n) * qpow(k * (2 * k - n - 1)) / (qpoch(Q ** 2, Q ** 2, k) * qpoch(Q, Q, n - 2 * k))
        return -v if k % 2 else v

    return _row(n, term)


ROW_BUILDERS = {
    Direction.PSI_TO_HERMITE: (psi_to_hermite, hermite),
    Direction.HERMITE_TO_PSI: (hermite_to_psi, psi),
}


def apply_row(row: ConversionRow, family: Callable[[int], PolyX]) -> PolyX:
    out = PolyX()
    for k, w in row.weights:
        out = out + family(row.n - 2 * k).scale(w)
    return out


def conversion_matrix(direction: Direction, size: int) -> List[List[QScalar]]:
    """Lower-triangular matrix whose row n holds the weights of rows 0..size-1"""
    build, _ = ROW_BUILDERS[Direction(direction)]
    matrix = [[ZERO] * size for _ in range(size)]
    for n in range(size):
        for k, w in build(n).weights:
            matrix[n][n - 2 * k] = w
    return matrix


def matmul(a: List[List[QScalar]], b: List[List[QScalar]]) -> List[List[QScalar]]:
    size = len(a)
    out = [[ZERO] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1):
            acc = ZERO
            for m in range(j, i + 1):
                if a[i][m].is_zero() or b[m][j].is_zero():
                    continue
                acc = acc + a[i][m] * b[m][j]
            out[i][j] = acc
    return out


def is_identity(matrix: List[List[QScalar]]) -> bool:
    return all(
        value == (ONE if i == j else ZERO) for i, row in enumerate(matrix) for j, value in enumerate(row)
    )


def heat_apply(n: int) -> PolyX:
    """(A_ARGUMENT * D_q^2; q^2)_inf applied to Psi_n; terminates at k = n // 2"""
    weights = qexp_trunc(A_ARGUMENT, Q ** 2, QExpVariant.RECIPROCAL, n // 2)
    current = psi(n)
    out = PolyX()
    for k in range(n // 2 + 1):
        if k:
            current = dq(dq(current))
        out = out + current.scale(weights[k])
    return out
