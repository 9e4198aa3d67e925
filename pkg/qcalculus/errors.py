# qcalculus/errors.py
"""Exception hierarchy shared by the calculus, the CLI and the HTTP service"""

from typing import Any, Optional


class QCalcError(Exception):
    """Base class for every error raised by the calculus"""


class ScalarDivisionError(QCalcError, ZeroDivisionError):
    """Inverse of, or division by, the zero scalar"""


class QPowerError(QCalcError, ValueError):
    """q-power whose exponent is not a multiple of 1/4"""


class DomainError(QCalcError, ValueError):
    """Input outside the supported domain (q not in (0,1), s = 0, bad rational)"""


class ParseError(QCalcError, ValueError):
    """Malformed textual scalar or polynomial"""


class PoleError(QCalcError):
    """Exact evaluation at a zero of the denominator"""

    def __init__(self, denominator: str, at: Any):
        self.denominator = denominator
        self.at = at
        super().__init__(f"denominator {denominator} vanishes at s = {at}")


class OperatorConsistencyError(QCalcError):
    """Divided difference left a remainder or a non-symmetric quotient"""


class InconsistentSystemError(QCalcError):
    """Over-determined coefficient system with a nonzero residual"""

    def __init__(self, n: int, k: int, residual: Any, system: str = ""):
        self.n = n
        self.k = k
        self.residual = residual
        self.system = system
        label = f"{system} " if system else ""
        super().__init__(f"{label}residual at (n={n}, k={k}) is {residual}, expected 0")


class ConstraintIndexError(QCalcError, IndexError):
    """Residual requested outside 0 <= k <= n+1 or past the supplied sequences"""


class ReplayInputError(QCalcError, ValueError):
    """Invalid characterization sample; `resample` is set when the sample hits a pole"""

    def __init__(self, message: str, resample: bool = False, sample: Optional[Any] = None):
        self.resample = resample
        self.sample = sample
        super().__init__(message)
