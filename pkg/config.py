# config.py
"""Runtime defaults for the calculus, the CLI and the HTTP service"""

import os
from fractions import Fraction
from itertools import product
from typing import List, Tuple

# Verification bounds
MAX_N = int(os.environ.get("QCALC_MAX_N", 20))
T_ORDER = int(os.environ.get("QCALC_T_ORDER", 16))
ITERATED_MAX_N = int(os.environ.get("QCALC_ITERATED_MAX_N", 16))

# Numeric evaluation
PRECISION_BITS = int(os.environ.get("QCALC_PRECISION_BITS", 128))

# Rational s at which symbolic residuals are certified nonzero
CERT_S = Fraction(os.environ.get("QCALC_CERT_S", "1/2"))

# Case II sample grid, "a1:a2:s" triples separated by ";"
_DEFAULT_SAMPLES = ";".join(
    f"{a1}:{a2}:{s}" for a1, a2, s in product(("1", "-1", "1/3"), ("0", "1/7"), ("1/2", "2/3"))
)


def parse_samples(text: str) -> List[Tuple[Fraction, Fraction, Fraction]]:
    """Parse "a1:a2:s;..." into exact triples"""
    samples = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(":")
        if len(parts) != 3:
            raise ValueError(f"sample {chunk!r} is not of the form a1:a2:s")
        samples.append(tuple(Fraction(p) for p in parts))
    return samples


SAMPLES = parse_samples(os.environ.get("QCALC_SAMPLES", _DEFAULT_SAMPLES))

# Logging
LOG_LEVEL = os.environ.get("QCALC_LOG_LEVEL", "WARNING").upper()

# Environment
PORT = int(os.environ.get("PORT", 8000))
REQUEST_TIMEOUT = float(os.environ.get("QCALC_REQUEST_TIMEOUT", 300))

# Request caps; exact work grows quickly with the degree
MAX_REQUEST_N = int(os.environ.get("QCALC_MAX_REQUEST_N", 64))
MAX_REQUEST_BOUND = int(os.environ.get("QCALC_MAX_REQUEST_BOUND", 32))
