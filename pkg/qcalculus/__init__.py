# qcalculus/__init__.py
"""Exact Askey-Wilson operator calculus around the Rogers q-Hermite polynomials"""

__version__ = "0.1.0"
