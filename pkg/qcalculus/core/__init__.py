# qcalculus/core/__init__.py
