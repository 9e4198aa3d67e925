# qcalculus/proofs/__init__.py
