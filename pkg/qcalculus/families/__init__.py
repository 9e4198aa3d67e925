# qcalculus/families/__init__.py
