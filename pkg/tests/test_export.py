# tests/test_export.py

from models.report_model import CheckRecord, Outcome, ReplayReport, SuiteFailure, SuiteResult, Witness
from qcalculus.core.opcore import PolyX
from qcalculus.core.scalar import ONE, qpow
from qcalculus.families.polys import hermite, psi
from services.export_service import (
    pretty_poly,
    pretty_scalar,
    render_csv,
    render_report_text,
    render_suite_text,
)

Q = qpow(1)


def test_pretty_scalar():
    assert pretty_scalar(ONE) == "1"
    assert pretty_scalar(1 - Q) == "1 - s^4"
    assert pretty_scalar(ONE / (1 - Q)) == "(-1)/(-1 + s^4)"


def test_pretty_poly():
    assert pretty_poly(PolyX()) == "0"
    assert pretty_poly(psi(0)) == "1"
    assert pretty_poly(PolyX.x()) == "x"
    assert pretty_poly(hermite(2)) == "-1 + s^4 + 4*x^2"
    assert pretty_poly(PolyX.x().scale(1 - Q)) == "(1 - s^4)*x"


def test_csv():
    assert render_csv([[2, "0.25", "1.0", "3.25"]]) == "n,q,x,value\n2,0.25,1.0,3.25\n"


def test_suite_lines():
    result = SuiteResult(
        suite="heat",
        cases_run=3,
        failures=[SuiteFailure(identity="heat-analog", parameters={"n": 2}, residual="(s^4)/(1)")],
    )
    assert render_suite_text(result).splitlines() == [
        "heat: 3 cases, 1 failures [FAIL]",
        "FAIL heat-analog [n=2] residual=(s^4)/(1)",
    ]


def test_report_text():
    inner = ReplayReport(
        outcome=Outcome.CONTRADICTION_WITNESS,
        witness=Witness(n=2, k=0, residual="(1)/(1)", certificate="1"),
        label="case II",
    )
    outer = ReplayReport(
        outcome=Outcome.FORCED_HERMITE,
        label="uniqueness",
        checks=[CheckRecord(name="beta-forcing", passed=True, detail="linear")],
        components=[inner],
    )
    lines = render_report_text(outer).splitlines()
    assert lines[0] == "uniqueness: ForcedHermite"
    assert lines[1] == "  [ok] beta-forcing: linear"
    assert lines[2] == "  case II: ContradictionWitness"
    assert lines[3].startswith("    witness (n=2, k=0)")
