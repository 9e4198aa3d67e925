# services/export_service.py
"""Text, JSON and CSV renderings of tables, evaluations, suite results and reports"""

import csv
import io
import json
from fractions import Fraction
from typing import Any, Dict, Iterable, Sequence

from models.report_model import (
    ConversionTable,
    ConversionWeight,
    EvalResult,
    FamilyTable,
    ReplayReport,
    SuiteResult,
)
from qcalculus.core.opcore import PolyX
from qcalculus.core.scalar import QScalar, to_string
from qcalculus.families.conversions import ConversionRow

FORMATS = ("text", "json", "csv")


def dump_json(payload: Dict[str, Any]) -> str:
    """Deterministic JSON: model field order, no sorting, fixed indentation"""
    return json.dumps(payload, indent=2, ensure_ascii=False)


def pretty_scalar(c: QScalar) -> str:
    """Drop a unit denominator"""
    den = c.den
    if den.min_exp == 0 and den.coeffs == (Fraction(1),):
        return str(c.num)
    return to_string(c)


def pretty_poly(p: PolyX) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        power = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        coeff = pretty_scalar(c)
        if not power:
            parts.append(coeff)
        elif c == 1:
            parts.append(power)
        else:
            coeff = coeff if coeff.startswith("(") or " " not in coeff else f"({coeff})"
            parts.append(f"{coeff}*{power}")
    return " + ".join(parts)


def family_table(family: str, n: int, p: PolyX) -> FamilyTable:
    return FamilyTable(family=family, n=n, coeffs_x=p.to_json())


def render_family_text(table: FamilyTable, p: PolyX) -> str:
    lines = [pretty_poly(p)]
    lines.extend(f"x^{k}: {c}" for k, c in enumerate(table.coeffs_x))
    return "\n".join(lines)


def render_csv(rows: Iterable[Sequence[Any]], header: Sequence[str] = ("n", "q", "x", "value")) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return out.getvalue()


def conversion_table(direction: str, row: ConversionRow) -> ConversionTable:
    return ConversionTable(
        direction=direction,
        n=row.n,
        weights=[ConversionWeight(k=k, weight=to_string(w)) for k, w in row.weights],
    )


def render_conversion_text(table: ConversionTable) -> str:
    target = "H" if table.direction.startswith("psi") else "Psi"
    lines = [f"{table.direction} n={table.n}"]
    lines.extend(f"k={w.k} {target}_{table.n - 2 * w.k}: {w.weight}" for w in table.weights)
    return "\n".join(lines)


def render_eval_text(result: EvalResult) -> str:
    return result.value


def render_suite_text(result: SuiteResult) -> str:
    status = "PASS" if result.passed else "FAIL"
    lines = [f"{result.suite}: {result.cases_run} cases, {len(result.failures)} failures [{status}]"]
    lines.extend(f.line() for f in result.failures)
    return "\n".join(lines)


def render_report_text(report: ReplayReport, depth: int = 0) -> str:
    pad = "  " * depth
    lines = [f"{pad}{report.label or 'report'}: {report.outcome.value}"]
    if report.witness is not None:
        w = report.witness
        lines.append(f"{pad}  witness (n={w.n}, k={w.k}) residual={w.residual} certificate={w.certificate}")
    for check in report.checks:
        lines.append(f"{pad}  [{'ok' if check.passed else 'FAIL'}] {check.name}: {check.detail}")
    if not report.complete:
        lines.append(f"{pad}  incomplete: {report.notes}")
    for component in report.components:
        lines.append(render_report_text(component, depth + 1))
    return "\n".join(lines)
