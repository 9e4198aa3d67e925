# cli.py
"""
Command line interface for the q-calculus.

    $ uv run python cli.py --help

    Commands:
    family        coefficients of psi, hermite or h in the x-monomial basis
    eval          exact (rational s) or mpmath (float q) value of a family member
    convert       connection coefficients between Psi_n and H_n
    verify        run an identity suite
    characterize  replay the uniqueness argument and write the report

Exit status: 0 pass, 1 verification failures, 2 usage or domain errors.
"""

import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

import click

import config
from qcalculus.errors import QCalcError, ReplayInputError
from services import calc_service
from services.export_service import (
    FORMATS,
    dump_json,
    render_conversion_text,
    render_csv,
    render_eval_text,
    render_family_text,
    render_report_text,
    render_suite_text,
)

logger = logging.getLogger(__name__)

EXIT_FAILURES = 1
EXIT_USAGE = 2


def _fail(message: str, code: int = EXIT_USAGE):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
@click.option("--log-level", default=config.LOG_LEVEL, show_default=True, help="Python logging level")
def cli(log_level: str):
    logging.basicConfig(level=getattr(logging, log_level.upper(), logging.WARNING))


@cli.command()
@click.option("--name", type=click.Choice(calc_service.FAMILY_NAMES), required=True)
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="text", show_default=True)
@click.option("--q", "q_values", type=float, multiple=True, help="q grid for csv (repeatable)")
@click.option("--x", "x_values", type=float, multiple=True, help="x grid for csv (repeatable)")
@click.option("--precision", type=click.IntRange(min=16), default=config.PRECISION_BITS, show_default=True)
def family(name: str, n: int, fmt: str, q_values: Tuple[float, ...], x_values: Tuple[float, ...], precision: int):
    """Print a family member in the x-monomial basis"""
    try:
        table, p = calc_service.build_family(name, n)
        if fmt == "json":
            click.echo(dump_json(table.to_dict()))
        elif fmt == "csv":
            rows = calc_service.float_rows(name, n, q_values or (0.25,), x_values or (-1.0, -0.5, 0.0, 0.5, 1.0), precision)
            click.echo(render_csv(rows), nl=False)
        else:
            click.echo(render_family_text(table, p))
    except QCalcError as e:
        _fail(str(e))


@cli.command(name="eval")
@click.option("--name", type=click.Choice(calc_service.FAMILY_NAMES), required=True)
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--x", "x", required=True, help="rational (exact path) or decimal")
@click.option("--s", "s", default=None, help="exact rational s with q = s^4")
@click.option("--q", "q", default=None, help="float q in (0, 1)")
@click.option("--precision", type=click.IntRange(min=16), default=config.PRECISION_BITS, show_default=True)
@click.option("--format", "fmt", type=click.Choice(("text", "json")), default="text", show_default=True)
def eval_command(name: str, n: int, x: str, s: Optional[str], q: Optional[str], precision: int, fmt: str):
    """Evaluate a family member at one point"""
    if (s is None) == (q is None):
        raise click.UsageError("give exactly one of --s or --q")
    try:
        result = calc_service.evaluate(name, n, x, s=s, q=q, precision=precision)
    except QCalcError as e:
        _fail(str(e))
    click.echo(dump_json(result.to_dict()) if fmt == "json" else render_eval_text(result))


@cli.command()
@click.option("--direction", type=click.Choice(calc_service.DIRECTIONS), required=True)
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--format", "fmt", type=click.Choice(("text", "json")), default="text", show_default=True)
def convert(direction: str, n: int, fmt: str):
    """Connection coefficients of one row"""
    try:
        table = calc_service.convert(direction, n)
    except QCalcError as e:
        _fail(str(e))
    click.echo(dump_json(table.to_dict()) if fmt == "json" else render_conversion_text(table))


@cli.command()
@click.option("--suite", type=click.Choice(calc_service.SUITE_NAMES + ("all",)), required=True)
@click.option("--max-n", type=click.IntRange(min=1), default=config.MAX_N, show_default=True)
@click.option("--t-order", type=click.IntRange(min=0), default=config.T_ORDER, show_default=True)
@click.option("--iterated-max-n", type=click.IntRange(min=0), default=config.ITERATED_MAX_N, show_default=True)
@click.option("--format", "fmt", type=click.Choice(("text", "json")), default="text", show_default=True)
def verify(suite: str, max_n: int, t_order: int, iterated_max_n: int, fmt: str):
    """Run identity suites; exit 1 on any failure"""
    names = calc_service.SUITE_NAMES if suite == "all" else (suite,)
    try:
        results = [calc_service.verify(name, max_n, t_order, iterated_max_n) for name in names]
    except QCalcError as e:
        _fail(str(e))
    for result in results:
        click.echo(dump_json(result.to_dict()) if fmt == "json" else render_suite_text(result))
    if any(not r.passed for r in results):
        sys.exit(EXIT_FAILURES)


@cli.command()
@click.option("--max-n", type=click.IntRange(min=4), default=10, show_default=True)
@click.option("--a1", "a1", multiple=True, help="Case II sample a1 (repeatable, paired with --a2 and --s)")
@click.option("--a2", "a2", multiple=True)
@click.option("--s", "s", multiple=True)
@click.option("--no-samples", is_flag=True, help="Case I only")
@click.option("--out", "out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="report JSON path")
@click.option("--format", "fmt", type=click.Choice(("text", "json")), default="text", show_default=True)
def characterize(max_n: int, a1: Tuple[str, ...], a2: Tuple[str, ...], s: Tuple[str, ...], no_samples: bool, out: Optional[Path], fmt: str):
    """Replay the uniqueness argument; exit 0 iff the aggregate is ForcedHermite"""
    if not (len(a1) == len(a2) == len(s)):
        raise click.UsageError("--a1, --a2 and --s must be given the same number of times")
    try:
        samples = [(Fraction(x), Fraction(y), Fraction(z)) for x, y, z in zip(a1, a2, s)]
    except (ValueError, ZeroDivisionError) as e:
        raise click.UsageError(f"samples must be exact rationals: {e}")
    if not samples and not no_samples:
        samples = list(config.SAMPLES)

    try:
        report = calc_service.characterize(max_n, samples)
    except ReplayInputError as e:
        raise click.UsageError(f"invalid sample: {e}")
    except QCalcError as e:
        _fail(str(e))

    payload = dump_json(report.to_dict())
    if out is not None:
        out.write_text(payload + "\n", encoding="utf-8")
    click.echo(payload if fmt == "json" else render_report_text(report))
    if report.outcome.value != "ForcedHermite":
        sys.exit(EXIT_FAILURES)


def main():
    cli()


if __name__ == "__main__":
    main()
