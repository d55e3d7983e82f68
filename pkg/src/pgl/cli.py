"""Command line entry point ``pgl``.

Exit status: 0 on success, 1 when a suite check fails, 2 on usage errors
and diagnostics (parse, well-formedness, structure, evaluation).
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click

from .corpus import check_corpus, data_path
from .evaluation import NotWellFormed, Options, TraceEvent, evaluate
from .model import ModelError
from .parser import ParseError, parse_formula
from .search import BoundsTooLarge, EnumBounds, classify, syllogism_suite
from .structfile import StructureFormatError, load_structure
from .wellformed import wellformed

EXIT_FAIL = 1
EXIT_DIAG = 2


def _resolve(path: str, folder: str, suffix: str) -> Path:
    """A file path, falling back to the bundled data of the same name."""
    p = Path(path)
    if p.exists():
        return p
    name = p.name if p.name.endswith(suffix) else p.name + suffix
    bundled = data_path(folder, name)
    if bundled.is_file():
        return Path(str(bundled))
    raise click.BadParameter(f"no such file: {path}")


def _diag(message: str) -> None:
    click.echo(message, err=True)
    sys.exit(EXIT_DIAG)


def _read_formula(path: str):
    p = _resolve(path, "corpus", ".pgl")
    text = p.read_text(encoding="utf-8")
    try:
        return parse_formula(text)
    except ParseError as exc:
        line = text.encode("utf-8")[:exc.span.begin].count(b"\n") + 1
        _diag(f"{p}:{line}: {exc}")


def _read_structure(path: str):
    p = _resolve(path, "structures", ".pgls")
    try:
        return load_structure(p.read_text(encoding="utf-8"))
    except StructureFormatError as exc:
        _diag(f"{p}: {exc}")


def _print_trace(events: list[TraceEvent]) -> None:
    for ev in events:
        click.echo(f"{'  ' * (ev.depth - 1)}[{ev.rule}] {ev.formula} = {ev.value}")


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Model checking and bounded validity for predicate gradual logic."""


@main.command()
@click.argument("formula_file")
def check(formula_file: str) -> None:
    """Report well-formedness violations of a formula file."""
    f = _read_formula(formula_file)
    report = wellformed(f)
    if report.ok:
        click.echo("ok")
        return
    for v in report.violations:
        click.echo(f"{v.rule} at {v.location}: {v.message}")
    sys.exit(EXIT_DIAG)


@main.command("eval")
@click.argument("formula_file")
@click.argument("structure_file")
@click.option("--trace", is_flag=True, help="Print the rule applied at every node, innermost first.")
@click.option("--strict-quantifier", is_flag=True, help="Range attributed variables over their own attribute space.")
@click.option("--strict-attribute", is_flag=True, help="An attribute that is not T makes the application U.")
def eval_cmd(formula_file: str, structure_file: str, trace: bool, strict_quantifier: bool,
             strict_attribute: bool) -> None:
    """Evaluate a formula on a structure and print T, F or U."""
    f = _read_formula(formula_file)
    s = _read_structure(structure_file)
    events: list[TraceEvent] | None = [] if trace else None
    try:
        value = evaluate(s, f, options=Options(strict_quantifier, strict_attribute), trace=events)
    except NotWellFormed as exc:
        _diag(str(exc))
    except ModelError as exc:
        _diag(f"{type(exc).__name__}: {exc}")
    if events:
        _print_trace(events)
    click.echo(str(value))


@main.command()
@click.argument("formula_file")
@click.option("--bases", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--copies", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--depth", type=click.IntRange(min=0), default=0, show_default=True,
              help="Nested attribute spaces below every object.")
@click.option("--modulo-iso", is_flag=True, help="One structure per class under base renaming.")
@click.option("--strict-quantifier", is_flag=True)
@click.option("--json", "as_json", is_flag=True, help="Print the report as JSON.")
def validity(formula_file: str, bases: int, copies: int, depth: int, modulo_iso: bool,
             strict_quantifier: bool, as_json: bool) -> None:
    """Classify a formula over every structure within the bounds."""
    f = _read_formula(formula_file)
    try:
        rep = classify(f, EnumBounds(bases, copies, depth), modulo_iso=modulo_iso,
                       options=Options(strict_quantifier=strict_quantifier))
    except (NotWellFormed, BoundsTooLarge) as exc:
        _diag(str(exc))
    if as_json:
        click.echo(json.dumps({"formula": rep.formula, "verdict": rep.verdict, "counts": rep.counts(),
                               "diagnostics": list(rep.diagnostics)}, indent=2))
        return
    click.echo(rep.formula)
    click.echo(f"verdict: {rep.verdict}")
    for k, v in rep.counts().items():
        click.echo(f"{k}: {v}")
    for d in rep.diagnostics:
        click.echo(f"diagnostic: {d}")


@main.command()
@click.option("--bases", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--modulo-iso", is_flag=True)
@click.option("--json", "json_path", type=click.Path(dir_okay=False, writable=True),
              help="Also write one JSON record per check to this file.")
def suite(bases: int, modulo_iso: bool, json_path: str | None) -> None:
    """Run the corpus expectations and the syllogism suite."""
    start = time.perf_counter()
    records = [r.as_dict() for r in check_corpus()]
    records += [r.as_dict() for r in syllogism_suite(EnumBounds(bases), modulo_iso=modulo_iso)]
    for r in records:
        extra = f"  {r['counts']}" if "counts" in r else ""
        click.echo(f"{r['verdict'].upper():4} {r['id']}: expected {r['expected']}, got {r['got']}{extra}")
    failed = sum(r["verdict"] != "pass" for r in records)
    click.echo(f"{len(records) - failed}/{len(records)} passed in {time.perf_counter() - start:.1f}s")
    if json_path:
        Path(json_path).write_text(json.dumps(records, indent=2) + "\n", encoding="utf-8")
    if failed:
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":
    main()
