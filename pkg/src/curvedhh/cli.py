"""Command line interface.

Exit codes: 0 ok, 1 validation failure, 2 I/O or parse failure,
3 convention violation (a differential that does not square to zero).
Every failure prints one ``error[CODE] ...`` line on stderr.
"""

from __future__ import annotations

import functools
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from . import __version__
from .ainfty import AInftyCategory, CategoryError, RelationViolation, directed_subcategory, validate_ainfty
from .bar import bar_complex, insert_a_subcomplex_check, q_word_report, serre_step_check
from .catfile import CategoryFileError, category_hash, read_category, write_category
from .examples import EXAMPLES, generate
from .hochschild import (ConventionViolation, build_curved, connes_complex, donaldson_complex, e1_page,
                         over_field, truncated_hochschild_betti)
from .linalg import ConfigurationError, Field, homology_dims, homological
from .report import BettiReport

EXIT_OK, EXIT_VALIDATION, EXIT_IO, EXIT_CONVENTION = 0, 1, 2, 3


class Failure(click.ClickException):
    def __init__(self, code: str, message: str, exit_code: int):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code

    def show(self, file=None):
        click.echo(f"error[{self.code}] {self.message}", err=True)


def _load(path: str, field: str | None) -> tuple[AInftyCategory, AInftyCategory, str]:
    try:
        b = read_category(path)
    except CategoryFileError as e:
        where = f"{e.source}:{e.line}:{e.column}" if e.line else e.source
        parse_level = e.is_syntax or e.code == "E-DANGLING"
        raise Failure(e.code, f"{where}: {e.message}", EXIT_IO if parse_level else EXIT_VALIDATION)
    digest = category_hash(b)
    if field is not None:
        try:
            b = over_field(b, Field.parse(field))
        except (ConfigurationError, CategoryError, ZeroDivisionError) as e:
            raise Failure("E-FIELD", f"{path}: {e}", EXIT_IO)
    if b.m == 0:
        return b, b, digest
    try:
        a = directed_subcategory(b)
    except CategoryError as e:
        raise Failure("E-VALIDATION", f"{path}: {e}", EXIT_VALIDATION)
    return a, b, digest


def _emit(report: BettiReport, label: str, csv_path: str | None, plot_path: str | None):
    click.echo(f"# {report.kind} over {report.field}, input {report.input_hash}, "
               f"version {report.version}, conventions {report.conventions}")
    click.echo(report.table(label))
    if csv_path:
        report.write(csv_path)
        click.echo(f"# csv: {csv_path}")
    if plot_path:
        from .plotting import betti_heatmap
        betti_heatmap(report, plot_path, row_label=label)
        click.echo(f"# figure: {plot_path}")


def _hh_row(args):
    a, b, pmax, p = args
    return p, truncated_hochschild_betti(build_curved(a, b, pmax), p)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="curvedhh")
def cli():
    """Exact Hochschild, bar and cyclic complexes of curved A-infinity categories."""


def _guard(fn):
    """Map library exceptions to exit codes."""

    @functools.wraps(fn)
    def run(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ConventionViolation as e:
            raise Failure("E-CONVENTION", str(e), EXIT_CONVENTION)
        except (RelationViolation, CategoryError) as e:
            raise Failure("E-VALIDATION", str(e), EXIT_VALIDATION)
        except OSError as e:
            raise Failure("E-IO", str(e), EXIT_IO)

    return run


pmax_opt = click.option("--pmax", type=click.IntRange(0), default=3, show_default=True, help="Truncation level.")
field_opt = click.option("--field", default=None, help="Q or a prime (2, F2, GF3, ...). Default: the file's field.")
csv_opt = click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None, help="Write p,degree,dim.")
plot_opt = click.option("--plot", "plot_path", type=click.Path(dir_okay=False), default=None,
                        help="Write a Betti heatmap (png, pdf, svg).")


@cli.command()
@click.argument("file", type=click.Path())
@_guard
def validate(file):
    """Check degrees, strict units and the A-infinity relations."""
    a, b, digest = _load(file, None)
    rep = validate_ainfty(b) if b.m else {"tuples_checked": 0, "max_arity": 0}
    click.echo(f"ok {b.summary()}; {rep['tuples_checked']} relations up to arity {rep['max_arity']}; "
               f"directed part has {len(a.gens)} generators; hash {digest}")


@cli.command()
@click.argument("file", type=click.Path())
@pmax_opt
@field_opt
@csv_opt
@plot_opt
@click.option("--jobs", type=click.IntRange(1), default=1, show_default=True, help="Worker processes.")
@_guard
def hochschild(file, pmax, field, csv_path, plot_path, jobs):
    """Betti numbers of the truncated Hochschild complex, rows p = 0..pmax."""
    a, b, digest = _load(file, field)
    tasks = [(a, b, pmax, p) for p in range(pmax + 1)]
    if b.m == 0:
        rows = {p: {} for p in range(pmax + 1)}
    elif jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            rows = dict(ex.map(_hh_row, tasks))
    else:
        rows = dict(map(_hh_row, tasks))
    _emit(BettiReport(rows, b.field.name, digest, "hochschild"), "p", csv_path, plot_path)


@cli.command()
@click.argument("file", type=click.Path())
@pmax_opt
@field_opt
@plot_opt
@_guard
def e1(file, pmax, field, plot_path):
    """E^1 dimensions, d^1 ranks and E^2 dimensions per weight column."""
    a, b, digest = _load(file, field)
    page = e1_page(build_curved(a, b, pmax)) if b.m else None
    f = b.field.name
    reports = {
        "E1": BettiReport(page.e1 if page else {}, f, digest, "E1"),
        "d1 rank": BettiReport(page.d1_rank if page else {}, f, digest, "d1"),
        "E2 (weights < pmax)": BettiReport(page.e2 if page else {}, f, digest, "E2"),
    }
    for title, rep in reports.items():
        click.echo(f"## {title}")
        click.echo(rep.table("w"))
    if page is not None:
        ok = "yes" if page.column0_is_R() else "no"
        click.echo(f"# weight-0 column is R: {ok}")
    if plot_path:
        from .plotting import betti_heatmap
        betti_heatmap(reports["E1"], plot_path, title=f"E1 over {f}", row_label="w")
        click.echo(f"# figure: {plot_path}")


@cli.command()
@click.argument("file", type=click.Path())
@click.option("--d", "fiber_dim", type=int, required=True, help="Complex dimension of the total space.")
@field_opt
@_guard
def donaldson(file, fiber_dim, field):
    """Betti numbers of the Donaldson complex (B[d] + T(A_+[1]))^diag."""
    a, b, digest = _load(file, field)
    h = homology_dims(donaldson_complex(a, b, fiber_dim)) if b.m else {}
    rep = BettiReport({0: homological(h)}, b.field.name, digest, "donaldson")
    click.echo(f"# donaldson over {rep.field}, d = {fiber_dim}, input {rep.input_hash}, "
               f"version {rep.version}, conventions {rep.conventions}")
    click.echo("degree,dim")
    for k, v in rep.rows[0].items():
        click.echo(f"{k},{v}")


@cli.command()
@click.argument("file", type=click.Path())
@pmax_opt
@field_opt
@csv_opt
@plot_opt
@click.option("--check-insert-a", is_flag=True, help="Check that the insert-a cone is acyclic.")
@click.option("--check-serre-step", is_flag=True, help="Compare p = 1 with the one-Q complex.")
@click.option("--q-words", is_flag=True, help="Experimental: compare every p with the p-fold Q-word complex.")
@_guard
def bar(file, pmax, field, csv_path, plot_path, check_insert_a, check_serre_step, q_words):
    """Betti numbers of the truncated reduced bar complex (homological degrees)."""
    a, b, digest = _load(file, field)
    rows = {}
    d = build_curved(a, b, max(pmax, 1)) if b.m else None
    for p in range(pmax + 1):
        rows[p] = homological(homology_dims(bar_complex(d, p))) if d else {}
    _emit(BettiReport(rows, b.field.name, digest, "bar"), "p", csv_path, plot_path)
    failed = False
    if check_insert_a and d:
        rep = insert_a_subcomplex_check(d)
        click.echo(f"# {rep.summary()}")
        failed |= not rep.acyclic
    if check_serre_step and d:
        rep = serre_step_check(d)
        click.echo(f"# {rep.summary()}")
        failed |= not rep.match
    if q_words and d:
        for p in range(pmax + 1):
            r = q_word_report(d, p)
            click.echo(f"# q-words p={p}: bar {homological(r['bar'])} vs {homological(r['q_words'])} "
                       f"({'agree' if r['agree'] else 'differ'})")
    if failed:
        raise Failure("E-STRUCTURE", f"{file}: structural check failed", EXIT_VALIDATION)


@cli.command()
@click.argument("file", type=click.Path())
@pmax_opt
@field_opt
@csv_opt
@plot_opt
@_guard
def connes(file, pmax, field, csv_path, plot_path):
    """Betti numbers of the cyclic coinvariant complex, one row per t-weight."""
    a, b, digest = _load(file, field)
    if b.field.characteristic:
        click.echo(f"warning[W-CHARACTERISTIC] coinvariants over {b.field.name} need not compute "
                   "cyclic homology", err=True)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        pieces = connes_complex(a, b, pmax) if b.m and pmax else {}
    rows = {w: homological(homology_dims(c)) for w, c in pieces.items()}
    _emit(BettiReport(rows, b.field.name, digest, "connes"), "w", csv_path, plot_path)


def _param(text: str):
    key, sep, val = text.partition("=")
    if not sep:
        raise click.BadParameter(f"expected key=value, got {text!r}")
    if "," in val:
        return key, [int(v) for v in val.split(",") if v]
    return key, int(val)


@cli.command()
@click.argument("name", type=click.Choice(sorted(EXAMPLES)))
@click.option("--param", "-p", "params", multiple=True, help="Generator parameter, e.g. m=3 or gradings=0,1.")
@click.option("--field", default=None, help="Q or a prime.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Output file (default stdout).")
@_guard
def gen(name, params, field, output):
    """Emit the category file of a bundled example (the full B)."""
    kw = dict(_param(p) for p in params)
    if field is not None:
        kw["field"] = Field.parse(field)
    try:
        _, b = generate(name, **kw)
    except (TypeError, ValueError) as e:
        raise Failure("E-PARAM", f"{name}: {e}", EXIT_IO)
    desc = EXAMPLES[name]
    shown = {**desc.params, **{k: v for k, v in kw.items() if k != "field"}}
    header = " ".join([name] + [f"{k}={v}" for k, v in shown.items()]) + "\n" + desc.notes
    text = write_category(b, header)
    if output:
        Path(output).write_text(text)
        click.echo(f"# wrote {output}: {b.summary()}", err=True)
    else:
        click.echo(text, nl=False)


def main(argv=None):
    try:
        rv = cli.main(args=argv, prog_name="curvedhh", standalone_mode=False)
    except Failure as e:
        e.show()
        sys.exit(e.exit_code)
    except click.UsageError as e:
        click.echo(f"error[E-USAGE] {e.format_message()}", err=True)
        sys.exit(EXIT_IO)
    except click.exceptions.Abort:
        sys.exit(EXIT_IO)
    sys.exit(rv if isinstance(rv, int) else EXIT_OK)


if __name__ == "__main__":
    main()
