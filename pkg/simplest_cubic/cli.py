"""
Command-line interface for simplest-cubic

Provides commands for:
- Classifying fields and printing their integral bases
- Enumerating parallelepiped candidates and region maps
- Listing and verifying indecomposables, minimal traces and norms
- The Pythagoras number and universal form bounds
- Reproducing the (p, a mod p^2, k, l) table and the a=41 list
"""

import functools
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import click
from pydantic import ValidationError

from .apps import pythagoras, uqf_bounds
from .classify import UnsupportedFieldError, classify, in_p3_family, require_supported, table1
from .codifferent import codifferent_for
from .config import Command, OutputFormat, RunConfig, Settings, parse_a_range
from .field_core import FieldContext, NotIntegralError, NotTotallyPositiveError, SimplestCubicError, make_context
from .indecomposables import (
    first_par_indec_table,
    first_par_table_expected,
    generate_theorem_list,
    norm_extremes,
    verify_a41,
    verify_classification,
)
from .lattice import (
    first_parallelepiped_points,
    second_parallelepiped_points_bruteforce,
    second_parallelepiped_points_p3,
)
from .output import emit, render, render_jsonl
from .regions import render_region_map

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
CERTIFY_DEFAULT_MAX_A = 60
FIRST_PAR_PRIMES = (7, 13, 19, 31)

logger = logging.getLogger(__name__)


class VerificationMismatch(SimplestCubicError):
    """A verification report came back with counterexamples"""

    def __init__(self, message: str, counterexamples: Any) -> None:
        super().__init__(message)
        self.counterexamples = counterexamples


def _setup_logging(verbose: bool, quiet: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger("simplest_cubic").setLevel(level)


def _handle_errors(action: str) -> Callable[[Callable[..., None]], Callable[..., None]]:
    """Map library errors to exit codes: 1 for bad input, 2 for mismatches"""

    def decorator(func: Callable[..., None]) -> Callable[..., None]:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> None:
            try:
                func(*args, **kwargs)
            except VerificationMismatch as e:
                click.echo(f"❌ Verification failed while {action}: {e}", err=True)
                click.echo(json.dumps(e.counterexamples, indent=2, sort_keys=True, default=str), err=True)
                sys.exit(2)
            except UnsupportedFieldError as e:
                click.echo(f"❌ Error {action}: {e}", err=True)
                if e.classification is not None:
                    click.echo(json.dumps(e.classification.to_dict(), sort_keys=True), err=True)
                sys.exit(1)
            except (SimplestCubicError, ValidationError, ValueError) as e:
                click.echo(f"❌ Error {action}: {e}", err=True)
                sys.exit(1)

        return wrapper

    return decorator


def _config(command: Command, ctx: click.Context, **values: Any) -> RunConfig:
    settings: Settings = ctx.obj
    a = values.pop("a", None)
    threads = values.pop("threads", None)
    fmt = values.pop("fmt", None)
    return RunConfig(
        command=command,
        a_range=parse_a_range(a) if a is not None else None,
        threads=threads or settings.threads,
        format=fmt or settings.format,
        precision_bits=settings.precision_bits,
        **values,
    )


def _context(config: RunConfig, a: int) -> FieldContext:
    return make_context(a, config.precision)


def _family_values(config: RunConfig) -> List[int]:
    """a values of the run that lie in the B3(1,1) family

    A single a outside the family is an error; ranges skip such a.
    """
    values = list(config.a_values())
    if not config.is_range:
        if not in_p3_family(values[0]):
            _reject_non_family(values[0])
        return values
    kept = [a for a in values if in_p3_family(a)]
    logger.info(f"{len(kept)} of {len(values)} values of a lie in the family")
    return kept


def _reject_non_family(a: int) -> None:
    result = classify(a)
    raise UnsupportedFieldError(f"a={a} is not in the family with integral basis B3(1,1)", result)


def _certify(config: RunConfig, a: int) -> bool:
    return config.certify if config.certify is not None else a <= CERTIFY_DEFAULT_MAX_A


def _progress() -> bool:
    return sys.stderr.isatty()


def _emit_records(config: RunConfig, records: List[Dict[str, Any]], columns: Optional[List[str]] = None) -> None:
    payload: Any = records if config.is_range else records[0]
    emit(render(payload, config.format, columns), config.out)


a_option = click.option("--a", "a", required=True, help="Field parameter: N or LO..HI")
format_option = click.option(
    "--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default=None, help="Output format"
)
out_option = click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Write output to a file")
threads_option = click.option("--threads", type=int, default=None, help="Worker processes (default: SC_THREADS or 1)")
certify_option = click.option(
    "--certify/--no-certify", default=None, help=f"Certify minimal traces (default: on for a <= {CERTIFY_DEFAULT_MAX_A})"
)


@click.group()
@click.version_option(package_name="simplest-cubic")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr")
@click.option("--quiet", "-q", is_flag=True, help="Only warnings and errors on stderr")
@click.option("--config-dir", default=None, help="Custom configuration directory")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, quiet: bool, config_dir: Optional[str]) -> None:
    """simplest-cubic - indecomposables in non-monogenic simplest cubic fields"""
    _setup_logging(verbose, quiet)
    ctx.obj = Settings(Path(config_dir) if config_dir else None)


@cli.command(name="classify")
@a_option
@format_option
@out_option
@click.pass_context
@_handle_errors("classifying")
def classify_cmd(ctx: click.Context, a: str, fmt: Optional[str], out: Optional[Path]) -> None:
    """Conductor, module index, monogenity and integral basis of K_a"""
    config = _config(Command.CLASSIFY, ctx, a=a, fmt=fmt, out=out)
    records = [classify(value).to_dict() for value in config.a_values()]
    for record in records:
        record["basis"] = record["basis"]["label"]
    _emit_records(config, records)


@cli.command()
@a_option
@format_option
@out_option
@click.pass_context
@_handle_errors("computing the integral basis")
def basis(ctx: click.Context, a: str, fmt: Optional[str], out: Optional[Path]) -> None:
    """Integral basis descriptor with its g3 in the power basis"""
    config = _config(Command.BASIS, ctx, a=a, fmt=fmt, out=out)
    records = []
    for value in config.a_values():
        result = classify(value)
        record: Dict[str, Any] = {"a": value, "module_index": result.module_index, **result.basis.to_dict()}
        record["g3"] = (
            [str(c) for c in result.basis.g3(value).coords] if result.basis.supported else None
        )
        records.append(record)
    _emit_records(config, records)


@cli.command()
@click.option("--a", "a", required=True, help="Field parameter N")
@click.option("--map", "show_map", is_flag=True, help="Print the region map for s = 0, 1, 2 instead")
@format_option
@out_option
@click.pass_context
@_handle_errors("enumerating candidates")
def candidates(ctx: click.Context, a: str, show_map: bool, fmt: Optional[str], out: Optional[Path]) -> None:
    """Lattice points of both parallelepipeds, one JSON object per line"""
    config = _config(Command.CANDIDATES, ctx, a=a, fmt=fmt, out=out)
    if config.is_range:
        raise ValueError("candidates takes a single a")
    value = config.a_range[0]  # type: ignore[index]
    if show_map:
        if not in_p3_family(value):
            _reject_non_family(value)
        blocks = [f"s = {s}\n{render_region_map(value, s)}\n" for s in range(3)]
        emit("\n".join(blocks), config.out)
        return

    basis = require_supported(value).basis
    field = _context(config, value)
    points = first_parallelepiped_points(field, basis)
    if in_p3_family(value):
        points += second_parallelepiped_points_p3(field)
    else:
        points += second_parallelepiped_points_bruteforce(field, basis)
    rows = [cand.to_dict() for cand in points]
    if config.format == OutputFormat.JSON:
        emit(render_jsonl(rows), config.out)
    else:
        emit(render(rows, config.format), config.out)


@cli.command()
@a_option
@format_option
@out_option
@click.pass_context
@_handle_errors("listing indecomposables")
def indecomposables(ctx: click.Context, a: str, fmt: Optional[str], out: Optional[Path]) -> None:
    """The closed-form list of indecomposables up to multiplication by units"""
    config = _config(Command.INDECOMPOSABLES, ctx, a=a, fmt=fmt, out=out)
    rows = []
    for value in _family_values(config):
        for record in generate_theorem_list(_context(config, value)):
            rows.append({"a": value, **record.to_dict()})
    emit(render(rows, config.format), config.out)


@cli.command()
@a_option
@certify_option
@click.option("--max-a-oracle", type=int, default=None, help="Largest a for the brute-force oracle")
@click.option("--allow-large", is_flag=True, help="Run the oracle above --max-a-oracle")
@threads_option
@format_option
@out_option
@click.pass_context
@_handle_errors("verifying")
def verify(
    ctx: click.Context,
    a: str,
    certify: Optional[bool],
    max_a_oracle: Optional[int],
    allow_large: bool,
    threads: Optional[int],
    fmt: Optional[str],
    out: Optional[Path],
) -> None:
    """Check the closed-form list against the brute-force oracle"""
    settings: Settings = ctx.obj
    config = _config(
        Command.VERIFY,
        ctx,
        a=a,
        fmt=fmt,
        out=out,
        threads=threads,
        certify=certify,
        max_a_oracle=max_a_oracle or settings.max_a_oracle,
        allow_large=allow_large,
    )
    reports = []
    for value in _family_values(config):
        report = verify_classification(
            _context(config, value),
            max_a_oracle=config.max_a_oracle,
            allow_large=config.allow_large,
            certify=_certify(config, value),
            threads=config.threads,
            progress=_progress(),
        )
        reports.append(report)
    rows = [report.to_dict() for report in reports]
    emit(render(rows if config.is_range else rows[0], config.format), config.out)

    failed = [report.to_dict() for report in reports if not report.ok]
    if failed:
        raise VerificationMismatch(f"{len(failed)} field(s) disagree with the closed-form list", failed)
    for report in reports:
        click.echo(f"✅ a={report.a}: {report.theorem_count} indecomposables verified", err=True)


@cli.command()
@click.option("--a", "a", required=True, help="Field parameter N")
@click.option("--coords", nargs=3, type=int, required=True, help="Coordinates over the integral basis")
@certify_option
@format_option
@out_option
@click.pass_context
@_handle_errors("computing the minimal trace")
def mintrace(
    ctx: click.Context,
    a: str,
    coords: Tuple[int, int, int],
    certify: Optional[bool],
    fmt: Optional[str],
    out: Optional[Path],
) -> None:
    """min Tr(alpha delta) over totally positive delta in the codifferent"""
    config = _config(Command.MINTRACE, ctx, a=a, fmt=fmt, out=out, certify=certify)
    if config.is_range:
        raise ValueError("mintrace takes a single a")
    value = config.a_range[0]  # type: ignore[index]
    basis = require_supported(value).basis
    alpha = basis.from_basis_coords(value, coords)
    try:
        result = codifferent_for(value, config.precision).minimal_trace(alpha, certify=_certify(config, value))
    except (NotIntegralError, NotTotallyPositiveError) as e:
        raise ValueError(f"{basis.label} coordinates {list(coords)}: {e}") from e
    emit(render({"a": value, "basis": basis.label, "coords": list(coords), **result.to_dict()}, config.format), config.out)


@cli.command()
@a_option
@format_option
@out_option
@click.pass_context
@_handle_errors("computing norm extremes")
def norms(ctx: click.Context, a: str, fmt: Optional[str], out: Optional[Path]) -> None:
    """Smallest and largest norms of indecomposables against the closed formulas"""
    config = _config(Command.NORMS, ctx, a=a, fmt=fmt, out=out)
    results = [norm_extremes(_context(config, value)) for value in _family_values(config)]
    emit(render([r.to_dict() for r in results] if config.is_range else results[0].to_dict(), config.format), config.out)
    failed = [r.to_dict() for r in results if not r.matches]
    if failed:
        raise VerificationMismatch("norm extremes differ from the closed formulas", failed)


@cli.command(name="pythagoras")
@click.option("--a", "a", required=True, help="Field parameter N")
@format_option
@out_option
@click.pass_context
@_handle_errors("computing the Pythagoras number")
def pythagoras_cmd(ctx: click.Context, a: str, fmt: Optional[str], out: Optional[Path]) -> None:
    """Least number of squares summing to gamma"""
    config = _config(Command.PYTHAGORAS, ctx, a=a, fmt=fmt, out=out)
    reports = [pythagoras(_context(config, value)) for value in _family_values(config)]
    emit(render([r.to_dict() for r in reports] if config.is_range else reports[0].to_dict(), config.format), config.out)
    failed = [r.to_dict() for r in reports if r.pythagoras_number is None or not r.structure_ok]
    if failed:
        raise VerificationMismatch("gamma does not have the expected six-square structure", failed)


@cli.command()
@a_option
@format_option
@out_option
@click.pass_context
@_handle_errors("computing universal form bounds")
def uqf(ctx: click.Context, a: str, fmt: Optional[str], out: Optional[Path]) -> None:
    """Rank bounds for universal quadratic forms"""
    config = _config(Command.UQF, ctx, a=a, fmt=fmt, out=out)
    rows = [uqf_bounds(_context(config, value)).to_dict() for value in _family_values(config)]
    emit(render(rows if config.is_range else rows[0], config.format), config.out)


@cli.command(name="table1")
@click.option("--pmax", type=int, required=True, help="Largest prime p")
@format_option
@out_option
@click.pass_context
@_handle_errors("building the table")
def table1_cmd(ctx: click.Context, pmax: int, fmt: Optional[str], out: Optional[Path]) -> None:
    """(p, a mod p^2, k, l) for every prime 7 <= p <= pmax with p = 1 mod 6"""
    config = _config(Command.TABLE1, ctx, fmt=fmt, out=out, pmax=pmax)
    emit(render(table1(pmax), config.format, ["p", "a_mod_p2", "k", "l"]), config.out)


@cli.command(name="table-firstpar")
@click.option("--p", "p", type=int, default=None, help="A single prime (default: 7, 13, 19, 31)")
@threads_option
@format_option
@out_option
@click.pass_context
@_handle_errors("building the first-parallelepiped table")
def table_firstpar(
    ctx: click.Context, p: Optional[int], threads: Optional[int], fmt: Optional[str], out: Optional[Path]
) -> None:
    """Indecomposables in the first parallelepiped for each class of a mod p^2"""
    config = _config(Command.TABLE_FIRSTPAR, ctx, fmt=fmt, out=out, p=p, threads=threads)
    primes: Sequence[int] = (config.p,) if config.p is not None else FIRST_PAR_PRIMES
    rows = []
    for prime in primes:
        rows.extend(first_par_indec_table(prime, threads=config.threads))
    emit(render(rows, config.format, ["p", "a_mod_p2", "a", "k", "l", "indecomposables"]), config.out)

    expected = first_par_table_expected()
    failed = []
    for row in rows:
        if row.get("invalid_witnesses"):
            failed.append({"p": row["p"], "a_mod_p2": row["a_mod_p2"], "invalid_witnesses": row["invalid_witnesses"]})
            continue
        key = (row["p"], row["a_mod_p2"])
        if key not in expected:
            continue
        found = sorted(tuple(item["basis_coords"]) for item in row["indecomposables"])
        if found != sorted(expected[key]):
            failed.append({"p": key[0], "a_mod_p2": key[1], "found": found, "expected": sorted(expected[key])})
    if failed:
        raise VerificationMismatch("first-parallelepiped indecomposables differ from the table", failed)


@cli.command()
@threads_option
@format_option
@out_option
@click.pass_context
@_handle_errors("verifying a=41")
def a41(ctx: click.Context, threads: Optional[int], fmt: Optional[str], out: Optional[Path]) -> None:
    """Enumerate and certify the indecomposables of K_41 over B7(4,3)"""
    config = _config(Command.A41, ctx, fmt=fmt, out=out, threads=threads)
    report = verify_a41(_context(config, 41), threads=config.threads, progress=_progress())
    emit(render(report.to_dict(), config.format), config.out)
    if not report.ok:
        raise VerificationMismatch("the a=41 list differs from the enumeration", report.mismatches)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code"""
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name="simplest-cubic", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return 1
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
