"""
symtest command line

Exit codes: 0 ok, 1 statistical failure, 2 invalid flags, 3 size guard, 4 unwritable output.
"""

import functools
import io
import json
import logging
import math
import sys
from fractions import Fraction
from typing import Callable, Optional

import click
import pandas as pd
from rich.console import Console
from rich.table import Table

from config.config import config
from src import __version__
from src.errors import (
    ConvergenceError,
    EmbeddingError,
    InconsistencyError,
    NonHermitianError,
    NonPSDError,
    OutputPathError,
    RangeError,
    SizeGuardError,
    SymtestError,
)
from src.group_integrals import RngStream
from src.hypothesis_testing import (
    BetaMethod,
    ValidationMode,
    beta_optimal,
    cross_validate,
    dmax_analytic,
    dmax_numeric_exact,
    sample_complexity,
)
from src.protocol import build_optimal_protocol, simulate
from src.rep_core import SubgroupKind, branching_table, closed_form_beta0
from .formatting import atomic_write_text, check_writable, format_decimal, format_exact

logger = logging.getLogger(__name__)

EXIT_STATISTICAL = 1
EXIT_USAGE = 2
EXIT_SIZE = 3
EXIT_OUTPUT = 4
EXIT_INTERNAL = 5

SUBGROUP_CHOICES = [kind.value for kind in SubgroupKind]


def _fail(message: str, code: int) -> None:
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def handle_errors(command: Callable) -> Callable:
    """Map library exceptions to exit codes"""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (SizeGuardError, RangeError) as e:
            _fail(str(e), EXIT_SIZE)
        except OutputPathError as e:
            _fail(str(e), EXIT_OUTPUT)
        except (InconsistencyError, EmbeddingError, ConvergenceError, NonHermitianError, NonPSDError) as e:
            _fail(f"internal error: {e}", EXIT_INTERNAL)
        except (SymtestError, ValueError) as e:
            _fail(str(e), EXIT_USAGE)
    return wrapper


def _fraction(ctx, param, value: Optional[str]) -> Optional[Fraction]:
    if value is None:
        return None
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"{value!r} is not a rational or decimal number")


def _subgroup(ctx, param, value: str) -> SubgroupKind:
    return SubgroupKind.from_cli(value)


subgroup_option = click.option(
    "--subgroup", required=True, type=click.Choice(SUBGROUP_CHOICES, case_sensitive=False),
    callback=_subgroup, help="Symmetry to test: identity, z (diagonal) or t (time reversal)",
)


@click.group()
@click.version_option(version=__version__, prog_name="symtest")
def cli():
    """
    Optimal type-II error of unitary symmetry tests.

    Examples:

        symtest beta --subgroup identity --n 3

        symtest curve --n-max 20 --output curve.csv --svg curve.svg

        symtest validate --subgroup z --n 2 --shots 100000 --seed 7
    """


@cli.command()
@subgroup_option
@click.option("--n", "n", required=True, type=click.IntRange(min=0), help="Number of queries")
@click.option("--eps", default="0", callback=_fraction, help="Type-I tolerance in [0, 1]")
@click.option("--method", type=click.Choice(["analytic", "numeric"]), default="analytic", show_default=True)
@handle_errors
def beta(subgroup: SubgroupKind, n: int, eps: Fraction, method: str):
    """Optimal type-II error (1 - eps) e^{-Dmax}."""
    if not 0 <= eps <= 1:
        raise click.BadParameter(f"eps must lie in [0, 1], got {eps}", param_hint="--eps")
    value = beta_optimal(subgroup, n, eps, BetaMethod(method))
    click.echo(format_exact(value) if isinstance(value, Fraction) else format_decimal(value))


def curve_frame(n_max: int) -> pd.DataFrame:
    rows = []
    for n in range(1, n_max + 1):
        rows.append({
            "n": n,
            "beta_identity": format_decimal(closed_form_beta0(SubgroupKind.TRIVIAL, n)),
            "beta_z": format_decimal(closed_form_beta0(SubgroupKind.TORUS, n)),
            "beta_t": format_decimal(closed_form_beta0(SubgroupKind.ORTHOGONAL, n)),
        })
    return pd.DataFrame(rows, columns=["n", "beta_identity", "beta_z", "beta_t"])


@cli.command()
@click.option("--n-max", "n_max", required=True, type=click.IntRange(min=1), help="Largest number of queries")
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="CSV path (stdout if omitted)")
@click.option("--svg", type=click.Path(dir_okay=False), default=None, help="Also render the log-scale figure")
@handle_errors
def curve(n_max: int, output: Optional[str], svg: Optional[str]):
    """Optimal type-II error for n = 1..n-max, all three symmetries."""
    for path in (output, svg):
        if path:
            check_writable(path)
    frame = curve_frame(n_max)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    if output:
        atomic_write_text(output, buffer.getvalue())
    else:
        click.echo(buffer.getvalue(), nl=False)
    if svg:
        from .figure import render_beta_curve

        render_beta_curve(frame, svg)


@cli.command()
@subgroup_option
@click.option("--delta", required=True, callback=_fraction, help="Target type-II error in (0, 1]")
@click.option("--tables", is_flag=True, help="Cross-check the answer against branching tables")
@handle_errors
def samples(subgroup: SubgroupKind, delta: Fraction, tables: bool):
    """Smallest number of queries reaching a type-II error of delta."""
    if not 0 < delta <= 1:
        raise click.BadParameter(f"delta must lie in (0, 1], got {delta}", param_hint="--delta")
    result = sample_complexity(subgroup, delta, use_tables=tables)
    click.echo(f"n*={result.n_star}, beta={result.beta_at_n_star}")


@cli.command()
@subgroup_option
@click.option("--n", "n", required=True, type=click.IntRange(min=1), help="Number of queries")
@click.option("--shots", type=click.IntRange(min=100), default=None, help="Alternative-hypothesis shots")
@click.option("--null-shots", type=click.IntRange(min=100), default=None, help="Null-hypothesis shots")
@click.option("--seed", type=int, default=None, help="RNG seed (defaults to SYMTEST_SEED)")
@click.option("--mode", type=click.Choice(["exact", "monte_carlo"]), default="exact", show_default=True,
              help="How the Haar performance operator is integrated")
@handle_errors
def validate(subgroup: SubgroupKind, n: int, shots: Optional[int], null_shots: Optional[int],
             seed: Optional[int], mode: str):
    """Cross-check the analytic optimum and simulate the optimal protocol."""
    rng = RngStream(config.montecarlo.seed if seed is None else seed)
    mode_enum = ValidationMode(mode)
    if mode_enum is ValidationMode.MONTE_CARLO and shots is not None and shots < 10_000:
        raise click.BadParameter("Monte Carlo cross-validation needs --shots >= 10000", param_hint="--shots")

    check = cross_validate(subgroup, n, mode_enum, shots=shots, rng=rng.substream(0))
    report = simulate(build_optimal_protocol(subgroup, n), null_shots, shots, rng=rng.substream(1))

    sigma = config.montecarlo.sigma_multiplier
    simulation_pass = (
        report.type_i_worst <= 1e-9
        and abs(report.type_ii_mean - report.target_beta) <= sigma * report.type_ii_stderr
    )
    passed = check.passed and simulation_pass
    payload = {
        "subgroup": subgroup.value,
        "n": n,
        "seed": rng.seed,
        "cross_validation": json.loads(check.to_json()),
        "simulation": json.loads(report.to_json()),
        "simulation_pass": simulation_pass,
        "pass": passed,
    }
    click.echo(json.dumps(payload, indent=2))
    if not passed:
        sys.exit(EXIT_STATISTICAL)


@cli.command()
@subgroup_option
@click.option("--n", "n", required=True, type=click.IntRange(min=0), help="Number of queries")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json", show_default=True)
@handle_errors
def branching(subgroup: SubgroupKind, n: int, fmt: str):
    """Branching multiplicities n_{eta,lambda} of the n-fold tensor power."""
    table = branching_table(subgroup, n)
    if fmt == "json":
        click.echo(table.to_json())
        return

    grid = Table(title=f"{subgroup.name} branching, n={n}")
    grid.add_column("eta")
    grid.add_column("dim", justify="right")
    for comp in table.lambdas:
        grid.add_column(f"{comp.label} (d={comp.dim}, m={comp.mult})", justify="right")
    for eta in table.etas():
        grid.add_row(str(eta), str(eta.dim), *[str(table.multiplicity(eta, comp.label)) for comp in table.lambdas])
    Console(width=200).print(grid)


@cli.command()
@subgroup_option
@click.option("--n", "n", required=True, type=click.IntRange(min=0), help="Number of queries")
@click.option("--method", type=click.Choice(["analytic", "numeric", "both"]), default="analytic", show_default=True)
@handle_errors
def dmax(subgroup: SubgroupKind, n: int, method: str):
    """e^{Dmax(rho_mu0 || rho_mu)}, exact and/or from dense operators."""
    if method in ("analytic", "both"):
        click.echo(f"exact: {format_exact(dmax_analytic(subgroup, n))}")
    if method in ("numeric", "both"):
        click.echo(f"numeric: {format_decimal(math.exp(dmax_numeric_exact(subgroup, n)))}")


@cli.command()
@subgroup_option
@click.option("--n", "n", required=True, type=click.IntRange(min=1), help="Number of queries")
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="JSON path (stdout if omitted)")
@handle_errors
def protocol(subgroup: SubgroupKind, n: int, output: Optional[str]):
    """Export the optimal parallel protocol (complex entries as [re, im])."""
    if output:
        check_writable(output)
    text = build_optimal_protocol(subgroup, n).to_json()
    if output:
        atomic_write_text(output, text + "\n")
    else:
        click.echo(text)
