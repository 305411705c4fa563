"""CLI interface for exactrc."""

import csv
import io
import json
import math
import sys
import time
from collections.abc import Callable
from typing import Any

import click
from rich.console import Console
from rich.table import Table

from .. import __version__
from ..asymptotics import TieRule
from ..exponent import Regime
from ..logging import log_computation, log_error, log_session_end
from ..runner import RunConfig, analyze, compare_rows, oracle_rows, predict_rows

console = Console()
error_console = Console(file=sys.stderr, style="bold red")


def _parse_n_list(value: str) -> list[int]:
    try:
        return [int(part) for part in value.replace(",", " ").split()]
    except ValueError as e:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}") from e


def _format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _json_value(value: Any) -> Any:
    # JSON has no inf or nan
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _emit(rows: list[dict[str, Any]], fmt: str, title: str) -> None:
    """Render rows as a rich table, CSV or JSON on stdout."""
    if fmt == "json":
        clean = [{k: _json_value(v) for k, v in row.items()} for row in rows]
        click.echo(json.dumps(clean, indent=2, allow_nan=False))
        return
    columns: list[str] = []
    for row in rows:
        columns.extend(k for k in row if k not in columns)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in columns})
        click.echo(buffer.getvalue(), nl=False)
        return
    table = Table(title=title)
    for column in columns:
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(*(_format_cell(row.get(k)) for k in columns))
    console.print(table)


def _emit_report(report: dict[str, Any], fmt: str) -> None:
    if fmt == "table":
        table = Table(title="Channel analysis", show_header=False)
        table.add_column("quantity", style="bold")
        table.add_column("value")
        for key, value in report.items():
            table.add_row(key, _format_cell(value))
        console.print(table)
    else:
        _emit([report], fmt, "Channel analysis")


def _run(command: str, action: Callable[[], Any], params: dict[str, Any]) -> Any:
    """Run a command body; print errors and exit 1 on failure."""
    start = time.perf_counter()
    try:
        result = action()
    except Exception as e:
        log_error(f"cli.{command}", str(e), params)
        error_console.print(f"Error: {e}")
        sys.exit(1)
    else:
        log_computation(
            f"cli.{command}", params, "ok", duration_seconds=time.perf_counter() - start
        )
        return result
    finally:
        log_session_end()


def _config(**kwargs) -> RunConfig:
    return RunConfig(**{k: v for k, v in kwargs.items() if v is not None})


def common_options(func):
    """Options shared by every command."""
    options = [
        click.option(
            "--channel",
            "-c",
            required=True,
            type=click.Path(exists=True, dir_okay=False),
            help="Channel JSON file ({\"input\": [...], \"matrix\": [[...]]})",
        ),
        click.option(
            "--rate",
            "-r",
            required=True,
            help="Rate in nats, or 'I*f', 'crit*f', 'mid'",
        ),
        click.option(
            "--tie",
            type=click.Choice([t.value for t in TieRule]),
            default=TieRule.UNIFORM_RANDOM.value,
            show_default=True,
            help="Tie rule: uniform random breaking or ties counted as errors",
        ),
        click.option(
            "--force-regime",
            type=click.Choice([r.value for r in Regime]),
            default=None,
            help="Override the detected regime",
        ),
        click.option("--crit-tol", type=float, default=None, help="Tolerance for R = R_crit"),
        click.option(
            "--format",
            "fmt",
            type=click.Choice(["table", "csv", "json"]),
            default="table",
            show_default=True,
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def n_option(func):
    return click.option(
        "--n", "n_list", required=True, help="Comma-separated block lengths, e.g. '50,100,200'"
    )(func)


def oracle_options(func):
    options = [
        click.option("--samples", type=int, default=100_000, show_default=True),
        click.option("--seed", type=int, default=0, show_default=True),
        click.option("--grid", type=float, default=None, help="Grid span for nonlattice channels"),
        click.option("--threads", type=int, default=None, help="Worker threads (EXACTRC_THREADS)"),
        click.option(
            "--method",
            type=click.Choice(["auto", "exact", "mc", "brute"]),
            default="auto",
            show_default=True,
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group()
@click.version_option(version=__version__)
def cli():
    """exactrc - exact asymptotics of the random-coding error probability.

    Analyze a discrete memoryless channel, predict P_RC(n), compute ground truth and
    compare the two.
    """


@cli.command(name="analyze")
@common_options
def analyze_command(channel, rate, tie, force_regime, crit_tol, fmt):
    """Exponent, tilted moments and structural classification at one rate.

    Example:
        exactrc analyze --channel channels/bsc_0.11.json --rate 'I*0.3'
    """
    params = {"channel": channel, "rate": rate}
    report = _run(
        "analyze",
        lambda: analyze(
            _config(
                channel=channel,
                rate=rate,
                tie=tie,
                force_regime=force_regime,
                crit_tol=crit_tol,
            )
        ),
        params,
    )
    _emit_report(report, fmt)


@cli.command(name="predict")
@common_options
@n_option
@click.option("--verbose", "-v", is_flag=True, help="Show both singular above-critical prefactors")
def predict_command(channel, rate, tie, force_regime, crit_tol, fmt, n_list, verbose):
    """Predicted P_RC(n) for each block length.

    Example:
        exactrc predict -c channels/bsc_0.11.json -r mid --n 64,128,256
    """
    params = {"channel": channel, "rate": rate, "n": n_list, "tie": tie}
    rows = _run(
        "predict",
        lambda: predict_rows(
            _config(
                channel=channel,
                rate=rate,
                n=_parse_n_list(n_list),
                tie=tie,
                force_regime=force_regime,
                crit_tol=crit_tol,
                verbose=verbose,
            )
        ),
        params,
    )
    _emit(rows, fmt, "Predictions")


@cli.command(name="oracle")
@common_options
@n_option
@oracle_options
def oracle_command(
    channel, rate, tie, force_regime, crit_tol, fmt, n_list, samples, seed, grid, threads, method
):
    """Ground-truth P_RC(n) with M_n = ceil(e^{nR}) codewords.

    Example:
        exactrc oracle -c channels/bec_0.4.json -r 'crit*0.5' --n 50,100 --tie error
    """
    params = {"channel": channel, "rate": rate, "n": n_list, "tie": tie, "method": method}
    rows = _run(
        "oracle",
        lambda: oracle_rows(
            _config(
                channel=channel,
                rate=rate,
                n=_parse_n_list(n_list),
                tie=tie,
                force_regime=force_regime,
                crit_tol=crit_tol,
                samples=samples,
                seed=seed,
                grid=grid,
                threads=threads,
                method=method,
            )
        ),
        params,
    )
    _emit(rows, fmt, "Oracle")


@cli.command(name="compare")
@common_options
@n_option
@oracle_options
@click.option("--verbose", "-v", is_flag=True, help="Show both singular above-critical ratios")
def compare_command(
    channel,
    rate,
    tie,
    force_regime,
    crit_tol,
    fmt,
    n_list,
    samples,
    seed,
    grid,
    threads,
    method,
    verbose,
):
    """Oracle against prediction at the effective rate R_n = log(M_n)/n.

    Example:
        exactrc compare -c channels/bsc_0.11.json -r 'crit*0.6' --n 50,100,200
    """
    params = {"channel": channel, "rate": rate, "n": n_list, "tie": tie, "method": method}
    rows = _run(
        "compare",
        lambda: compare_rows(
            _config(
                channel=channel,
                rate=rate,
                n=_parse_n_list(n_list),
                tie=tie,
                force_regime=force_regime,
                crit_tol=crit_tol,
                samples=samples,
                seed=seed,
                grid=grid,
                threads=threads,
                method=method,
                verbose=verbose,
            )
        ),
        params,
    )
    _emit(rows, fmt, "Comparison")


def main():
    """Entry point for the CLI."""
    cli()


if __name__ == "__main__":
    main()
