"""This module contains the command-line entry point of the delivery
route planner."""
import logging
import sys
from typing import List, Optional

import click

from config import (
    ASTAR_THRESHOLD,
    DEFAULT_BENCH_NS,
    DEFAULT_BENCH_TRIALS,
    DEFAULT_HEURISTIC,
    DEFAULT_QUALITY_N,
    DEFAULT_SEED,
    EXACT_CAP,
    GRID_SPACING_M,
    HEURISTICS,
    LOG_FORMAT,
)
from helpers.benchmark import run_quality_suite, run_timing_suite
from helpers.city_graph import load_city_graph
from helpers.controller import run_session
from helpers.errors import RoutePlannerError
from helpers.grid_city import generate_grid_city, grid_city_graph
from helpers.session_storage import SessionSettings


def parse_sizes(
    context: click.Context, parameter: click.Parameter, value: str
) -> List[int]:
    """Turns a comma-separated option value into a list of sizes."""
    try:
        sizes = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter("expected integers such as 5,10,15")
    if not sizes or min(sizes) < 2:
        raise click.BadParameter("every size must be at least 2")
    return sizes


@click.group()
@click.option(
    "--log-level",
    default="WARNING",
    show_default=True,
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], False),
)
def cli(log_level: str) -> None:
    """Plan short closed delivery tours over a city road graph."""
    logging.basicConfig(level=log_level.upper(), format=LOG_FORMAT)


@cli.command()
@click.argument("vertices", type=click.Path(dir_okay=False))
@click.argument("edges", type=click.Path(dir_okay=False))
@click.option("--directed", is_flag=True, help="Edge rows are one-way.")
@click.option(
    "--heuristic",
    type=click.Choice(HEURISTICS),
    default=DEFAULT_HEURISTIC,
    show_default=True,
)
@click.option("--astar-threshold", default=ASTAR_THRESHOLD, show_default=True)
@click.option("--exact-cap", default=EXACT_CAP, show_default=True)
@click.option(
    "--extreme-mode", is_flag=True, help="Offer the exact option always."
)
@click.option("--verbose", is_flag=True, help="Print street-level routes.")
@click.option("--url", help="Plan this URL once instead of prompting.")
@click.option("--algo", type=click.Choice(["1", "2", "3", "4", "5"]))
def plan(
    vertices: str,
    edges: str,
    directed: bool,
    heuristic: str,
    astar_threshold: int,
    exact_cap: int,
    extreme_mode: bool,
    verbose: bool,
    url: Optional[str],
    algo: Optional[str],
) -> None:
    """Start a route planning session on the VERTICES and EDGES files."""
    if (url is None) != (algo is None):
        raise click.UsageError("--url and --algo must be given together")
    settings = SessionSettings(
        directed=directed,
        heuristic=heuristic,
        astar_threshold=astar_threshold,
        exact_cap=exact_cap,
        extreme=extreme_mode,
        verbose=verbose,
    )
    sys.exit(run_session(vertices, edges, settings, url=url, choice=algo))


@cli.command("generate-grid")
@click.argument("vertices", type=click.Path(dir_okay=False))
@click.argument("edges", type=click.Path(dir_okay=False))
@click.option("--rows", required=True, type=int)
@click.option("--cols", required=True, type=int)
@click.option("--spacing", default=GRID_SPACING_M, show_default=True)
@click.option("--perturbation", default=0.0, show_default=True)
@click.option("--seed", default=DEFAULT_SEED, show_default=True)
def generate_grid(
    vertices: str,
    edges: str,
    rows: int,
    cols: int,
    spacing: float,
    perturbation: float,
    seed: int,
) -> None:
    """Write a synthetic grid city to the VERTICES and EDGES files."""
    try:
        generate_grid_city(
            rows, cols, vertices, edges, spacing, perturbation, seed
        )
    except (RoutePlannerError, ValueError) as error:
        raise click.ClickException(str(error))
    click.echo(f"Wrote {vertices} and {edges}")


@cli.command()
@click.option("--vertices", type=click.Path(exists=True, dir_okay=False))
@click.option("--edges", type=click.Path(exists=True, dir_okay=False))
@click.option("--directed", is_flag=True)
@click.option("--rows", default=100, show_default=True)
@click.option("--cols", default=100, show_default=True)
@click.option("--perturbation", default=0.2, show_default=True)
@click.option(
    "--ns",
    default=",".join(map(str, DEFAULT_BENCH_NS)),
    show_default=True,
    callback=parse_sizes,
)
@click.option("--trials", default=DEFAULT_BENCH_TRIALS, show_default=True)
@click.option("--seed", default=DEFAULT_SEED, show_default=True)
@click.option(
    "--quality-n",
    default=DEFAULT_QUALITY_N,
    show_default=True,
    help="Terminal count of the quality suite; 0 skips it.",
)
@click.option("--quality-trials", default=50, show_default=True)
@click.option("--compare-closures", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False))
def bench(
    vertices: Optional[str],
    edges: Optional[str],
    directed: bool,
    rows: int,
    cols: int,
    perturbation: float,
    ns: List[int],
    trials: int,
    seed: int,
    quality_n: int,
    quality_trials: int,
    compare_closures: bool,
    out: Optional[str],
) -> None:
    """Time the solvers and compare the heuristics with the optimum."""
    try:
        if vertices and edges:
            graph = load_city_graph(vertices, edges, directed)
        else:
            graph = grid_city_graph(
                rows, cols, GRID_SPACING_M, perturbation, seed
            )
        report = run_timing_suite(
            graph, ns, trials, seed, compare_closure_methods=compare_closures
        )
        if quality_n:
            report.extend(
                run_quality_suite(graph, quality_n, quality_trials, seed)
            )
    except RoutePlannerError as error:
        raise click.ClickException(str(error))

    click.echo(f"Environment: {report.environment}, seed {seed}")
    if out:
        report.write_csv(out)
        click.echo(f"Wrote {len(report.rows)} rows to {out}")
    else:
        click.echo(report.to_frame().to_csv(index=False), nl=False)
    if report.ratios:
        click.echo(report.ratio_summary().to_string())


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
