"""This module contains the benchmark suites.

The timing suite measures the subgraph construction and every solver on
growing numbers of random terminals, and records the size of the exact
solver's table. The quality suite compares the heuristics' tour lengths
with the exact optimum on shared subgraphs."""

import logging
import platform
import time
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config import (
    ASTAR_THRESHOLD,
    BENCH_CSV_COLUMNS,
    DEFAULT_BENCH_TRIALS,
    DEFAULT_HEURISTIC,
    DEFAULT_SEED,
    EXACT_CAP,
)
from helpers.city_graph import CityGraph
from helpers.errors import DisconnectedError, TooLargeError
from helpers.path_finder import ClosureMatrix, TerminalSet, build_closure
from helpers.tour_solvers import (
    FAST,
    NORMAL,
    Tour,
    solve_best_of_both,
    solve_exact,
    solve_natural,
    solve_nearest_neighbor,
    warm_up_exact_solver,
)

logger = logging.getLogger(__name__)

SAMPLE_ATTEMPTS = 20

HEURISTIC_SOLVERS: Dict[str, Callable[[TerminalSet, ClosureMatrix], Tour]] = {
    "natural_fast": lambda terminals, closure: solve_natural(terminals, FAST),
    "natural_normal": lambda terminals, closure: solve_natural(
        terminals, NORMAL, closure
    ),
    "nearest_neighbor": lambda terminals, closure: solve_nearest_neighbor(
        closure
    ),
    "best_of_both": solve_best_of_both,
}
COMPARED_HEURISTICS = ["natural_normal", "nearest_neighbor", "best_of_both"]


def describe_environment() -> str:
    processor = platform.processor() or platform.machine()
    return f"{processor} / Python {platform.python_version()}"


@dataclass(frozen=True)
class BenchRow:
    algorithm: str
    n: int
    seconds: float
    meters: Optional[float] = None
    dp_states: Optional[int] = None
    seed: int = DEFAULT_SEED


@dataclass
class BenchReport:
    """This class stores benchmark rows and, for the quality suite, the
    heuristic-to-exact length ratios of every trial."""

    rows: List[BenchRow]
    seed: int = DEFAULT_SEED
    environment: str = field(default_factory=describe_environment)
    ratios: Dict[str, List[float]] = field(default_factory=dict)

    def extend(self, other: "BenchReport") -> None:
        self.rows.extend(other.rows)
        for name, values in other.ratios.items():
            self.ratios.setdefault(name, []).extend(values)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(
            [asdict(row) for row in self.rows], columns=BENCH_CSV_COLUMNS
        )
        frame["dp_states"] = frame["dp_states"].astype("Int64")
        return frame

    def write_csv(self, path: str) -> None:
        self.to_frame().to_csv(path, index=False)

    @classmethod
    def read_csv(cls, path: str) -> "BenchReport":
        """Reads back a report written by `write_csv`. Environment and
        ratios are not part of the file."""
        frame = pd.read_csv(
            path,
            dtype={"algorithm": str, "dp_states": "Int64"},
            float_precision="round_trip",
        )
        rows = [
            BenchRow(
                algorithm=record.algorithm,
                n=int(record.n),
                seconds=float(record.seconds),
                meters=(
                    None if pd.isna(record.meters) else float(record.meters)
                ),
                dp_states=(
                    None
                    if pd.isna(record.dp_states)
                    else int(record.dp_states)
                ),
                seed=int(record.seed),
            )
            for record in frame.itertuples(index=False)
        ]
        seed = rows[0].seed if rows else DEFAULT_SEED
        return cls(rows, seed, environment="")

    def ratio_summary(self) -> pd.DataFrame:
        """Returns min, median and max ratio per heuristic."""
        frame = pd.DataFrame(
            [
                {"algorithm": name, "ratio": ratio}
                for name, values in self.ratios.items()
                for ratio in values
            ],
            columns=["algorithm", "ratio"],
        )
        grouped = frame.groupby("algorithm")["ratio"]
        return grouped.agg(["min", "median", "max"])


def timed(function: Callable, *args, **kwargs) -> Tuple[object, float]:
    start = time.perf_counter()
    result = function(*args, **kwargs)
    return result, time.perf_counter() - start


def sample_terminals(
    graph: CityGraph, n: int, rng: np.random.Generator
) -> TerminalSet:
    picks = rng.choice(graph.vertex_count, size=n, replace=False)
    return TerminalSet.from_vertices(
        graph, [graph.vertex_ids[int(k)] for k in picks]
    )


def sample_connected(
    graph: CityGraph,
    n: int,
    seed: int,
    astar_threshold: int = ASTAR_THRESHOLD,
    heuristic: str = DEFAULT_HEURISTIC,
) -> Tuple[TerminalSet, ClosureMatrix, float]:
    """Draws terminal sets until one has every pair connected.

    Returns:
        Tuple[TerminalSet, ClosureMatrix, float]: The terminals, their
            subgraph and the seconds spent building it.
    """
    rng = np.random.default_rng(seed)
    for _ in range(SAMPLE_ATTEMPTS):
        terminals = sample_terminals(graph, n, rng)
        closure, seconds = timed(
            build_closure, graph, terminals, astar_threshold, heuristic
        )
        if closure.is_connected:
            return terminals, closure, seconds
        logger.warning("Sampled terminals are disconnected, drawing again")
    raise DisconnectedError(
        f"No connected set of {n} terminals in {SAMPLE_ATTEMPTS} draws"
    )


def _median(values: Sequence[Optional[float]]) -> Optional[float]:
    present = [value for value in values if value is not None]
    if not present:
        return None
    return float(np.median(present))


def run_timing_suite(
    graph: CityGraph,
    ns: Sequence[int],
    trials: int = DEFAULT_BENCH_TRIALS,
    seed: int = DEFAULT_SEED,
    exact_cap: Optional[int] = EXACT_CAP,
    astar_threshold: int = ASTAR_THRESHOLD,
    heuristic: str = DEFAULT_HEURISTIC,
    compare_closure_methods: bool = False,
) -> BenchReport:
    """
    Times the subgraph construction and every solver for each n.

    Each (algorithm, n) row holds the median over `trials` random
    terminal sets; trial t draws its terminals with seed `seed + t`.
    Seconds are rounded to microseconds. With `compare_closure_methods`
    the subgraph is also built with A* forced and with Dijkstra forced.
    """
    if exact_cap is not None and max(ns) > exact_cap:
        raise TooLargeError(max(ns), exact_cap)
    warm_up_exact_solver()

    rows = []
    for n in ns:
        seconds: Dict[str, List[float]] = defaultdict(list)
        meters: Dict[str, List[Optional[float]]] = defaultdict(list)
        dp_states = None
        for trial in range(trials):
            terminals, closure, build_seconds = sample_connected(
                graph, n, seed + trial, astar_threshold, heuristic
            )
            seconds["build_closure"].append(build_seconds)
            meters["build_closure"].append(None)
            if compare_closure_methods:
                for name, threshold in (("astar", n), ("dijkstra", 0)):
                    _, elapsed = timed(
                        build_closure, graph, terminals, threshold, heuristic
                    )
                    seconds[f"build_closure_{name}"].append(elapsed)
                    meters[f"build_closure_{name}"].append(None)

            for name, solver in HEURISTIC_SOLVERS.items():
                tour, elapsed = timed(solver, terminals, closure)
                seconds[name].append(elapsed)
                meters[name].append(tour.total_m)
            tour, elapsed = timed(solve_exact, closure, exact_cap)
            seconds["exact"].append(elapsed)
            meters["exact"].append(tour.total_m)
            dp_states = tour.dp_states

        for name in seconds:
            rows.append(
                BenchRow(
                    algorithm=name,
                    n=n,
                    seconds=round(_median(seconds[name]), 6),
                    meters=_median(meters[name]),
                    dp_states=dp_states if name == "exact" else None,
                    seed=seed,
                )
            )
        logger.info("Timed n=%d over %d trials", n, trials)
    return BenchReport(rows, seed)


def run_quality_suite(
    graph: CityGraph,
    n: int,
    trials: int,
    seed: int = DEFAULT_SEED,
    exact_cap: Optional[int] = EXACT_CAP,
    astar_threshold: int = ASTAR_THRESHOLD,
    heuristic: str = DEFAULT_HEURISTIC,
) -> BenchReport:
    """
    Measures how far each heuristic lands from the optimum.

    Every trial draws its own terminals (seed `seed + trial`, recorded in
    its rows), builds one subgraph, and runs the exact solver and the
    heuristics on it. The report's `ratios` hold heuristic length over
    exact length per trial.
    """
    if exact_cap is not None and n > exact_cap:
        raise TooLargeError(n, exact_cap)
    warm_up_exact_solver()

    rows = []
    ratios: Dict[str, List[float]] = {name: [] for name in COMPARED_HEURISTICS}
    for trial in range(trials):
        trial_seed = seed + trial
        terminals, closure, _ = sample_connected(
            graph, n, trial_seed, astar_threshold, heuristic
        )
        exact, elapsed = timed(solve_exact, closure, exact_cap)
        rows.append(
            BenchRow(
                "exact", n, elapsed, exact.total_m, exact.dp_states, trial_seed
            )
        )
        for name in COMPARED_HEURISTICS:
            tour, elapsed = timed(HEURISTIC_SOLVERS[name], terminals, closure)
            rows.append(
                BenchRow(name, n, elapsed, tour.total_m, None, trial_seed)
            )
            if exact.total_m > 0:
                ratios[name].append(tour.total_m / exact.total_m)
            else:
                ratios[name].append(1.0)

    logger.info("Compared heuristics on %d trials of n=%d", trials, n)
    return BenchReport(rows, seed, ratios=ratios)
