"""This module contains the tour solvers that work on a ClosureMatrix:
the exact Held-Karp dynamic program, nearest neighbor, the natural
approximation (a radial sort, in fast and normal modes) and the best of
both heuristics."""

import functools
import logging
import math
from dataclasses import dataclass
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np
from numba import njit

from config import EXACT_CAP, METERS_PER_DEGREE
from helpers.city_graph import GeoPoint, VertexId
from helpers.errors import (
    DisconnectedError,
    TooFewPointsError,
    TooLargeError,
    UnreachableLegError,
)
from helpers.path_finder import ClosureMatrix, TerminalSet

logger = logging.getLogger(__name__)

FAST = "fast"
NORMAL = "normal"


@dataclass(frozen=True)
class Tour:
    """A closed tour over terminal indices, starting and ending at 0.

    `total_m` is absent for the natural approximation's fast mode, and
    `dp_states` is only set by the exact solver."""

    order: Tuple[int, ...]
    total_m: Optional[float] = None
    dp_states: Optional[int] = None

    def __post_init__(self) -> None:
        order = tuple(int(index) for index in self.order)
        object.__setattr__(self, "order", order)
        n = len(order) - 1
        if (
            n < 2
            or order[0] != 0
            or order[-1] != 0
            or sorted(order[:-1]) != list(range(n))
        ):
            raise ValueError(f"Not a closed tour from terminal 0: {order}")

    @property
    def n(self) -> int:
        return len(self.order) - 1

    def reversed_order(self) -> Tuple[int, ...]:
        return (0,) + self.order[-2:0:-1] + (0,)


def tour_length(matrix: ClosureMatrix, order: Sequence[int]) -> float:
    """Sums the matrix entries along `order`, front to back."""
    total = 0.0
    for here, there in zip(order, order[1:]):
        leg = matrix.dist[here, there]
        if not math.isfinite(leg):
            raise UnreachableLegError(here, there)
        total += float(leg)
    return total


def _require_connected(matrix: ClosureMatrix) -> None:
    if matrix.n < 2:
        raise TooFewPointsError(matrix.n)
    if not matrix.is_connected:
        raise DisconnectedError(
            "Some terminals cannot reach each other in the city graph"
        )


@njit
def _fill_cost_to_go(dist):
    # table[mask, here]: cheapest way to finish the tour from `here` once
    # the terminals in `mask` are visited. Only odd masks (terminal 0
    # visited) are filled.
    n = dist.shape[0]
    full = (1 << n) - 1
    table = np.full((1 << n, n), np.inf)
    for here in range(n):
        table[full, here] = dist[here, 0]

    for mask in range(full - 2, 0, -2):
        for here in range(n):
            if not (mask >> here) & 1:
                continue
            if here == 0 and mask != 1:
                continue
            best = np.inf
            for there in range(1, n):
                bit = 1 << there
                if mask & bit:
                    continue
                cost = dist[here, there] + table[mask | bit, there]
                if cost < best:
                    best = cost
            table[mask, here] = best
    return table


def _walk_cost_to_go(dist: np.ndarray, table: np.ndarray) -> List[int]:
    """Follows the table from terminal 0, always taking the lowest index
    among the cheapest continuations."""
    n = dist.shape[0]
    full = (1 << n) - 1
    order = [0]
    mask = 1
    here = 0
    while mask != full:
        best_cost = math.inf
        best_next = -1
        for there in range(1, n):
            bit = 1 << there
            if mask & bit:
                continue
            cost = dist[here, there] + table[mask | bit, there]
            if cost < best_cost:
                best_cost = cost
                best_next = there
        order.append(best_next)
        mask |= 1 << best_next
        here = best_next
    order.append(0)
    return order


def held_karp_states(n: int) -> int:
    """Returns the number of entries in the exact solver's table."""
    return n * 2**n


def warm_up_exact_solver() -> None:
    """Compiles the Held-Karp kernel so later calls time only the work."""
    _fill_cost_to_go(np.zeros((2, 2)))


def solve_exact(
    matrix: ClosureMatrix, cap: Optional[int] = EXACT_CAP
) -> Tour:
    """
    Returns a shortest tour using the Held-Karp subset DP.

    Args:
        matrix (ClosureMatrix): A closure with every entry finite.
        cap (Optional[int], optional): Largest terminal count accepted,
            or None for no limit. Defaults to EXACT_CAP.

    Returns:
        Tour: The lexicographically smallest among the optimal tours.
    """
    if cap is not None and matrix.n > cap:
        raise TooLargeError(matrix.n, cap)
    _require_connected(matrix)

    dist = np.ascontiguousarray(matrix.dist, dtype=np.float64)
    table = _fill_cost_to_go(dist)
    order = _walk_cost_to_go(dist, table)
    logger.debug(
        "Held-Karp table for n=%d has %d states", matrix.n, table.size
    )
    return Tour(order, tour_length(matrix, order), int(table.size))


def solve_nearest_neighbor(matrix: ClosureMatrix) -> Tour:
    """Starts at terminal 0 and keeps moving to the closest unvisited
    terminal (lowest index on ties) before returning to 0."""
    _require_connected(matrix)
    dist = matrix.dist
    unvisited = list(range(1, matrix.n))
    order = [0]
    here = 0
    while unvisited:
        there = min(unvisited, key=lambda candidate: dist[here, candidate])
        unvisited.remove(there)
        order.append(there)
        here = there
    order.append(0)
    return Tour(order, tour_length(matrix, order))


def _half_plane(dx: float, dy: float) -> int:
    return 0 if dy > 0 or (dy == 0 and dx >= 0) else 1


def radial_order(points: Sequence[GeoPoint]) -> List[int]:
    """
    Sorts point indices counterclockwise around their centroid on the
    equirectangular projection, then rotates the ring so index 0 leads.

    The upper half-plane (including the positive x ray) comes before
    the lower one; inside a half, the cross product decides. Points on
    the same ray go nearest first, exact duplicates by index, and a
    point sitting on the centroid goes first of all.
    """
    reference_lat = sum(point.lat for point in points) / len(points)
    lon_scale = METERS_PER_DEGREE * math.cos(math.radians(reference_lat))
    xy = [(p.lon * lon_scale, p.lat * METERS_PER_DEGREE) for p in points]
    center_x = sum(x for x, _ in xy) / len(xy)
    center_y = sum(y for _, y in xy) / len(xy)
    offsets = [(x - center_x, y - center_y) for x, y in xy]

    def compare(a: int, b: int) -> int:
        ax, ay = offsets[a]
        bx, by = offsets[b]
        a_center = ax == 0 and ay == 0
        b_center = bx == 0 and by == 0
        if a_center != b_center:
            return -1 if a_center else 1

        a_half = _half_plane(ax, ay)
        b_half = _half_plane(bx, by)
        if a_half != b_half:
            return a_half - b_half

        cross = ax * by - ay * bx
        if cross != 0:
            return -1 if cross > 0 else 1

        a_norm = ax * ax + ay * ay
        b_norm = bx * bx + by * by
        if a_norm != b_norm:
            return -1 if a_norm < b_norm else 1
        return a - b

    ring = sorted(range(len(points)), key=functools.cmp_to_key(compare))
    start = ring.index(0)
    return ring[start:] + ring[:start]


def solve_natural(
    terminals: TerminalSet,
    mode: str = FAST,
    matrix: Optional[ClosureMatrix] = None,
) -> Tour:
    """
    Orders the terminals by angle around their centroid.

    Fast mode needs no closure and reports no distance. Normal mode
    measures the ring in both directions on the closure and keeps the
    shorter one (the forward one on ties).
    """
    ring = radial_order(terminals.vertex_points)
    forward = tuple(ring) + (0,)
    if mode == FAST:
        return Tour(forward)
    if mode != NORMAL:
        raise ValueError(f"Unknown natural approximation mode {mode!r}")
    if matrix is None:
        raise ValueError("Normal mode needs the complete subgraph")
    _require_connected(matrix)

    backward = Tour(forward).reversed_order()
    forward_length = tour_length(matrix, forward)
    backward_length = tour_length(matrix, backward)
    if backward_length < forward_length:
        return Tour(backward, backward_length)
    return Tour(forward, forward_length)


def solve_best_of_both(
    terminals: TerminalSet, matrix: ClosureMatrix
) -> Tour:
    """Returns the shorter of the normal-mode natural approximation and
    nearest neighbor, preferring the natural approximation on ties."""
    natural = solve_natural(terminals, NORMAL, matrix)
    greedy = solve_nearest_neighbor(matrix)
    if greedy.total_m < natural.total_m:
        return greedy
    return natural


def expand_tour(tour: Tour, matrix: ClosureMatrix) -> List[VertexId]:
    """Stitches the stored leg paths into the street-level route. The
    vertex shared by two consecutive legs appears once."""
    route: List[VertexId] = []
    for here, there in zip(tour.order, tour.order[1:]):
        leg = matrix.path(here, there)
        route.extend(leg[1:] if route else leg)
    return route


def tour_points(
    tour: Tour,
    terminals: TerminalSet,
    point_echo: Optional[Mapping[VertexId, GeoPoint]] = None,
) -> List[GeoPoint]:
    """Returns the points the user entered, in tour order, with the
    starting point repeated at the end. `point_echo` maps each terminal
    to its entered point and defaults to the terminals' own."""
    if point_echo is None:
        point_echo = terminals.point_echo
    return [point_echo[terminals[index]] for index in tour.order]
