"""This module contains the shortest-path searches over a CityGraph
(Dijkstra and A*) and the construction of the complete subgraph that
holds only the points to visit."""

import heapq
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from config import ASTAR_THRESHOLD, DEFAULT_HEURISTIC
from helpers.city_graph import CityGraph, GeoPoint, VertexId, nearest_vertex
from helpers.errors import (
    MissingPathError,
    TooFewPointsError,
    UnknownVertexError,
    UnreachableError,
)

logger = logging.getLogger(__name__)

INFINITY = math.inf

Heuristic = Callable[[VertexId], float]


@dataclass(frozen=True)
class TerminalSet:
    """The points to visit, snapped to graph vertices. Terminal 0 is
    where the tour starts and ends."""

    terminals: Tuple[VertexId, ...]
    origin_points: Tuple[GeoPoint, ...]
    vertex_points: Tuple[GeoPoint, ...]

    def __post_init__(self) -> None:
        if len(self.terminals) < 2:
            raise TooFewPointsError(len(self.terminals))
        if len(set(self.terminals)) != len(self.terminals):
            raise ValueError("Terminal vertices must be distinct")
        if not (
            len(self.origin_points)
            == len(self.vertex_points)
            == len(self.terminals)
        ):
            raise ValueError("Every terminal needs both of its points")

    def __len__(self) -> int:
        return len(self.terminals)

    def __getitem__(self, index: int) -> VertexId:
        return self.terminals[index]

    @property
    def point_echo(self) -> Dict[VertexId, GeoPoint]:
        """Maps each snapped vertex to the point the user entered."""
        return dict(zip(self.terminals, self.origin_points))

    @classmethod
    def snap(
        cls, graph: CityGraph, points: Sequence[GeoPoint]
    ) -> Tuple["TerminalSet", List[int]]:
        """
        Snaps user points to their nearest vertices.

        Points that land on an already used vertex are merged into the
        earlier one.

        Returns:
            Tuple[TerminalSet, List[int]]: The terminals and the
                positions of the merged input points.
        """
        terminals: List[VertexId] = []
        origins: List[GeoPoint] = []
        snapped: List[GeoPoint] = []
        merged: List[int] = []
        for position, point in enumerate(points):
            vertex_id, vertex_point = nearest_vertex(graph, point)
            if vertex_id in terminals:
                merged.append(position)
                continue
            terminals.append(vertex_id)
            origins.append(point)
            snapped.append(vertex_point)
        return cls(tuple(terminals), tuple(origins), tuple(snapped)), merged

    @classmethod
    def from_vertices(
        cls, graph: CityGraph, vertex_ids: Iterable[VertexId]
    ) -> "TerminalSet":
        vertex_ids = tuple(vertex_ids)
        for vertex_id in vertex_ids:
            if vertex_id not in graph:
                raise UnknownVertexError(vertex_id)
        points = tuple(graph.vertices[v] for v in vertex_ids)
        return cls(vertex_ids, points, points)


@dataclass
class ClosureMatrix:
    """The complete subgraph over the terminals.

    `dist[i][j]` is the shortest-path length in metres from terminal i to
    terminal j (inf when unreachable) and `paths[(i, j)]` the vertex
    sequence realising it."""

    dist: np.ndarray
    paths: Dict[Tuple[int, int], Tuple[VertexId, ...]] = field(
        default_factory=dict
    )
    method: str = "given"
    build_seconds: float = 0.0

    def __post_init__(self) -> None:
        self.dist = np.asarray(self.dist, dtype=np.float64)
        if self.dist.ndim != 2 or self.dist.shape[0] != self.dist.shape[1]:
            raise ValueError("The distance matrix must be square")
        if np.any(np.diagonal(self.dist) != 0.0):
            raise ValueError("The distance matrix diagonal must be zero")
        if np.isnan(self.dist).any() or (self.dist < 0).any():
            raise ValueError("Distances must be non-negative numbers")

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    @property
    def is_connected(self) -> bool:
        return bool(np.isfinite(self.dist).all())

    def path(self, i: int, j: int) -> Tuple[VertexId, ...]:
        try:
            return self.paths[(i, j)]
        except KeyError:
            raise MissingPathError(i, j) from None


def make_heuristic(
    graph: CityGraph, target: VertexId, name: str = DEFAULT_HEURISTIC
) -> Heuristic:
    """Returns a function estimating the remaining distance to `target`.

    `euclidean` is the straight projected distance and never
    overestimates. `manhattan` adds the projected east and north offsets
    and may overestimate. `zero` turns A* into Dijkstra."""
    target_x, target_y = graph.xy(target)
    position = graph.xy

    def euclidean(vertex_id: VertexId) -> float:
        x, y = position(vertex_id)
        return math.hypot(x - target_x, y - target_y)

    def manhattan(vertex_id: VertexId) -> float:
        x, y = position(vertex_id)
        return abs(x - target_x) + abs(y - target_y)

    def zero(vertex_id: VertexId) -> float:
        return 0.0

    heuristics = {
        "euclidean": euclidean,
        "manhattan": manhattan,
        "zero": zero,
    }
    try:
        return heuristics[name]
    except KeyError:
        raise ValueError(f"Unknown heuristic {name!r}") from None


def _walk_back(
    predecessors: Dict[VertexId, VertexId],
    source: VertexId,
    target: VertexId,
) -> List[VertexId]:
    path = [target]
    while path[-1] != source:
        path.append(predecessors[path[-1]])
    path.reverse()
    return path


def _shortest_path_tree(
    graph: CityGraph,
    source: VertexId,
    targets: Optional[Iterable[VertexId]] = None,
) -> Tuple[Dict[VertexId, float], Dict[VertexId, VertexId]]:
    """Runs Dijkstra from `source`.

    When `targets` is given the search stops as soon as all of them are
    settled; distances of targets that are missing from the result are
    unreachable. Queue entries are (distance, vertex) pairs, so equal
    distances pop lowest id first, and outdated entries are skipped when
    popped."""
    distances = {source: 0.0}
    predecessors: Dict[VertexId, VertexId] = {}
    settled = set()
    remaining = None if targets is None else set(targets)
    queue = [(0.0, source)]
    adjacency = graph.adjacency

    while queue:
        distance, vertex = heapq.heappop(queue)
        if vertex in settled or distance > distances[vertex]:
            continue
        settled.add(vertex)
        if remaining is not None:
            remaining.discard(vertex)
            if not remaining:
                break

        for neighbor, weight in adjacency[vertex]:
            if neighbor in settled:
                continue
            candidate = distance + weight
            if candidate < distances.get(neighbor, INFINITY):
                distances[neighbor] = candidate
                predecessors[neighbor] = vertex
                heapq.heappush(queue, (candidate, neighbor))

    return distances, predecessors


def dijkstra_sssp(
    graph: CityGraph, source: VertexId
) -> Tuple[Dict[VertexId, float], Dict[VertexId, VertexId]]:
    """
    Computes shortest-path distances from `source` to every vertex.

    Returns:
        Tuple[Dict[VertexId, float], Dict[VertexId, VertexId]]:
            The distance of every vertex (inf when unreachable) and the
            predecessor of every reached vertex other than the source.
    """
    if source not in graph:
        raise UnknownVertexError(source)
    reached, predecessors = _shortest_path_tree(graph, source)
    distances = {v: reached.get(v, INFINITY) for v in graph.vertex_ids}
    return distances, predecessors


def astar(
    graph: CityGraph,
    source: VertexId,
    target: VertexId,
    heuristic: str = DEFAULT_HEURISTIC,
) -> Tuple[float, List[VertexId]]:
    """
    Finds a path from `source` to `target` with A*.

    With the `euclidean` or `zero` heuristic the path is a shortest one.
    Vertices are reopened when a cheaper route to them turns up, and the
    returned distance is always the weight of the returned path.

    Returns:
        Tuple[float, List[VertexId]]: The path length in metres and the
            vertex sequence from source to target.
    """
    for vertex_id in (source, target):
        if vertex_id not in graph:
            raise UnknownVertexError(vertex_id)
    estimate = make_heuristic(graph, target, heuristic)
    if source == target:
        return 0.0, [source]

    costs = {source: 0.0}
    predecessors: Dict[VertexId, VertexId] = {}
    queue = [(estimate(source), source, 0.0)]
    adjacency = graph.adjacency

    while queue:
        _, vertex, cost = heapq.heappop(queue)
        if cost > costs[vertex]:
            continue
        if vertex == target:
            path = _walk_back(predecessors, source, target)
            return graph.path_weight(path), path

        for neighbor, weight in adjacency[vertex]:
            candidate = cost + weight
            if candidate < costs.get(neighbor, INFINITY):
                costs[neighbor] = candidate
                predecessors[neighbor] = vertex
                priority = candidate + estimate(neighbor)
                heapq.heappush(queue, (priority, neighbor, candidate))

    raise UnreachableError(source, target)


def build_closure(
    graph: CityGraph,
    terminals: TerminalSet,
    astar_threshold: int = ASTAR_THRESHOLD,
    heuristic: str = DEFAULT_HEURISTIC,
) -> ClosureMatrix:
    """
    Builds the complete subgraph over the terminals.

    Up to `astar_threshold` terminals every pair is searched with A*;
    above it one Dijkstra run per terminal fills its row. On undirected
    graphs each unordered pair is searched once and mirrored, so the
    matrix is exactly symmetric. Unreachable pairs are left at inf.

    Returns:
        ClosureMatrix: The matrix, with the build wall time in
            `build_seconds`.
    """
    start = time.perf_counter()
    for vertex_id in terminals.terminals:
        if vertex_id not in graph:
            raise UnknownVertexError(vertex_id)

    n = len(terminals)
    dist = np.full((n, n), INFINITY)
    np.fill_diagonal(dist, 0.0)
    paths = {(i, i): (terminals[i],) for i in range(n)}
    mirror = not graph.directed

    def store(i: int, j: int, length: float, path: List[VertexId]) -> None:
        dist[i, j] = length
        paths[(i, j)] = tuple(path)
        if mirror:
            dist[j, i] = length
            paths[(j, i)] = tuple(reversed(path))

    if n <= astar_threshold:
        method = "astar"
        for i in range(n):
            for j in range(i + 1 if mirror else 0, n):
                if i == j:
                    continue
                try:
                    length, path = astar(
                        graph, terminals[i], terminals[j], heuristic
                    )
                except UnreachableError:
                    continue
                store(i, j, length, path)
    else:
        method = "dijkstra"
        for i in range(n):
            wanted = [
                j for j in range(i + 1 if mirror else 0, n) if j != i
            ]
            if not wanted:
                continue
            reached, predecessors = _shortest_path_tree(
                graph, terminals[i], [terminals[j] for j in wanted]
            )
            for j in wanted:
                if terminals[j] in reached:
                    path = _walk_back(predecessors, terminals[i], terminals[j])
                    store(i, j, reached[terminals[j]], path)

    closure = ClosureMatrix(
        dist, paths, method, time.perf_counter() - start
    )
    logger.info(
        "Built %dx%d subgraph with %s in %.4fs",
        n,
        n,
        method,
        closure.build_seconds,
    )
    if not closure.is_connected:
        logger.warning("The subgraph has unreachable terminal pairs")
    return closure
