"""This module contains the GeoPoint and CityGraph classes.
A CityGraph is loaded from two text files (one for the vertices, one for
the edges) and is used to snap arbitrary coordinates to its vertices."""

import logging
import math
import time
from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple

import numpy as np

from config import METERS_PER_DEGREE
from helpers.errors import (
    CoordinateOutOfRangeError,
    EmptyGraphError,
    MalformedLineError,
    MissingFileError,
    UnknownEndpointError,
    UnknownVertexError,
)

logger = logging.getLogger(__name__)

VertexId = int
Arc = Tuple[VertexId, float]

MAX_VERTEX_ID = 2**64 - 1


@dataclass(frozen=True)
class GeoPoint:
    """A WGS84 latitude/longitude pair in decimal degrees."""

    lat: float
    lon: float

    def __post_init__(self) -> None:
        valid = (
            math.isfinite(self.lat)
            and math.isfinite(self.lon)
            and -90.0 <= self.lat <= 90.0
            and -180.0 <= self.lon <= 180.0
        )
        if not valid:
            raise CoordinateOutOfRangeError(self.lat, self.lon)


class CityGraph:
    """This class stores the road network as adjacency lists.

    Vertices are kept in ascending id order next to their coordinates
    projected to metres, so snapping is a single vectorised scan and ties
    resolve to the lowest id. The graph is not modified after it is
    built."""

    def __init__(
        self,
        vertices: Dict[VertexId, GeoPoint],
        adjacency: Dict[VertexId, List[Arc]],
        edge_count: int,
        directed: bool = False,
    ) -> None:
        if not vertices:
            raise EmptyGraphError()

        self.vertices = vertices
        self.adjacency = {
            vertex_id: adjacency.get(vertex_id, []) for vertex_id in vertices
        }
        self.edge_count = edge_count
        self.directed = directed
        self.load_seconds = 0.0

        self.vertex_ids = sorted(vertices)
        lats = np.array([vertices[v].lat for v in self.vertex_ids])
        lons = np.array([vertices[v].lon for v in self.vertex_ids])
        self.reference_lat = float(lats.mean())
        self.lon_scale = METERS_PER_DEGREE * math.cos(
            math.radians(self.reference_lat)
        )
        self.xs = lons * self.lon_scale
        self.ys = lats * METERS_PER_DEGREE
        self._xy = {
            vertex_id: (float(x), float(y))
            for vertex_id, x, y in zip(self.vertex_ids, self.xs, self.ys)
        }

    def __contains__(self, vertex_id: VertexId) -> bool:
        return vertex_id in self.vertices

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def arc_count(self) -> int:
        """Returns the number of stored arcs (two per undirected edge)."""
        return sum(len(arcs) for arcs in self.adjacency.values())

    def project(self, point: GeoPoint) -> Tuple[float, float]:
        """Returns the equirectangular projection of a point in metres,
        using the graph's mean latitude as the reference parallel."""
        return point.lon * self.lon_scale, point.lat * METERS_PER_DEGREE

    def xy(self, vertex_id: VertexId) -> Tuple[float, float]:
        try:
            return self._xy[vertex_id]
        except KeyError:
            raise UnknownVertexError(vertex_id) from None

    def straight_distance(self, source: VertexId, target: VertexId) -> float:
        """Returns the projected straight-line distance in metres."""
        x1, y1 = self.xy(source)
        x2, y2 = self.xy(target)
        return math.hypot(x2 - x1, y2 - y1)

    def arc_weight(self, source: VertexId, target: VertexId) -> float:
        """Returns the weight of the arc source -> target."""
        for neighbor, weight in self.adjacency[source]:
            if neighbor == target:
                return weight
        raise KeyError(f"No arc from {source} to {target}")

    def path_weight(self, path: List[VertexId]) -> float:
        """Sums the arc weights along a vertex sequence, front to back."""
        total = 0.0
        for here, there in zip(path, path[1:]):
            total += self.arc_weight(here, there)
        return total


def _iter_records(path: str) -> Iterator[Tuple[int, List[str]]]:
    """Yields (line number, fields) for every data row of a graph file.
    Blank lines and lines starting with '#' are skipped."""
    try:
        handle = open(path, encoding="utf-8")
    except OSError as error:
        raise MissingFileError(str(path)) from error

    with handle:
        for line_number, line in enumerate(handle, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            fields = text.split()
            if len(fields) != 3:
                raise MalformedLineError(
                    path,
                    line_number,
                    f"expected 3 fields, found {len(fields)}",
                )
            yield line_number, fields


def _parse_vertex_id(path: str, line_number: int, field: str) -> VertexId:
    try:
        vertex_id = int(field)
    except ValueError:
        raise MalformedLineError(
            path, line_number, f"vertex id {field!r} is not an integer"
        ) from None
    if not 0 <= vertex_id <= MAX_VERTEX_ID:
        raise MalformedLineError(
            path, line_number, f"vertex id {vertex_id} is out of range"
        )
    return vertex_id


def _parse_number(path: str, line_number: int, field: str) -> float:
    try:
        value = float(field)
    except ValueError:
        raise MalformedLineError(
            path, line_number, f"{field!r} is not a number"
        ) from None
    if not math.isfinite(value):
        raise MalformedLineError(
            path, line_number, f"{field!r} is not a finite number"
        )
    return value


def read_vertices(path: str) -> Dict[VertexId, GeoPoint]:
    """Reads `id lat lon` rows into a dictionary of points."""
    vertices: Dict[VertexId, GeoPoint] = {}
    for line_number, (id_field, lat_field, lon_field) in _iter_records(path):
        vertex_id = _parse_vertex_id(path, line_number, id_field)
        lat = _parse_number(path, line_number, lat_field)
        lon = _parse_number(path, line_number, lon_field)
        try:
            point = GeoPoint(lat, lon)
        except CoordinateOutOfRangeError as error:
            raise MalformedLineError(path, line_number, str(error)) from None

        known = vertices.get(vertex_id)
        if known is not None and known != point:
            raise MalformedLineError(
                path,
                line_number,
                f"vertex {vertex_id} is listed with two coordinates",
            )
        vertices[vertex_id] = point
    return vertices


def read_edges(
    path: str, vertices: Dict[VertexId, GeoPoint], directed: bool
) -> Tuple[Dict[VertexId, List[Arc]], int]:
    """Reads `from_id to_id weight` rows into adjacency lists.

    Repeated rows for the same edge keep the smallest weight. Returns the
    adjacency lists and the number of distinct edges."""
    weights: Dict[Tuple[VertexId, VertexId], float] = {}
    for line_number, (from_field, to_field, weight_field) in _iter_records(
        path
    ):
        source = _parse_vertex_id(path, line_number, from_field)
        target = _parse_vertex_id(path, line_number, to_field)
        weight = _parse_number(path, line_number, weight_field)
        if weight < 0:
            raise MalformedLineError(
                path, line_number, f"negative weight {weight}"
            )
        for endpoint in (source, target):
            if endpoint not in vertices:
                raise UnknownEndpointError(path, line_number, endpoint)

        key = (source, target)
        if not directed and target < source:
            key = (target, source)
        if key not in weights or weight < weights[key]:
            weights[key] = weight

    adjacency: Dict[VertexId, List[Arc]] = {v: [] for v in vertices}
    for (source, target), weight in weights.items():
        adjacency[source].append((target, weight))
        if not directed and source != target:
            adjacency[target].append((source, weight))
    return adjacency, len(weights)


def load_city_graph(
    vertices_path: str, edges_path: str, directed: bool = False
) -> CityGraph:
    """
    Builds a CityGraph from a vertex file and an edge file.

    Args:
        vertices_path (str): File with one `id lat lon` row per vertex.
        edges_path (str): File with one `from_id to_id weight` row per
            edge, weights in metres.
        directed (bool, optional): When False every edge row is usable
            in both directions. Defaults to False.

    Returns:
        CityGraph: The graph, with the wall time spent loading it in
            `load_seconds`.
    """
    start = time.perf_counter()
    vertices = read_vertices(vertices_path)
    if not vertices:
        raise EmptyGraphError(f"{vertices_path} has no vertex rows")
    adjacency, edge_count = read_edges(edges_path, vertices, directed)

    graph = CityGraph(vertices, adjacency, edge_count, directed)
    graph.load_seconds = time.perf_counter() - start
    logger.info(
        "Loaded %d vertices and %d edges in %.3fs",
        graph.vertex_count,
        graph.edge_count,
        graph.load_seconds,
    )
    return graph


def nearest_vertex(
    graph: CityGraph, query: GeoPoint
) -> Tuple[VertexId, GeoPoint]:
    """Returns the id and coordinates of the vertex closest to `query`
    on the equirectangular projection. Ties go to the lowest id.

    The longitude scale uses the graph's mean latitude for every pair,
    not the mean latitude of the query and each vertex."""
    if not graph.vertex_ids:
        raise EmptyGraphError()
    x, y = graph.project(query)
    squared = (graph.xs - x) ** 2 + (graph.ys - y) ** 2
    vertex_id = graph.vertex_ids[int(np.argmin(squared))]
    return vertex_id, graph.vertices[vertex_id]
