"""Graphs and oracles shared by the test modules."""

import functools
import itertools
import os
import tempfile
import unittest
from pathlib import Path

import networkx as nx
import numpy as np

from helpers.city_graph import CityGraph, load_city_graph
from helpers.grid_city import grid_city_graph
from helpers.path_finder import ClosureMatrix, TerminalSet
from helpers.tour_solvers import tour_length

SLOW_TESTS = os.environ.get("ROUTE_PLANNER_SLOW_TESTS") == "1"
slow_test = unittest.skipUnless(
    SLOW_TESTS, "set ROUTE_PLANNER_SLOW_TESTS=1 to run"
)

three_vertex_rows = ["1 6.20 -75.57", "2 6.21 -75.58", "3 6.22 -75.57"]
three_vertex_edges = ["1 2 150.0", "2 3 210.5"]

five_vertex_rows = [
    "1 6.200 -75.570",
    "2 6.201 -75.571",
    "3 6.202 -75.570",
    "4 6.203 -75.569",
    "9 6.300 -75.500",
]
five_vertex_edges = ["1 2 4", "2 3 1", "1 3 7", "3 4 3"]


def write_graph_files(directory, vertex_rows, edge_rows):
    vertices_path = Path(directory) / "vertices.txt"
    edges_path = Path(directory) / "edges.txt"
    vertices_path.write_text("".join(row + "\n" for row in vertex_rows))
    edges_path.write_text("".join(row + "\n" for row in edge_rows))
    return vertices_path, edges_path


def graph_from_rows(vertex_rows, edge_rows, directed=False) -> CityGraph:
    with tempfile.TemporaryDirectory() as directory:
        paths = write_graph_files(directory, vertex_rows, edge_rows)
        return load_city_graph(*paths, directed=directed)


@functools.lru_cache(maxsize=None)
def cached_grid(rows, cols, perturbation=0.0, seed=7) -> CityGraph:
    return grid_city_graph(rows, cols, 100.0, perturbation, seed)


@functools.lru_cache(maxsize=None)
def lattice_graph(rows, cols) -> CityGraph:
    """A grid whose blocks all weigh exactly 100 m, so equal-length
    routes tie exactly. Corners sit about 89 m apart, which keeps the
    straight-line estimate below every true distance."""
    vertex_rows, edge_rows = [], []
    for row, col in itertools.product(range(rows), range(cols)):
        vertex_id = row * cols + col + 1
        lat = 6.2 + row * 0.0008
        lon = -75.6 + col * 0.0008
        vertex_rows.append(f"{vertex_id} {lat:.6f} {lon:.6f}")
        if col + 1 < cols:
            edge_rows.append(f"{vertex_id} {vertex_id + 1} 100")
        if row + 1 < rows:
            edge_rows.append(f"{vertex_id} {vertex_id + cols} 100")
    return graph_from_rows(vertex_rows, edge_rows)


def to_networkx(graph: CityGraph) -> nx.DiGraph:
    network = nx.DiGraph()
    network.add_nodes_from(graph.vertex_ids)
    for source, arcs in graph.adjacency.items():
        for target, weight in arcs:
            network.add_edge(source, target, weight=weight)
    return network


def floyd_warshall(graph: CityGraph) -> np.ndarray:
    """All-pairs distances, rows and columns in `graph.vertex_ids` order."""
    return np.asarray(
        nx.floyd_warshall_numpy(
            to_networkx(graph), nodelist=graph.vertex_ids, weight="weight"
        )
    )


def random_terminals(graph: CityGraph, n: int, seed: int) -> TerminalSet:
    rng = np.random.default_rng(seed)
    picks = rng.choice(graph.vertex_count, size=n, replace=False)
    return TerminalSet.from_vertices(
        graph, [graph.vertex_ids[int(k)] for k in picks]
    )


def random_symmetric_matrix(n: int, rng: np.random.Generator):
    values = rng.uniform(1.0, 1000.0, size=(n, n))
    dist = np.triu(values, 1)
    return ClosureMatrix(dist + dist.T)


def brute_force_length(matrix: ClosureMatrix) -> float:
    return min(
        tour_length(matrix, (0,) + order + (0,))
        for order in itertools.permutations(range(1, matrix.n))
    )
