"""This module contains the generator of synthetic city graphs: a
4-connected grid of streets whose corners are jittered at random, written
in the same vertex/edge text format as a real city."""

import logging
import math
import tempfile
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from config import (
    DEFAULT_SEED,
    GRID_ORIGIN_LAT,
    GRID_ORIGIN_LON,
    GRID_SPACING_M,
    METERS_PER_DEGREE,
)
from helpers.city_graph import CityGraph, GeoPoint, load_city_graph
from helpers.errors import InvalidDimensionsError

logger = logging.getLogger(__name__)

COORDINATE_DECIMALS = 9


def generate_grid_city(
    rows: int,
    cols: int,
    vertices_path: str,
    edges_path: str,
    spacing_m: float = GRID_SPACING_M,
    perturbation: float = 0.0,
    seed: int = DEFAULT_SEED,
    origin: Optional[GeoPoint] = None,
) -> Tuple[Path, Path]:
    """
    Writes the vertex and edge files of a rows x cols grid city.

    Every corner is moved by up to `perturbation * spacing_m` metres on
    each axis. Edge weights are the projected distance between their
    ends, computed exactly as a loaded CityGraph projects them, so the
    straight-line A* heuristic stays admissible on these graphs. The
    same seed always writes the same bytes.

    Args:
        rows (int): Number of east-west streets.
        cols (int): Number of north-south streets.
        vertices_path (str): Where to write the vertex file.
        edges_path (str): Where to write the edge file.
        spacing_m (float, optional): Block length in metres.
        perturbation (float, optional): Jitter as a fraction of the
            block length, in [0, 0.5). Defaults to 0.
        seed (int, optional): Seed of the jitter.
        origin (GeoPoint, optional): South-west corner of the grid.

    Returns:
        Tuple[Path, Path]: The vertex and edge file paths.
    """
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise InvalidDimensionsError(
            f"A {rows}x{cols} grid cannot hold two vertices"
        )
    if spacing_m <= 0:
        raise ValueError("The block length must be positive")
    if not 0.0 <= perturbation < 0.5:
        raise ValueError("The perturbation must lie in [0, 0.5)")
    origin = origin or GeoPoint(GRID_ORIGIN_LAT, GRID_ORIGIN_LON)

    rng = np.random.default_rng(seed)
    jitter = rng.uniform(-1.0, 1.0, size=(2, rows, cols))
    jitter *= perturbation * spacing_m
    north = np.arange(rows)[:, None] * spacing_m + jitter[0]
    east = np.arange(cols)[None, :] * spacing_m + jitter[1]
    middle_lat = origin.lat + (rows - 1) * spacing_m / 2 / METERS_PER_DEGREE
    lon_scale = METERS_PER_DEGREE * math.cos(math.radians(middle_lat))
    lats = origin.lat + north / METERS_PER_DEGREE
    lons = origin.lon + east / lon_scale

    vertex_lines = ["# id lat lon\n"]
    vertices = {}
    for row in range(rows):
        for col in range(cols):
            vertex_id = row * cols + col + 1
            lat_text = f"{lats[row, col]:.{COORDINATE_DECIMALS}f}"
            lon_text = f"{lons[row, col]:.{COORDINATE_DECIMALS}f}"
            vertex_lines.append(f"{vertex_id} {lat_text} {lon_text}\n")
            vertices[vertex_id] = GeoPoint(float(lat_text), float(lon_text))

    # Weights come from the projection the loaded graph will use.
    graph = CityGraph(vertices, {}, 0)
    edge_lines = ["# from to meters\n"]
    for row in range(rows):
        for col in range(cols):
            vertex_id = row * cols + col + 1
            if col + 1 < cols:
                neighbor = vertex_id + 1
                weight = graph.straight_distance(vertex_id, neighbor)
                edge_lines.append(f"{vertex_id} {neighbor} {weight!r}\n")
            if row + 1 < rows:
                neighbor = vertex_id + cols
                weight = graph.straight_distance(vertex_id, neighbor)
                edge_lines.append(f"{vertex_id} {neighbor} {weight!r}\n")

    vertices_path, edges_path = Path(vertices_path), Path(edges_path)
    with open(vertices_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.writelines(vertex_lines)
    with open(edges_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.writelines(edge_lines)

    logger.info(
        "Wrote a %dx%d grid city (%d vertices, %d edges)",
        rows,
        cols,
        len(vertex_lines) - 1,
        len(edge_lines) - 1,
    )
    return vertices_path, edges_path


def grid_city_graph(
    rows: int,
    cols: int,
    spacing_m: float = GRID_SPACING_M,
    perturbation: float = 0.0,
    seed: int = DEFAULT_SEED,
) -> CityGraph:
    """Generates a grid city in a temporary directory and loads it."""
    with tempfile.TemporaryDirectory() as directory:
        vertices_path, edges_path = generate_grid_city(
            rows,
            cols,
            Path(directory) / "vertices.txt",
            Path(directory) / "edges.txt",
            spacing_m,
            perturbation,
            seed,
        )
        return load_city_graph(vertices_path, edges_path)
