"""This module contains the parser and the emitter for Google Maps
direction URLs, e.g.
https://www.google.com/maps/dir/6.2,-75.57/6.25,-75.6/"""

import re
from dataclasses import dataclass
from typing import Sequence, Tuple
from urllib.parse import unquote, urlsplit

from config import GMAPS_DIR_PREFIX, URL_PRECISION
from helpers.city_graph import GeoPoint
from helpers.errors import InvalidUrlError, TooFewPointsError

COORDINATE_PATTERN = re.compile(
    r"^([+-]?\d+(?:\.\d+)?)\s*,\s*\+?([+-]?\d+(?:\.\d+)?)$"
)
# Viewport and encoded map state; they carry no waypoints.
IGNORED_SEGMENT_PREFIXES = ("@", "data=")


@dataclass(frozen=True)
class WaypointRequest:
    """The points of a direction URL, in URL order."""

    points: Tuple[GeoPoint, ...]
    raw_url: str

    def __post_init__(self) -> None:
        if len(self.points) < 2:
            raise TooFewPointsError(len(self.points))

    def __len__(self) -> int:
        return len(self.points)


def parse_gmaps_url(url: str) -> WaypointRequest:
    """
    Reads the `lat,lon` segments that follow the `/dir/` segment of a
    Google Maps URL. The scheme and host are optional.

    Raises:
        InvalidUrlError: An unreadable URL, no `/dir/` segment, a
            segment that is not a coordinate pair, or no coordinate pair
            at all.
        TooFewPointsError: Only one coordinate pair.
        CoordinateOutOfRangeError: A latitude or longitude out of range.
    """
    try:
        segments = urlsplit(url.strip()).path.split("/")
    except ValueError as error:
        raise InvalidUrlError(f"Unreadable URL {url!r}") from error
    if "dir" not in segments:
        raise InvalidUrlError(f"No /dir/ segment in {url!r}")

    points = []
    for segment in segments[segments.index("dir") + 1 :]:
        segment = unquote(segment).strip()
        if not segment or segment.startswith(IGNORED_SEGMENT_PREFIXES):
            continue
        match = COORDINATE_PATTERN.match(segment)
        if match is None:
            raise InvalidUrlError(f"{segment!r} is not a lat,lon pair")
        points.append(GeoPoint(float(match.group(1)), float(match.group(2))))

    if not points:
        raise InvalidUrlError(f"No coordinates in {url!r}")
    return WaypointRequest(tuple(points), url)


def format_point(point: GeoPoint) -> str:
    return f"{point.lat:.{URL_PRECISION}f},{point.lon:.{URL_PRECISION}f}"


def emit_gmaps_url(points: Sequence[GeoPoint]) -> str:
    """Writes the points, in the given order, as a direction URL."""
    if len(points) < 2:
        raise TooFewPointsError(len(points))
    return GMAPS_DIR_PREFIX + "/".join(map(format_point, points)) + "/"
