"""This module contains the SessionSettings and SessionState classes,
which are used to store what a planning session knows between menu
choices."""

from dataclasses import dataclass
from typing import Dict, Optional

from config import ASTAR_THRESHOLD, DEFAULT_HEURISTIC, EXACT_CAP
from helpers.city_graph import CityGraph, GeoPoint, VertexId
from helpers.path_finder import ClosureMatrix, TerminalSet
from helpers.url_codec import WaypointRequest


@dataclass(frozen=True)
class SessionSettings:
    """Options given on the command line."""

    directed: bool = False
    heuristic: str = DEFAULT_HEURISTIC
    astar_threshold: int = ASTAR_THRESHOLD
    exact_cap: Optional[int] = EXACT_CAP
    extreme: bool = False
    verbose: bool = False


class SessionState:
    """This class is used to store the graph, the current request and
    the subgraph built for it."""

    def __init__(self, graph: CityGraph, extreme: bool = False) -> None:
        self.graph = graph
        self.request: Optional[WaypointRequest] = None
        self.terminals: Optional[TerminalSet] = None
        self.closure: Optional[ClosureMatrix] = None
        self.extreme = extreme
        self.point_echo: Dict[VertexId, GeoPoint] = {}
        self.closure_builds = 0

    @property
    def terminal_count(self) -> int:
        return 0 if self.terminals is None else len(self.terminals)

    def set_request(
        self, request: WaypointRequest, terminals: TerminalSet
    ) -> None:
        """Replaces the current request. The stored subgraph belongs to
        the old terminals, so it is dropped."""
        self.request = request
        self.terminals = terminals
        self.point_echo = terminals.point_echo
        self.clear_closure()

    def store_closure(self, closure: ClosureMatrix) -> None:
        self.closure = closure
        self.closure_builds += 1

    def clear_closure(self) -> None:
        self.closure = None

    def enable_extreme_mode(self) -> None:
        self.extreme = True
