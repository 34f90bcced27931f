"""This module contains the Controller class.
The Controller class is used to run a planning session: it reads the
URL and the menu choices, keeps the subgraph cache and prints the
routes."""

import logging
import time
from typing import Callable, List, Optional

import click

from config import (
    DISCONNECTED_NOTICE,
    DUPLICATE_POINT_NOTICE,
    EXIT_INPUTS,
    EXTREME_MODE_INPUT,
    EXTREME_MODE_WARNING,
    GRAPH_TIME_MESSAGE,
    GRAPH_WARNING,
    INITIALIZING_MESSAGE,
    INVALID_OPTION_MESSAGE,
    INVALID_URL_MESSAGE,
    LOAD_TIME_DECIMALS,
    MENU_EXACT_LIMIT,
    MENU_HEADER,
    MENU_OPTIONS,
    ROUTE_TIME_DECIMALS,
    ROUTE_TIME_MESSAGE,
    SUBGRAPH_TIME_MESSAGE,
    TOO_LARGE_MESSAGE,
    URL_PROMPT,
)
from helpers.city_graph import CityGraph, load_city_graph
from helpers.errors import RoutePlannerError, TooLargeError
from helpers.path_finder import ClosureMatrix, TerminalSet, build_closure
from helpers.session_storage import SessionSettings, SessionState
from helpers.tour_solvers import (
    FAST,
    NORMAL,
    Tour,
    expand_tour,
    solve_best_of_both,
    solve_exact,
    solve_natural,
    solve_nearest_neighbor,
    tour_points,
)
from helpers.url_codec import WaypointRequest, emit_gmaps_url, parse_gmaps_url

logger = logging.getLogger(__name__)

LineReader = Callable[[], Optional[str]]
Echo = Callable[[str], None]


def stdin_line_reader() -> LineReader:
    """Returns a reader of the lines typed by the user. Bytes that are
    not valid text are replaced, and the reader returns None at end of
    input."""
    stream = click.get_text_stream("stdin", errors="replace")

    def read_line() -> Optional[str]:
        line = stream.readline()
        if line == "":
            return None
        return line.rstrip("\r\n")

    return read_line


class Controller:
    """This class is used to manage the session's data and user input."""

    def __init__(
        self,
        graph: CityGraph,
        settings: SessionSettings = SessionSettings(),
        read_line: Optional[LineReader] = None,
        echo: Echo = click.echo,
    ):
        self.settings = settings
        self.state = SessionState(graph, extreme=settings.extreme)
        self.read_line = read_line or stdin_line_reader()
        self.echo = echo

    @property
    def exact_cap(self) -> Optional[int]:
        return None if self.state.extreme else self.settings.exact_cap

    def warn(self, message: str) -> None:
        self.echo(click.style(message, fg="yellow"))

    def complain(self, message: str) -> None:
        self.echo(click.style(message, fg="red"))

    def load_url(self, url: str) -> WaypointRequest:
        """
        Parses a URL, snaps its points to the graph and makes it the
        current request.

        Note:
            Points that snap to the same vertex are merged, with a
            notice for each merged point.
        """
        request = parse_gmaps_url(url)
        terminals, merged = TerminalSet.snap(self.state.graph, request.points)
        for position in merged:
            self.warn(DUPLICATE_POINT_NOTICE.format(position=position + 1))
        self.state.set_request(request, terminals)
        logger.info("Loaded a request with %d terminals", len(terminals))
        self.warn(GRAPH_WARNING)
        return request

    def request_url(self) -> bool:
        """
        Asks for URLs until a valid one is given.

        Returns:
            bool: False when the user asked to exit.
        """
        self.echo(URL_PROMPT)
        while True:
            line = self.read_line()
            if line is None:
                return False
            text = line.strip()
            if text in EXIT_INPUTS:
                return False
            if text == EXTREME_MODE_INPUT:
                self.state.enable_extreme_mode()
                self.warn(EXTREME_MODE_WARNING)
                continue
            try:
                self.load_url(text)
            except RoutePlannerError as error:
                logger.debug("Rejected URL %r: %s", text, error)
                self.complain(INVALID_URL_MESSAGE)
                continue
            return True

    def menu_options(self) -> List[str]:
        """Returns the menu keys on offer for the current request. The
        exact option is hidden above MENU_EXACT_LIMIT terminals unless
        extreme mode is on."""
        options = ["1", "2", "3", "4"]
        if self.state.extreme or self.state.terminal_count <= MENU_EXACT_LIMIT:
            options.append("5")
        return options + ["c", "x"]

    def show_menu(self) -> str:
        """Prints the menu and returns a valid choice."""
        options = self.menu_options()
        self.echo(MENU_HEADER)
        for key in options:
            self.echo(MENU_OPTIONS[key])
        while True:
            line = self.read_line()
            if line is None:
                return "x"
            choice = line.strip().lower()
            if choice in options:
                return choice
            self.complain(INVALID_OPTION_MESSAGE)

    def get_closure(self) -> ClosureMatrix:
        """Returns the subgraph of the current request, building it the
        first time it is needed."""
        if self.state.closure is None:
            closure = build_closure(
                self.state.graph,
                self.state.terminals,
                self.settings.astar_threshold,
                self.settings.heuristic,
            )
            self.state.store_closure(closure)
            seconds = f"{closure.build_seconds:.{ROUTE_TIME_DECIMALS}f}"
            self.echo(SUBGRAPH_TIME_MESSAGE.format(seconds=seconds))
        return self.state.closure

    def solve(self, choice: str, closure: Optional[ClosureMatrix]) -> Tour:
        terminals = self.state.terminals
        if choice == "1":
            return solve_natural(terminals, FAST)
        if choice == "2":
            return solve_natural(terminals, NORMAL, closure)
        if choice == "3":
            return solve_nearest_neighbor(closure)
        if choice == "4":
            return solve_best_of_both(terminals, closure)
        if choice == "5":
            return solve_exact(closure, cap=self.exact_cap)
        raise ValueError(f"Unknown menu choice {choice!r}")

    def execute_choice(self, choice: str) -> Optional[str]:
        """
        Runs the algorithm behind a menu choice and prints its route.

        Options 2 to 5 need the subgraph; when it has unreachable pairs
        the route falls back to option 1.

        Returns:
            Optional[str]: The printed Google Maps URL, or None when no
                route was computed.
        """
        closure = None
        if choice != "1":
            closure = self.get_closure()
            if not closure.is_connected:
                self.warn(DISCONNECTED_NOTICE)
                choice, closure = "1", None

        start = time.perf_counter()
        try:
            tour = self.solve(choice, closure)
        except TooLargeError as error:
            self.complain(TOO_LARGE_MESSAGE.format(cap=error.cap, n=error.n))
            return None
        seconds = f"{time.perf_counter() - start:.{ROUTE_TIME_DECIMALS}f}"
        self.echo(ROUTE_TIME_MESSAGE.format(seconds=seconds))
        return self.print_route(tour, closure)

    def print_route(
        self, tour: Tour, closure: Optional[ClosureMatrix]
    ) -> str:
        """Prints the distance (when known), the points in visiting
        order and the route URL, and returns the URL."""
        if tour.total_m is not None:
            self.echo(f"Total distance: {tour.total_m:.1f} m")
        points = tour_points(
            tour, self.state.terminals, self.state.point_echo
        )
        self.echo("Route:")
        for position, point in enumerate(points, start=1):
            self.echo(f" {position:>3}. {point.lat:.6f}, {point.lon:.6f}")
        if self.settings.verbose and closure is not None:
            vertices = expand_tour(tour, closure)
            self.echo("Street-level vertices: " + " ".join(map(str, vertices)))
        url = emit_gmaps_url(points)
        self.echo(f"Google Maps URL: {url}")
        return url

    def run(self) -> int:
        """Runs the interactive loop until the user exits."""
        if not self.request_url():
            return 0
        while True:
            choice = self.show_menu()
            if choice == "x":
                return 0
            if choice == "c":
                if not self.request_url():
                    return 0
                continue
            self.execute_choice(choice)

    def run_once(self, url: str, choice: str) -> int:
        """Plans a single route without prompting."""
        try:
            self.load_url(url)
        except RoutePlannerError as error:
            logger.debug("Rejected URL %r: %s", url, error)
            self.complain(INVALID_URL_MESSAGE)
            return 2
        if choice not in self.menu_options():
            self.complain(
                TOO_LARGE_MESSAGE.format(
                    cap=MENU_EXACT_LIMIT, n=self.state.terminal_count
                )
            )
            return 2
        return 0 if self.execute_choice(choice) is not None else 2


def run_session(
    vertices_path: str,
    edges_path: str,
    settings: SessionSettings = SessionSettings(),
    url: Optional[str] = None,
    choice: Optional[str] = None,
    read_line: Optional[LineReader] = None,
    echo: Echo = click.echo,
) -> int:
    """
    Loads the city's graph and runs a session on it.

    With `url` and `choice` a single route is planned without prompting.

    Returns:
        int: The process exit code; 1 when the graph cannot be loaded.
    """
    echo(INITIALIZING_MESSAGE)
    try:
        graph = load_city_graph(vertices_path, edges_path, settings.directed)
    except RoutePlannerError as error:
        echo(click.style(str(error), fg="red"))
        return 1
    seconds = f"{graph.load_seconds:.{LOAD_TIME_DECIMALS}f}"
    echo(GRAPH_TIME_MESSAGE.format(seconds=seconds))

    controller = Controller(graph, settings, read_line, echo)
    if url is not None:
        return controller.run_once(url, choice)
    return controller.run()
