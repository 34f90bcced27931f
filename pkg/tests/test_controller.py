import tempfile
import unittest
from pathlib import Path

from config import (
    DISCONNECTED_NOTICE,
    DUPLICATE_POINT_NOTICE,
    EXTREME_MODE_WARNING,
    GRAPH_WARNING,
    INITIALIZING_MESSAGE,
    INVALID_OPTION_MESSAGE,
    INVALID_URL_MESSAGE,
    MENU_HEADER,
    MENU_OPTIONS,
    TOO_LARGE_MESSAGE,
    URL_PROMPT,
)
from helpers.city_graph import GeoPoint
from helpers.controller import Controller, run_session
from helpers.grid_city import generate_grid_city
from helpers.session_storage import SessionSettings
from helpers.url_codec import emit_gmaps_url, parse_gmaps_url
from tests.fixtures import cached_grid, graph_from_rows

URL_LINE_PREFIX = "Google Maps URL: "
SUBGRAPH_LINE_PREFIX = "Time required to build subgraph"


class ScriptedSession:
    """Feeds prepared lines to a Controller and collects what it prints."""

    def __init__(self, lines):
        self.lines = iter(lines)
        self.output = []

    def read_line(self):
        return next(self.lines, None)

    def echo(self, message):
        self.output.append(message)

    def count(self, text):
        return sum(text in line for line in self.output)

    def urls(self):
        return [
            line[len(URL_LINE_PREFIX):]
            for line in self.output
            if line.startswith(URL_LINE_PREFIX)
        ]


def url_for(graph, vertex_ids):
    return emit_gmaps_url([graph.vertices[v] for v in vertex_ids])


class TestController(unittest.TestCase):
    def setUp(self):
        self.graph = cached_grid(6, 6, 0.2)
        self.url = url_for(self.graph, [1, 8, 15, 22, 29, 36])
        self.other_url = url_for(self.graph, [6, 11, 16, 21])

    def run_script(self, lines, settings=SessionSettings()):
        session = ScriptedSession(lines)
        controller = Controller(
            self.graph, settings, session.read_line, session.echo
        )
        return controller, session, controller.run()

    def test_exit_at_url_prompt(self):
        for lines in (["x"], ["X"], []):
            _, session, code = self.run_script(lines)
            self.assertEqual(code, 0)
            self.assertEqual(session.count(URL_PROMPT), 1)
            self.assertEqual(session.count(MENU_HEADER), 0)

    def test_invalid_then_valid_url(self):
        _, session, code = self.run_script(["google.com", self.url, "x"])
        self.assertEqual(code, 0)
        self.assertEqual(session.count(INVALID_URL_MESSAGE), 1)
        self.assertEqual(session.count(GRAPH_WARNING), 1)
        self.assertEqual(session.count(MENU_HEADER), 1)

    def test_points_merging_into_one_are_invalid(self):
        same_twice = url_for(self.graph, [8, 8])
        _, session, code = self.run_script([same_twice, "x"])
        self.assertEqual(code, 0)
        self.assertEqual(session.count(INVALID_URL_MESSAGE), 1)

    def test_duplicate_points_are_merged(self):
        url = url_for(self.graph, [1, 1, 8])
        controller, session, _ = self.run_script([url, "x"])
        self.assertEqual(controller.state.terminal_count, 2)
        self.assertEqual(
            session.count(DUPLICATE_POINT_NOTICE.format(position=2)), 1
        )

    def test_extreme_mode(self):
        controller, session, _ = self.run_script(
            ["extreme-mode", self.url, "x"]
        )
        self.assertEqual(session.count(EXTREME_MODE_WARNING), 1)
        self.assertEqual(session.count(URL_PROMPT), 1)
        self.assertTrue(controller.state.extreme)
        self.assertIsNone(controller.exact_cap)

    def test_exact_option_hidden_above_twenty_points(self):
        session = ScriptedSession(["5", "x"])
        controller = Controller(
            self.graph, SessionSettings(), session.read_line, session.echo
        )
        controller.load_url(url_for(self.graph, range(1, 22)))
        self.assertEqual(
            controller.menu_options(), ["1", "2", "3", "4", "c", "x"]
        )
        self.assertEqual(controller.show_menu(), "x")
        self.assertEqual(session.count(MENU_OPTIONS["5"]), 0)
        self.assertEqual(session.count(INVALID_OPTION_MESSAGE), 1)

        controller.state.enable_extreme_mode()
        self.assertIn("5", controller.menu_options())

        controller.load_url(url_for(self.graph, range(1, 21)))
        controller.state.extreme = False
        self.assertEqual(
            controller.menu_options(), ["1", "2", "3", "4", "5", "c", "x"]
        )

    def test_fast_mode_builds_no_subgraph(self):
        controller, session, _ = self.run_script([self.url, "1", "x"])
        self.assertEqual(controller.state.closure_builds, 0)
        self.assertEqual(session.count(SUBGRAPH_LINE_PREFIX), 0)
        self.assertEqual(session.count("Total distance"), 0)
        self.assertEqual(len(session.urls()), 1)

    def test_subgraph_is_built_once_per_url(self):
        controller, session, _ = self.run_script(
            [self.url, "5", "5", "2", "3", "4", "x"]
        )
        self.assertEqual(controller.state.closure_builds, 1)
        self.assertEqual(session.count(SUBGRAPH_LINE_PREFIX), 1)
        self.assertEqual(session.count("Total distance"), 5)

    def test_changing_url_drops_the_subgraph(self):
        controller, session, _ = self.run_script(
            [self.url, "3", "c", self.other_url, "3", "x"]
        )
        self.assertEqual(controller.state.closure_builds, 2)
        self.assertEqual(session.count(SUBGRAPH_LINE_PREFIX), 2)
        self.assertEqual(controller.state.terminal_count, 4)

    def test_invalid_menu_option(self):
        _, session, code = self.run_script([self.url, "9", "", "x"])
        self.assertEqual(code, 0)
        self.assertEqual(session.count(INVALID_OPTION_MESSAGE), 2)

    def test_printed_urls_parse_back(self):
        controller, session, _ = self.run_script(
            [self.url, "1", "2", "3", "4", "5", "x"]
        )
        entered = parse_gmaps_url(self.url).points
        urls = session.urls()
        self.assertEqual(len(urls), 5)
        for url in urls:
            points = parse_gmaps_url(url).points
            self.assertEqual(points[0], entered[0])
            self.assertEqual(points[-1], entered[0])
            self.assertEqual(len(points), len(entered) + 1)
            self.assertEqual(set(points), set(entered))

    def test_route_echoes_the_entered_points(self):
        ids = [1, 8, 15, 22]
        nudged = [
            GeoPoint(point.lat + 0.0001, point.lon - 0.0001)
            for point in (self.graph.vertices[v] for v in ids)
        ]
        url = emit_gmaps_url(nudged)
        controller, session, _ = self.run_script([url, "3", "x"])
        entered = parse_gmaps_url(url).points
        self.assertEqual(controller.state.point_echo, dict(zip(ids, entered)))
        printed = parse_gmaps_url(session.urls()[0]).points
        self.assertEqual(set(printed), set(entered))
        self.assertNotIn(self.graph.vertices[8], printed)

    def test_verbose_prints_street_vertices(self):
        _, session, _ = self.run_script(
            [self.url, "3", "x"], SessionSettings(verbose=True)
        )
        self.assertEqual(session.count("Street-level vertices:"), 1)

    def test_exact_cap_message(self):
        session = ScriptedSession([])
        controller = Controller(
            self.graph,
            SessionSettings(exact_cap=3),
            session.read_line,
            session.echo,
        )
        controller.load_url(self.other_url)
        self.assertIsNone(controller.execute_choice("5"))
        self.assertEqual(
            session.count(TOO_LARGE_MESSAGE.format(cap=3, n=4)), 1
        )

    def test_disconnected_points_fall_back_to_fast_mode(self):
        graph = graph_from_rows(
            [
                "1 6.200 -75.570",
                "2 6.201 -75.570",
                "3 6.210 -75.560",
                "4 6.211 -75.560",
            ],
            ["1 2 120", "3 4 120"],
        )
        session = ScriptedSession([])
        controller = Controller(
            graph, SessionSettings(), session.read_line, session.echo
        )
        controller.load_url(url_for(graph, [1, 3, 2]))
        url = controller.execute_choice("4")
        self.assertIsNotNone(url)
        self.assertEqual(session.count(DISCONNECTED_NOTICE), 1)
        self.assertEqual(session.count("Total distance"), 0)
        self.assertEqual(len(parse_gmaps_url(url).points), 4)

    def test_run_once(self):
        session = ScriptedSession([])
        controller = Controller(
            self.graph, SessionSettings(), session.read_line, session.echo
        )
        self.assertEqual(controller.run_once(self.url, "2"), 0)
        self.assertEqual(controller.run_once("google.com", "1"), 2)
        url = url_for(self.graph, range(1, 22))
        self.assertEqual(controller.run_once(url, "5"), 2)
        self.assertEqual(len(session.urls()), 1)


class TestRunSession(unittest.TestCase):
    def test_plans_one_route(self):
        url = (
            "https://www.google.com/maps/dir/6.2,-75.6/6.203,-75.597/"
            "6.201,-75.599/"
        )
        session = ScriptedSession([])
        with tempfile.TemporaryDirectory() as directory:
            vertices_path, edges_path = generate_grid_city(
                5,
                5,
                Path(directory) / "vertices.txt",
                Path(directory) / "edges.txt",
            )
            code = run_session(
                vertices_path,
                edges_path,
                url=url,
                choice="4",
                read_line=session.read_line,
                echo=session.echo,
            )
        self.assertEqual(code, 0)
        self.assertEqual(session.output[0], INITIALIZING_MESSAGE)
        self.assertEqual(session.count("Time required to build graph"), 1)
        self.assertEqual(len(session.urls()), 1)

    def test_unreadable_graph(self):
        session = ScriptedSession(["x"])
        code = run_session(
            "absent-vertices.txt",
            "absent-edges.txt",
            read_line=session.read_line,
            echo=session.echo,
        )
        self.assertEqual(code, 1)
        self.assertEqual(session.count("absent-vertices.txt"), 1)


if __name__ == "__main__":
    unittest.main()
