"""This module contains the exceptions raised by the route planner."""


class RoutePlannerError(Exception):
    """Base class for every error the route planner raises."""


class GraphFileError(RoutePlannerError):
    """Raised when a vertex or edge file cannot be turned into a graph."""


class MissingFileError(GraphFileError):
    def __init__(self, path: str):
        self.path = path
        super().__init__(f"Graph file not found or unreadable: {path}")


class MalformedLineError(GraphFileError):
    def __init__(self, path: str, line_number: int, reason: str):
        self.path = path
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"{path}, line {line_number}: {reason}")


class UnknownEndpointError(GraphFileError):
    def __init__(self, path: str, line_number: int, vertex_id: int):
        self.path = path
        self.line_number = line_number
        self.vertex_id = vertex_id
        super().__init__(
            f"{path}, line {line_number}: edge references unknown vertex "
            f"{vertex_id}"
        )


class EmptyGraphError(GraphFileError):
    def __init__(self, message: str = "The graph has no vertices"):
        super().__init__(message)


class UnknownVertexError(RoutePlannerError, KeyError):
    def __init__(self, vertex_id: int):
        self.vertex_id = vertex_id
        super().__init__(f"Vertex {vertex_id} is not in the graph")

    def __str__(self) -> str:
        return self.args[0]


class UnreachableError(RoutePlannerError):
    def __init__(self, source: int, target: int):
        self.source = source
        self.target = target
        super().__init__(f"Vertex {target} is unreachable from {source}")


class DisconnectedError(RoutePlannerError):
    """Raised when a tour needs a distance the closure does not have."""


class UnreachableLegError(DisconnectedError):
    def __init__(self, i: int, j: int):
        self.i = i
        self.j = j
        super().__init__(f"No path from terminal {i} to terminal {j}")


class TooLargeError(RoutePlannerError):
    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(
            f"{n} terminals exceed the exact solver limit of {cap}"
        )


class MissingPathError(RoutePlannerError):
    def __init__(self, i: int, j: int):
        self.i = i
        self.j = j
        super().__init__(f"No stored path from terminal {i} to terminal {j}")


class InvalidUrlError(RoutePlannerError, ValueError):
    """Raised when a string is not a Google Maps direction URL."""


class TooFewPointsError(RoutePlannerError, ValueError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"At least 2 points are needed, got {count}")


class CoordinateOutOfRangeError(RoutePlannerError, ValueError):
    def __init__(self, lat: float, lon: float):
        self.lat = lat
        self.lon = lon
        super().__init__(f"Coordinate out of range: {lat}, {lon}")


class InvalidDimensionsError(RoutePlannerError, ValueError):
    """Raised when a generated grid cannot hold two vertices."""
