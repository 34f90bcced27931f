"""This module contains the configuration variables for the application."""

METERS_PER_DEGREE = 111320.0

ASTAR_THRESHOLD = 5
DEFAULT_HEURISTIC = "euclidean"
HEURISTICS = ["euclidean", "manhattan", "zero"]

EXACT_CAP = 24
MENU_EXACT_LIMIT = 20

URL_PRECISION = 6
GMAPS_DIR_PREFIX = "https://www.google.com/maps/dir/"

LOAD_TIME_DECIMALS = 3
ROUTE_TIME_DECIMALS = 4

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"

# Medellin sits here; generated grids start from the same corner.
GRID_ORIGIN_LAT = 6.2
GRID_ORIGIN_LON = -75.6
GRID_SPACING_M = 100.0

BENCH_CSV_COLUMNS = [
    "algorithm",
    "n",
    "seconds",
    "meters",
    "dp_states",
    "seed",
]
DEFAULT_BENCH_NS = [5, 10, 15, 20]
DEFAULT_BENCH_TRIALS = 5
DEFAULT_QUALITY_N = 12
DEFAULT_SEED = 2016

INITIALIZING_MESSAGE = "Initializing ..."
GRAPH_TIME_MESSAGE = "Time required to build graph: {seconds}s"
SUBGRAPH_TIME_MESSAGE = "Time required to build subgraph: {seconds}s"
ROUTE_TIME_MESSAGE = "Time required to compute route: {seconds}s"
URL_PROMPT = (
    "Paste here the Google Maps URL containing the points you want to "
    "visit.\nRemember that the first point will be also the last one in "
    "the tour:"
)
INVALID_URL_MESSAGE = "Invalid URL! Try again:"
INVALID_OPTION_MESSAGE = "Invalid option! Try again:"
EXIT_INPUTS = ["x", "X"]
EXTREME_MODE_INPUT = "extreme-mode"
EXTREME_MODE_WARNING = (
    "WARNING: Extreme mode is on. The exact option will be offered for any "
    "number of points, and it may take hours or run out of memory.\n"
    "Now paste the URL to continue."
)
GRAPH_WARNING = (
    "WARNING: The distance is computed using our graph of the city, which "
    "might\ndiffer from the one used by Google Maps. This means that what "
    "for us is the\nshortest tour may not be the same for them, also "
    "because they might\nhave used a different way to complete the paths "
    "between every\npair of vertices"
)
DISCONNECTED_NOTICE = (
    "Some of the points are not connected between them in our graph of "
    "the city,\nso we cannot calculate a distance. We will use the first "
    "option\n(Natural approximation fast mode) to compute a possible route."
)
DUPLICATE_POINT_NOTICE = (
    "Point {position} snaps to the same place as an earlier point and "
    "was merged with it."
)
TOO_LARGE_MESSAGE = (
    "The exact option is limited to {cap} points and this URL has {n}. "
    'Write "extreme-mode" at the URL prompt to remove the limit.'
)
MENU_HEADER = "Choose (write the number and press enter):"
MENU_OPTIONS = {
    "1": (
        " 1. Natural approximation fast mode -- won't show total distance\n"
        "    (ALMOST INSTANT)"
    ),
    "2": (
        " 2. Natural approximation normal mode -- might get a better tour "
        "than\n    option 1 (medium)"
    ),
    "3": " 3. Nearest Neighbor (medium)",
    "4": " 4. The best of both (options 2 and 3 combined) (medium)",
    "5": (
        " 5. Exact -- potentially very slow, about 30 seconds for 20 "
        "points\n    (SLOW)"
    ),
    "c": " c. Change URL",
    "x": " x. Exit",
}
