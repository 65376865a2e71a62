import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gridtrees.lattice import Vertex, diamond, induced_grid_graph, rectangle  # noqa: E402
from gridtrees.polyomino import random_simple_grid_graph, simple_grid_graphs  # noqa: E402

TIPS = [Vertex(0, 8), Vertex(0, -8), Vertex(8, 0), Vertex(-8, 0)]


def ring(width, height):
    """Boundary cycle of a width x height vertex rectangle (no interior)."""
    return induced_grid_graph(
        (x, y) for x in range(width) for y in range(height)
        if x in (0, width - 1) or y in (0, height - 1)
    )


@pytest.fixture(scope="session")
def square12():
    return rectangle(12, 12)


@pytest.fixture(scope="session")
def diamond8():
    return diamond(8)


@pytest.fixture(scope="session")
def trimmed_diamond(diamond8):
    return diamond8.subgraph(diamond8.vertices - set(TIPS))


@pytest.fixture(scope="session")
def c8():
    return ring(3, 3)


@pytest.fixture(scope="session")
def simple_upto8():
    return list(simple_grid_graphs(8))


@pytest.fixture(scope="session")
def random_polyominoes():
    rng = random.Random(20240611)
    return [random_simple_grid_graph(rng.randint(1, 40), rng) for _ in range(60)]


_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    name = item.name
    if name.startswith("test_criterion_") and (report.when == "call" or report.failed):
        number = int(name.split("_")[2])
        label = name.split("_", 3)[3].replace("_", " ")
        passed = report.passed and _criteria.get(number, (None, True))[1]
        _criteria[number] = (label, passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        label, passed = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {label}: {'PASS' if passed else 'FAIL'}")
