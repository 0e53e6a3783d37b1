from fractions import Fraction
from pathlib import Path

import pytest

from roadcolor.laws import ColoredLaw
from roadcolor.mapping import RoadColoring

FIXTURES = Path(__file__).parent / "fixtures"

# Collected by tests/test_acceptance.py, printed at the end of the run.
ACCEPTANCE_LINES: list[str] = []


def three_site_coloring() -> RoadColoring:
    return RoadColoring.from_images((3, 3, 1), (2, 1, 2))


def rotation_coloring() -> RoadColoring:
    return RoadColoring.from_images((3, 1, 2), (2, 3, 1))


def five_site_coloring() -> RoadColoring:
    return RoadColoring.from_images((2, 3, 4, 1, 5), (2, 5, 5, 2, 4))


def periodic_rotations() -> RoadColoring:
    return RoadColoring.from_images((3, 4, 1, 2), (4, 3, 2, 1))


def periodic_collapsing() -> RoadColoring:
    return RoadColoring.from_images((3, 4, 1, 2), (3, 3, 2, 1))


def law(coloring: RoadColoring, *probs) -> ColoredLaw:
    if not probs:
        return ColoredLaw.uniform(coloring)
    return ColoredLaw(coloring, tuple(Fraction(p) for p in probs))


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
