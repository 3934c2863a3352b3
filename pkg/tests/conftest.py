"""Shared test helpers and the acceptance summary section."""

import random

from rtspan.cli import generate_graph

ACCEPTANCE_LINES = []


def record(line: str):
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


def random_graph(tag: str, n: int, m: int, strongly_connected: bool = True):
    """Deterministic random graph keyed by a string tag.  Weights stay on
    the 1/16 grid so shortest-path sums are exact binary floats and every
    oracle comparison can be equality, not tolerance."""
    rng = random.Random(f"fixture:{tag}")
    return generate_graph(n, m, rng, strongly_connected=strongly_connected)
