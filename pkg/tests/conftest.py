from __future__ import annotations

from pathlib import Path

import pytest

from lexshell.io import parse_instance
from lexshell.poset import build_poset

FIXTURES = Path(__file__).parent / "fixtures"


def load(name: str):
    return parse_instance((FIXTURES / name).read_text())


@pytest.fixture
def fig1():
    return load("fig1.json")


@pytest.fixture
def exac():
    return load("exac.json")


@pytest.fixture
def counterexample():
    return load("nongraded_counterexample.json")


def chain_poset(n: int):
    names = [str(i) for i in range(n)]
    return build_poset(names, list(zip(names, names[1:])))


def double_chain(first: int = 1, second: int = 2):
    """0 < x1 < x2 < 1 and 0 < y1 < y2 < 1, diverging at the bottom."""
    p = build_poset(
        ["0", "x1", "y1", "x2", "y2", "1"],
        [("0", "x1"), ("x1", "x2"), ("x2", "1"), ("0", "y1"), ("y1", "y2"), ("y2", "1")],
    )
    labels = {
        ("0", "x1"): first, ("x1", "x2"): 1, ("x2", "1"): 1,
        ("0", "y1"): second, ("y1", "y2"): 1, ("y2", "1"): 1,
    }
    return p, labels


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
