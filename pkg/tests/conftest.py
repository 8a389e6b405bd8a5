import sys
from fractions import Fraction
from pathlib import Path

import pytest

from omegarel import FiniteSet, LogicSpec, MultiDiagram, OmegaSet, Relation

SPECS = Path(__file__).resolve().parent.parent / "specs"
HALF = Fraction(1, 2)

F_ROWS = {("1", "0", "0"): 1, ("0", "1", "0"): HALF, ("1", "1", "0"): HALF,
          ("0", "0", "0"): 1, ("0", "0", "1"): 1, ("1", "1", "1"): 1}
G_ROWS = {("0", "1", "0", "1"): 1, ("1", "1", "0", "1"): HALF,
          ("0", "0", "0", "1"): 1, ("1", "1", "1", "0"): HALF}
H_ROWS = {("1", "1", "1"): HALF, ("0", "0", "1"): 1, ("1", "0", "1"): HALF}

EXAMPLE1_LIMIT = {
    ("0", "1", "0", "1", "1"): Fraction(1, 2),
    ("1", "1", "0", "1", "1"): Fraction(1, 8),
    ("0", "0", "0", "1", "1"): Fraction(1),
    ("1", "1", "1", "0", "1"): Fraction(1, 4),
}


@pytest.fixture
def product():
    return LogicSpec("product")


@pytest.fixture
def bit():
    return FiniteSet("Bit", ["0", "1"])


@pytest.fixture
def ex1(product, bit):
    v = lambda n: (n, bit)
    f = Relation("f", [v("A"), v("B")], [v("C")], {k: Fraction(w) for k, w in F_ROWS.items()})
    g = Relation("g", [v("A"), v("B")], [v("C"), v("D")], {k: Fraction(w) for k, w in G_ROWS.items()})
    h = Relation("h", [v("A"), v("C")], [v("E")], {k: Fraction(w) for k, w in H_ROWS.items()})
    omega = OmegaSet.crisp(product, bit)
    D = MultiDiagram([(n, omega) for n in "ABCDE"], [f, g, h], ["A"], name="Ex1")
    return {"f": f, "g": g, "h": h, "D": D, "omega": omega}


@pytest.fixture
def example1_path():
    return SPECS / "example1.rel"


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
