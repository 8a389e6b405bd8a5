"""Residuated lattices on the unit interval and the flavor semirings built on them.

Four logics are supported: ``boolean`` (the two-element sublattice), ``godel``,
``lukasiewicz`` and ``product``.  A :class:`LogicSpec` bundles one of them with a
flavor, i.e. the choice of the additive operation (``join`` or the dual
t-conorm ``conorm``) and of the multiplicative one (``tnorm`` or lattice
``meet``) used when relations are composed.

Truth values are :class:`fractions.Fraction` in exact mode and ``float`` in
float mode.  Every operation of the four logics is closed over the rationals,
so exact mode never rounds.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .errors import ConfigurationError, SupportError

TruthValue = Union[Fraction, float]

LOGICS = ("boolean", "godel", "lukasiewicz", "product")
SUMS = ("join", "conorm")
PRODUCTS = ("tnorm", "meet")
MODES = ("exact", "float")

ZERO = Fraction(0)
ONE = Fraction(1)


def grid(logic: str, steps: int = 8) -> tuple[Fraction, ...]:
    """Rational grid {0, 1/steps, ..., 1}; just {0, 1} for boolean logic."""
    if logic == "boolean":
        return (ZERO, ONE)
    return tuple(Fraction(k, steps) for k in range(steps + 1))


# Raw operations.  They work on any mix of Fraction/float and never check ranges.

def _tnorm(logic, x, y):
    if logic == "lukasiewicz":
        return max(x + y - 1, 0 * x)
    if logic == "product":
        return x * y
    return min(x, y)


def _conorm(logic, x, y):
    if logic == "lukasiewicz":
        return min(1 + 0 * x, x + y)
    if logic == "product":
        return x + y - x * y
    return max(x, y)


def _residuum(logic, x, y):
    if x <= y:
        return 1 + 0 * x
    if logic == "lukasiewicz":
        return 1 - x + y
    if logic == "product":
        return y / x
    return y  # godel; boolean is the {0,1} restriction


@functools.lru_cache(maxsize=None)
def semiring_violation(logic: str, sum_: str, prod: str) -> str | None:
    """Check the flavor semiring laws on the rational grid.

    Returns a human readable description of the first violated law, or None
    when (grid, prod, 1, sum) is a commutative semiring with distributivity.
    """
    plus = (lambda x, y: max(x, y)) if sum_ == "join" else functools.partial(_conorm, logic)
    times = (lambda x, y: min(x, y)) if prod == "meet" else functools.partial(_tnorm, logic)
    pts = grid(logic)
    for x in pts:
        if times(x, ONE) != x:
            return f"unit law fails: {x} x 1 != {x}"
    for x, y in itertools.product(pts, repeat=2):
        if times(x, y) != times(y, x):
            return f"product not commutative at ({x}, {y})"
        if plus(x, y) != plus(y, x):
            return f"sum not commutative at ({x}, {y})"
    for x, y, z in itertools.product(pts, repeat=3):
        if times(times(x, y), z) != times(x, times(y, z)):
            return f"product not associative at ({x}, {y}, {z})"
        if plus(plus(x, y), z) != plus(x, plus(y, z)):
            return f"sum not associative at ({x}, {y}, {z})"
        if times(x, plus(y, z)) != plus(times(x, y), times(x, z)):
            return f"{prod} does not distribute over {sum_} at ({x}, {y}, {z})"
    return None


@dataclass(frozen=True)
class LogicSpec:
    """A residuated lattice on [0, 1] together with a composition flavor.

    >>> spec = LogicSpec("product")
    >>> spec.tnorm(spec.tnorm(Fraction(1, 2), Fraction(1, 2)), Fraction(1, 2))
    Fraction(1, 8)

    Combinations whose flavor is not a semiring are rejected unless
    ``check=False``; unchecked specs still evaluate every operation but the
    results of composition need not be associative.
    """

    logic: str = "product"
    sum: str = "join"
    prod: str = "tnorm"
    mode: str = "exact"
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        for value, allowed, what in (
            (self.logic, LOGICS, "logic"),
            (self.sum, SUMS, "flavor sum"),
            (self.prod, PRODUCTS, "flavor product"),
            (self.mode, MODES, "arithmetic mode"),
        ):
            if value not in allowed:
                raise ConfigurationError(f"unknown {what} {value!r}; expected one of {', '.join(allowed)}")
        if self.check:
            problem = semiring_violation(self.logic, self.sum, self.prod)
            if problem is not None:
                raise ConfigurationError(
                    f"flavor ({self.sum}, {self.prod}) is not a semiring under {self.logic} logic: {problem}"
                )

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    @property
    def is_semiring(self) -> bool:
        return semiring_violation(self.logic, self.sum, self.prod) is None

    @property
    def top(self) -> TruthValue:
        return ONE if self.exact else 1.0

    @property
    def bottom(self) -> TruthValue:
        return ZERO if self.exact else 0.0

    def with_mode(self, mode: str) -> "LogicSpec":
        return LogicSpec(self.logic, self.sum, self.prod, mode, self.check)

    def value(self, x) -> TruthValue:
        """Coerce ``x`` (int, Fraction, float or text such as ``"1/2"``/``"0.7"``) to a truth value.

        Decimal text converts exactly in exact mode.  Raises SupportError when
        the value is outside [0, 1], or outside {0, 1} for boolean logic.
        """
        try:
            if isinstance(x, str):
                q = Fraction(x.strip())
            elif isinstance(x, float):
                q = x
            else:
                q = Fraction(x)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise SupportError(f"not a truth value: {x!r}") from exc
        if not 0 <= q <= 1:
            raise SupportError(f"truth value {x!r} outside [0, 1]")
        if self.logic == "boolean" and q not in (0, 1):
            raise SupportError(f"boolean logic only admits 0 and 1, got {x!r}")
        if self.exact:
            return Fraction(q)
        return float(q)

    # lattice operations

    def tnorm(self, x, y):
        return _tnorm(self.logic, x, y)

    def residuum(self, x, y):
        return _residuum(self.logic, x, y)

    def biresiduum(self, x, y):
        return min(self.residuum(x, y), self.residuum(y, x))

    def conorm(self, x, y):
        return _conorm(self.logic, x, y)

    @staticmethod
    def meet(x, y):
        return min(x, y)

    @staticmethod
    def join(x, y):
        return max(x, y)

    # flavor semiring

    def times(self, x, y):
        if self.prod == "meet":
            return min(x, y)
        return _tnorm(self.logic, x, y)

    def plus(self, x, y):
        if self.sum == "join":
            return max(x, y)
        return _conorm(self.logic, x, y)

    def flavor_sum(self, xs: Iterable) -> TruthValue:
        """Fold the flavor sum over ``xs`` left to right; the empty sum is bottom."""
        acc = self.bottom
        for x in xs:
            acc = self.plus(acc, x)
        return acc

    def flavor_prod(self, xs: Iterable) -> TruthValue:
        acc = self.top
        for x in xs:
            acc = self.times(acc, x)
        return acc

    def is_bivalent(self, x) -> bool:
        return x == 0 or x == 1

    def format(self, x) -> str:
        """Exact ``p/q`` text in exact mode, 17 significant digits in float mode."""
        if self.exact:
            q = Fraction(x)
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        return format(float(x), ".17g")


def tnorm(spec: LogicSpec, x, y):
    return spec.tnorm(x, y)


def residuum(spec: LogicSpec, x, y):
    """Largest z with tnorm(x, z) <= y."""
    return spec.residuum(x, y)


def biresiduum(spec: LogicSpec, x, y):
    return spec.biresiduum(x, y)


def flavor_sum(spec: LogicSpec, xs: Iterable):
    return spec.flavor_sum(xs)


def accepted_flavors(logic: str) -> list[tuple[str, str]]:
    """All (sum, prod) pairs that form a semiring under ``logic``."""
    return [(s, p) for s in SUMS for p in PRODUCTS if semiring_violation(logic, s, p) is None]
