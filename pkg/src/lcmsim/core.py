"""Exact geometry and bookkeeping for point robots on the rational line.

Every location, frame factor and destination is a `fractions.Fraction`, so
equality and ordering are decidable and all arithmetic is exact.  Values are
immutable after construction and operations are pure functions, safe to share
between threads.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Callable, Mapping

__all__ = [
    "EmptyUniverse",
    "Permutation",
    "Position",
    "RobotId",
    "RobotUniverse",
    "Scalar",
    "ScalarLike",
    "Side",
    "Similarity",
    "as_scalar",
    "format_scalar",
    "parse_robot_id",
    "parse_scalar",
    "permute_position",
    "spectrum",
]

Scalar = Fraction
ScalarLike = int | str | Fraction

_SCALAR_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_ROBOT_ID_RE = re.compile(r"^([LR])(\d+)$")


class EmptyUniverse(ValueError):
    """An operation that needs at least one robot per pile got none."""


def parse_scalar(text: str) -> Fraction:
    """Parse "num/den" (or a bare integer).  Decimal notation is rejected:
    values cross every interface in exact form."""
    s = text.strip()
    if not _SCALAR_RE.match(s):
        raise ValueError(f"invalid scalar {text!r}: expected 'num' or 'num/den'")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ValueError(f"invalid scalar {text!r}: zero denominator")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_scalar(q: Fraction) -> str:
    """Canonical "num/den" string; integers render with denominator 1."""
    return f"{q.numerator}/{q.denominator}"


def as_scalar(value: ScalarLike) -> Fraction:
    """Coerce exact inputs to Fraction.  Floats are refused on purpose."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"not an exact scalar: {value!r}")


class Side(Enum):
    LEFT = "L"
    RIGHT = "R"

    @property
    def other(self) -> Side:
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


@dataclass(frozen=True)
class RobotId:
    """A robot name: which pile it belongs to and its index within the pile."""

    side: Side
    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError("robot index must be >= 0")

    def __str__(self) -> str:
        return f"{self.side.value}{self.index}"

    def sort_key(self) -> tuple[str, int]:
        return (self.side.value, self.index)


def parse_robot_id(text: str) -> RobotId:
    m = _ROBOT_ID_RE.match(text.strip())
    if not m:
        raise ValueError(f"invalid robot id {text!r}: expected L<index> or R<index>")
    return RobotId(Side(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class RobotUniverse:
    """2n robots split into a left and a right pile of n each.

    pile_size 0 is constructible (so the empty-universe error paths can be
    exercised) but executions and adversaries reject it.
    """

    pile_size: int

    def __post_init__(self) -> None:
        if self.pile_size < 0:
            raise ValueError("pile size must be >= 0")

    @property
    def m(self) -> int:
        """Total robot count, always even."""
        return 2 * self.pile_size

    @cached_property
    def robots(self) -> tuple[RobotId, ...]:
        """All robots, left pile first, each pile in index order."""
        left = tuple(RobotId(Side.LEFT, i) for i in range(self.pile_size))
        right = tuple(RobotId(Side.RIGHT, i) for i in range(self.pile_size))
        return left + right

    def side_robots(self, side: Side) -> tuple[RobotId, ...]:
        return tuple(r for r in self.robots if r.side is side)

    def require_inhabited(self) -> None:
        if self.pile_size < 1:
            raise EmptyUniverse("universe must contain at least one robot per pile")


class Position:
    """Total map from robot id to location.  Partial assignments are rejected."""

    __slots__ = ("universe", "_loc")

    def __init__(self, universe: RobotUniverse, locations: Mapping[RobotId, ScalarLike]):
        loc = {r: as_scalar(v) for r, v in locations.items()}
        if set(loc) != set(universe.robots):
            missing = sorted(str(r) for r in universe.robots if r not in loc)
            extra = sorted(str(r) for r in loc if r not in set(universe.robots))
            raise ValueError(
                f"position must assign exactly the universe's robots"
                f" (missing {missing}, extra {extra})"
            )
        self.universe = universe
        self._loc = loc

    @classmethod
    def from_piles(
        cls, universe: RobotUniverse, left: ScalarLike, right: ScalarLike
    ) -> Position:
        """Left pile stacked at `left`, right pile stacked at `right`."""
        lv, rv = as_scalar(left), as_scalar(right)
        return cls(
            universe,
            {r: lv if r.side is Side.LEFT else rv for r in universe.robots},
        )

    def __getitem__(self, robot: RobotId) -> Fraction:
        return self._loc[robot]

    def items(self) -> tuple[tuple[RobotId, Fraction], ...]:
        return tuple((r, self._loc[r]) for r in self.universe.robots)

    def locations(self) -> tuple[Fraction, ...]:
        return tuple(self._loc[r] for r in self.universe.robots)

    def map_locations(self, fn: Callable[[Fraction], ScalarLike]) -> Position:
        return Position(self.universe, {r: fn(x) for r, x in self._loc.items()})

    def pile_location(self, side: Side) -> Fraction | None:
        """The single location shared by the whole pile, or None if scattered."""
        locs = {self._loc[r] for r in self.universe.side_robots(side)}
        if len(locs) == 1:
            return next(iter(locs))
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Position):
            return NotImplemented
        return self.universe == other.universe and self._loc == other._loc

    def __repr__(self) -> str:
        inner = ", ".join(f"{r}={format_scalar(x)}" for r, x in self.items())
        return f"Position({inner})"


class Permutation:
    """Bijection on robot ids, stored together with its inverse.

    Consistency (forward o inverse = identity = inverse o forward) is checked
    by full enumeration at construction; universes are small.
    """

    __slots__ = ("universe", "_fwd", "_inv")

    def __init__(self, universe: RobotUniverse, mapping: Mapping[RobotId, RobotId]):
        robots = set(universe.robots)
        fwd = dict(mapping)
        if set(fwd) != robots:
            raise ValueError("permutation must be defined on every robot")
        inv: dict[RobotId, RobotId] = {}
        for src, dst in fwd.items():
            if dst in inv:
                raise ValueError(f"permutation is not injective at {dst}")
            inv[dst] = src
        if set(inv) != robots:
            raise ValueError("permutation must map onto the same universe")
        for r in robots:
            if fwd[inv[r]] != r or inv[fwd[r]] != r:
                raise ValueError("permutation inverse check failed")
        self.universe = universe
        self._fwd = fwd
        self._inv = inv

    @classmethod
    def identity(cls, universe: RobotUniverse) -> Permutation:
        return cls(universe, {r: r for r in universe.robots})

    @classmethod
    def transposition(cls, universe: RobotUniverse, a: RobotId, b: RobotId) -> Permutation:
        mapping = {r: r for r in universe.robots}
        mapping[a], mapping[b] = b, a
        return cls(universe, mapping)

    def apply(self, robot: RobotId) -> RobotId:
        return self._fwd[robot]

    def unapply(self, robot: RobotId) -> RobotId:
        return self._inv[robot]

    def inverted(self) -> Permutation:
        return Permutation(self.universe, dict(self._inv))

    def mapping(self) -> dict[RobotId, RobotId]:
        return dict(self._fwd)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.universe == other.universe and self._fwd == other._fwd

    def __repr__(self) -> str:
        inner = ", ".join(f"{r}->{self._fwd[r]}" for r in self.universe.robots)
        return f"Permutation({inner})"


@dataclass(frozen=True)
class Similarity:
    """Frame transformation x -> factor * (x - center).  Zero factors are
    rejected: a zero factor encodes "not activated" and lives in demonic
    actions, never in a frame change."""

    factor: Fraction
    center: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "factor", as_scalar(self.factor))
        object.__setattr__(self, "center", as_scalar(self.center))
        if self.factor == 0:
            raise ValueError("similarity factor must be nonzero")

    def apply(self, x: ScalarLike) -> Fraction:
        return self.factor * (as_scalar(x) - self.center)

    def inverse(self) -> Similarity:
        # y = k*(x - t)  <=>  x = (1/k) * (y - (-k*t))
        return Similarity(Fraction(1) / self.factor, -self.factor * self.center)

    def map_position(self, p: Position) -> Position:
        return p.map_locations(self.apply)


def spectrum(p: Position) -> Counter[Fraction]:
    """Multiset of occupied locations with multiplicities (the global view a
    strong multiplicity detector provides)."""
    return Counter(p.locations())


def permute_position(p: Position, sigma: Permutation) -> Position:
    """Rename robots: the result maps r to p(sigma^-1(r))."""
    return Position(p.universe, {r: p[sigma.unapply(r)] for r in p.universe.robots})
