"""Seeded random generators for positions, scalars and permutations.

Used by the invariance screening (CLI and the adversary's pre-check) and by
the test suite.  Everything is driven by an explicit `random.Random`, so runs
are reproducible; the LCM_SEED environment variable overrides the default
seed where one applies.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .core import Permutation, Position, RobotUniverse

__all__ = [
    "default_seed",
    "random_nonzero_scalar",
    "random_permutation",
    "random_position",
    "random_scalar",
]


def default_seed() -> int:
    raw = os.environ.get("LCM_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"LCM_SEED must be an integer, got {raw!r}") from None


def random_scalar(rng: random.Random, max_abs: int = 8, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(-max_abs, max_abs), rng.randint(1, max_den))


def random_nonzero_scalar(rng: random.Random, max_abs: int = 8, max_den: int = 6) -> Fraction:
    while True:
        q = random_scalar(rng, max_abs, max_den)
        if q != 0:
            return q


def random_position(
    universe: RobotUniverse, rng: random.Random, max_abs: int = 8, max_den: int = 6
) -> Position:
    return Position(
        universe, {r: random_scalar(rng, max_abs, max_den) for r in universe.robots}
    )


def random_permutation(universe: RobotUniverse, rng: random.Random) -> Permutation:
    targets = list(universe.robots)
    rng.shuffle(targets)
    return Permutation(universe, dict(zip(universe.robots, targets)))
