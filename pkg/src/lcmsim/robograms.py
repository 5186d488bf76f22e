"""Destination algorithms executed by every robot ("robograms").

A robogram maps an observed position, expressed in the observing robot's own
frame (observer at the origin), to a destination in that same frame.  It must
be deterministic and invariant under renaming of robots.  Spectrum-based
robograms get the invariance for free because they only ever see the multiset
of occupied locations; raw robograms take the full position and exist so the
invariance checker has something to refute.

Robograms are immutable and pure; evaluating them concurrently is safe.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .core import (
    Position,
    Permutation,
    RobotId,
    ScalarLike,
    Side,
    as_scalar,
    format_scalar,
    parse_scalar,
    permute_position,
    spectrum,
)

__all__ = [
    "BUILTIN_SELECTORS",
    "NonRepresentableDestination",
    "Robogram",
    "broken_id_leak",
    "center_of_mass",
    "check_invariance",
    "convex",
    "evaluate",
    "raw_robogram",
    "resolve_robogram",
    "spectrum_robogram",
    "stay",
    "to_max",
    "to_min",
    "to_other_occupied",
]

SPECTRUM_BASED = "spectrum"
RAW = "raw"


class NonRepresentableDestination(ArithmeticError):
    """The robogram's destination left the rationals (e.g. a float or an
    irrational construction).  Built-ins never raise this."""


@dataclass(frozen=True)
class Robogram:
    """A named destination computation.  `kind` records whether permutation
    invariance holds by construction (spectrum) or must be checked (raw)."""

    name: str
    kind: str
    algo: Callable[[Position], Fraction] = field(repr=False)

    def __call__(self, p: Position) -> Fraction:
        return evaluate(self, p)


def evaluate(robogram: Robogram, p: Position) -> Fraction:
    """Destination for the observer of `p`, in the observer's frame."""
    out = robogram.algo(p)
    if isinstance(out, bool) or not isinstance(out, (int, Fraction)):
        raise NonRepresentableDestination(
            f"robogram {robogram.name!r} produced {out!r}; destinations must be exact rationals"
        )
    return as_scalar(out)


def check_invariance(robogram: Robogram, p: Position, sigma: Permutation) -> bool:
    """True iff renaming the robots by `sigma` leaves the destination unchanged."""
    return evaluate(robogram, p) == evaluate(robogram, permute_position(p, sigma))


def spectrum_robogram(name: str, fn: Callable[[Counter[Fraction]], Fraction]) -> Robogram:
    """Build a robogram from a function of the location multiset alone.
    Permutation invariance holds by construction."""
    return Robogram(name, SPECTRUM_BASED, lambda p: fn(spectrum(p)))


def raw_robogram(name: str, fn: Callable[[Position], Fraction]) -> Robogram:
    """Build a robogram from an arbitrary position function.  Nothing
    guarantees permutation invariance; use `check_invariance`."""
    return Robogram(name, RAW, fn)


def _mean(view: Counter[Fraction]) -> Fraction:
    total = sum(view.values())
    return sum((loc * count for loc, count in view.items()), Fraction(0)) / total


def _other_occupied(view: Counter[Fraction]) -> Fraction:
    # Defined only on bivalent views seen from one of the two locations;
    # anywhere else the deterministic fallback is to stay put.
    if len(view) == 2 and Fraction(0) in view:
        a, b = view.keys()
        return b if a == 0 else a
    return Fraction(0)


stay = spectrum_robogram("stay", lambda view: Fraction(0))
center_of_mass = spectrum_robogram("center-of-mass", _mean)
to_other_occupied = spectrum_robogram("to-other-occupied", _other_occupied)
to_max = spectrum_robogram("to-max", max)
to_min = spectrum_robogram("to-min", min)


def convex(coefficient: ScalarLike) -> Robogram:
    """Move to `coefficient` times the center of mass of the view."""
    lam = as_scalar(coefficient)
    return spectrum_robogram(
        f"convex:{format_scalar(lam)}", lambda view: lam * _mean(view)
    )


# Negative-test robogram: leaks a robot identity, so renaming robots changes
# the answer whenever L0 trades places with a robot elsewhere.
broken_id_leak = raw_robogram("broken-id-leak", lambda p: p[RobotId(Side.LEFT, 0)])


_FIXED = {
    r.name: r for r in (stay, center_of_mass, to_other_occupied, to_max, to_min, broken_id_leak)
}

BUILTIN_SELECTORS = tuple(sorted(_FIXED)) + ("convex:<num/den>",)


def resolve_robogram(selector: str) -> Robogram:
    """Look up a robogram by its selector string, e.g. "to-max" or "convex:1/3"."""
    name = selector.strip()
    if name in _FIXED:
        return _FIXED[name]
    if name.startswith("convex:"):
        return convex(parse_scalar(name.removeprefix("convex:")))
    raise ValueError(
        f"unknown robogram selector {selector!r}; available: {', '.join(BUILTIN_SELECTORS)}"
    )
