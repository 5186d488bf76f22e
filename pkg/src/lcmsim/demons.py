"""Adversarial schedulers ("demons") and bounded fairness checking.

A demonic action assigns every robot a frame factor for one round: 0 means
"not activated", anything else activates the robot with that scale factor. A
demon produces one action per round, forever; here demons are stateful
producers driven by the round index and the current position, so a demon
instance must be owned by a single run.  Checkers, by contrast, are pure
functions over recorded action prefixes and can be run in parallel freely.

Verdicts are three-valued by design.  The per-pair waiting property can be
*proven* on a finite prefix (the watched robot was activated in time), but
k-fairness of a whole demon is a property of all suffixes of an infinite
stream: a finite prefix can only refute it or fail to refute it.  Checkers
therefore never answer "proven" for k-fairness, only "violated" or
"no violation up to the horizon".
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .core import (
    EmptyUniverse,
    Position,
    RobotId,
    RobotUniverse,
    ScalarLike,
    as_scalar,
    format_scalar,
)

__all__ = [
    "Demon",
    "DemonicAction",
    "NO_VIOLATION",
    "PROVEN",
    "UNKNOWN",
    "VIOLATED",
    "Verdict",
    "ZeroFactorFromPolicy",
    "check_between",
    "check_kfair",
    "make_fsync",
    "make_random_kfair",
    "make_round_robin",
    "make_scripted",
]

PROVEN = "proven"
VIOLATED = "violated"
NO_VIOLATION = "no-violation-up-to"
UNKNOWN = "unknown"


class ZeroFactorFromPolicy(RuntimeError):
    """A fully-synchronous demon's factor policy returned 0 for some robot,
    breaking the construction contract (FSYNC activates everyone)."""


@dataclass(frozen=True, eq=True)
class DemonicAction:
    """One round of scheduling: a total frame-factor map over the universe."""

    universe: RobotUniverse
    frames: Mapping[RobotId, Fraction]

    def __post_init__(self) -> None:
        coerced = {r: as_scalar(v) for r, v in self.frames.items()}
        if set(coerced) != set(self.universe.robots):
            raise ValueError("demonic action must assign a factor to every robot")
        object.__setattr__(self, "frames", coerced)

    def factor(self, robot: RobotId) -> Fraction:
        return self.frames[robot]

    def is_active(self, robot: RobotId) -> bool:
        return self.frames[robot] != 0

    def active_robots(self) -> tuple[RobotId, ...]:
        return tuple(r for r in self.universe.robots if self.frames[r] != 0)


class Demon:
    """A named producer of demonic actions, one per round."""

    __slots__ = ("name", "_step")

    def __init__(self, name: str, step: Callable[[int, Position], DemonicAction]):
        self.name = name
        self._step = step

    def action(self, round_index: int, position: Position) -> DemonicAction:
        return self._step(round_index, position)

    def __repr__(self) -> str:
        return f"Demon({self.name!r})"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded check.

    - proven: an inductive property closed within the prefix.
    - violated(round): refuted; `round` is the earliest offending index.
    - no-violation-up-to(horizon): nothing refuted the property on the prefix
      (the strongest claim a finite prefix supports for a coinductive one).
    - unknown(horizon): the prefix ended before the property could close.
    """

    kind: str
    round: int | None = None
    horizon: int | None = None

    @classmethod
    def proven(cls) -> Verdict:
        return cls(PROVEN)

    @classmethod
    def violated(cls, round_index: int) -> Verdict:
        return cls(VIOLATED, round=round_index)

    @classmethod
    def no_violation_up_to(cls, horizon: int) -> Verdict:
        return cls(NO_VIOLATION, horizon=horizon)

    @classmethod
    def unknown(cls, horizon: int) -> Verdict:
        return cls(UNKNOWN, horizon=horizon)

    @property
    def ok(self) -> bool:
        return self.kind in (PROVEN, NO_VIOLATION)

    def to_json_dict(self) -> dict:
        out: dict = {"verdict": self.kind}
        if self.round is not None:
            out["round"] = self.round
        if self.horizon is not None:
            out["horizon"] = self.horizon
        return out


def make_fsync(
    factor_policy: Callable[[Position], Mapping[RobotId, ScalarLike]],
    name: str = "fsync",
) -> Demon:
    """Fully synchronous demon: every robot is activated every round, with
    factors chosen by `factor_policy` from the current position."""

    def step(round_index: int, position: Position) -> DemonicAction:
        action = DemonicAction(position.universe, dict(factor_policy(position)))
        for r in position.universe.robots:
            if not action.is_active(r):
                raise ZeroFactorFromPolicy(
                    f"factor policy returned 0 for {r} at round {round_index}"
                )
        return action

    return Demon(name, step)


def make_round_robin(universe: RobotUniverse, factor: ScalarLike) -> Demon:
    """Activate exactly one robot per round, cycling left pile then right pile."""
    f = as_scalar(factor)
    if f == 0:
        raise ValueError("round-robin factor must be nonzero")
    universe.require_inhabited()
    robots = universe.robots

    def step(round_index: int, position: Position) -> DemonicAction:
        chosen = robots[round_index % len(robots)]
        frames = {r: f if r == chosen else Fraction(0) for r in robots}
        return DemonicAction(universe, frames)

    return Demon(f"round-robin:{format_scalar(f)}", step)


def make_scripted(
    universe: RobotUniverse,
    schedule: Sequence[Mapping[RobotId, ScalarLike]],
    name: str = "scripted",
) -> Demon:
    """Replay a fixed, position-independent frame schedule, cycling past the
    end so the demon stays total."""
    if not schedule:
        raise ValueError("scripted demon needs a nonempty schedule")
    actions = [DemonicAction(universe, dict(frames)) for frames in schedule]

    def step(round_index: int, position: Position) -> DemonicAction:
        return actions[round_index % len(actions)]

    return Demon(name, step)


def make_random_kfair(
    universe: RobotUniverse, k: int, factor: ScalarLike, seed: int
) -> Demon:
    """Random SSYNC demon that never lets any robot be activated more than k
    times between consecutive activations of any other robot.

    Each round starts from a random nonempty subset; any robot whose waiting
    budget against an activated robot is already exhausted is forced into the
    round (for k = 0 this cascades to all-active rounds).  Deterministic for a
    given seed.
    """
    if k < 0:
        raise ValueError("fairness budget k must be >= 0")
    f = as_scalar(factor)
    if f == 0:
        raise ValueError("factor must be nonzero")
    universe.require_inhabited()
    robots = universe.robots
    rng = random.Random(seed)
    # waited[g][h]: activations of h since g's last activation (or the start)
    waited = {g: {h: 0 for h in robots if h != g} for g in robots}

    def step(round_index: int, position: Position) -> DemonicAction:
        chosen = {r for r in robots if rng.random() < 0.5}
        if not chosen:
            chosen = {rng.choice(robots)}
        grew = True
        while grew:
            grew = False
            for g in robots:
                if g in chosen:
                    continue
                if any(waited[g][h] >= k for h in chosen):
                    chosen.add(g)
                    grew = True
        for g in robots:
            if g in chosen:
                for h in waited[g]:
                    waited[g][h] = 0
            else:
                for h in chosen:
                    waited[g][h] += 1
        frames = {r: f if r in chosen else Fraction(0) for r in robots}
        return DemonicAction(universe, frames)

    return Demon(f"random-kfair:{k}:{seed}", step)


def check_between(
    actions: Sequence[DemonicAction], g: RobotId, h: RobotId, k: int
) -> Verdict:
    """Was `g` activated within `k` activations of `h`, from the start of the
    prefix?

    Rule by rule: a round activating g closes the property immediately; a
    round activating h but not g consumes one unit of budget (a violation if
    the budget is already 0); a round activating neither defers.  If the
    prefix ends with the property still open, the answer is unknown.
    """
    if not actions:
        raise ValueError("check_between needs a nonempty action prefix")
    if k < 0:
        raise ValueError("fairness budget k must be >= 0")
    budget = k
    for i, action in enumerate(actions):
        if action.is_active(g):
            return Verdict.proven()
        if action.is_active(h):
            if budget == 0:
                return Verdict.violated(i)
            budget -= 1
    return Verdict.unknown(len(actions))


def check_kfair(actions: Sequence[DemonicAction], k: int) -> Verdict:
    """Refutation check for k-fairness over every suffix of the prefix.

    Violated(i) means some ordered robot pair (g, h) has its waiting property
    refuted on the suffix that starts at round i, with i minimal.  A clean
    prefix yields no-violation-up-to(horizon); "proven" is never an answer
    because k-fairness constrains all suffixes of an infinite stream.
    """
    if not actions:
        raise ValueError("check_kfair needs a nonempty action prefix")
    if k < 0:
        raise ValueError("fairness budget k must be >= 0")
    robots = actions[0].universe.robots
    active = {r: [a.is_active(r) for a in actions] for r in robots}
    earliest: int | None = None
    for g in robots:
        ag = active[g]
        for h in robots:
            if h == g:
                continue
            ah = active[h]
            # Scan g-free stretches; within one, the suffix starting at the
            # stretch start sees the most h-activations, so only stretch
            # starts can be earliest violations.
            gap_start = 0
            seen = 0
            for i in range(len(actions)):
                if ag[i]:
                    gap_start = i + 1
                    seen = 0
                elif ah[i]:
                    seen += 1
                    if seen > k:
                        if earliest is None or gap_start < earliest:
                            earliest = gap_start
                        break
    if earliest is not None:
        return Verdict.violated(earliest)
    return Verdict.no_violation_up_to(len(actions))
