"""The gathering-defeating scheduler construction and its certification.

Start the two piles at 0 and 1 and ask the robogram where it would move in
the canonical bivalent view (own pile at the origin, the other pile at 1,
n robots each).  Call that answer delta.

- delta = 1: the robogram walks onto the other pile.  Scheduling everyone at
  once ("swap" branch, fully synchronous) makes the piles trade places: the
  position after the round is the mirror of the one before, forever.
- delta != 1: activate one pile per round, left on even rounds, right on odd
  ("alternating" branch, 1-fair).  Each activated robot's frame is scaled so
  its view is again the canonical one, so the robogram keeps answering delta
  and the moved pile lands at u + delta*(v - u), which differs from the other
  pile exactly because delta != 1.

Either way every position stays bivalent and the piles never meet, so no
deterministic, permutation-invariant robogram can gather an even number of
oblivious robots against 1-fair schedulers.  `run_impossibility` executes the
construction and certifies the trace with the bounded checkers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Position,
    RobotId,
    RobotUniverse,
    ScalarLike,
    Side,
    as_scalar,
    format_scalar,
    spectrum,
)
from .demons import Demon, DemonicAction, Verdict, check_kfair, make_fsync
from .execution import Trace, execute_prefix
from .properties import GatherVerdict, check_always_split, check_will_gather
from .robograms import Robogram, check_invariance, evaluate
from .sampling import default_seed, random_permutation

__all__ = [
    "ALTERNATING",
    "SWAP_FSYNC",
    "DegenerateInitial",
    "FirstMoveProbe",
    "ImpossibilityReport",
    "build_adversary_demon",
    "canonical_view",
    "make_alternating_demon",
    "make_swap_fsync_demon",
    "probe_first_move",
    "run_impossibility",
]

SWAP_FSYNC = "swap-fsync"
ALTERNATING = "alternating"

INVARIANCE_PRECHECK_SAMPLES = 32


class DegenerateInitial(ValueError):
    """The requested initial piles coincide; the construction needs two
    distinct locations."""


@dataclass(frozen=True)
class FirstMoveProbe:
    """The robogram's answer in the canonical bivalent view, and the demon
    branch that answer selects."""

    delta: Fraction

    @property
    def branch(self) -> str:
        return SWAP_FSYNC if self.delta == 1 else ALTERNATING

    def to_json_dict(self) -> dict:
        return {"delta": format_scalar(self.delta), "branch": self.branch}


def canonical_view(n: int) -> Position:
    """n robots on the observer's pile at 0 and n on the other pile at 1."""
    universe = RobotUniverse(n)
    universe.require_inhabited()
    return Position.from_piles(universe, 0, 1)


def probe_first_move(robogram: Robogram, n: int) -> FirstMoveProbe:
    return FirstMoveProbe(evaluate(robogram, canonical_view(n)))


def _canonical_factor(position: Position, robot: RobotId) -> Fraction:
    """Frame factor 1/(v - u) that shows the opposite pile at 1 in the local
    view.  Falls back to 1 (an arbitrary nonzero factor) when the opposite
    pile is scattered or on top of this robot, keeping the demon total."""
    v = position.pile_location(robot.side.other)
    u = position[robot]
    if v is not None and v != u:
        return Fraction(1) / (v - u)
    return Fraction(1)


def make_swap_fsync_demon(universe: RobotUniverse) -> Demon:
    """Every round activates every robot with the canonical-view factor."""
    universe.require_inhabited()

    def policy(position: Position) -> dict[RobotId, Fraction]:
        return {r: _canonical_factor(position, r) for r in universe.robots}

    return make_fsync(policy, name="adversary-swap-fsync")


def make_alternating_demon(universe: RobotUniverse) -> Demon:
    """Even rounds activate exactly the left pile, odd rounds exactly the
    right pile, activated robots getting the canonical-view factor."""
    universe.require_inhabited()

    def step(round_index: int, position: Position) -> DemonicAction:
        side = Side.LEFT if round_index % 2 == 0 else Side.RIGHT
        frames = {
            r: _canonical_factor(position, r) if r.side is side else Fraction(0)
            for r in universe.robots
        }
        return DemonicAction(universe, frames)

    return Demon("adversary-alternating", step)


def build_adversary_demon(
    robogram: Robogram, n: int, a: ScalarLike, b: ScalarLike
) -> Demon:
    """Pick the branch the robogram's first move calls for, for a run whose
    piles start at the distinct locations a and b."""
    if as_scalar(a) == as_scalar(b):
        raise DegenerateInitial("initial piles must occupy two distinct locations")
    universe = RobotUniverse(n)
    universe.require_inhabited()
    probe = probe_first_move(robogram, n)
    if probe.branch == SWAP_FSYNC:
        return make_swap_fsync_demon(universe)
    return make_alternating_demon(universe)


@dataclass(frozen=True)
class ImpossibilityReport:
    """Everything a certification run produces: the probe, the bounded
    verdicts, the bivalence certificate over every position, and the result
    of the invariance pre-check (a robogram that leaks identities voids the
    certificate, so it is screened up front)."""

    robogram_name: str
    n: int
    horizon: int
    probe: FirstMoveProbe
    invariance_ok: bool
    split: Verdict
    gather: GatherVerdict
    fairness: dict[int, Verdict]
    bivalence_failures: tuple[int, ...]
    trace: Trace

    @property
    def bivalence_complete(self) -> bool:
        return not self.bivalence_failures

    @property
    def certified(self) -> bool:
        return (
            self.split.ok
            and not self.gather.gathered
            and self.fairness[1].ok
            and self.invariance_ok
            and self.bivalence_complete
        )

    def to_json_dict(self) -> dict:
        return {
            "robogram": self.robogram_name,
            "n": self.n,
            "horizon": self.horizon,
            "probe": self.probe.to_json_dict(),
            "invariance_ok": self.invariance_ok,
            "split": self.split.to_json_dict(),
            "gather": self.gather.to_json_dict(),
            "fairness": {str(k): v.to_json_dict() for k, v in sorted(self.fairness.items())},
            "bivalence": {
                "complete": self.bivalence_complete,
                "failures": list(self.bivalence_failures),
            },
            "certified": self.certified,
        }


def _balanced_bivalent(position: Position, n: int) -> bool:
    counts = spectrum(position)
    return len(counts) == 2 and all(c == n for c in counts.values())


def run_impossibility(
    robogram: Robogram, n: int, horizon: int, seed: int | None = None
) -> ImpossibilityReport:
    """Execute the adversary against `robogram` from piles at 0 and 1 and
    certify the resulting trace."""
    universe = RobotUniverse(n)
    universe.require_inhabited()
    p0 = Position.from_piles(universe, 0, 1)
    probe = probe_first_move(robogram, n)
    demon = build_adversary_demon(robogram, n, 0, 1)
    trace = execute_prefix(robogram, demon, p0, horizon)

    rng = random.Random(default_seed() if seed is None else seed)
    view = canonical_view(n)
    invariance_ok = all(
        check_invariance(robogram, view, random_permutation(universe, rng))
        for _ in range(INVARIANCE_PRECHECK_SAMPLES)
    )

    actions = trace.actions()
    fairness = {k: check_kfair(actions, k) for k in (0, 1)} if actions else {
        0: Verdict.no_violation_up_to(0),
        1: Verdict.no_violation_up_to(0),
    }
    failures = tuple(
        i for i, p in enumerate(trace.positions()) if not _balanced_bivalent(p, n)
    )
    return ImpossibilityReport(
        robogram_name=robogram.name,
        n=n,
        horizon=horizon,
        probe=probe,
        invariance_ok=invariance_ok,
        split=check_always_split(trace),
        gather=check_will_gather(trace),
        fairness=fairness,
        bivalence_failures=failures,
        trace=trace,
    )
