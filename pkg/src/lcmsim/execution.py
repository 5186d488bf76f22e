"""The synchronous round recurrence, finite executions, and trace files.

One round: every activated robot observes the position through its private
frame (a similarity placing itself at the origin), runs the robogram on that
local view, and the destination is carried back to the global frame by the
inverse similarity; inactive robots stay put.  Moves are instantaneous and the
round function takes no history, so obliviousness is structural.

Traces persist as JSONL: a header line (robogram, demon, pile size, initial
position) followed by one line per round with the frame-factor map and the
post-round position.  Scalars are "num/den" strings and robot ids "L<i>" /
"R<i>".  Only post-positions are stored; pre-positions are recovered by
chaining, and `replay` re-derives every round to certify a file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable

from .core import (
    EmptyUniverse,
    Position,
    RobotUniverse,
    Similarity,
    format_scalar,
    parse_robot_id,
    parse_scalar,
)
from .demons import Demon, DemonicAction
from .robograms import Robogram, evaluate

__all__ = [
    "ExecutionError",
    "ReplayMismatchError",
    "Trace",
    "TraceFormatError",
    "TraceRound",
    "execute_prefix",
    "read_trace",
    "read_trace_file",
    "replay",
    "round_step",
    "write_trace",
    "write_trace_file",
]


class ExecutionError(RuntimeError):
    """A robogram or demon failed while producing a round."""

    def __init__(self, round_index: int, cause: BaseException):
        super().__init__(f"round {round_index}: {cause}")
        self.round_index = round_index


class TraceFormatError(ValueError):
    """The trace file does not parse as the JSONL trace format."""


class ReplayMismatchError(RuntimeError):
    """Re-deriving a round did not reproduce the stored position."""

    def __init__(self, round_index: int):
        super().__init__(f"replay mismatch at round {round_index}")
        self.round_index = round_index


@dataclass(frozen=True)
class TraceRound:
    index: int
    action: DemonicAction
    post: Position


@dataclass(frozen=True)
class Trace:
    """A materialized execution prefix; the unit of persistence and checking."""

    robogram_name: str
    demon_name: str
    p0: Position
    rounds: tuple[TraceRound, ...]

    @property
    def universe(self) -> RobotUniverse:
        return self.p0.universe

    @property
    def horizon(self) -> int:
        return len(self.rounds)

    def positions(self) -> tuple[Position, ...]:
        """p0 followed by every post-round position (indices 0..horizon)."""
        return (self.p0,) + tuple(r.post for r in self.rounds)

    def actions(self) -> tuple[DemonicAction, ...]:
        return tuple(r.action for r in self.rounds)


def round_step(robogram: Robogram, action: DemonicAction, position: Position) -> Position:
    """One synchronous step of the recurrence.

    Robots sharing a frame factor and a location see the same local view, so
    their destination is computed once (sound because robograms are
    deterministic).
    """
    memo: dict[tuple[Fraction, Fraction], Fraction] = {}
    new = {}
    for r in position.universe.robots:
        f = action.factor(r)
        here = position[r]
        if f == 0:
            new[r] = here
            continue
        key = (f, here)
        if key not in memo:
            frame = Similarity(f, here)
            destination = evaluate(robogram, frame.map_position(position))
            memo[key] = frame.inverse().apply(destination)
        new[r] = memo[key]
    return Position(position.universe, new)


def execute_prefix(robogram: Robogram, demon: Demon, p0: Position, horizon: int) -> Trace:
    """Run `demon` against `robogram` from `p0` for exactly `horizon` rounds.

    The demon is owned by this run (it may be stateful).  Errors raised by the
    robogram or the demon surface as ExecutionError carrying the round index.
    """
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    p0.universe.require_inhabited()
    rounds = []
    current = p0
    for i in range(horizon):
        try:
            action = demon.action(i, current)
            post = round_step(robogram, action, current)
        except Exception as exc:
            raise ExecutionError(i, exc) from exc
        rounds.append(TraceRound(i, action, post))
        current = post
    return Trace(robogram.name, demon.name, p0, tuple(rounds))


def _position_to_json(p: Position) -> dict[str, str]:
    return {str(r): format_scalar(x) for r, x in p.items()}


def _action_to_json(a: DemonicAction) -> dict[str, str]:
    return {str(r): format_scalar(a.factor(r)) for r in a.universe.robots}


def write_trace(trace: Trace, fp: IO[str]) -> None:
    header = {
        "robogram": trace.robogram_name,
        "demon": trace.demon_name,
        "n": trace.universe.pile_size,
        "p0": _position_to_json(trace.p0),
    }
    fp.write(json.dumps(header) + "\n")
    for rd in trace.rounds:
        row = {
            "round": rd.index,
            "frames": _action_to_json(rd.action),
            "post": _position_to_json(rd.post),
        }
        fp.write(json.dumps(row) + "\n")


def write_trace_file(trace: Trace, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        write_trace(trace, fp)


def _parse_scalar_map(universe: RobotUniverse, raw: object, what: str) -> dict:
    if not isinstance(raw, dict):
        raise TraceFormatError(f"{what} must be an object of id -> scalar")
    try:
        out = {parse_robot_id(key): parse_scalar(value) for key, value in raw.items()}
    except (ValueError, TypeError, AttributeError) as exc:
        raise TraceFormatError(f"bad {what}: {exc}") from exc
    if set(out) != set(universe.robots):
        raise TraceFormatError(f"{what} does not cover the universe exactly")
    return out


def read_trace(lines: Iterable[str]) -> Trace:
    """Parse the JSONL trace format; raises TraceFormatError on any defect."""
    it = iter(lines)
    try:
        first = next(it)
    except StopIteration:
        raise TraceFormatError("empty trace file") from None
    try:
        header = json.loads(first)
    except json.JSONDecodeError as exc:
        raise TraceFormatError(f"header is not JSON: {exc}") from exc
    if not isinstance(header, dict):
        raise TraceFormatError("header must be a JSON object")
    for field_name in ("robogram", "demon", "n", "p0"):
        if field_name not in header:
            raise TraceFormatError(f"header is missing {field_name!r}")
    if not isinstance(header["n"], int) or header["n"] < 0:
        raise TraceFormatError("header n must be a natural number")
    universe = RobotUniverse(header["n"])
    p0 = Position(universe, _parse_scalar_map(universe, header["p0"], "p0"))

    rounds = []
    for lineno, line in enumerate(it, start=1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TraceFormatError(f"line {lineno + 1} is not JSON: {exc}") from exc
        if not isinstance(row, dict):
            raise TraceFormatError(f"line {lineno + 1} must be a JSON object")
        for field_name in ("round", "frames", "post"):
            if field_name not in row:
                raise TraceFormatError(f"line {lineno + 1} is missing {field_name!r}")
        if row["round"] != len(rounds):
            raise TraceFormatError(
                f"line {lineno + 1}: round index {row['round']} out of order"
            )
        action = DemonicAction(universe, _parse_scalar_map(universe, row["frames"], "frames"))
        post = Position(universe, _parse_scalar_map(universe, row["post"], "post"))
        rounds.append(TraceRound(len(rounds), action, post))

    return Trace(str(header["robogram"]), str(header["demon"]), p0, tuple(rounds))


def read_trace_file(path: str) -> Trace:
    with open(path, "r", encoding="utf-8") as fp:
        return read_trace(fp)


def replay(trace: Trace, robogram: Robogram) -> None:
    """Re-derive every round from p0 and the stored frames; raises
    ReplayMismatchError at the first stored position that does not match."""
    current = trace.p0
    for rd in trace.rounds:
        post = round_step(robogram, rd.action, current)
        if post != rd.post:
            raise ReplayMismatchError(rd.index)
        current = post
