"""Command-line front door: simulate, adversary, check, invariance.

Machine-readable output (traces, reports, verdicts) goes to stdout or the
requested file; diagnostics go to stderr.  Exit codes: 0 success / property
holds, 1 property fails, 2 usage or config error, 3 runtime error (bad
robogram arithmetic, corrupt trace).  Rationals cross the CLI as "num/den"
strings only.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from .adversary import run_impossibility
from .core import (
    Position,
    RobotUniverse,
    Side,
    format_scalar,
    parse_robot_id,
    parse_scalar,
)
from .demons import Demon, check_kfair, make_fsync, make_random_kfair, make_round_robin
from .execution import (
    ExecutionError,
    ReplayMismatchError,
    Trace,
    TraceFormatError,
    execute_prefix,
    read_trace_file,
    replay,
    write_trace,
    write_trace_file,
)
from .properties import check_always_split, check_will_gather
from .robograms import (
    NonRepresentableDestination,
    Robogram,
    check_invariance,
    resolve_robogram,
)
from .sampling import default_seed, random_permutation, random_position

__all__ = ["main", "main_entry"]


class UsageError(Exception):
    pass


def _resolve_robogram(selector: str) -> Robogram:
    try:
        return resolve_robogram(selector)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _resolve_demon(selector: str, universe: RobotUniverse, robogram: Robogram, p0: Position) -> Demon:
    sel = selector.strip()
    if sel == "fsync":
        return make_fsync(lambda p: {r: 1 for r in p.universe.robots})
    if sel.startswith("round-robin:"):
        factor = parse_scalar(sel.removeprefix("round-robin:"))
        if factor == 0:
            raise UsageError("round-robin factor must be nonzero")
        return make_round_robin(universe, factor)
    if sel.startswith("random-kfair:"):
        parts = sel.split(":")
        if len(parts) != 3:
            raise UsageError("random-kfair selector must be random-kfair:<k>:<seed>")
        try:
            k, seed = int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise UsageError(f"bad random-kfair selector: {exc}") from exc
        if k < 0:
            raise UsageError("random-kfair budget k must be >= 0")
        return make_random_kfair(universe, k, 1, seed)
    if sel == "adversary":
        from .adversary import DegenerateInitial, build_adversary_demon

        a = p0.pile_location(Side.LEFT)
        b = p0.pile_location(Side.RIGHT)
        if a is None or b is None:
            raise UsageError("the adversary demon needs an initial position with each pile stacked")
        try:
            return build_adversary_demon(robogram, universe.pile_size, a, b)
        except DegenerateInitial as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError(
        f"unknown demon selector {selector!r}; expected fsync, round-robin:<num/den>,"
        " random-kfair:<k>:<seed> or adversary"
    )


def _parse_init(raw: object, universe: RobotUniverse) -> Position:
    try:
        if isinstance(raw, str) and raw.startswith("bivalent:"):
            parts = raw.split(":")
            if len(parts) != 3:
                raise ValueError("bivalent init must be bivalent:<num/den>:<num/den>")
            return Position.from_piles(universe, parse_scalar(parts[1]), parse_scalar(parts[2]))
        if isinstance(raw, str):
            raw = json.loads(raw)
        if isinstance(raw, dict):
            return Position(universe, {parse_robot_id(k): parse_scalar(v) for k, v in raw.items()})
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad initial position: {exc}") from exc
    raise UsageError("initial position must be bivalent:<a>:<b> or a JSON object id -> scalar")


SCENARIO_KEYS = ("robogram", "demon", "n", "init", "horizon", "out")


def _merge_scenario(flags: argparse.Namespace, config_entry: dict) -> dict:
    unknown = set(config_entry) - set(SCENARIO_KEYS)
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    merged = dict(config_entry)
    for key in SCENARIO_KEYS:
        value = getattr(flags, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _run_scenario(scenario: dict) -> Trace:
    for key in ("robogram", "demon", "n", "horizon"):
        if scenario.get(key) is None:
            raise UsageError(f"missing required setting {key!r}")
    n = scenario["n"]
    if not isinstance(n, int) or n < 1:
        raise UsageError("n must be an integer >= 1")
    horizon = scenario["horizon"]
    if not isinstance(horizon, int) or horizon < 0:
        raise UsageError("horizon must be an integer >= 0")
    universe = RobotUniverse(n)
    robogram = _resolve_robogram(scenario["robogram"])
    p0 = _parse_init(scenario.get("init") or "bivalent:0/1:1/1", universe)
    demon = _resolve_demon(scenario["demon"], universe, robogram, p0)
    return execute_prefix(robogram, demon, p0, horizon)


def _run_scenario_to_file(scenario: dict) -> str:
    trace = _run_scenario(scenario)
    write_trace_file(trace, scenario["out"])
    return scenario["out"]


def cmd_simulate(args: argparse.Namespace) -> int:
    entries: list[dict]
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fp:
                loaded = json.load(fp)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        entries = loaded if isinstance(loaded, list) else [loaded]
        if not all(isinstance(e, dict) for e in entries):
            raise UsageError("config must be a scenario object or a list of them")
    else:
        entries = [{}]
    scenarios = [_merge_scenario(args, entry) for entry in entries]

    if len(scenarios) > 1:
        if any(not s.get("out") for s in scenarios):
            raise UsageError("every scenario in a batch config needs its own 'out' path")
        if len({s["out"] for s in scenarios}) != len(scenarios):
            raise UsageError("batch scenarios must write to distinct 'out' paths")
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                for path in pool.map(_run_scenario_to_file, scenarios):
                    print(path)
        else:
            for scenario in scenarios:
                print(_run_scenario_to_file(scenario))
        return 0

    scenario = scenarios[0]
    trace = _run_scenario(scenario)
    if scenario.get("out"):
        write_trace_file(trace, scenario["out"])
    else:
        write_trace(trace, sys.stdout)
    return 0


def cmd_adversary(args: argparse.Namespace) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("n must be an integer >= 1")
    if args.horizon is None or args.horizon < 0:
        raise UsageError("horizon must be an integer >= 0")
    robogram = _resolve_robogram(args.robogram)
    report = run_impossibility(robogram, args.n, args.horizon)
    if args.out:
        write_trace_file(report.trace, args.out)
    print(json.dumps(report.to_json_dict()))
    return 0 if report.certified else 1


def _parse_property(text: str) -> tuple[str, int | None]:
    if text == "will-gather" or text == "always-split":
        return text, None
    if text.startswith("kfair:"):
        try:
            k = int(text.removeprefix("kfair:"))
        except ValueError as exc:
            raise UsageError(f"bad property {text!r}: {exc}") from exc
        if k < 0:
            raise UsageError("kfair budget must be >= 0")
        return "kfair", k
    raise UsageError(
        f"unknown property {text!r}; expected kfair:<k>, will-gather or always-split"
    )


def cmd_check(args: argparse.Namespace) -> int:
    prop, k = _parse_property(args.property)
    try:
        trace = read_trace_file(args.trace)
    except OSError as exc:
        print(f"cannot read trace: {exc}", file=sys.stderr)
        return 2
    except TraceFormatError as exc:
        print(f"malformed trace: {exc}", file=sys.stderr)
        return 2
    try:
        robogram = resolve_robogram(trace.robogram_name)
    except ValueError as exc:
        print(f"cannot replay trace: {exc}", file=sys.stderr)
        return 2
    try:
        replay(trace, robogram)
    except ReplayMismatchError as exc:
        print(f"corrupt trace: {exc}", file=sys.stderr)
        return 3

    if prop == "kfair":
        if trace.horizon == 0:
            raise UsageError("kfair needs a trace with at least one round")
        verdict = check_kfair(trace.actions(), k)
        report = {"property": f"kfair:{k}", **verdict.to_json_dict()}
        ok = verdict.ok
    elif prop == "will-gather":
        gather = check_will_gather(trace)
        report = {"property": "will-gather", **gather.to_json_dict()}
        ok = gather.gathered
    else:
        verdict = check_always_split(trace)
        report = {"property": "always-split", **verdict.to_json_dict()}
        ok = verdict.ok
    report.setdefault("horizon", trace.horizon)
    print(json.dumps(report))
    return 0 if ok else 1


def cmd_invariance(args: argparse.Namespace) -> int:
    if args.samples is None or args.samples < 1:
        raise UsageError("samples must be >= 1")
    robogram = _resolve_robogram(args.robogram)
    seed = default_seed() if args.seed is None else args.seed
    rng = random.Random(seed)
    for i in range(args.samples):
        universe = RobotUniverse(rng.randint(1, 4))
        position = random_position(universe, rng)
        sigma = random_permutation(universe, rng)
        if not check_invariance(robogram, position, sigma):
            counterexample = {
                "robogram": robogram.name,
                "samples": args.samples,
                "failed_at": i,
                "counterexample": {
                    "n": universe.pile_size,
                    "position": {str(r): format_scalar(x) for r, x in position.items()},
                    "permutation": {str(r): str(sigma.apply(r)) for r in universe.robots},
                },
            }
            print(json.dumps(counterexample))
            return 1
    print(json.dumps({"robogram": robogram.name, "samples": args.samples, "ok": True}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcmsim",
        description="Exact Look-Compute-Move simulator with adversarial schedulers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a robogram against a demon, write a trace")
    sim.add_argument("--robogram")
    sim.add_argument("--demon")
    sim.add_argument("--n", type=int)
    sim.add_argument("--init", help="bivalent:<num/den>:<num/den> or JSON id->scalar map")
    sim.add_argument("--horizon", type=int)
    sim.add_argument("--out", help="trace output path (default: stdout)")
    sim.add_argument("--config", help="JSON scenario (or list of scenarios); flags win")
    sim.add_argument("--jobs", type=int, default=1, help="parallel workers for batch configs")
    sim.set_defaults(func=cmd_simulate)

    adv = sub.add_parser("adversary", help="run the gathering-defeating demon and certify")
    adv.add_argument("--robogram", required=True)
    adv.add_argument("--n", type=int, required=True)
    adv.add_argument("--horizon", type=int, required=True)
    adv.add_argument("--out", help="trace output path (report goes to stdout)")
    adv.set_defaults(func=cmd_adversary)

    chk = sub.add_parser("check", help="replay a trace file and check a property")
    chk.add_argument("trace")
    chk.add_argument("--property", required=True, help="kfair:<k> | will-gather | always-split")
    chk.set_defaults(func=cmd_check)

    inv = sub.add_parser("invariance", help="randomized permutation-invariance check")
    inv.add_argument("--robogram", required=True)
    inv.add_argument("--samples", type=int, default=1000)
    inv.add_argument("--seed", type=int, help="defaults to LCM_SEED or 0")
    inv.set_defaults(func=cmd_invariance)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ExecutionError, NonRepresentableDestination, ReplayMismatchError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3


def main_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    main_entry()
