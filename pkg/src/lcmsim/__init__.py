"""Exact simulator for Look-Compute-Move robots on the rational line.

The package builds bounded executions of oblivious robot protocols under
hostile schedulers and checks fairness, splitting and gathering on the
resulting traces.  All coordinates are exact rationals end to end.
"""

from .adversary import (
    DegenerateInitial,
    FirstMoveProbe,
    ImpossibilityReport,
    build_adversary_demon,
    canonical_view,
    make_alternating_demon,
    make_swap_fsync_demon,
    probe_first_move,
    run_impossibility,
)
from .core import (
    EmptyUniverse,
    Permutation,
    Position,
    RobotId,
    RobotUniverse,
    Scalar,
    Side,
    Similarity,
    as_scalar,
    format_scalar,
    parse_robot_id,
    parse_scalar,
    permute_position,
    spectrum,
)
from .demons import (
    Demon,
    DemonicAction,
    Verdict,
    ZeroFactorFromPolicy,
    check_between,
    check_kfair,
    make_fsync,
    make_random_kfair,
    make_round_robin,
    make_scripted,
)
from .execution import (
    ExecutionError,
    ReplayMismatchError,
    Trace,
    TraceFormatError,
    TraceRound,
    execute_prefix,
    read_trace,
    read_trace_file,
    replay,
    round_step,
    write_trace,
    write_trace_file,
)
from .properties import (
    GatherVerdict,
    check_always_split,
    check_will_gather,
    gathered_location,
    split,
)
from .robograms import (
    NonRepresentableDestination,
    Robogram,
    broken_id_leak,
    center_of_mass,
    check_invariance,
    convex,
    evaluate,
    raw_robogram,
    resolve_robogram,
    spectrum_robogram,
    stay,
    to_max,
    to_min,
    to_other_occupied,
)
from .sampling import (
    default_seed,
    random_nonzero_scalar,
    random_permutation,
    random_position,
    random_scalar,
)

__all__ = [
    "DegenerateInitial",
    "Demon",
    "DemonicAction",
    "EmptyUniverse",
    "ExecutionError",
    "FirstMoveProbe",
    "GatherVerdict",
    "ImpossibilityReport",
    "NonRepresentableDestination",
    "Permutation",
    "Position",
    "ReplayMismatchError",
    "Robogram",
    "RobotId",
    "RobotUniverse",
    "Scalar",
    "Side",
    "Similarity",
    "Trace",
    "TraceFormatError",
    "TraceRound",
    "Verdict",
    "ZeroFactorFromPolicy",
    "as_scalar",
    "broken_id_leak",
    "build_adversary_demon",
    "canonical_view",
    "center_of_mass",
    "check_always_split",
    "check_between",
    "check_invariance",
    "check_kfair",
    "check_will_gather",
    "convex",
    "default_seed",
    "evaluate",
    "execute_prefix",
    "format_scalar",
    "gathered_location",
    "make_alternating_demon",
    "make_fsync",
    "make_random_kfair",
    "make_round_robin",
    "make_scripted",
    "make_swap_fsync_demon",
    "parse_robot_id",
    "parse_scalar",
    "permute_position",
    "probe_first_move",
    "random_nonzero_scalar",
    "random_permutation",
    "random_position",
    "random_scalar",
    "raw_robogram",
    "read_trace",
    "read_trace_file",
    "replay",
    "resolve_robogram",
    "round_step",
    "run_impossibility",
    "spectrum",
    "spectrum_robogram",
    "split",
    "stay",
    "to_max",
    "to_min",
    "to_other_occupied",
    "write_trace",
    "write_trace_file",
]
