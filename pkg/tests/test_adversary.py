from __future__ import annotations

from fractions import Fraction

import pytest

from lcmsim.adversary import (
    ALTERNATING,
    SWAP_FSYNC,
    DegenerateInitial,
    _balanced_bivalent,
    build_adversary_demon,
    canonical_view,
    make_alternating_demon,
    make_swap_fsync_demon,
    probe_first_move,
    run_impossibility,
)
from lcmsim.core import (
    EmptyUniverse,
    Position,
    RobotUniverse,
    Side,
    Similarity,
    spectrum,
)
from lcmsim.execution import execute_prefix
from lcmsim.properties import check_will_gather
from lcmsim.robograms import (
    broken_id_leak,
    center_of_mass,
    convex,
    resolve_robogram,
    stay,
    to_max,
    to_min,
    to_other_occupied,
)


def test_canonical_view_shape():
    view = canonical_view(3)
    assert view.pile_location(Side.LEFT) == Fraction(0)
    assert view.pile_location(Side.RIGHT) == Fraction(1)
    with pytest.raises(EmptyUniverse):
        canonical_view(0)


@pytest.mark.parametrize(
    "robogram,delta,branch",
    [
        (stay, Fraction(0), ALTERNATING),
        (center_of_mass, Fraction(1, 2), ALTERNATING),
        (to_other_occupied, Fraction(1), SWAP_FSYNC),
        (to_max, Fraction(1), SWAP_FSYNC),
        (to_min, Fraction(0), ALTERNATING),
        (convex("1/3"), Fraction(1, 6), ALTERNATING),
        (broken_id_leak, Fraction(0), ALTERNATING),
    ],
)
def test_probe_values_and_branches(robogram, delta, branch):
    for n in (1, 3):
        probe = probe_first_move(robogram, n)
        assert probe.delta == delta
        assert probe.branch == branch
        assert probe.to_json_dict()["branch"] == branch


def test_swap_branch_trades_the_piles_every_round():
    u = RobotUniverse(1)
    trace = execute_prefix(
        to_other_occupied, make_swap_fsync_demon(u), Position.from_piles(u, 0, 1), 4
    )
    expected = [(0, 1), (1, 0), (0, 1), (1, 0), (0, 1)]
    for position, (left, right) in zip(trace.positions(), expected):
        assert position == Position.from_piles(u, left, right)


def test_alternating_branch_halves_the_distance_for_center_of_mass():
    u = RobotUniverse(1)
    trace = execute_prefix(
        center_of_mass, make_alternating_demon(u), Position.from_piles(u, 0, 1), 2
    )
    positions = trace.positions()
    assert positions[1] == Position.from_piles(u, "1/2", 1)
    assert positions[2] == Position.from_piles(u, "1/2", "3/4")
    # left pile active on even rounds, right on odd
    assert {str(r) for r in trace.rounds[0].action.active_robots()} == {"L0"}
    assert {str(r) for r in trace.rounds[1].action.active_robots()} == {"R0"}


def test_activated_robots_always_see_the_canonical_view():
    # the frame renormalizes whatever the piles did: every activated robot
    # observes its own pile at 0 and the other at 1
    for robogram, make_demon in (
        (center_of_mass, make_alternating_demon),
        (convex("1/3"), make_alternating_demon),
        (to_other_occupied, make_swap_fsync_demon),
        (to_max, make_swap_fsync_demon),
    ):
        u = RobotUniverse(2)
        trace = execute_prefix(robogram, make_demon(u), Position.from_piles(u, 0, 1), 12)
        pre = trace.p0
        for rd in trace.rounds:
            for robot in rd.action.active_robots():
                frame = Similarity(rd.action.factor(robot), pre[robot])
                view = frame.map_position(pre)
                assert spectrum(view) == {Fraction(0): u.pile_size, Fraction(1): u.pile_size}
            pre = rd.post


def test_alternating_demon_survives_degenerate_positions():
    # once the piles coincide the canonical factor is undefined; the demon
    # falls back to factor 1 and keeps producing total actions
    u = RobotUniverse(1)
    trace = execute_prefix(
        to_other_occupied, make_alternating_demon(u), Position.from_piles(u, 0, 1), 6
    )
    assert check_will_gather(trace).gathered
    assert all(rd.action.active_robots() for rd in trace.rounds)


def test_build_adversary_demon_picks_the_probe_branch():
    assert build_adversary_demon(to_max, 2, 0, 1).name == "adversary-swap-fsync"
    assert build_adversary_demon(center_of_mass, 2, 0, 1).name == "adversary-alternating"
    with pytest.raises(DegenerateInitial):
        build_adversary_demon(center_of_mass, 2, "1/2", "2/4")


def test_wrong_branch_would_gather():
    # delta = 1 robograms gather in one fully synchronous canonical round;
    # delta != 1 robograms gather under the swap demon when delta = 1/2.
    u = RobotUniverse(1)
    alt = execute_prefix(
        to_other_occupied, make_alternating_demon(u), Position.from_piles(u, 0, 1), 5
    )
    verdict = check_will_gather(alt)
    assert verdict.gathered and verdict.round == 1 and verdict.point == Fraction(1)

    swap = execute_prefix(
        center_of_mass, make_swap_fsync_demon(u), Position.from_piles(u, 0, 1), 5
    )
    assert check_will_gather(swap).gathered


def test_run_impossibility_certifies_builtins():
    for robogram in (center_of_mass, to_other_occupied):
        report = run_impossibility(robogram, 2, 40)
        assert report.certified
        assert report.invariance_ok
        assert report.split.ok
        assert not report.gather.gathered
        assert report.fairness[1].ok
        assert report.bivalence_complete
        assert report.trace.horizon == 40


def test_alternating_branch_is_exactly_one_fair():
    report = run_impossibility(center_of_mass, 2, 40)
    assert report.fairness[0].kind == "violated"
    assert report.fairness[1].kind == "no-violation-up-to"


def test_swap_branch_is_zero_fair():
    report = run_impossibility(to_max, 2, 40)
    assert report.probe.branch == SWAP_FSYNC
    assert report.fairness[0].kind == "no-violation-up-to"


def test_run_impossibility_flags_identity_leaks():
    report = run_impossibility(broken_id_leak, 2, 40)
    assert not report.invariance_ok
    assert not report.certified
    payload = report.to_json_dict()
    assert payload["invariance_ok"] is False
    assert payload["certified"] is False


def test_report_json_shape():
    report = run_impossibility(center_of_mass, 1, 10)
    payload = report.to_json_dict()
    assert payload["robogram"] == "center-of-mass"
    assert payload["n"] == 1
    assert payload["horizon"] == 10
    assert payload["probe"] == {"delta": "1/2", "branch": "alternating"}
    assert set(payload["fairness"]) == {"0", "1"}
    assert payload["bivalence"] == {"complete": True, "failures": []}
    assert payload["certified"] is True


def test_run_impossibility_zero_horizon():
    report = run_impossibility(stay, 1, 0)
    assert report.certified
    assert report.gather == check_will_gather(report.trace)
    assert report.fairness[1].kind == "no-violation-up-to"


def test_balanced_bivalent_predicate():
    u = RobotUniverse(2)
    assert _balanced_bivalent(Position.from_piles(u, 0, 1), 2)
    assert not _balanced_bivalent(Position.from_piles(u, 1, 1), 2)
    lopsided = Position(
        u,
        {r: 0 if str(r) != "R1" else 1 for r in u.robots},
    )
    assert not _balanced_bivalent(lopsided, 2)


def test_run_impossibility_rejects_empty_universe():
    with pytest.raises(EmptyUniverse):
        run_impossibility(stay, 0, 5)
