from __future__ import annotations

import json
import subprocess
import sys

import pytest

from lcmsim.cli import main
from lcmsim.execution import read_trace_file


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_simulate_writes_trace_to_stdout(capsys):
    code, out, err = _run(
        capsys, "simulate", "--robogram", "stay", "--demon", "fsync",
        "--n", "1", "--horizon", "10",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 11
    header = json.loads(lines[0])
    assert header == {
        "robogram": "stay",
        "demon": "fsync",
        "n": 1,
        "p0": {"L0": "0/1", "R0": "1/1"},
    }


def test_simulate_writes_trace_file(tmp_path, capsys):
    out_path = tmp_path / "t.jsonl"
    code, out, _ = _run(
        capsys, "simulate", "--robogram", "center-of-mass", "--demon", "fsync",
        "--n", "2", "--horizon", "3", "--out", str(out_path),
    )
    assert code == 0
    trace = read_trace_file(str(out_path))
    assert trace.horizon == 3
    assert trace.robogram_name == "center-of-mass"


def test_simulate_round_robin_gathers_known_case(tmp_path, capsys):
    out_path = tmp_path / "t.jsonl"
    code, *_ = _run(
        capsys, "simulate", "--robogram", "to-other-occupied",
        "--demon", "round-robin:1/1", "--n", "1",
        "--init", "bivalent:0/1:1/1", "--horizon", "5", "--out", str(out_path),
    )
    assert code == 0
    code, out, _ = _run(capsys, "check", str(out_path), "--property", "will-gather")
    assert code == 0
    verdict = json.loads(out)
    assert verdict["verdict"] == "tentatively-gathered"
    assert verdict["round"] == 1


def test_simulate_accepts_json_init(capsys):
    code, out, _ = _run(
        capsys, "simulate", "--robogram", "stay", "--demon", "fsync",
        "--n", "1", "--horizon", "1",
        "--init", '{"L0": "2/3", "R0": "-1/3"}',
    )
    assert code == 0
    header = json.loads(out.splitlines()[0])
    assert header["p0"] == {"L0": "2/3", "R0": "-1/3"}


@pytest.mark.parametrize(
    "argv",
    [
        ("simulate", "--robogram", "stay", "--demon", "fsync", "--n", "0", "--horizon", "1"),
        ("simulate", "--robogram", "stay", "--demon", "fsync", "--n", "1", "--horizon", "-1"),
        ("simulate", "--robogram", "warp", "--demon", "fsync", "--n", "1", "--horizon", "1"),
        ("simulate", "--robogram", "stay", "--demon", "chaos", "--n", "1", "--horizon", "1"),
        ("simulate", "--robogram", "stay", "--demon", "round-robin:0/1", "--n", "1", "--horizon", "1"),
        ("simulate", "--robogram", "stay", "--demon", "random-kfair:x:1", "--n", "1", "--horizon", "1"),
        ("simulate", "--robogram", "stay", "--demon", "fsync", "--n", "1", "--horizon", "1", "--init", "bivalent:0.5:1"),
        ("simulate", "--robogram", "stay", "--demon", "fsync", "--horizon", "1"),
        ("simulate", "--robogram", "stay", "--demon", "adversary", "--n", "1", "--horizon", "1", "--init", '{"L0": "0/1", "R0": "0/1"}'),
    ],
)
def test_simulate_usage_errors_exit_2(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 2
    assert err


def test_simulate_adversary_demon_selector(capsys):
    code, out, _ = _run(
        capsys, "simulate", "--robogram", "center-of-mass", "--demon", "adversary",
        "--n", "1", "--horizon", "2",
    )
    assert code == 0
    lines = out.strip().splitlines()
    header = json.loads(lines[0])
    assert header["demon"] == "adversary-alternating"
    last = json.loads(lines[-1])
    assert last["post"] == {"L0": "1/2", "R0": "3/4"}


def test_simulate_config_file_with_flag_override(tmp_path, capsys):
    config = tmp_path / "scenario.json"
    config.write_text(json.dumps({
        "robogram": "center-of-mass",
        "demon": "fsync",
        "n": 1,
        "horizon": 5,
    }))
    code, out, _ = _run(capsys, "simulate", "--config", str(config), "--horizon", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3  # header + the overriding 2 rounds


def test_simulate_config_unknown_key_rejected(tmp_path, capsys):
    config = tmp_path / "scenario.json"
    config.write_text(json.dumps({"robogram": "stay", "demon": "fsync", "n": 1,
                                  "horizon": 1, "speed": 9}))
    code, _, err = _run(capsys, "simulate", "--config", str(config))
    assert code == 2 and "speed" in err


def test_simulate_batch_config(tmp_path, capsys):
    entries = [
        {"robogram": "stay", "demon": "fsync", "n": 1, "horizon": 2,
         "out": str(tmp_path / "a.jsonl")},
        {"robogram": "to-max", "demon": "round-robin:1/1", "n": 2, "horizon": 4,
         "out": str(tmp_path / "b.jsonl")},
    ]
    config = tmp_path / "batch.json"
    config.write_text(json.dumps(entries))
    code, out, _ = _run(capsys, "simulate", "--config", str(config))
    assert code == 0
    assert read_trace_file(str(tmp_path / "a.jsonl")).horizon == 2
    assert read_trace_file(str(tmp_path / "b.jsonl")).robogram_name == "to-max"

    # same thing in parallel
    for path in ("a.jsonl", "b.jsonl"):
        (tmp_path / path).unlink()
    code, *_ = _run(capsys, "simulate", "--config", str(config), "--jobs", "2")
    assert code == 0
    assert read_trace_file(str(tmp_path / "a.jsonl")).horizon == 2
    assert read_trace_file(str(tmp_path / "b.jsonl")).horizon == 4


def test_simulate_batch_requires_distinct_out_paths(tmp_path, capsys):
    shared = str(tmp_path / "same.jsonl")
    entries = [
        {"robogram": "stay", "demon": "fsync", "n": 1, "horizon": 1, "out": shared},
        {"robogram": "stay", "demon": "fsync", "n": 1, "horizon": 2, "out": shared},
    ]
    config = tmp_path / "batch.json"
    config.write_text(json.dumps(entries))
    code, _, err = _run(capsys, "simulate", "--config", str(config))
    assert code == 2

    entries[1].pop("out")
    config.write_text(json.dumps(entries))
    code, _, err = _run(capsys, "simulate", "--config", str(config))
    assert code == 2


def test_adversary_certifies_and_writes_trace(tmp_path, capsys):
    out_path = tmp_path / "adv.jsonl"
    code, out, _ = _run(
        capsys, "adversary", "--robogram", "center-of-mass", "--n", "3",
        "--horizon", "30", "--out", str(out_path),
    )
    assert code == 0
    report = json.loads(out)
    assert report["certified"] is True
    assert report["probe"]["branch"] == "alternating"
    trace = read_trace_file(str(out_path))
    assert trace.horizon == 30

    code, out, _ = _run(capsys, "check", str(out_path), "--property", "kfair:1")
    assert code == 0
    code, out, _ = _run(capsys, "check", str(out_path), "--property", "kfair:0")
    assert code == 1
    code, out, _ = _run(capsys, "check", str(out_path), "--property", "always-split")
    assert code == 0
    code, out, _ = _run(capsys, "check", str(out_path), "--property", "will-gather")
    assert code == 1


def test_adversary_rejects_leaky_robogram(capsys):
    code, out, _ = _run(
        capsys, "adversary", "--robogram", "broken-id-leak", "--n", "2", "--horizon", "20",
    )
    assert code == 1
    report = json.loads(out)
    assert report["invariance_ok"] is False
    assert report["certified"] is False


def test_adversary_usage_errors(capsys):
    code, *_ = _run(capsys, "adversary", "--robogram", "stay", "--n", "0", "--horizon", "5")
    assert code == 2
    code, *_ = _run(capsys, "adversary", "--robogram", "stay", "--horizon", "5")
    assert code == 2  # argparse: --n is required


def test_check_verdict_json_contract(tmp_path, capsys):
    out_path = tmp_path / "t.jsonl"
    _run(
        capsys, "simulate", "--robogram", "center-of-mass", "--demon", "fsync",
        "--n", "1", "--horizon", "4", "--out", str(out_path),
    )
    code, out, _ = _run(capsys, "check", str(out_path), "--property", "will-gather")
    assert code == 0
    verdict = json.loads(out)
    assert verdict == {
        "property": "will-gather",
        "verdict": "tentatively-gathered",
        "horizon": 4,
        "round": 1,
        "point": "1/2",
    }
    code, out, _ = _run(capsys, "check", str(out_path), "--property", "always-split")
    assert code == 1
    assert json.loads(out) == {
        "property": "always-split",
        "verdict": "violated",
        "round": 1,
        "horizon": 4,
    }
    code, out, _ = _run(capsys, "check", str(out_path), "--property", "kfair:0")
    assert code == 0
    assert json.loads(out) == {
        "property": "kfair:0",
        "verdict": "no-violation-up-to",
        "horizon": 4,
    }


def test_check_rejects_bad_inputs(tmp_path, capsys):
    missing = str(tmp_path / "nope.jsonl")
    code, *_ = _run(capsys, "check", missing, "--property", "will-gather")
    assert code == 2

    garbled = tmp_path / "bad.jsonl"
    garbled.write_text("not json\n")
    code, *_ = _run(capsys, "check", str(garbled), "--property", "will-gather")
    assert code == 2

    out_path = tmp_path / "t.jsonl"
    _run(
        capsys, "simulate", "--robogram", "stay", "--demon", "fsync",
        "--n", "1", "--horizon", "2", "--out", str(out_path),
    )
    code, *_ = _run(capsys, "check", str(out_path), "--property", "warmth")
    assert code == 2
    code, *_ = _run(capsys, "check", str(out_path), "--property", "kfair:-1")
    assert code == 2
    code, *_ = _run(capsys, "check", str(out_path), "--property", "kfair:x")
    assert code == 2

    # header naming a robogram outside the registry cannot be replayed
    foreign = tmp_path / "foreign.jsonl"
    foreign.write_text(
        out_path.read_text().replace('"robogram": "stay"', '"robogram": "custom"')
    )
    code, *_ = _run(capsys, "check", str(foreign), "--property", "will-gather")
    assert code == 2


def test_check_detects_corrupt_trace(tmp_path, capsys):
    out_path = tmp_path / "t.jsonl"
    _run(
        capsys, "simulate", "--robogram", "center-of-mass", "--demon", "fsync",
        "--n", "1", "--horizon", "3", "--out", str(out_path),
    )
    lines = out_path.read_text().splitlines()
    lines[2] = lines[2].replace('"L0": "1/2"', '"L0": "1/3"')
    corrupt = tmp_path / "corrupt.jsonl"
    corrupt.write_text("\n".join(lines) + "\n")
    code, _, err = _run(capsys, "check", str(corrupt), "--property", "will-gather")
    assert code == 3
    assert "round 1" in err


def test_check_kfair_rejects_zero_round_trace(tmp_path, capsys):
    out_path = tmp_path / "t.jsonl"
    _run(
        capsys, "simulate", "--robogram", "stay", "--demon", "fsync",
        "--n", "1", "--horizon", "0", "--out", str(out_path),
    )
    code, *_ = _run(capsys, "check", str(out_path), "--property", "kfair:1")
    assert code == 2


def test_invariance_passes_for_spectrum_robograms(capsys):
    code, out, _ = _run(
        capsys, "invariance", "--robogram", "center-of-mass", "--samples", "300",
    )
    assert code == 0
    assert json.loads(out) == {"robogram": "center-of-mass", "samples": 300, "ok": True}


def test_invariance_prints_counterexample(capsys):
    code, out, _ = _run(
        capsys, "invariance", "--robogram", "broken-id-leak", "--samples", "300",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["robogram"] == "broken-id-leak"
    assert set(payload["counterexample"]) == {"n", "position", "permutation"}


def test_invariance_is_seed_deterministic(capsys):
    one = _run(capsys, "invariance", "--robogram", "broken-id-leak",
               "--samples", "50", "--seed", "3")
    two = _run(capsys, "invariance", "--robogram", "broken-id-leak",
               "--samples", "50", "--seed", "3")
    assert one == two


def test_invariance_uses_lcm_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("LCM_SEED", "7")
    from_env = _run(capsys, "invariance", "--robogram", "broken-id-leak", "--samples", "50")
    monkeypatch.delenv("LCM_SEED")
    explicit = _run(capsys, "invariance", "--robogram", "broken-id-leak",
                    "--samples", "50", "--seed", "7")
    assert from_env == explicit


def test_invariance_usage_errors(capsys):
    code, *_ = _run(capsys, "invariance", "--robogram", "center-of-mass", "--samples", "0")
    assert code == 2
    code, *_ = _run(capsys, "invariance", "--samples", "5")
    assert code == 2


def test_argparse_failures_map_to_exit_2(capsys):
    assert main([]) == 2
    assert main(["warp-drive"]) == 2
    assert main(["simulate", "--bogus"]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()


def test_console_script_entry_point():
    proc = subprocess.run(
        ["lcmsim", "simulate", "--robogram", "stay", "--demon", "fsync",
         "--n", "1", "--horizon", "10"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert len(proc.stdout.strip().splitlines()) == 11


def test_module_invocation_matches_script():
    proc = subprocess.run(
        [sys.executable, "-m", "lcmsim.cli", "adversary", "--robogram", "to-max",
         "--n", "1", "--horizon", "8"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["probe"]["branch"] == "swap-fsync"
