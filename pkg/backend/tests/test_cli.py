"""Tests for the chipgame command-line interface."""

import json
import logging

import pytest

from app.cli import run
from app.cli.common import EXIT_BUDGET, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE

logger = logging.getLogger(__name__)


def run_cli(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    logger.debug(f"chipgame {' '.join(argv)} -> {code}\nstdout: {captured.out}\nstderr: {captured.err}")
    return code, captured.out, captured.err


def test_solve_json(capsys):
    code, out, _ = run_cli(capsys, "solve", "--k", "2", "--n", "1")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["outcome"] == "RemoverWin"
    assert report["statesExplored"] >= 1


def test_solve_text(capsys):
    code, out, _ = run_cli(capsys, "solve", "--k", "1", "--n", "1", "--format", "text")
    assert code == EXIT_OK
    assert "PusherWin" in out


def test_threshold_text(capsys):
    code, out, _ = run_cli(capsys, "threshold", "--k", "2", "--variant", "restricted", "--c", "1",
                           "--format", "text")
    assert code == EXIT_OK
    assert out.strip() == "3"


def test_threshold_bracket_text(capsys):
    code, out, _ = run_cli(capsys, "threshold", "--k", "2", "--n-max", "2", "--format", "text")
    assert code == EXIT_OK
    assert out.strip() == "[3, 4]"


def test_bracket_text(capsys):
    code, out, _ = run_cli(capsys, "bracket", "--k", "2", "--format", "text")
    assert code == EXIT_OK
    assert out.strip() == "[3, 6]"


def test_verify_positive(capsys):
    code, out, _ = run_cli(capsys, "verify", "--k", "2", "--n", "11", "--variant", "restricted", "--c", "1",
                           "--side", "pusher", "--strategy", "tower")
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] is True


def test_verify_negative_prints_counterexample(capsys):
    code, out, _ = run_cli(capsys, "verify", "--k", "2", "--n", "1", "--side", "pusher",
                           "--strategy", "push-all")
    assert code == EXIT_NEGATIVE
    report = json.loads(out)
    assert report["verdict"] is False
    assert report["counterexample"]["roundCount"] == 2


def test_verify_random_trials(capsys):
    code, out, _ = run_cli(capsys, "verify", "--k", "3", "--n", "6", "--variant", "restricted", "--c", "1",
                           "--side", "remover", "--strategy", "fib-remover", "--trials", "10", "--format", "text")
    assert code == EXIT_OK
    assert "10 games" in out


@pytest.mark.parametrize("argv", [
    ["solve", "--k", "2"],
    ["solve", "--k", "0", "--n", "1"],
    ["threshold", "--k", "2", "--variant", "restricted"],
    ["verify", "--k", "2", "--n", "4", "--side", "pusher", "--strategy", "zigzag"],
    ["play", "--k", "2", "--n", "4", "--pusher", "brick", "--variant", "restricted", "--c", "1"],
    ["frobnicate"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code == EXIT_USAGE
    assert err


def test_budget_exhaustion(capsys):
    code, _, err = run_cli(capsys, "solve", "--k", "3", "--n", "8", "--variant", "restricted", "--c", "1",
                           "--budget", "5")
    assert code == EXIT_BUDGET
    assert "budget" in err.lower()


def test_play_then_replay(capsys, output_dir):
    code, out, _ = run_cli(capsys, "play", "--k", "2", "--n", "4", "--pusher", "brick", "--remover", "random",
                           "--seed", "3", "--output", "games/brick.json")
    assert code == EXIT_OK
    assert out == ""
    saved = output_dir / "games" / "brick.json"
    assert json.loads(saved.read_text())["outcome"] == "PusherWin"

    code, out, _ = run_cli(capsys, "replay", "--transcript", str(saved))
    assert code == EXIT_OK
    assert json.loads(out)["outcome"] == "PusherWin"


def test_replay_rejects_forged_transcript(capsys, output_dir):
    run_cli(capsys, "play", "--k", "2", "--n", "1", "--pusher", "push-all", "--remover", "greedy",
            "--output", "game.json")
    saved = output_dir / "game.json"
    data = json.loads(saved.read_text())
    data["outcome"] = "PusherWin"
    saved.write_text(json.dumps(data))

    code, _, err = run_cli(capsys, "replay", "--transcript", str(saved))
    assert code == EXIT_USAGE
    assert "error" in err


def test_play_text(capsys):
    code, out, _ = run_cli(capsys, "play", "--k", "1", "--n", "1", "--pusher", "push-all", "--remover", "greedy",
                           "--format", "text")
    assert code == EXIT_OK
    assert out.startswith("(k=1, N=1, general): PusherWin after 1 rounds")


def test_emit_then_replay_hypergraph(capsys, output_dir):
    code, out, _ = run_cli(capsys, "emit", "--k", "2", "--n", "4", "--colorer", "constant:value=1",
                           "--pad", "--output", "hg.json", "--edge-list", "hg.txt")
    assert code == EXIT_OK
    edge_lines = (output_dir / "hg.txt").read_text().splitlines()
    assert len(edge_lines) == 8
    assert all(len(line.split()) == 2 for line in edge_lines)

    code, out, _ = run_cli(capsys, "replay", "--hypergraph", str(output_dir / "hg.json"))
    assert code == EXIT_OK
    result = json.loads(out)
    assert result["edges"] == 8
    assert result["monochromatic"]


def test_output_path_may_not_escape(capsys, output_dir):
    code, _, err = run_cli(capsys, "solve", "--k", "1", "--n", "1", "--output", "../outside.json")
    assert code == EXIT_USAGE
    assert ".." in err
