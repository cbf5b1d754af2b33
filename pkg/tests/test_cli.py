from __future__ import annotations

import json
import subprocess
import sys

import pytest

from passnet.cli import run
from passnet.oracle import brute_partitions
from passnet.tables import read_rows


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_demo_ok(capsys):
    code, out, _ = _run(capsys, "validate", "--demo", "--portable")
    assert code == 0
    assert "# errors: 0" in out


def test_validate_bad_file_exit_1(tmp_path, capsys):
    e, p = tmp_path / "e.csv", tmp_path / "p.csv"
    p.write_text("game_id,possession_id,team,start_s,end_s,relative_score,points_scored\nG,P,T,0,5,0,0\n")
    e.write_text("game_id,possession_id,time_s,passer,receiver\nG,P,1.00,a,a\n")
    code, out, _ = _run(capsys, "validate", "--events", str(e), "--possessions", str(p))
    assert code == 1
    assert "to itself" in out


def test_missing_input_names_path(tmp_path, capsys):
    missing = tmp_path / "nope.csv"
    code, _, err = _run(capsys, "entropy", "--events", str(missing), "--possessions", str(missing))
    assert code == 1
    assert "nope.csv" in err and "file not found" in err


def test_unknown_flag_suggests(capsys):
    code, _, err = _run(capsys, "entropy", "--demo", "--normalise")
    assert code == 2
    assert "did you mean --normalize?" in err


def test_unknown_command_suggests(capsys):
    code, _, err = _run(capsys, "reprot")
    assert code == 2
    assert "did you mean report?" in err


def test_usage_errors(capsys):
    assert _run(capsys, "entropy")[0] == 2
    assert _run(capsys, "entropy", "--demo", "--tau", "7")[0] == 2
    assert _run(capsys, "classify", "--demo", "--min-share", "0.5")[0] == 2
    assert _run(capsys, "report", "--demo")[0] == 2


def test_entropy_normalized_bounded(capsys):
    code, out, _ = _run(capsys, "entropy", "--demo", "--normalize", "--format", "json", "--group-by", "team")
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["normalize"] is True
    for row in doc["rows"]:
        for k in ("se_norm", "te_norm", "rte_norm"):
            assert 0 <= row[k] <= 100


@pytest.mark.parametrize("fmt", ["table", "csv", "json"])
@pytest.mark.parametrize("by", ["team", "game", "team-game", "score-class", "all"])
def test_profile_group_by(capsys, fmt, by):
    code, out, _ = _run(capsys, "profile", "--demo", "--group-by", by, "--format", fmt)
    assert code == 0 and out


def test_classify_search_per_team_matches_reference(capsys, demo_possessions):
    from passnet.scorepart import evaluate_candidate, enumerate_partitions
    code, out, _ = _run(capsys, "classify", "--demo", "--mode", "search", "--metric", "se", "--per-team",
                        "--format", "csv")
    assert code == 0
    rows = read_rows(out)
    for team in sorted({r["scope"] for r in rows}):
        ps = [p for p in demo_possessions if p.team == team]
        cands = brute_partitions([p.relative_score for p in ps], 0.10)
        best, best_obj = None, None
        for cand in enumerate_partitions(ps):
            assert cand.bounds in cands
            part = evaluate_candidate(cand, ps, "se")
            if part is not None and (best_obj is None or part.objective > best_obj):
                best, best_obj = cand, part.objective
        got = [(int(r["lo"]), int(r["hi"])) for r in rows if r["scope"] == team]
        assert tuple(got) == best.bounds
        assert float(rows[[r["scope"] for r in rows].index(team)]["objective"]) == pytest.approx(best_obj, abs=1e-6)


def test_classify_supervised(capsys):
    code, out, _ = _run(capsys, "classify", "--demo", "--mode", "supervised", "--format", "csv")
    assert code == 0
    assert [r["class"] for r in read_rows(out)] == ["large deficit", "small deficit", "balanced",
                                                     "small advantage", "large advantage"]


def test_class_compare_from_classify_output(tmp_path, capsys):
    classes = tmp_path / "classes.json"
    assert run(["classify", "--demo", "--per-team", "--format", "json", "--out", str(classes)]) == 0
    code, out, _ = _run(capsys, "stats", "class-compare", "--classes", str(classes), "--format", "csv")
    assert code == 0
    from_file = read_rows(out)
    code, out, _ = _run(capsys, "stats", "class-compare", "--demo", "--format", "csv")
    direct = read_rows(out)
    assert from_file == direct
    assert {r["measure"] for r in direct} == {"se", "pts_per_poss"}


def test_class_compare_rejects_bad_file(tmp_path, capsys):
    bad = tmp_path / "x.csv"
    bad.write_text("a,b\n1,2\n")
    assert _run(capsys, "stats", "class-compare", "--classes", str(bad))[0] == 1


@pytest.mark.parametrize("test", ["correlation", "winner-loser", "profile-chisq"])
def test_stats_commands(capsys, test):
    code, out, _ = _run(capsys, "stats", test, "--demo", "--format", "csv")
    assert code == 0 and read_rows(out)


def test_feasibility_command(capsys):
    code, out, _ = _run(capsys, "graphlets", "feasibility", "--format", "csv")
    assert code == 0
    assert "edge-count,uniform,3.321928,2.658496,2.355838,68" in out


def test_alternative_maxima_flags(capsys):
    code, out, _ = _run(capsys, "entropy", "--demo", "--normalize", "--feasibility", "edge-count",
                        "--weighting", "stationary", "--format", "json")
    assert code == 0
    assert json.loads(out)["config"]["feasibility"] == "edge-count"


TARGET = "1=0.08,12=0.22,121=0.12,123=0.14,1212=0.06,1213=0.06,1231=0.03,1232=0.06,1234=0.05,other=0.18"


def test_synth_writes_files(tmp_path, capsys):
    code, out, _ = _run(capsys, "synth", "--seed", "5", "--games", "1", "--out", str(tmp_path))
    assert code == 0
    assert {p.name for p in tmp_path.iterdir()} == {"events.csv", "possessions.csv", "manifest.txt"}
    assert _run(capsys, "synth", "--out", str(tmp_path / "t"), "--target", TARGET)[0] == 0
    assert _run(capsys, "synth", "--out", str(tmp_path / "u"), "--target", "bogus=1")[0] == 2


def test_portable_echo_hides_directories(capsys, demo_files):
    _, out, _ = _run(capsys, "entropy", "--demo", "--portable")
    assert str(demo_files[0].parent) not in out
    _, out, _ = _run(capsys, "entropy", "--demo")
    assert str(demo_files[0].resolve()) in out


def test_identical_runs_identical_output(capsys):
    a = _run(capsys, "classify", "--demo", "--per-team", "--metric", "rte", "--format", "json")[1]
    b = _run(capsys, "classify", "--demo", "--per-team", "--metric", "rte", "--format", "json")[1]
    assert a == b


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "passnet.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "passnet" in proc.stdout
