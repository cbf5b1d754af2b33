from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from passnet.graphlets import LABELS, feasibility_matrix
from passnet.ingest import load_dataset, validate
from passnet.oracle import (PLANTED_BOUNDARY, PLANTED_TEAMS, SynthError, SynthSpec, brute_classify,
                            brute_partitions, brute_sequence, brute_window_count, brute_wilcoxon, generate,
                            planted_dataset, read_manifest)
from passnet.profiles import profile_of

SPAIN_LIKE = {"1": 0.08, "12": 0.22, "121": 0.12, "123": 0.14, "1212": 0.06, "1213": 0.06, "1231": 0.03,
              "1232": 0.06, "1234": 0.05, "other": 0.18}


def _load(ds, tmp_path):
    paths = ds.write(tmp_path)
    return load_dataset(paths["events"], paths["possessions"]), paths


def test_same_seed_same_bytes(tmp_path):
    a = generate(SynthSpec(seed=42))
    b = generate(SynthSpec(seed=42))
    assert a.events_csv() == b.events_csv()
    assert a.possessions_csv() == b.possessions_csv()
    assert a.manifest_text() == b.manifest_text()
    assert generate(SynthSpec(seed=43)).events_csv() != a.events_csv()


def test_bundled_demo_is_seed_42_output(demo_files):
    events, possessions = demo_files
    ds = generate(SynthSpec(seed=42))
    assert events.read_text(encoding="utf-8") == ds.events_csv()
    assert possessions.read_text(encoding="utf-8") == ds.possessions_csv()
    assert read_manifest(events.parent / "manifest.txt") == ds.manifest


def test_generated_data_passes_validation(tmp_path):
    games, _ = _load(generate(SynthSpec(seed=7, score_trajectory="random")), tmp_path)
    assert validate(games).ok


def test_running_scores_have_no_drift(demo):
    assert validate(demo).warnings == ()


def test_manifest_counts_match_pipeline(demo, demo_files):
    man = read_manifest(demo_files[0].parent / "manifest.txt")
    allp = [p for g in demo for p in g.possessions]
    assert int(man["n_possessions"]) == len(allp)
    assert int(man["n_events"]) == sum(len(p.events) for p in allp)
    for team in man["teams"].split(","):
        counts = [int(x) for x in man[f"state_counts.{team}"].split(",")]
        assert profile_of([p for p in allp if p.team == team]).state_counts.tolist() == counts


def test_demo_covers_every_state_and_transition(demo_possessions):
    prof = profile_of(demo_possessions)
    assert (prof.state_counts > 0).all()
    observed = prof.transition_counts > 0
    f = feasibility_matrix()
    assert not (observed & ~f).any()
    assert (observed == f).all()


def test_target_profile_within_one_percent(tmp_path):
    ds = generate(SynthSpec(seed=3, target_profile=SPAIN_LIKE))
    games, _ = _load(ds, tmp_path)
    for team in ds.manifest["teams"].split(","):
        prof = profile_of([p for g in games for p in g.possessions if p.team == team])
        shares = prof.state_counts / prof.n_windows
        target = np.array([SPAIN_LIKE[lbl] for lbl in LABELS])
        assert np.abs(shares - target).max() <= 0.01


def test_infeasible_target_raises_before_writing(tmp_path):
    with pytest.raises(SynthError, match="infeasible"):
        generate(SynthSpec(target_profile={"other": 1.0}, inter_pass_gap_min=2.5))
    with pytest.raises(SynthError, match="infeasible"):
        generate(SynthSpec(target_profile={"1": 1.0}, possession_length=(1.0, 5.0)))
    assert not any(tmp_path.iterdir())


def test_bad_specs():
    with pytest.raises(SynthError):
        generate(SynthSpec(teams=("A",)))
    with pytest.raises(SynthError):
        generate(SynthSpec(inter_pass_gap_min=0.2))
    with pytest.raises(SynthError):
        generate(SynthSpec(target_profile={"1": 0.5}))
    with pytest.raises(SynthError):
        generate(SynthSpec(target_profile={"9": 1.0}))


def test_all_short_possessions_retain_nothing():
    ds = generate(SynthSpec(possession_length=(1.0, 5.5), possessions_per_team=10))
    assert ds.manifest["retained_fraction"] == "0.000000"


def test_brute_classify_on_pairs_and_events():
    assert brute_classify([]) == "1"
    assert brute_classify([("a", "b"), ("b", "a"), ("a", "c")]) == "1213"
    assert brute_classify([("a", "b")] * 4) == "other"


def test_brute_window_count():
    assert brute_window_count(Fraction(10), Fraction(6), Fraction(1, 4)) == 17
    assert brute_window_count(Fraction(5), Fraction(6), Fraction(1, 4)) == 0


def test_brute_sequence():
    assert brute_sequence([3000], [("a", "b")], 10_000) == ["12"] * 13 + ["1"] * 4


def test_brute_partitions_small_ranges():
    assert brute_partitions([]) == []
    assert brute_partitions([0, 1, 2, 3, 4]) == []  # fewer than six grid values
    assert brute_partitions([0, 1, 2, 3, 4, 5]) == [((0, 1), (2, 3), (4, 5))]


def test_brute_wilcoxon_extremes():
    w, p = brute_wilcoxon([1, 2, 3], [0, 0, 0], "greater")
    assert (w, p) == (6.0, 1 / 8)


def test_planted_dataset_structure(tmp_path):
    ds = planted_dataset()
    games, _ = _load(ds, tmp_path)
    report = validate(games)
    assert report.ok  # planted scores drift from the running score: warnings only
    assert len(games) == 6
    for team in PLANTED_TEAMS:
        b = PLANTED_BOUNDARY[team]
        assert ds.manifest[f"planted_boundaries.{team}"] == f"{b},{b + 2}"
    pts = {}
    for g in games:
        for t in g.teams:
            pts[(g.game_id, t)] = (int(ds.manifest[f"planted_rich.{g.game_id}.{t}"]), g.score_of(t))
    ordered = sorted(pts.values())
    assert [p for _, p in ordered] == sorted(p for _, p in ordered)
    assert len({p for _, p in ordered}) == len(ordered)


def test_planted_dataset_deterministic():
    assert planted_dataset(7).events_csv() == planted_dataset(7).events_csv()
    rng = random.Random(0)
    assert planted_dataset(rng.randint(0, 99)).possessions_csv().count("\n") == 361
