from __future__ import annotations

import math
import random
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from passnet.entropy import entropy_values
from passnet.graphlets import LABELS, classify, feasibility_matrix, label_of_holders
from passnet.ingest import PassEvent
from passnet.oracle import brute_classify, brute_windows
from passnet.profiles import StochasticView, merge, profile_of, profile_of_sequences, stochastic_view
from passnet.windowing import TimeWindow, WindowParams, window_count, windows_of

from conftest import make_possession, random_possession

state_seqs = st.lists(st.lists(st.sampled_from(LABELS), max_size=12), max_size=8)


@settings(max_examples=200, deadline=None)
@given(state_seqs)
def test_rows_are_stochastic(seqs):
    prof = profile_of_sequences(seqs)
    if prof.n_windows == 0:
        return
    v = stochastic_view(prof)
    rows = v.M.sum(axis=1)
    assert np.allclose(rows[~v.unobserved], 1.0, atol=1e-12, rtol=0)
    assert (rows[v.unobserved] == 0).all()
    r_rows = v.M_restricted.sum(axis=1)
    live = ~v.unobserved & ~v.absorbing_only
    assert np.allclose(r_rows[live], 1.0, atol=1e-12, rtol=0)
    assert (np.diag(v.M_restricted) == 0).all()
    assert v.p.sum() == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(state_seqs, state_seqs, state_seqs)
def test_merge_is_commutative_and_associative(a, b, c):
    pa, pb, pc = (profile_of_sequences(x) for x in (a, b, c))
    assert merge(pa, pb) == merge(pb, pa)
    assert merge(merge(pa, pb), pc) == merge(pa, merge(pb, pc))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_profile_of_union_equals_merge(seed):
    rng = random.Random(seed)
    ps = [random_possession(rng, pid=f"P{i}") for i in range(rng.randint(0, 8))]
    mask = [rng.random() < 0.5 for _ in ps]
    s1 = [p for p, m in zip(ps, mask) if m]
    s2 = [p for p, m in zip(ps, mask) if not m]
    assert profile_of(ps) == merge(profile_of(s1), profile_of(s2))


def _window_events(rng, n):
    players = [f"q{i}" for i in range(rng.randint(2, 6))]
    holders = [rng.choice(players)]
    for _ in range(n):
        holders.append(rng.choice([x for x in players if x != holders[-1]]))
    return [PassEvent("G", "P", 100 * (i + 1), holders[i], holders[i + 1]) for i in range(n)]


@settings(max_examples=1000, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_classification_invariant_to_player_names(seed):
    rng = random.Random(seed)
    evs = _window_events(rng, rng.randint(0, 6))
    names = sorted({e.passer for e in evs} | {e.receiver for e in evs})
    shuffled = names[:]
    rng.shuffle(shuffled)
    rename = dict(zip(names, [f"x{s}" for s in shuffled]))
    renamed = [PassEvent(e.game_id, e.possession_id, e.time_ms, rename[e.passer], rename[e.receiver]) for e in evs]
    w1 = TimeWindow(1, 0, 6000, tuple(evs))
    w2 = TimeWindow(1, 0, 6000, tuple(renamed))
    assert classify(w1).label == classify(w2).label == brute_classify(evs)


@settings(max_examples=200, deadline=None)
@given(state_seqs, st.permutations(range(10)))
def test_entropy_invariant_to_state_relabelling(seqs, perm):
    prof = profile_of_sequences(seqs)
    if prof.n_windows == 0:
        return
    v = stochastic_view(prof)
    perm = np.array(perm)
    pv = StochasticView(v.p[perm], v.M[np.ix_(perm, perm)], v.M_restricted[np.ix_(perm, perm)],
                        v.unobserved[perm], v.absorbing_only[perm])
    a, b = entropy_values(v), entropy_values(pv)
    assert np.allclose(a, b, atol=1e-12, rtol=0)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_gap_compliant_data_only_makes_feasible_transitions(seed):
    rng = random.Random(seed)
    f = feasibility_matrix()
    p = random_possession(rng, gap_min_ms=260, players=rng.randint(2, 6))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        prof = profile_of([p])
    assert not ((prof.transition_counts > 0) & ~f).any()


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_windows_match_brute_force(seed):
    rng = random.Random(seed)
    p = random_possession(rng, gap_min_ms=1)
    params = WindowParams(rng.choice([2.0, 3.5, 6.0]), rng.choice([0.1, 0.25, 0.5, 1.0]))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        got = [[p.events.index(e) for e in w.events] for w in windows_of(p, params)]
    rel = [e.time_ms - p.start_ms for e in p.events]
    assert got == brute_windows(rel, p.duration_ms, params.delta_ms, params.tau_ms)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 60_000), st.integers(2, 40), st.integers(1, 40))
def test_window_count_formula(length_ms, delta_steps, tau_ms_tenths):
    tau_ms = tau_ms_tenths * 10
    delta_ms = tau_ms * delta_steps
    params = WindowParams(delta_ms / 1000, tau_ms / 1000)
    expected = 0 if length_ms < delta_ms else math.floor((length_ms - delta_ms) / tau_ms) + 1
    assert window_count(length_ms, params) == expected
    assert len(windows_of(make_possession([], ["a"], length_ms), params)) == expected


@given(st.lists(st.integers(0, 5), min_size=1, max_size=7))
def test_every_walk_maps_to_a_named_state(holders):
    walk = [h for i, h in enumerate(holders) if i == 0 or h != holders[i - 1]]
    lbl = label_of_holders(walk)
    assert lbl in LABELS
    assert (lbl == "other") == (len(walk) - 1 >= 4)
