from __future__ import annotations

import numpy as np
import pytest

from passnet.graphlets import INDEX
from passnet.profiles import (Profile, ProfileError, merge, merge_all, profile_of, profile_of_sequences,
                              stochastic_view)
from passnet.windowing import WindowParams

from conftest import make_possession


def test_counts_from_sequences():
    prof = profile_of_sequences([["1", "1", "12"], ["12", "121"], []])
    assert prof.n_windows == 5
    assert prof.n_transitions == 3  # 2 + 1, none across possessions
    assert prof.n_possessions == 3 and prof.n_retained == 2
    assert prof.state_counts[INDEX["12"]] == 2
    assert prof.transition_counts[INDEX["1"], INDEX["1"]] == 1
    assert prof.transition_counts[INDEX["12"], INDEX["121"]] == 1
    assert prof.transition_counts[INDEX["1"], INDEX["121"]] == 0


def test_no_transition_across_possession_boundary():
    a = profile_of_sequences([["1"], ["12"]])
    assert a.n_transitions == 0


def test_profile_of_possessions_matches_sequence_counts():
    p = make_possession([3000], ["a", "b"], 10_000)
    prof = profile_of([p])
    assert prof.state_counts[INDEX["12"]] == 13
    assert prof.state_counts[INDEX["1"]] == 4
    assert prof.transition_counts[INDEX["12"], INDEX["1"]] == 1


def test_merge_and_key():
    a = profile_of_sequences([["1", "12"]], key="x")
    b = profile_of_sequences([["12", "12"]], key="x")
    m = merge(a, b)
    assert m.key == "x"
    assert m.n_windows == 4 and m.n_possessions == 2
    assert (a + profile_of_sequences([["1"]], key="y")).key is None
    assert merge_all([a, b]) == m


def test_merge_rejects_mixed_params():
    a = profile_of_sequences([["1"]], WindowParams(6.0, 0.25))
    b = profile_of_sequences([["1"]], WindowParams(5.0, 0.25))
    with pytest.raises(ProfileError, match="different window params"):
        merge(a, b)


def test_profile_is_read_only():
    prof = profile_of_sequences([["1"]])
    with pytest.raises(ValueError):
        prof.state_counts[0] = 5


def test_shape_check():
    with pytest.raises(ProfileError):
        Profile(WindowParams(), np.zeros(9))


def test_stochastic_view():
    prof = profile_of_sequences([["1", "1", "12", "12", "1"]])
    v = stochastic_view(prof)
    i1, i12 = INDEX["1"], INDEX["12"]
    assert v.p[i1] == pytest.approx(0.6)
    assert v.M[i1, i1] == pytest.approx(0.5) and v.M[i1, i12] == pytest.approx(0.5)
    assert v.M[i12, i1] == pytest.approx(0.5)
    assert v.M_restricted[i1, i12] == 1.0 and v.M_restricted[i12, i1] == 1.0
    assert v.unobserved.sum() == 8
    assert not v.absorbing_only.any()


def test_absorbing_row():
    v = stochastic_view(profile_of_sequences([["12", "12", "12"]]))
    assert v.absorbing_only[INDEX["12"]]
    assert v.M_restricted.sum() == 0


def test_empty_profile_has_no_view():
    with pytest.raises(ProfileError, match="no windows"):
        stochastic_view(profile_of_sequences([[]]))


def test_shares():
    s = profile_of_sequences([["1", "12", "12", "12"]]).shares()
    assert s["12"] == 0.75 and s["other"] == 0.0
