from __future__ import annotations

import warnings

import pytest

from passnet.windowing import (GapAssumptionWarning, WindowParams, retained_fraction, window_count,
                               windows_of)

from conftest import make_possession


def test_ten_second_possession_has_seventeen_windows():
    p = make_possession([], ["a"], 10_000)
    ws = windows_of(p)
    assert len(ws) == 17
    assert (ws[0].start_ms, ws[0].end_ms) == (0, 6000)
    assert (ws[-1].start_ms, ws[-1].end_ms) == (4000, 10000)
    assert [w.index for w in ws] == list(range(1, 18))


def test_exactly_delta_gives_one_window():
    assert len(windows_of(make_possession([], ["a"], 6000))) == 1


def test_short_possession_gives_no_window():
    p = make_possession([1000], ["a", "b"], 5990)
    assert windows_of(p) == []


def test_boundaries_are_closed():
    p = make_possession([6000], ["a", "b"], 6250)
    first, second = windows_of(p)
    assert len(first.events) == 1  # event exactly at delta
    assert len(second.events) == 1
    q = make_possession([250, 5000], ["a", "b", "c"], 6250)
    first, second = windows_of(q)
    assert len(first.events) == 2 and len(second.events) == 2  # event exactly at the second start


def test_event_leaves_after_its_time():
    p = make_possession([100], ["a", "b"], 7000)
    counts = [len(w.events) for w in windows_of(p)]
    assert counts == [1] + [0] * 4


def test_window_count_formula():
    params = WindowParams()
    assert window_count(10_000, params) == 17
    assert window_count(6_249, params) == 1
    assert window_count(6_250, params) == 2
    assert window_count(5_999, params) == 0


def test_params_validation():
    with pytest.raises(ValueError):
        WindowParams(6.0, 6.0)
    with pytest.raises(ValueError):
        WindowParams(6.0, 0.0)
    with pytest.raises(ValueError):
        WindowParams(6.0, 0.0005)
    assert WindowParams(3.0, 0.5).tau_ms == 500


def test_close_passes_warn():
    p = make_possession([1000, 1200], ["a", "b", "c"], 8000)
    with pytest.warns(GapAssumptionWarning, match="within one step"):
        windows_of(p)
    q = make_possession([1000, 1300], ["a", "b", "c"], 8000)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        windows_of(q)


def test_retained_fraction(demo):
    assert retained_fraction([]) is None
    short = [make_possession([], ["a"], 1000), make_possession([], ["a"], 7000)]
    assert retained_fraction(short) == 0.5
    assert retained_fraction(short[:1]) == 0.0
    assert 0 < retained_fraction(demo) <= 1
