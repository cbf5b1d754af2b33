"""Graphlet and transition profiles.

A Profile holds exact integer counts and is merged by addition; transitions
are only counted between consecutive windows of the same possession.
Probabilities live in the derived StochasticView.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .graphlets import LABELS, N_STATES, GraphletState, state_indices, state_sequence
from .ingest import Possession
from .windowing import WindowParams


class ProfileError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Profile:
    params: WindowParams
    state_counts: np.ndarray = field(default_factory=lambda: np.zeros(N_STATES, dtype=np.int64))
    transition_counts: np.ndarray = field(
        default_factory=lambda: np.zeros((N_STATES, N_STATES), dtype=np.int64))
    n_possessions: int = 0
    n_retained: int = 0  # possessions contributing at least one window
    key: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "state_counts", np.array(self.state_counts, dtype=np.int64))
        object.__setattr__(self, "transition_counts", np.array(self.transition_counts, dtype=np.int64))
        if self.state_counts.shape != (N_STATES,) or self.transition_counts.shape != (N_STATES, N_STATES):
            raise ProfileError("profile counts have the wrong shape")
        self.state_counts.setflags(write=False)
        self.transition_counts.setflags(write=False)

    @property
    def n_windows(self) -> int:
        return int(self.state_counts.sum())

    @property
    def n_transitions(self) -> int:
        return int(self.transition_counts.sum())

    def with_key(self, key: str | None) -> Profile:
        return Profile(self.params, self.state_counts, self.transition_counts,
                       self.n_possessions, self.n_retained, key)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Profile):
            return NotImplemented
        return (self.params == other.params
                and np.array_equal(self.state_counts, other.state_counts)
                and np.array_equal(self.transition_counts, other.transition_counts)
                and self.n_possessions == other.n_possessions
                and self.n_retained == other.n_retained)

    def __add__(self, other: Profile) -> Profile:
        return merge(self, other)

    def shares(self) -> dict[str, float]:
        total = self.n_windows
        return {lbl: (int(c) / total if total else 0.0) for lbl, c in zip(LABELS, self.state_counts)}


def counts_from_sequence(states: Sequence[GraphletState | str]) -> tuple[np.ndarray, np.ndarray]:
    idx = np.asarray(state_indices(states), dtype=np.int64)
    sc = np.bincount(idx, minlength=N_STATES).astype(np.int64)
    tc = np.zeros((N_STATES, N_STATES), dtype=np.int64)
    if len(idx) > 1:
        np.add.at(tc, (idx[:-1], idx[1:]), 1)
    return sc, tc


def profile_of_sequences(sequences: Iterable[Sequence[GraphletState | str]],
                         params: WindowParams = WindowParams(), key: str | None = None) -> Profile:
    sc = np.zeros(N_STATES, dtype=np.int64)
    tc = np.zeros((N_STATES, N_STATES), dtype=np.int64)
    n = kept = 0
    for seq in sequences:
        n += 1
        if len(seq):
            kept += 1
            s, t = counts_from_sequence(seq)
            sc += s
            tc += t
    return Profile(params, sc, tc, n, kept, key)


def profile_of(possessions: Iterable[Possession], params: WindowParams = WindowParams(),
               key: str | None = None) -> Profile:
    return profile_of_sequences((state_sequence(p, params) for p in possessions), params, key)


def merge(a: Profile, b: Profile) -> Profile:
    if a.params != b.params:
        raise ProfileError(f"cannot merge profiles built with different window params: {a.params} vs {b.params}")
    key = a.key if a.key == b.key else None
    return Profile(a.params,
                   a.state_counts + b.state_counts,
                   a.transition_counts + b.transition_counts,
                   a.n_possessions + b.n_possessions,
                   a.n_retained + b.n_retained,
                   key)


def merge_all(profiles: Iterable[Profile], params: WindowParams = WindowParams()) -> Profile:
    return reduce(merge, profiles, Profile(params))


@dataclass(frozen=True, eq=False)
class StochasticView:
    p: np.ndarray  # prior state probabilities
    M: np.ndarray  # row-stochastic on observed rows
    M_restricted: np.ndarray  # zero diagonal, row-stochastic on rows with a change of state
    unobserved: np.ndarray  # rows never seen as a transition source
    absorbing_only: np.ndarray  # observed rows with only self-transitions


def stochastic_view(profile: Profile) -> StochasticView:
    if profile.n_windows == 0:
        raise ProfileError("profile has no windows")
    sc = profile.state_counts.astype(float)
    tc = profile.transition_counts.astype(float)
    p = sc / sc.sum()
    out_totals = tc.sum(axis=1)
    unobserved = out_totals == 0
    M = np.divide(tc, out_totals[:, None], out=np.zeros_like(tc), where=~unobserved[:, None])
    off = tc.copy()
    np.fill_diagonal(off, 0.0)
    off_totals = off.sum(axis=1)
    absorbing = ~unobserved & (off_totals == 0)
    # p'_ij = p_ij / (1 - p_ii), computed from counts to keep rows exact
    Mr = np.divide(off, off_totals[:, None], out=np.zeros_like(off), where=off_totals[:, None] > 0)
    return StochasticView(p, M, Mr, unobserved, absorbing)
