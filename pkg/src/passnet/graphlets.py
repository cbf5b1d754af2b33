"""Window -> one of the ten sequential graphlet states.

A window's passes define the ball-holder walk (passer of the first pass,
then each receiver). Relabelling holders by order of first appearance gives
the state label: "1" for no pass, "12" .. "1234" for one to three passes,
and "other" for four or more.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .ingest import PassEvent, Possession
from .windowing import TimeWindow, WindowParams, windows_of

LABELS: tuple[str, ...] = ("1", "12", "121", "123", "1212", "1213", "1231", "1232", "1234", "other")
N_STATES = len(LABELS)
INDEX = {label: i for i, label in enumerate(LABELS)}
OTHER = "other"
MAX_NAMED_EDGES = 3


class GraphletError(ValueError):
    pass


@dataclass(frozen=True)
class GraphletState:
    label: str
    edge_count: int  # diagnostic only; never distinguishes "other" states

    @property
    def index(self) -> int:
        return INDEX[self.label]

    def __str__(self) -> str:
        return self.label


def label_of_holders(holders: Sequence) -> str:
    """Canonical label of a holder walk (len(holders) == passes + 1)."""
    n_edges = max(len(holders) - 1, 0)
    if n_edges == 0:
        return "1"
    if n_edges > MAX_NAMED_EDGES:
        return OTHER
    seen: dict = {}
    digits = []
    for h in holders:
        if h not in seen:
            seen[h] = len(seen) + 1
        digits.append(str(seen[h]))
    return "".join(digits)


def classify_events(events: Sequence[PassEvent], where: str = "window") -> GraphletState:
    if not events:
        return GraphletState("1", 0)
    holders = [events[0].passer]
    for prev, ev in zip(events, events[1:]):
        if prev.receiver != ev.passer:
            raise GraphletError(
                f"{where}: pass at {ev.time_s:.2f} s starts from {ev.passer!r} "
                f"but the ball was with {prev.receiver!r}")
    holders.extend(ev.receiver for ev in events)
    return GraphletState(label_of_holders(holders), len(events))


def classify(window: TimeWindow) -> GraphletState:
    where = f"window {window.index}"
    if window.possession_id:
        where = f"possession {window.game_id}/{window.possession_id} {where}"
    return classify_events(window.events, where)


def state_sequence(possession: Possession, params: WindowParams = WindowParams()) -> list[GraphletState]:
    return [classify(w) for w in windows_of(possession, params)]


# -- feasible transitions ---------------------------------------------------

def _canonical_walks(n_passes: int) -> list[tuple[int, ...]]:
    """Every holder walk with n_passes passes, up to renaming of players."""
    if n_passes == 0:
        return [(1,)]
    out = []

    def rec(walk: list[int]) -> None:
        if len(walk) == n_passes + 1:
            out.append(tuple(walk))
            return
        for nxt in range(1, max(walk) + 2):
            if nxt != walk[-1]:
                rec(walk + [nxt])

    rec([1])
    return out


def _one_step_labels(walk: tuple[int, ...]) -> set[str]:
    """Labels reachable when at most one pass leaves the front of the window
    and at most one pass joins at the back."""
    n_passes = len(walk) - 1
    fresh = max(walk) + 1
    out = set()
    for drop, append in product((False, True), repeat=2):
        w = list(walk)
        if drop:
            if n_passes == 0:
                continue
            w = w[1:]
        if not append:
            out.add(label_of_holders(w))
            continue
        if n_passes == 0 and not drop:
            # an empty window has no identified holder: any first pass gives "12"
            out.add("12")
            continue
        for receiver in set(w) | {fresh}:
            if receiver != w[-1]:
                out.add(label_of_holders(w + [receiver]))
    return out


def successor_table(max_passes: int = 5) -> dict[str, frozenset[str]]:
    """Feasible successors of each state from walks of up to max_passes passes.

    Walks with 4 and 5 passes represent "other"; longer ones add nothing
    (checked in the test suite by extending to 6 and 7).
    """
    table: dict[str, set[str]] = {label: set() for label in LABELS}
    for n in range(0, max_passes + 1):
        for walk in _canonical_walks(n):
            table[label_of_holders(walk)] |= _one_step_labels(walk)
    return {k: frozenset(v) for k, v in table.items()}


@lru_cache(maxsize=None)
def _default_table() -> dict[str, frozenset[str]]:
    return successor_table(5)


def feasible_successors(state: GraphletState | str) -> frozenset[str]:
    label = state.label if isinstance(state, GraphletState) else state
    return _default_table()[label]


def feasibility_matrix() -> np.ndarray:
    """10x10 boolean matrix, row = from-state, column = to-state."""
    table = _default_table()
    m = np.zeros((N_STATES, N_STATES), dtype=bool)
    for a, succ in table.items():
        for b in succ:
            m[INDEX[a], INDEX[b]] = True
    return m


def edge_count_feasibility() -> np.ndarray:
    """Coarser feasibility: any two states whose pass counts differ by at most
    one, ignoring which players are involved. Used only for comparing
    normalisation maxima."""
    edges = np.array([min(len(lbl) - 1, MAX_NAMED_EDGES + 1) if lbl != OTHER else MAX_NAMED_EDGES + 1
                      for lbl in LABELS])
    return np.abs(edges[:, None] - edges[None, :]) <= 1


def state_indices(states: Iterable[GraphletState | str]) -> list[int]:
    return [INDEX[s.label if isinstance(s, GraphletState) else s] for s in states]
