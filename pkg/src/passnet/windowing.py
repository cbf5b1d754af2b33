"""Rolling time windows over a possession.

Window k (0-based here, 1-based in reports) covers the closed interval
[k*tau, k*tau + delta] in possession-relative milliseconds.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable

from .ingest import GameRecord, PassEvent, Possession, iter_possessions


class GapAssumptionWarning(UserWarning):
    """Two passes closer than one window step: more than one event may enter
    or leave between consecutive windows."""


def _to_ms(seconds: float, name: str) -> int:
    ms = round(seconds * 1000)
    if abs(seconds * 1000 - ms) > 1e-6:
        raise ValueError(f"{name}={seconds} is not a whole number of milliseconds")
    return ms


@dataclass(frozen=True)
class WindowParams:
    delta_s: float = 6.0
    tau_s: float = 0.25

    def __post_init__(self) -> None:
        if not 0 < self.tau_s < self.delta_s:
            raise ValueError(f"need 0 < tau < delta, got tau={self.tau_s}, delta={self.delta_s}")
        _to_ms(self.delta_s, "delta")
        _to_ms(self.tau_s, "tau")

    @property
    def delta_ms(self) -> int:
        return _to_ms(self.delta_s, "delta")

    @property
    def tau_ms(self) -> int:
        return _to_ms(self.tau_s, "tau")


@dataclass(frozen=True)
class TimeWindow:
    index: int  # 1-based
    start_ms: int  # possession-relative
    end_ms: int
    events: tuple[PassEvent, ...]
    possession_id: str = ""
    game_id: str = ""

    @property
    def t_start(self) -> float:
        return self.start_ms / 1000.0

    @property
    def t_end(self) -> float:
        return self.end_ms / 1000.0


def window_count(duration_ms: int, params: WindowParams) -> int:
    if duration_ms < params.delta_ms:
        return 0
    return (duration_ms - params.delta_ms) // params.tau_ms + 1


def check_gaps(possession: Possession, params: WindowParams) -> bool:
    """Warn (and return False) when two passes are at most one step apart."""
    tau = params.tau_ms
    for prev, nxt in zip(possession.events, possession.events[1:]):
        if nxt.time_ms - prev.time_ms <= tau:
            warnings.warn(
                f"possession {possession.game_id}/{possession.possession_id}: passes at "
                f"{prev.time_s:.2f} s and {nxt.time_s:.2f} s are within one step "
                f"({params.tau_s} s); consecutive windows may differ by more than one pass",
                GapAssumptionWarning, stacklevel=3)
            return False
    return True


def windows_of(possession: Possession, params: WindowParams = WindowParams()) -> list[TimeWindow]:
    """All complete windows of a possession; empty when it is shorter than delta."""
    n = window_count(possession.duration_ms, params)
    if n == 0:
        return []
    check_gaps(possession, params)
    delta, tau = params.delta_ms, params.tau_ms
    rel = [ev.time_ms - possession.start_ms for ev in possession.events]
    out = []
    lo = hi = 0
    for k in range(n):
        t0 = k * tau
        t1 = t0 + delta
        while lo < len(rel) and rel[lo] < t0:
            lo += 1
        if hi < lo:
            hi = lo
        while hi < len(rel) and rel[hi] <= t1:
            hi += 1
        out.append(TimeWindow(k + 1, t0, t1, possession.events[lo:hi],
                              possession.possession_id, possession.game_id))
    return out


def retained_fraction(dataset: Iterable[GameRecord] | Iterable[Possession],
                      params: WindowParams = WindowParams()) -> float | None:
    """Share of possessions long enough to yield at least one window.

    None for an empty dataset.
    """
    possessions = _flatten(dataset)
    if not possessions:
        return None
    kept = sum(1 for p in possessions if p.duration_ms >= params.delta_ms)
    return kept / len(possessions)


def _flatten(items) -> list[Possession]:
    items = list(items)
    if items and isinstance(items[0], GameRecord):
        return list(iter_possessions(items))
    return items
