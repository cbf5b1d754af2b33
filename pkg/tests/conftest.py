from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

from passnet.cli import demo_paths
from passnet.ingest import PassEvent, Possession, load_dataset

GOLDEN = Path(__file__).parent / "golden"


def make_possession(times_ms, holders, length_ms, *, score=0, points=0, team="AAA",
                    game="G1", pid="P1", start_ms=0) -> Possession:
    """Possession whose i-th pass goes holders[i] -> holders[i+1] at times_ms[i] (relative)."""
    assert len(holders) == len(times_ms) + 1 or not times_ms
    events = tuple(PassEvent(game, pid, start_ms + t, holders[i], holders[i + 1]) for i, t in enumerate(times_ms))
    return Possession(game, pid, team, start_ms, start_ms + length_ms, score, points, events)


def random_possession(rng: random.Random, *, gap_min_ms=300, players=5, length_range=(0, 20000),
                      score_range=(-6, 6), pid="P1", team="AAA") -> Possession:
    length = rng.randint(*length_range)
    times, t = [], rng.randint(0, 3000)
    while t <= length:
        times.append(t)
        t += gap_min_ms + int(rng.expovariate(1 / 1500))
    holders = [rng.randrange(players)]
    for _ in times:
        holders.append(rng.choice([x for x in range(players) if x != holders[-1]]))
    return make_possession(times, [f"p{h}" for h in holders], length, score=rng.randint(*score_range),
                           points=rng.choice((0, 0, 1, 2, 3)), team=team, pid=pid)


@pytest.fixture(scope="session")
def demo_files():
    return demo_paths()


@pytest.fixture(scope="session")
def demo(demo_files):
    return load_dataset(*demo_files)


@pytest.fixture(scope="session")
def demo_possessions(demo):
    return [p for g in demo for p in g.possessions]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
