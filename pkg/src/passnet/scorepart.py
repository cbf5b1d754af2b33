"""Possession classes by relative score.

Two schemes: five fixed classes, and an exhaustive search over every
three-class split of the team's integer score range, keeping splits where
each class holds at least ``min_share`` of the possessions and picking the
one with the largest spread (max - min) of class entropy.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .entropy import METRICS, EntropyReport, Maxima, default_maxima, entropies
from .ingest import Possession
from .profiles import Profile, merge_all, profile_of, stochastic_view
from .windowing import WindowParams

SUPERVISED_BOUNDS: tuple[tuple[str, int | None, int | None], ...] = (
    ("large deficit", None, -10),
    ("small deficit", -9, -3),
    ("balanced", -2, 2),
    ("small advantage", 3, 9),
    ("large advantage", 10, None),
)
SEARCH_CLASS_NAMES = ("lower", "middle", "upper")


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class ScoreClass:
    name: str
    lo: int | None  # inclusive; None = open
    hi: int | None
    possessions: tuple[Possession, ...]
    profile: Profile
    entropy: EntropyReport | None  # None when no possession yields a window
    pts_per_poss: float | None

    def contains(self, score: int) -> bool:
        return (self.lo is None or score >= self.lo) and (self.hi is None or score <= self.hi)

    @property
    def n(self) -> int:
        return len(self.possessions)

    def bounds_text(self) -> str:
        lo = "-inf" if self.lo is None else f"{self.lo:+d}"
        hi = "+inf" if self.hi is None else f"{self.hi:+d}"
        return f"[{lo},{hi}]"


@dataclass(frozen=True)
class Candidate:
    """A three-class split: [lo, f1-1], [f1, f2-1], [f2, hi]."""
    f1: int
    f2: int
    lo: int
    hi: int
    counts: tuple[int, int, int]

    @property
    def bounds(self) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]]:
        return (self.lo, self.f1 - 1), (self.f1, self.f2 - 1), (self.f2, self.hi)


@dataclass(frozen=True)
class Partition:
    classes: tuple[ScoreClass, ScoreClass, ScoreClass]
    metric: str
    objective: float
    f1: int
    f2: int
    n_candidates: int


def class_performance(possessions: Sequence[Possession] | ScoreClass) -> float | None:
    """Points per possession over all members, short possessions included."""
    if isinstance(possessions, ScoreClass):
        possessions = possessions.possessions
    if not possessions:
        return None
    return sum(p.points_scored for p in possessions) / len(possessions)


def _entropy_or_none(profile: Profile, maxima: Maxima) -> EntropyReport | None:
    if profile.n_windows == 0:
        return None
    return entropies(stochastic_view(profile), maxima)


def build_class(name: str, lo: int | None, hi: int | None, possessions: Iterable[Possession],
                params: WindowParams = WindowParams(), maxima: Maxima | None = None,
                profile: Profile | None = None) -> ScoreClass:
    maxima = maxima or default_maxima()
    members = tuple(p for p in possessions
                    if (lo is None or p.relative_score >= lo) and (hi is None or p.relative_score <= hi))
    if profile is None:
        profile = profile_of(members, params)
    profile = profile.with_key(name)
    return ScoreClass(name, lo, hi, members, profile, _entropy_or_none(profile, maxima),
                      class_performance(members))


def supervised_classes(possessions: Iterable[Possession], params: WindowParams = WindowParams(),
                       maxima: Maxima | None = None) -> list[ScoreClass]:
    possessions = list(possessions)
    return [build_class(name, lo, hi, possessions, params, maxima) for name, lo, hi in SUPERVISED_BOUNDS]


def enumerate_partitions(possessions: Iterable[Possession], min_share: float = 0.10,
                         min_values: int = 2) -> list[Candidate]:
    """All valid three-class splits of the integer score range.

    The grid runs over every integer from the lowest to the highest observed
    relative score. Each class spans at least ``min_values`` grid values
    (2 reproduces the reference loop bounds) and holds at least
    ``min_share`` of all possessions.
    """
    scores = [p.relative_score for p in possessions]
    if not scores:
        return []
    lo, hi = min(scores), max(scores)
    total = len(scores)
    per_value: dict[int, int] = defaultdict(int)
    for s in scores:
        per_value[s] += 1
    # prefix[v - lo] = possessions with score < v
    prefix = [0]
    for v in range(lo, hi + 1):
        prefix.append(prefix[-1] + per_value.get(v, 0))

    def below(v: int) -> int:
        return prefix[v - lo]

    out = []
    for f1 in range(lo + min_values, hi - 2 * min_values + 2):
        for f2 in range(f1 + min_values, hi - min_values + 2):
            c1 = below(f1)
            c2 = below(f2) - c1
            c3 = total - c1 - c2
            if min(c1, c2, c3) / total >= min_share:
                out.append(Candidate(f1, f2, lo, hi, (c1, c2, c3)))
    return out


def _value_profiles(possessions: Sequence[Possession], params: WindowParams) -> dict[int, Profile]:
    groups: dict[int, list[Possession]] = defaultdict(list)
    for p in possessions:
        groups[p.relative_score].append(p)
    return {v: profile_of(ps, params) for v, ps in groups.items()}


def evaluate_candidate(candidate: Candidate, possessions: Sequence[Possession], metric: str,
                       params: WindowParams = WindowParams(), maxima: Maxima | None = None,
                       value_profiles: dict[int, Profile] | None = None) -> Partition | None:
    """Build the three classes of a split; None if a class has no window."""
    maxima = maxima or default_maxima()
    if value_profiles is None:
        value_profiles = _value_profiles(possessions, params)
    classes = []
    for name, (a, b) in zip(SEARCH_CLASS_NAMES, candidate.bounds):
        prof = merge_all((pr for v, pr in value_profiles.items() if a <= v <= b), params)
        classes.append(build_class(name, a, b, possessions, params, maxima, profile=prof))
    if any(c.entropy is None for c in classes):
        return None
    values = [c.entropy.value(metric) for c in classes]
    return Partition(tuple(classes), metric, max(values) - min(values),
                     candidate.f1, candidate.f2, 0)


def best_partition(possessions: Iterable[Possession], metric: str = "se",
                   params: WindowParams = WindowParams(), min_share: float = 0.10,
                   maxima: Maxima | None = None, min_values: int = 2) -> Partition:
    """The split maximising max-min class entropy; ties go to the smallest (f1, f2)."""
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")
    possessions = list(possessions)
    candidates = enumerate_partitions(possessions, min_share, min_values)
    if not candidates:
        raise PartitionError("no valid classification")
    value_profiles = _value_profiles(possessions, params)
    best: Partition | None = None
    for cand in candidates:
        part = evaluate_candidate(cand, possessions, metric, params, maxima, value_profiles)
        if part is None:
            continue
        if best is None or part.objective > best.objective:
            best = part
    if best is None:
        raise PartitionError("no valid classification: every candidate has a class without windows")
    return Partition(best.classes, best.metric, best.objective, best.f1, best.f2, len(candidates))
