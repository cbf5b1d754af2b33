"""Study-level computations built on profiles, entropies, partitions and tests."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .entropy import METRICS, EntropyReport, Maxima, default_maxima, entropies
from .ingest import GameRecord, Possession
from .profiles import Profile, profile_of, stochastic_view
from .scorepart import SEARCH_CLASS_NAMES, PartitionError, ScoreClass, best_partition, supervised_classes
from .stats import TestResult, chisq_independence, spearman, wilcoxon_signed_rank
from .windowing import WindowParams

GROUP_KEYS = ("team", "game", "team-game", "score-class", "all")
COMPARE_MEASURES = ("se", "te", "rte", "pts_per_poss")


@dataclass(frozen=True)
class Group:
    key: str
    possessions: tuple[Possession, ...]
    profile: Profile
    entropy: EntropyReport | None
    points: int

    @property
    def pts_per_poss(self) -> float | None:
        return self.points / len(self.possessions) if self.possessions else None


def _make_group(key: str, possessions: Sequence[Possession], params: WindowParams, maxima: Maxima) -> Group:
    prof = profile_of(possessions, params, key)
    ent = entropies(stochastic_view(prof), maxima) if prof.n_windows else None
    return Group(key, tuple(possessions), prof, ent, sum(p.points_scored for p in possessions))


def group_possessions(dataset: Sequence[GameRecord], by: str) -> dict[str, list[Possession]]:
    """Possessions keyed by group, in first-seen order (score classes in bound order)."""
    if by not in GROUP_KEYS:
        raise ValueError(f"group-by must be one of {GROUP_KEYS}, got {by!r}")
    out: dict[str, list[Possession]] = {}
    if by == "score-class":
        allp = [p for g in dataset for p in g.possessions]
        for cls in supervised_classes(allp):
            out[cls.name] = list(cls.possessions)
        return out
    for game in dataset:
        for p in game.possessions:
            if by == "team":
                key = p.team
            elif by == "game":
                key = game.game_id
            elif by == "team-game":
                key = f"{game.game_id}/{p.team}"
            else:
                key = "all"
            out.setdefault(key, []).append(p)
    if by == "team":
        out = dict(sorted(out.items()))
    return out


def groups(dataset: Sequence[GameRecord], by: str, params: WindowParams = WindowParams(),
           maxima: Maxima | None = None) -> list[Group]:
    maxima = maxima or default_maxima()
    return [_make_group(k, ps, params, maxima) for k, ps in group_possessions(dataset, by).items()]


@dataclass(frozen=True)
class TeamGame:
    game_id: str
    team: str
    opponent: str | None
    points: int
    opponent_points: int | None
    group: Group

    @property
    def result(self) -> str:
        if self.opponent_points is None:
            return "n/a"
        if self.points > self.opponent_points:
            return "win"
        return "loss" if self.points < self.opponent_points else "draw"


def team_games(dataset: Sequence[GameRecord], params: WindowParams = WindowParams(),
               maxima: Maxima | None = None) -> list[TeamGame]:
    maxima = maxima or default_maxima()
    out = []
    for game in dataset:
        for team in game.teams:
            ps = [p for p in game.possessions if p.team == team]
            opp = game.opponent_of(team)
            out.append(TeamGame(game.game_id, team, opp, game.score_of(team),
                                None if opp is None else game.score_of(opp),
                                _make_group(f"{game.game_id}/{team}", ps, params, maxima)))
    return out


def correlation(rows: Sequence[TeamGame]) -> dict[str, TestResult]:
    """Spearman rho between each entropy of a team-game and the points it scored."""
    usable = [r for r in rows if r.group.entropy is not None]
    out = {}
    for m in METRICS:
        x = [r.group.entropy.value(m) for r in usable]
        y = [r.points for r in usable]
        if len(x) < 3:
            out[m] = TestResult(None, None, len(x), "undefined", note="fewer than 3 team-games")
        else:
            out[m] = spearman(x, y)
    return out


def winner_loser(rows: Sequence[TeamGame]) -> tuple[dict[str, TestResult], int]:
    """Paired test winner > loser per metric; drawn or one-sided games are skipped.

    Returns the results and the number of games used.
    """
    by_game: dict[str, dict[str, TeamGame]] = defaultdict(dict)
    for r in rows:
        by_game[r.game_id][r.result] = r
    pairs = [(g["win"], g["loss"]) for g in by_game.values()
             if "win" in g and "loss" in g and g["win"].group.entropy and g["loss"].group.entropy]
    out = {}
    for m in METRICS:
        a = [w.group.entropy.value(m) for w, _ in pairs]
        b = [loser.group.entropy.value(m) for _, loser in pairs]
        out[m] = wilcoxon_signed_rank(a, b, alternative="greater")
    return out, len(pairs)


@dataclass(frozen=True)
class TeamPartition:
    team: str
    metric: str
    classes: tuple[ScoreClass, ...] | None
    objective: float | None
    n_candidates: int
    error: str = ""


def partitions_by_team(dataset: Sequence[GameRecord], metric: str, params: WindowParams = WindowParams(),
                       min_share: float = 0.10, maxima: Maxima | None = None) -> list[TeamPartition]:
    out = []
    for team, ps in group_possessions(dataset, "team").items():
        try:
            part = best_partition(ps, metric, params, min_share, maxima)
        except PartitionError as exc:
            out.append(TeamPartition(team, metric, None, None, 0, str(exc)))
            continue
        out.append(TeamPartition(team, metric, part.classes, part.objective, part.n_candidates))
    return out


def class_compare(values: Mapping[str, Mapping[str, Mapping[str, float]]],
                  measures: Iterable[str] = COMPARE_MEASURES) -> list[tuple[str, str, str, TestResult]]:
    """Paired tests between score classes across teams.

    ``values[team][class][measure]`` holds per-team class values; each team
    contributes one pair per class comparison. Returns
    (measure, class_a, class_b, result) for every pair of classes.
    """
    out = []
    teams = sorted(values)
    for measure in measures:
        for a, b in combinations(SEARCH_CLASS_NAMES, 2):
            xa, xb = [], []
            for t in teams:
                va, vb = values[t].get(a, {}).get(measure), values[t].get(b, {}).get(measure)
                if va is not None and vb is not None:
                    xa.append(va)
                    xb.append(vb)
            if not xa:
                continue
            out.append((measure, a, b, wilcoxon_signed_rank(xa, xb)))
    return out


def class_values(partitions: Sequence[TeamPartition]) -> dict[str, dict[str, dict[str, float]]]:
    """Per-team class values of the partition metric and pts/poss."""
    out: dict[str, dict[str, dict[str, float]]] = {}
    for tp in partitions:
        if tp.classes is None:
            continue
        out[tp.team] = {c.name: {tp.metric: c.entropy.value(tp.metric), "pts_per_poss": c.pts_per_poss}
                        for c in tp.classes}
    return out


def profile_chisq(classes: Sequence[ScoreClass]) -> list[tuple[str, str, TestResult | None, str]]:
    """Chi-square between graphlet profiles of every pair of classes."""
    out = []
    for a, b in combinations(classes, 2):
        if a.profile.n_windows == 0 or b.profile.n_windows == 0:
            out.append((a.name, b.name, None, "class without windows"))
            continue
        out.append((a.name, b.name, chisq_independence(a.profile.state_counts, b.profile.state_counts), ""))
    return out
