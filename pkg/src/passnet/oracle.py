"""Synthetic datasets and brute-force reference implementations.

Nothing here imports the windowing, graphlet, profile, partition or stats
modules: the reference versions are written from scratch so that tests can
compare two independent routes.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

STATE_LABELS = ("1", "12", "121", "123", "1212", "1213", "1231", "1232", "1234", "other")

PAYOFFS = ((0, 0.50), (1, 0.05), (2, 0.35), (3, 0.10))


class SynthError(ValueError):
    pass


# -- reference implementations ---------------------------------------------

def _pairs(passes) -> list[tuple[str, str]]:
    if hasattr(passes, "events"):
        passes = passes.events
    return [(p.passer, p.receiver) if hasattr(p, "passer") else (p[0], p[1]) for p in passes]


def brute_classify(passes) -> str:
    """Label of a window given its passes (objects with passer/receiver or pairs)."""
    pairs = _pairs(passes)
    if len(pairs) == 0:
        return "1"
    if len(pairs) >= 4:
        return "other"
    walk = [pairs[0][0]] + [r for _, r in pairs]
    order: list[str] = []
    for h in walk:
        if h not in order:
            order.append(h)
    return "".join(str(order.index(h) + 1) for h in walk)


def brute_windows(event_ms: Sequence[int], duration_ms: int, delta_ms: int, tau_ms: int) -> list[list[int]]:
    """Indices of events in each closed window [k*tau, k*tau + delta]."""
    out = []
    k = 0
    while k * tau_ms + delta_ms <= duration_ms:
        a, b = k * tau_ms, k * tau_ms + delta_ms
        out.append([i for i, t in enumerate(event_ms) if a <= t <= b])
        k += 1
    return out


def brute_window_count(duration: Fraction, delta: Fraction, tau: Fraction) -> int:
    if duration < delta:
        return 0
    return math.floor((duration - delta) / tau) + 1


def brute_sequence(rel_ms: Sequence[int], pairs: Sequence[tuple[str, str]], duration_ms: int,
                   delta_ms: int = 6000, tau_ms: int = 250) -> list[str]:
    return [brute_classify([pairs[i] for i in idx])
            for idx in brute_windows(rel_ms, duration_ms, delta_ms, tau_ms)]


def brute_partitions(scores: Sequence[int], p: float = 0.10) -> list[tuple[tuple[int, int], ...]]:
    """Three-class splits, transcribed loop for loop from the reference
    pseudocode (1-based grid f, inclusive ranges)."""
    if not scores:
        return []
    f = [None] + list(range(min(scores), max(scores) + 1))  # f[1..n]
    n = len(f) - 1
    c = []
    if n < 6:
        return c
    total = len(scores)
    for f1 in range(f[3], f[n - 3] + 1):
        for f2 in range(f1 + 2, f[n - 1] + 1):
            class1 = (f[1], f1 - 1)
            class2 = (f1, f2 - 1)
            class3 = (f2, f[n])
            shares = [sum(1 for s in scores if lo <= s <= hi) / total for lo, hi in (class1, class2, class3)]
            if all(share >= p for share in shares):
                c.append((class1, class2, class3))
    return c


def _naive_midranks(values: Sequence[float]) -> list[float]:
    out = []
    for v in values:
        below = sum(1 for w in values if w < v)
        equal = sum(1 for w in values if w == v)
        out.append(below + (equal + 1) / 2)
    return out


def brute_wilcoxon(a: Sequence[float], b: Sequence[float], alternative: str = "two-sided") -> tuple[float, float]:
    """(W+, p) by listing every one of the 2^n sign assignments."""
    d = [round(x - y, 12) for x, y in zip(a, b)]
    d = [x for x in d if x != 0]
    ranks = _naive_midranks([abs(x) for x in d])
    w = sum(r for r, x in zip(ranks, d) if x > 0)
    le = ge = 0
    for signs in itertools.product((False, True), repeat=len(d)):
        s = sum(r for r, pos in zip(ranks, signs) if pos)
        if s <= w + 1e-9:
            le += 1
        if s >= w - 1e-9:
            ge += 1
    total = 2 ** len(d)
    if alternative == "greater":
        return w, ge / total
    if alternative == "less":
        return w, le / total
    return w, min(1.0, 2 * min(le, ge) / total)


def brute_feasible_pairs(sequences: Sequence[Sequence[str]]) -> set[tuple[str, str]]:
    return {(a, b) for seq in sequences for a, b in zip(seq, seq[1:])}


# -- synthetic data ----------------------------------------------------------

@dataclass(frozen=True)
class SynthSpec:
    seed: int = 42
    n_games: int = 2
    teams: tuple[str, ...] = ("ARG", "ESP", "FRA", "AUS")
    possessions_per_team: int = 90  # per game
    players_per_team: int = 5
    possession_length: tuple[float, float] = (2.0, 24.0)  # seconds, uniform
    mean_gap: tuple[float, float] = (1.0, 3.5)  # per-possession mean seconds between passes
    inter_pass_gap_min: float = 0.30
    return_pass_prob: tuple[float, float] = (0.0, 0.7)
    target_profile: Mapping[str, float] | None = None  # state label -> share, applied to every team
    target_tolerance: float = 0.01
    score_trajectory: str = "running"  # "running" | "random"
    delta_s: float = 6.0
    tau_s: float = 0.25


@dataclass
class SynthPossession:
    game_id: str
    possession_id: str
    team: str
    start_cs: int
    end_cs: int
    relative_score: int
    points_scored: int
    passes: list[tuple[int, str, str]] = field(default_factory=list)  # (time_cs, passer, receiver)


@dataclass
class SynthDataset:
    possessions: list[SynthPossession]
    manifest: dict[str, str]

    def events_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["game_id", "possession_id", "time_s", "passer", "receiver"])
        for p in self.possessions:
            for t, a, b in p.passes:
                w.writerow([p.game_id, p.possession_id, _cs(t), a, b])
        return buf.getvalue()

    def possessions_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["game_id", "possession_id", "team", "start_s", "end_s", "relative_score", "points_scored"])
        for p in self.possessions:
            w.writerow([p.game_id, p.possession_id, p.team, _cs(p.start_cs), _cs(p.end_cs),
                        p.relative_score, p.points_scored])
        return buf.getvalue()

    def manifest_text(self) -> str:
        width = max(len(k) for k in self.manifest)
        return "".join(f"{k.ljust(width)} = {v}\n" for k, v in self.manifest.items())

    def write(self, out_dir: str | Path) -> dict[str, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = {"events": out / "events.csv", "possessions": out / "possessions.csv",
                 "manifest": out / "manifest.txt"}
        for key, text in (("events", self.events_csv()), ("possessions", self.possessions_csv()),
                          ("manifest", self.manifest_text())):
            with open(paths[key], "w", newline="", encoding="utf-8") as fh:
                fh.write(text)
        return paths


def read_manifest(path: str | Path) -> dict[str, str]:
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def _cs(cs: int) -> str:
    return f"{cs // 100}.{cs % 100:02d}"


def _ms(seconds: float) -> int:
    return int(round(seconds * 1000))


def _pick_points(rng: random.Random) -> int:
    x = rng.random()
    acc = 0.0
    for pts, prob in PAYOFFS:
        acc += prob
        if x < acc:
            return pts
    return PAYOFFS[-1][0]


def _random_passes(rng: random.Random, length_cs: int, mean_gap: float, gap_min_cs: int,
                   roster: Sequence[str], return_prob: float) -> list[tuple[int, str, str]]:
    passes: list[tuple[int, str, str]] = []
    extra = max(mean_gap - gap_min_cs / 100, 0.01)
    t = int(round(rng.uniform(0.0, min(mean_gap, length_cs / 100)) * 100))
    holder = rng.choice(roster)
    previous = None
    while t < length_cs:
        if previous is not None and rng.random() < return_prob:
            receiver = previous
        else:
            receiver = rng.choice([x for x in roster if x != holder])
        passes.append((t, holder, receiver))
        previous, holder = holder, receiver
        t += gap_min_cs + int(round(rng.expovariate(1.0 / extra) * 100))
    return passes


def _state_counts(poss: Sequence[SynthPossession], delta_ms: int, tau_ms: int) -> tuple[list[int], set]:
    counts = [0] * len(STATE_LABELS)
    pairs_seen: set[tuple[str, str]] = set()
    for p in poss:
        rel = [(t - p.start_cs) * 10 for t, _, _ in p.passes]
        seq = brute_sequence(rel, [(a, b) for _, a, b in p.passes], (p.end_cs - p.start_cs) * 10,
                             delta_ms, tau_ms)
        for s in seq:
            counts[STATE_LABELS.index(s)] += 1
        pairs_seen |= brute_feasible_pairs([seq])
    return counts, pairs_seen


def _schedule(teams: Sequence[str], n_games: int) -> list[tuple[str, str]]:
    pairs = list(itertools.combinations(teams, 2))
    # disjoint pairings first so that two games involve four distinct teams
    ordered = []
    remaining = pairs[:]
    while remaining:
        used: set[str] = set()
        for pair in list(remaining):
            if not used & set(pair):
                ordered.append(pair)
                used |= set(pair)
                remaining.remove(pair)
    return [ordered[i % len(ordered)] for i in range(n_games)]


def _check_spec(spec: SynthSpec) -> None:
    if len(spec.teams) < 2:
        raise SynthError("need at least two teams")
    if spec.inter_pass_gap_min <= spec.tau_s:
        raise SynthError("inter_pass_gap_min must exceed the window step")
    lo, hi = spec.possession_length
    if not 0 < lo <= hi:
        raise SynthError("possession_length must be 0 < min <= max")
    if spec.score_trajectory not in ("running", "random"):
        raise SynthError(f"unknown score_trajectory {spec.score_trajectory!r}")
    target = spec.target_profile
    if target is None:
        return
    unknown = set(target) - set(STATE_LABELS)
    if unknown:
        raise SynthError(f"unknown states in target profile: {sorted(unknown)}")
    if any(v < 0 for v in target.values()) or abs(sum(target.values()) - 1.0) > 1e-6:
        raise SynthError("target profile must be non-negative shares summing to 1")
    if hi < spec.delta_s:
        raise SynthError("target profile is infeasible: no possession reaches the window length")
    for label, share in target.items():
        passes = 4 if label == "other" else len(label) - 1
        if share > 0 and passes > 1 and (passes - 1) * spec.inter_pass_gap_min > spec.delta_s:
            raise SynthError(f"target profile is infeasible: {label!r} needs {passes} passes inside "
                             f"{spec.delta_s} s with gaps >= {spec.inter_pass_gap_min} s")


def generate(spec: SynthSpec = SynthSpec()) -> SynthDataset:
    """Deterministic synthetic dataset for a seed, with a ground-truth manifest."""
    _check_spec(spec)
    rng = random.Random(spec.seed)
    gap_min_cs = int(math.ceil(spec.inter_pass_gap_min * 100 - 1e-9))
    delta_ms, tau_ms = _ms(spec.delta_s), _ms(spec.tau_s)
    rosters = {t: [f"{t}_{k}" for k in range(4, 4 + spec.players_per_team)] for t in spec.teams}
    games = _schedule(spec.teams, spec.n_games)

    def draw(team: str, min_len: float | None = None):
        lo, hi = spec.possession_length
        if min_len is not None:
            lo = max(lo, min_len)
        length_cs = int(round(rng.uniform(lo, hi) * 100))
        passes = _random_passes(rng, length_cs, rng.uniform(*spec.mean_gap), gap_min_cs,
                                rosters[team], rng.uniform(*spec.return_pass_prob))
        return length_cs, passes

    # per team: list of (length_cs, relative passes) shells, then laid on a timeline
    shells: dict[tuple[int, str], list[tuple[int, list]]] = {}
    for g, (ta, tb) in enumerate(games):
        for team in (ta, tb):
            shells[(g, team)] = [draw(team) for _ in range(spec.possessions_per_team)]
    if spec.target_profile is not None:
        for team in spec.teams:
            keys = [k for k in shells if k[1] == team]
            if keys:
                _fit_target(rng, shells, keys, spec, lambda: draw(team, spec.delta_s), delta_ms, tau_ms)

    possessions: list[SynthPossession] = []
    for g, (ta, tb) in enumerate(games):
        game_id = f"G{g + 1:02d}"
        clock = int(round(rng.uniform(5, 30) * 100))
        score = {ta: 0, tb: 0}
        order = [ta, tb] if rng.random() < 0.5 else [tb, ta]
        for i in range(2 * spec.possessions_per_team):
            team = order[i % 2]
            other = order[1 - i % 2]
            length_cs, rel_passes = shells[(g, team)][i // 2]
            start = clock
            end = start + length_cs
            if spec.score_trajectory == "running":
                rel_score = score[team] - score[other]
            else:
                rel_score = rng.randint(-15, 15)
            pts = _pick_points(rng)
            possessions.append(SynthPossession(
                game_id, f"P{i + 1:03d}", team, start, end, rel_score, pts,
                [(start + t, a, b) for t, a, b in rel_passes]))
            score[team] += pts
            clock = end + int(round(rng.uniform(1.0, 4.0) * 100))
    return SynthDataset(possessions, _manifest(spec.seed, possessions, spec.teams, delta_ms, tau_ms,
                                                extra={"generator": "random",
                                                       "score_trajectory": spec.score_trajectory}))


def _fit_target(rng, shells, keys, spec: SynthSpec, draw_long, delta_ms, tau_ms) -> None:
    """Swap long possessions for fresh candidates until the team's state shares
    sit within tolerance of the target."""
    target = [spec.target_profile.get(lbl, 0.0) for lbl in STATE_LABELS]

    def seq_counts(length_cs, passes):
        rel = [t * 10 for t, _, _ in passes]
        seq = brute_sequence(rel, [(a, b) for _, a, b in passes], length_cs * 10, delta_ms, tau_ms)
        c = [0] * len(STATE_LABELS)
        for s in seq:
            c[STATE_LABELS.index(s)] += 1
        return c

    slots = [(k, i) for k in keys for i, (length, _) in enumerate(shells[k]) if length * 10 >= delta_ms]
    if not slots:
        raise SynthError("target profile is infeasible: no possession is long enough")
    cache = {slot: seq_counts(*shells[slot[0]][slot[1]]) for slot in slots}
    total = [sum(c[j] for c in cache.values()) for j in range(len(STATE_LABELS))]

    def error(tot):
        n = sum(tot)
        return sum(abs(tot[j] / n - target[j]) for j in range(len(tot))) if n else math.inf

    def worst(tot):
        n = sum(tot)
        return max(abs(tot[j] / n - target[j]) for j in range(len(tot))) if n else math.inf

    for _ in range(60):
        if worst(total) <= spec.target_tolerance * 0.5:
            break
        for slot in slots:
            cur = cache[slot]
            best = None
            best_err = error(total)
            for _ in range(6):
                cand = draw_long()
                cc = seq_counts(*cand)
                trial = [total[j] - cur[j] + cc[j] for j in range(len(total))]
                e = error(trial)
                if e < best_err:
                    best, best_err, best_counts, best_total = cand, e, cc, trial
            if best is not None:
                k, i = slot
                shells[k][i] = best
                cache[slot] = best_counts
                total = best_total
    if worst(total) > spec.target_tolerance:
        raise SynthError(f"could not reach target profile within {spec.target_tolerance:.3f} "
                         f"(worst state off by {worst(total):.4f})")


def _manifest(seed, possessions: Sequence[SynthPossession], teams, delta_ms, tau_ms,
              extra: Mapping[str, str] | None = None) -> dict[str, str]:
    m: dict[str, str] = {"seed": str(seed)}
    if extra:
        m.update(extra)
    games = sorted({p.game_id for p in possessions})
    m["n_games"] = str(len(games))
    m["teams"] = ",".join(teams)
    m["n_possessions"] = str(len(possessions))
    m["n_events"] = str(sum(len(p.passes) for p in possessions))
    m["delta_ms"] = str(delta_ms)
    m["tau_ms"] = str(tau_ms)
    kept = sum(1 for p in possessions if (p.end_cs - p.start_cs) * 10 >= delta_ms)
    m["retained_possessions"] = str(kept)
    m["retained_fraction"] = f"{kept / len(possessions):.6f}" if possessions else "none"
    for g in games:
        for t in teams:
            n = sum(1 for p in possessions if p.game_id == g and p.team == t)
            if n:
                m[f"possessions.{g}.{t}"] = str(n)
                m[f"points.{g}.{t}"] = str(sum(p.points_scored for p in possessions
                                               if p.game_id == g and p.team == t))
    all_pairs: set[tuple[str, str]] = set()
    for t in teams:
        counts, pairs = _state_counts([p for p in possessions if p.team == t], delta_ms, tau_ms)
        all_pairs |= pairs
        if sum(counts) or any(p.team == t for p in possessions):
            m[f"state_counts.{t}"] = ",".join(map(str, counts))
    m["observed_transitions"] = str(len(all_pairs))
    return m


# -- planted-signal dataset --------------------------------------------------

PLANTED_TEAMS = ("ALP", "BRV", "CHR")
PLANTED_BOUNDARY = {"ALP": -4, "BRV": 1, "CHR": 4}  # first score of the middle class
PLANTED_RICH = {"ALP": (2, 4, 6, 8), "BRV": (10, 12, 14, 16), "CHR": (18, 20, 22, 24)}
PLANTED_POSSESSIONS_PER_GAME = 30

# rich templates: five passes 2 s apart starting at 0.5 s, 18 s possession
_RICH_TIMES_CS = (50, 250, 450, 650, 850)
_RICH_LENGTH_CS = 1800
_HOLD_LENGTH_CS = 800


def planted_dataset(seed: int = 7) -> SynthDataset:
    """Three teams with increasing planted entropy and known class boundaries.

    For each team, relative scores below its boundary b and from b+2 up carry
    ball-holding possessions only (one state), score b carries ping-pong
    passing and b+1 carries passing to a new player each time. Team-game
    points rise strictly with the number of passing possessions.
    """
    rng = random.Random(seed)
    rosters = {t: [f"{t}_{k}" for k in range(4, 9)] for t in PLANTED_TEAMS}
    pairings = list(itertools.combinations(PLANTED_TEAMS, 2)) * 2
    game_no = {t: 0 for t in PLANTED_TEAMS}
    possessions: list[SynthPossession] = []
    manifest_extra: dict[str, str] = {"generator": "planted"}
    for g, (ta, tb) in enumerate(pairings):
        game_id = f"G{g + 1:02d}"
        plans = {}
        for team in (ta, tb):
            n_rich = PLANTED_RICH[team][game_no[team]]
            game_no[team] += 1
            plans[team] = _planted_plan(rng, team, n_rich)
            manifest_extra[f"planted_rich.{game_id}.{team}"] = str(n_rich)
        clock = 1000
        for i in range(2 * PLANTED_POSSESSIONS_PER_GAME):
            team = (ta, tb)[i % 2]
            kind, score, pts = plans[team][i // 2]
            roster = rosters[team]
            if kind == "hold":
                length = _HOLD_LENGTH_CS
                passes = []
            else:
                length = _RICH_LENGTH_CS
                if kind == "pingpong":
                    a, b = rng.sample(roster, 2)
                    walk = [a, b] * 3
                else:
                    walk = rng.sample(roster, 5) + [None]
                    walk[5] = walk[0]
                passes = [(clock + t, walk[k], walk[k + 1]) for k, t in enumerate(_RICH_TIMES_CS)]
            possessions.append(SynthPossession(game_id, f"P{i + 1:03d}", team, clock, clock + length,
                                               score, pts, passes))
            clock += length + 200
    for team in PLANTED_TEAMS:
        b = PLANTED_BOUNDARY[team]
        manifest_extra[f"planted_boundaries.{team}"] = f"{b},{b + 2}"
    return SynthDataset(possessions, _manifest(seed, possessions, PLANTED_TEAMS, 6000, 250, manifest_extra))


def _planted_plan(rng: random.Random, team: str, n_rich: int) -> list[tuple[str, int, int]]:
    b = PLANTED_BOUNDARY[team]
    n_hold = PLANTED_POSSESSIONS_PER_GAME - n_rich
    plan = []
    for k in range(n_rich):
        plan.append(("pingpong", b, 2) if k % 2 == 0 else ("newplayer", b + 1, 2))
    for k in range(n_hold):
        pts = 1 if k % 3 == 2 else 0
        if k % 2 == 0:
            plan.append(("hold", b - 1 - (k // 2) % 6, pts))
        else:
            plan.append(("hold", b + 2 + (k // 2) % 6, pts))
    rng.shuffle(plan)
    return plan
