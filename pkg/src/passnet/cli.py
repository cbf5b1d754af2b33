"""Command-line interface: ``passnet <command> [options]``.

Exit codes: 0 success, 1 invalid input data or failed analysis, 2 usage error.
"""
from __future__ import annotations

import argparse
import difflib
import json
import re
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .analysis import (GROUP_KEYS, class_compare, class_values, correlation, group_possessions,
                       groups, partitions_by_team, profile_chisq, team_games, winner_loser)
from .entropy import METRICS, Maxima, theoretical_maxima
from .graphlets import LABELS, edge_count_feasibility, feasibility_matrix, state_sequence
from .ingest import GameRecord, IngestError, load_dataset, validate
from .oracle import STATE_LABELS, SynthError, SynthSpec, generate, planted_dataset
from .profiles import stochastic_view
from .scorepart import PartitionError, ScoreClass, best_partition, supervised_classes
from .stats import TestResult
from .tables import FORMATS, Table, read_rows, render, render_many
from .windowing import WindowParams

FEASIBILITY_RULES = ("walk", "edge-count")
WEIGHTINGS = ("uniform", "stationary")
EXTENSIONS = {"table": ".txt", "csv": ".csv", "json": ".json"}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


# -- argument parsing --------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    root: _Parser | None = None

    def error(self, message: str):  # type: ignore[override]
        hint = _suggest(self.root or self, message)
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}{hint}\n")
        raise SystemExit(2)


def _all_options(parser: argparse.ArgumentParser) -> set[str]:
    out: set[str] = set()
    for action in parser._actions:
        out.update(o for o in action.option_strings if o.startswith("--"))
        if isinstance(action, argparse._SubParsersAction):
            for sub in action.choices.values():
                out |= _all_options(sub)
    return out


def _all_commands(parser: argparse.ArgumentParser) -> set[str]:
    out: set[str] = set()
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for name, sub in action.choices.items():
                out.add(name)
                out |= _all_commands(sub)
    return out


def _suggest(root: argparse.ArgumentParser, message: str) -> str:
    m = re.search(r"unrecognized arguments: (.*)", message)
    if m:
        for token in m.group(1).split():
            if token.startswith("-"):
                close = difflib.get_close_matches(token.split("=")[0], sorted(_all_options(root)), n=1)
                if close:
                    return f" (did you mean {close[0]}?)"
        return ""
    m = re.search(r"invalid choice: '([^']*)'", message)
    if m:
        close = difflib.get_close_matches(m.group(1), sorted(_all_commands(root)), n=1)
        if close:
            return f" (did you mean {close[0]}?)"
    return ""


def _data_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("input")
    g.add_argument("--events", help="pass events CSV")
    g.add_argument("--possessions", help="possessions CSV")
    g.add_argument("--demo", action="store_true", help="use the bundled demo dataset")


def _window_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("windows and maxima")
    g.add_argument("--delta", type=float, default=6.0, help="window length in seconds (default 6.0)")
    g.add_argument("--tau", type=float, default=0.25, help="window step in seconds (default 0.25)")
    g.add_argument("--feasibility", choices=FEASIBILITY_RULES, default="walk",
                   help="transition feasibility rule behind te/rte maxima (default walk)")
    g.add_argument("--weighting", choices=WEIGHTINGS, default="uniform",
                   help="state weighting of te/rte maxima (default uniform)")


def _output_args(p: argparse.ArgumentParser, default_format: str = "table") -> None:
    g = p.add_argument_group("output")
    g.add_argument("--format", choices=FORMATS, default=default_format,
                   help=f"output format (default {default_format})")
    g.add_argument("--out", help="output file (directory for report); default stdout")
    g.add_argument("--portable", action="store_true",
                   help="echo input file names instead of absolute paths")


def build_parser() -> argparse.ArgumentParser:
    root = _Parser(prog="passnet", allow_abbrev=False,
                   description="Graphlet entropy of passing sequences in basketball possessions.")
    root.add_argument("--version", action="version", version=f"passnet {__version__}")
    sub = root.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name: str, help_text: str, parent=sub) -> argparse.ArgumentParser:
        p = parent.add_parser(name, help=help_text, description=help_text, allow_abbrev=False)
        p.root = root
        return p

    p = add("validate", "check input files and report every violation")
    _data_args(p)
    _output_args(p)

    p = add("synth", "write a synthetic dataset and its ground-truth manifest")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--games", type=int, default=2)
    p.add_argument("--teams", default="ARG,ESP,FRA,AUS", help="comma-separated team codes")
    p.add_argument("--possessions-per-team", type=int, default=90, help="per team and game")
    p.add_argument("--target", help="state shares applied to every team, e.g. 1=0.1,12=0.3,...")
    p.add_argument("--score-trajectory", choices=("running", "random"), default="running")
    p.add_argument("--planted", action="store_true",
                   help="three teams with planted score classes and entropy tied to points")

    p = add("graphlets", "graphlet state tools")
    gsub = p.add_subparsers(dest="graphlets_command", metavar="action", parser_class=_Parser)
    gsub.required = True
    q = add("dump", "one line of window states per possession", gsub)
    _data_args(q)
    _window_args(q)
    _output_args(q, "csv")
    q = add("feasibility", "print the feasibility matrix and te/rte maxima of each rule", gsub)
    _output_args(q)

    p = add("profile", "graphlet and transition profiles per group")
    _data_args(p)
    _window_args(p)
    p.add_argument("--group-by", choices=GROUP_KEYS, default="team")
    _output_args(p)

    p = add("entropy", "SE, TE and RTE per group")
    _data_args(p)
    _window_args(p)
    p.add_argument("--group-by", choices=GROUP_KEYS, default="team-game")
    p.add_argument("--normalize", action="store_true", help="add values as percent of the maxima")
    _output_args(p)

    p = add("classify", "score classes: five fixed classes or a three-class search")
    _data_args(p)
    _window_args(p)
    p.add_argument("--mode", choices=("supervised", "search"), default="search")
    p.add_argument("--metric", choices=METRICS, default="se", help="search objective (default se)")
    p.add_argument("--min-share", type=float, default=0.10, help="minimum class share (default 0.10)")
    p.add_argument("--per-team", action="store_true", help="classify each team separately")
    _output_args(p)

    p = add("stats", "hypothesis tests")
    ssub = p.add_subparsers(dest="stats_command", metavar="test", parser_class=_Parser)
    ssub.required = True
    q = add("correlation", "Spearman rho of team-game entropy against points", ssub)
    _data_args(q)
    _window_args(q)
    _output_args(q)
    q = add("winner-loser", "Wilcoxon winner > loser on game entropies", ssub)
    _data_args(q)
    _window_args(q)
    _output_args(q)
    q = add("class-compare", "Wilcoxon between score classes across teams", ssub)
    q.add_argument("--classes", help="output of 'classify --mode search --per-team' (csv or json)")
    _data_args(q)
    _window_args(q)
    q.add_argument("--metric", choices=METRICS, default="se")
    q.add_argument("--min-share", type=float, default=0.10)
    _output_args(q)
    q = add("profile-chisq", "chi-square between graphlet profiles of the five score classes", ssub)
    _data_args(q)
    _window_args(q)
    q.add_argument("--per-team", action="store_true")
    _output_args(q)

    p = add("report", "full study protocol written as a set of files")
    _data_args(p)
    _window_args(p)
    p.add_argument("--min-share", type=float, default=0.10)
    _output_args(p, "csv")
    return root


# -- run configuration ------------------------------------------------------

@dataclass
class RunConfig:
    command: str
    events: Path | None = None
    possessions: Path | None = None
    params: WindowParams = field(default_factory=WindowParams)
    feasibility: str = "walk"
    weighting: str = "uniform"
    fmt: str = "table"
    out: Path | None = None
    portable: bool = False
    options: dict[str, Any] = field(default_factory=dict)

    def echo(self) -> dict[str, Any]:
        out: dict[str, Any] = {"tool": f"passnet {__version__}", "command": self.command}
        if self.events is not None:
            out["events"] = self._path(self.events)
            out["possessions"] = self._path(self.possessions)
            out["delta_s"] = self.params.delta_s
            out["tau_s"] = self.params.tau_s
            out["feasibility"] = self.feasibility
            out["weighting"] = self.weighting
        out.update(self.options)
        return out

    def _path(self, path: Path | None) -> str:
        if path is None:
            return ""
        return path.name if self.portable else str(path.resolve())


def demo_paths() -> tuple[Path, Path]:
    base = resources.files("passnet") / "data" / "demo"
    return Path(str(base / "events.csv")), Path(str(base / "possessions.csv"))


def _config(args: argparse.Namespace, command: str, needs_data: bool = True, **options: Any) -> RunConfig:
    cfg = RunConfig(command, fmt=getattr(args, "format", "table"),
                    out=Path(args.out) if getattr(args, "out", None) else None,
                    portable=getattr(args, "portable", False), options=options)
    if hasattr(args, "events") and needs_data:
        if args.demo:
            if args.events or args.possessions:
                raise UsageError("--demo cannot be combined with --events/--possessions")
            cfg.events, cfg.possessions = demo_paths()
        else:
            if not args.events or not args.possessions:
                raise UsageError("--events and --possessions are required (or use --demo)")
            cfg.events, cfg.possessions = Path(args.events), Path(args.possessions)
    if hasattr(args, "delta"):
        try:
            cfg.params = WindowParams(args.delta, args.tau)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        cfg.feasibility = args.feasibility
        cfg.weighting = args.weighting
    if "min_share" in options and not 0 < options["min_share"] < 1 / 3 + 1e-12:
        raise UsageError("--min-share must lie in (0, 1/3]")
    return cfg


def _maxima(cfg: RunConfig) -> Maxima:
    f = feasibility_matrix() if cfg.feasibility == "walk" else edge_count_feasibility()
    return theoretical_maxima(f, cfg.weighting)


def _load(cfg: RunConfig) -> list[GameRecord]:
    try:
        return load_dataset(cfg.events, cfg.possessions)
    except IngestError as exc:
        raise DataError(str(exc)) from None


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
        return
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    with open(cfg.out, "w", newline="", encoding="utf-8") as fh:
        fh.write(text)


# -- table builders ----------------------------------------------------------

ENTROPY_COLUMNS = ("se", "te", "rte")
NORM_COLUMNS = ("se_norm", "te_norm", "rte_norm")


def _ent(report, normalize: bool) -> list[float | None]:
    if report is None:
        return [None] * (6 if normalize else 3)
    vals = [report.se, report.te, report.rte]
    if normalize:
        vals += [report.se_norm, report.te_norm, report.rte_norm]
    return vals


def entropy_table(dataset, cfg: RunConfig, by: str, normalize: bool) -> Table:
    t = Table("entropy", ("group", "n_possessions", "n_retained", "n_windows", "points", "pts_per_poss")
              + ENTROPY_COLUMNS + (NORM_COLUMNS if normalize else ()))
    for g in groups(dataset, by, cfg.params, _maxima(cfg)):
        t.add(g.key, len(g.possessions), g.profile.n_retained, g.profile.n_windows, g.points,
              g.pts_per_poss, *_ent(g.entropy, normalize))
    return t


def profile_tables(dataset, cfg: RunConfig, by: str) -> tuple[Table, Table]:
    states = Table("profiles", ("group", "state", "count", "percent"))
    trans = Table("transitions", ("group", "chain", "from_state", "to_state", "count", "percent"))
    for g in groups(dataset, by, cfg.params, _maxima(cfg)):
        prof = g.profile
        total = prof.n_windows
        for i, lbl in enumerate(LABELS):
            c = int(prof.state_counts[i])
            states.add(g.key, lbl, c, 100.0 * c / total if total else None)
        if total == 0:
            continue
        view = stochastic_view(prof)
        tc = prof.transition_counts
        for chain, mat in (("full", view.M), ("restricted", view.M_restricted)):
            for i, a in enumerate(LABELS):
                for j, b in enumerate(LABELS):
                    c = int(tc[i, j])
                    if chain == "restricted" and i == j:
                        continue
                    if c:
                        trans.add(g.key, chain, a, b, c, 100.0 * float(mat[i, j]))
    return states, trans


CLASS_COLUMNS = ("scope", "scheme", "metric", "class", "lo", "hi", "n_possessions", "share", "n_windows",
                 "se", "te", "rte", "se_norm", "te_norm", "rte_norm", "pts_per_poss", "objective",
                 "n_candidates", "note")


def _class_rows(t: Table, scope: str, scheme: str, metric: str | None, classes: Sequence[ScoreClass],
                total: int, objective: float | None, n_candidates: int | None) -> None:
    for c in classes:
        t.add(scope, scheme, metric, c.name, c.lo, c.hi, c.n, c.n / total if total else None,
              c.profile.n_windows, *_ent(c.entropy, True), c.pts_per_poss, objective, n_candidates,
              "" if c.entropy is not None else "no windows")


def classify_table(dataset, cfg: RunConfig, mode: str, metric: str, min_share: float, per_team: bool) -> Table:
    t = Table("classes" if mode == "search" else "supervised_classes", CLASS_COLUMNS)
    maxima = _maxima(cfg)
    scopes = group_possessions(dataset, "team") if per_team else group_possessions(dataset, "all")
    for scope, ps in scopes.items():
        if mode == "supervised":
            _class_rows(t, scope, "supervised", None, supervised_classes(ps, cfg.params, maxima),
                        len(ps), None, None)
            continue
        try:
            part = best_partition(ps, metric, cfg.params, min_share, maxima)
        except PartitionError as exc:
            if not per_team:
                raise DataError(str(exc)) from None
            t.add(scope, "search", metric, *[None] * (len(CLASS_COLUMNS) - 4), str(exc))
            continue
        _class_rows(t, scope, "search", metric, part.classes, len(ps), part.objective, part.n_candidates)
    return t


def _test_cells(r: TestResult | None) -> list[Any]:
    if r is None:
        return [None, None, None, None, None]
    return [r.n, r.statistic, r.p_value, r.method, r.note]


def correlation_table(rows) -> Table:
    t = Table("correlation", ("metric", "n", "rho", "p_value", "method", "note"))
    for m, r in correlation(rows).items():
        t.add(m, *_test_cells(r))
    return t


def winner_loser_table(rows) -> Table:
    t = Table("winner_loser", ("metric", "alternative", "n", "W", "z", "p_value", "method", "note"))
    results, _ = winner_loser(rows)
    for m, r in results.items():
        t.add(m, r.alternative, r.n, r.statistic, r.z_approx, r.p_value, r.method, r.note)
    return t


def game_table(rows, normalize: bool = True) -> Table:
    t = Table("game_entropy", ("game", "team", "opponent", "points", "opponent_points", "result",
                               "n_possessions", "n_retained", "n_windows") + ENTROPY_COLUMNS + NORM_COLUMNS)
    for r in rows:
        t.add(r.game_id, r.team, r.opponent, r.points, r.opponent_points, r.result,
              len(r.group.possessions), r.group.profile.n_retained, r.group.profile.n_windows,
              *_ent(r.group.entropy, normalize))
    return t


def compare_table(values_by_metric: dict[str, dict]) -> Table:
    t = Table("class_compare", ("partition_metric", "measure", "class_a", "class_b", "n", "W", "z",
                                "p_value", "method", "note"))
    for metric, values in values_by_metric.items():
        for measure, a, b, r in class_compare(values, (metric, "pts_per_poss")):
            t.add(metric, measure, a, b, r.n, r.statistic, r.z_approx, r.p_value, r.method, r.note)
    return t


def chisq_table(dataset, cfg: RunConfig, per_team: bool) -> Table:
    t = Table("profile_chisq", ("scope", "class_a", "class_b", "statistic", "N", "df", "p_value", "note"))
    scopes = group_possessions(dataset, "team") if per_team else group_possessions(dataset, "all")
    for scope, ps in scopes.items():
        for a, b, r, note in profile_chisq(supervised_classes(ps, cfg.params, _maxima(cfg))):
            if r is None:
                t.add(scope, a, b, None, None, None, None, note)
            else:
                t.add(scope, a, b, r.statistic, r.n, r.df, r.p_value, r.note)
    return t


def _values_from_classify_output(path: Path) -> dict[str, dict]:
    try:
        rows = read_rows(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror or exc}") from None
    except (ValueError, json.JSONDecodeError) as exc:
        raise DataError(f"{path}: cannot parse classify output ({exc})") from None
    out: dict[str, dict] = {}
    for row in rows:
        if row.get("scheme") != "search" or not row.get("class"):
            continue
        metric = row["metric"]
        try:
            vals = {metric: float(row[metric]), "pts_per_poss": float(row["pts_per_poss"])}
        except (KeyError, ValueError):
            raise DataError(f"{path}: row for {row.get('scope')}/{row.get('class')} lacks numeric values") from None
        out.setdefault(metric, {}).setdefault(row["scope"], {})[row["class"]] = vals
    if not out:
        raise DataError(f"{path}: no search-mode class rows found")
    return out


def feasibility_tables() -> tuple[Table, Table]:
    walk = feasibility_matrix()
    mt = Table("feasibility_matrix", ("from_state",) + tuple(LABELS) + ("n_successors",))
    for i, lbl in enumerate(LABELS):
        mt.add(lbl, *[int(x) for x in walk[i]], int(walk[i].sum()))
    xt = Table("maxima", ("rule", "weighting", "se_max", "te_max", "rte_max", "n_feasible"))
    for rule, f in (("walk", walk), ("edge-count", edge_count_feasibility())):
        for w in WEIGHTINGS:
            m = theoretical_maxima(f, w)
            xt.add(rule, w, m.se_max, m.te_max, m.rte_max, int(np.asarray(f).sum()))
    return mt, xt


# -- commands ----------------------------------------------------------------

def cmd_validate(args) -> int:
    cfg = _config(args, "validate")
    try:
        dataset = load_dataset(cfg.events, cfg.possessions)
    except IngestError as exc:
        t = Table("violations", ("severity", "kind", "game", "team", "possession", "message"))
        t.add("error", "ingest", None, None, None, str(exc))
        _emit(cfg, render(t, cfg.fmt, cfg.echo()))
        return 1
    report = validate(dataset)
    t = Table("violations", ("severity", "kind", "game", "team", "possession", "message"))
    for v in report:
        t.add(v.severity, v.kind, v.game_id, v.team, v.possession_id, v.message)
    cfg.options.update(games=len(dataset), possessions_total=sum(len(g.possessions) for g in dataset),
                       errors=len(report.errors), warnings=len(report.warnings))
    _emit(cfg, render(t, cfg.fmt, cfg.echo()))
    return 0 if report.ok else 1


def _parse_target(text: str) -> dict[str, float]:
    out = {}
    for part in text.split(","):
        key, sep, value = part.partition("=")
        if not sep:
            raise UsageError(f"--target entries must look like state=share, got {part!r}")
        key = key.strip()
        if key not in STATE_LABELS:
            raise UsageError(f"--target: unknown state {key!r}")
        try:
            out[key] = float(value)
        except ValueError:
            raise UsageError(f"--target: share for {key!r} is not a number") from None
    total = sum(out.values())
    if total <= 0:
        raise UsageError("--target shares must have a positive sum")
    return {k: v / total for k, v in out.items()}


def cmd_synth(args) -> int:
    if args.planted:
        ds = planted_dataset(args.seed)
    else:
        teams = tuple(t.strip() for t in args.teams.split(",") if t.strip())
        spec = SynthSpec(seed=args.seed, n_games=args.games, teams=teams,
                         possessions_per_team=args.possessions_per_team,
                         target_profile=_parse_target(args.target) if args.target else None,
                         score_trajectory=args.score_trajectory)
        try:
            ds = generate(spec)
        except SynthError as exc:
            raise DataError(str(exc)) from None
    paths = ds.write(args.out)
    for key in ("events", "possessions", "manifest"):
        print(f"{key}: {paths[key]}")
    return 0


def cmd_graphlets(args) -> int:
    if args.graphlets_command == "feasibility":
        cfg = _config(args, "graphlets feasibility")
        _emit(cfg, render_many(feasibility_tables(), cfg.fmt, cfg.echo()))
        return 0
    cfg = _config(args, "graphlets dump")
    dataset = _load(cfg)
    if cfg.fmt == "csv":
        lines = [f"# {k}: {v}" for k, v in cfg.echo().items()]
        for game in dataset:
            for p in game.possessions:
                states = [s.label for s in state_sequence(p, cfg.params)]
                lines.append(",".join([p.game_id, p.possession_id, p.team] + states))
        _emit(cfg, "\n".join(lines) + "\n")
        return 0
    t = Table("graphlets", ("game", "possession", "team", "n_windows", "states"))
    for game in dataset:
        for p in game.possessions:
            states = [s.label for s in state_sequence(p, cfg.params)]
            t.add(p.game_id, p.possession_id, p.team, len(states), " ".join(states))
    _emit(cfg, render(t, cfg.fmt, cfg.echo()))
    return 0


def cmd_profile(args) -> int:
    cfg = _config(args, "profile", group_by=args.group_by)
    dataset = _load(cfg)
    _emit(cfg, render_many(profile_tables(dataset, cfg, args.group_by), cfg.fmt, cfg.echo()))
    return 0


def cmd_entropy(args) -> int:
    cfg = _config(args, "entropy", group_by=args.group_by, normalize=args.normalize)
    dataset = _load(cfg)
    _emit(cfg, render(entropy_table(dataset, cfg, args.group_by, args.normalize), cfg.fmt, cfg.echo()))
    return 0


def cmd_classify(args) -> int:
    cfg = _config(args, "classify", mode=args.mode, metric=args.metric, min_share=args.min_share,
                  per_team=args.per_team)
    dataset = _load(cfg)
    t = classify_table(dataset, cfg, args.mode, args.metric, args.min_share, args.per_team)
    _emit(cfg, render(t, cfg.fmt, cfg.echo()))
    return 0


def cmd_stats(args) -> int:
    name = args.stats_command
    if name == "class-compare":
        if args.classes:
            if args.demo or args.events or args.possessions:
                raise UsageError("--classes cannot be combined with input data flags")
            classes = Path(args.classes)
            cfg = _config(args, "stats class-compare", needs_data=False,
                          classes=classes.name if args.portable else str(classes.resolve()))
            values = _values_from_classify_output(classes)
        else:
            cfg = _config(args, "stats class-compare", metric=args.metric, min_share=args.min_share)
            dataset = _load(cfg)
            parts = partitions_by_team(dataset, args.metric, cfg.params, args.min_share, _maxima(cfg))
            values = {args.metric: class_values(parts)}
        _emit(cfg, render(compare_table(values), cfg.fmt, cfg.echo()))
        return 0
    if name == "profile-chisq":
        cfg = _config(args, "stats profile-chisq", per_team=args.per_team)
        _emit(cfg, render(chisq_table(_load(cfg), cfg, args.per_team), cfg.fmt, cfg.echo()))
        return 0
    cfg = _config(args, f"stats {name}")
    rows = team_games(_load(cfg), cfg.params, _maxima(cfg))
    t = correlation_table(rows) if name == "correlation" else winner_loser_table(rows)
    _emit(cfg, render(t, cfg.fmt, cfg.echo()))
    return 0


def cmd_report(args) -> int:
    cfg = _config(args, "report", min_share=args.min_share)
    if cfg.out is None:
        raise UsageError("report needs --out DIR")
    dataset = _load(cfg)
    issues = validate(dataset)
    if not issues.ok:
        for v in issues.errors:
            sys.stderr.write(f"{v}\n")
        return 1
    maxima = _maxima(cfg)
    rows = team_games(dataset, cfg.params, maxima)
    states, trans = profile_tables(dataset, cfg, "team")
    tables: list[Table] = [game_table(rows), correlation_table(rows), winner_loser_table(rows), states, trans,
                           classify_table(dataset, cfg, "supervised", "se", args.min_share, True),
                           chisq_table(dataset, cfg, False)]
    values = {}
    for metric in METRICS:
        parts = partitions_by_team(dataset, metric, cfg.params, args.min_share, maxima)
        t = Table(f"partitions_{metric}", CLASS_COLUMNS)
        for tp in parts:
            ps = group_possessions(dataset, "team")[tp.team]
            if tp.classes is None:
                t.add(tp.team, "search", metric, *[None] * (len(CLASS_COLUMNS) - 4), tp.error)
            else:
                _class_rows(t, tp.team, "search", metric, tp.classes, len(ps), tp.objective, tp.n_candidates)
        tables.append(t)
        values[metric] = class_values(parts)
    tables.append(compare_table(values))
    out_dir = cfg.out
    out_dir.mkdir(parents=True, exist_ok=True)
    echo = cfg.echo()
    with open(out_dir / "config.json", "w", newline="", encoding="utf-8") as fh:
        fh.write(json.dumps(echo, sort_keys=True, indent=2) + "\n")
    ext = EXTENSIONS[cfg.fmt]
    for t in tables:
        with open(out_dir / f"{t.name}{ext}", "w", newline="", encoding="utf-8") as fh:
            fh.write(render(t, cfg.fmt, echo))
    print(f"wrote {len(tables) + 1} files to {out_dir}")
    return 0


COMMANDS = {"validate": cmd_validate, "synth": cmd_synth, "graphlets": cmd_graphlets, "profile": cmd_profile,
            "entropy": cmd_entropy, "classify": cmd_classify, "stats": cmd_stats, "report": cmd_report}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"passnet: error: {exc}\n")
        return 2
    except DataError as exc:
        sys.stderr.write(f"passnet: {exc}\n")
        return 1


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
