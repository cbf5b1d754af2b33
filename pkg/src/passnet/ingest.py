"""Event and possession files -> immutable game records.

Timecodes are held as integer milliseconds so that window boundary tests
are exact. Input files give seconds with up to two fractional digits.
"""
from __future__ import annotations

import csv
from collections import defaultdict
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Iterable, Iterator, Sequence

EVENT_COLUMNS = ("game_id", "possession_id", "time_s", "passer", "receiver")
POSSESSION_COLUMNS = (
    "game_id",
    "possession_id",
    "team",
    "start_s",
    "end_s",
    "relative_score",
    "points_scored",
)


class IngestError(ValueError):
    """Raised when an input file cannot be turned into a valid dataset."""

    def __init__(self, message: str, *, path: str | None = None,
                 line: int | None = None, column: str | None = None) -> None:
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.path = path
        self.line = line
        self.column = column


@dataclass(frozen=True)
class PassEvent:
    game_id: str
    possession_id: str
    time_ms: int
    passer: str
    receiver: str

    @property
    def time_s(self) -> float:
        return self.time_ms / 1000.0


@dataclass(frozen=True)
class Possession:
    game_id: str
    possession_id: str
    team: str
    start_ms: int
    end_ms: int
    relative_score: int
    points_scored: int
    events: tuple[PassEvent, ...] = ()

    @property
    def start_s(self) -> float:
        return self.start_ms / 1000.0

    @property
    def end_s(self) -> float:
        return self.end_ms / 1000.0

    @property
    def duration_ms(self) -> int:
        return self.end_ms - self.start_ms


@dataclass(frozen=True)
class GameRecord:
    game_id: str
    team_a: str
    team_b: str | None
    final_score_a: int
    final_score_b: int
    possessions: tuple[Possession, ...] = field(default=())

    @property
    def teams(self) -> tuple[str, ...]:
        return (self.team_a,) if self.team_b is None else (self.team_a, self.team_b)

    def score_of(self, team: str) -> int:
        if team == self.team_a:
            return self.final_score_a
        if team == self.team_b:
            return self.final_score_b
        raise KeyError(team)

    def opponent_of(self, team: str) -> str | None:
        if team == self.team_a:
            return self.team_b
        if team == self.team_b:
            return self.team_a
        raise KeyError(team)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    game_id: str | None = None
    possession_id: str | None = None
    team: str | None = None
    severity: str = "error"

    def __str__(self) -> str:
        loc = "/".join(x for x in (self.game_id, self.team, self.possession_id) if x)
        return f"[{self.severity}] {self.kind} {loc}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def errors(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.severity == "error")

    @property
    def warnings(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.severity == "warning")

    @property
    def ok(self) -> bool:
        return not self.errors

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)


def parse_seconds(text: str, *, max_decimals: int = 3) -> int:
    """Parse a decimal seconds string into integer milliseconds."""
    try:
        value = Decimal(text.strip())
    except InvalidOperation:
        raise ValueError(f"not a number: {text!r}") from None
    if not value.is_finite():
        raise ValueError(f"not a finite number: {text!r}")
    exponent = value.as_tuple().exponent
    if isinstance(exponent, int) and -exponent > max_decimals:
        raise ValueError(f"more than {max_decimals} fractional digits: {text!r}")
    if value < 0:
        raise ValueError(f"negative time: {text!r}")
    return int(value * 1000)


def format_seconds(ms: int) -> str:
    if ms % 10 == 0:
        return f"{ms // 1000}.{(ms % 1000) // 10:02d}"
    return f"{ms // 1000}.{ms % 1000:03d}"


def _parse_int(text: str) -> int:
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"not an integer: {text!r}") from None


def _read_rows(path: Path, columns: Sequence[str]) -> Iterator[tuple[int, dict[str, str]]]:
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            return
        header = [h.strip() for h in header]
        if sorted(header) != sorted(columns):
            raise IngestError(
                f"expected header {','.join(columns)}, got {','.join(header)}",
                path=str(path), line=1,
            )
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise IngestError(
                    f"expected {len(header)} fields, got {len(row)}",
                    path=str(path), line=line,
                )
            yield line, dict(zip(header, row))


def _field(row: dict[str, str], name: str, parse, path: Path, line: int):
    try:
        return parse(row[name])
    except ValueError as exc:
        raise IngestError(str(exc), path=str(path), line=line, column=name) from None


def _identifier(text: str) -> str:
    text = text.strip()
    if not text:
        raise ValueError("empty identifier")
    return text


def load_dataset(events_path: str | Path, possessions_path: str | Path) -> list[GameRecord]:
    """Load, validate and index the two input files.

    Raises IngestError on the first structural problem (malformed field,
    duplicate possession, dangling event, event outside its possession,
    broken ball chain).
    """
    events_path = Path(events_path)
    possessions_path = Path(possessions_path)
    for p in (events_path, possessions_path):
        if not p.is_file():
            raise IngestError("file not found", path=str(p))

    poss_rows: dict[tuple[str, str], dict] = {}
    game_order: list[str] = []
    for line, row in _read_rows(possessions_path, POSSESSION_COLUMNS):
        rec = {
            "game_id": _field(row, "game_id", _identifier, possessions_path, line),
            "possession_id": _field(row, "possession_id", _identifier, possessions_path, line),
            "team": _field(row, "team", _identifier, possessions_path, line),
            "start_ms": _field(row, "start_s", parse_seconds, possessions_path, line),
            "end_ms": _field(row, "end_s", parse_seconds, possessions_path, line),
            "relative_score": _field(row, "relative_score", _parse_int, possessions_path, line),
            "points_scored": _field(row, "points_scored", _parse_int, possessions_path, line),
        }
        if rec["points_scored"] < 0:
            raise IngestError("points_scored must be non-negative", path=str(possessions_path),
                              line=line, column="points_scored")
        if rec["start_ms"] >= rec["end_ms"]:
            raise IngestError("start_s must be before end_s", path=str(possessions_path),
                              line=line, column="end_s")
        key = (rec["game_id"], rec["possession_id"])
        if key in poss_rows:
            raise IngestError(f"duplicate possession_id {key[1]!r} in game {key[0]!r}",
                              path=str(possessions_path), line=line, column="possession_id")
        rec["line"] = line
        poss_rows[key] = rec
        if rec["game_id"] not in game_order:
            game_order.append(rec["game_id"])

    events: dict[tuple[str, str], list[PassEvent]] = defaultdict(list)
    for line, row in _read_rows(events_path, EVENT_COLUMNS):
        ev = PassEvent(
            game_id=_field(row, "game_id", _identifier, events_path, line),
            possession_id=_field(row, "possession_id", _identifier, events_path, line),
            time_ms=_field(row, "time_s", lambda t: parse_seconds(t, max_decimals=2), events_path, line),
            passer=_field(row, "passer", _identifier, events_path, line),
            receiver=_field(row, "receiver", _identifier, events_path, line),
        )
        key = (ev.game_id, ev.possession_id)
        owner = poss_rows.get(key)
        if owner is None:
            raise IngestError(f"event refers to unknown possession {key[1]!r} in game {key[0]!r}",
                              path=str(events_path), line=line, column="possession_id")
        if ev.passer == ev.receiver:
            raise IngestError(f"pass from {ev.passer!r} to itself", path=str(events_path),
                              line=line, column="receiver")
        if not owner["start_ms"] <= ev.time_ms <= owner["end_ms"]:
            raise IngestError(
                f"event at {format_seconds(ev.time_ms)} s outside possession {key[1]!r} "
                f"[{format_seconds(owner['start_ms'])}, {format_seconds(owner['end_ms'])}]",
                path=str(events_path), line=line, column="time_s")
        events[key].append(ev)

    by_game: dict[str, list[Possession]] = defaultdict(list)
    for key, rec in poss_rows.items():
        evs = sorted(events.get(key, ()), key=lambda e: e.time_ms)
        for prev, nxt in zip(evs, evs[1:]):
            if prev.time_ms == nxt.time_ms:
                raise IngestError(
                    f"two events at {format_seconds(nxt.time_ms)} s in possession {key[1]!r}",
                    path=str(events_path))
            if prev.receiver != nxt.passer:
                raise IngestError(
                    f"chain violation in possession {key[1]!r} of game {key[0]!r}: "
                    f"{prev.receiver!r} received at {format_seconds(prev.time_ms)} s "
                    f"but {nxt.passer!r} passed at {format_seconds(nxt.time_ms)} s",
                    path=str(events_path))
        by_game[rec["game_id"]].append(Possession(
            game_id=rec["game_id"],
            possession_id=rec["possession_id"],
            team=rec["team"],
            start_ms=rec["start_ms"],
            end_ms=rec["end_ms"],
            relative_score=rec["relative_score"],
            points_scored=rec["points_scored"],
            events=tuple(evs),
        ))

    games = []
    for game_id in game_order:
        poss = sorted(by_game[game_id], key=lambda p: (p.start_ms, p.possession_id))
        teams: list[str] = []
        for p in poss:
            if p.team not in teams:
                teams.append(p.team)
        if len(teams) > 2:
            raise IngestError(f"game {game_id!r} has more than two teams: {', '.join(teams)}",
                              path=str(possessions_path))
        team_a = teams[0]
        team_b = teams[1] if len(teams) > 1 else None
        games.append(GameRecord(
            game_id=game_id,
            team_a=team_a,
            team_b=team_b,
            final_score_a=sum(p.points_scored for p in poss if p.team == team_a),
            final_score_b=sum(p.points_scored for p in poss if p.team == team_b),
            possessions=tuple(poss),
        ))
    return games


def iter_possessions(dataset: Iterable[GameRecord]) -> Iterator[Possession]:
    for game in dataset:
        yield from game.possessions


def validate(dataset: Iterable[GameRecord]) -> ValidationReport:
    """Check every invariant of the game model; never mutates or raises."""
    out: list[Violation] = []
    for game in dataset:
        teams = set(game.teams)
        for p in game.possessions:
            where = dict(game_id=game.game_id, possession_id=p.possession_id, team=p.team)
            if p.team not in teams:
                out.append(Violation("foreign-team", f"team {p.team!r} is not playing this game", **where))
            if p.start_ms >= p.end_ms:
                out.append(Violation("empty-interval",
                                     f"start {format_seconds(p.start_ms)} s >= end {format_seconds(p.end_ms)} s",
                                     **where))
            if p.points_scored < 0:
                out.append(Violation("negative-points", f"points_scored={p.points_scored}", **where))
            for k, ev in enumerate(p.events):
                if ev.passer == ev.receiver:
                    out.append(Violation("self-pass", f"event {k} passes from {ev.passer!r} to itself", **where))
                if not p.start_ms <= ev.time_ms <= p.end_ms:
                    out.append(Violation("event-out-of-bounds",
                                         f"event {k} at {format_seconds(ev.time_ms)} s lies outside the possession",
                                         **where))
            for k, (prev, nxt) in enumerate(zip(p.events, p.events[1:]), start=1):
                if nxt.time_ms <= prev.time_ms:
                    out.append(Violation("unordered-events", f"event {k} is not after event {k - 1}", **where))
                if prev.receiver != nxt.passer:
                    out.append(Violation("chain-violation",
                                         f"event {k} passer {nxt.passer!r} != previous receiver {prev.receiver!r}",
                                         **where))
        for team, declared in ((game.team_a, game.final_score_a), (game.team_b, game.final_score_b)):
            if team is None:
                continue
            total = sum(p.points_scored for p in game.possessions if p.team == team)
            if total != declared:
                out.append(Violation("final-score-mismatch",
                                     f"final score {declared} != sum of possession points {total}",
                                     game_id=game.game_id, team=team))
        out.extend(_running_score_warnings(game))
    return ValidationReport(tuple(out))


def _running_score_warnings(game: GameRecord) -> list[Violation]:
    # Free throws between recorded possessions can legitimately desync this.
    if game.team_b is None:
        return []
    score = {game.team_a: 0, game.team_b: 0}
    out = []
    for p in sorted(game.possessions, key=lambda p: p.start_ms):
        if p.team not in score:
            continue
        other = game.team_b if p.team == game.team_a else game.team_a
        expected = score[p.team] - score[other]
        if p.relative_score != expected:
            out.append(Violation(
                "relative-score-drift",
                f"relative_score {p.relative_score} but running score gives {expected}",
                game_id=game.game_id, possession_id=p.possession_id, team=p.team,
                severity="warning"))
        score[p.team] += p.points_scored
    return out


def write_dataset(dataset: Iterable[GameRecord], events_path: str | Path,
                  possessions_path: str | Path) -> None:
    """Serialize games back into the two-file format (LF line endings)."""
    dataset = list(dataset)
    with open(possessions_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(POSSESSION_COLUMNS)
        for p in iter_possessions(dataset):
            w.writerow([p.game_id, p.possession_id, p.team, format_seconds(p.start_ms),
                        format_seconds(p.end_ms), p.relative_score, p.points_scored])
    with open(events_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(EVENT_COLUMNS)
        for p in iter_possessions(dataset):
            for ev in p.events:
                w.writerow([ev.game_id, ev.possession_id, format_seconds(ev.time_ms),
                            ev.passer, ev.receiver])
