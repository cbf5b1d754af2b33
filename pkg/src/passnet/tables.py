"""Deterministic rendering of result tables as aligned text, CSV or JSON."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

FORMATS = ("table", "csv", "json")
FLOAT_DIGITS = 6


@dataclass
class Table:
    name: str
    columns: Sequence[str]
    rows: list[Sequence[Any]] = field(default_factory=list)

    def add(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"{self.name}: expected {len(self.columns)} values, got {len(values)}")
        self.rows.append(values)


def cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        text = f"{value:.{FLOAT_DIGITS}f}"
        return "0.000000" if text == "-0.000000" else text
    if hasattr(value, "item"):  # numpy scalar
        return cell(value.item())
    return str(value)


def _json_value(value: Any) -> Any:
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, float):
        if not math.isfinite(value):
            return cell(value)
        value = round(value, FLOAT_DIGITS)
        return 0.0 if value == 0 else value
    return value


def _header(config: Mapping[str, Any] | None) -> list[str]:
    if not config:
        return []
    return [f"# {k}: {cell(v)}" for k, v in config.items()]


def render(table: Table, fmt: str = "table", config: Mapping[str, Any] | None = None) -> str:
    if fmt == "json":
        doc = {"config": {k: _json_value(v) for k, v in (config or {}).items()},
               "table": table.name,
               "rows": [{c: _json_value(v) for c, v in zip(table.columns, row)} for row in table.rows]}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    lines = _header(config)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.columns)
        for row in table.rows:
            w.writerow([cell(v) for v in row])
        return "".join(x + "\n" for x in lines) + buf.getvalue()
    if fmt != "table":
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    body = [list(table.columns)] + [[cell(v) for v in row] for row in table.rows]
    widths = [max(len(r[i]) for r in body) for i in range(len(table.columns))]
    for r in body:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render_many(tables: Sequence[Table], fmt: str, config: Mapping[str, Any] | None = None) -> str:
    """Several tables in one stream; JSON gets a single document keyed by table name."""
    if fmt == "json":
        doc = {"config": {k: _json_value(v) for k, v in (config or {}).items()},
               "tables": {t.name: [{c: _json_value(v) for c, v in zip(t.columns, row)} for row in t.rows]
                          for t in tables}}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    parts = []
    for i, t in enumerate(tables):
        text = render(t, fmt, config if i == 0 else None)
        parts.append(f"# table: {t.name}\n" + text)
    return "\n".join(parts)


def read_rows(text: str) -> list[dict[str, str]]:
    """Parse rows back from CSV (comment lines skipped) or JSON output."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        rows = doc.get("rows")
        if rows is None:
            rows = [r for t in doc.get("tables", {}).values() for r in t]
        return [{k: cell(v) if not isinstance(v, str) else v for k, v in r.items()} for r in rows]
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    return list(csv.DictReader(lines))
