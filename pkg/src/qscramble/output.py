"""Deterministic table output: CSV with fixed column order plus a JSON
mirror.  Floats are rendered with 9 significant digits so that reruns are
byte-identical."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class Table:
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)

    def append(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"expected {len(self.columns)} values, got {len(values)}")
        self.rows.append(tuple(values))

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def select(self, **match) -> "Table":
        idx = {name: self.columns.index(name) for name in match}
        rows = [
            row for row in self.rows
            if all(row[idx[name]] == value for name, value in match.items())
        ]
        return Table(self.columns, rows)


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return f"{v:.9g}"
    return str(v)


def _json_value(v):
    if isinstance(v, float) and math.isfinite(v):
        return float(f"{v:.9g}")
    if isinstance(v, float) and math.isnan(v):
        return None
    return v


def write_csv(table: Table, path) -> None:
    lines = [",".join(table.columns)]
    lines += [",".join(format_value(v) for v in row) for row in table.rows]
    Path(path).write_text("\n".join(lines) + "\n")


def write_json(table: Table, path) -> None:
    payload = {
        "columns": table.columns,
        "rows": [[_json_value(v) for v in row] for row in table.rows],
    }
    Path(path).write_text(json.dumps(payload, indent=1) + "\n")


def read_csv(path) -> Table:
    lines = Path(path).read_text().splitlines()
    columns = lines[0].split(",")
    rows = []
    for line in lines[1:]:
        if not line:
            continue
        values: list = []
        for tok in line.split(","):
            if tok == "":
                values.append(None)
            else:
                try:
                    values.append(int(tok))
                except ValueError:
                    try:
                        values.append(float(tok))
                    except ValueError:
                        values.append(tok)
        rows.append(tuple(values))
    return Table(columns, rows)


def emit_outputs(table: Table, stem, fmt: str = "both") -> list[Path]:
    """Write a table as <stem>.csv and/or <stem>.json; returns the paths."""
    stem = Path(stem)
    stem.parent.mkdir(parents=True, exist_ok=True)
    paths = []
    if fmt in ("csv", "both"):
        p = stem.with_suffix(".csv")
        write_csv(table, p)
        paths.append(p)
    if fmt in ("json", "both"):
        p = stem.with_suffix(".json")
        write_json(table, p)
        paths.append(p)
    return paths
