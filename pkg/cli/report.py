# cli/report.py
"""
Report serialization.

JSON: sorted keys, two-space indent. CSV: one row per trial (one per cell
for sweeps) with scalar fields only; the trial's wall time becomes the
`wall_seconds` column.
"""

import copy
import csv
import io
import json
from pathlib import Path
from typing import Any

from core.errors import ConfigError

FORMATS = ("json", "csv")


def to_json(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _scalar(value: Any) -> bool:
    return value is None or isinstance(value, (bool, int, float, str))


def csv_rows(report: dict[str, Any]) -> list[dict[str, Any]]:
    rows = []
    for record in report.get("trials", report.get("cells", [])):
        row = {key: value for key, value in record.items() if _scalar(value)}
        timing = record.get("timing")
        if isinstance(timing, dict):
            row["wall_seconds"] = timing.get("wall_seconds")
        rows.append(row)
    return rows


def to_csv(report: dict[str, Any]) -> str:
    rows = csv_rows(report)
    columns: list[str] = []
    for row in rows:
        columns.extend(key for key in row if key not in columns)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def render(report: dict[str, Any], fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    raise ConfigError(f"Unknown report format '{fmt}'. Must be one of: {list(FORMATS)}")


def write_report(report: dict[str, Any], path: str | Path, fmt: str = "json") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render(report, fmt), encoding="utf-8")
    return path


def strip_timing(report: dict[str, Any]) -> dict[str, Any]:
    """Copy of the report without any `timing` object, for reproducibility checks."""

    def walk(node: Any) -> Any:
        if isinstance(node, dict):
            return {key: walk(value) for key, value in node.items() if key != "timing"}
        if isinstance(node, list):
            return [walk(item) for item in node]
        return node

    return walk(copy.deepcopy(report))
