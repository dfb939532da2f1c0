"""Report and CSV emission with a byte-stable format.

Reports are single JSON documents with sorted keys, two-space indentation
and a trailing newline; floats go through Python's shortest round-trip
repr.  CSVs are UTF-8 with a header row, "." decimal separator and "\n"
line endings, rows in row-major grid order.  Identical inputs produce
identical bytes.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

SCHEMA_VERSION = 1


def to_jsonable(obj):
    """Recursively convert numpy scalars/arrays and tuples to plain Python."""
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    return obj


def report_payload(command: str, config: dict, results: dict, version: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "hypfol",
        "tool_version": version,
        "command": command,
        "config": to_jsonable(config),
        "results": to_jsonable(results),
    }


def write_report(path: str | Path, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def write_csv(path: str | Path, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(x) for x in row])


def _cell(x):
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, (int, np.integer)):
        return int(x)
    return x
