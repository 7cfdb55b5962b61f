"""CSV and JSON-lines report emission."""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from pathlib import Path

from .sweep import RECORD_FIELDS, ReportRecord


def fmt_value(v) -> str:
    """12 significant digits for floats; empty for missing or NaN."""
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isnan(v):
            return ""
        return f"{v:.12g}"
    return str(v)


def _json_value(v):
    if isinstance(v, float):
        if math.isnan(v):
            return None
        if math.isinf(v):
            return str(v)
        return float(f"{v:.12g}")
    return v


def records_to_csv(records, columns=RECORD_FIELDS) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        row = rec if isinstance(rec, dict) else {c: getattr(rec, c) for c in columns}
        writer.writerow([fmt_value(row[c]) for c in columns])
    return buf.getvalue()


def records_to_jsonl(records, columns=RECORD_FIELDS) -> str:
    lines = []
    for rec in records:
        row = rec if isinstance(rec, dict) else {c: getattr(rec, c) for c in columns}
        lines.append(json.dumps({c: _json_value(row[c]) for c in columns}, sort_keys=False))
    return "".join(line + "\n" for line in lines)


def _write(path, text: str):
    path = Path(path)
    try:
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write report {path}: {exc}") from exc


def emit_reports(records: list[ReportRecord], csv_path=None, json_path=None) -> list[Path]:
    """Write the CSV and/or JSON-lines mirror; returns the paths written."""
    written = []
    if csv_path:
        _write(csv_path, records_to_csv(records))
        written.append(Path(csv_path))
    if json_path:
        _write(json_path, records_to_jsonl(records))
        written.append(Path(json_path))
    return written


def verdict_counts(records) -> Counter:
    return Counter(r.verdict for r in records)


def summary_line(records) -> str:
    c = verdict_counts(records)
    return f"records={len(records)} holds={c.get('holds', 0)} violated={c.get('violated', 0)} inconclusive={c.get('inconclusive', 0)}"
