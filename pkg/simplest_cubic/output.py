"""
Rendering of records as JSON, CSV or markdown

Rationals are written as "num/den" strings, never as floats.
"""

import csv
import io
import json
import logging
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import click

from .config import OutputFormat

logger = logging.getLogger(__name__)


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _cell(value: Any) -> str:
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def _columns(rows: Sequence[Dict[str, Any]], columns: Optional[List[str]]) -> List[str]:
    if columns:
        return columns
    seen: List[str] = []
    for row in rows:
        for key in row:
            if key not in seen:
                seen.append(key)
    return seen


def render_json(payload: Any) -> str:
    return json.dumps(_plain(payload), indent=2, sort_keys=True) + "\n"


def render_csv(rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    header = _columns(rows, columns)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row.get(key)) for key in header])
    return buffer.getvalue()


def render_markdown(rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    header = _columns(rows, columns)
    if not header:
        return "_no rows_\n"
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    for row in rows:
        lines.append("| " + " | ".join(_cell(row.get(key)) for key in header) + " |")
    return "\n".join(lines) + "\n"


def render(payload: Any, fmt: OutputFormat, columns: Optional[List[str]] = None) -> str:
    """Render a record dict or a list of record dicts

    A single dict becomes a one-row table in the CSV and markdown formats.
    """
    if fmt == OutputFormat.JSON:
        return render_json(payload)
    rows = [payload] if isinstance(payload, dict) else list(payload)
    if fmt == OutputFormat.CSV:
        return render_csv(rows, columns)
    return render_markdown(rows, columns)


def emit(text: str, out: Optional[Path] = None) -> None:
    """Write rendered output to stdout or to --out"""
    if out is None:
        click.echo(text, nl=False)
        return
    out.write_text(text)
    logger.info(f"Wrote {len(text)} characters to {out}")


def render_jsonl(rows: Sequence[Dict[str, Any]]) -> str:
    """One compact JSON object per line"""
    return "".join(json.dumps(_plain(row), sort_keys=True, separators=(",", ":")) + "\n" for row in rows)
