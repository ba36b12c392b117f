"""CSV and JSON encoding of sweep rows."""

import csv
import io
import json
import logging
from pathlib import Path
from typing import Optional, Sequence

from .sweep import BOUND_NAMES, SweepRow

logger = logging.getLogger(__name__)


DEFAULT_SIGNIFICANT_DIGITS = 12
FORMATS = ("csv", "json")


def quantize(value: Optional[float], digits: int = DEFAULT_SIGNIFICANT_DIGITS) -> Optional[float]:
    """Round to `digits` significant digits; the JSON text then parses back to this exact float."""
    if value is None:
        return None
    return float(f"{value:.{digits}g}")


def columns(rows: Sequence[SweepRow]) -> list[str]:
    """Header order: eps, actual[, actual_inner], bounds (canonical), m_eps[, clamped]."""
    names = ["eps", "actual"]
    if any(row.actual_inner is not None for row in rows):
        names.append("actual_inner")
    present = set().union(*(row.bounds.keys() for row in rows))
    bound_columns = [name for name in BOUND_NAMES if name in present]
    names.extend(bound_columns)
    names.append("m_eps")
    if bound_columns:
        names.append("clamped")
    return names


def row_record(row: SweepRow, names: Sequence[str], digits: int) -> dict:
    values = {
        "eps": row.eps,
        "actual": row.actual,
        "actual_inner": row.actual_inner,
        "m_eps": row.m_eps,
        **row.bounds,
    }
    record = {}
    for name in names:
        if name == "clamped":
            record[name] = list(row.clamped)
        else:
            record[name] = quantize(values.get(name), digits)
    return record


def _csv_cell(value, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, list):
        return ";".join(value)
    return f"{value:.{digits}g}"


def serialize(rows: Sequence[SweepRow], fmt: str = "csv", digits: int = DEFAULT_SIGNIFICANT_DIGITS) -> bytes:
    """
    Encode sweep rows as UTF-8 bytes.

    Args:
        rows: Nonempty sweep output
        fmt: "csv" or "json"
        digits: Significant digits for every number

    Returns:
        Encoded payload, identical for identical rows

    Raises:
        ValueError: Empty rows or unknown format
    """
    if not rows:
        raise ValueError("nothing to serialize: no rows")
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")

    names = columns(rows)
    records = [row_record(row, names, digits) for row in rows]

    if fmt == "json":
        return (json.dumps(records, indent=2) + "\n").encode("utf-8")

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(names)
    for record in records:
        writer.writerow([_csv_cell(record[name], digits) for name in names])
    return buffer.getvalue().encode("utf-8")


def write_output(payload: bytes, path: Path) -> Path:
    """Write payload to path, creating parent directories."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(payload)
    except OSError as e:
        logger.error(f"Failed to write {path}: {e}")
        raise OSError(f"Could not write output to {path}: {e}") from e
    logger.info(f"Wrote {len(payload)} bytes to {path}")
    return path
