"""ResultTable and its CSV / JSON emission."""

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from errors import EmissionError

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12


class ResultTable(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    schema_: list[str] = Field(alias="schema")
    rows: list[list[float]] = Field(default_factory=list)
    metadata: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_widths(self) -> "ResultTable":
        width = len(self.schema_)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"Row {i} has {len(row)} fields, schema has {width}")
        return self

    @property
    def columns(self) -> list[str]:
        return list(self.schema_)

    def column(self, name: str) -> list[float]:
        idx = self.schema_.index(name)
        return [row[idx] for row in self.rows]


def format_value(value: float) -> str:
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


def rounded(value: float) -> float:
    return float(format_value(value))


def render_csv(table: ResultTable) -> str:
    buf = io.StringIO()
    for key in sorted(table.metadata):
        buf.write(f"# {key}: {json.dumps(table.metadata[key], sort_keys=True)}\n")
    writer = csv.writer(buf, delimiter=",", lineterminator="\n")
    writer.writerow(table.schema_)
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def render_json(table: ResultTable) -> str:
    payload = {
        "metadata": table.metadata,
        "schema": table.schema_,
        "rows": [[rounded(v) for v in row] for row in table.rows],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit(table: ResultTable, fmt: Literal["csv", "json"] = "csv", path: Optional[str] = None) -> None:
    """Write the table as CSV or JSON to ``path``, or to stdout when path is None."""
    if fmt == "csv":
        text = render_csv(table)
    elif fmt == "json":
        text = render_json(table)
    else:
        raise EmissionError(str(path), f"unknown format {fmt!r}")

    if path is None:
        sys.stdout.write(text)
        return
    try:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise EmissionError(str(path), str(e)) from e
    logger.info(f"Wrote {len(table.rows)} rows to {path} ({fmt})")


def load_csv_table(path: str) -> ResultTable:
    """Re-read a CSV written by :func:`emit`."""
    metadata: dict[str, Any] = {}
    data_lines: list[str] = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if line.startswith("# "):
                key, _, value = line[2:].rstrip("\n").partition(": ")
                metadata[key] = json.loads(value)
            else:
                data_lines.append(line)
    reader = csv.reader(data_lines)
    schema = next(reader)
    rows = [[float(v) for v in record] for record in reader if record]
    return ResultTable(schema=schema, rows=rows, metadata=metadata)
