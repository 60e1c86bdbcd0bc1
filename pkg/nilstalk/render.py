"""Output formats for command results."""

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .exceptions import DomainError
from .gradedz import GradedGroup
from .tables import StalkTable


class OutputFormat(Enum):
    """How results are printed."""

    TABLE = "table"
    JSON = "json"
    CSV = "csv"

    @classmethod
    def parse(cls, text: str) -> "OutputFormat":
        try:
            return cls(text.strip().lower())
        except ValueError as ex:
            raise DomainError(f"Unknown output format: {text!r}") from ex


@dataclass(frozen=True)
class Report:
    """A command result, ready to print in any format."""

    meta: dict[str, str]
    """Parameters of the computation, printed as a header."""

    columns: list[str]
    """Column headings of the table view."""

    rows: list[list[str]]
    """Cells of the table view."""

    document: dict[str, Any]
    """The JSON view."""

    records: list[list[str]] | None = field(default=None)
    """CSV rows including a heading row; the table view when omitted."""


def _table(report: Report) -> str:
    lines = []
    if report.meta:
        lines.append("# " + " ".join(f"{k}={v}" for k, v in report.meta.items()))
    grid = [report.columns] + report.rows
    widths = [max(len(r[i]) for r in grid) for i in range(len(report.columns))]
    for r in grid:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _csv(report: Report) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerows(report.records or [report.columns] + report.rows)
    return out.getvalue()


def _json(report: Report) -> str:
    return json.dumps(report.document, indent=2, ensure_ascii=False) + "\n"


def write(report: Report, fmt: OutputFormat) -> str:
    """Renders a report in the requested format."""
    match fmt:
        case OutputFormat.TABLE:
            return _table(report)
        case OutputFormat.CSV:
            return _csv(report)
        case OutputFormat.JSON:
            return _json(report)
    raise DomainError(f"Unknown output format: {fmt}")


def _degree_span(lo: int, hi: int) -> list[int]:
    return list(range(lo, hi + 1))


def stalk_report(table: StalkTable, meta: dict[str, str]) -> Report:
    """One row per stratum, one column per degree."""
    lo, hi = table.degree_range()
    degrees = _degree_span(lo, hi)
    rows = [
        [row.label, str(row.dim)] + [row.group.render(d) for d in degrees]
        for row in table
    ]
    records = [["stratum", "dim", "degree", "group"]]
    for row in table:
        for d in row.group.degrees():
            records.append([row.label, str(row.dim), str(d), row.group.render(d)])
    return Report(
        meta=meta,
        columns=["stratum", "dim"] + [str(d) for d in degrees],
        rows=rows,
        document={**meta, **table.to_json()},
        records=records,
    )


def groups_report(groups: GradedGroup, meta: dict[str, str]) -> Report:
    """One column per degree from 0 to the top degree."""
    present = groups.degrees()
    degrees = _degree_span(min(present, default=0), max(present, default=0))
    records = [["degree", "group"]] + [[str(d), groups.render(d)] for d in present]
    return Report(
        meta=meta,
        columns=[str(d) for d in degrees],
        rows=[[groups.render(d) for d in degrees]],
        document={**meta, "groups": groups.to_json()},
        records=records,
    )
