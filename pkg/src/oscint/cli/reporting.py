"""Report rows and the text, JSON and CSV formatters.

Every number that carries precision is stored as a decimal string, so the three
formats show identical numeric strings and JSON reports round-trip exactly.
"""

import csv
import io
import json
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, fields
from typing import Dict, List, Optional, Sequence, Type

from mpmath import mp

from oscint.methods import IntegralResult
from oscint.numerics.mp_numeric import (
    PrecisionContext,
    from_decimal_string,
    relative_difference,
    to_decimal_string,
)


@dataclass
class ReportRow:
    """One (integral, method) result as it appears in a report.

    ``relative_error`` is recomputed from the ``value`` and ``reference`` strings.
    A failed run has an empty ``value`` and the error message in ``error``.
    """

    id: int
    method: str
    value: str = ""
    reference: str = ""
    relative_error: str = ""
    err_estimate: str = ""
    eval_count: int = 0
    scan_count: int = 0
    k_used: Optional[int] = None
    panels_used: Optional[int] = None
    wall_time_ms: str = "0.000"
    error: str = ""

    @classmethod
    def from_result(
        cls,
        id: int,
        result: IntegralResult,
        reference,
        wall_time_ms: float,
        ctx: PrecisionContext,
    ) -> "ReportRow":
        value = to_decimal_string(result.value, ctx)
        reference = to_decimal_string(reference, ctx)
        with ctx.workdps():
            relative_error = relative_difference(
                from_decimal_string(value, ctx), from_decimal_string(reference, ctx)
            )
        return cls(
            id=id,
            method=result.method,
            value=value,
            reference=reference,
            relative_error=to_decimal_string(relative_error, ctx),
            err_estimate=to_decimal_string(result.err_estimate, ctx),
            eval_count=result.eval_count,
            scan_count=result.scan_count,
            k_used=result.k_used,
            panels_used=result.panels_used,
            wall_time_ms=f"{wall_time_ms:.3f}",
        )

    @property
    def ok(self) -> bool:
        return self.error == ""


@dataclass
class SweepRow(ReportRow):
    sweep_axis: str = ""
    sweep_value: str = ""


def _short(number: str) -> str:
    """3 significant digits with an uppercase exponent, e.g. 5.4E-26."""
    if number == "":
        return "-"
    x = from_decimal_string(number)
    if x == 0:
        return "0"
    return mp.nstr(x, 3, min_fixed=0, max_fixed=0, show_zero_exponent=True).upper()


class ReportFormatter(ABC):
    """Strategy turning a list of report rows into the text of a report."""

    name: str = ""

    @abstractmethod
    def format(self, rows: Sequence[ReportRow]) -> str:
        raise NotImplementedError


class TextFormatter(ReportFormatter):
    """Human readable table in the layout of a results table, followed by the full strings."""

    name = "text"

    def format(self, rows: Sequence[ReportRow]) -> str:
        sweep = any(isinstance(row, SweepRow) for row in rows)
        header = ["id", "method", "rel. error", "err. est.", "evals", "scan", "k/K", "ms"]
        if sweep:
            header = ["axis", "value"] + header
        table = [header]
        for row in rows:
            depth = row.k_used if row.k_used is not None else row.panels_used
            line = [
                str(row.id),
                row.method,
                _short(row.relative_error) if row.ok else "ERROR",
                _short(row.err_estimate),
                str(row.eval_count),
                str(row.scan_count),
                "-" if depth is None else str(depth),
                row.wall_time_ms,
            ]
            if sweep:
                line = [row.sweep_axis, row.sweep_value] + line
            table.append(line)

        widths = [max(len(line[i]) for line in table) for i in range(len(header))]
        lines = ["  ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in table]
        lines.insert(1, "  ".join("-" * w for w in widths))

        lines.append("")
        for row in rows:
            label = f"({row.id}) {row.method}"
            if sweep:
                label += f" {row.sweep_axis}={row.sweep_value}"
            if not row.ok:
                lines.append(f"{label}: error: {row.error}")
                continue
            lines.append(f"{label}:")
            lines.append(f"  value          {row.value}")
            lines.append(f"  reference      {row.reference}")
            lines.append(f"  relative_error {row.relative_error}")
            lines.append(f"  err_estimate   {row.err_estimate}")
        return "\n".join(lines) + "\n"


class JsonFormatter(ReportFormatter):
    name = "json"

    def format(self, rows: Sequence[ReportRow]) -> str:
        return json.dumps([asdict(row) for row in rows], indent=2) + "\n"


class CsvFormatter(ReportFormatter):
    name = "csv"

    def format(self, rows: Sequence[ReportRow]) -> str:
        row_type = SweepRow if any(isinstance(row, SweepRow) for row in rows) else ReportRow
        buffer = io.StringIO()
        writer = csv.DictWriter(
            buffer, fieldnames=[f.name for f in fields(row_type)], lineterminator="\r\n"
        )
        writer.writeheader()
        for row in rows:
            writer.writerow({k: "" if v is None else v for k, v in asdict(row).items()})
        return buffer.getvalue()


FORMATTERS: Dict[str, Type[ReportFormatter]] = {
    TextFormatter.name: TextFormatter,
    JsonFormatter.name: JsonFormatter,
    CsvFormatter.name: CsvFormatter,
}


def get_formatter(name: str) -> ReportFormatter:
    try:
        return FORMATTERS[name]()
    except KeyError:
        raise ValueError(f"Unknown report format '{name}'. Available: {sorted(FORMATTERS)}")


def parse_json_report(text: str) -> List[ReportRow]:
    """Inverse of :class:`JsonFormatter`."""
    rows = []
    for record in json.loads(text):
        row_type = SweepRow if "sweep_axis" in record else ReportRow
        rows.append(row_type(**record))
    return rows
