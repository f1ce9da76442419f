import csv
import io
import json

import pytest
from mpmath import mp, mpf

from oscint.cli import (
    CsvFormatter,
    JsonFormatter,
    ReportRow,
    SweepRow,
    TextFormatter,
    get_formatter,
    parse_json_report,
)
from oscint.methods import IntegralResult
from oscint.numerics import PrecisionContext

CTX = PrecisionContext(30)


def example_rows():
    with CTX.workdps():
        hyperfunction = IntegralResult(
            method="hyperfunction",
            value=mp.ln2 * (1 + mpf("5.4e-26")),
            err_estimate=mpf("3e-27"),
            eval_count=1665,
            k_used=61,
            imag_residue=mpf("1e-40"),
        )
        euler = IntegralResult(
            method="euler",
            value=mp.ln2 * (1 - mpf("2.5e-25")),
            err_estimate=mpf("1e-24"),
            eval_count=5000,
            panels_used=50,
            scan_count=6012,
        )
        reference = +mp.ln2
    return [
        ReportRow.from_result(1, hyperfunction, reference, 12.5, CTX),
        ReportRow.from_result(1, euler, reference, 40.25, CTX),
        ReportRow(id=9, method="hyperfunction", error="Unknown integral id 9"),
    ]


def test_row_from_result():
    row = example_rows()[0]
    assert row.ok
    assert row.method == "hyperfunction"
    assert row.eval_count == 1665 and row.k_used == 61 and row.panels_used is None
    assert row.wall_time_ms == "12.500"
    assert "e" in row.value and "E" not in row.value
    assert mp.nstr(mpf(row.relative_error), 2) == "5.4e-26"
    # recomputed from the stored strings
    with CTX.workdps():
        expected = abs(mpf(row.value) - mpf(row.reference)) / abs(mpf(row.reference))
        assert abs(mpf(row.relative_error) - expected) <= mpf("1e-20") * expected


def test_json_round_trip():
    rows = example_rows()
    text = JsonFormatter().format(rows)
    data = json.loads(text)
    assert isinstance(data, list) and len(data) == 3
    assert set(data[0]) == {
        "id",
        "method",
        "value",
        "reference",
        "relative_error",
        "err_estimate",
        "eval_count",
        "scan_count",
        "k_used",
        "panels_used",
        "wall_time_ms",
        "error",
    }
    assert parse_json_report(text) == rows

    sweep_rows = [SweepRow(id=3, method="euler", value="1.0e+0", sweep_axis="N", sweep_value="20")]
    assert parse_json_report(JsonFormatter().format(sweep_rows)) == sweep_rows


def test_formats_share_numeric_strings():
    rows = example_rows()
    text = TextFormatter().format(rows)
    table = list(csv.DictReader(io.StringIO(CsvFormatter().format(rows))))
    data = json.loads(JsonFormatter().format(rows))
    for row, record, line in zip(rows, data, table):
        for name in ("value", "reference", "relative_error", "err_estimate"):
            assert record[name] == line[name] == getattr(row, name)
            if row.ok:
                assert getattr(row, name) in text


def test_text_table():
    text = TextFormatter().format(example_rows())
    print(text)
    assert "5.4E-26" in text
    assert "2.5E-25" in text
    assert "ERROR" in text
    assert "Unknown integral id 9" in text


def test_csv_quoting():
    rows = [ReportRow(id=2, method="euler", error='bad, "quoted" message')]
    text = CsvFormatter().format(rows)
    assert text.startswith("id,method,value,reference,relative_error")
    assert text.endswith("\r\n")
    record = next(csv.DictReader(io.StringIO(text)))
    assert record["error"] == 'bad, "quoted" message'
    assert record["k_used"] == ""


def test_get_formatter():
    assert isinstance(get_formatter("csv"), CsvFormatter)
    with pytest.raises(ValueError):
        get_formatter("xml")


if __name__ == "__main__":
    test_row_from_result()
    test_json_round_trip()
    test_formats_share_numeric_strings()
    test_text_table()
