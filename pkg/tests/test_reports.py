import csv
import json
import math

import pytest
from pydantic import ValidationError

from src.schemas.reports import VerificationReport
from src.utils.report_writer import REPORT_FIELDS, render_json, report_record, write_reports


def _reports():
    return [
        VerificationReport.evaluate("ladder.lowering", 1.0 / 3.0 * 1e-7, 1e-6,
                                    params={"alpha": 1.3, "n_levels": 6}, metadata={"note": "ok"}),
        VerificationReport.evaluate("ladder.raising", 2e-3, 1e-6, params={"alpha": 1.3},
                                    metadata={"eigenvalue": complex(1.5, -0.25), "levels": [1, 2]}),
    ]


class TestVerificationReport:
    def test_pass_is_residual_below_tolerance(self):
        assert VerificationReport.evaluate("x", 1e-7, 1e-6).passed
        assert VerificationReport.evaluate("x", 1e-6, 1e-6).passed
        assert not VerificationReport.evaluate("x", 2e-6, 1e-6).passed

    def test_nan_residual_fails(self):
        assert not VerificationReport.evaluate("x", math.nan, 1.0).passed

    def test_inconsistent_pass_is_rejected(self):
        with pytest.raises(ValidationError):
            VerificationReport(check="x", residual=1.0, tolerance=1e-6, passed=True)

    def test_negative_tolerance_is_rejected(self):
        with pytest.raises(ValidationError):
            VerificationReport.evaluate("x", 0.0, -1.0)

    def test_failure_report(self):
        report = VerificationReport.failure("metric.riesz", 0.0, RuntimeError("boom"), params={"n": 3})
        assert not report.passed
        assert math.isinf(report.residual)
        assert report.metadata["error"] == "RuntimeError: boom"
        assert report.params == {"n": 3}


class TestReportWriter:
    def test_field_order(self):
        assert list(report_record(_reports()[0])) == list(REPORT_FIELDS)
        parsed = json.loads(render_json(_reports()))
        assert [list(record) for record in parsed] == [list(REPORT_FIELDS)] * 2

    def test_values(self):
        record = report_record(_reports()[1])
        assert record["pass"] is False
        assert record["metadata"]["eigenvalue"] == {"real": 1.5, "imag": -0.25}
        assert record["metadata"]["levels"] == [1, 2]

    def test_significant_digits(self):
        record = report_record(_reports()[0])
        assert record["residual"] == float(f"{1.0 / 3.0 * 1e-7:.15g}")

    def test_infinite_residual_is_written_as_string(self):
        failure = VerificationReport.failure("metric.riesz", 0.0, ValueError("bad"))
        parsed = json.loads(render_json([failure]))
        assert parsed[0]["residual"] == "inf"
        assert parsed[0]["pass"] is False

    def test_json_file(self, tmp_path):
        path = write_reports(_reports(), tmp_path / "out", "json", "ladder")
        assert path == tmp_path / "out" / "ladder.json"
        parsed = json.loads(path.read_text(encoding="utf-8"))
        assert [record["check"] for record in parsed] == ["ladder.lowering", "ladder.raising"]

    def test_output_is_deterministic(self, tmp_path):
        first = write_reports(_reports(), tmp_path / "a", "json", "ladder").read_bytes()
        second = write_reports(_reports(), tmp_path / "b", "json", "ladder").read_bytes()
        assert first == second

    def test_csv_file(self, tmp_path):
        path = write_reports(_reports(), tmp_path, "csv", "ladder")
        assert path.read_bytes().startswith(b"check,params,residual,tolerance,pass,metadata\r\n")
        with path.open(newline="", encoding="utf-8") as handle:
            rows = list(csv.DictReader(handle))
        assert [row["pass"] for row in rows] == ["true", "false"]
        assert json.loads(rows[0]["params"]) == {"alpha": 1.3, "n_levels": 6}
        assert float(rows[1]["residual"]) == pytest.approx(2e-3)
