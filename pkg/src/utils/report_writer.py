import csv
import json
import math
import sys
from pathlib import Path
from typing import Any, Iterable, Literal

import numpy as np

from src.logging import logging
from src.exception import CustomException
from src.constants.defaults import REPORT_SIGNIFICANT_DIGITS
from src.schemas.reports import VerificationReport

REPORT_FIELDS = ("check", "params", "residual", "tolerance", "pass", "metadata")


def _plain(value: Any) -> Any:
    """
    Convert report payloads to JSON-ready values.

    Floats are rounded to a fixed number of significant digits and non-finite
    floats become the strings "inf", "-inf" and "nan", so identical runs give
    byte-identical files.
    """
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return float(f"{value:.{REPORT_SIGNIFICANT_DIGITS}g}")
    if isinstance(value, (complex, np.complexfloating)):
        return {"real": _plain(value.real), "imag": _plain(value.imag)}
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Path):
        return str(value)
    return value


def report_record(report: VerificationReport) -> dict:
    """One report as an ordered dict in REPORT_FIELDS order."""
    return {
        "check": report.check,
        "params": _plain(report.params),
        "residual": _plain(report.residual),
        "tolerance": _plain(report.tolerance),
        "pass": report.passed,
        "metadata": _plain(report.metadata),
    }


def render_json(reports: Iterable[VerificationReport]) -> str:
    return json.dumps([report_record(r) for r in reports], indent=2, allow_nan=False) + "\n"


def write_reports(
    reports: list[VerificationReport],
    out_dir: str | Path,
    output_format: Literal["csv", "json"],
    stem: str,
) -> Path:
    """
    Serialize reports to <out_dir>/<stem>.<format>.

    Args:
        reports: reports in emission order
        out_dir: destination directory, created when missing
        output_format: "json" (array of objects) or "csv" (header row, RFC-4180 quoting)
        stem: file name without extension, usually the suite name

    Returns:
        path of the written file
    """
    try:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"{stem}.{output_format}"

        if output_format == "json":
            path.write_text(render_json(reports), encoding="utf-8")
        elif output_format == "csv":
            with path.open("w", encoding="utf-8", newline="") as handle:
                writer = csv.writer(handle, lineterminator="\r\n")
                writer.writerow(REPORT_FIELDS)
                for report in reports:
                    record = report_record(report)
                    writer.writerow([
                        record["check"],
                        json.dumps(record["params"], sort_keys=True),
                        record["residual"],
                        record["tolerance"],
                        "true" if record["pass"] else "false",
                        json.dumps(record["metadata"], sort_keys=True),
                    ])
        else:
            raise ValueError(f"unknown output format {output_format!r}")

        logging.info(f"Wrote {len(reports)} reports to {path}")
        return path

    except Exception as e:
        logging.error(f"Failed to write reports: {e}")
        raise CustomException(e, sys)
