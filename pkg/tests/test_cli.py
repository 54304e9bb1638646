import csv
import json

import pytest

import main
from src.schemas.reports import VerificationReport


def test_cubic_run_writes_json(tmp_path, capsys):
    assert main.main(["cubic", "--out", str(tmp_path)]) == main.EXIT_OK
    records = json.loads((tmp_path / "cubic.json").read_text(encoding="utf-8"))
    assert [record["check"] for record in records] == [
        "cubic.refactorization", "cubic.pt_antisymmetry", "cubic.origin_zero", "cubic.time_reversal"]
    assert all(record["pass"] for record in records)
    assert "0 failed" in capsys.readouterr().out


def test_csv_format(tmp_path):
    assert main.main(["cubic", "--out", str(tmp_path), "--format", "csv"]) == main.EXIT_OK
    with (tmp_path / "cubic.csv").open(newline="", encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    assert len(rows) == 4
    assert {row["pass"] for row in rows} == {"true"}


def test_config_file_is_used(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text(f"cubic_epsilon = 0.5\noutput_dir = {tmp_path / 'from-config'}\n", encoding="utf-8")
    assert main.main(["cubic", "--config", str(config)]) == main.EXIT_OK
    records = json.loads((tmp_path / "from-config" / "cubic.json").read_text(encoding="utf-8"))
    assert records[0]["params"]["epsilon_shift"] == 0.5


def test_bad_config_exits_with_usage_code(tmp_path, capsys):
    config = tmp_path / "bad.cfg"
    config.write_text("alpha = 2.0\n", encoding="utf-8")
    assert main.main(["cubic", "--config", str(config), "--out", str(tmp_path)]) == main.EXIT_USAGE
    assert "pblab:" in capsys.readouterr().err
    assert not (tmp_path / "cubic.json").exists()


def test_unknown_suite_is_a_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main.main(["everything"])
    assert excinfo.value.code == main.EXIT_USAGE


def test_failed_check_sets_exit_code(tmp_path, monkeypatch, capsys):
    failing = VerificationReport.evaluate("ladder.lowering", 1.0, 1e-6)
    monkeypatch.setattr(main, "run_suite", lambda config, suite, parallel=False: [failing])
    assert main.main(["ladder", "--out", str(tmp_path)]) == main.EXIT_CHECK_FAILED
    assert "FAIL ladder.lowering" in capsys.readouterr().out
    assert json.loads((tmp_path / "ladder.json").read_text(encoding="utf-8"))[0]["pass"] is False
