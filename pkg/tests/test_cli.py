from __future__ import annotations

import csv
import dataclasses
import io
import json
from pathlib import Path

import pytest

from starlike_radius import statements
from starlike_radius.cli import build_parser, main
from starlike_radius.core.errors import DomainError
from starlike_radius.envelope import Family
from starlike_radius.jobs import JobSpec
from starlike_radius.formatters.table import RECORD_FIELDS, SWEEP_FIELDS, TABLE_FIELDS

CORNER = ["--family", "f1", "--b", "-1", "--c", "-1"]


def _rows(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def test_radius_csv(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["radius", *CORNER, "--region", "halfplane"]) == 0

    out = capsys.readouterr().out
    assert out.splitlines()[0] == ",".join(RECORD_FIELDS)
    (row,) = _rows(out)
    assert row["family"] == "f1"
    assert row["radius"] == "0.2"
    assert row["method"] == "envelope-crossing"
    assert row["alpha"] == "0.0"
    assert row["gamma"] == ""
    assert row["sharp_claimed"] == "true"
    assert row["oracle_radius"] == ""


def test_radius_json_and_statement_method(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["radius", "--family", "f3", "--b", "-1", "--region", "lemniscate", "--method", "statement", "--format", "json"]) == 0

    (record,) = json.loads(capsys.readouterr().out)
    assert record["method"] == "statement-polynomial"
    assert record["c"] is None
    assert record["radius"] == pytest.approx(0.13005, abs=1e-4)


def test_radius_summary_on_stderr(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["radius", "--family", "f3", "--b", "-1", "--region", "halfplane", "--log-level", "INFO"]) == 0

    err = capsys.readouterr().err
    assert "radius 0.333333333333" in err
    assert "command=radius" in err


def test_radius_to_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    target = tmp_path / "out" / "radius.csv"

    assert main(["radius", *CORNER, "--region", "cardioid", "--output", str(target)]) == 0

    assert capsys.readouterr().out == ""
    (row,) = _rows(target.read_text(encoding="utf-8"))
    assert row["region"] == "cardioid"


def test_radius_is_deterministic(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["radius", "--family", "f2", "--b", "-0.5", "--c", "-0.5", "--region", "nephroid"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0

    assert capsys.readouterr().out == first


def test_unsupported_pair_exit_code(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["radius", "--family", "f3", "--b", "-1", "--region", "nephroid"]) == 2

    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("starlike-radius: no radius result")


@pytest.mark.parametrize(
    "argv",
    [
        ["radius", "--family", "f1", "--b", "1.5", "--c", "0", "--region", "halfplane"],
        ["radius", "--family", "f1", "--b", "-1", "--c", "-1/3", "--region", "halfplane"],
        ["radius", "--family", "f1", "--b", "-1", "--c", "-0.5", "--region", "halfplane"],
        ["radius", *CORNER, "--region", "halfplane", "--alpha", "1.0"],
    ],
    ids=["b-out-of-range", "not-a-number", "hypothesis-violated", "alpha-out-of-range"],
)
def test_domain_errors_exit_one(argv: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1
    assert capsys.readouterr().out == ""


def test_usage_error_exit_one() -> None:
    with pytest.raises(SystemExit) as info:
        main(["radius", "--family", "f1", "--b", "0"])

    assert info.value.code == 1


def test_table_rows(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["table", *CORNER, "--no-oracle"]) == 0
    f1 = _rows(capsys.readouterr().out)
    assert main(["table", "--family", "f3", "--b", "-1", "--no-oracle"]) == 0
    f3 = _rows(capsys.readouterr().out)

    assert len(f1) == 12
    assert len(f3) == 4
    assert list(f1[0]) == list(TABLE_FIELDS)
    assert "radius" not in f1[0]
    halfplane = next(row for row in f1 if row["region"] == "halfplane")
    assert float(halfplane["radius_crossing"]) == pytest.approx(0.2)
    assert float(halfplane["radius_statement"]) == pytest.approx(0.2)
    assert all(float(row["abs_diff"]) <= 1e-8 for row in f3)
    flagged = [row for row in f1 if row["region"] == "rational-r"]
    assert "differs from its proof" in flagged[0]["note"]


def test_table_without_extremal(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["table", "--family", "f2", "--b", "0", "--c", "0"]) == 0

    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 12
    assert all(row["oracle_radius"] == "" for row in rows)
    assert all("no extremal printed" in row["note"] for row in rows)


def test_csv_and_json_agree(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["table", "--family", "f3", "--b", "-0.5", "--no-oracle"]
    assert main(argv) == 0
    rows = _rows(capsys.readouterr().out)
    assert main([*argv, "--format", "json"]) == 0
    records = json.loads(capsys.readouterr().out)

    assert [float(row["radius_crossing"]) for row in rows] == [record["radius_crossing"] for record in records]
    assert [row["region"] for row in rows] == [record["region"] for record in records]


def test_sweep(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["sweep", "--family", "f1", "--b", "0", "--c", "-0.333333333333", "--region", "halfplane"]
    assert main([*argv, "--param", "b", "--from", "-1", "--to", "1", "--steps", "3", "--workers", "2"]) == 0

    out = capsys.readouterr().out
    assert out.splitlines()[0] == ",".join(SWEEP_FIELDS)
    rows = _rows(out)
    assert [row["value"] for row in rows] == ["-1.0", "0.0", "1.0"]
    assert [row["trend"] for row in rows] == ["", "up", "down"]


def test_sweep_empty_range(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["sweep", *CORNER, "--region", "halfplane", "--param", "alpha", "--from", "0.5", "--to", "0", "--steps", "2"]

    assert main(argv) == 1
    assert "empty sweep range" in capsys.readouterr().err


def test_verify(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["verify", "--skip-oracle"]) == 0

    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "discrepancies: 2" in out


def test_verify_reports_corrupted_statements(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    original = statements.statement_equation

    def shifted(*args: object, **kwargs: object) -> statements.StatementEquation:
        equation = original(*args, **kwargs)  # type: ignore[arg-type]
        if equation.polynomial is None:
            return equation
        return dataclasses.replace(equation, polynomial=equation.polynomial * 1.5 + 0.1)

    monkeypatch.setattr(statements, "statement_equation", shifted)

    assert main(["verify", "--skip-oracle"]) == 3
    captured = capsys.readouterr()
    assert "FAIL statement-agreement" in captured.out
    assert "statement-agreement" in captured.err


def test_plot_is_deterministic(tmp_path: Path) -> None:
    first, second = tmp_path / "a.svg", tmp_path / "b.svg"

    assert main(["plot", *CORNER, "--region", "halfplane", "--output", str(first)]) == 0
    assert main(["plot", *CORNER, "--region", "halfplane", "--output", str(second)]) == 0

    data = first.read_bytes()
    assert data.startswith(b"<?xml")
    assert b"<svg" in data
    assert data == second.read_bytes()


def test_plot_of_the_second_family(tmp_path: Path) -> None:
    target = tmp_path / "f2.svg"

    assert main(["plot", "--family", "f2", "--b", "0", "--c", "0", "--region", "halfplane", "--output", str(target)]) == 2
    assert not target.exists()


def test_job_overrides_carry_only_given_flags() -> None:
    job = JobSpec(command="radius", family=Family.F1, tol=1e-13, scan_n=8192, format="json")

    assert job.overrides() == {"solver": {"tol": 1e-13, "scan_n": 8192}, "output": {"format": "json"}}
    assert JobSpec(command="verify").overrides() == {}


def test_job_rejects_directory_output(tmp_path: Path) -> None:
    with pytest.raises(DomainError, match="is a directory"):
        JobSpec(command="radius", output=str(tmp_path))


def test_job_without_region_or_family() -> None:
    job = JobSpec(command="table", family=Family.F3, b=-1.0)

    assert job.params().bp == pytest.approx(2.0)
    with pytest.raises(DomainError, match="needs a region"):
        job.target()
    with pytest.raises(DomainError, match="needs a family"):
        JobSpec(command="radius").params()


def test_oracle_flags_map_onto_the_job() -> None:
    from starlike_radius.cli import _job

    parser = build_parser()
    assert _job(parser.parse_args(["radius", *CORNER, "--region", "halfplane"])).with_oracle is False
    assert _job(parser.parse_args(["radius", *CORNER, "--region", "halfplane", "--oracle"])).with_oracle is True
    assert _job(parser.parse_args(["table", *CORNER, "--no-oracle"])).with_oracle is False
    assert _job(parser.parse_args(["verify"])).with_oracle is True
    assert _job(parser.parse_args(["verify", "--skip-oracle"])).with_oracle is False


def test_directory_output_exits_one(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["radius", *CORNER, "--region", "halfplane", "--output", str(tmp_path)]) == 1

    assert "is a directory" in capsys.readouterr().err
