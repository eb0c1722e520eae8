"""End-to-end tests of the command-line interface.

Most cases drive main() in-process and capture stdout; a couple of
subprocess tests confirm the installed entry points and exit codes.
"""

from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from harmonicbounds.cli import BOUNDS_CSV_HEADER, main


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def test_eval_exact_fraction(capsys):
    code, out, _ = run_cli(capsys, "eval", "10", "--exact")
    assert code == 0
    assert out.strip() == "7381/2520"


def test_eval_exact_whole_number(capsys):
    code, out, _ = run_cli(capsys, "eval", "1", "--exact")
    assert code == 0
    assert out.strip() == "1"


def test_eval_decimal_enclosure(capsys):
    code, out, _ = run_cli(capsys, "eval", "100")
    assert code == 0
    assert out.startswith("5.18737751763962")
    assert "+/-" in out


def test_eval_higher_precision_narrows_radius(capsys):
    _, out128, _ = run_cli(capsys, "eval", "7", "--precision", "128")
    _, out512, _ = run_cli(capsys, "eval", "7", "--precision", "512")
    assert out128.split("+/-")[0].strip()[:20] == out512.split("+/-")[0].strip()[:20]


def test_eval_rejects_bad_n():
    for bad in ("0", "-3", "2.5", "ten"):
        with pytest.raises(SystemExit) as exc:
            main(["eval", bad])
        assert exc.value.code == 2


def test_eval_rejects_out_of_range_precision():
    for bad in ("52", "4097", "-1", "big"):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "5", "--precision", bad])
        assert exc.value.code == 2


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

def test_bounds_table_shows_equality_verdict(capsys):
    code, out, _ = run_cli(capsys, "bounds", "1", "--bound", "main")
    assert code == 0
    assert "equality(lower)" in out
    assert out.splitlines()[0].startswith("bound")


def test_bounds_table_all_twelve(capsys):
    code, out, _ = run_cli(capsys, "bounds", "2")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln.strip()]
    assert len(lines) == 2 + 12  # header, separator, one row per bound
    assert all("pass" in ln or "bound" in ln or "-" in ln for ln in lines)


def test_bounds_csv_schema(capsys):
    code, out, _ = run_cli(capsys, "bounds", "2", "--bound", "main", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == BOUNDS_CSV_HEADER
    assert len(rows) == 2
    row = dict(zip(rows[0], rows[1]))
    assert row["bound_id"] == "main" and row["n"] == "2"
    assert row["verdict"] == "pass"
    # all three enclosures present with nonempty mids
    assert row["lower_mid"] and row["target_mid"] and row["upper_mid"]
    assert float(row["lower_mid"]) < float(row["target_mid"]) < float(row["upper_mid"])


def test_bounds_csv_rational_endpoints(capsys):
    code, out, _ = run_cli(capsys, "bounds", "1", "--bound", "toth", "--format", "csv")
    assert code == 0
    row = dict(zip(*list(csv.reader(io.StringIO(out)))))
    assert row["lower_mid"].startswith("0.41666666")
    assert row["upper_mid"].startswith("0.42857142")


def test_bounds_json_reuses_report_schema(capsys):
    code, out, _ = run_cli(capsys, "bounds", "3", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"summary", "records"}
    assert obj["summary"]["pass"] == 12
    assert {r["check"] for r in obj["records"]} == {"bound"}
    assert [r["params"]["id"] for r in obj["records"]][:3] == ["franel", "klamkin", "odd"]


def test_bounds_unknown_bound_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "1", "--bound", "euler"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_table_summary_line(capsys):
    code, out, _ = run_cli(capsys, "verify", "--max-n", "5", "--checks", "bounds,equality")
    assert code == 0
    first = out.splitlines()[0]
    assert first.startswith("summary: pass=")
    assert "fail=0" in first and "undecided=0" in first


def test_verify_sharpness_check_only(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--max-n", "5", "--checks", "sharpness", "--format", "json"
    )
    assert code == 0
    obj = json.loads(out)
    checks = {r["check"] for r in obj["records"]}
    assert checks == {"f_value", "f_digits", "f_below_limit", "f_monotone", "f_gap_decreasing"}
    assert obj["summary"]["fail"] == 0 and obj["summary"]["undecided"] == 0


def test_verify_csv_format(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--max-n", "4", "--checks", "epsilon", "--format", "csv"
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["check", "params", "verdict", "margin_mid", "margin_rad", "precision_bits"]
    assert all(r[2] == "pass" for r in rows[1:])


def test_verify_rejects_unknown_checks(capsys):
    code, _, err = run_cli(capsys, "verify", "--checks", "bogus", "--max-n", "5")
    assert code == 2
    assert "unknown checks" in err


def test_verify_rejects_small_max_n(capsys):
    code, _, err = run_cli(capsys, "verify", "--max-n", "2")
    assert code == 2
    assert "max-n" in err


def test_verify_rejects_empty_checks(capsys):
    code, _, err = run_cli(capsys, "verify", "--checks", " , ", "--max-n", "5")
    assert code == 2


def test_verify_output_is_identical_across_jobs(capsys):
    args = ("verify", "--max-n", "12", "--checks", "bounds", "--format", "csv")
    code1, out1, _ = run_cli(capsys, *args, "--jobs", "1")
    code2, out2, _ = run_cli(capsys, *args, "--jobs", "3")
    assert code1 == code2 == 0
    assert out1 == out2


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------

def test_compare_reports_refinement_records(capsys):
    code, out, _ = run_cli(capsys, "compare", "--max-n", "5", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert {r["check"] for r in obj["records"]} == {"refinement"}
    assert len(obj["records"]) == 4 * 5


def test_compare_rejects_small_max_n(capsys):
    code, _, err = run_cli(capsys, "compare", "--max-n", "1")
    assert code == 2


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "harmonicbounds", "eval", "10", "--exact"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "7381/2520"


def test_console_script_usage_error_exit_code():
    proc = subprocess.run(
        ["harmonic-bounds", "eval", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "must be >= 1" in proc.stderr
