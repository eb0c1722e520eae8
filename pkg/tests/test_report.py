"""Tests for verdict bookkeeping and deterministic report serialisation."""

from __future__ import annotations

import json

from harmonicbounds.ball import Ball
from harmonicbounds.report import (
    CheckRecord,
    MID_DIGITS,
    VerificationReport,
    Verdict,
    ball_mid_str,
    ball_rad_str,
    render_table,
)


def _rec(check: str, verdict: Verdict, margin: Ball | None = Ball(1, -4)) -> CheckRecord:
    return CheckRecord(
        check=check,
        params=(("n", 3), ("side", "lower")),
        verdict=verdict,
        margin=margin,
        precision_bits=128,
    )


def test_verdict_values_are_the_wire_strings():
    assert [v.value for v in Verdict] == ["pass", "equality", "fail", "undecided"]
    assert Verdict.PASS == "pass"  # str-enum comparison


def test_ball_string_helpers():
    assert ball_mid_str(None) == "" and ball_rad_str(None) == ""
    assert ball_mid_str(Ball.from_int(1), 6) == "1.00000"
    assert ball_rad_str(Ball.from_int(1)) == "0"
    assert len(ball_mid_str(Ball.from_int(1)).replace(".", "").lstrip("0")) <= MID_DIGITS


def test_record_serialisation_roundtrip():
    r = _rec("bound", Verdict.PASS)
    obj = r.to_json_obj()
    assert obj["check"] == "bound"
    assert obj["params"] == {"n": 3, "side": "lower"}
    assert obj["verdict"] == "pass"
    assert obj["precision_bits"] == 128
    assert r.params_dict() == {"n": 3, "side": "lower"}


def test_summary_counts_and_ok_flag():
    rep = VerificationReport()
    rep.extend([_rec("a", Verdict.PASS), _rec("b", Verdict.EQUALITY), _rec("c", Verdict.PASS)])
    assert rep.summary() == {"pass": 2, "equality": 1, "fail": 0, "undecided": 0}
    assert rep.ok
    rep.append(_rec("d", Verdict.FAIL))
    assert not rep.ok
    assert [r.check for r in rep.verdicts(Verdict.FAIL)] == ["d"]


def test_exit_codes_prioritise_fail_over_undecided():
    rep = VerificationReport([_rec("a", Verdict.PASS)])
    assert rep.exit_code() == 0
    rep.append(_rec("b", Verdict.UNDECIDED))
    assert rep.exit_code() == 3
    rep.append(_rec("c", Verdict.FAIL))
    assert rep.exit_code() == 1


def test_json_shape_and_determinism():
    rep = VerificationReport([_rec("a", Verdict.PASS), _rec("b", Verdict.EQUALITY, None)])
    text = rep.to_json()
    assert text == rep.to_json()  # byte-identical re-render
    obj = json.loads(text)
    assert set(obj) == {"summary", "records"}
    assert obj["summary"]["pass"] == 1
    assert obj["records"][1]["margin_mid"] == ""
    assert obj["records"][1]["margin_rad"] == ""


def test_csv_rows_shape():
    rep = VerificationReport([_rec("a", Verdict.PASS)])
    rows = rep.to_csv_rows()
    assert rows[0] == ["check", "params", "verdict", "margin_mid", "margin_rad", "precision_bits"]
    assert rows[1][0] == "a"
    assert json.loads(rows[1][1]) == {"n": 3, "side": "lower"}
    assert rows[1][2] == "pass"
    assert rows[1][5] == "128"


def test_render_table_alignment():
    rows = [["col", "x"], ["value", "y"]]
    out = render_table(rows)
    lines = out.split("\n")
    assert lines[0].startswith("col")
    assert set(lines[1]) <= {"-", " "}
    assert lines[2].startswith("value")
    assert render_table([]) == ""
