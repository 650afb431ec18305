from __future__ import annotations

import csv
import io
import json

import pytest

from dickson import cli
from dickson.cli import main, parse_report_json, parse_set, report_json, RunConfig
from dickson.ffield import field_of_order
from dickson.subsets import SubsetId
from dickson.verdict import FAIL, Verdict


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["sets", "--q", "29", "--set", "A2++"], "3 7 11 18 22 26"),
        (["sets", "--q", "3", "--set", "A2++"], ""),
        (["eval", "--q", "29", "--family", "D", "--k", "5", "--x", "10"], "17"),
        (["eval", "--q", "7", "--family", "D", "--k", "3", "--x", "2"], "2"),
        (["poly", "--family", "D", "--k", "7"], "1 0 -7 0 14 0 -7 0"),
        (["cycles", "--q", "29", "--k", "5", "--set", "A2--"], "(0)(10 17 13 19 12 16)"),
        (["cycles", "--q", "29", "--k", "7", "--set", "A2--"], "not a permutation; image={0}"),
        (["products", "--q", "29", "--set", "B2++", "--sigma", "2"], "24"),
        (["products", "--q", "7", "--set", "T40--"], "2"),
        (["products", "--q", "3", "--set", "A2++"], "1"),
    ],
)
def test_documented_examples(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.splitlines()[0] == expected


def test_sets_reports_size_and_formula(capsys):
    _, out, _ = run(capsys, "sets", "--q", "16", "--set", "T1")
    lines = out.splitlines()
    assert len(lines[0].split()) == 8
    assert lines[1] == "size 8; formula 8 (agrees)"
    _, out, _ = run(capsys, "sets", "--q", "29", "--set", "A2--")
    assert out.splitlines()[1] == "size 7; formula 7 (agrees)"
    _, out, _ = run(capsys, "sets", "--q", "9", "--set", "MU4")
    assert out.splitlines()[1] == "size 4"


def test_identity_cycles_are_fixed_points(capsys):
    _, out, _ = run(capsys, "cycles", "--q", "29", "--k", "1", "--set", "A2--")
    assert out.strip() == "(0)(10)(12)(13)(16)(17)(19)"


def test_other_families_and_reductions(capsys):
    assert run(capsys, "poly", "--family", "E", "--k", "3")[1].strip() == "1 0 -2 0"
    assert run(capsys, "poly", "--family", "D", "--k", "7", "--q", "7")[1].strip() == "1 0 0 0 0 0 0 0"
    assert run(capsys, "poly", "--family", "T", "--k", "0")[1].strip() == "1"
    # U_2(3) = 4*9 - 1 = 35 = 0 mod 7
    assert run(capsys, "eval", "--q", "7", "--family", "U", "--k", "2", "--x", "3")[1].strip() == "0"
    assert run(capsys, "eval", "--q", "7", "--family", "D", "--k", "3", "--x", "-2")[1].strip() == "5"
    assert run(capsys, "eval", "--q", "29", "--k", str(2**80 + 5), "--x", "10")[1].strip() != ""


def test_products_variants(capsys):
    assert run(capsys, "products", "--q", "29", "--set", "B2--", "--sigma", "4")[1].strip() == "14"
    # Z = {2, 5} in F_7: (3 - 2)(3 - 5) = -2 = 5
    assert run(capsys, "products", "--q", "7", "--set", "Z", "--shift", "3")[1].strip() == "5"
    code, _, err = run(capsys, "products", "--q", "7", "--set", "MU2", "--shift", "3")
    assert code == 2 and "F_q" in err
    assert run(capsys, "products", "--q", "9", "--set", "MU 8")[1].strip() == str(field_of_order(9).neg(1))


def test_identities_command(capsys):
    code, out, _ = run(capsys, "identities", "--k-max", "12")
    assert code == 0
    assert "schur_identities" in out and "fail" not in out
    assert out.splitlines()[-1] == "summary: pass=3"


def test_parse_set_grammar():
    F = field_of_order(29)
    assert parse_set(F, "A2+-") == SubsetId.A(2, 1, -1)
    assert parse_set(F, "B-1--") == SubsetId.B(28, -1, -1)
    assert parse_set(F, "T4,0--") == parse_set(F, "T40--") == SubsetId.TJL(4, 0, -1, -1)
    assert parse_set(F, "DELTA_STAR 7") == parse_set(F, "DELTASTAR7") == SubsetId.delta_star(7)
    assert parse_set(F, "S").tag == "S"
    for bad in ("A2+", "Q", "T4--", "MU"):
        with pytest.raises(cli.UsageError):
            parse_set(F, bad)


@pytest.mark.parametrize(
    "argv",
    [
        ["sets", "--q", "10", "--set", "S"],
        ["sets", "--q", "16", "--set", "S"],
        ["sets", "--q", "7", "--set", "nonsense"],
        ["sets", "--q", "7", "--set", "MU5"],
        ["eval", "--q", "7", "--k", "-1", "--x", "1"],
        ["eval", "--q", "7", "--x", "9", "--k", "1"],
        ["poly", "--family", "D", "--k", "-3"],
        ["cycles", "--q", "7", "--k", "0", "--set", "S"],
        ["products", "--q", "29", "--set", "A2++", "--sigma", "9"],
        ["verify", "--q-min", "9", "--q-max", "3"],
        ["verify", "--checks", "bogus"],
        ["verify", "--workers", "0"],
        ["verify", "--bound", "-1"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err and out == ""


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--q", "7"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["products", "--q", "7", "--set", "S", "--shift", "1", "--sigma", "1"])
    assert exc.value.code == 2


def test_verify_empty_range(capsys):
    code, out, _ = run(capsys, "verify", "--q-min", "10", "--q-max", "10", "--format", "json")
    assert code == 0
    assert json.loads(out)["verdicts"] == []


def test_verify_golden_field_text(capsys):
    code, out, _ = run(capsys, "verify", "--q-min", "29", "--q-max", "29")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[1:-1]]
    assert ["29", "golden_f29", "pass"] == rows[[r[1] for r in rows].index("golden_f29")][:3]
    assert out.splitlines()[-1].startswith("summary: pass=")


def test_json_round_trip(capsys):
    code, out, _ = run(capsys, "verify", "--q-min", "2", "--q-max", "9", "--format", "json", "--seed", "3")
    assert code == 0
    run_echo, verdicts = parse_report_json(out)
    assert run_echo["seed"] == 3 and run_echo["q_min"] == 2
    cfg = RunConfig(**run_echo)
    assert report_json(cfg, verdicts) == out
    assert [(v.q, v.check_name) for v in verdicts] == sorted((v.q, v.check_name) for v in verdicts)
    assert {v.q for v in verdicts} == {2, 3, 4, 5, 7, 8, 9}


def test_json_round_trip_keeps_counterexamples():
    v = Verdict("x", 3, FAIL, 2, {"clause": "c", "k": 4, "vals": [1, 2]}, "n", None)
    cfg = RunConfig()
    text = report_json(cfg, [v])
    assert parse_report_json(text)[1] == [v]
    assert "counterexample" not in json.loads(report_json(cfg, [Verdict("y", 3, "pass", 1)]))["verdicts"][0]


def test_csv_report(capsys):
    code, out, _ = run(
        capsys, "verify", "--q-min", "4", "--q-max", "5", "--format", "csv", "--checks", "characters,sqrtc"
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["q"], r["check"], r["status"]) for r in rows] == [
        ("4", "characters", "pass"),
        ("4", "sqrtc", "pass"),
        ("5", "characters", "pass"),
        ("5", "sqrtc", "skipped"),
    ]
    assert all(r["millis"] == "" and r["counterexample"] == "" for r in rows)


def test_failing_verdict_exits_1(capsys, monkeypatch):
    bad = Verdict("characters", 3, FAIL, 1, {"clause": "forced"})
    monkeypatch.setattr(cli, "verify_all", lambda *a, **k: [bad])
    for fmt in ("text", "json", "csv"):
        code, out, _ = run(capsys, "verify", "--q-min", "3", "--q-max", "3", "--format", fmt)
        assert code == 1
        assert "forced" in out


def test_internal_error_exits_3(capsys, monkeypatch):
    def boom(*a, **k):
        raise RuntimeError("kaput")

    monkeypatch.setattr(cli, "verify_all", boom)
    code, _, err = run(capsys, "verify", "--q-min", "3", "--q-max", "3")
    assert code == 3 and "kaput" in err


def test_output_directory_from_environment(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "reports"))
    code, out, err = run(capsys, "verify", "--q-min", "3", "--q-max", "3", "--format", "json")
    assert code == 0 and out == ""
    path = tmp_path / "reports" / "report.json"
    assert "wrote" in err and str(path) in err
    _, verdicts = parse_report_json(path.read_text())
    assert verdicts and all(v.q == 3 for v in verdicts)
    explicit = tmp_path / "mine.txt"
    run(capsys, "verify", "--q-min", "3", "--q-max", "3", "--output", str(explicit))
    assert explicit.read_text().startswith("     q  check")


def test_unwritable_output_exits_3(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, err = run(capsys, "verify", "--q-min", "3", "--q-max", "3", "--output", str(blocker / "r.json"))
    assert code == 3 and "I/O" in err


def test_timings_flag(capsys):
    _, out, _ = run(
        capsys, "verify", "--q-min", "5", "--q-max", "5", "--checks", "characters", "--format", "json", "--timings"
    )
    assert json.loads(out)["verdicts"][0]["millis"] is not None
