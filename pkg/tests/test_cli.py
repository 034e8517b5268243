import json
from fractions import Fraction

import pytest

from fracorbit.circleset import CircleSet
from fracorbit.cli import main
from fracorbit.cover import RatioParam, build_cover, plan_cover
from fracorbit.rationals import parse_rational
from fracorbit.survivors import preset_es, search


def run(tmp_path, *argv):
    out = tmp_path / "out.txt"
    code = main([*argv, "--out", str(out)])
    return code, out.read_text() if out.exists() else ""


def test_cover_json_round_trips(tmp_path):
    code, text = run(
        tmp_path, "cover", "--p", "3", "--q", "1", "--epsilon", "3/10", "--materialize"
    )
    assert code == 0
    doc = json.loads(text)
    assert doc["k"] == 3
    assert doc["s"] == "27/1"
    assert doc["raw_interval_count"] == 26
    assert parse_rational(doc["measure"]) == Fraction(7, 39)
    expected = build_cover(plan_cover(RatioParam(3, 1), Fraction(3, 10))).explicit_set
    assert CircleSet.from_pairs(doc["intervals"]) == expected


def test_cover_reports_k_without_materializing(tmp_path):
    code, text = run(tmp_path, "cover", "--p", "5", "--q", "2", "--epsilon", "1/2")
    assert code == 0
    doc = json.loads(text)
    assert doc["k"] == 7
    assert doc["raw_interval_count"] == 39062
    assert doc["intervals"] is None and doc["measure"] is None
    assert parse_rational(doc["measure_bound"]) < Fraction(1, 2)


def test_cover_exit_codes(tmp_path):
    assert run(tmp_path, "cover", "--p", "3", "--q", "2", "--epsilon", "1/2")[0] == 2
    assert run(tmp_path, "cover", "--p", "2", "--q", "1", "--epsilon", "3/1")[0] == 2
    assert (
        run(
            tmp_path,
            "cover", "--p", "5", "--q", "2", "--epsilon", "1/2",
            "--budget", "10000", "--materialize",
        )[0]
        == 3
    )


def test_verify_success_and_violation(tmp_path):
    code, text = run(
        tmp_path,
        "verify", "--lambda", "1/1", "--p", "3", "--q", "1",
        "--epsilon", "3/10", "--n-max", "0",
    )
    assert code == 0
    assert json.loads(text)["violation"] is None

    code, text = run(
        tmp_path,
        "verify", "--lambda", "1/2", "--p", "3", "--q", "1",
        "--epsilon", "3/10", "--n-max", "5",
    )
    assert code == 5
    assert json.loads(text)["violation"] == 0


def test_verify_accepts_search_representative(tmp_path):
    spec = preset_es(RatioParam(5, 2), k=2, depth=8)
    (cert,) = search(spec, "0" * 8)
    rep = cert.representative
    code, text = run(
        tmp_path,
        "verify", "--lambda", f"{rep.numerator}/{rep.denominator}",
        "--p", "5", "--q", "2", "--epsilon", "6/5", "--n-max", "16",
    )
    assert code == 0
    assert json.loads(text)["violation"] is None


def test_survivors_bitstring_family(tmp_path):
    code, text = run(
        tmp_path,
        "survivors", "--preset", "es", "--p", "5", "--q", "2", "--epsilon", "6/5",
        "--depth", "10", "--bits", "00,01,10,11", "--max-leaves", "0",
    )
    assert code == 0
    doc = json.loads(text)
    assert doc["preset"] == "es" and not doc["report_only"]
    assert [c["code"] for c in doc["certificates"]] == ["00", "01", "10", "11"]
    for cert in doc["certificates"]:
        lo, hi = (parse_rational(t) for t in cert["lambda_interval"])
        rep = parse_rational(cert["representative"])
        assert lo <= rep <= hi
        assert len(cert["path"]) == 10


def test_survivors_stats_csv(tmp_path):
    code, text = run(
        tmp_path,
        "survivors", "--preset", "es", "--p", "5", "--q", "2", "--k", "2",
        "--depth", "6", "--max-leaves", "0", "--stats-depth", "6", "--format", "csv",
    )
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "depth,count,measure,measure_decimal"
    assert len(lines) == 8
    first = lines[1].split(",")
    assert first[0] == "0" and first[1] == "1"


def test_survivors_explicit_spec_and_empty_exit(tmp_path):
    code, text = run(
        tmp_path,
        "survivors", "--ratio", "3/2", "--target", "0/1,1/2", "--window", "1/1,2/1",
        "--depth", "1", "--max-leaves", "8",
    )
    assert code == 0
    doc = json.loads(text)
    intervals = [c["lambda_interval"] for c in doc["certificates"]]
    assert intervals == [["1/1", "1/1"], ["4/3", "5/3"], ["2/1", "2/1"]]

    code, _ = run(
        tmp_path,
        "survivors", "--ratio", "3/2", "--target", "1/3,1/3", "--window", "1/1,1/1",
        "--depth", "1",
    )
    assert code == 4


def test_survivors_usage_errors(tmp_path):
    # bits longer than depth
    code, _ = run(
        tmp_path,
        "survivors", "--preset", "mahler-z", "--depth", "1", "--bits", "01",
    )
    assert code == 64
    # es preset without k or epsilon
    code, _ = run(tmp_path, "survivors", "--preset", "es", "--p", "5", "--q", "2")
    assert code == 64
    # unknown strategy string
    code, _ = run(tmp_path, "survivors", "--preset", "mahler-z", "--strategy", "middle")
    assert code == 64
    # csv without stats
    code, _ = run(
        tmp_path, "survivors", "--preset", "mahler-z", "--depth", "1", "--format", "csv"
    )
    assert code == 64


def test_survivors_node_budget_exit(tmp_path):
    code, _ = run(
        tmp_path,
        "survivors", "--preset", "es", "--p", "5", "--q", "2", "--k", "2",
        "--depth", "10", "--max-leaves", "0", "--stats-depth", "10", "--budget", "100",
    )
    assert code == 3


def test_q1_list_matches_census(tmp_path):
    code, text = run(tmp_path, "q1", "list", "--n", "13")
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "index,p,q,value_decimal,window"
    assert len(lines) == 14
    assert lines[1] == "1,2,1,2.000000000000,2"
    assert lines[13] == "13,5,1,5.000000000000,5"


def test_q1_window_reports_formula_gap(tmp_path):
    code, text = run(tmp_path, "q1", "window", "--n", "1")
    assert code == 0
    assert "# window=1 count=0 phi_summatory=1 matches=False" in text

    code, text = run(tmp_path, "q1", "window", "--n", "3")
    assert code == 0
    lines = [l for l in text.strip().splitlines() if not l.startswith("#")]
    assert len(lines) == 5  # header + 4 members
    assert "matches=True" in text
    # global indices continue from the earlier windows
    assert lines[1].startswith("3,3,1,")


def test_q1_density(tmp_path):
    code, text = run(tmp_path, "q1", "density", "--n", "10", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    row = doc["rows"][0]
    assert row[0] == 10 and row[1] == 103
    assert parse_rational(row[3]) == Fraction(103, 1000)


def test_waring_csv(tmp_path):
    code, text = run(tmp_path, "waring", "--from", "1", "--to", "10")
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "n,a,b,star,norm,g"
    assert lines[7].split(",") == ["7", "17", "11", "True", "False", "143"]
    assert "# star_failures: 1 2 3" in text
    assert "# norm_failures: 1 2 3 4 7" in text


def test_waring_json_and_usage(tmp_path):
    code, text = run(tmp_path, "waring", "--from", "4", "--to", "100", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["star_failures"] == []
    assert run(tmp_path, "waring", "--from", "5", "--to", "3")[0] == 64


def test_argparse_usage_exit(tmp_path):
    assert main(["q1", "list"]) == 64  # missing --n
    assert main(["nonsense"]) == 64
    assert main(["cover", "--p", "3", "--q", "1", "--epsilon", "0.3"]) == 64


def test_identical_invocations_are_byte_identical(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    argv = [
        "survivors", "--preset", "es", "--p", "5", "--q", "2", "--k", "2",
        "--depth", "8", "--bits", "000,111", "--max-leaves", "0",
        "--stats-depth", "8",
    ]
    assert main([*argv, "--out", str(a)]) == 0
    assert main([*argv, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
