import json
from importlib import resources

import pytest

from xihom.cli import EXIT_INVALID, EXIT_OK, EXIT_VERDICT, main, parse_range


def cat(name):
    return str(resources.files("xihom") / "catalog" / f"{name}.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_parse_range():
    assert parse_range("2..4") == [2, 3, 4]
    assert parse_range("-2..1") == [-2, -1, 0, 1]
    assert parse_range("5") == [5]


def test_basis(capsys):
    code, rep, _ = run(capsys, "basis", cat("a2"))
    assert code == EXIT_OK
    assert rep["schema_version"] == 1 and rep["status"] == "ok"
    assert rep["result"]["dim"] == 3
    assert rep["result"]["self_injective"] is False
    assert rep["result"]["modules"]["P1"] == [1, 1]
    assert "wall_clock_seconds" not in rep


def test_resolve(capsys):
    code, rep, _ = run(capsys, "resolve", cat("f3_x3"), "k", "--length", "3")
    assert code == EXIT_OK
    steps = rep["result"]["steps"]
    assert [s["term_dimvec"] for s in steps] == [[3]] * 3
    assert [s["syzygy_dimvec"] for s in steps] == [[2], [1], [2]]


def test_pd_and_gpd(capsys):
    code, rep, _ = run(capsys, "pd", cat("dual_numbers"), "k", "--window", "6")
    assert code == EXIT_OK and rep["result"]["pd"] == "ExceedsWindow"
    code, rep, _ = run(capsys, "gpd", cat("a2"), "S1")
    assert code == EXIT_OK
    assert rep["result"]["gpd"] == {"value": 1, "regime": "CertifiedFinitePd"}
    assert rep["result"]["gprojective"]["member"] is False


def test_ext_all_routes(capsys):
    code, rep, _ = run(capsys, "ext", cat("a2"), "S1", "S2", "--deg", "1")
    assert code == EXIT_OK
    (row,) = rep["result"]["groups"]
    assert row == {"degree": 1, "projective": 1, "two_resolutions": 1, "injective": 1, "agree": True}


def test_ext_range(capsys):
    code, rep, _ = run(capsys, "ext", cat("dual_numbers"), "k", "k", "--range", "0..3")
    assert code == EXIT_OK
    assert [g["projective"] for g in rep["result"]["groups"]] == [1, 1, 1, 1]
    assert rep["result"]["routes_agree"]


def test_ext_negative_degree_is_invalid(capsys):
    code, rep, err = run(capsys, "ext", cat("a2"), "S1", "S2", "--deg", "-1")
    assert code == EXIT_INVALID and rep["status"] == "invalid"
    assert "xihom:" in err


def test_complete_ext(capsys):
    code, rep, _ = run(capsys, "complete-ext", cat("dual_numbers"), "k", "k", "--range=-2..2",
                       "--window", "6")
    assert code == EXIT_OK
    res = rep["result"]
    assert res["regime"] == "CertifiedSelfInjective" and res["oracles_agree"]
    for row in res["groups"]:
        assert row["complete"] == row["stable_oracle"] == 1


def test_complete_ext_relative(capsys):
    code, rep, _ = run(capsys, "complete-ext", cat("f3_x3_rel_k"), "M2", "M2", "--deg", "0")
    assert code == EXIT_OK
    assert rep["proper_class"] == "relative(k)"
    assert rep["result"]["groups"][0]["complete"] == 1


def test_no_gorenstein_projective_is_a_verdict_failure(capsys):
    code, rep, _ = run(capsys, "complete-ext", cat("a3"), "S1", "S2", "--window", "0")
    assert code == EXIT_VERDICT
    assert rep["status"] == "verdict_failure"
    assert rep["result"]["error"] == "NoGpWithinWindow"


def test_audit(capsys):
    code, rep, _ = run(capsys, "audit", cat("dual_numbers_rel_k"), "--trials", "20", "--seed", "3")
    assert code == EXIT_OK
    assert rep["seed"] == 3 and rep["flags"]["trials"] == 20


def test_verify_single_file(capsys):
    code, rep, err = run(capsys, "verify", cat("a2"), "--window", "6")
    assert code == EXIT_OK and rep["result"]["passed"]
    assert "[PASS]" in err


def test_verify_needs_a_target(capsys):
    code, rep, _ = run(capsys, "verify")
    assert code == EXIT_INVALID


def test_missing_file_is_invalid(capsys, tmp_path):
    code, rep, _ = run(capsys, "basis", str(tmp_path / "none.json"))
    assert code == EXIT_INVALID


def test_unknown_module_is_invalid(capsys):
    code, rep, _ = run(capsys, "pd", cat("a2"), "S7")
    assert code == EXIT_INVALID
    assert "S7" in rep["error"]


def test_malformed_instance_is_invalid(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    doc = json.loads(open(cat("a2")).read())
    doc["extra"] = 1
    bad.write_text(json.dumps(doc))
    code, rep, _ = run(capsys, "basis", str(bad))
    assert code == EXIT_INVALID and rep["error"].startswith("$:")


def test_table_format_goes_to_stderr(capsys):
    code = main(["ext", cat("a2"), "S1", "S2", "--format", "table"])
    out, err = capsys.readouterr()
    assert code == EXIT_OK and out == ""
    assert "projective" in err and "status: ok" in err


def test_both_formats(capsys):
    code = main(["basis", cat("a2"), "--format", "both"])
    out, err = capsys.readouterr()
    assert code == EXIT_OK and json.loads(out)["status"] == "ok" and "status: ok" in err


def test_timing_flag(capsys):
    code, rep, _ = run(capsys, "basis", cat("a2"), "--timing")
    assert code == EXIT_OK and rep["wall_clock_seconds"] >= 0


def test_reports_are_deterministic(capsys):
    argv = ["complete-ext", cat("f3_x3"), "k", "M2", "--range=-3..3"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_bad_range_exits_with_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["ext", cat("a2"), "S1", "S2", "--range", "3..1"])
    assert info.value.code == 2
