import json

import pytest

from enkoszul.cli import EXIT_MATH, EXIT_OK, EXIT_USAGE, main


def test_solve_writes_certificate(tmp_path, capsys):
    out = tmp_path / "w.json"
    assert main(["solve", "--m", "2", "--R", "4", "--out", str(out)]) == EXIT_OK
    data = json.loads(out.read_text())
    assert data["m"] == 2 and data["R"] == 4 and data["ring"] == "Z"
    text = capsys.readouterr().out
    assert "chain degree 5 (expected 5)" in text and "residual 0" in text


def test_solve_m1_to_stdout(capsys):
    assert main(["solve", "--m", "1", "--R", "6", "--p", "2"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert [o["r"] for o in data["omega"]["orders"]] == [2]
    assert data["ring"] == "F2"


def test_report_round_trip(tmp_path, capsys):
    cert = tmp_path / "w.json"
    main(["solve", "--m", "1", "--R", "4", "--out", str(cert)])
    out = tmp_path / "r.csv"
    code = main(["report", "--n", "2", "--m", "1", "--R", "4", "--cert", str(cert),
                 "--window", "0:3", "--format", "csv", "--out", str(out)])
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "q,total_degree,rank,torsion,stable"
    assert lines[2] == "1,-1,1,,true"


def test_report_untwisted(capsys):
    assert main(["report", "--n", "2", "--m", "2", "--R", "3", "--untwisted", "--ring", "F2"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["untwisted"] is True and data["seed"] is None


@pytest.mark.parametrize("argv", [
    ["solve", "--m", "0", "--R", "4"],
    ["solve", "--m", "2", "--R", "1"],
    ["report", "--n", "1", "--m", "2", "--R", "4"],
    ["report", "--n", "2", "--m", "1", "--R", "4", "--window", "3:1"],
    ["report", "--n", "2", "--m", "1", "--R", "4", "--window", "x"],
    ["report", "--n", "2", "--m", "2", "--R", "6", "--untwisted"],
    ["solve", "--m", "2", "--R", "4", "--ring", "F4"],
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_m0_message(capsys):
    main(["solve", "--m", "0", "--R", "4"])
    assert "m = 0 is not supported" in capsys.readouterr().err


def test_certificate_mismatch(tmp_path, capsys):
    cert = tmp_path / "w.json"
    main(["solve", "--m", "2", "--R", "3", "--out", str(cert)])
    assert main(["report", "--n", "2", "--m", "2", "--R", "4", "--cert", str(cert)]) == EXIT_USAGE
    assert main(["report", "--n", "2", "--m", "2", "--R", "3", "--ring", "F2", "--cert", str(cert)]) == EXIT_USAGE


def test_verify(capsys):
    assert main(["verify", "--quick"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.count("PASS") == 7
    assert main(["verify", "--quick", "--inject-sign-bug"]) == EXIT_MATH
    assert "witness" in capsys.readouterr().out


def test_inspect_basis(capsys):
    assert main(["inspect-basis", "--n", "2", "--r", "3", "--k", "2"]) == EXIT_OK
    assert "6 orbit representatives, 36 simplices" in capsys.readouterr().out
    assert main(["inspect-basis", "--n", "2", "--r", "2", "--k", "1", "--list"]) == EXIT_OK
    assert capsys.readouterr().out.split("\n")[:2] == ["1,2 2,1", "2,1 1,2"]
    assert main(["inspect-basis", "--n", "inf", "--r", "3"]) == EXIT_USAGE


def test_cache_flag(tmp_path, capsys):
    assert main(["--cache", str(tmp_path), "inspect-basis", "--n", "2", "--r", "3"]) == EXIT_OK
    assert (tmp_path / "E2" / "r3" / "manifest").exists()
    assert "k=3  2 representatives" in capsys.readouterr().out
