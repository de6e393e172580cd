import csv
import io
import json
import math

import jsonschema
import pytest

from mukai_entropy.cli import CSV_COLUMNS, JSON_SCHEMA, main

LOG_RHO0 = math.log((7 + 3 * math.sqrt(5)) / 2)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_closed_csv(capsys):
    code, out, _ = run(capsys, "--D", "1", "--matrix", "2,1,1,1", "--mode", "closed", "--t", "0:2:5")
    assert code == 0
    got = rows(out)
    assert tuple(got[0]) == CSV_COLUMNS
    assert [float(r["t"]) for r in got] == [0, 0.5, 1, 1.5, 2]
    assert all(float(r["h_t"]) == pytest.approx(LOG_RHO0, rel=1e-14) for r in got)
    assert {r["slope"] for r in got} == {"0"}
    assert got[0]["rho_exact"] == "(7+3*sqrt(5))/2"


def test_closed_order_four(capsys):
    code, out, _ = run(capsys, "--D", "1", "--matrix", "0,1,-1,0", "--mode", "closed")
    assert code == 0
    for r in rows(out):
        assert float(r["h_t"]) == pytest.approx(-float(r["t"]), abs=1e-15)


def test_non_unimodular_exit(capsys):
    code, out, err = run(capsys, "--D", "1", "--matrix", "2,1,1,0", "--mode", "closed")
    assert code == 2
    assert out == ""
    assert err.startswith("error: NotUnimodular")
    assert err.count("\n") == 1


@pytest.mark.parametrize("argv", [("--matrix", "1,2,3"), ("--t", "0:1"), ("--D", "0"), ("--mode", "nope")])
def test_bad_arguments_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


@pytest.mark.parametrize(
    "argv",
    [
        ("--mode", "closed"),
        ("--mode", "estimate", "--matrix", "2,-1,-1,1"),
        ("--mode", "sequence", "--n-max", "10"),
        ("--mode", "sympow", "--matrix", "-2,-1,-1,-1", "--sym-d", "3"),
        ("--mode", "lemma-d", "--D", "3", "--bound", "8"),
        ("--mode", "factor", "--D", "2", "--v1", "2,1,1", "--v2", "1,1,2"),
    ],
)
def test_json_schema(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, JSON_SCHEMA)


def test_estimate_matches_closed(capsys):
    code, out, _ = run(capsys, "--D", "1", "--matrix", "2,-1,-1,1", "--mode", "estimate", "--t", "0:2:3")
    assert code == 0
    for r in rows(out):
        assert float(r["abs_error"]) < 1e-6
        assert float(r["h_t"]) == pytest.approx(LOG_RHO0 - 2 * float(r["t"]), abs=1e-6)


def test_small_twist_warns(capsys, caplog):
    code, _, _ = run(capsys, "--mode", "estimate", "--matrix", "8,1,-25,-3", "--m", "2")
    assert code == 0
    assert "twist m=2" in caplog.text


def test_negative_entries_parse(capsys):
    code, out, _ = run(capsys, "--mode", "closed", "--matrix", "-2,-1,-1,-1", "--t", "-1:1:3")
    assert code == 0
    assert [float(r["t"]) for r in rows(out)] == [-1, 0, 1]


def test_sequence_is_exact(capsys):
    code, out, _ = run(capsys, "--mode", "sequence", "--matrix", "2,1,-1,0", "--n-max", "20")
    d = [int(r["delta"]) for r in rows(out)]
    assert code == 0
    assert len({d[n + 2] - 2 * d[n + 1] + d[n] for n in range(19)}) == 1


def test_sympow_rows(capsys):
    code, out, _ = run(capsys, "--mode", "sympow", "--matrix", "1,1,0,1", "--sym-d", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert [r["entries"] for r in doc["rows"]] == [[1, 1, 1], [0, 1, 2], [0, 0, 1]]
    assert doc["summary"]["entropy"] is None


def test_factor_row(capsys):
    code, out, _ = run(capsys, "--mode", "factor", "--D", "2", "--v1", "2,1,1", "--v2", "1,1,2")
    assert code == 0
    assert rows(out) == [{"p1": "1", "q1": "1", "p2": "1", "q2": "1", "r1": "2", "r2": "1"}]


def test_factor_rejects(capsys):
    code, _, err = run(capsys, "--mode", "factor", "--D", "2", "--v1", "1,0,0", "--v2", "1,1,2")
    assert code == 2
    assert "NotFactorizable" in err


def test_deterministic(capsys):
    argv = ("--mode", "verify", "--format", "json", "--seed", "3")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


@pytest.mark.parametrize("matrix", ["2,1,1,1", "2,-1,-1,1", "2,1,-1,0", "1,1,-1,0", "0,-1,1,0"])
def test_verify_passes(capsys, monkeypatch, matrix):
    monkeypatch.setenv("MUKAI_ENTROPY_THREADS", "4")
    code, out, _ = run(capsys, "--mode", "verify", "--matrix", matrix)
    assert code == 0, out
    assert {r["passed"] for r in rows(out)} == {"True"}
