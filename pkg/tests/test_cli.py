import csv
import io
import json
from pathlib import Path

import pytest

from lieprings import cli, verify
from lieprings.homspace import default_precision, one_parameter
from lieprings.padic import make_context

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("kind", ["atable", "jtable"])
@pytest.mark.parametrize("a", [2, 3])
def test_golden_tables_bit_exact(kind, a, tmp_path):
    out = tmp_path / "t.txt"
    assert cli.main([kind, "--p", "7", "--a", str(a), "--i", "0", "--out", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / f"p7_{kind}_theta{a}_i0.txt").read_bytes()


def test_table_formats(capsys):
    code, out, _ = run(["atable", "--p", "7", "--a", "2", "--format", "csv"], capsys)
    assert code == 0 and out.splitlines()[0] == "0,4,4,5,6,2"
    code, out, _ = run(["jtable", "--p", "7", "--a", "3", "--format", "json"], capsys)
    obj = json.loads(out)
    assert obj["rows"][0] == [0, 0, 1, 1, 0, 0] and obj["kind"] == "jtable" and obj["a"] == 3
    code, out, _ = run(["atable", "--p", "11", "--a", "4", "--i", "3", "--span", "4"], capsys)
    rows = [list(map(int, r.split())) for r in out.splitlines()]
    assert len(rows) == 4 and all(len(r) == 4 for r in rows)
    assert all(rows[j][j] == 0 for j in range(4))


def test_survey_csv(capsys):
    code, out, _ = run(["survey", "--p", "7", "--a", "2,3", "--i-range", "2..5", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert out.splitlines()[0] == "p,a,i,rho,v,lambda,y,wj,wk,wl,ms"
    twos = {(int(r["a"]), int(r["i"])) for r in rows if r["y"] == "2"}
    assert twos == {(2, 3), (3, 2), (3, 5)}
    assert len(rows) == 8


def test_survey_p5_and_p13(capsys):
    code, out, _ = run(["survey", "--p", "5", "--a", "2", "--i-range", "0..11", "--format", "json"], capsys)
    assert code == 0 and all(r["y"] == 0 for r in json.loads(out))
    code, out, _ = run(["survey", "--p", "13", "--a", "4", "--i", "2,5,8,11", "--format", "json"], capsys)
    assert [r["y"] for r in json.loads(out)] == [2, 2, 2, 2]


def test_survey_parallel_is_byte_identical(tmp_path):
    outs = []
    for jobs in ("1", "3"):
        path = tmp_path / f"s{jobs}.csv"
        args = ["survey", "--p", "11", "--i-range", "0..5", "--format", "csv", "--no-timing"]
        assert cli.main(args + ["--jobs", jobs, "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_lambda_and_gamma_file(tmp_path, capsys):
    g = one_parameter(make_context(7, default_precision(7, 3)), 2, 3)
    path = tmp_path / "g.json"
    path.write_text(json.dumps(g.to_json()))
    code, out, _ = run(["lambda", "--gamma", str(path), "--format", "json"], capsys)
    row = json.loads(out)[0]
    assert code == 0 and row["lambda"] == 14 and row["y"] == 2 and row["witness"] == [3, 4, 5]


def test_liering_command(capsys):
    code, out, _ = run(["liering", "--p", "5", "--a", "2", "--i", "6"], capsys)
    assert code == 0
    assert "m=21 |L|=p^15" in out and "jacobi ok" in out
    code, out, _ = run(["liering", "--p", "5", "--a", "2", "--i", "6", "--m", "22", "--format", "json"], capsys)
    obj = json.loads(out)
    assert obj["jacobi"]["ok"] is False and len(obj["jacobi"]["witness"]) == 3


def test_exit_precision(capsys):
    code, _, err = run(["lambda", "--p", "7", "--a", "2", "--i", "3", "--precision", "2"], capsys)
    assert code == 2 and "precision" in err


def test_exit_invalid_gamma(tmp_path, capsys):
    ctx = make_context(7, default_precision(7, 0))
    g = one_parameter(ctx, 2, 0, ctx.kappa())  # image P^2, not surjective at i = 0
    path = tmp_path / "g.json"
    path.write_text(json.dumps(g.to_json()))
    code, _, err = run(["atable", "--gamma", str(path)], capsys)
    assert code == 3 and "surjective" in err
    obj = g.to_json()
    obj["coeffs"] = {"2": {"shift": -5, "coeffs": [1, 0, 0, 0, 0, 0]}}
    path.write_text(json.dumps(obj))
    assert run(["lambda", "--gamma", str(path)], capsys)[0] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["survey", "--p", "9"],
        ["survey", "--p", "7", "--i-range", "5..2"],
        ["survey", "--p", "7", "--a", "4"],
        ["atable", "--p", "7", "--a", "x"],
        ["atable", "--p", "7", "--span", "9"],
        ["verify", "nosuch"],
        ["frobnicate"],
        ["survey", "--p", "7", "--format", "xml"],
    ],
)
def test_exit_parse(argv, capsys):
    assert run(argv, capsys)[0] == 4


def test_exit_parse_on_bad_file(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text("[1, 2")
    assert run(["lambda", "--gamma", str(path)], capsys)[0] == 4
    assert run(["lambda", "--gamma", str(tmp_path / "missing.json")], capsys)[0] == 4


def test_verify_passes(capsys):
    code, out, _ = run(["verify", "fgidentities"], capsys)
    assert code == 0 and "1/1 passed" in out
    code, out, _ = run(["verify", "crosscheck", "6", "7"], capsys)
    assert code == 0 and "6/6 passed (seed 7)" in out


def test_verify_is_deterministic_across_jobs():
    a = verify.run_suite("bounds", 6, 42, jobs=1)
    b = verify.run_suite("bounds", 6, 42, jobs=2)
    assert a.summary() == b.summary() and a.failures == b.failures


def test_verify_failure_prints_reproducer(monkeypatch, capsys):
    def broken(rng):
        g = verify.sample_gamma(rng, primes=(5,))
        return [verify.reproducer(g, part="forced")]

    monkeypatch.setitem(verify.SUITES, "lem56", broken)
    code, out, _ = run(["verify", "lem56", "--trials", "2", "--seed", "1"], capsys)
    assert code == 5
    rep = json.loads(out.split("reproducer: ", 1)[1])
    assert rep["p"] == 5 and rep["trial"] == 0 and "coeffs" in rep and rep["part"] == "forced"
