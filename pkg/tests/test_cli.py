import csv
import io
import json
import math

import pytest

from bshq.cli import bcoeff_rows, dumps, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_spectrum_json(capsys):
    code, out = run(capsys, "spectrum", "--nmax", "1")
    rows = json.loads(out)["rows"]
    assert code == 0 and len(rows) == 3
    r = next(r for r in rows if (r["m"], r["n"]) == (1, 0))
    assert (r["E"], r["L"]) == (1, 1)
    code, out = run(capsys, "spectrum", "--nmax", "0")
    assert json.loads(out)["rows"] == [{"A1": 0, "A2": 0, "E": 0, "L": 0, "m": 0, "n": 0}]


def test_spectrum_csv(capsys):
    code, out = run(capsys, "spectrum", "--nmax", "2", "--format", "csv", "--hbar", "0.5")
    lines = out.strip().split("\n")
    assert lines[0] == "m,n,A1,A2,E,L" and len(lines) == 7
    rows = list(csv.DictReader(io.StringIO(out)))
    assert all(float(r["E"]) == 0.5 * (int(r["m"]) + int(r["n"])) for r in rows)


def test_usage_errors(capsys):
    assert main(["spectrum", "--nmax", "-1"]) == 2
    assert main(["verify", "nonsense"]) == 2
    assert main(["verify", "su2", "--tol", "0"]) == 2
    assert main(["verify", "su2", "--hbar", "-1"]) == 2
    assert main(["verify", "su2", "--format", "csv", "--trials", "2"]) == 2
    assert main([]) == 2
    capsys.readouterr()


def test_verify_reduced_report(capsys):
    code, out = run(capsys, "verify", "reduced", "--q", "5")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"config", "checks", "summary"}
    assert any(c["name"] == "red q=5: [Q+,Q-] = -4 hbar Q3" for c in doc["checks"])
    assert doc["summary"] == {"passed": len(doc["checks"]), "failed": 0}
    assert all(set(c) == {"name", "residual", "tolerance", "pass"} for c in doc["checks"])


def test_verify_forced_failure(capsys):
    code, out = run(capsys, "verify", "oscillator", "--tol", "1e-20")
    assert code == 1 and json.loads(out)["summary"]["failed"] > 0


def test_verify_text(capsys):
    code, out = run(capsys, "verify", "su2", "--trials", "20", "--format", "text")
    assert code == 0 and out.strip().endswith("0 failed")


def test_verify_is_deterministic(capsys):
    a = run(capsys, "verify", "classical", "--trials", "50", "--seed", "7")[1]
    b = run(capsys, "verify", "classical", "--trials", "50", "--seed", "7")[1]
    assert a == b
    assert '"seed": 7' in a


def test_bcoeff(capsys):
    rows = bcoeff_rows(2)
    r0 = next(r for r in rows if r["p"] == 0)
    assert (r0["chain"], r0["b_sq"], r0["b"]) == ("even_rel_q", 8, math.sqrt(8))
    r3 = next(r for r in bcoeff_rows(3, hbar=2.0) if r["p"] == 0)
    assert (r3["chain"], r3["b_sq"], r3["b"]) == ("odd_rel_q", 8, 2 * math.sqrt(8))
    rows0 = bcoeff_rows(0)
    assert [r["p"] for r in rows0 if not r["boundary"]] == [0]
    assert all(r["b_sq"] == 0 for r in rows0)
    code, out = run(capsys, "bcoeff", "--q", "4", "--format", "csv")
    lines = out.strip().split("\n")
    assert lines[0] == "p,chain,b_sq,b,boundary" and len(lines) == 1 + 9 + 2


def test_multiplicity(capsys):
    code, out = run(capsys, "multiplicity", "--nmax", "3")
    rows = json.loads(out)["rows"]
    assert code == 0 and len(rows) == 4
    assert [r["dim_Hq1"] for r in rows] == [0, 1, 2, 3]
    assert {"q", "dim_Hq", "dim_Hq0", "dim_Hq1", "commutant_Hq", "commutant_Hqtilde"} <= set(rows[0])
    code, out = run(capsys, "multiplicity", "--nmax", "0")
    rows = json.loads(out)["rows"]
    assert len(rows) == 1 and rows[0]["surplus"] is False


def test_output_file(tmp_path, capsys):
    target = tmp_path / "spectrum.csv"
    assert main(["spectrum", "--nmax", "1", "--format", "csv", "-o", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert target.read_text().startswith("m,n,A1")


def test_dumps_format():
    assert dumps({"b": 0.1, "a": [1, True, None]}) == '{"a": [1, true, null], "b": 0.10000000000000001}'
    assert dumps(math.inf) == '"inf"'
    with pytest.raises(TypeError):
        dumps(object())
