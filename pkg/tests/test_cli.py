import csv
import io
import json
import math
import subprocess
import sys

import pytest

from smallgaps import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def csv_rows(text):
    lines = text.splitlines()
    assert lines[0].startswith("# config: ")
    json.loads(lines[0][len("# config: "):])
    return list(csv.reader(io.StringIO("\n".join(lines[1:]))))


def test_gap_constants(capsys):
    code, out = run(["gap-constants", "--d-max", "5"], capsys)
    rows = csv_rows(out)
    assert code == 0
    assert rows[0] == ["d", "mu_d", "residual_mu", "lambda_d", "residual_lambda", "mu_asymptotic"]
    assert len(rows) == 6
    assert float(rows[1][3]) > 1.94
    assert all(float(r[2]) <= 1e-10 and float(r[4]) <= 1e-10 for r in rows[1:])
    # 12 significant digits
    assert len(rows[1][1].replace("0.", "", 1)) <= 12


def test_gap_constants_bad_tol(capsys):
    assert cli.main(["gap-constants", "--tol", "-1"]) == 2
    assert cli.main(["gap-constants", "--tol", "1e-20"]) == 2


def test_verify_identities(capsys):
    code, out = run(["verify-identities", "--q-max", "10", "--c-max", "1"], capsys)
    doc = json.loads(out)
    assert code == 0
    expect = sum(sum(1 for m in range(1, 11) if math.gcd(m, q) == 1) ** 2 for q in range(1, 11))
    assert doc["lemma1"] == {"cases": expect, "failures": 0}
    assert doc["lemma2"] == {"cases": 1, "failures": 0}
    assert doc["config"]["q_max"] == 10


def test_verify_identities_exit_status(capsys, monkeypatch):
    monkeypatch.setattr(cli, "lemma2_sweep", lambda c: (5, 1))
    code, _ = run(["verify-identities", "--q-max", "5", "--c-max", "5"], capsys)
    assert code == 1


def test_als(capsys):
    code, out = run(["als", "--Q", "100", "--X", "30", "--m-max", "10"], capsys)
    rows = csv_rows(out)
    assert rows[0] == ["parameters", "exact", "main_term", "abs_error", "rel_error"]
    assert len(rows) == 12
    assert rows[1][0] == "kind=delta_diagonal;m=1;Q=100"
    assert rows[-1][0].startswith("kind=moebius_corollary")


def test_sums(capsys):
    code, out = run(["sums", "--X", "20000", "--alpha", "0", "1", "--beta", "0", "1", "--scaled"], capsys)
    rows = csv_rows(out)
    assert [r[0] for r in rows[1:]] == ["A", "B", "B", "B", "B"]
    head = rows[0]
    b00 = dict(zip(head, rows[2]))
    L = math.log(20000)
    assert float(b00["main_term"]) == pytest.approx(-float(b00["slope"]) * 0.5 * L**2, rel=1e-10)


def test_sums_json_format(capsys):
    code, out = run(["sums", "--X", "5000", "--alpha", "0", "--beta", "0", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["config"]["command"] == "sums"
    assert [r["kind"] for r in doc["rows"]] == ["A", "B"]


def test_zeros(capsys):
    code, out = run(["zeros", "--q", "1", "--t-max", "30"], capsys)
    doc = json.loads(out)
    zs = [z["gamma"] for z in doc["ledgers"][0]["zeros"]]
    assert len(zs) == 3
    assert zs[0] == pytest.approx(14.1347, abs=1e-3)


def test_zeros_rejects_imprimitive(capsys):
    assert cli.main(["zeros", "--q", "6", "--chi", "0"]) == 2


def test_gaps(capsys, tmp_path):
    out = tmp_path / "gaps.csv"
    assert cli.main(["gaps", "--q-max", "12", "--t-max", "20", "--out", str(out)]) == 0
    rows = csv_rows(out.read_text())
    assert rows[0] == ["q", "chi_index", "gamma_low", "gamma_high", "raw_gap", "normalized_gap", "global_min"]
    flagged = [r for r in rows[1:] if r[-1] == "true"]
    assert len(flagged) == 1
    assert float(flagged[0][5]) == min(float(r[5]) for r in rows[1:])


def test_compare_m(capsys):
    code, out = run(["compare-m", "--Q", "15", "--X", "10", "--mu", "0.4"], capsys)
    doc = json.loads(out)
    assert isinstance(doc["verdict"], bool)
    assert doc["alpha"] == pytest.approx(math.pi * 0.4 / math.log(15))
    for k in ("M_exact", "M_main", "M_alpha_exact", "alpha", "verdict", "config"):
        assert k in doc


def test_compare_m_needs_alpha(capsys):
    assert cli.main(["compare-m", "--Q", "10", "--X", "5"]) == 2


def test_progress_goes_to_stderr(capsys):
    cli.main(["verify-identities", "--q-max", "5", "--c-max", "5"])
    cap = capsys.readouterr()
    assert "orthogonality" in cap.err and "orthogonality" not in cap.out


def test_byte_identical_runs(tmp_path):
    for argv in (["gap-constants", "--d-max", "20"], ["zeros", "--q", "5", "--t-max", "15"]):
        outs = []
        for i, threads in enumerate(("1", "0")):
            path = tmp_path / f"run{i}"
            subprocess.run([sys.executable, "-m", "smallgaps", *argv, "--threads", threads, "--out", str(path)], check=True)
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]
