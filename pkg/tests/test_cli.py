import json
import subprocess
import sys
from fractions import Fraction


from aperylike import sequences as sq
from aperylike.cli import main, parse_number
from aperylike.numeric import BigFloat


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_seq_csv_first_ten(capsys):
    rc, out, _ = run(capsys, "seq", "jt2", "--n-max", "9", "--format", "csv")
    assert rc == 0
    rows = out.strip().splitlines()
    assert rows[0] == "index,value"
    assert [Fraction(r.split(",")[1]) for r in rows[1:]] == list(sq.jt2_recurrence(9).values)


def test_seq_json_round_trip(capsys):
    rc, out, _ = run(capsys, "seq", "jt3", "--n-max", "12", "--format", "json", "--method", "binomial_sum")
    assert rc == 0
    table = sq.SequenceTable.from_json(out)
    assert table.values == sq.jt3_recurrence(12).values
    assert table.method == "binomial_sum"


def test_seq_apery_text(capsys):
    rc, out, _ = run(capsys, "seq", "apery", "--n-max", "4")
    assert rc == 0
    assert out.split() == ["0", "1/1", "1", "5/1", "2", "73/1", "3", "1445/1", "4", "33001/1"]


def test_zeta_q_degenerate_decimal(capsys):
    rc, out, _ = run(capsys, "zeta", "q", "--k", "3", "--alpha", "1.4142135623730951",
                     "--beta", "1.4142135623730951", "--format", "json")
    assert rc == 0
    d = json.loads(out)
    assert abs(float(d["closed"]["value"]) - 16.828797) < 1e-6


def test_zeta_q_both_methods(capsys):
    rc, out, _ = run(capsys, "zeta", "q", "--k", "2", "--alpha", "3", "--beta", "2", "--method", "both",
                     "--format", "json", "--prec", "160")
    assert rc == 0
    d = json.loads(out)
    assert d["agree"] is True
    v = BigFloat.from_strings(d["closed"]["value"], d["closed"]["error_bound"], 160)
    assert abs(float(v) - 2.13293432652872) < 1e-13


def test_zeta_q_sqrt_syntax(capsys):
    rc, out, _ = run(capsys, "zeta", "q", "--k", "2", "--alpha", "sqrt(2)", "--beta", "sqrt(2)", "--format", "json")
    assert rc == 0
    assert abs(float(json.loads(out)["closed"]["value"]) - 9.869604401089358) < 1e-12


def test_zeta_domain_error_exit_1(capsys):
    rc, _, err = run(capsys, "zeta", "q", "--k", "2", "--alpha", "1", "--beta", "3/2")
    assert rc == 1
    assert "domain" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "seq", "jt2")[0] == 2
    assert run(capsys, "seq", "jt2", "--n-max", "3", "--prec", "20")[0] == 2
    assert run(capsys, "congr", "rv", "--threads", "0")[0] == 2
    assert run(capsys, "zeta", "q", "--k", "2", "--alpha", "x/y", "--beta", "2")[0] == 2


def test_rational_flags_stay_exact():
    assert parse_number("7/5", 128) == Fraction(7, 5)
    assert parse_number("0.1", 128) == Fraction(1, 10)
    assert isinstance(parse_number("sqrt(2)", 128), BigFloat)


def test_hyper_eval(capsys):
    rc, out, _ = run(capsys, "hyper", "eval", "--upper", "1/4,3/4", "--lower", "1", "--z", "-0.2",
                     "--prec", "256", "--format", "json")
    assert rc == 0
    d = json.loads(out)
    assert d["value"].startswith("0.966111624726430821125574893631")


def test_hyper_inhom(tmp_path, capsys):
    rhs = tmp_path / "rhs.json"
    rhs.write_text(json.dumps(["-1/4", "-1/8", "-3/16", "-15/32", "-105/64", "-945/128"]))
    rc, out, _ = run(capsys, "hyper", "inhom", "--upper", "1/2,1/2,1/2", "--lower", "1,1",
                     "--rhs-file", str(rhs), "--order", "5", "--format", "json")
    assert rc == 0
    d = json.loads(out)
    coeffs = [Fraction(c) for c in d["coefficients"]]
    assert coeffs[0] == 0 and coeffs[1] == Fraction(-1, 4)


def test_congr_json_lines(capsys):
    rc, out, _ = run(capsys, "congr", "rv", "--p-max", "11")
    assert rc == 0
    lines = [json.loads(x) for x in out.strip().splitlines()]
    assert [d["p"] for d in lines] == [3, 5, 7, 11]
    assert all(d["holds"] and d["conjectural"] for d in lines)


def test_congr_digit_scan(capsys):
    rc, out, _ = run(capsys, "congr", "prop61", "--p", "23", "--n-max", "600")
    assert rc == 0
    d = json.loads(out)
    assert d["holds"] and 7 in d["residues"]["zeros_without_digit"]


def test_congr_superscan_threads(capsys):
    rc, out, _ = run(capsys, "congr", "superscan", "--p-max", "7", "--m-max", "2", "--r-max", "1", "--threads", "2")
    assert rc == 0
    assert out.strip()


def test_integrate(capsys):
    rc, out, _ = run(capsys, "integrate", "jk", "--k", "2", "--n", "0", "--tol", "1e-9", "--format", "json")
    assert rc == 0
    assert abs(json.loads(out)["value"] - 4.934802200544679) < 1e-9
    rc, out, _ = run(capsys, "integrate", "vertical", "--k", "5", "--format", "json")
    assert rc == 0 and json.loads(out)["holds"]


def test_spectrum(capsys):
    rc, out, _ = run(capsys, "spectrum", "--alpha", "3", "--beta", "2", "--basis-size", "200", "--count", "60",
                     "--s", "2", "--format", "json")
    assert rc == 0
    d = json.loads(out)
    assert abs(d["eigenvalues"][0] - 0.919210883694361) < 1e-12
    assert d["lower"] <= d["upper"]


def test_verify_subset(capsys, tmp_path):
    report = tmp_path / "r.json"
    rc, out, _ = run(capsys, "verify", "--suite", "quick", "--only", "1,3", "--report", str(report))
    assert rc == 0
    assert "[PASS] criterion 1" in out and "[PASS] criterion 3" in out
    d = json.loads(report.read_text())
    assert d["schema"] == "aperylike.verify/1" and d["passed"]


def test_precision_env_var(monkeypatch, capsys):
    monkeypatch.setenv("APERYLIKE_PREC", "300")
    rc, out, _ = run(capsys, "zeta", "riemann", "--k", "2", "--format", "json")
    assert rc == 0
    assert len(json.loads(out)["value"]) > 85


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "aperylike", "seq", "jt2", "--n-max", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "41/64" in r.stdout
