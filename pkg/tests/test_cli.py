import json
import math
import subprocess
import sys

import pytest

from assocsqueeze import cli
from assocsqueeze.cli import SpecParseError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    head = [c.strip() for c in lines[0].split(",")]
    return [dict(zip(head, (c.strip() for c in ln.split(",")))) for ln in lines[1:]]


def test_help_lists_every_command(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--help"])
    out = capsys.readouterr().out
    for cmd in ("tau-surface", "polytable", "wigner", "stats", "distance", "meanphotons",
                "variances", "entropy", "state", "verify"):
        assert cmd in out
    for topic in ("squeezing parameter tau", "polynomial tables", "Wigner", "photon-number distributions",
                  "trace distance", "mean photon", "distorted quadratures", "linear entropy"):
        assert topic in out


def test_tau_surface(capsys):
    code, out, _ = run(capsys, "tau-surface", "--r-steps", "2", "--theta-steps", "4")
    assert code == 0
    r = rows(out)
    assert len(r) == 8
    for row in r:
        if float(row["r"]) == 0 or float(row["theta"]) == pytest.approx(math.pi / 2):
            assert float(row["tau"]) == pytest.approx(1)
    hit = [row for row in r if float(row["r"]) == 0.5 and float(row["theta"]) == 0]
    assert float(hit[0]["tau"]) == pytest.approx(1 / 3)
    assert run(capsys, "tau-surface", "--r-steps", "1")[0] == 1


def test_polytable(capsys):
    code, out, _ = run(capsys, "polytable", "--family", "plus", "--nmax", "4", "--alpha", "1", "--xi", "1")
    assert code == 0
    assert float(rows(out)[-1]["re_p"]) == pytest.approx(-2)
    code, out, _ = run(capsys, "polytable", "--family", "minus", "--nmax", "4", "--alpha", "2", "--xi", "1")
    r = rows(out)
    assert float(r[-1]["re_p"]) == pytest.approx(-2)
    assert float(r[-1]["re_closed"]) == pytest.approx(-2)
    code, out, _ = run(capsys, "polytable", "--family", "minus", "--nmax", "0", "--alpha", "1.3,0.2", "--xi", "0.4")
    assert float(rows(out)[0]["re_p"]) == 0 and float(rows(out)[0]["im_p"]) == 0


def test_polytable_pole_falls_back(capsys):
    # alpha/sqrt(2 xi) = 1/sqrt 2 is a zero of H_2; the closed column uses the hypergeometric route
    code, out, _ = run(capsys, "polytable", "--family", "minus", "--nmax", "5", "--alpha", "1", "--xi", "1")
    assert code == 0
    r = rows(out)
    assert r[4]["closed_route"] == "hypergeometric"
    for row in r:
        assert float(row["re_closed"]) == pytest.approx(float(row["re_p"]), abs=1e-9)


def test_distance(capsys):
    code, out, _ = run(capsys, "distance", "--xi", "0.6", "--sweep", "0:6:4")
    r = rows(out)
    assert code == 0 and float(r[0]["distance"]) == 1.0
    assert float(r[2]["alpha"]) == 4 and float(r[2]["distance"]) < 0.05


def test_meanphotons(capsys):
    code, out, _ = run(capsys, "meanphotons", "--grid", "0:1:2,0.6:0.6:1")
    r = rows(out)
    assert code == 0
    assert float(r[0]["n_plus_closed"]) == pytest.approx(0.5625)
    assert float(r[0]["n_minus"]) == pytest.approx(float(r[0]["n_minus_boundary"]), abs=1e-8)


def test_entropy_glauber_zero(capsys):
    code, out, _ = run(capsys, "entropy", "--state", "glauber", "--xi-list", "0", "--sweep", "0:3:4")
    assert code == 0
    for row in rows(out):
        assert abs(float(row["linear_entropy"])) < 1e-10


def test_entropy_assoc(capsys):
    code, out, _ = run(capsys, "entropy", "--xi-list", "0,0.6", "--sweep", "0:2:3")
    r = rows(out)
    assert code == 0 and len(r) == 6
    assert float(r[0]["linear_entropy"]) == pytest.approx(0.5, abs=1e-10)


def test_stats_and_state(capsys):
    code, out, _ = run(capsys, "stats", "--state", "assoc", "--xi", "0.3", "--alpha", "1", "--nmax", "5")
    r = rows(out)
    assert code == 0 and float(r[0]["p_n"]) == 0
    code, out, _ = run(capsys, "state", "--state", "oddsq", "--xi", "0.3")
    r = rows(out)
    assert code == 0 and float(r[0]["re_amp"]) == 0 and float(r[2]["re_amp"]) == 0


def test_variances(capsys):
    code, out, _ = run(capsys, "variances", "--sweep", "0:2:3", "--xi", "0.4")
    assert code == 0
    for row in rows(out):
        assert abs(float(row["schrodinger_gap2"])) < 1e-7


def test_wigner(capsys):
    code, out, _ = run(capsys, "wigner", "--state", "fock:1", "--grid=-1:1:3,0:0:1")
    r = rows(out)
    assert code == 0 and len(r) == 3
    assert float(r[1]["w"]) == pytest.approx(-1)
    assert "# convention: W_vacuum(0) = 1" in out


def test_json_format(capsys):
    code, out, _ = run(capsys, "distance", "--xi", "0.6", "--sweep", "0:2:2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["columns"] == ["alpha", "distance"]
    assert doc["rows"][0] == [0.0, 1.0]
    assert doc["meta"]["library"].startswith("assocsqueeze")


def test_out_file(tmp_path, capsys):
    target = tmp_path / "tau.csv"
    code, out, _ = run(capsys, "tau-surface", "--r-steps", "2", "--theta-steps", "2", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[0].startswith("# ")


def test_parse_errors_name_column():
    with pytest.raises(SpecParseError) as exc:
        cli.parse_complex("1,x")
    assert exc.value.column == 3
    with pytest.raises(SpecParseError) as exc:
        cli.parse_sweep("0:6:q")
    assert exc.value.column == 5
    with pytest.raises(SpecParseError) as exc:
        cli.build_state("fock:z", 0, 0, None)
    assert exc.value.column == 6
    assert cli.parse_complex("0.5,-2") == complex(0.5, -2)
    assert cli.parse_complex(" 3") == 3


def test_exit_codes(capsys, tmp_path):
    code, _, err = run(capsys, "stats", "--alpha", "1,x")
    assert code == 1 and "column 3" in err
    code, _, err = run(capsys, "distance", "--xi", "1.2", "--sweep", "0:1:2")
    assert code == 1 and "xi" in err
    code, _, err = run(capsys, "state", "--state", "oddsq", "--xi", "0.3", "--ncut", "5")
    assert code == 2 and "budget" in err
    code, _, _ = run(capsys, "tau-surface", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 3


def test_verify_default_passes(capsys):
    code, out, err = run(capsys, "verify")
    assert code == 0 and err == ""
    r = rows(out)
    assert all(row["status"] == "pass" for row in r)
    names = {row["invariant"] for row in r}
    assert any("eigen_residual" in n and "a + xi a^+" in n for n in names)
    assert any("eigen_residual" in n and "a2 + xi a2^+" in n for n in names)
    assert {row["module"] for row in r} >= {"specfun", "recurrence", "polyfam", "fock", "squeezed",
                                             "wigner", "nonclassical"}


def test_verify_zero_profile_fails(capsys):
    code, out, err = run(capsys, "verify", "--tolerance-profile", "zero")
    assert code != 0
    assert "invariant failed" in err
    code, out, _ = run(capsys, "verify", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and all(e["passed"] for e in doc["entries"])


def test_repeated_runs_byte_identical():
    cmds = [["tau-surface", "--r-steps", "3", "--theta-steps", "3"],
            ["wigner", "--state", "assoc", "--alpha", "1", "--xi", "0.3", "--grid=-1:1:4,-1:1:4"],
            ["verify"]]
    for c in cmds:
        a = subprocess.run([sys.executable, "-m", "assocsqueeze", *c], capture_output=True, check=True).stdout
        b = subprocess.run([sys.executable, "-m", "assocsqueeze", *c], capture_output=True, check=True).stdout
        assert a == b and len(a) > 0
