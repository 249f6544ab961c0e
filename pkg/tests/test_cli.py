import numpy as np
import pytest

from fgsense.cli import main
from fgsense.incidence import read_bmm


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_field(capsys):
    rc, out, _ = run(capsys, "field", "--p", "2", "--m", "4")
    assert rc == 0 and "q=16" in out and "modulus=1 0 0 1 1" in out


def test_count(capsys):
    rc, out, _ = run(capsys, "count", "--geom", "eg", "--r", "3", "--q", "8", "--mu1", "1", "--mu2", "2")
    assert rc == 0
    vals = dict(line.split("=") for line in out.splitlines())
    assert vals["N(r,mu2)"] == "584" and vals["N(mu2,mu1)"] == "72" and vals["A(mu2,mu1)"] == "9"


def test_build_and_analyze(capsys, tmp_path):
    path = tmp_path / "pg.bmm"
    rc, _, _ = run(capsys, "build", "--geom", "pg", "--r", "2", "--q", "2", "--mu1", "0", "--mu2", "1",
                   "--type", "2", "-o", str(path))
    assert rc == 0 and read_bmm(path).shape == (7, 7)
    rc, out, _ = run(capsys, "analyze", str(path), "--exact-spark-limit", "7", "--stopping-limit", "7")
    assert rc == 0
    vals = dict(line.split("=", 1) for line in out.splitlines())
    assert vals["girth"] == "6" and vals["spark"] == "infinite" and vals["regular"] == "yes"


def test_build_with_deletion(capsys, tmp_path):
    path = tmp_path / "d.bmm"
    rc, _, _ = run(capsys, "build", "--geom", "eg", "--r", "2", "--q", "8", "--mu1", "0", "--mu2", "1",
                   "--bundles", "3", "--delete-lines", "2", "-o", str(path))
    assert rc == 0 and read_bmm(path).shape == (24, 48)


def test_simulate_writes_csv(capsys, tmp_path):
    out = tmp_path / "c.csv"
    rc, _, _ = run(capsys, "simulate", "--gaussian", "20x40", "--kmin", "1", "--kmax", "3", "--trials", "10",
                   "-o", str(out))
    assert rc == 0
    assert out.read_text().splitlines()[0] == "k,trials,successes,percent"


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "analyze", str(tmp_path / "missing.bmm"))[0] == 3
    bad = tmp_path / "bad.bmm"
    bad.write_text("BMM 2 2\n10\n")
    assert run(capsys, "analyze", str(bad))[0] == 3
    assert run(capsys, "verify", "nonsense")[0] == 2
    assert run(capsys, "count", "--geom", "eg", "--r", "2", "--q", "6", "--mu1", "0", "--mu2", "1")[0] == 2
    assert run(capsys, "simulate", "--kmin", "1")[0] == 2
    assert run(capsys, "build", "--geom", "pg", "--r", "2", "--q", "2", "--mu1", "0", "--mu2", "1",
               "--bundles", "2", "-o", str(tmp_path / "x"))[0] == 2


def test_verify_fields(capsys):
    rc, out, _ = run(capsys, "verify", "fields")
    assert rc == 0 and out.strip().endswith("OK: 0 failing check(s)")
