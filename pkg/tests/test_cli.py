from __future__ import annotations

import json
import subprocess
import sys

import pytest

from vermapde import cli
from vermapde.series import TruncatedSeries
from vermapde.weyl import SingularCertificate


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_singular_sl2(capsys):
    code, out = run(capsys, "singular", "--n", "2", "--weight", "3")
    assert code == 0
    assert "x21^4" in out and ": 2" in out.splitlines()[0]


def test_singular_trivial_only(capsys):
    code, out = run(capsys, "singular", "--n", "2", "--weight", "1/2")
    assert code == 0
    assert out.splitlines()[0].endswith(": 1")


def test_singular_json(capsys):
    code, out = run(capsys, "singular", "--n", "3", "--weight", "1,1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 6
    for c in data["certificates"]:
        cert = SingularCertificate.from_json(c)
        assert cert.polynomial and cert.residual_norm_zero
        # bit-exact round trip of the documented schema
        assert json.dumps(dict(cert.to_json(), duplicates=c["duplicates"]), sort_keys=True) == \
            json.dumps(c, sort_keys=True)


def test_latex(capsys):
    code, out = run(capsys, "singular", "--weight", "1,1", "--format", "latex")
    assert "x_{2,1}^{2}" in out


def test_orbit_single_word(capsys):
    code, out = run(capsys, "orbit", "--weight", "1/2,1/3", "--word", "1,2,1", "--depth", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["certificates"]) == 1
    series = TruncatedSeries.from_json(data["certificates"][0]["series"])
    assert not series.exact and data["certificates"][0]["pde_zero"]


def test_orbit_all(capsys):
    code, out = run(capsys, "orbit", "--weight", "2")
    assert code == 0 and "2 words" in out.splitlines()[0]


@pytest.mark.parametrize("weight,degrees", [("3", 1), ("1/3", 0)])
def test_oracle_sl2(capsys, weight, degrees):
    code, out = run(capsys, "oracle", "--n", "2", "--weight", weight, "--max-degree", "10", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["match"]
    assert len(data["degrees"]) == degrees


def test_oracle_sl3(capsys):
    code, out = run(capsys, "oracle", "--n", "3", "--weight", "1,1", "--max-degree", "8")
    assert code == 0
    assert sum(line.startswith("MATCH") for line in out.splitlines()) == 5


def test_irreducible(capsys):
    assert run(capsys, "irreducible", "--n", "2", "--weight", "1/2")[0] == 0
    code, out = run(capsys, "irreducible", "--n", "2", "--weight", "3")
    assert code == 1 and "(i=1, j=1, value=4)" in out
    code, out = run(capsys, "irreducible", "--n", "3", "--weight", "-1/2,-1/2", "--format", "json")
    assert code == 1 and json.loads(out)["witnesses"] == [[1, 2, "1"]]


def test_verify_reports_seed(capsys):
    code, out = run(capsys, "verify", "--n", "2", "--weight", "0", "--seed", "5")
    assert code == 0 and "seed=5" in out and "all identities hold" in out


def test_verify_deterministic(capsys):
    first = run(capsys, "verify", "--n", "3", "--weight", "2/3,5/7", "--format", "json")
    second = run(capsys, "verify", "--n", "3", "--weight", "2/3,5/7", "--format", "json")
    assert first == second and first[0] == 0


def test_verify_failure_named(capsys, monkeypatch):
    from vermapde import checks

    def broken(rng, n, lam=None, cases=50):
        res = checks.CheckResult("deliberately broken", n, cases=1, first_failure="here")
        return res

    monkeypatch.setattr(checks, "check_sl2_triples", broken)
    code, out = run(capsys, "verify", "--n", "2", "--weight", "1")
    assert code == 1 and "first failing identity: deliberately broken" in out


@pytest.mark.parametrize("argv", [
    ["singular", "--weight", "0.5"],
    ["singular", "--n", "3", "--weight", "1"],
    ["singular"],
    ["singular", "--weight", "1,,2"],
    ["singular", "--weight", "1", "--depth", "0"],
    ["orbit", "--weight", "1,1", "--word", "1,3"],
    ["bogus"],
])
def test_parse_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_budget_exit(capsys, monkeypatch):
    monkeypatch.setattr(cli.oracle, "DEFAULT_MAX_DIMENSION", 1)
    assert cli.main(["oracle", "--weight", "1,1", "--max-degree", "4"]) == 3


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert cli.main(["irreducible", "--weight", "1", "--format", "json", "--output", str(target)]) == 1
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["irreducible"] is False


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "vermapde", "irreducible", "--weight", "1/2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "irreducible" in proc.stdout
