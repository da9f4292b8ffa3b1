import json
import subprocess
import sys

import pytest

from catgw.cli import RunConfig, main, run


def cli(*args):
    return subprocess.run([sys.executable, "-m", "catgw", *args], capture_output=True, text=True)


def test_verify_n2_exit_zero():
    p = cli("verify", "--n", "2", "--format", "json")
    assert p.returncode == 0, p.stdout[-2000:]
    rep = json.loads(p.stdout)
    assert rep["passed"] is True and rep["schema_version"] == 1
    assert {a["status"] for a in rep["acceptance"].values()} == {"pass"}
    assert set(rep["axioms"]) >= {"P1", "P2", "P3", "P4", "WDVV", "dimension"}


def test_potential_four_point():
    p = cli("potential", "--n", "3", "--format", "json")
    assert p.returncode == 0
    rep = json.loads(p.stdout)
    assert rep["correlators"]["four_point_11nn"] == "1"
    assert '"four_point_11nn": "1"' in p.stdout
    assert set(rep) >= {"flat_coords", "potential_derivs", "correlators"}
    assert rep["correlators"]["two_point"]["0,2"] == "1"


def test_invariants_inv11():
    p = cli("invariants", "--n", "5", "--format", "json")
    assert p.returncode == 0
    rep = json.loads(p.stdout)
    assert rep["costello"]["inv_11"]["k=4,l=1"] == "5/24"
    assert rep["costello"]["inv_03"]["0,4,4"] == "1"
    assert rep["hochschild"]["dimension"] == 5


def test_json_is_deterministic():
    a = cli("primitive-form", "--n", "2", "--order", "3", "--format", "json")
    b = cli("primitive-form", "--n", "2", "--order", "3", "--format", "json")
    assert a.returncode == 0 and a.stdout == b.stdout
    rep = json.loads(a.stdout)
    assert rep["solver"]["r"] == "-1/6"
    assert all(r["status"] == "pass" for r in rep["axioms"].values())


def test_no_floats_in_json():
    rep = json.loads(cli("potential", "--n", "4", "--format", "json").stdout)

    def walk(x):
        assert not isinstance(x, float)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    walk(rep)


@pytest.mark.parametrize("args", [
    ["verify", "--n", "0"],
    ["bogus", "--n", "2"],
    ["potential"],
    ["potential", "--n", "x"],
    ["potential", "--n", "2", "--format", "xml"],
    ["potential", "--n", "2", "--order", "4", "--u-cap", "2"],
])
def test_usage_errors_exit_2(args):
    assert cli(*args).returncode == 2


def test_truncation_exit_3():
    p = cli("potential", "--n", "3", "--bar-cap", "10", "--format", "json")
    assert p.returncode == 3
    rep = json.loads(p.stdout)
    assert rep["error"] == "truncation"


def test_text_output(capsys):
    assert main(["potential", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert "four-point <1,1,n-1,n-1> = 1" in out
    assert main(["invariants", "--n", "3"]) == 0
    assert "HH dimension 3" in capsys.readouterr().out


def test_run_config_defaults():
    cfg = RunConfig("potential", 3)
    assert cfg.effective_u_cap == 6 and cfg.effective_bar_cap == 4 * 11 + 3
    status, rep = run(cfg)
    assert status == 0 and rep["bar_cap"] == 47
    with pytest.raises(ValueError):
        RunConfig("potential", 3, format="yaml")
