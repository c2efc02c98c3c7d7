import json

import pytest
from click.testing import CliRunner

from ordcalc import config
from ordcalc.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args, env=None):
        res = runner.invoke(main, list(args), env=env)
        config.set_N(1)  # the group callback sets the global depth
        return res
    return go


def test_parse_echo(run):
    r = run("parse", " ps( In ;{}; 0 ) ")
    assert r.exit_code == 0 and r.output == "ps(In;{};0)\n"


def test_parse_error_exit_1(run):
    r = run("parse", "ps(In;{};")
    assert r.exit_code == 1 and "syntax error" in r.output and "position" in r.output


def test_validate(run):
    assert run("validate", "ps(In;{};0)").output == "valid\n"
    r = run("validate", "up(0;[1])")
    assert r.exit_code == 1 and r.output.startswith("invalid: dagger:")


def test_cmp(run):
    assert run("cmp", "ps(Om;{};0)", "Om").output == "LT\n"
    assert run("cmp", "Om", "Om").output == "EQ\n"
    assert run("--N", "2", "cmp", "ps(In;{};0)", "up(Om;[2])").output == "GT\n"


def test_cmp_rejects_invalid(run):
    r = run("cmp", "up(0;[1])", "Om")
    assert r.exit_code == 1 and "invalid" in r.output


def test_collapse_and_back(run):
    rho, S = "ps(up(Om;[1]);{};p(0,0))", "up(Om;[1])"
    r = run("collapse", "In", "--rho", rho, "--S", S)
    assert r.exit_code == 0 and r.output == f"In[{rho}]\n"
    r = run("uncollapse", f"In[{rho}]", "--rho", rho, "--S", S)
    assert r.output == "In\n"
    r = run("collapse", rho, "--rho", rho, "--S", S)
    assert r.exit_code == 1
    r = run("uncollapse", S, "--rho", rho, "--S", S)
    assert r.exit_code == 1 and "no preimage" in r.output


def test_classify(run):
    assert run("classify", "ps(In;{};0)").output == "LStK(1)\n"
    assert run("--N", "2", "classify", "up(Om;[2,1])").output == "SStK(1)\n"


def test_enumerate(run):
    assert run("enumerate", "--max-len", "1").output.split() == ["0", "Om", "In"]
    assert run("enumerate", "--max-len", "7", "--count-only").output == "1412\n"
    r = run("enumerate", "--max-len", "5", "--below", "Om", "--count-only")
    assert r.exit_code == 0 and int(r.output) > 0


def test_env_and_flag_precedence(run):
    assert run("enumerate", "--max-len", "5", "--count-only", env={"ORDCALC_N": "2"}).output == "204\n"
    r = run("--N", "1", "enumerate", "--max-len", "5", "--count-only", env={"ORDCALC_N": "2"})
    assert r.output != "204\n"


def test_budget(run):
    r = run("--budget", "10", "enumerate", "--max-len", "5")
    assert r.exit_code == 1 and "budget" in r.output


def test_measures(run):
    assert run("measure", "ps(up(Om;[1]);{};p(0,0))", "--kind", "g0").output == "p(0,0)\n"
    assert run("measure", "ps(up(Om;[1]);{};Om)", "--kind", "p", "--S", "up(Om;[1])").output == "Om\n"
    assert run("measure", "ps(up(Om;[1]);{};p(0,0))", "--kind", "o").output == "0\n"
    r = run("measure", "ps(up(Om;[1]);{};p(0,0))", "--kind", "g1")
    assert r.output.startswith("g1'=")
    assert run("measure", "ps(Om;{};Om)", "--kind", "K:0").output == "{Om}\n"
    assert run("measure", "Om", "--kind", "p").exit_code == 2
    assert run("measure", "Om", "--kind", "zz").exit_code == 2


def test_usage_errors_exit_2(run):
    assert run("frobnicate").exit_code == 2
    assert run("--N", "9", "parse", "0").exit_code == 2


def test_check_json(run):
    r = run("check", "--suite", "psi-bound", "--max-len", "5", "--json")
    assert r.exit_code == 0
    rep = json.loads(r.output)
    assert rep["suite"] == "psi-bound" and rep["params"] == {"N": 1, "max_len": 5}
    assert rep["checked"] > 0 and rep["failures"] == []


def test_check_reports_failures(run):
    r = run("check", "--suite", "lx", "--json")
    rep = json.loads(r.output)
    assert r.exit_code == 1 and rep["failed"] > 0
    f = rep["failures"][0]
    assert set(f) >= {"inputs", "expected", "got"}
