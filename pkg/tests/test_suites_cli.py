"""Suite reports and the command line interface."""
import json

import pytest
from click.testing import CliRunner

from glab.exactla import InputError
from glab.suites import (
    DEFAULTS,
    SUITE_NAMES,
    canonical_json,
    report_markdown,
    run_suite,
)
from glab.cli import main


def test_registry_names():
    assert len(SUITE_NAMES) == 13
    assert set(DEFAULTS) == set(SUITE_NAMES)


def test_unknown_suite_and_param():
    with pytest.raises(InputError):
        run_suite("nope")
    with pytest.raises(InputError):
        run_suite("crt", params={"bogus": 1})


def test_report_shape():
    rep = run_suite("det-A", seed=3)
    assert rep.ok
    d = rep.to_dict()
    assert d["suite"] == "det-A"
    assert d["seed"] == 3
    assert d["counts"]["failed"] == 0
    assert all(set(c) == {"name", "ok", "detail"} for c in d["checks"])


def test_canonical_json_stable_and_timing_free():
    r1 = run_suite("index-laws", seed=5)
    r2 = run_suite("index-laws", seed=5)
    b1, b2 = canonical_json(r1), canonical_json(r2)
    assert b1 == b2
    payload = json.loads(b1)
    flat = json.dumps(payload)
    assert "elapsed" not in flat and "time" not in flat
    assert payload["seed"] == 5


def test_markdown_rendering():
    rep = run_suite("crt")
    md = report_markdown(rep, elapsed=0.5)
    assert "PASS" in md
    assert "not part of the canonical report" in md
    assert "| check | ok | detail |" in md


def test_param_override_detects_wrong_expectation():
    rep = run_suite(
        "z-assembly",
        params={"cases": [["sl2", "t^2", "t^2+t", {"0": 99}, 3]]},
    )
    assert not rep.ok


def test_pencil_closure_seed_changes_points():
    r1 = run_suite("pencil-closure", seed=0)
    r2 = run_suite("pencil-closure", seed=1)
    assert r1.ok and r2.ok
    assert canonical_json(r1) != canonical_json(r2)


# ---------------------------------------------------------------------------
# CLI


@pytest.fixture()
def runner():
    return CliRunner()


def test_cli_info(runner):
    res = runner.invoke(main, ["info"])
    assert res.exit_code == 0
    assert "suites:" in res.output


def test_cli_jacobi(runner):
    res = runner.invoke(main, ["jacobi", "--q", "sl2", "--p", "t^2-1"])
    assert res.exit_code == 0
    assert "jacobi: ok" in res.output


def test_cli_jacobi_bad_poly(runner):
    res = runner.invoke(main, ["jacobi", "--p", "zzz"])
    assert res.exit_code == 2


def test_cli_index(runner):
    res = runner.invoke(
        main, ["index", "--q", "sl2", "--p", "t^3", "--p2", "t^3+t"]
    )
    assert res.exit_code == 0
    assert "index: 5" in res.output


def test_cli_crt(runner):
    res = runner.invoke(main, ["crt", "--p", "t^2-t"])
    assert res.exit_code == 0
    assert "sum to one: ok" in res.output
    res2 = runner.invoke(main, ["crt", "--p", "t^2+1"])
    assert res2.exit_code == 2


def test_cli_zz_build_json(runner):
    res = runner.invoke(main, [
        "zz", "build", "--q", "sl2", "--p1", "t^2", "--p2", "t^2+t",
        "--format", "json",
    ])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert payload["counts"] == {"0": 3}
    assert payload["seed"] == 0


def test_cli_zz_verify(runner):
    res = runner.invoke(main, [
        "zz", "verify", "--q", "sl2", "--p1", "t^2", "--p2", "t^2+1",
    ])
    assert res.exit_code == 0
    assert "commutes: ok" in res.output


def test_cli_gaudin(runner):
    res = runner.invoke(main, ["gaudin", "--q", "sl2", "--z", "1,2,5"])
    assert res.exit_code == 0
    assert "sum zero: ok" in res.output
    res2 = runner.invoke(main, ["gaudin", "--q", "sl2", "--z", "1,1"])
    assert res2.exit_code == 2


def test_cli_suite_list_and_run(runner):
    res = runner.invoke(main, ["suite", "list"])
    assert res.exit_code == 0
    assert "determinism" in res.output
    res2 = runner.invoke(main, ["suite", "run", "det-A"])
    assert res2.exit_code == 0
    payload = json.loads(res2.output)
    assert payload["ok"] is True
    res3 = runner.invoke(main, ["suite", "run", "det-A", "--format", "markdown"])
    assert res3.exit_code == 0
    assert "PASS" in res3.output


def test_cli_suite_run_failure_exit(runner):
    res = runner.invoke(main, [
        "suite", "run", "z-assembly", "--params",
        '{"cases": [["sl2", "t^2", "t^2+t", {"0": 99}, 3]]}',
    ])
    assert res.exit_code == 1


def test_cli_suite_bad_params(runner):
    res = runner.invoke(main, ["suite", "run", "det-A", "--params", "not json"])
    assert res.exit_code == 2
    res2 = runner.invoke(main, ["suite", "run", "det-A", "--params", "[1]"])
    assert res2.exit_code == 2


def test_cli_budget_exit(runner, monkeypatch):
    monkeypatch.setenv("GLAB_BUDGET_TERMS", "10")
    res = runner.invoke(main, [
        "zz", "verify", "--q", "sl3", "--p1", "t^2", "--p2", "t^2+t",
    ])
    assert res.exit_code == 3


def test_cli_same_seed_same_bytes(runner):
    args = ["suite", "run", "index-laws", "--seed", "4"]
    out1 = runner.invoke(main, args).output
    out2 = runner.invoke(main, args).output
    assert out1 == out2
