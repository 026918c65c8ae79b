import json
import re
import subprocess
import sys

import pytest

from sdeq.cli import main

RATIONAL = re.compile(r"^-?[0-9]+(/[0-9]+)?$")

A_FLAGS = ["--a", "1", "--b", "1", "--u0", "1", "--u1", "1", "--v0", "1", "--v1", "1"]
B_FLAGS = [
    "--a", "1", "--b", "1", "--c", "1", "--d", "1",
    "--x0", "1", "--x1", "1", "--x2", "1", "--y0", "1", "--y1", "1", "--y2", "1",
]


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_iterate_json(capsys):
    code, out, _ = run_cli(capsys, ["iterate", "--system", "A", *A_FLAGS, "--n", "4"])
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["first"][-1] == "3/8"
    assert payload["singular"] is None
    assert payload["params"] == {"a": "1", "b": "1"}
    for value in payload["first"] + payload["second"]:
        assert RATIONAL.match(value)


def test_iterate_csv(capsys):
    code, out, _ = run_cli(
        capsys, ["iterate", "--system", "A", *A_FLAGS, "--n", "3", "--format", "csv"]
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,u,v"
    assert lines[-1] == "3,2/3,2/3"


def test_iterate_singular_is_data(capsys):
    argv = [
        "iterate", "--system", "A",
        "--a", "1", "--b", "1",
        "--u0", "1", "--u1", "5", "--v0", "7", "--v1", "-1",
        "--n", "4",
    ]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    payload = json.loads(out)
    assert payload["singular"] == {"step": 2, "component": "first"}
    assert len(payload["first"]) == 2


def test_solve_matches_iterate_and_verify(capsys):
    solve_argv = [
        "solve", "--system", "A", "--case", "auto",
        "--a", "1", "--b", "-1",
        "--u0", "1", "--u1", "2", "--v0", "1", "--v1", "2",
        "--n", "4", "--sweep",
    ]
    code, out, _ = run_cli(capsys, solve_argv)
    assert code == 0
    records = json.loads(out)["records"]
    assert [r["n"] for r in records] == [0, 1, 2, 3, 4]
    assert records[-1] == {"n": 4, "first": "-1/3", "second": "-3", "case": "Aeq1Bneg1"}

    iterate_argv = [
        "iterate", "--system", "A",
        "--a", "1", "--b", "-1",
        "--u0", "1", "--u1", "2", "--v0", "1", "--v1", "2",
        "--n", "4",
    ]
    code, out, _ = run_cli(capsys, iterate_argv)
    trajectory = json.loads(out)
    assert [r["first"] for r in records] == trajectory["first"]

    verify_argv = [
        "verify", "--system", "A", "--case", "auto",
        "--a", "1", "--b", "-1",
        "--u0", "1", "--u1", "2", "--v0", "1", "--v1", "2",
        "--n", "40",
    ]
    code, out, _ = run_cli(capsys, verify_argv)
    assert code == 0
    assert json.loads(out)["equal"] is True


def test_reduce_json(capsys):
    code, out, _ = run_cli(capsys, ["reduce", "--system", "A", *A_FLAGS, "--n", "4"])
    assert code == 0
    payload = json.loads(out)
    assert payload["w"] == ["1", "1/2", "1/3", "1/4"]
    assert payload["S"] == ["1", "2", "3", "4"]


def test_reduce_singular_exits_2(capsys):
    argv = [
        "reduce", "--system", "A",
        "--a", "1", "--b", "1",
        "--u0", "1", "--u1", "1", "--v0", "1", "--v1", "-1/2",
        "--n", "10",
    ]
    code, out, err = run_cli(capsys, argv)
    assert code == 2
    assert out == ""
    assert "singular" in err


def test_reduce_inadmissible_exits_3(capsys):
    argv = [
        "reduce", "--system", "A",
        "--a", "1", "--b", "1",
        "--u0", "0", "--u1", "1", "--v0", "1", "--v1", "1",
        "--n", "5",
    ]
    code, _, err = run_cli(capsys, argv)
    assert code == 3
    assert "forbidden" in err


def test_check_forbidden_exit_codes(capsys):
    argv = [
        "check-forbidden", "--system", "A",
        "--a", "1", "--b", "1",
        "--u0", "1", "--u1", "1", "--v0", "1", "--v1", "-1/2",
        "--horizon", "10",
    ]
    code, out, _ = run_cli(capsys, argv)
    assert code == 3
    payload = json.loads(out)
    assert payload["violations"] == [{"restriction": "T_even", "r": 1}]
    assert payload["predicted_singular_step"] == 3

    code, out, _ = run_cli(
        capsys, ["check-forbidden", "--system", "A", *A_FLAGS, "--horizon", "10"]
    )
    assert code == 0
    assert json.loads(out)["violations"] == []


def test_solve_forbidden_exits_3(capsys):
    argv = [
        "solve", "--system", "A", "--case", "auto",
        "--a", "1", "--b", "1",
        "--u0", "1", "--u1", "1", "--v0", "1", "--v1", "-1/2",
        "--n", "10",
    ]
    code, _, err = run_cli(capsys, argv)
    assert code == 3
    assert "forbidden" in err


def test_usage_errors(capsys):
    # malformed rational literal names the offending token
    code, _, err = run_cli(
        capsys,
        ["iterate", "--system", "A", "--a", "1.5", "--b", "1",
         "--u0", "1", "--u1", "1", "--v0", "1", "--v1", "1", "--n", "4"],
    )
    assert code == 1
    assert "1.5" in err
    # missing initial condition flag
    code, _, err = run_cli(
        capsys, ["iterate", "--system", "A", "--a", "1", "--b", "1", "--n", "4"]
    )
    assert code == 1
    assert "--u0" in err
    # n too small for the system order
    code, _, err = run_cli(capsys, ["iterate", "--system", "B", *B_FLAGS, "--n", "1"])
    assert code == 1
    # unknown case tag
    code, _, err = run_cli(
        capsys, ["solve", "--system", "A", *A_FLAGS, "--case", "Bogus", "--n", "3"]
    )
    assert code == 1
    # sampling without a seed
    code, _, err = run_cli(capsys, ["difftest", "--system", "A", "--trials", "2", "--n", "5"])
    assert code == 1
    assert "seed" in err
    # c1 without c2
    code, _, err = run_cli(
        capsys, ["symmetry-check", "--system", "A", "--c1", "1", "--seed", "4"]
    )
    assert code == 1


def test_case_param_mismatch_exits_1(capsys):
    argv = [
        "solve", "--system", "A", "--case", "OnesOnes",
        "--a", "2", "--b", "1",
        "--u0", "1", "--u1", "1", "--v0", "1", "--v1", "1",
        "--n", "4",
    ]
    code, _, err = run_cli(capsys, argv)
    assert code == 1
    assert "inconsistent" in err


def test_difftest_zero_trials_vacuous_pass(capsys):
    code, out, _ = run_cli(
        capsys, ["difftest", "--system", "A", "--trials", "0", "--n", "5", "--seed", "1"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["comparisons"] == 0
    assert payload["failures"] == 0
    assert payload["first_counterexample"] is None


def test_difftest_small_runs_clean(capsys):
    for system, n in (("A", 12), ("B", 12)):
        code, out, _ = run_cli(
            capsys,
            ["difftest", "--system", system, "--trials", "8", "--n", str(n), "--seed", "3"],
        )
        assert code == 0
        assert json.loads(out)["failures"] == 0


def test_symmetry_check_cli(capsys):
    code, out, _ = run_cli(
        capsys,
        ["symmetry-check", "--system", "A", "--c1", "1", "--c2", "2",
         "--samples", "20", "--seed", "5"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["all_zero"] is True
    assert payload["checked"] == 40  # both parities


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("SDE_SEED", "17")
    code, out, _ = run_cli(capsys, ["difftest", "--system", "A", "--trials", "2", "--n", "6"])
    assert code == 0
    assert json.loads(out)["seed"] == 17


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    argv = ["iterate", "--system", "A", *A_FLAGS, "--n", "3", "--out", str(target)]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["first"][-1] == "2/3"


def test_no_floats_in_machine_output(capsys):
    code, out, _ = run_cli(capsys, ["iterate", "--system", "B", *B_FLAGS, "--n", "12"])
    payload = json.loads(out)

    def walk(node):
        if isinstance(node, dict):
            for value in node.values():
                walk(value)
        elif isinstance(node, list):
            for value in node:
                walk(value)
        else:
            assert not isinstance(node, float)

    walk(payload)
    for value in payload["first"] + payload["second"]:
        assert RATIONAL.match(value)


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "sdeq", "iterate", "--system", "A", *A_FLAGS, "--n", "2"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["first"] == ["1", "1", "1/2"]
