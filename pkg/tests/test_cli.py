"""CLI subcommands: pinned outputs, determinism, and error JSON."""

import json

import pytest

from uhfkron.cli import cli_run


def run(capsys, *argv):
    code = cli_run(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_tensor_state_witness_pinned(capsys):
    code, out = run(
        capsys, "tensor-state", "--a", "2", "--b", "2",
        "--T", "diag(1,0)", "--R", "diag(0,1)",
        "--expr", "E[4](2,2)-E[4](3,3)",
    )
    assert code == 0
    assert out == '{"value":{"re":1.0,"im":0.0}}\n'


def test_tensor_state_swapped(capsys):
    code, payload = run_json(
        capsys, "tensor-state", "--a", "2", "--b", "2",
        "--T", "diag(0,1)", "--R", "diag(1,0)",
        "--expr", "E[4](2,2)-E[4](3,3)",
    )
    assert code == 0
    assert payload == {"value": {"re": -1.0, "im": 0.0}}


def test_atom_product_pinned(capsys):
    code, out = run(
        capsys, "atom-product", "--n", "2", "--m", "2",
        "--J", "1,1,1", "--K", "2,2,2",
    )
    assert code == 0
    assert out == '{"base":4,"label":[2,2,2]}\n'


def test_check_pinned_shape(capsys):
    code, payload = run_json(
        capsys, "check", "--suite", "coassociativity",
        "--dims", "2,3,2", "--level", "1",
    )
    assert code == 0
    assert payload == {"passed": 144, "failed": 0}


def test_check_all_suites_pass(capsys):
    cases = [
        ("coassociativity", "2,2,2", "1"),
        ("compatibility", "2,2", "1"),
        ("star-isomorphism", "2,3", "1"),
        ("tensor-formula", "2,3", "1"),
        ("nonsymmetry", "", "2"),
        ("atom-semigroup", "2,2", "2"),
        ("state-associativity", "2,2,2", "1"),
    ]
    for suite, dims, level in cases:
        argv = ["check", "--suite", suite, "--level", level]
        if dims:
            argv += ["--dims", dims]
        code, payload = run_json(capsys, *argv)
        assert code == 0, (suite, payload)
        assert payload["failed"] == 0
        assert payload["passed"] > 0


def test_check_unknown_suite(capsys):
    code, payload = run_json(capsys, "check", "--suite", "nope")
    assert code == 1
    assert payload["error"]["code"] == "validation"


def test_eval(capsys):
    code, payload = run_json(
        capsys, "eval", "--state", "diag(0.25,0.75)",
        "--expr", "E[2](2,2)",
    )
    assert code == 0
    assert payload == {"value": {"re": 0.75, "im": 0.0}}


def test_coproduct_terms_sorted(capsys):
    code, payload = run_json(
        capsys, "coproduct", "--a", "2", "--b", "2",
        "--expr", "E[4](3,3) + E[4](2,2)",
    )
    assert code == 0
    assert payload["sig"] == [2, 2]
    assert payload["terms"] == [
        {"rows": [1, 2], "cols": [1, 2], "value": {"re": 1.0, "im": 0.0}},
        {"rows": [2, 1], "cols": [2, 1], "value": {"re": 1.0, "im": 0.0}},
    ]


def test_boxtimes(capsys):
    code, payload = run_json(
        capsys, "boxtimes", "--T", "diag(1,0)", "--R", "diag(0,1)"
    )
    assert code == 0
    assert payload["sig"] == [4]
    diag = [payload["factors"][0][i][i]["re"] for i in range(4)]
    assert diag == [0.0, 1.0, 0.0, 0.0]


def test_gns_pure_and_trace(capsys):
    code, payload = run_json(capsys, "gns", "--state", "diag(1,0);diag(0,1)")
    assert code == 0
    assert payload["space_dim"] == 4
    assert payload["commutant_dim"] == 1
    assert payload["expectation"]["failed"] == 0

    code, payload = run_json(capsys, "gns", "--state", "diag(0.5,0.5)")
    assert code == 0
    assert payload["space_dim"] == 4
    assert payload["commutant_dim"] == 4
    assert payload["cyclic_norm"] == pytest.approx(1.0)


def test_distance_witness(capsys):
    code, payload = run_json(
        capsys, "distance",
        "--T", "diag(0,1,0,0);diag(0,1,0,0)",
        "--R", "diag(0,0,1,0);diag(0,0,1,0)",
    )
    assert code == 0
    assert payload["distance"] == pytest.approx(2.0, abs=1e-12)


def test_determinism_byte_identical(capsys):
    argv = ("coproduct", "--a", "2,2", "--b", "2,2",
            "--expr", "E[4](2,3) (x) E[4](1,4)")
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second


def test_error_parse(capsys):
    code, payload = run_json(capsys, "eval", "--state", "diag(1,0)",
                             "--expr", "E[2](3,1)")
    assert code == 1
    assert payload["error"]["code"] == "parse-error"
    assert "row index 3" in payload["error"]["message"]


def test_error_state_validation(capsys):
    code, payload = run_json(capsys, "eval", "--state", "diag(0.5,0.6)",
                             "--expr", "E[2](1,1)")
    assert code == 1
    assert payload["error"]["code"] == "validation"


def test_error_signature_mismatch(capsys):
    code, payload = run_json(
        capsys, "tensor-state", "--a", "3", "--b", "2",
        "--T", "diag(1,0)", "--R", "diag(0,1)", "--expr", "E[4](1,1)",
    )
    assert code == 1
    assert payload["error"]["code"] == "signature-mismatch"


def test_error_resource_guard(capsys):
    state = ";".join(["diag(0.5,0.5)"] * 13)
    code, payload = run_json(capsys, "distance", "--T", state, "--R", state)
    assert code == 1
    assert payload["error"]["code"] == "resource-guard"


def test_error_missing_file(capsys):
    code, payload = run_json(capsys, "eval", "--state", "file:/no/such.json",
                             "--expr", "E[2](1,1)")
    assert code == 1
    assert payload["error"]["code"] == "io-error"


def test_tol_env_and_flag(capsys, monkeypatch):
    monkeypatch.setenv("UHFKRON_TOL", "1e-9")
    code, payload = run_json(
        capsys, "check", "--suite", "tensor-formula", "--dims", "2,3",
        "--level", "1",
    )
    assert code == 0 and payload["failed"] == 0

    monkeypatch.setenv("UHFKRON_TOL", "not-a-number")
    code, payload = run_json(capsys, "eval", "--state", "diag(1,0)",
                             "--expr", "E[2](1,1)")
    assert code == 1
    assert payload["error"]["code"] == "validation"

    # an explicit flag wins over the (broken) environment value
    code, payload = run_json(
        capsys, "--tol", "1e-12", "eval", "--state", "diag(1,0)",
        "--expr", "E[2](1,1)",
    )
    assert code == 0
    assert payload == {"value": {"re": 1.0, "im": 0.0}}


def test_console_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "uhfkron", "atom-product", "--n", "2",
         "--m", "3", "--J", "2", "--K", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"base": 6, "label": [4]}
