import io
import json
import subprocess
import sys

import pytest

from goldens import WITT_TOWER
from wittlab.algebra.poly import SparsePoly
from wittlab.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, _ = call("--json", *argv)
    assert code == EXIT_OK
    return json.loads(out)


def test_text_header_and_seed():
    code, out, _ = call("witt", "ghost", "--x", "1,2,3,4", "--n", "4")
    assert code == EXIT_OK
    assert out.splitlines() == ["# seed=0", "25"]
    code, out, _ = call("--seed", "17", "witt", "ghost", "--x", "1,2,3,4", "--n", "4")
    assert out.splitlines()[0] == "# seed=17"


def test_json_envelope():
    data = call_json("lfun", "z-exact", "--p", "3", "--gamma", "0", "--m", "2")
    assert set(data) == {"seed", "command", "ok", "result"}
    assert data["command"] == "lfun z-exact"
    assert data["result"] == {"conductor": 1, "coords": ["1/6"]}


@pytest.mark.parametrize(
    "argv",
    [
        ("witt", "mul", "--ring", "F5", "--x", "1,2,3", "--y", "4,0,1"),
        ("witt", "lambda-star", "--T", "3"),
        ("fbar", "conway-gen", "--p", "3", "--n", "4"),
        ("bc", "mul", "--x", "mt(2)*e(1/3)", "--y", "ms(3)"),
        ("lfun", "z-padic", "--p", "5", "--gamma", "1/3", "--beta", "-3", "--K", "6"),
        ("model", "eta", "--ell", "3", "--k", "1"),
    ],
)
def test_deterministic_output(argv):
    first = call(*argv)
    assert first[0] == EXIT_OK
    assert call(*argv) == first
    assert call("--json", *argv) == call("--json", *argv)


@pytest.mark.parametrize("p", [2, 3])
def test_witt_tower_command(p):
    golden = WITT_TOWER[p]
    code, out, _ = call("fbar", "witt-tower", "--p", str(p), "--levels", str(len(golden)))
    assert code == EXIT_OK
    lines = out.splitlines()[1:]
    names = tuple(f"x{j}" for j in range(len(golden)))
    assert len(lines) == len(golden)
    for line, (var, rhs) in zip(lines, golden):
        lhs, got = line.split(" = ")
        assert lhs == f"{var}^{p}"
        assert SparsePoly.parse(got, names) == SparsePoly.parse(rhs, names)


def test_model_and_kms_text():
    code, out, _ = call("model", "primes-above", "--ell", "2", "--p", "7")
    assert out.splitlines()[1:] == ["ℓ=2 p=7 residues=[3]", "ℓ=2 p=7 residues=[4]"]
    code, out, _ = call("lfun", "kms", "--p", "3", "--m", "2")
    assert out.splitlines()[1:] == ["lhs = 1/6", "rhs = 1/6", "kms: ok"]
    code, out, _ = call("lfun", "bernoulli", "--n", "3")
    assert out.splitlines()[1] == "u^3 - 3/2*u^2 + 1/2*u"


def test_relations_command_passes():
    code, out, _ = call("bc", "relations", "--p", "2", "--bound", "6", "--K", "4")
    assert code == EXIT_OK
    assert all(line.endswith(": ok") for line in out.splitlines()[1:])


def test_conway_verify_failure_exit_code(monkeypatch):
    from wittlab.fbar import conway

    real = conway.verify_conway

    def broken(seq):
        report = real(seq)
        report.levels[-1].primitive = False
        return report

    monkeypatch.setattr(conway, "verify_conway", broken)
    code, out, _ = call("fbar", "conway-verify", "--p", "2", "--n", "3")
    assert code == EXIT_FAIL


@pytest.mark.parametrize(
    "argv",
    [
        ("witt", "bogus"),
        ("lfun", "z-exact", "--p", "3", "--gamma", "1/3", "--m", "2"),
        ("lfun", "z-exact", "--p", "3", "--gamma", "x", "--m", "2"),
        ("model", "eta", "--ell", "4", "--k", "1"),
        ("model", "val", "--p", "3"),
        ("fbar", "witt-tower", "--p", "2", "--levels", "2", "--form", "pretty"),
    ],
)
def test_usage_and_domain_errors(argv):
    code, out, err = call(*argv)
    assert code == EXIT_USAGE
    assert out == ""


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "wittlab", "lfun", "residue", "--p", "3", "--gamma", "0"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "# seed=0"
    assert "2/3" in proc.stdout
