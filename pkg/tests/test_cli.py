import io
import json
import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from lieco.cli import COMMANDS, run_command

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

# one invocation per subcommand; run from tests/data so the echoed paths are stable
CASES = {
    "validate": (["validate", "su2.alg"], 0),
    "validate_bad": (["validate", "bad.alg"], 2),
    "h2": (["h2", "galilei11.alg"], 0),
    "h2_decompose": (["h2", "galilei11.alg", "--cocycle", "galilei11.mass.cocycle"], 0),
    "extend": (["extend", "galilei11.alg", "--cocycle", "galilei11.mass.cocycle"], 0),
    "pseudo_extend": (["pseudo-extend", "su2.alg", "--l0", "0,0,1"], 0),
    "trivialize": (["trivialize", "su2.alg", "--l0", "0,0,1"], 0),
    "trivialize_mass": (["trivialize", "galilei11.alg", "--cocycle", "galilei11.mass.cocycle"], 1),
    "omega": (["omega", "su2.alg", "--l0", "0,0,1"], 0),
    "char_sub": (["char-sub", "heisenberg1.alg", "--l0", "0,0,1"], 0),
    "orbit": (["orbit", "su2.alg", "--mu", "0,0,1", "--nu", "1,0,0"], 0),
    "orbit_distinct": (["orbit", "su2.alg", "--mu", "0,0,1", "--nu", "0,0,2"], 1),
    "pseudo_class": (["pseudo-class", "su2.alg", "--l0", "0,0,1", "--l0b", "1,0,0", "--seed", "7"], 0),
    "pseudo_class_weyl": (["pseudo-class", "abelian2.alg", "--l0", "1,0", "--l0b", "0,1", "--cocycle", "weyl"], 0),
    "pseudo_class_plain": (["pseudo-class", "abelian2.alg", "--l0", "1,0", "--l0b", "0,1"], 1),
    "witness_check": (["witness-check", "su2.alg", "--l0", "1,0,0", "--l0b", "0,0,1", "--witness", "0,1.5707963267948966,0"], 0),
    "witness_check_wrong": (["witness-check", "su2.alg", "--l0", "1,0,0", "--l0b", "0,0,1", "--witness", "0.3,0,0"], 1),
    "integrality": (["integrality", "su2.alg", "--l0", "su2.half.functional"], 0),
    "integrality_fail": (["integrality", "su2.alg", "--l0", "0,0,3/10"], 1),
    "contract": (["contract", "poincare11.alg", "--sub", "H", "--cocycle", "poincare11.mu_h.cocycle", "--scale", "2"], 0),
    "contract_divergent": (["contract", "poincare11.alg", "--sub", "H", "--cocycle", "poincare11.mu_h.cocycle", "--scale", "3"], 2),
    "group_verify": (["group-verify", "galilei11.alg", "--samples", "50"], 0),
    "catalog": (["catalog"], 0),
}


def run(argv, fmt="json"):
    out, err = io.StringIO(), io.StringIO()
    code, _ = run_command([*argv, "--format", fmt], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def in_data_dir(monkeypatch):
    monkeypatch.chdir(DATA)
    monkeypatch.delenv("LIECO_SEED", raising=False)


def test_every_subcommand_has_a_golden_case():
    covered = {argv[0] for argv, _ in CASES.values()}
    assert covered == set(COMMANDS)


@pytest.mark.parametrize("case", sorted(CASES))
@pytest.mark.parametrize("fmt", ["json", "text"])
def test_golden(case, fmt):
    argv, code = CASES[case]
    got_code, out, _ = run(argv, fmt)
    assert got_code == code
    path = GOLDEN / f"{case}.{'json' if fmt == 'json' else 'txt'}"
    if os.environ.get("LIECO_REGEN"):
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")


@pytest.mark.parametrize("case", sorted(CASES))
def test_determinism(case):
    argv, _ = CASES[case]
    assert run(argv)[1] == run(argv)[1]


def test_json_schema_top_level():
    _, out, _ = run(["h2", "galilei11.alg"])
    doc = json.loads(out)
    assert set(doc) == {"command", "inputs_sha256", "results", "seed", "tolerances", "version"}
    assert doc["results"]["z2_dim"] == 3 and doc["results"]["b2_dim"] == 1 and doc["results"]["h2_dim"] == 2
    assert len(doc["inputs_sha256"]) == 64


def test_rationals_are_strings():
    _, out, _ = run(["omega", "su2.alg", "--l0", "0,0,1/2"])
    doc = json.loads(out)
    assert doc["results"]["omega"][0] == ["0", "1/2", "0"]


def test_validate_bad_reports_jacobi():
    code, out, err = run(["validate", "bad.alg"])
    assert code == 2
    assert json.loads(out)["results"]["error"]["type"] == "JacobiViolation"
    assert "JacobiViolation" in err


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("LIECO_SEED", "7")
    a = json.loads(run(["orbit", "su2.alg", "--mu", "0,0,1", "--nu", "1,0,0"])[1])
    assert a["seed"] == 7
    b = json.loads(run(["orbit", "su2.alg", "--mu", "0,0,1", "--nu", "1,0,0", "--seed", "3"])[1])
    assert b["seed"] == 3
    monkeypatch.setenv("LIECO_SEED", "x")
    assert run(["orbit", "su2.alg", "--mu", "0,0,1", "--nu", "1,0,0"])[0] == 2


def test_catalog_name_instead_of_file():
    code, out, _ = run(["h2", "poincare11"])
    assert code == 0 and json.loads(out)["results"]["h2_dim"] == 1


def test_catalog_export(tmp_path):
    code, out, _ = run(["catalog", "--export", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "su2.alg").read_text() == (DATA / "su2.alg").read_text()


@pytest.mark.parametrize("argv", [["orbit", "missing.alg", "--mu", "1", "--nu", "1"], ["omega", "su2.alg", "--l0", "1,2"], ["omega", "su2.alg"], ["contract", "su2.alg", "--sub", "X1,X2"], ["orbit", "bad.alg", "--mu", "0,0,0", "--nu", "0,0,0"], ["witness-check", "su2.alg", "--l0", "1,0,0", "--l0b", "1,0,0", "--witness", "a,b,c"]])
def test_input_errors_exit_2(argv):
    assert run(argv)[0] == 2


def test_algebra_without_realization(tmp_path):
    p = tmp_path / "r.alg"
    p.write_text("algebra r\ndim 2\nnames A B\nbracket A B = 1 B\n")
    assert run(["orbit", str(p), "--mu", "0,1", "--nu", "1,0"])[0] == 2
    code, out, _ = run(["integrality", str(p), "--l0", "0,1"])
    assert code == 0 and json.loads(out)["results"]["notes"]


@pytest.mark.parametrize("cmd", sorted(COMMANDS))
def test_help(cmd, capsys):
    code, _ = run_command([cmd, "--help"])
    assert code == 0
    assert "--format" in capsys.readouterr().out


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.text(max_size=200))
def test_malformed_input_never_crashes(tmp_path_factory, text):
    p = tmp_path_factory.mktemp("fz") / "x.alg"
    p.write_text(text, encoding="utf-8")
    code, _, _ = run(["validate", str(p)])
    assert code in (0, 2)
