import json
import subprocess
import sys
from fractions import Fraction as Q

import pytest

from extmukai.cli import parse_vector
from extmukai.linalg import Mat
from extmukai.serialize import (
    canonical_json,
    lattice_from_json,
    lattice_to_json,
    matrix_from_json,
    matrix_to_json,
    parse_rat,
    rat_str,
    sym_from_json,
    sym_to_json,
)
from extmukai.spaces import ExtMukaiSpace, k3n_type
from extmukai.verbitsky import sqrt_todd_argument


def run_cli(args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "extmukai.cli"] + args,
        capture_output=True,
        text=True,
        input=stdin,
    )
    return proc.returncode, proc.stdout


def test_rational_strings():
    assert rat_str(Q(3, 4)) == "3/4"
    assert rat_str(Q(-5)) == "-5"
    assert parse_rat("7/2") == Q(7, 2)
    assert parse_rat("-3") == Q(-3)
    with pytest.raises(Exception):
        parse_rat("x")


def test_matrix_and_lattice_roundtrip():
    m = Mat([[0, 1], [1, 0]])
    assert matrix_from_json(matrix_to_json(m)) == m
    from extmukai.lattice import standard_lattice

    lat = standard_lattice("U")
    again = lattice_from_json(lattice_to_json(lat))
    assert again.gram == lat.gram


def test_sym_roundtrip():
    space = ExtMukaiSpace(k3n_type(2))
    x = sqrt_todd_argument(space)
    data = sym_to_json(x)
    # monomial keys look like "a|i1.i2|c"
    assert any("|" in k for piece in data["pieces"].values() for k in piece)
    y = sym_from_json(space, data)
    assert y == x


def test_deformation_and_isometry_roundtrip():
    from extmukai.serialize import (
        deformation_from_json,
        deformation_to_json,
        isometry_from_json,
        isometry_to_json,
    )
    from extmukai.spaces import b_field

    dtype = k3n_type(3)
    again = deformation_from_json(deformation_to_json(dtype))
    assert (again.family, again.n, again.c_x, again.r_x) == ("K3n", 3, 1, Q(3, 2))
    assert again.h2_gram == dtype.h2_gram

    space = ExtMukaiSpace(dtype)
    g = b_field(space, [1] + [0] * 22)
    h = isometry_from_json(isometry_to_json(g))
    assert h.matrix == g.matrix


def test_canonical_json_is_deterministic():
    a = canonical_json({"b": 1, "a": [2, 3]})
    b = canonical_json({"a": [2, 3], "b": 1})
    assert a == b
    assert a.endswith("\n")


def test_vector_parser():
    space = ExtMukaiSpace(k3n_type(2))
    v = parse_vector(space, "alpha+5/4*beta")
    assert v[0] == 1 and v[-1] == Q(5, 4)
    v = parse_vector(space, "delta/3", h2_only=True)
    assert v[-1] == Q(1, 3)
    v = parse_vector(space, "2*e1-e2", h2_only=True)
    assert v[0] == 2 and v[1] == -1
    v = parse_vector(space, ",".join(["0"] * 25))
    assert all(c == 0 for c in v)


def test_cli_vector_example():
    code, out = run_cli(["vector", "--family", "K3n", "--n", "2", "--lam", "0"])
    assert code == 0
    data = json.loads(out)
    assert data["result"]["coords"][0] == "1"
    assert data["result"]["coords"][-1] == "5/4"


def test_cli_output_byte_stable():
    _, out1 = run_cli(["vector", "--n", "2", "--lam", "delta"])
    _, out2 = run_cli(["vector", "--n", "2", "--lam", "delta"])
    assert out1 == out2


def test_cli_lattice_check_counterexample():
    code, out = run_cli(
        ["lattice-check", "--lattice", "lambda", "--n", "10", "--iso", "bfield:delta/3"]
    )
    assert code == 1
    data = json.loads(out)
    assert data["result"]["preserves"] is False
    assert data["result"]["witness"]
    code, _ = run_cli(
        ["lattice-check", "--lattice", "gamma-k", "--n", "10", "--iso", "bfield:delta/3"]
    )
    assert code == 0


def test_cli_isometry_info():
    code, out = run_cli(["isometry-info", "--n", "3", "--iso", "catalog:spherical_P"])
    assert code == 0
    data = json.loads(out)["result"]
    assert data["det"] == "-1"
    assert data["spinor_norm"] == 1
    assert data["preserves_lambda"] is True


def test_cli_chi_and_integrate():
    code, out = run_cli(["chi", "--family", "K3n", "--n", "2", "--square", "8"])
    assert code == 0
    assert json.loads(out)["result"]["chi"] == "21"
    code, out = run_cli(
        ["integrate", "--family", "K3n", "--n", "2", "--omegas", "e1+e2;e1+e2;e1+e2;e1+e2"]
    )
    assert code == 0
    # q(e1+e2) = 2 in the first U: Fujiki gives 3 * 2^2 = 12
    assert json.loads(out)["result"]["integral"] == "12"


def test_cli_transport():
    code, out = run_cli(
        ["transport", "--n", "3", "--v", "alpha-1/2*delta-1/2*beta+beta", "--w", "e1-e2"]
    )
    # alpha~ + beta = alpha - delta/2 + (1-n)/4 beta + beta: write explicitly
    v = "alpha-1/2*delta-1/2*beta+beta"
    assert code == 0, out
    data = json.loads(out)
    assert data["result"]["found"] is True


def test_cli_moduli():
    payload = {
        "ns": {"name": "NS", "gram": [["2"]]},
        "v": [1, 0, -1],
    }
    code, out = run_cli(["moduli", "--input", "-"], stdin=json.dumps(payload))
    assert code == 0, out
    data = json.loads(out)["result"]
    assert data["square"] == "2"
    assert data["dimension"] == 4
    assert data["fine"] is True
    assert data["disc_lemma"]["identity_holds"] is True


def test_cli_catalog_verbs():
    code, out = run_cli(["catalog", "list"])
    assert code == 0
    assert "spherical_P" in json.loads(out)["result"]["keys"]
    code, out = run_cli(["catalog", "get", "sign_equivalence", "--n", "2"])
    assert code == 0
    data = json.loads(out)
    assert data["result"]["epsilon"] == 1
    assert "matrix" in data["result"]


def test_cli_bad_input_exit_2():
    code, out = run_cli(["vector", "--n", "2", "--lam", "nonsense"])
    assert code == 2
    data = json.loads(out)
    assert "error" in data
    code, out = run_cli(["act", "--n", "3", "--key", "fm_ext1"])
    assert code == 2
    # wrong coordinate count, malformed moduli input, unknown lattice
    code, _ = run_cli(["vector", "--n", "2", "--lam", "1,2,3"])
    assert code == 2
    code, _ = run_cli(["moduli", "--input", "-"], stdin='{"ns": {"gram": [["x"]]}, "v": [1, 0]}')
    assert code == 2
    code, _ = run_cli(["lattice-check", "--n", "2", "--lattice", "nope", "--iso", "shift"])
    assert code == 2
    code, _ = run_cli(["isometry-info", "--n", "2", "--iso", "reflection:beta"])
    assert code == 2  # isotropic reflection vector
    code, _ = run_cli(["integrate", "--n", "2", "--omegas", "e1"])
    assert code == 2  # needs 2n classes


def test_cli_verify_text_lines():
    code, out = run_cli(["--format", "text", "verify", "besse"])
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("[")]
    assert lines and all(l.startswith("[PASS]") for l in lines)
