import io
import json
import sys

import pytest

from mclie.cli import main


def run_cli(args, capsys):
    rc = main(args)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_homology_sphere_all_zero(capsys):
    rc, out, _ = run_cli(["homology", "--builtin", "sphere"], capsys)
    assert rc == 0
    assert "H_-1 = 0" in out and "H_-2 = 0" in out


def test_mc_moduli_g_s_three(capsys):
    rc, out, _ = run_cli(["mc-moduli", "--builtin", "g_S", "--size", "3"], capsys)
    assert rc == 0
    assert "classes = 4" in out
    assert "completeness-certificate: PASS" in out


def test_verify_theorem_f_line_zero(capsys):
    rc, out, _ = run_cli(["verify", "theorem-f", "--builtin", "abelian:1:0",
                          "--builtin", "zero", "--weight", "4"], capsys)
    assert rc == 0
    assert "moduli(product) = 2" in out
    assert "moduli(factors) = 1+1" in out
    assert "moduli-bijection: PASS" in out


def test_mc_constraints_prints_g_s_system(capsys):
    rc, out, _ = run_cli(["mc-constraints", "--builtin", "g_S:2",
                          "--simplex", "1", "--poly-degree", "2"], capsys)
    assert rc == 0
    # the three equation shapes of the discrete-space system
    assert "da[x1]" in out                      # d alpha = 0
    assert "a[x1]*a[x1]" in out                 # alpha(1 - alpha) = 0
    assert "a[x1]*a[x2]" in out                 # orthogonality


def test_check_builtins(capsys):
    rc, out, _ = run_cli(["check", "--builtin", "sphere", "--builtin",
                          "heisenberg", "--builtin", "qxq"], capsys)
    assert rc == 0
    assert out.count("PASS") == 3


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.def"
    bad.write_text("kind dgla\nbasis x\n")
    rc, out, err = run_cli(["homology", str(bad)], capsys)
    assert rc == 2
    assert "line 2" in err


def test_unknown_builtin_exit_code(capsys):
    rc, out, err = run_cli(["homology", "--builtin", "nonsense"], capsys)
    assert rc == 2


def test_definition_file_roundtrip(tmp_path, capsys):
    d = tmp_path / "sphere.def"
    d.write_text("""
kind free-dgla
weight 2
generator x -1
d x = -1/2 [x,x]
""")
    rc, out, _ = run_cli(["homology", str(d)], capsys)
    assert rc == 0
    assert "H_-1 = 0" in out


def test_cdga_definition_and_split(tmp_path, capsys):
    d = tmp_path / "qxq.def"
    d.write_text("""
kind cdga
basis 1 0
basis e 0
unit 1
mul e e = 1 e
augment 1 = 1
augment e = 0
""")
    rc, out, _ = run_cli(["split", str(d)], capsys)
    assert rc == 0
    assert "factors = 2" in out
    assert "connected-factors: PASS" in out


def test_split_non_split_exit_code(capsys):
    rc, out, err = run_cli(["split", "--builtin", "q_eps"], capsys)
    assert rc == 1
    assert "NonSplitAlgebra" in err


def test_localize_report(capsys):
    rc, out, _ = run_cli(["localize", "--builtin", "qxq", "--at", "e"], capsys)
    assert rc == 0
    assert "exactness H(A[u^-1]) = H(A)[u^-1]: PASS" in out


def test_mc_verify_residual(capsys):
    rc, out, _ = run_cli(["mc-verify", "--builtin", "sphere",
                          "--element", "2 x"], capsys)
    assert rc == 1
    assert "maurer-cartan: FAIL" in out
    assert "[x,x]" in out
    rc, out, _ = run_cli(["mc-verify", "--builtin", "sphere",
                          "--element", "x"], capsys)
    assert rc == 0


def test_ce_table(capsys):
    rc, out, _ = run_cli(["ce", "--builtin", "heisenberg", "--words", "3",
                          "--range", "1..3"], capsys)
    assert rc == 0
    assert "H^1 = 2  [exact]" in out
    assert "H^2 = 2  [exact]" in out
    assert "H^3 = 1  [exact]" in out


def test_harrison_command(capsys):
    rc, out, _ = run_cli(["harrison", "--builtin", "qxq", "--weight", "2"],
                         capsys)
    assert rc == 0
    assert "dim_-1 = 1" in out and "dim_-2 = 1" in out


def test_verify_free_product_cohomology(capsys):
    rc, out, _ = run_cli(["verify", "free-product-cohomology",
                          "--builtin", "heisenberg", "--builtin", "abelian:1:0",
                          "--weight", "4"], capsys)
    assert rc == 0
    assert "free-product-cohomology: PASS" in out


def test_minimal_model_command(capsys):
    rc, out, _ = run_cli(["minimal-model", "--builtin", "heisenberg",
                          "--arity", "3"], capsys)
    assert rc == 0
    assert "differential-has-no-linear-part: PASS" in out


def test_reports_byte_identical(capsys):
    args = ["mc-moduli", "--builtin", "g_S", "--size", "2"]
    rc1, out1, _ = run_cli(args, capsys)
    rc2, out2, _ = run_cli(args, capsys)
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_json_sibling(tmp_path, capsys):
    j = tmp_path / "report.json"
    rc, out, _ = run_cli(["homology", "--builtin", "sphere", "--json", str(j)],
                         capsys)
    assert rc == 0
    data = json.loads(j.read_text())
    assert data["results"]["H_-1"]["value"] == 0
    # deterministic serialization
    first = j.read_text()
    run_cli(["homology", "--builtin", "sphere", "--json", str(j)], capsys)
    assert j.read_text() == first


def test_disjoint_product_command(capsys):
    rc, out, _ = run_cli(["disjoint-product", "--builtin", "abelian:1:0",
                          "--builtin", "zero", "--weight", "3"], capsys)
    assert rc == 0
    assert "distinguished MC element" in out


def test_resource_cap_exit_code(tmp_path, capsys):
    d = tmp_path / "big.def"
    d.write_text("""
kind free-dgla
weight 14
generator a 0
generator b 0
generator c 0
""")
    rc, out, err = run_cli(["homology", str(d)], capsys)
    assert rc == 3
    assert "resource cap" in err


def test_every_builtin_passes_check(capsys):
    builtins = ["sphere", "zero", "g_S:2", "f_xa:3", "heisenberg",
                "abelian:2:1", "q", "qxq", "qk:3", "q_eps", "q_deg2",
                "omega:1:2"]
    args = ["check"]
    for b in builtins:
        args.extend(["--builtin", b])
    rc, out, _ = run_cli(args, capsys)
    assert rc == 0
    assert out.count("PASS") == len(builtins)


def test_twisted_differential_in_definition_file(tmp_path, capsys):
    # the disjoint product of the line with the zero algebra, written out
    # as an explicit free-dgla definition with the twisted differential
    d = tmp_path / "line_u_zero.def"
    d.write_text("""
kind free-dgla
weight 4
generator a 0
generator x -1
d a = - [a,x]
d x = 1/2 [x,x]
""")
    rc, out, _ = run_cli(["check", str(d)], capsys)
    assert rc == 0
    rc, out, _ = run_cli(["mc-moduli", str(d)], capsys)
    assert rc == 0
    assert "classes = 2" in out
    rc, out, _ = run_cli(["homology", str(d)], capsys)
    assert rc == 0
    for line in out.splitlines():
        if "[stable]" in line:
            assert "= 0 " in line
