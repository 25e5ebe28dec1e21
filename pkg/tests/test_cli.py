import json

import pytest

from colorsga.cli import main
from colorsga.colored import build_colored_explicit, compare_algebras
from colorsga.serialization import dumps_algebra, loads_algebra


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0
    assert out.strip() == "colorsga 0.1.0"


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "verify", "jacobi")[0] == 2  # --two-ell is required
    assert run(capsys, "vf", "check", "--two-ell", "1", "--jobs", "0")[0] == 2
    assert run(capsys, "verify", "jacobi", "--two-ell", "0")[0] == 2


def test_verify_jacobi_summary_line(capsys):
    code, out, err = run(capsys, "verify", "jacobi", "--two-ell", "2")
    assert code == 0
    assert err == ""
    assert out.splitlines()[-1] == "triples checked: 2520, violations: 0"


def test_verify_jacobi_json(capsys):
    code, out, _ = run(capsys, "verify", "jacobi", "--two-ell", "1", "--central",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["violations"] == 0
    assert [r["label"] for r in doc["reports"]] == [
        "jacobi[galilei-central[1/2]]",
        "jacobi[colored-central[1/2]]",
    ]


def test_algebra_build_round_trips(capsys):
    code, out, _ = run(capsys, "algebra", "build", "--two-ell", "1")
    assert code == 0
    alg = loads_algebra(out)
    assert compare_algebras(build_colored_explicit(1), alg).ok


def test_algebra_build_central_needs_odd_size(capsys):
    code, out, err = run(capsys, "algebra", "build", "--two-ell", "2", "--central")
    assert code == 2
    assert out == ""
    assert "half-integer" in err


def test_algebra_build_output_file_matches_stdout(tmp_path, capsys):
    path = tmp_path / "alg.json"
    code, out, _ = run(capsys, "algebra", "build", "--two-ell", "1", "--central",
                       "--output", str(path))
    assert code == 0 and out == ""
    code, out, _ = run(capsys, "algebra", "build", "--two-ell", "1", "--central")
    assert path.read_text(encoding="utf-8") == out == dumps_algebra(
        build_colored_explicit(1, central=True)
    )


def test_algebra_build_table_format(capsys):
    code, out, _ = run(capsys, "algebra", "build", "--two-ell", "1", "--format", "table")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "name: colored[1/2]"
    assert lines[1] == "dim: 13"
    assert "  [H, D] = -H" in lines


def test_derive_structure_diff_empty(capsys):
    code, out, err = run(capsys, "derive", "structure", "--two-ell", "1", "--diff")
    assert code == 0
    assert err == ""
    assert json.loads(out)["diff_empty"] is True


def test_derive_structure_emits_importable_table(capsys):
    code, out, _ = run(capsys, "derive", "structure", "--two-ell", "1", "--central")
    assert code == 0
    assert compare_algebras(build_colored_explicit(1, central=True), loads_algebra(out)).ok


def test_decompose_zero_sector(capsys):
    code, out, _ = run(capsys, "decompose", "--two-ell", "1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["grader"] == "D"
    assert [e["id"] for e in doc["sectors"]["zero"]] == ["D", "X[0]", "Pc[0,1]"]
    assert doc["sectors"]["plus"][0] == {"id": "H", "weight": "1/1"}
    assert doc["reports"][0]["violations"] == []


@pytest.mark.parametrize("kind", ["adjoint1", "adjoint2"])
@pytest.mark.parametrize("sign", ["plus", "minus"])
def test_involution_check_plain_kinds_pass(capsys, kind, sign):
    code, out, err = run(capsys, "involution", "check", "--two-ell", "1", "--central",
                         "--kind", kind, "--sign", sign)
    assert code == 0 and err == ""
    assert "violations 0" in out


def test_involution_check_twisted_fails_on_central_pairings(capsys):
    code, out, err = run(capsys, "involution", "check", "--two-ell", "1", "--central",
                         "--kind", "superadjoint")
    assert code == 1
    # the colored table itself is consistent; the obstruction is named pairwise
    assert "involution[superadjoint,colored-central[1/2]]: checked 130, violations 0" in out
    assert "pairing(P[0], P[1])" in err and "pairing(X[0], X[0])" in err


def test_involution_check_twisted_passes_without_extension(capsys):
    code, _, err = run(capsys, "involution", "check", "--two-ell", "3",
                       "--kind", "superadjoint")
    assert code == 0 and err == ""


def test_involution_check_twisted_even_size_exit_2(capsys):
    code, _, err = run(capsys, "involution", "check", "--two-ell", "2",
                       "--kind", "superadjoint")
    assert code == 2
    assert "odd two_ell" in err


def test_fock_build_check_passes(capsys):
    code, out, err = run(capsys, "fock", "build", "--two-ell", "1", "--cutoff", "8",
                         "--check", "--format", "table")
    assert code == 0 and err == ""
    assert "module: two_ell=1,cutoff=8, dim 16" in out
    assert out.count("violations 0") == 3


def test_fock_build_json_matrices(capsys):
    code, out, _ = run(capsys, "fock", "build", "--two-ell", "1", "--cutoff", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["dim"] == 8
    mats = doc["matrices"]
    assert list(mats)[:3] == ["H", "D", "K"]  # canonical basis-family order
    assert mats["I"] == [{"row": r, "col": r, "value": "1/1"} for r in range(8)]


def test_fock_build_usage_errors(capsys):
    assert run(capsys, "fock", "build", "--two-ell", "2", "--cutoff", "8")[0] == 2
    # a truncation too small to certify anything is a request problem, not a failure
    code, _, err = run(capsys, "fock", "build", "--two-ell", "1", "--cutoff", "2",
                       "--check")
    assert code == 2
    assert "cutoff" in err


def test_vf_check_core_and_dump(capsys):
    code, out, err = run(capsys, "vf", "check", "--two-ell", "1", "--pairs", "core",
                         "--dump-ops")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "H: (-1)d_x1"
    assert lines[-1] == "vector-fields[colored[1/2]|pairs=core]: checked 15, violations 0"


def test_output_is_deterministic_and_jobs_invariant(capsys):
    variants = [
        run(capsys, "fock", "build", "--two-ell", "1", "--cutoff", "6", "--check"),
        run(capsys, "fock", "build", "--two-ell", "1", "--cutoff", "6", "--check"),
        run(capsys, "fock", "build", "--two-ell", "1", "--cutoff", "6", "--check",
            "--jobs", "4"),
    ]
    assert variants[0] == variants[1] == variants[2]
    assert variants[0][0] == 0
