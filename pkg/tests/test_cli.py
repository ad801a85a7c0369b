import json
from fractions import Fraction

import pytest

from lcscalc.cli import main
from lcscalc.errors import ExprSyntaxError, InvalidMetric, UndeclaredParameter
from lcscalc.specfile import (
    algebra_to_text,
    parse_algebra_text,
    parse_form_expr,
)

ACFM_FILE = """\
# four-dimensional solvable example, n = k = lambda = 1
generators alpha beta gamma eta
d alpha = -1 alpha^gamma
d beta = 1 beta^gamma
d eta = 1 alpha^beta
"""

ACFM_PARAM_FILE = """\
params n k lambda
generators alpha beta gamma eta
d alpha = -1*k alpha^gamma
d beta = k beta^gamma
d eta = n*lambda alpha^beta
"""

TORUS_FILE = "generators e1 e2 e3 e4\n"

BROKEN_FILE = """\
generators e1 e2 e3
d e1 = 1 e2^e3
d e2 = 1 e3^e1
d e3 = 1 e1^e2 + 1 e1^e3
"""


@pytest.fixture
def acfm_path(tmp_path):
    path = tmp_path / "acfm.alg"
    path.write_text(ACFM_FILE)
    return str(path)


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------


def test_parse_rational_file():
    alg = parse_algebra_text(ACFM_FILE)
    assert alg.basis.names == ("alpha", "beta", "gamma", "eta")
    assert not alg.mode.is_param
    assert alg.check_d2().ok


def test_parse_param_file():
    alg = parse_algebra_text(ACFM_PARAM_FILE)
    assert alg.mode.symbols == ("n", "k", "lambda")
    k = alg.mode.symbol("k")
    assert alg.dgen[0] == (-k) * alg.basis.gen(0).wedge(alg.basis.gen(2))


def test_parse_tolerates_crlf_and_comments():
    text = "# c1\r\ngenerators a b\r\n\r\nd a = 1 a^b  # inline\r\n"
    alg = parse_algebra_text(text)
    assert alg.basis.names == ("a", "b")


def test_missing_d_lines_default_to_zero():
    alg = parse_algebra_text(TORUS_FILE)
    assert all(f.is_zero() for f in alg.dgen)


def test_round_trip_idempotent():
    for text in (ACFM_FILE, ACFM_PARAM_FILE, TORUS_FILE):
        once = algebra_to_text(parse_algebra_text(text))
        twice = algebra_to_text(parse_algebra_text(once))
        assert once == twice


def test_metric_line():
    alg = parse_algebra_text("generators a b\nmetric diag 4 9\n")
    assert alg.metric == (Fraction(4), Fraction(9))
    with pytest.raises(InvalidMetric):
        parse_algebra_text("generators a b\nmetric diag 1\n")


def test_file_errors_carry_lines():
    with pytest.raises(UndeclaredParameter) as info:
        parse_algebra_text("generators a b\nd a = q a^b\n")
    assert "line 2" in str(info.value)
    with pytest.raises(ExprSyntaxError):
        parse_algebra_text("generators a b\nd c = 1 a^b\n")
    with pytest.raises(ExprSyntaxError):
        parse_algebra_text("params a\ngenerators a b\n")


def test_form_expression_grammar():
    alg = parse_algebra_text(ACFM_PARAM_FILE)
    form = parse_form_expr("2*k alpha^gamma - 1/2 beta^gamma", alg.basis, alg.mode)
    k = alg.mode.symbol("k")
    expected = (2 * k) * alg.basis.monomial_form((0, 2)) + alg.mode.from_fraction(
        Fraction(-1, 2)
    ) * alg.basis.monomial_form((1, 2))
    assert form == expected
    bare = parse_form_expr("gamma", alg.basis, alg.mode)
    assert bare == alg.basis.gen(2)
    zero = parse_form_expr("0", alg.basis, alg.mode)
    assert zero.is_zero()


# ---------------------------------------------------------------------------
# CLI commands and exit codes
# ---------------------------------------------------------------------------


def test_check_success(acfm_path, capsys):
    assert main(["check", acfm_path]) == 0
    out = capsys.readouterr().out
    assert "d2: pass" in out
    assert "jacobi: pass" in out
    assert "unimodular: true" in out


def test_check_structural_failure(tmp_path, capsys):
    path = tmp_path / "broken.alg"
    path.write_text(BROKEN_FILE)
    assert main(["check", str(path)]) == 2
    out = capsys.readouterr().out
    assert "d2: FAIL" in out


def test_check_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.alg"
    path.write_text("generators a b\nd a = q a^b\n")
    assert main(["check", str(path)]) == 1
    err = capsys.readouterr().err
    assert "input error" in err


def test_cohomology_report(acfm_path, capsys):
    assert main(["cohomology", acfm_path, "--omega", "-1 gamma"]) == 0
    out = capsys.readouterr().out
    assert "invariant-complex" in out
    assert "dims: 0 1 2 1 0" in out
    assert "degree 1: dim 1; harmonic: 1 alpha;" in out


def test_cohomology_omega_not_closed(acfm_path, capsys):
    assert main(["cohomology", acfm_path, "--omega", "1 eta"]) == 2
    assert "OmegaNotClosed" in capsys.readouterr().err


def test_cohomology_torus(tmp_path, capsys):
    path = tmp_path / "torus.alg"
    path.write_text(TORUS_FILE)
    assert main(["cohomology", str(path), "--omega", "0"]) == 0
    assert "dims: 1 4 6 4 1" in capsys.readouterr().out


def test_cohomology_non_unimodular_reports_ranks_only(tmp_path, capsys):
    path = tmp_path / "affine.alg"
    path.write_text("generators e1 e2\nd e1 = 1 e1^e2\n")
    assert main(["cohomology", str(path), "--omega", "0"]) == 0
    out = capsys.readouterr().out
    assert "adjointness: not applicable" in out
    assert "dims: 1 1 0" in out
    assert "harmonic bases: not applicable" in out


def test_lcs_report_nonexact(acfm_path, capsys):
    assert main(["lcs", acfm_path, "--form", "2 alpha^eta + 1 beta^gamma"]) == 0
    out = capsys.readouterr().out
    assert "pfaffian: 4" in out
    assert "lee form: -1 gamma" in out
    assert "class: not exact" in out
    assert "lee homomorphism: identically 0 on automorphisms" in out


def test_lcs_report_exact(acfm_path, capsys):
    assert main(["lcs", acfm_path, "--form", "1 alpha^beta - 1 gamma^eta"]) == 0
    out = capsys.readouterr().out
    assert "class: exact" in out
    assert "primitive: 1 eta" in out
    assert "l = -1" in out or "l = 1" in out


def test_lcs_degenerate(acfm_path, capsys):
    assert main(["lcs", acfm_path, "--form", "1 alpha^eta + 1 beta^gamma + 1 alpha^beta - 1 gamma^eta"]) == 2
    captured = capsys.readouterr()
    assert "pfaffian: 0" in captured.out
    assert "Degenerate" in captured.err


def test_moser_pass(acfm_path, capsys):
    family = "2 alpha^eta + 1 beta^gamma; 2 alpha^eta + 2 beta^gamma"
    assert main(["moser", acfm_path, "--family", family]) == 0
    out = capsys.readouterr().out
    assert "verdict: pass" in out
    assert "difference primitive: 1/2 beta" in out


def test_moser_degenerate(acfm_path, capsys):
    family = "1 alpha^eta + 4 beta^gamma; 1 alpha^eta + 4 beta^gamma + 2 alpha^beta - 2 gamma^eta"
    assert main(["moser", acfm_path, "--family", family]) == 2
    out = capsys.readouterr().out
    assert "verdict: FAIL member 1" in out


def test_acfm_preset_reports(capsys):
    assert main(["acfm", "--param-mode", "--pfaffian-t"]) == 0
    out = capsys.readouterr().out
    assert "pfaffian t: 2*(t1*t2 - n*k*lambda*t3^2)" in out

    assert main(["acfm", "--param-mode", "--pfaffian-s"]) == 0
    out = capsys.readouterr().out
    assert "pfaffian s: -2*(s1*s2 - n*k*lambda*s3^2)" in out

    assert main(["acfm", "--n", "1", "--k", "1", "--lambda", "1", "--pfaffian-t"]) == 0
    out = capsys.readouterr().out
    assert "pfaffian t: 2*(t1*t2 - t3^2)" in out

    assert main(["acfm", "--n", "1", "--k", "1", "--lambda", "1", "--theorem1"]) == 0
    out = capsys.readouterr().out
    assert "family t lee form: -1 gamma" in out
    assert "family s lee form: 1 gamma" in out

    assert main(["acfm", "--n", "0", "--k", "1", "--lambda", "1"]) == 1
    assert "InvalidParams" in capsys.readouterr().err

    assert main(["acfm", "--param-mode", "--theorem1"]) == 1
    capsys.readouterr()


def test_json_reports_parse(acfm_path, capsys):
    assert main(["cohomology", acfm_path, "--omega", "-1 gamma", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dims"] == [0, 1, 2, 1, 0]
    assert payload["degrees"][2]["harmonic_basis"] == ["1 alpha^gamma", "1 alpha^eta"]

    assert main(["lcs", acfm_path, "--form", "2 alpha^eta + 1 beta^gamma", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["pfaffian"] == "4"
    assert payload["class"]["coords"] == ["0", "2"]


def test_reports_are_deterministic(acfm_path, capsys):
    runs = []
    for _ in range(2):
        assert main(["lcs", acfm_path, "--form", "2 alpha^eta + 1 beta^gamma"]) == 0
        runs.append(capsys.readouterr().out)
    assert runs[0] == runs[1]
