import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from cfverify.cf_core import CFSpec, load_spec, preset
from cfverify.cli import VerificationVerdict, main, verify
from cfverify.numerics import ConstantExpr


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


# --- eval -------------------------------------------------------------------

def test_eval_conjecture_depth_4():
    code, out, _ = run("eval", "--preset", "conjecture-pi4", "--depth", "4", "--digits", "8")
    assert code == 0 and out == "-40/51 ≈ -0.78431372\n"


def test_eval_euler_depth_2():
    code, out, _ = run("eval", "--preset", "euler-pi4", "--depth", "2", "--digits", "4")
    assert code == 0 and out == "2/3 ≈ 0.6666\n"


def test_eval_exact_by_default():
    assert run("eval", "--preset", "gauss-pi4", "--depth", "2") == (0, "-3/4\n", "")


def test_eval_show_all():
    code, out, _ = run("eval", "--preset", "conjecture-pi4", "--depth", "3", "--show-all")
    assert out.splitlines() == ["f_1 = -1", "f_2 = -3/4", "f_3 = -19/24"]


def test_eval_expressions():
    code, out, _ = run("eval", "--a-expr", "(n-1)^2", "--a-head", "1", "--b-expr", "-(2*n-1)",
                       "--depth", "4")
    assert code == 0 and out == "-40/51\n"


def test_eval_json():
    code, out, _ = run("eval", "--preset", "euler-pi4", "--depth", "2", "--digits", "3", "--json")
    assert json.loads(out) == {"depth": 2, "value": "2/3", "decimal": "0.666"}


def test_eval_missing_b_expr_is_usage_error():
    code, _, err = run("eval", "--a-expr", "(n-1)^2")
    assert code == 2 and "--b-expr" in err


def test_eval_parse_error_exit_2():
    code, _, err = run("eval", "--a-expr", "2n", "--b-expr", "1")
    assert code == 2 and "offset 1" in err


def test_eval_pole_exit_3():
    code, _, err = run("eval", "--a-expr", "1", "--b-expr", "1/(n-2)", "--depth", "3")
    assert code == 3 and "TailPoleError" in err


def test_eval_undefined_convergent_exit_3():
    code, _, _ = run("eval", "--a-expr", "1", "--b-expr", "n-1", "--depth", "1")
    assert code == 3


def test_eval_two_sources_rejected():
    code, _, _ = run("eval", "--preset", "euler-pi4", "--a-expr", "1", "--b-expr", "1")
    assert code == 2


def test_eval_bad_preset_and_depth():
    assert run("eval", "--preset", "nope")[0] == 2
    assert run("eval", "--preset", "euler-pi4", "--depth", "0")[0] == 2


def test_eval_file(tmp_path):
    path = tmp_path / "c.cf"
    path.write_text(preset("conjecture-pi4").dumps())
    assert run("eval", "--file", str(path), "--depth", "4")[1] == "-40/51\n"
    assert run("eval", "--file", str(tmp_path / "missing.cf"))[0] == 2
    bad = tmp_path / "bad.cf"
    bad.write_text("{")
    assert run("eval", "--file", str(bad))[0] == 2


# --- gauss ------------------------------------------------------------------

def test_gauss_emit_equals_preset(tmp_path):
    path = tmp_path / "gauss.cf"
    code, _, _ = run("gauss", "--a", "1/2", "--b", "0", "--c", "1/2", "--z", "-1", "--negate",
                     "--emit", str(path))
    assert code == 0
    assert load_spec(path) == preset("gauss-pi4")


def test_gauss_depth_2():
    code, out, _ = run("gauss", "--a", "1/2", "--b", "0", "--c", "1/2", "--z", "-1", "--negate",
                       "--depth", "2")
    assert code == 0 and out.splitlines()[-1] == "f_2 = -3/4"


def test_gauss_arctan_depth_1():
    code, out, _ = run("gauss", "--a", "1/2", "--b", "1", "--c", "3/2", "--z", "-1", "--depth", "1")
    assert code == 0 and out.splitlines()[-1] == "f_1 = 1"


def test_gauss_emit_stdout():
    code, out, _ = run("gauss", "--a", "1/2", "--b", "0", "--c", "1/2", "--z", "-1", "--negate",
                       "--emit", "-")
    assert CFSpec.loads(out) == preset("gauss-pi4")


def test_gauss_pole_exit_3():
    code, _, err = run("gauss", "--a", "1", "--b", "1", "--c", "-2", "--z", "1/2")
    assert code == 3 and "DCoefficientPoleError" in err


def test_gauss_bad_rational_exit_2():
    assert run("gauss", "--a", "0.5", "--b", "0", "--c", "1/2", "--z", "-1")[0] == 2
    assert run("gauss", "--a", "1/2", "--b", "0", "--c", "1/2", "--z", "0")[0] == 2


# --- transform --------------------------------------------------------------

def _transform(*extra):
    code, out, err = run("transform", *extra)
    body = out[out.index("{"):] if "{" in out else ""
    return code, out, body


def test_transform_scale_expr():
    code, out, body = _transform("--preset", "gauss-pi4", "--scale-expr", "-(2*n-1)")
    assert code == 0
    assert CFSpec.loads(body) == preset("conjecture-pi4")
    table = out.splitlines()[:6]
    assert table[1].split() == ["1", "-1", "-1", "1", "->", "1", "-1"]
    assert len(table) == 6


def test_transform_match_b_expr():
    _, _, a = _transform("--preset", "gauss-pi4", "--scale-expr", "-(2*n-1)")
    _, _, b = _transform("--preset", "gauss-pi4", "--match-b-expr", "-(2*n-1)")
    assert a == b


def test_transform_identity():
    code, _, body = _transform("--preset", "conjecture-pi4", "--scale-expr", "1")
    assert code == 0 and CFSpec.loads(body) == preset("conjecture-pi4")


def test_transform_emit_file(tmp_path):
    path = tmp_path / "t.cf"
    code, out, _ = _transform("--preset", "gauss-pi4", "--scale-expr", "-(2*n-1)", "--emit", str(path))
    assert code == 0 and out.endswith(f"wrote {path}\n")
    assert load_spec(path) == preset("conjecture-pi4")


def test_transform_scale_file(tmp_path):
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"head": [], "tail": {"num": ["1", "-2"], "den": ["1"], "start": 1}}))
    _, _, body = _transform("--preset", "gauss-pi4", "--scale-file", str(path))
    assert CFSpec.loads(body) == preset("conjecture-pi4")


def test_transform_zero_scaling_exit_3():
    code, _, err = run("transform", "--preset", "gauss-pi4", "--scale-expr", "n-3")
    assert code == 3 and "ZeroScalingError" in err
    assert run("transform", "--preset", "gauss-pi4", "--scale-expr", "1",
               "--scale-head", "2,0")[0] == 3


def test_transform_needs_one_scaling():
    assert run("transform", "--preset", "gauss-pi4")[0] == 2
    assert run("transform", "--preset", "gauss-pi4", "--scale-expr", "1", "--match-b-expr", "1")[0] == 2


# --- diagnose ---------------------------------------------------------------

def test_diagnose_conjecture():
    code, out, _ = run("diagnose", "--preset", "conjecture-pi4")
    assert code == 0
    assert out == "limit 1/4, WorpitzkyBoundary, rho decreasing from n=2, sum|b| diverges\n"


def test_diagnose_euler():
    code, out, _ = run("diagnose", "--preset", "euler-pi4")
    assert out.startswith("limit ∞, IndeterminateByRatioTest")


def test_diagnose_degree_remark():
    code, out, _ = run("diagnose", "--a-expr", "(n-1)^2", "--b-expr", "1")
    assert code == 0 and out.startswith("limit ∞")


def test_diagnose_json():
    code, out, _ = run("diagnose", "--preset", "conjecture-pi4", "--json")
    d = json.loads(out)
    assert d["limit"] == "1/4" and d["regime"] == "WorpitzkyBoundary"
    assert d["rho_monotone_from"] == 2 and d["abs_b_sum_diverges"] is True


# --- verify -----------------------------------------------------------------

def test_verify_conjecture():
    code, out, _ = run("verify", "--preset", "conjecture-pi4", "--target", "-pi/4",
                       "--digits", "10", "--max-depth", "100")
    assert code == 0 and out.startswith("verified: ")


def test_verify_wrong_sign():
    code, out, _ = run("verify", "--preset", "conjecture-pi4", "--target", "pi/4",
                       "--digits", "10", "--max-depth", "100")
    assert code == 1 and out.startswith("NOT verified")


def test_verify_euler_sublinear():
    code, out, _ = run("verify", "--preset", "euler-pi4", "--target", "pi/4",
                       "--digits", "6", "--max-depth", "100", "--json")
    d = json.loads(out)
    assert code == 1 and d["verified"] is False and d["depth_used"] == 100
    assert d["achieved_decimals"] == 2


def test_verify_target_parse_errors():
    assert run("verify", "--preset", "euler-pi4", "--target", "pi^2")[0] == 2
    assert run("verify", "--preset", "euler-pi4", "--target", "n")[0] == 2
    assert run("verify", "--preset", "euler-pi4")[0] == 2


def test_verify_function_and_verdict():
    v = verify(preset("conjecture-pi4"), ConstantExpr(Fraction(-1, 4)), 10, 30)
    assert v.verified and v.achieved_decimals >= 10 and v.depth_used <= 30
    v = verify(preset("euler-pi4"), ConstantExpr(Fraction(1, 4)), 3, 10)
    assert not v.verified and v.depth_used == 10
    with pytest.raises(ValueError):
        VerificationVerdict(True, 2, 3, 1)


def test_verify_exact_rational_target():
    code, _, _ = run("verify", "--preset", "gauss-pi4", "--target", "-1", "--digits", "3",
                     "--max-depth", "1")
    assert code == 0


# --- compare ----------------------------------------------------------------

def test_compare_csv():
    code, out, _ = run("compare", "--depths", "5,15,25", "--digits", "40", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 4
    assert lines[0] == "n,series_error,cf_error,error_ratio,cf_decimals"
    assert [line.split(",")[0] for line in lines[1:]] == ["5", "15", "25"]
    assert [line.split(",")[-1] for line in lines[1:]] == ["3", "11", "19"]


def test_compare_text_single_row():
    code, out, _ = run("compare", "--depths", "1", "--format", "text")
    assert code == 0 and len(out.splitlines()) == 3


def test_compare_bracket_too_wide():
    code, _, err = run("compare", "--depths", "5", "--digits", "2")
    assert code == 3 and "BracketTooWideError" in err


def test_compare_json_and_exact():
    code, out, _ = run("compare", "--depths", "5", "--json")
    d = json.loads(out)
    assert d["n"] == 5 and d["cf_decimals"] == 3 and "/" in d["cf_error"]
    code, out, _ = run("compare", "--depths", "5", "--format", "csv", "--exact")
    assert "/" in out.splitlines()[1]


def test_env_default_digits(monkeypatch):
    monkeypatch.setenv("CFVERIFY_DIGITS", "2")
    assert run("compare", "--depths", "5")[0] == 3
    monkeypatch.setenv("CFVERIFY_DIGITS", "30")
    assert run("compare", "--depths", "5")[0] == 0
    monkeypatch.setenv("CFVERIFY_DIGITS", "lots")
    assert run("compare", "--depths", "5")[0] == 2


# --- contract ---------------------------------------------------------------

DETERMINISM_CASES = [
    ("eval", "--preset", "conjecture-pi4", "--depth", "30", "--show-all", "--digits", "12"),
    ("gauss", "--a", "1/2", "--b", "1", "--c", "3/2", "--z", "-1", "--depth", "9", "--emit", "-"),
    ("transform", "--preset", "euler-pi4", "--match-b-expr", "2*n+1"),
    ("diagnose", "--preset", "gauss-pi4"),
    ("verify", "--preset", "conjecture-pi4", "--target", "-pi/4", "--digits", "20"),
    ("compare", "--depths", "3,9,27", "--format", "csv"),
]


@pytest.mark.parametrize("argv", DETERMINISM_CASES, ids=lambda a: a[0])
def test_deterministic_output(argv):
    assert run(*argv) == run(*argv)


def test_no_command_is_usage_error():
    assert run()[0] == 2


def test_help_exits_zero():
    assert run("--help")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cfverify", "eval", "--preset", "conjecture-pi4",
                           "--depth", "4", "--digits", "8"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "-40/51 ≈ -0.78431372\n"
