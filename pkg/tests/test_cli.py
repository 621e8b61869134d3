"""Command-line interface tests.

Everything goes through ``main(argv)`` so the tests exercise the same parsing,
dispatch, and exit-code paths as the installed console script.
"""

import json
import math

import pytest

from mockchar.cli import main, parse_complex
from mockchar.errors import InvalidParameter, QuadratureNoConvergence
from mockchar.kernel import theta1
from mockchar.mordell import mordell_h
from mockchar.report import SCHEMA, strip_volatile


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# literal parsing


def test_parse_complex_forms():
    assert parse_complex("i") == 1j
    assert parse_complex("2i") == 2j
    assert parse_complex("-0.5+1.2i") == -0.5 + 1.2j
    assert parse_complex("1e-3i") == 1e-3j
    assert parse_complex("0.17+0.05i") == 0.17 + 0.05j
    assert parse_complex("3") == 3 + 0j
    assert parse_complex("−0.5") == -0.5 + 0j
    assert parse_complex("0.3 + 0.1i") == 0.3 + 0.1j


def test_parse_complex_rejects_garbage():
    for bad in ("", "woof", "1+2x", "--3"):
        with pytest.raises(InvalidParameter):
            parse_complex(bad)


# ---------------------------------------------------------------------------
# eval


def test_eval_theta1_at_zero(capsys):
    code, out, _ = run(capsys, "eval", "theta1", "--u", "0", "--tau", "i")
    assert code == 0
    assert out.startswith("0")


def test_eval_theta1_matches_library(capsys):
    code, out, _ = run(capsys, "eval", "theta1", "--u", "0.13+0.07i", "--tau", "1.1i")
    assert code == 0
    want = theta1(0.13 + 0.07j, 1.1j)
    got = complex(out.split()[0].replace("·i", "j").replace("i", "j"))
    assert abs(got - want) < 1e-12


def test_eval_h_uses_quadrature_oracle(capsys):
    code, out, _ = run(capsys, "eval", "h", "--u", "0", "--tau", "i")
    assert code == 0
    got = float(out.split()[0].split("+")[0])
    assert abs(got - mordell_h(0.0, 1j)) < 1e-12
    assert abs(got - 0.669063339135868) < 1e-10


def test_eval_json_format(capsys):
    code, out, _ = run(
        capsys, "eval", "ak", "--K", "3", "--u", "0.17+0.05i", "--v", "0.31",
        "--tau", "2i", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["name"] == "ak"
    assert math.isfinite(doc["re"]) and math.isfinite(doc["im"])
    assert doc["bound"] < 1e-10


def test_eval_unknown_function_is_usage_error(capsys):
    code, _, err = run(capsys, "eval", "zeta", "--u", "0", "--tau", "i")
    assert code == 2
    assert "unknown function" in err


def test_eval_at_pole_is_domain_error(capsys):
    code, _, err = run(capsys, "eval", "ak", "--K", "2", "--u", "0", "--v", "0.3", "--tau", "i")
    assert code == 2
    assert "pole" in err.lower()


# ---------------------------------------------------------------------------
# expand


THETA1_LINES_9_8 = [
    "1/8 -1/2 0 1i",
    "1/8 1/2 0 -1i",
    "9/8 -3/2 0 -1i",
    "9/8 3/2 0 1i",
]


def test_expand_theta1_exact_lines(capsys):
    code, out, _ = run(capsys, "expand", "theta1", "--order", "9/8")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln.strip()]
    assert sorted(lines) == sorted(THETA1_LINES_9_8)
    # q-exponents arrive sorted
    qs = [eval_fraction(ln.split()[0]) for ln in lines]
    assert qs == sorted(qs)


def eval_fraction(text):
    from fractions import Fraction

    return Fraction(text)


def test_expand_json(capsys):
    code, out, _ = run(
        capsys, "expand", "A_K", "--K", "1", "--order", "2", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["object"] == "ak"
    assert doc["order"] == "2"
    assert len(doc["terms"]) > 4
    for term in doc["terms"]:
        assert set(term) == {"q", "z", "y", "coefficient"}


def test_expand_chi_integer_coefficients(capsys):
    code, out, _ = run(
        capsys, "expand", "chi-A", "--n", "0", "--l", "1",
        "--nprime", "0", "--lprime", "0", "--order", "2",
    )
    assert code == 0
    for line in out.splitlines():
        if not line.strip():
            continue
        coeff = line.split()[3]
        assert "/" not in coeff, line


def test_expand_unsupported_object(capsys):
    code, _, err = run(capsys, "expand", "eta", "--order", "2")
    assert code == 2
    assert "no q-expansion" in err


# ---------------------------------------------------------------------------
# verify


def test_verify_kernel_to_file(tmp_path, capsys):
    out_file = tmp_path / "reports.jsonl"
    code, out, _ = run(
        capsys, "verify", "--suite", "kernel", "--seed", "3", "--out", str(out_file)
    )
    assert code == 0
    lines = out_file.read_text().strip().splitlines()
    assert lines
    for line in lines:
        doc = json.loads(line)
        assert doc["schema"] == SCHEMA
        assert doc["status"] in ("pass", "fail", "skip")
    # check ids arrive in sorted order (single ordered sink)
    ids = [json.loads(ln)["check_id"] for ln in lines]
    assert ids == sorted(ids)
    assert "pass" in out


def test_verify_determinism_across_jobs(tmp_path, capsys):
    outs = []
    for jobs in ("1", "4"):
        f = tmp_path / ("r%s.jsonl" % jobs)
        code, _, _ = run(
            capsys, "verify", "--suite", "appell", "--seed", "7",
            "--jobs", jobs, "--out", str(f),
        )
        assert code == 0
        outs.append([strip_volatile(ln) for ln in f.read_text().strip().splitlines()])
    assert outs[0] == outs[1]


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nonsense")
    assert code == 2
    assert "unknown suite" in err


def test_verify_params_filter(tmp_path, capsys):
    f = tmp_path / "r.jsonl"
    code, _, _ = run(
        capsys, "verify", "--suite", "thm-modprop", "--params", "n=1,l=1",
        "--tol", "1e-5", "--out", str(f),
    )
    assert code == 0
    lines = f.read_text().strip().splitlines()
    assert lines
    for line in lines:
        doc = json.loads(line)
        assert doc["status"] == "pass", doc


# ---------------------------------------------------------------------------
# sweep


def test_sweep_rel1(capsys):
    code, out, _ = run(capsys, "sweep", "rel1", "--K", "1..4", "--seed", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "K,abs_err"
    assert len(lines) == 5
    for row in lines[1:]:
        k_str, err_str = row.split(",")
        assert int(k_str) in (1, 2, 3, 4)
        assert float(err_str) < 1e-9


def test_sweep_mordell_negative_range(capsys):
    code, out, _ = run(
        capsys, "sweep", "mordell-shift", "--s", "-0.5..0.49", "--samples", "4"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "s,abs_err"
    assert len(lines) == 5
    for row in lines[1:]:
        assert float(row.split(",")[1]) < 1e-7


def test_sweep_empty_range(capsys):
    code, _, err = run(capsys, "sweep", "rel1", "--K", "5..2")
    assert code == 2
    assert "empty range" in err


def test_sweep_unknown_name(capsys):
    code, _, err = run(capsys, "sweep", "eta-law", "--K", "1..3")
    assert code == 2
    assert "unknown sweep" in err


# ---------------------------------------------------------------------------
# exit code 3: convergence failure surfaces, never masked as a skip


def test_convergence_failure_exit_code():
    from mockchar.suites import CheckSpec, SuiteConfig, _run_one, exit_code

    def boom(ctx):
        raise QuadratureNoConvergence("synthetic quadrature stall")

    spec = CheckSpec("synthetic.boom", "synthetic", "synthetic blow-up", 1e-9, boom)
    reports = _run_one(spec, SuiteConfig(suites=("synthetic",)))
    assert len(reports) == 1
    assert reports[0].status == "fail"
    assert "convergence failure" in reports[0].note
    assert exit_code(reports) == 3
