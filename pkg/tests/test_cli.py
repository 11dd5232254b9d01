"""End-to-end command-line behaviour: tables, exit codes, round trips."""

import json
import math

import numpy as np
import pytest

from tanhspec.cli import main, parse_points, read_coefficients, read_table, write_table

from oracles import fd_derivative


def run(*argv):
    return main(list(argv))


def _expand_sech(tmp_path, fmt="csv", mode="full", alpha="-0.5", beta="-0.5", n="64"):
    out = tmp_path / f"coeffs.{fmt}"
    code = run(
        "expand", "--fn", "sech", "--alpha", alpha, "--beta", beta,
        "--mode", mode, "--n", n, "--out", str(out), "--format", fmt,
    )
    return code, out


class TestExpand:
    def test_sech_chebyshev_t(self, tmp_path, capsys):
        code, out = _expand_sech(tmp_path)
        assert code == 0
        coeffs = read_coefficients(str(out))
        assert coeffs.size == 64
        assert abs(coeffs[-1]) < 1e-10
        assert "tail |c_63|" in capsys.readouterr().err

    def test_alpha_domain_error(self, tmp_path, capsys):
        code, _ = _expand_sech(tmp_path, alpha="-1.0")
        assert code == 2
        err = capsys.readouterr().err
        assert err.startswith("error:") and "alpha must exceed -1" in err

    def test_half_mode_parameter_mismatch(self, tmp_path, capsys):
        code = run(
            "expand", "--fn", "sech", "--alpha", "0.5", "--beta", "0.0",
            "--mode", "half", "--n", "16", "--out", str(tmp_path / "x.csv"),
        )
        assert code == 2
        assert "half mode requires alpha = beta" in capsys.readouterr().err

    def test_unknown_builtin(self, tmp_path, capsys):
        code = run(
            "expand", "--fn", "sinc", "--alpha", "0.0", "--beta", "0.0",
            "--n", "8", "--out", str(tmp_path / "x.csv"),
        )
        assert code == 2
        assert "unknown builtin" in capsys.readouterr().err

    def test_samples_input_exact_on_low_degree(self, tmp_path):
        # the rational barycentric scheme reproduces cubics in x exactly
        # (the expansion grid for n=8 stays inside the sampled window)
        xs = np.linspace(-8.0, 8.0, 33)
        rows = [{"x": x, "value": x**3 - 2.0 * x} for x in xs]
        sf = tmp_path / "samples.csv"
        write_table(str(sf), ("x", "value"), rows, "csv")
        out = tmp_path / "c.csv"
        code = run(
            "expand", "--in", str(sf), "--alpha", "-0.5", "--beta", "-0.5",
            "--n", "8", "--out", str(out),
        )
        assert code == 0
        from tanhspec import BasisSpec, JacobiParams, analyze_full

        want = analyze_full(
            BasisSpec(JacobiParams(-0.5, -0.5)), lambda x: x**3 - 2.0 * x, 8
        ).coeffs
        got = read_coefficients(str(out))
        assert np.max(np.abs(got - want)) < 1e-12 * np.max(np.abs(want))

    def test_samples_input_smooth_function(self, tmp_path):
        xs = np.linspace(-10.0, 10.0, 161)
        rows = [{"x": x, "value": 1.0 / math.cosh(x)} for x in xs]
        sf = tmp_path / "samples.csv"
        write_table(str(sf), ("x", "value"), rows, "csv")
        out = tmp_path / "c.csv"
        assert run(
            "expand", "--in", str(sf), "--alpha", "-0.5", "--beta", "-0.5",
            "--n", "16", "--out", str(out),
        ) == 0
        direct = _expand_sech(tmp_path, n="16")[1]
        got = read_coefficients(str(out))
        want = read_coefficients(str(direct))
        # fourth-order interpolation of densely sampled sech
        assert np.max(np.abs(got[:6] - want[:6])) < 1e-6

    def test_samples_must_increase(self, tmp_path, capsys):
        sf = tmp_path / "bad.csv"
        write_table(str(sf), ("x", "value"), [{"x": 1.0, "value": 0.1}, {"x": 0.0, "value": 0.2}], "csv")
        code = run(
            "expand", "--in", str(sf), "--alpha", "0.0", "--beta", "0.0",
            "--n", "8", "--out", str(tmp_path / "c.csv"),
        )
        assert code == 2
        assert "strictly increasing" in capsys.readouterr().err


class TestEvalAndDiff:
    def test_eval_basis_vector(self, tmp_path):
        cf = tmp_path / "c.csv"
        write_table(str(cf), ("m", "c"), [{"m": 0, "c": 1.0}], "csv")
        out = tmp_path / "v.csv"
        code = run(
            "eval", "--in", str(cf), "--alpha", "-0.5", "--beta", "-0.5",
            "--points", "0", "--out", str(out),
        )
        assert code == 0
        rows = read_table(str(out), ("x", "value"))
        assert math.isclose(rows[0]["value"], 1.0 / math.sqrt(math.pi), rel_tol=1e-12)

    def test_diff_matches_finite_difference_of_eval(self, tmp_path):
        _, cf = _expand_sech(tmp_path, n="48")
        vout = tmp_path / "d.csv"
        code = run(
            "diff", "--in", str(cf), "--alpha", "-0.5", "--beta", "-0.5",
            "--points", "0.7", "--out", str(vout),
        )
        assert code == 0
        deriv = read_table(str(vout), ("x", "value"))[0]["value"]

        def eval_at(x):
            out = tmp_path / "tmp_eval.csv"
            assert run(
                "eval", "--in", str(cf), "--alpha", "-0.5", "--beta", "-0.5",
                "--points", repr(x), "--out", str(out),
            ) == 0
            return read_table(str(out), ("x", "value"))[0]["value"]

        fd = fd_derivative(eval_at, 0.7, 1e-4)
        assert abs(deriv - fd) <= 1e-6

    def test_empty_coefficient_file(self, tmp_path, capsys):
        cf = tmp_path / "empty.csv"
        cf.write_text("m,c\n")
        code = run(
            "eval", "--in", str(cf), "--alpha", "0.0", "--beta", "0.0",
            "--points", "0", "--out", str(tmp_path / "v.csv"),
        )
        assert code == 2
        assert "error:" in capsys.readouterr().err


class TestFourierCommand:
    def test_profile(self, tmp_path):
        cf = tmp_path / "c.csv"
        write_table(str(cf), ("m", "c"), [{"m": 0, "c": 1.0}], "csv")
        out = tmp_path / "ft.csv"
        code = run(
            "ft", "--in", str(cf), "--alpha", "0.0", "--beta", "0.0",
            "--points", "0,1,2", "--out", str(out),
        )
        assert code == 0
        rows = read_table(str(out), ("xi", "re", "im"))
        ratios = [r["re"] * math.cosh(math.pi * r["xi"] / 2.0) for r in rows]
        assert max(ratios) - min(ratios) <= 1e-12
        assert all(abs(r["im"]) <= 1e-14 for r in rows)

    def test_half_mode_rejected(self, tmp_path, capsys):
        cf = tmp_path / "c.csv"
        write_table(str(cf), ("m", "c"), [{"m": 0, "c": 1.0}, {"m": 1, "c": 0.0}], "csv")
        code = run(
            "ft", "--in", str(cf), "--alpha", "0.5", "--beta", "0.5",
            "--mode", "half", "--points", "0", "--out", str(tmp_path / "o.csv"),
        )
        assert code == 2
        assert "full-mode" in capsys.readouterr().err


class TestSolve:
    def test_manufactured_residual(self, tmp_path, capsys):
        # u = sech^{1/2} x tanh x solves u' + u = f with f carrying exactly
        # three coefficients: sqrt(pi/2) (b0, -1, -b1)
        s = math.sqrt(math.pi / 2.0)
        f_rows = [
            {"m": 0, "c": s * math.sqrt(2.0) / 4.0},
            {"m": 1, "c": -s},
            {"m": 2, "c": -s * 0.75},
        ]
        f_in = tmp_path / "f.csv"
        write_table(str(f_in), ("m", "c"), f_rows, "csv")
        out = tmp_path / "u.json"
        vals = tmp_path / "uvals.json"
        code = run(
            "solve", "--alpha", "-0.5", "--beta", "-0.5", "--n", "96",
            "--a-fn", "gaussian:0", "--f-in", str(f_in), "--bandwidth", "0",
            "--points", "lin:-2:2:5", "--values-out", str(vals),
            "--out", str(out), "--format", "json",
        )
        assert code == 0
        captured = capsys.readouterr()
        line = [ln for ln in captured.out.splitlines() if ln.startswith("residual=")][0]
        assert float(line.split("=", 1)[1]) <= 1e-9
        coeffs = read_coefficients(str(out))
        assert math.isclose(coeffs[1], -s, rel_tol=1e-10)
        vrows = read_table(str(vals), ("x", "value"))
        for r in vrows:
            want = math.cosh(r["x"]) ** -0.5 * math.tanh(r["x"])
            assert abs(r["value"] - want) <= 1e-9

    def test_solution_roundtrips_through_eval(self, tmp_path):
        out = tmp_path / "u.json"
        assert run(
            "solve", "--alpha", "-0.5", "--beta", "-0.5", "--n", "64",
            "--a-fn", "gaussian:0", "--f-fn", "sech", "--bandwidth", "0",
            "--out", str(out), "--format", "json",
        ) == 0
        vout = tmp_path / "v.json"
        assert run(
            "eval", "--in", str(out), "--alpha", "-0.5", "--beta", "-0.5",
            "--points", "lin:-1:1:3", "--out", str(vout), "--format", "json",
        ) == 0
        rows = read_table(str(vout), ("x", "value"))
        assert len(rows) == 3 and all(np.isfinite(r["value"]) for r in rows)

    def test_bandwidth_too_large(self, tmp_path, capsys):
        code = run(
            "solve", "--alpha", "-0.5", "--beta", "-0.5", "--n", "8",
            "--a-fn", "sech", "--f-fn", "sech", "--bandwidth", "8",
            "--out", str(tmp_path / "u.csv"),
        )
        assert code == 2
        assert "bandwidth" in capsys.readouterr().err

    def test_zero_coefficient_rejected(self, tmp_path, capsys):
        # a = 0 builtin: gaussian scaled by zero is the constant 1, so use
        # a sampled file of zeros instead
        sf = tmp_path / "zeros.csv"
        write_table(str(sf), ("x", "value"), [{"x": float(x), "value": 0.0} for x in range(-4, 5)], "csv")
        code = run(
            "solve", "--alpha", "-0.5", "--beta", "-0.5", "--n", "16",
            "--a-in", str(sf), "--f-fn", "sech", "--bandwidth", "2",
            "--out", str(tmp_path / "u.csv"),
        )
        assert code == 2
        assert "singular operator" in capsys.readouterr().err


class TestBasisCommand:
    def test_center_values(self, tmp_path):
        out = tmp_path / "b.csv"
        code = run(
            "basis", "--alpha", "-0.5", "--beta", "-0.5", "--m-list", "0,1,2,3,4",
            "--points", "lin:-5:5:11", "--out", str(out),
        )
        assert code == 0
        rows = read_table(str(out), ("x", "phi_0", "phi_1", "phi_2", "phi_3", "phi_4"))
        center = [r for r in rows if r["x"] == 0.0][0]
        assert math.isclose(center["phi_0"], 1.0 / math.sqrt(math.pi), rel_tol=1e-12)
        assert abs(center["phi_1"]) <= 1e-15
        assert math.isclose(center["phi_2"], -math.sqrt(2.0 / math.pi), rel_tol=1e-12)

    def test_l2_normalisation_by_trapezoid(self, tmp_path):
        out = tmp_path / "b.csv"
        assert run(
            "basis", "--alpha", "-0.5", "--beta", "-0.5", "--m-list", "0,1,2,3,4",
            "--points", "lin:-30:30:1201", "--out", str(out),
        ) == 0
        rows = read_table(str(out), ("x", "phi_0", "phi_1", "phi_2", "phi_3", "phi_4"))
        xs = np.array([r["x"] for r in rows])
        for m in range(5):
            vals = np.array([r[f"phi_{m}"] for r in rows])
            mass = float(np.trapezoid(vals * vals, xs))
            assert 1.0 - 1e-6 <= mass <= 1.0 + 1e-12


class TestTablesAndDeterminism:
    @pytest.mark.parametrize("fmt", ["csv", "json"])
    def test_roundtrip_exact(self, tmp_path, fmt):
        rng = np.random.default_rng(0)
        rows = [{"m": m, "c": float(v)} for m, v in enumerate(rng.standard_normal(9))]
        path = tmp_path / f"t.{fmt}"
        write_table(str(path), ("m", "c"), rows, fmt)
        back = read_table(str(path), ("m", "c"))
        for a, b in zip(rows, back):
            assert a["c"] == b["c"] and float(a["m"]) == b["m"]

    def test_byte_identical_reruns(self, tmp_path):
        d1 = tmp_path / "a"
        d2 = tmp_path / "b"
        d1.mkdir()
        d2.mkdir()
        p1 = _expand_sech(d1)[1]
        p2 = _expand_sech(d2)[1]
        assert p1.read_bytes() == p2.read_bytes()

    def test_numerical_failure_exit_code(self, tmp_path, capsys, monkeypatch):
        import tanhspec.cli as cli_mod

        def boom(*args, **kwargs):
            raise np.linalg.LinAlgError("rank-deficient system: synthetic")

        monkeypatch.setattr(cli_mod, "solve_first_order", boom)
        code = run(
            "solve", "--alpha", "-0.5", "--beta", "-0.5", "--n", "16",
            "--a-fn", "gaussian:0", "--f-fn", "sech", "--bandwidth", "0",
            "--out", str(tmp_path / "u.csv"),
        )
        assert code == 3
        assert capsys.readouterr().err.startswith("error:")

    def test_parse_points(self):
        assert np.allclose(parse_points("lin:0:1:3"), [0.0, 0.5, 1.0])
        assert np.allclose(parse_points("1,2.5,-3"), [1.0, 2.5, -3.0])
        with pytest.raises(ValueError):
            parse_points("lin:0:1")
