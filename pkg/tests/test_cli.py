"""End-to-end command tests: emitted tables, determinism, exit codes and
config/flag precedence."""

import json
import math
import os
import subprocess
import sys

import pytest

from transmute_lab.cli import main

FOUR_PI = 4.0 * math.pi


def run_cli(args, tmp_path, name="out.csv", config_text=None, env_threads=None):
    out = tmp_path / name
    argv = list(args) + ["--out", str(out)]
    if config_text is not None:
        cfg = tmp_path / "cfg.txt"
        cfg.write_text(config_text, encoding="utf-8")
        argv += ["--config", str(cfg)]
    old = os.environ.get("TRANSMUTE_LAB_THREADS")
    try:
        if env_threads is not None:
            os.environ["TRANSMUTE_LAB_THREADS"] = str(env_threads)
        code = main(argv)
    finally:
        if env_threads is not None:
            if old is None:
                os.environ.pop("TRANSMUTE_LAB_THREADS", None)
            else:
                os.environ["TRANSMUTE_LAB_THREADS"] = old
    return code, out


def parse_csv(path):
    header, rows, footer = None, [], {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body and ":" not in body.split("=")[0]:
                key, value = body.split("=", 1)
                footer[key.strip()] = value.strip()
            continue
        if header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return header, rows, footer


def cell(row, header, name):
    value = row[header.index(name)]
    return None if value == "" else value


class TestFlow:
    def test_inverse_amplitude_runs_linearly(self, tmp_path):
        code, out = run_cli(["flow", "--energy", "1:2980.9579870417283:9,log"], tmp_path)
        assert code == 0
        header, rows, footer = parse_csv(out)
        xs, ys = [], []
        for row in rows:
            z_im = float(cell(row, header, "z_im"))
            ys.append(float(cell(row, header, "re_inv_tau")))
            xs.append(math.log(z_im))
        n = len(xs)
        mx, my = sum(xs) / n, sum(ys) / n
        slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
        assert slope == pytest.approx(-1.0 / FOUR_PI, rel=1e-12)
        assert float(footer["max_flow_defect"]) <= 1e-13

    def test_pole_row_keeps_inverse_column(self, tmp_path):
        code, out = run_cli(["flow", "--energy", str(math.e)], tmp_path)
        assert code == 0
        header, rows, _ = parse_csv(out)
        assert float(cell(rows[0], header, "re_inv_tau")) == 0.0
        assert cell(rows[0], header, "re_tau") is None

    def test_zero_anchor_flows_to_zero(self, tmp_path):
        cfg = "tau0_re = 0\ntau0_im = 0\n"
        code, out = run_cli(["flow", "--energy", "1:100:5,log"], tmp_path, config_text=cfg)
        assert code == 0
        header, rows, _ = parse_csv(out)
        for row in rows:
            assert float(cell(row, header, "re_tau")) == 0.0
            assert float(cell(row, header, "im_tau")) == 0.0

    def test_single_point_echoes_anchor(self, tmp_path):
        cfg = "tau0_re = 2.5\ntau0_im = -0.5\nz0_im = 1\n"
        code, out = run_cli(["flow", "--energy", "1"], tmp_path, config_text=cfg)
        assert code == 0
        header, rows, _ = parse_csv(out)
        assert float(cell(rows[0], header, "re_tau")) == pytest.approx(2.5, rel=1e-15)
        assert float(cell(rows[0], header, "im_tau")) == pytest.approx(-0.5, rel=1e-15)


class TestBind:
    def test_sharp_cutoff_closed_forms(self, tmp_path):
        code, out = run_cli(
            ["bind", "--epsilon", "1:4:3,log", "--lambda", "1", "--regulator", "sharp-cutoff"],
            tmp_path,
        )
        assert code == 0
        header, rows, footer = parse_csv(out)
        closed = [float(cell(r, header, "E_B_closed_form")) for r in rows]
        assert closed == pytest.approx(
            [math.exp(-FOUR_PI), math.exp(-2.0 * math.pi), math.exp(-math.pi)], rel=1e-15
        )
        assert float(footer["fit_slope_sharp_cutoff"]) == pytest.approx(1.0, abs=0.02)

    def test_well_slope_and_prefactors(self, tmp_path):
        code, out = run_cli(
            ["bind", "--epsilon", "0.5:2:5,log", "--regulator", "sharp-cutoff,gaussian,circular-well"],
            tmp_path,
        )
        assert code == 0
        _, _, footer = parse_csv(out)
        assert float(footer["fit_slope_circular_well"]) == pytest.approx(1.0, abs=0.02)
        assert float(footer["fit_slope_gaussian"]) == pytest.approx(1.0, abs=0.02)
        # smeared regulators generate measurably different O(1) prefactors
        gauss = float(footer["prefactor_vs_sharp_cutoff_gaussian"])
        well = float(footer["prefactor_vs_sharp_cutoff_circular_well"])
        assert 0.1 < gauss < 1.0 < well < 10.0

    def test_pure_delta_rows(self, tmp_path):
        code, out = run_cli(["bind", "--epsilon", "1", "--regulator", "pure-delta"], tmp_path)
        assert code == 0
        header, rows, _ = parse_csv(out)
        assert cell(rows[0], header, "status") == "NO_BOUND_STATE"
        assert cell(rows[0], header, "E_B_solver") is None


class TestTheorem:
    def test_schedule_and_footer(self, tmp_path):
        code, out = run_cli(["theorem", "--lambda", "1e2:1e12:6,log", "--epsilon", "1"], tmp_path)
        assert code == 0
        header, rows, footer = parse_csv(out)
        assert footer["monotone_beyond_peak"] == "true"
        assert footer["envelope_respected"] == "true"
        lams = [float(cell(r, header, "Lambda")) for r in rows]
        assert lams == [1e2, 1e4, 1e6, 1e8, 1e10, 1e12]
        peak = float(footer["peak_lambda"])
        mags = [float(cell(r, header, "abs_tau")) for r in rows]
        beyond = [m for lam, m in zip(lams, mags) if lam > peak]
        assert all(b < a for a, b in zip(beyond, beyond[1:]))

    def test_cutoff_below_z_rejected(self, tmp_path):
        code, _ = run_cli(["theorem", "--lambda", "0.5"], tmp_path)
        assert code == 2


class TestTransmute:
    def test_deviation_column_decreases(self, tmp_path):
        code, out = run_cli(["transmute"], tmp_path)
        assert code == 0
        header, rows, footer = parse_csv(out)
        devs = [float(cell(r, header, "deviation_from_closed_form")) for r in rows]
        assert all(b < a for a, b in zip(devs, devs[1:]))
        assert footer["monotone_deviation"] == "true"
        # the closed form echoed in the footer matches the final iterate
        assert float(footer["closed_form_re"]) == pytest.approx(float(cell(rows[-1], header, "re_tau")), rel=1e-8)


class TestScatter:
    def test_resonance_row(self, tmp_path):
        cfg = "e_b = 1\n"
        code, out = run_cli(["scatter", "--energy", "1"], tmp_path, config_text=cfg)
        assert code == 0
        header, rows, _ = parse_csv(out)
        row = rows[0]
        k = float(cell(row, header, "k"))
        assert float(cell(row, header, "L_from_im_tau")) == pytest.approx(4.0 / k, rel=1e-14)
        assert float(cell(row, header, "delta0")) == pytest.approx(0.5 * math.pi, rel=1e-15)

    def test_target_length_routes_agree_rowwise(self, tmp_path):
        code, out = run_cli(["scatter", "--energy", "1e-6:1e6:25,log"], tmp_path)
        assert code == 0
        header, rows, _ = parse_csv(out)
        for row in rows:
            l_opt = float(cell(row, header, "L_optical"))
            l_tau = float(cell(row, header, "L_from_im_tau"))
            assert abs(l_opt - l_tau) <= 1e-12 * max(abs(l_tau), 1e-300)
            assert cell(row, header, "status") == "OK"

    def test_pure_delta_all_zero(self, tmp_path):
        code, out = run_cli(["scatter", "--regulator", "pure-delta", "--energy", "0.5:2:3,log"], tmp_path)
        assert code == 0
        header, rows, _ = parse_csv(out)
        for row in rows:
            for name in ("re_f", "im_f", "dL_dtheta", "L_optical", "L_from_im_tau", "delta0", "unitarity_defect"):
                assert float(cell(row, header, name)) == 0.0

    def test_circular_well_matches_renormalized_at_low_energy(self, tmp_path):
        from transmute_lab.oracle.well import well_bound_state, well_from_coupling

        e_b = well_bound_state(well_from_coupling(2.0, 1.0))
        grid = "1e-8:1e-6:3,log"
        cfg_well = "model = circular-well\nepsilon = 2\na = 1\n"
        code_w, out_w = run_cli(["scatter", "--energy", grid], tmp_path, "well.csv", cfg_well)
        cfg_ren = f"model = renormalized\ne_b = {e_b!r}\n"
        code_r, out_r = run_cli(["scatter", "--energy", grid], tmp_path, "ren.csv", cfg_ren)
        assert code_w == 0 and code_r == 0
        header_w, rows_w, _ = parse_csv(out_w)
        header_r, rows_r, _ = parse_csv(out_r)
        for row_w, row_r in zip(rows_w, rows_r):
            for name in ("re_f", "im_f", "L_from_im_tau"):
                vw = float(cell(row_w, header_w, name))
                vr = float(cell(row_r, header_r, name))
                assert abs(vw - vr) <= 0.03 * max(abs(vr), 1e-300), name

    def test_sharp_cutoff_rows_above_cutoff_are_zero(self, tmp_path):
        cfg = "model = sharp-cutoff\nepsilon = 1\nlambda = 1\n"
        code, out = run_cli(["scatter", "--energy", "2:8:2,log"], tmp_path, config_text=cfg)
        assert code == 0
        header, rows, _ = parse_csv(out)
        for row in rows:
            assert float(cell(row, header, "L_from_im_tau")) == 0.0
            assert cell(row, header, "status") == "OK"


class TestDeterminism:
    def test_identical_runs_are_byte_identical(self, tmp_path):
        args = ["scatter", "--energy", "1e-3:1e3:40,log"]
        _, out1 = run_cli(args, tmp_path, "a.csv")
        _, out2 = run_cli(args, tmp_path, "b.csv")
        assert out1.read_bytes() == out2.read_bytes()

    def test_thread_counts_agree(self, tmp_path):
        args = ["bind", "--epsilon", "0.5:4:7,log"]
        _, out1 = run_cli(args, tmp_path, "t1.csv", env_threads=1)
        _, out4 = run_cli(args, tmp_path, "t4.csv", env_threads=4)
        assert out1.read_bytes() == out4.read_bytes()

    def test_float_rendering_fixed_width(self, tmp_path):
        _, out = run_cli(["scatter", "--energy", "1"], tmp_path)
        header, rows, _ = parse_csv(out)
        for value in rows[0][:-1]:
            if value:
                mantissa = value.split("e")[0].replace("-", "")
                assert len(mantissa) == 18  # d.dddddddddddddddd


class TestExitCodes:
    def test_usage_error_bad_grid(self, tmp_path):
        code, _ = run_cli(["scatter", "--energy", "banana"], tmp_path)
        assert code == 2

    def test_usage_error_nonpositive_grid(self, tmp_path):
        code, _ = run_cli(["scatter", "--energy=-5:5:3"], tmp_path)
        assert code == 2

    def test_usage_error_bad_model(self, tmp_path):
        code, _ = run_cli(["scatter"], tmp_path, config_text="model = warp\n")
        assert code == 2

    def test_usage_error_unreadable_config(self, tmp_path):
        code = main(["flow", "--config", str(tmp_path / "missing.txt")])
        assert code == 2

    def test_numerical_failure_suppresses_output(self, tmp_path):
        # a grid point exactly on the cutoff edge is a singular input
        cfg = "model = sharp-cutoff\nepsilon = 1\nlambda = 4\n"
        code, out = run_cli(["scatter", "--energy", "1:4:2,log"], tmp_path, config_text=cfg)
        assert code == 1
        assert not out.exists()


class TestConfigPrecedence:
    def test_flag_wins_over_file(self, tmp_path):
        cfg = "energy = 7\ne_b = 1\n"
        code, out = run_cli(["scatter", "--energy", "9"], tmp_path, config_text=cfg)
        assert code == 0
        header, rows, _ = parse_csv(out)
        assert float(cell(rows[0], header, "E")) == 9.0

    def test_file_used_when_no_flag(self, tmp_path):
        cfg = "energy = 7\n"
        code, out = run_cli(["scatter"], tmp_path, config_text=cfg)
        assert code == 0
        header, rows, _ = parse_csv(out)
        assert float(cell(rows[0], header, "E")) == 7.0

    def test_kinetic_constant_rescales_wavenumbers(self, tmp_path):
        cfg = "kinetic_constant = 4\ne_b = 1\n"
        code, out = run_cli(["scatter", "--energy", "1"], tmp_path, config_text=cfg)
        assert code == 0
        header, rows, _ = parse_csv(out)
        assert float(cell(rows[0], header, "k")) == 0.5
        # the dimensionless amplitude is unit-independent: delta0 unchanged
        assert float(cell(rows[0], header, "delta0")) == pytest.approx(0.5 * math.pi)

    def test_config_echoed_in_header(self, tmp_path):
        cfg = "e_b = 2\n"
        _, out = run_cli(["scatter", "--energy", "2"], tmp_path, config_text=cfg)
        text = out.read_text(encoding="utf-8")
        assert "# config: e_b=2" in text
        assert "# config: energy=2" in text


class TestTolOverride:
    def test_tightened_unitarity_tolerance_flags_rows(self, tmp_path):
        # the gaussian on-shell rows are unitary to rounding, so an absurdly
        # tight override flips them to UNITARITY_VIOLATION
        cfg = "model = gaussian\nepsilon = 1\na = 0.5\n"
        code, out = run_cli(
            ["scatter", "--energy", "0.5:2:3,log", "--tol-override", "unitarity_defect_tol=1e-20"],
            tmp_path,
            config_text=cfg,
        )
        assert code == 0
        header, rows, _ = parse_csv(out)
        assert any(cell(r, header, "status") == "UNITARITY_VIOLATION" for r in rows)

    def test_malformed_override_is_usage_error(self, tmp_path):
        code, _ = run_cli(["scatter", "--tol-override", "nonsense"], tmp_path)
        assert code == 2


class TestTheoremUsage:
    def test_epsilon_grid_rejected(self, tmp_path):
        code, _ = run_cli(["theorem", "--epsilon", "1:2:3,log"], tmp_path)
        assert code == 2


class TestJson:
    def test_json_output_parses(self, tmp_path):
        code, out = run_cli(["scatter", "--energy", "1:4:3,log", "--format", "json"], tmp_path, "out.json")
        assert code == 0
        doc = json.loads(out.read_text(encoding="utf-8"))
        assert doc["command"] == "scatter"
        assert len(doc["rows"]) == 3
        names = [c["name"] for c in doc["columns"]]
        assert names[0] == "E" and "delta0" in names

    def test_json_deterministic(self, tmp_path):
        args = ["bind", "--epsilon", "1:4:3,log", "--format", "json"]
        _, out1 = run_cli(args, tmp_path, "a.json")
        _, out2 = run_cli(args, tmp_path, "b.json")
        assert out1.read_bytes() == out2.read_bytes()


def test_console_script_entry_point(tmp_path):
    out = tmp_path / "cli.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "transmute_lab.cli", "scatter", "--energy", "1", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert out.exists()
