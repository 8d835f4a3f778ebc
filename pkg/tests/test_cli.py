import json

import numpy as np
import pytest

from paramix import cli
from paramix.core import Coherent, ModelParams, Thermal, Vacuum, mean_photon_numbers
from paramix.gaussian import full_report


def run_cli(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def run_usage_error(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    _, err = capsys.readouterr()
    return exc.value.code, err


class TestParseArgs:
    def test_photons_defaults(self):
        cfg = cli.parse_args(["photons", "--tau", "0.9"])
        assert cfg.command == "photons"
        assert cfg.tau == 0.9
        assert cfg.y == 0.0
        assert cfg.w1 == 10.0 and cfg.w2 == 10.0
        assert cfg.state == Vacuum()
        assert cfg.fmt == "csv"
        assert cfg.precision == 9

    def test_state_grammar(self):
        cfg = cli.parse_args(["photons", "--tau", "0.5", "--state", "coherent:1.5,-0.5"])
        assert cfg.state == Coherent(alpha=1.5 - 0.5j)
        cfg = cli.parse_args(["photons", "--tau", "0.5", "--state", "thermal:1,2"])
        assert cfg.state == Thermal(1.0, 2.0)

    def test_oracle_check_flags(self):
        cfg = cli.parse_args(["oracle-check", "--tau", "0.9", "--y", "0.9",
                              "--state", "thermal:1,2", "--nmax", "48",
                              "--tol", "1e-5"])
        assert cfg.nmax == 48
        assert cfg.tol == 1e-5
        assert cfg.fmt == "json"

    def test_sweep_y_range(self):
        cfg = cli.parse_args(["sweep", "--var", "y", "--from", "0", "--to", "0.9",
                              "--steps", "10", "--tau", "0.7"])
        assert cfg.var == "y"
        assert cfg.steps == 10
        assert cfg.tau == 0.7


class TestUsageErrors:
    def test_y_out_of_range(self, capsys):
        code, err = run_usage_error(["photons", "--tau", "0.5", "--y", "1.0"], capsys)
        assert code == 2
        assert "y must lie in [0,1)" in err

    def test_negative_tau(self, capsys):
        code, err = run_usage_error(["photons", "--tau", "-0.5"], capsys)
        assert code == 2
        assert "tau" in err

    def test_unknown_state(self, capsys):
        code, err = run_usage_error(
            ["photons", "--tau", "0.5", "--state", "squeezed:1"], capsys)
        assert code == 2
        assert "not recognized" in err

    def test_coherent_state_missing_component(self, capsys):
        code, err = run_usage_error(
            ["photons", "--tau", "0.5", "--state", "coherent:1"], capsys)
        assert code == 2

    def test_thermal_state_negative(self, capsys):
        code, err = run_usage_error(
            ["photons", "--tau", "0.5", "--state", "thermal:-1,2"], capsys)
        assert code == 2
        assert "nonnegative" in err

    def test_steps_too_small(self, capsys):
        code, err = run_usage_error(
            ["sweep", "--var", "y", "--from", "0", "--to", "0.9",
             "--steps", "1", "--tau", "0.5"], capsys)
        assert code == 2

    def test_sweep_tau_conflict(self, capsys):
        code, err = run_usage_error(
            ["sweep", "--var", "tau", "--from", "0", "--to", "1",
             "--tau", "0.5"], capsys)
        assert code == 2
        assert "conflicts" in err

    def test_sweep_y_requires_tau(self, capsys):
        code, err = run_usage_error(
            ["sweep", "--var", "y", "--from", "0", "--to", "0.9"], capsys)
        assert code == 2
        assert "required when sweeping y" in err

    def test_sweep_y_range_check(self, capsys):
        code, err = run_usage_error(
            ["sweep", "--var", "y", "--from", "0", "--to", "1.2",
             "--tau", "0.5"], capsys)
        assert code == 2

    def test_unknown_preset(self, capsys):
        code, err = run_usage_error(["figure", "fig9z"], capsys)
        assert code == 2


class TestPhotons:
    def test_reference_value(self, capsys):
        code, out, _ = run_cli(["photons", "--tau", "0.9", "--y", "0"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "tau,y,n1,n2,difference"
        vals = [float(tok) for tok in lines[1].split(",")]
        assert np.isclose(vals[2], 1.05373658815863316, atol=1e-7)
        assert vals[4] == 0.0

    def test_csv_contract(self, capsys):
        code, out, _ = run_cli(["photons", "--tau", "0.5"], capsys)
        assert code == 0
        assert out.endswith("\n") and not out.endswith("\n\n")
        assert "\r" not in out
        assert len(out.splitlines()) == 2

    def test_matches_library(self, capsys):
        code, out, _ = run_cli(
            ["photons", "--tau", "0.8", "--y", "0.4", "--state", "thermal:1,2",
             "--precision", "12"], capsys)
        vals = [float(tok) for tok in out.splitlines()[1].split(",")]
        n1, n2 = mean_photon_numbers(ModelParams(y=0.4, tau=0.8), Thermal(1.0, 2.0))
        assert np.isclose(vals[2], n1, rtol=1e-10)
        assert np.isclose(vals[3], n2, rtol=1e-10)
        assert np.isclose(vals[4], -1.0, atol=1e-10)


class TestEntangle:
    def test_reference_point(self, capsys):
        code, out, _ = run_cli(["entangle", "--tau", "0.9", "--y", "0"], capsys)
        assert code == 0
        header = out.splitlines()[0].split(",")
        vals = dict(zip(header, (float(t) for t in out.splitlines()[1].split(","))))
        assert np.isclose(vals["log_negativity"], 1.8, atol=1e-7)
        assert np.isclose(vals["entropy1"], 1.42283862908026534, atol=1e-7)
        assert np.isclose(vals["nu_tilde_minus"], 0.08264944411079327, atol=1e-7)

    def test_json_schema(self, capsys):
        code, out, _ = run_cli(
            ["entangle", "--tau", "0.7", "--y", "0.5", "--format", "json"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["schema_version"] == "1"
        assert doc["command"] == "entangle"
        assert doc["columns"][0] == "tau"
        assert len(doc["rows"]) == 1
        assert len(doc["rows"][0]) == len(doc["columns"])


class TestSweep:
    def test_row_count_and_grid(self, capsys):
        code, out, _ = run_cli(
            ["sweep", "--var", "tau", "--from", "0", "--to", "1",
             "--steps", "11"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 12
        taus = [float(l.split(",")[0]) for l in lines[1:]]
        assert np.allclose(taus, np.linspace(0, 1, 11), atol=1e-12)

    def test_values_match_library(self, capsys):
        code, out, _ = run_cli(
            ["sweep", "--var", "y", "--from", "0", "--to", "0.9", "--steps", "4",
             "--tau", "0.9", "--state", "thermal:1,2", "--precision", "12"], capsys)
        assert code == 0
        header = out.splitlines()[0].split(",")
        row = dict(zip(header, (float(t) for t in out.splitlines()[2].split(","))))
        y = row["y"]
        rep = full_report(ModelParams(y=y, tau=0.9), Thermal(1.0, 2.0))
        assert np.isclose(row["log_negativity"], rep.log_negativity, rtol=1e-9)
        assert np.isclose(row["nu1"], rep.nu1, rtol=1e-9)

    def test_deterministic_output(self, tmp_path):
        args = ["sweep", "--var", "tau", "--from", "0", "--to", "1",
                "--steps", "51", "--y", "0.3"]
        f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert cli.main(args + ["--out", str(f1)]) == 0
        assert cli.main(args + ["--out", str(f2)]) == 0
        assert f1.read_bytes() == f2.read_bytes()


class TestFigure:
    def test_all_presets_run(self, tmp_path):
        for preset in cli.FIGURE_PRESETS:
            out = tmp_path / f"{preset}.csv"
            assert cli.main(["figure", preset, "--out", str(out)]) == 0
            lines = out.read_text().splitlines()
            assert len(lines) == 102  # header + default 101-point grid

    def test_gain_curves_reference_value(self, capsys):
        code, out, _ = run_cli(["figure", "fig1a", "--steps", "11"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "tau,n1_y0,n1_y0p9"
        row = dict(zip(lines[0].split(","), lines[10].split(",")))
        assert float(row["tau"]) == 0.9
        assert np.isclose(float(row["n1_y0"]), 1.05373659, atol=1e-6)
        assert np.isclose(float(row["n1_y0p9"]), 0.85241511, atol=1e-6)

    def test_mismatch_curves_monotone(self, capsys):
        code, out, _ = run_cli(["figure", "fig2b", "--steps", "21"], capsys)
        lines = out.splitlines()
        col = [float(l.split(",")[1]) for l in lines[1:]]
        assert all(b < a for a, b in zip(col, col[1:]))

    def test_thermal_negativity_curves(self, capsys):
        code, out, _ = run_cli(["figure", "fig3a", "--steps", "21"], capsys)
        lines = out.splitlines()
        assert lines[0] == ("tau,logneg_vacuum_y0,logneg_vacuum_y0p9,"
                            "logneg_thermal_y0,logneg_thermal_y0p9")
        last = [float(t) for t in lines[-1].split(",")]
        assert last[1] > last[2] > 0.0       # vacuum: mismatch degrades
        assert last[3] > last[4] >= 0.0      # thermal: weaker overall
        assert last[1] > last[3]

    def test_json_meta_flags_assumption(self, capsys):
        code, out, _ = run_cli(
            ["figure", "fig3b", "--steps", "5", "--format", "json"], capsys)
        doc = json.loads(out)
        assert doc["schema_version"] == "1"
        assert any("thermal occupations" in a for a in doc["assumptions"])

    def test_deterministic_bytes(self, tmp_path):
        f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert cli.main(["figure", "fig2b", "--out", str(f1)]) == 0
        assert cli.main(["figure", "fig2b", "--out", str(f2)]) == 0
        assert f1.read_bytes() == f2.read_bytes()

    def test_tau_override(self, capsys):
        code, out, _ = run_cli(
            ["figure", "fig1b", "--steps", "3", "--tau", "0.5"], capsys)
        assert code == 0
        first = [float(t) for t in out.splitlines()[1].split(",")]
        assert np.isclose(first[1], 0.27154031740762189, atol=1e-7)


class TestOracleCheck:
    def test_vacuum_passes(self, capsys):
        code, out, _ = run_cli(
            ["oracle-check", "--tau", "0.9", "--y", "0", "--nmax", "32"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["schema_version"] == "1"
        assert doc["all_pass"] is True
        assert doc["tail_ok"] is True
        assert doc["tail_mass"] < 1e-8
        names = set(doc["checks"])
        assert {"n1", "n2", "mean_vector_max", "cm_max",
                "entropy1", "entropy2", "log_negativity"} <= names
        assert all(c["pass"] for c in doc["checks"].values())

    def test_truncation_exit_code(self, capsys):
        code, out, _ = run_cli(
            ["oracle-check", "--tau", "0.9", "--y", "0", "--nmax", "4"], capsys)
        assert code == 3
        doc = json.loads(out)
        assert doc["tail_ok"] is False
        assert doc["all_pass"] is False
        assert "log_negativity" not in doc["checks"]

    def test_hot_thermal_state_flags_truncation(self, capsys):
        code, out, _ = run_cli(
            ["oracle-check", "--tau", "0.9", "--y", "0.9",
             "--state", "thermal:0.5,0.5", "--nmax", "24"], capsys)
        assert code == 3
        doc = json.loads(out)
        assert doc["tail_mass"] > 1e-8

    def test_tolerance_failure_exit_code(self, capsys):
        # tail gate passes at nmax=32 but a 1e-9 budget on the CM is
        # below the true truncation error, so the check must fail loudly
        code, out, _ = run_cli(
            ["oracle-check", "--tau", "0.9", "--y", "0", "--nmax", "32",
             "--tol", "1e-9"], capsys)
        assert code == 1
        doc = json.loads(out)
        assert doc["tail_ok"] is True
        assert doc["all_pass"] is False
        assert not doc["checks"]["cm_max"]["pass"]

    def test_coherent_state_passes(self, capsys):
        code, out, _ = run_cli(
            ["oracle-check", "--tau", "0.6", "--y", "0.5",
             "--state", "coherent:1,0", "--nmax", "40"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["all_pass"] is True


class TestOutputFormatting:
    def test_precision_flag(self, capsys):
        _, out3, _ = run_cli(["photons", "--tau", "0.9", "--precision", "3"], capsys)
        val = out3.splitlines()[1].split(",")[2]
        assert len(val) <= 6
        assert np.isclose(float(val), 1.05, atol=0.01)

    def test_no_negative_zero(self, capsys):
        _, out, _ = run_cli(["photons", "--tau", "0", "--y", "0.5"], capsys)
        row = out.splitlines()[1]
        assert "-0" not in row

    def test_out_file_matches_stdout(self, tmp_path, capsys):
        args = ["entangle", "--tau", "0.7", "--y", "0.2"]
        code, out, _ = run_cli(args, capsys)
        f = tmp_path / "x.csv"
        assert cli.main(args + ["--out", str(f)]) == 0
        assert f.read_text() == out
