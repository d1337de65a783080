"""Harness: runs, sweeps, stress tables, CSV output, CLI."""

import json
import math

import numpy as np
import pytest

from mmfd import RunConfig, convergence, observed_order, run, stability_stress
from mmfd.cli import main as cli_main
from mmfd.errors import InvalidOrderError
from mmfd.harness import ErrorReport


class TestRun:
    def test_smoke_run_51(self):
        cfg = RunConfig(example="5.1-sin", m=1, j_max=40, dt=math.pi / 40)
        res = run(cfg)
        assert res.max_error is not None and np.isfinite(res.max_error)
        # regression baseline from the first verified build of this solver
        assert res.max_error == pytest.approx(0.0129, rel=0.05)
        assert res.energy_monotone is None  # not a homogeneous problem

    def test_homogeneous_stress_is_monotone_at_huge_dt(self):
        cfg = RunConfig(example="5.1-sin", m=2, j_max=20, dt=10.0,
                        homogeneous_stress=True, t_final=30.0)
        res = run(cfg)
        assert res.energy_monotone is True

    def test_invalid_order_rejected_before_allocation(self):
        with pytest.raises(InvalidOrderError):
            run(RunConfig(example="5.1-sin", m=0, j_max=4000000))

    def test_unknown_example_rejected(self):
        with pytest.raises(ValueError, match="unknown example"):
            run(RunConfig(example="9.9"))

    def test_2d_requires_2d_scheme(self):
        with pytest.raises(ValueError, match="scheme"):
            run(RunConfig(example="5.3", scheme="conservative", j_max=8))


class TestObservedOrder:
    def test_exact_for_synthetic_power_law(self):
        p = 2.37
        errors = [5.0 * r ** (-p) for r in (1, 2, 4, 8)]
        for i in range(3):
            got = observed_order(errors[i], errors[i + 1], 2.0)
            assert got == pytest.approx(p, abs=1e-12)


class TestConvergence:
    def test_temporal_sweep_orders_and_csv(self, tmp_path):
        out = tmp_path / "sweep.csv"
        cfg = RunConfig(example="5.1-sin", m=1, j_max=200, dt=0.2, out=str(out))
        report = convergence(cfg, "temporal", 3)
        assert report.rows[0]["observed_order"] is None
        orders = report.orders()
        assert len(orders) == 2
        assert all(o > 1.7 for o in orders)
        text = out.read_text()
        header = text.splitlines()[0]
        assert header == "level,J_max,dt,max_error,observed_order,energy_monotone,wall_seconds"
        assert len(text.splitlines()) == 4

    def test_csv_deterministic_for_fixed_config(self):
        cfg = RunConfig(example="5.1-sin", m=1, j_max=50, dt=0.25)
        r1 = convergence(cfg, "temporal", 3)
        r2 = convergence(cfg, "temporal", 3)
        body1 = "\n".join(",".join(line.split(",")[:5])
                          for line in r1.to_csv().splitlines())
        body2 = "\n".join(",".join(line.split(",")[:5])
                          for line in r2.to_csv().splitlines())
        assert body1 == body2  # identical apart from wall-time columns

    def test_coupled_sweep_doubles_mesh(self):
        cfg = RunConfig(example="5.1-sin", m=1, j_max=10)
        report = convergence(cfg, "coupled", 3)
        assert [r["j_max"] for r in report.rows] == [10, 20, 40]

    def test_parallel_matches_serial(self):
        cfg = RunConfig(example="5.1-sin", m=1, j_max=40, dt=0.2)
        serial = convergence(cfg, "temporal", 3)
        parallel = convergence(cfg, "temporal", 3, parallel=True)
        np.testing.assert_allclose(
            [r["max_error"] for r in serial.rows],
            [r["max_error"] for r in parallel.rows], rtol=1e-12)

    def test_too_few_levels_rejected(self):
        with pytest.raises(ValueError, match="levels"):
            convergence(RunConfig(), "temporal", 2)


class TestStability:
    def test_stress_table_static_large_dt(self):
        cfg = RunConfig(example="5.1-sin", m=1, j_max=16, omega=0.0)
        rows = stability_stress(cfg, [1000.0])
        assert rows[0]["energy_monotone"] is True
        assert rows[0]["energy_bounded"] is True

    def test_stress_runs_multiple_dt(self):
        cfg = RunConfig(example="5.1-sin", m=1, j_max=20, omega=20 * math.pi)
        rows = stability_stress(cfg, [0.5, 0.1, 0.01])
        assert [r["dt"] for r in rows] == [0.5, 0.1, 0.01]
        assert all(r["energy_monotone"] for r in rows)

    def test_stress_2d_quarter_step(self):
        cfg = RunConfig(example="5.3", scheme="2d", m=2, j_max=20,
                        omega=2 * math.pi)
        rows = stability_stress(cfg, [0.25])
        assert rows[0]["energy_monotone"] is True


class TestCli:
    def test_run_subcommand_with_config(self, tmp_path, capsys):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({
            "example": "5.1-sin", "m": 1, "j_max": 20, "dt": 0.2}))
        assert cli_main(["run", "--config", str(cfg_path)]) == 0
        out = capsys.readouterr().out
        assert "max_error=" in out

    def test_run_config_rejects_unknown_keys(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({"example": "5.1-sin", "bogus": 1}))
        with pytest.raises(ValueError, match="bogus"):
            cli_main(["run", "--config", str(cfg_path)])

    def test_convergence_subcommand(self, tmp_path, capsys):
        out = tmp_path / "conv.csv"
        code = cli_main([
            "convergence", "--example", "5.1-sin", "--mode", "temporal",
            "--levels", "3", "--m", "1", "--jmax", "50", "--dt0", "0.25",
            "--out", str(out)])
        assert code == 0
        assert out.exists()
        stdout = capsys.readouterr().out
        assert stdout.splitlines()[0].startswith("level,J_max,dt")

    def test_stability_subcommand(self, capsys):
        code = cli_main([
            "stability", "--example", "5.1-sin", "--omega", "0", "--m", "1",
            "--jmax", "12", "--dt", "0.5,0.1"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "dt,max_abs_u,energy_bounded,energy_monotone"
        assert len(lines) == 3


class TestErrorReportFormat:
    def test_17_significant_digits(self):
        report = ErrorReport(mode="temporal")
        report.rows.append({
            "level": 0, "j_max": 10, "dt": 1.0 / 3.0,
            "max_error": 1.0 / 7.0, "observed_order": None,
            "energy_monotone": True, "wall_seconds": 0.0})
        line = report.to_csv().splitlines()[1]
        assert "0.33333333333333331" in line
        assert "0.14285714285714285" in line
