import json
import subprocess
import sys

import pytest

from riggedframes import InvalidConfigError
from riggedframes.reporting import (
    ReportDocument,
    config_from_dict,
    config_with_overrides,
    default_config,
    emit,
    load_config,
    run,
    write_report,
)


def write_config(tmp_path, data, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


DIRAC_CONFIG = {"map": {"kind": "dirac"}, "ladder": {"n_max": 16}, "seed": 7}


class TestConfig:
    def test_minimal(self):
        config = config_from_dict({"map": {"kind": "dirac"}})
        assert config.map_spec.kind == "dirac"
        assert [s.truncation for s in config.ladder.stages] == [8, 16, 32]
        assert config.seed == 20240409

    def test_weight_parse_position_in_error(self):
        with pytest.raises(InvalidConfigError, match=r"map\.weight.*offset 4"):
            config_from_dict({"map": {"kind": "weighted_dirac", "weight": "sin("}})

    def test_field_paths_in_errors(self):
        with pytest.raises(InvalidConfigError, match="map.kind"):
            config_from_dict({"map": {}})
        with pytest.raises(InvalidConfigError, match="ladder.n_max"):
            config_from_dict({"map": {"kind": "dirac"}, "ladder": {"n_max": 12}})
        with pytest.raises(InvalidConfigError, match="thresholds"):
            config_from_dict({"map": {"kind": "dirac"}, "thresholds": {"bogus": 1}})
        with pytest.raises(InvalidConfigError, match="output.format"):
            config_from_dict({"map": {"kind": "dirac"}, "output": {"format": "xml"}})

    def test_explicit_stages(self):
        config = config_from_dict(
            {"map": {"kind": "dirac"}, "ladder": {"stages": [8, {"N": 16}, {"N": 24, "order": 8}]}}
        )
        assert [s.truncation for s in config.ladder.stages] == [8, 16, 24]
        assert config.ladder.stages[2].order == 8

    def test_overrides(self):
        config = config_with_overrides(default_config(), seed=1, stages=[8, 16])
        assert config.seed == 1
        assert [s.truncation for s in config.ladder.stages] == [8, 16]


class TestRun:
    def test_classify_dirac_labels(self, tmp_path):
        config = load_config(write_config(tmp_path, DIRAC_CONFIG))
        report = run("classify", config)
        assert "gelfand_basis" in report.labels
        assert len(report.stages) == 2
        row = report.stages[0]
        assert list(row) == [
            "N", "L", "nodes", "A", "B", "sigma_min", "sigma_max", "total", "mu_independent",
        ]

    def test_bounds_has_no_labels(self, tmp_path):
        config = load_config(write_config(tmp_path, DIRAC_CONFIG))
        report = run("bounds", config)
        assert report.labels is None
        assert report.stages

    def test_dual_and_reconstruct_sections(self, tmp_path):
        data = dict(DIRAC_CONFIG, map={"kind": "weighted_dirac", "weight": "2+sin(x)"})
        config = load_config(write_config(tmp_path, data))
        dual = run("dual", config).dual
        assert dual["A_theta"] >= 1 / 9 - 1e-8
        assert dual["B_theta"] <= 1 + 1e-8
        assert dual["defect"] <= 1e-8
        rec = run("reconstruct", config).dual
        assert rec["defect"] <= 1e-8

    def test_moment_solve(self, tmp_path):
        config = load_config(write_config(tmp_path, DIRAC_CONFIG))
        moment = run("moment-solve", config).moment
        assert moment["score"] == 1.0
        assert moment["worst_residual"] <= 1e-6

    def test_sweep_combines_sections(self, tmp_path):
        config = load_config(write_config(tmp_path, DIRAC_CONFIG))
        report = run("sweep", config)
        assert report.labels and report.dual and report.moment

    def test_sweep_dual_null_for_non_frame(self, tmp_path):
        data = dict(DIRAC_CONFIG, map={"kind": "bump_dirac", "bump_support": [-1, 1]}, ladder={"n_max": 32})
        config = load_config(write_config(tmp_path, data))
        report = run("sweep", config)
        assert report.dual is None

    def test_determinism_modulo_timing(self, tmp_path):
        config = load_config(write_config(tmp_path, DIRAC_CONFIG))
        a = json.loads(emit(run("classify", config)).decode())
        b = json.loads(emit(run("classify", config)).decode())
        a.pop("timing"), b.pop("timing")
        assert a == b


class TestEmit:
    def test_empty_stage_report_is_valid_json(self):
        report = ReportDocument(config={"map": {"kind": "dirac"}})
        parsed = json.loads(emit(report).decode())
        assert parsed["stages"] == []
        assert parsed["labels"] is None

    def test_json_key_order(self, tmp_path):
        config = load_config(write_config(tmp_path, DIRAC_CONFIG))
        payload = emit(run("classify", config)).decode()
        parsed = json.loads(payload)
        assert list(parsed) == ["config", "stages", "labels", "dual", "moment", "timing"]

    def test_round_trip_exact_at_17_digits(self, tmp_path):
        config = load_config(write_config(tmp_path, DIRAC_CONFIG))
        report = run("bounds", config)
        parsed = json.loads(emit(report).decode())
        for row, stage in zip(parsed["stages"], report.stages):
            for key, value in stage.items():
                if isinstance(value, float):
                    assert parsed_value_equal(row[key], value)
                else:
                    assert row[key] == value

    def test_csv_row_count(self, tmp_path):
        config = load_config(write_config(tmp_path, DIRAC_CONFIG))
        lines = emit(run("bounds", config), "csv").decode().strip().splitlines()
        assert len(lines) == len(config.ladder.stages) + 1
        assert lines[0] == "N,L,nodes,A,B,sigma_min,sigma_max,total,mu_independent"

    def test_write_report_atomic(self, tmp_path):
        report = ReportDocument(config={})
        target = tmp_path / "out.json"
        write_report(report, target)
        assert json.loads(target.read_text())["stages"] == []
        assert not (tmp_path / "out.json.tmp").exists()


def parsed_value_equal(parsed, original):
    return parsed == float(f"{original:.17g}") == original


class TestCommandLine:
    def run_cli(self, *args, env=None):
        import os

        full_env = dict(os.environ)
        if env:
            full_env.update(env)
        return subprocess.run(
            [sys.executable, "-m", "riggedframes.cli", *args],
            capture_output=True,
            text=True,
            env=full_env,
        )

    def test_classify_to_file(self, tmp_path):
        config = write_config(tmp_path, DIRAC_CONFIG)
        out = tmp_path / "report.json"
        proc = self.run_cli("classify", "--config", str(config), "--output", str(out))
        assert proc.returncode == 0, proc.stderr
        assert "gelfand_basis" in json.loads(out.read_text())["labels"]

    def test_malformed_weight_exits_nonzero_with_position(self, tmp_path):
        config = write_config(
            tmp_path, {"map": {"kind": "weighted_dirac", "weight": "sin("}}
        )
        proc = self.run_cli("classify", "--config", str(config))
        assert proc.returncode == 2
        assert "offset 4" in proc.stderr

    def test_stages_and_seed_overrides(self, tmp_path):
        config = write_config(tmp_path, DIRAC_CONFIG)
        proc = self.run_cli(
            "bounds", "--config", str(config), "--stages", "8", "--format", "csv"
        )
        assert proc.returncode == 0, proc.stderr
        lines = proc.stdout.strip().splitlines()
        assert len(lines) == 2
        assert lines[1].startswith("8,")

    def test_missing_config_is_usage_error(self):
        proc = self.run_cli("classify")
        assert proc.returncode == 2
        assert "--config" in proc.stderr

    def test_thread_cap_accepted(self, tmp_path):
        config = write_config(tmp_path, dict(DIRAC_CONFIG, ladder={"n_max": 8}))
        proc = self.run_cli(
            "bounds", "--config", str(config), env={"RIGGEDFRAMES_THREADS": "1"}
        )
        assert proc.returncode == 0, proc.stderr


class TestDemoExitContract:
    def test_failing_check_turns_exit_nonzero(self, monkeypatch):
        from riggedframes import acceptance, cli
        from riggedframes.acceptance import CheckResult

        def fake_run_all(printer=print):
            results = [CheckResult("forced_failure", False, "synthetic")]
            printer("FAIL  forced_failure: synthetic")
            return results

        monkeypatch.setattr(acceptance, "run_all", fake_run_all)
        assert cli.main(["demo"]) == 1

    def test_all_passing_exits_zero(self, monkeypatch):
        from riggedframes import acceptance, cli
        from riggedframes.acceptance import CheckResult

        def fake_run_all(printer=print):
            return [CheckResult("ok", True, "synthetic")]

        monkeypatch.setattr(acceptance, "run_all", fake_run_all)
        assert cli.main(["demo"]) == 0
