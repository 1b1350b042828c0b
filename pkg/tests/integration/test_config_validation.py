"""Integration tests for experiment config validation."""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).parent.parent.parent
sys.path.insert(0, str(ROOT / "scripts"))

from validate_configs import ConfigValidator, ValidationReport, main  # noqa: E402


@pytest.fixture
def configs_dir(tmp_path):
    return tmp_path


class TestShippedConfigs:
    def test_all_valid(self):
        report = ConfigValidator(ROOT / "configs").validate_all()
        assert report.files_checked == 11
        assert report.configs_valid == 11
        assert report.errors == []

    def test_main_exit_code(self, monkeypatch, capsys):
        monkeypatch.setattr(sys, "argv", ["validate_configs.py", str(ROOT / "configs")])
        assert main() == 0
        assert "All configs valid" in capsys.readouterr().out


class TestConfigValidator:
    def test_yaml_error_has_line(self, configs_dir):
        (configs_dir / "broken.yaml").write_text("experiment: mean_distance\ngroup: [u(4)\n")
        report = ConfigValidator(configs_dir).validate_all()
        assert len(report.errors) == 1
        assert report.errors[0].line >= 2

    def test_not_a_mapping(self, configs_dir):
        (configs_dir / "list.yaml").write_text("- a\n")
        report = ConfigValidator(configs_dir).validate_all()
        assert report.errors[0].message == "Config must be a mapping"

    def test_invalid_field_value(self, configs_dir):
        (configs_dir / "neg.yaml").write_text("experiment: mean_distance\ngroup: u(4)\nm: 0\n")
        report = ConfigValidator(configs_dir).validate_all()
        assert "m must be >= 1" in report.errors[0].message

    def test_unsupported_group(self, configs_dir):
        (configs_dir / "rains.yaml").write_text(
            "experiment: rains_equivalence\ngroup: sp(4)\nreplicas: 500\n")
        report = ConfigValidator(configs_dir).validate_all()
        assert "does not support sp(4)" in report.errors[0].message

    def test_warnings(self, configs_dir):
        (configs_dir / "small.yml").write_text(
            "experiment: mean_distance\ngroup: u(4)\nreplicas: 10\ncolour: blue\n")
        report = ConfigValidator(configs_dir).validate_all()
        assert report.errors == []
        assert report.configs_valid == 1
        messages = [w.message for w in report.warnings]
        assert "Unknown field 'colour' is ignored" in messages
        assert "Only 10 replicas" in messages

    def test_main_reports_errors(self, configs_dir, monkeypatch):
        (configs_dir / "bad.json").write_text('{"experiment": "mean_distance"}')
        monkeypatch.setattr(sys, "argv", ["validate_configs.py", str(configs_dir)])
        assert main() == 1

    def test_main_missing_directory(self, configs_dir, monkeypatch):
        monkeypatch.setattr(sys, "argv", ["validate_configs.py", str(configs_dir / "none")])
        assert main() == 1


class TestValidationReport:
    def test_counts(self):
        report = ValidationReport()
        report.add_error("a.yaml", "bad", 3)
        report.add_warning("b.yaml", "meh")
        assert len(report.errors) == 1
        assert len(report.warnings) == 1
        assert report.errors[0].line == 3
