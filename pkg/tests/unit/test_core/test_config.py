"""Tests for lab config."""

import tempfile
from pathlib import Path

from src.core.config import DEFAULT_ALPHA, SUITE_BUDGETS, LabConfig, config


class TestLabConfigDefaults:
    def test_default_statistics(self):
        cfg = LabConfig()
        assert cfg.alpha == DEFAULT_ALPHA == 1e-3
        assert cfg.default_replicas == SUITE_BUDGETS["replicas"] == 10_000

    def test_default_transport(self):
        cfg = LabConfig()
        assert cfg.discretization_factor == 32
        assert cfg.max_transport_atoms == 4096

    def test_threads_positive(self):
        assert LabConfig().threads >= 1

    def test_fast_budgets_smaller(self):
        assert SUITE_BUDGETS["fast_replicas"] < SUITE_BUDGETS["replicas"]
        assert (SUITE_BUDGETS["fast_mean_distance_replicas"]
                < SUITE_BUDGETS["mean_distance_replicas"])


class TestLabConfigFromDict:
    def test_partial_override(self):
        cfg = LabConfig.from_dict({"threads": 3, "debug": True})
        assert cfg.threads == 3
        assert cfg.debug is True
        assert cfg.max_transport_atoms == 4096  # default

    def test_ignore_unknown_fields(self):
        cfg = LabConfig.from_dict({"unknown_field": "value"})
        assert cfg.discretization_factor == 32


class TestLabConfigFromEnv:
    def test_threads_from_env(self, monkeypatch):
        monkeypatch.setenv("SMLAB_THREADS", "4")
        assert LabConfig.from_env().threads == 4

    def test_threads_floor_at_one(self, monkeypatch):
        monkeypatch.setenv("SMLAB_THREADS", "0")
        assert LabConfig.from_env().threads == 1

    def test_debug_flag(self, monkeypatch):
        monkeypatch.setenv("SMLAB_DEBUG", "true")
        assert LabConfig.from_env().debug is True
        monkeypatch.setenv("SMLAB_DEBUG", "no")
        assert LabConfig.from_env().debug is False

    def test_results_directory(self, monkeypatch):
        monkeypatch.setenv("SMLAB_RESULTS_DIR", "/tmp/smlab-results")
        assert LabConfig.from_env().results_directory == Path("/tmp/smlab-results")

    def test_unset_env_uses_defaults(self, monkeypatch):
        for name in ("SMLAB_THREADS", "SMLAB_RESULTS_DIR", "SMLAB_LOG_DIR"):
            monkeypatch.delenv(name, raising=False)
        cfg = LabConfig.from_env()
        assert cfg.results_directory == Path.cwd() / "results"


class TestEnsureDirectories:
    def test_creates_directories(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            root = Path(tmpdir)
            cfg = LabConfig(results_directory=root / "results", log_directory=root / "logs")
            cfg.ensure_directories()
            assert (root / "results").is_dir()
            assert (root / "logs").is_dir()


class TestConfigSingleton:
    def test_config_is_lab_config(self):
        assert isinstance(config, LabConfig)
