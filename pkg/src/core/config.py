"""Lab configuration."""

from dataclasses import dataclass, field
from pathlib import Path
import os

DEFAULT_ALPHA = 1e-3

SUITE_BUDGETS = {
    "replicas": 10_000,
    "fast_replicas": 1_000,
    "mean_distance_replicas": 2_000,
    "fast_mean_distance_replicas": 200,
}


def _default_threads() -> int:
    return os.cpu_count() or 1


@dataclass
class LabConfig:
    """Lab configuration with defaults."""

    # Parallelism
    threads: int = field(default_factory=_default_threads)

    # Statistics
    alpha: float = DEFAULT_ALPHA
    default_replicas: int = SUITE_BUDGETS["replicas"]

    # Transport
    discretization_factor: int = 32  # K = factor * N
    max_transport_atoms: int = 4096

    debug: bool = False

    # Paths
    results_directory: Path = field(default_factory=lambda: Path.cwd() / "results")
    log_directory: Path = field(default_factory=lambda: Path.home() / ".smlab" / "logs")

    @classmethod
    def from_env(cls) -> "LabConfig":
        """Load config from environment variables."""
        defaults = cls()
        threads_env = os.getenv("SMLAB_THREADS", "")
        results_env = os.getenv("SMLAB_RESULTS_DIR", "")
        log_env = os.getenv("SMLAB_LOG_DIR", "")
        return cls(
            threads=max(1, int(threads_env)) if threads_env else defaults.threads,
            debug=os.getenv("SMLAB_DEBUG", "").lower() == "true",
            results_directory=Path(results_env) if results_env else defaults.results_directory,
            log_directory=Path(log_env) if log_env else defaults.log_directory,
        )

    @classmethod
    def from_dict(cls, data: dict) -> "LabConfig":
        """Create config from dictionary."""
        return cls(**{k: v for k, v in data.items() if k in cls.__dataclass_fields__})

    def ensure_directories(self) -> None:
        """Create results and log directories."""
        self.results_directory.mkdir(parents=True, exist_ok=True)
        self.log_directory.mkdir(parents=True, exist_ok=True)


# Global config instance
config = LabConfig.from_env()
