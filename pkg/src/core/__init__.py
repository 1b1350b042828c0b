"""Core lab configuration."""

from .config import config, LabConfig, DEFAULT_ALPHA, SUITE_BUDGETS

__all__ = [
    "LabConfig",
    "config",
    "DEFAULT_ALPHA",
    "SUITE_BUDGETS",
]
