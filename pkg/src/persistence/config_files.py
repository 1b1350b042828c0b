"""Loading experiment configurations from YAML or JSON files."""

from pathlib import Path
from typing import Dict

import yaml

from ..harness.models import ExperimentConfig
from ..utils.exceptions import MissingFieldError, ResultNotFoundError, ResultParseError
from ..utils.logger import get_logger

logger = get_logger(__name__)

CONFIG_SUFFIXES = (".yaml", ".yml", ".json")


def load_experiment_config(path: Path) -> ExperimentConfig:
    """Parse one config file; JSON is read through the YAML loader."""
    path = Path(path)
    if not path.exists():
        raise ResultNotFoundError(str(path))
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise ResultParseError(str(path), "yaml", mark.line + 1 if mark else None) from None
    if not isinstance(data, dict):
        raise ResultParseError(str(path), "experiment", 1)
    try:
        return ExperimentConfig.from_dict(data)
    except MissingFieldError as e:
        raise ResultParseError(str(path), e.field) from None


def load_config_directory(directory: Path) -> Dict[str, ExperimentConfig]:
    """Load every config file under ``directory`` keyed by file stem; bad files are skipped."""
    configs: Dict[str, ExperimentConfig] = {}
    directory = Path(directory)
    if not directory.exists():
        logger.warning(f"Config directory not found: {directory}")
        return configs

    for config_file in sorted(directory.rglob("*")):
        if config_file.suffix.lower() not in CONFIG_SUFFIXES:
            continue
        try:
            configs[config_file.stem] = load_experiment_config(config_file)
            logger.debug(f"Loaded config: {config_file.stem}")
        except Exception as e:
            logger.error(f"Error loading config from {config_file}: {e}")
    return configs
