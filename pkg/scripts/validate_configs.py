#!/usr/bin/env python3
"""Experiment config validation script.

Run with: python scripts/validate_configs.py [configs_dir]
Exit code: 0 if all valid, 1 if errors found
"""

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List

import yaml

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.harness.experiments import RUNNERS  # noqa: E402
from src.harness.models import ExperimentConfig  # noqa: E402
from src.utils.exceptions import LabError  # noqa: E402

CONFIG_SUFFIXES = (".yaml", ".yml", ".json")
KNOWN_FIELDS = set(ExperimentConfig.__dataclass_fields__)
SMALL_REPLICAS = 100


@dataclass
class ValidationIssue:
    """Represents a validation issue."""

    file: str
    issue_type: str  # 'error', 'warning'
    message: str
    line: int = 0


@dataclass
class ValidationReport:
    """Report of all validation issues."""

    issues: List[ValidationIssue] = field(default_factory=list)
    files_checked: int = 0
    configs_valid: int = 0

    def add_error(self, file: str, message: str, line: int = 0) -> None:
        self.issues.append(ValidationIssue(file, "error", message, line))

    def add_warning(self, file: str, message: str, line: int = 0) -> None:
        self.issues.append(ValidationIssue(file, "warning", message, line))

    @property
    def errors(self) -> List[ValidationIssue]:
        return [i for i in self.issues if i.issue_type == "error"]

    @property
    def warnings(self) -> List[ValidationIssue]:
        return [i for i in self.issues if i.issue_type == "warning"]

    def print_report(self) -> None:
        """Print formatted report."""
        print("=" * 80)
        print("EXPERIMENT CONFIG VALIDATION REPORT")
        print("=" * 80)
        print(f"\nFiles checked: {self.files_checked}")
        print(f"Valid configs: {self.configs_valid}")
        print(f"Errors: {len(self.errors)}")
        print(f"Warnings: {len(self.warnings)}")

        if self.errors:
            print("\n" + "=" * 80)
            print("ERRORS (must fix)")
            print("=" * 80)
            for issue in self.errors:
                print(f"\n❌ {issue.file}")
                print(f"   Line {issue.line}: {issue.message}")

        if self.warnings:
            print("\n" + "=" * 80)
            print("WARNINGS (should fix)")
            print("=" * 80)
            for issue in self.warnings:
                print(f"\n⚠️  {issue.file}")
                print(f"   {issue.message}")

        if not self.errors and not self.warnings:
            print("\n✅ All configs valid!")

        print("\n" + "=" * 80)


class ConfigValidator:
    """Validates experiment config files."""

    def __init__(self, configs_dir: Path):
        self.configs_dir = configs_dir
        self.report = ValidationReport()

    def validate_all(self) -> ValidationReport:
        """Validate all config files."""
        files = sorted(
            f for f in self.configs_dir.rglob("*") if f.suffix.lower() in CONFIG_SUFFIXES
        )
        self.report.files_checked = len(files)
        for config_file in files:
            self._validate_file(config_file)
        return self.report

    def _validate_file(self, config_file: Path) -> None:
        name = str(config_file)
        try:
            with open(config_file, "r", encoding="utf-8") as f:
                content = yaml.safe_load(f)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            self.report.add_error(name, f"YAML parsing error: {e}", mark.line + 1 if mark else 0)
            return

        if not isinstance(content, dict):
            self.report.add_error(name, "Config must be a mapping")
            return

        for key in sorted(set(content) - KNOWN_FIELDS):
            self.report.add_warning(name, f"Unknown field '{key}' is ignored")

        try:
            config = ExperimentConfig.from_dict(content)
        except LabError as e:
            self.report.add_error(name, str(e))
            return

        _, families = RUNNERS[config.experiment]
        if config.group.family not in families:
            supported = ", ".join(f.value for f in families)
            self.report.add_error(
                name, f"{config.experiment.value} does not support {config.group.label} "
                f"(supported families: {supported})"
            )
            return
        if config.replicas < SMALL_REPLICAS:
            self.report.add_warning(name, f"Only {config.replicas} replicas")
        self.report.configs_valid += 1


def main() -> int:
    """Main entry point."""
    root = Path(__file__).parent.parent
    configs_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else root / "configs"

    if not configs_dir.exists():
        print(f"❌ Configs directory not found: {configs_dir}")
        return 1

    report = ConfigValidator(configs_dir).validate_all()
    report.print_report()
    return 1 if report.errors else 0


if __name__ == "__main__":
    sys.exit(main())
