"""Result persistence: checksummed JSON plus a CSV summary."""

import csv
import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..core.config import config
from ..harness.models import ExperimentResult, Relation
from ..utils.exceptions import (
    MissingFieldError,
    ResultCorruptionError,
    ResultNotFoundError,
    ResultParseError,
    ValidationError,
)
from ..utils.logger import get_logger
from .serializers import ResultSerializer, canonical_json

logger = get_logger(__name__)

RESULT_FORMAT_VERSION = 2
CSV_HEADER = ["experiment", "group", "N", "m", "p", "theta", "replicas", "seed", "value",
              "bound", "pass"]
ENVELOPE_FIELDS = ("version", "timestamp", "checksum", "result")


def _checksum(result_data: Dict[str, Any]) -> str:
    return hashlib.sha256(canonical_json(result_data).encode("utf-8")).hexdigest()


def _line_of(text: str, field: str) -> Optional[int]:
    """1-based line of the innermost ``"key":`` of the field path present in ``text``.

    A missing key falls back to its enclosing key, then to ``"result":``.
    """
    keys = [segment.split("[")[0] for segment in field.split(".")]
    lines = text.splitlines()
    for key in reversed(["result"] + keys):
        needle = f'"{key}":'
        for number, line in enumerate(lines, start=1):
            if needle in line:
                return number
    return None


def csv_rows(result: ExperimentResult) -> List[List[Any]]:
    """One summary row per bound comparison."""
    cfg = result.config
    return [
        [
            cfg.experiment.value,
            cfg.group.label,
            cfg.group.rank,
            cfg.m,
            cfg.p,
            comparison.parameter,
            cfg.replicas,
            cfg.master_seed,
            comparison.empirical,
            comparison.bound,
            comparison.passed,
        ]
        for comparison in result.comparisons
    ]


class ResultStore:
    """Writes and reads persisted experiment results."""

    def __init__(self, results_dir: Optional[Path] = None):
        self.results_dir = Path(results_dir) if results_dir is not None else (
            config.results_directory)

    def default_filename(self, result: ExperimentResult) -> str:
        cfg = result.config
        group = cfg.group.label.replace("(", "").replace(")", "").replace("-", "neg")
        return f"{cfg.experiment.value}_{group}_m{cfg.m}_seed{cfg.master_seed}.json"

    def _resolve(self, result: ExperimentResult, path: Optional[Path]) -> Path:
        if path is None:
            return self.results_dir / self.default_filename(result)
        path = Path(path)
        if path.suffix.lower() != ".json":
            return path / self.default_filename(result)
        return path

    def persist(self, result: ExperimentResult, path: Optional[Path] = None) -> Path:
        """Write ``result`` as JSON with its CSV summary alongside; returns the JSON path."""
        target = self._resolve(result, path)
        target.parent.mkdir(parents=True, exist_ok=True)

        result_data = ResultSerializer.serialize_result(result)
        envelope = {
            "version": RESULT_FORMAT_VERSION,
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "checksum": _checksum(result_data),
            "result": result_data,
        }
        with open(target, "w", encoding="utf-8") as f:
            json.dump(envelope, f, indent=2, sort_keys=True)
        self.write_csv(result, target.with_suffix(".csv"))
        logger.info(f"Saved {result.config.experiment.value} result to {target}")
        return target

    def write_csv(self, result: ExperimentResult, path: Path) -> Path:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(CSV_HEADER)
            writer.writerows(csv_rows(result))
        return path

    def load(self, path: Path) -> ExperimentResult:
        """Read a persisted result, verifying checksum and migrating old versions."""
        path = Path(path)
        if not path.exists():
            raise ResultNotFoundError(str(path))
        text = path.read_text(encoding="utf-8")

        try:
            envelope = json.loads(text)
        except json.JSONDecodeError as e:
            raise ResultParseError(str(path), "json", e.lineno) from None
        if not isinstance(envelope, dict):
            raise ResultParseError(str(path), "result", 1)
        for name in ENVELOPE_FIELDS:
            if name not in envelope:
                raise ResultParseError(str(path), name, None)

        if _checksum(envelope["result"]) != envelope["checksum"]:
            raise ResultCorruptionError(str(path))

        if int(envelope["version"]) < RESULT_FORMAT_VERSION:
            envelope = self._migrate(envelope)

        try:
            return ResultSerializer.deserialize_result(envelope["result"])
        except MissingFieldError as e:
            raise ResultParseError(str(path), e.field, _line_of(text, e.field)) from None
        except (ValidationError, TypeError, ValueError, AttributeError) as e:
            logger.debug(f"Malformed result {path}: {e}")
            raise ResultParseError(str(path), "result", _line_of(text, "result")) from None

    def _migrate(self, envelope: Dict[str, Any]) -> Dict[str, Any]:
        """Version 1 results stored comparisons without relation/slack and had no p_values."""
        version = int(envelope["version"])
        result = envelope["result"]
        if version < 2 and isinstance(result, dict):
            for comparison in result.get("comparisons", []):
                comparison.setdefault("relation", Relation.AT_MOST.value)
                comparison.setdefault("slack", 0.0)
            result.setdefault("p_values", {})
            result.setdefault("provenance", {})
            logger.info(f"Migrated result from format version {version}")
        envelope["version"] = RESULT_FORMAT_VERSION
        return envelope

    def list_results(self) -> List[Dict[str, Any]]:
        """List persisted result files, newest first."""
        results = []
        for f in self.results_dir.glob("*.json"):
            stat = f.stat()
            results.append({
                "filename": f.name,
                "size": stat.st_size,
                "modified": datetime.fromtimestamp(stat.st_mtime),
            })
        return sorted(results, key=lambda x: x["modified"], reverse=True)
