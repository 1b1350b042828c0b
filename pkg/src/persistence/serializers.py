"""Serializers for experiment configurations and results."""

import hashlib
import json
from typing import Any, Dict, List

from ..harness.models import BoundComparison, ExperimentConfig, ExperimentResult, Relation
from ..utils.exceptions import MissingFieldError, ValidationError

RESULT_FIELDS = ("config", "records", "summary", "comparisons", "p_values", "wall_time",
                 "provenance")
COMPARISON_FIELDS = ("label", "parameter", "empirical", "bound", "relation", "slack", "passed")

# volatile fields left out of fingerprints
VOLATILE_FIELDS = ("wall_time",)


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), default=str)


class ResultSerializer:
    """Converts experiment results to and from plain dictionaries."""

    @staticmethod
    def serialize_config(config: ExperimentConfig) -> Dict[str, Any]:
        return config.to_dict()

    @staticmethod
    def deserialize_config(data: Dict[str, Any]) -> ExperimentConfig:
        if not isinstance(data, dict):
            raise MissingFieldError("config", "result")
        return ExperimentConfig.from_dict(data)

    @staticmethod
    def serialize_comparison(comparison: BoundComparison) -> Dict[str, Any]:
        return {
            "label": comparison.label,
            "parameter": comparison.parameter,
            "empirical": comparison.empirical,
            "bound": comparison.bound,
            "relation": Relation(comparison.relation).value,
            "slack": comparison.slack,
            "passed": comparison.passed,
        }

    @staticmethod
    def deserialize_comparison(data: Dict[str, Any], index: int = 0) -> BoundComparison:
        for name in COMPARISON_FIELDS:
            if name not in data:
                raise MissingFieldError(f"comparisons[{index}].{name}", "result")
        try:
            relation = Relation(data["relation"])
        except ValueError:
            raise ValidationError(f"unknown relation {data['relation']!r}") from None
        return BoundComparison(
            label=str(data["label"]),
            parameter=float(data["parameter"]),
            empirical=float(data["empirical"]),
            bound=float(data["bound"]),
            relation=relation,
            slack=float(data["slack"]),
            passed=bool(data["passed"]),
        )

    @staticmethod
    def serialize_result(result: ExperimentResult) -> Dict[str, Any]:
        """Serialize an ExperimentResult for saving."""
        return {
            "config": ResultSerializer.serialize_config(result.config),
            "records": result.records,
            "summary": result.summary,
            "comparisons": [
                ResultSerializer.serialize_comparison(c) for c in result.comparisons
            ],
            "p_values": result.p_values,
            "wall_time": result.wall_time,
            "provenance": result.provenance,
        }

    @staticmethod
    def deserialize_result(data: Dict[str, Any]) -> ExperimentResult:
        """Rebuild an ExperimentResult; a missing field raises MissingFieldError."""
        for name in RESULT_FIELDS:
            if name not in data:
                raise MissingFieldError(name, "result")
        comparisons: List[BoundComparison] = [
            ResultSerializer.deserialize_comparison(item, i)
            for i, item in enumerate(data["comparisons"])
        ]
        return ExperimentResult(
            config=ResultSerializer.deserialize_config(data["config"]),
            records=list(data["records"]),
            summary=dict(data["summary"]),
            comparisons=comparisons,
            p_values={str(k): float(v) for k, v in data["p_values"].items()},
            wall_time=float(data["wall_time"]),
            provenance=dict(data["provenance"]),
        )

    @staticmethod
    def fingerprint(result: ExperimentResult) -> str:
        """sha256 of the canonical result without volatile fields (wall time)."""
        data = ResultSerializer.serialize_result(result)
        for name in VOLATILE_FIELDS:
            data.pop(name, None)
        return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()
