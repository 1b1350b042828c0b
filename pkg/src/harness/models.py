"""Data models for experiments and their results."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from ..core.config import DEFAULT_ALPHA, config
from ..groups.models import GroupFamily, GroupSpec
from ..transport.measures import TransportMethod
from ..utils.exceptions import MissingFieldError, ValidationError
from ..utils.validators import require_exponent, require_positive_int, require_probability_level

TWO_PI = 2.0 * math.pi
UINT64_MAX = (1 << 64) - 1


class ExperimentKind(str, Enum):
    MEAN_DISTANCE = "mean_distance"
    TAIL_PROBABILITY = "tail_probability"
    COUNT_DISTRIBUTION = "count_distribution"
    RAINS_EQUIVALENCE = "rains_equivalence"
    EIGENANGLE_CONCENTRATION = "eigenangle_concentration"
    VARIANCE_SCAN = "variance_scan"
    COUPLING_CHECK = "coupling_check"
    LIPSCHITZ_CHECK = "lipschitz_check"

    @classmethod
    def parse(cls, value: Any) -> "ExperimentKind":
        if isinstance(value, cls):
            return value
        text = str(value).strip()
        normalized = "".join(
            "_" + ch.lower() if ch.isupper() and i else ch.lower() for i, ch in enumerate(text)
        ).replace("__", "_")
        for member in cls:
            if text.lower() == member.value or normalized == member.value:
                return member
        raise ValidationError(f"Unknown experiment {value!r}")


class Relation(str, Enum):
    AT_MOST = "<="  # empirical <= bound + slack
    ABOVE = ">"  # empirical > bound (p-value against a significance level)


@dataclass
class BoundComparison:
    """One empirical-versus-bound check; ``passed`` is re-derivable from the numbers."""

    label: str
    parameter: float
    empirical: float
    bound: float
    relation: Relation = Relation.AT_MOST
    slack: float = 0.0
    passed: bool = False

    def evaluate(self) -> bool:
        if Relation(self.relation) is Relation.AT_MOST:
            return bool(self.empirical <= self.bound + self.slack)
        return bool(self.empirical > self.bound)

    @classmethod
    def check(
        cls,
        label: str,
        parameter: float,
        empirical: float,
        bound: float,
        relation: Relation = Relation.AT_MOST,
        slack: float = 0.0,
    ) -> "BoundComparison":
        comparison = cls(label, float(parameter), float(empirical), float(bound),
                         Relation(relation), float(slack))
        comparison.passed = comparison.evaluate()
        return comparison


@dataclass
class ExperimentConfig:
    """Monte Carlo experiment configuration."""

    experiment: ExperimentKind
    group: GroupSpec
    m: int = 1
    p: float = 1.0
    replicas: int = field(default_factory=lambda: config.default_replicas)
    theta_grid: List[float] = field(default_factory=lambda: [math.pi])
    master_seed: int = 0
    transport_method: TransportMethod = TransportMethod.EXACT_FLOW
    discretization: Optional[int] = None
    alpha: float = DEFAULT_ALPHA
    t_grid: List[float] = field(default_factory=list)
    u_grid: List[float] = field(default_factory=list)
    eigen_indices: List[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.experiment = ExperimentKind.parse(self.experiment)
        if not isinstance(self.group, GroupSpec):
            self.group = GroupSpec.parse(str(self.group))
        self.transport_method = TransportMethod(self.transport_method)
        self.validate()

    @property
    def theta_limit(self) -> float:
        """Counts live on [0, 2π] for unitary groups and [0, π] for the others."""
        unitary = (GroupFamily.UNITARY, GroupFamily.SPECIAL_UNITARY)
        return TWO_PI if self.group.family in unitary else math.pi

    def validate(self) -> None:
        self.m = require_positive_int(self.m, "m")
        self.p = require_exponent(self.p)
        self.replicas = require_positive_int(self.replicas, "replicas")
        self.alpha = require_probability_level(self.alpha)
        if not 0 <= int(self.master_seed) <= UINT64_MAX:
            raise ValidationError("master_seed must be a 64-bit unsigned integer")
        self.master_seed = int(self.master_seed)
        self.theta_grid = [float(t) for t in self.theta_grid]
        limit = self.theta_limit
        for theta in self.theta_grid:
            if not 0.0 <= theta <= limit:
                raise ValidationError(
                    f"theta {theta} outside [0, {limit:.6g}] for {self.group.label}"
                )
        self.t_grid = [float(t) for t in self.t_grid]
        self.u_grid = [float(u) for u in self.u_grid]
        if any(t < 0 for t in self.t_grid) or any(u <= 0 for u in self.u_grid):
            raise ValidationError("t_grid must be nonnegative and u_grid positive")
        self.eigen_indices = [int(j) for j in self.eigen_indices]
        size = self.group.matrix_size
        if any(not 1 <= j <= size for j in self.eigen_indices):
            raise ValidationError(f"eigen_indices must lie in 1..{size}")
        if self.discretization is not None:
            self.discretization = require_positive_int(self.discretization, "discretization")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "experiment": self.experiment.value,
            "group": self.group.label,
            "m": self.m,
            "p": self.p,
            "replicas": self.replicas,
            "theta_grid": list(self.theta_grid),
            "master_seed": self.master_seed,
            "transport_method": self.transport_method.value,
            "discretization": self.discretization,
            "alpha": self.alpha,
            "t_grid": list(self.t_grid),
            "u_grid": list(self.u_grid),
            "eigen_indices": list(self.eigen_indices),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        """Build from a plain mapping; ``group`` may be a label or {family, rank}."""
        for required in ("experiment", "group"):
            if required not in data:
                raise MissingFieldError(required, "experiment config")
        group = data["group"]
        if isinstance(group, dict):
            for key in ("family", "rank"):
                if key not in group:
                    raise MissingFieldError(f"group.{key}", "experiment config")
            group = GroupSpec(GroupFamily.parse(group["family"]), group["rank"])
        elif not isinstance(group, GroupSpec):
            group = GroupSpec.parse(str(group))
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        known["group"] = group
        return cls(**known)


@dataclass
class ExperimentResult:
    """Outcome of one experiment run."""

    config: ExperimentConfig
    records: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    comparisons: List[BoundComparison] = field(default_factory=list)
    p_values: Dict[str, float] = field(default_factory=dict)
    wall_time: float = 0.0
    provenance: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.comparisons)

    def recheck(self) -> bool:
        """True when every stored pass flag matches its recomputation."""
        return all(c.passed == c.evaluate() for c in self.comparisons)

    def failures(self) -> List[BoundComparison]:
        return [c for c in self.comparisons if not c.passed]
