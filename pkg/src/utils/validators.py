"""Input validation utilities."""

import math
import operator
from typing import Optional

from .exceptions import ValidationError


def require_positive_int(value: int, name: str) -> int:
    """Validate a positive integer parameter (N, m, K, replicas)."""
    if isinstance(value, bool):
        raise ValidationError(f"{name} must be an integer, got {value!r}")
    try:
        value = operator.index(value)
    except TypeError:
        raise ValidationError(f"{name} must be an integer, got {value!r}") from None
    if value < 1:
        raise ValidationError(f"{name} must be >= 1, got {value}")
    return value


def require_finite(value: float, name: str) -> float:
    """Validate a finite real number."""
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value}")
    return value


def require_range(
    value: float,
    name: str,
    low: float,
    high: float,
    *,
    include_low: bool = True,
    include_high: bool = True,
) -> float:
    """Validate that ``value`` lies in the interval between ``low`` and ``high``."""
    value = require_finite(value, name)
    above = value >= low if include_low else value > low
    below = value <= high if include_high else value < high
    if not (above and below):
        left = "[" if include_low else "("
        right = "]" if include_high else ")"
        raise ValidationError(f"{name} must lie in {left}{low}, {high}{right}, got {value}")
    return value


def require_nonnegative(value: float, name: str) -> float:
    """Validate a nonnegative real number."""
    value = require_finite(value, name)
    if value < 0:
        raise ValidationError(f"{name} must be >= 0, got {value}")
    return value


def require_exponent(p: float, name: str = "p") -> float:
    """Validate a Wasserstein exponent p >= 1."""
    p = require_finite(p, name)
    if p < 1:
        raise ValidationError(f"{name} must be >= 1, got {p}")
    return p


def require_probability_level(alpha: float, upper: Optional[float] = 0.1) -> float:
    """Validate a significance level in (0, upper]."""
    return require_range(alpha, "alpha", 0.0, upper if upper is not None else 1.0,
                         include_low=False)
