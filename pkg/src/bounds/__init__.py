"""Evaluators for the explicit count and distance bounds."""

from .evaluators import (
    PROOF_EXPLICIT,
    BoundQuery,
    ConstantMode,
    LsiMetric,
    as_rate,
    bernstein_tail,
    concentration_bound,
    derived_tail_bound,
    EVALUATORS,
    eigenangle_center,
    eigenangle_deviation,
    eigenangle_moment_bound,
    eigenangle_tail,
    evaluate,
    evaluate_all,
    lipschitz_constant,
    log_factor,
    lsi_constant,
    mean_wp_bound,
    power_variance_bound,
    rate_exponent,
    tail_bound,
)

__all__ = [
    "PROOF_EXPLICIT",
    "BoundQuery",
    "ConstantMode",
    "LsiMetric",
    "as_rate",
    "bernstein_tail",
    "concentration_bound",
    "derived_tail_bound",
    "EVALUATORS",
    "eigenangle_center",
    "eigenangle_deviation",
    "eigenangle_moment_bound",
    "eigenangle_tail",
    "evaluate",
    "evaluate_all",
    "lipschitz_constant",
    "log_factor",
    "lsi_constant",
    "mean_wp_bound",
    "power_variance_bound",
    "rate_exponent",
    "tail_bound",
]
