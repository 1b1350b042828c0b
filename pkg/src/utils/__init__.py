"""Utils package for the spectral-measure lab."""

from .exceptions import (
    LabError,
    ValidationError,
    MissingFieldError,
    SamplingError,
    RankDeficientDrawError,
    MembershipError,
    SpectralError,
    QuadratureError,
    TransportError,
    InfeasibleBalanceError,
    UnequalWeightsError,
    ExperimentError,
    UnsupportedExperimentError,
    ResultError,
    ResultNotFoundError,
    ResultCorruptionError,
    ResultParseError,
)

from .validators import (
    require_positive_int,
    require_finite,
    require_range,
    require_nonnegative,
    require_exponent,
    require_probability_level,
)

from .logger import LabLogger, get_logger, set_global_level

__all__ = [
    # Exceptions
    "LabError",
    "ValidationError",
    "MissingFieldError",
    "SamplingError",
    "RankDeficientDrawError",
    "MembershipError",
    "SpectralError",
    "QuadratureError",
    "TransportError",
    "InfeasibleBalanceError",
    "UnequalWeightsError",
    "ExperimentError",
    "UnsupportedExperimentError",
    "ResultError",
    "ResultNotFoundError",
    "ResultCorruptionError",
    "ResultParseError",
    # Validators
    "require_positive_int",
    "require_finite",
    "require_range",
    "require_nonnegative",
    "require_exponent",
    "require_probability_level",
    # Logger
    "LabLogger",
    "get_logger",
    "set_global_level",
]
