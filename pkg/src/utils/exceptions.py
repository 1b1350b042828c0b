"""Custom exceptions for the spectral-measure lab."""

from typing import Optional, Sequence, Tuple


class LabError(Exception):
    """Base exception for all lab errors."""
    pass


class ValidationError(LabError):
    """Input validation error."""
    pass


class MissingFieldError(ValidationError):
    """A required field was not supplied."""

    def __init__(self, field: str, context: str = ""):
        self.field = field
        self.context = context
        where = f" for {context}" if context else ""
        super().__init__(f"Missing required field '{field}'{where}")


class SamplingError(LabError):
    """Random matrix sampling errors."""
    pass


class RankDeficientDrawError(SamplingError):
    """Ginibre draw was numerically singular twice in a row."""

    def __init__(self, n: int, pivot: float):
        self.n = n
        self.pivot = pivot
        super().__init__(f"Rank-deficient Ginibre draw of size {n} (|R_jj| = {pivot:.3e})")


class MembershipError(SamplingError):
    """Matrix violates a group membership constraint."""

    def __init__(self, kind: str, residual: float, tolerance: float):
        self.kind = kind
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(
            f"Membership check '{kind}' failed: residual {residual:.3e} > {tolerance:.1e}"
        )


class SpectralError(LabError):
    """Eigenvalue extraction or classification errors."""
    pass


class QuadratureError(LabError):
    """Numerical integration did not converge."""

    def __init__(self, diagnostic: str):
        self.diagnostic = diagnostic
        super().__init__(f"Quadrature did not converge: {diagnostic}")


class TransportError(LabError):
    """Optimal transport errors."""
    pass


class InfeasibleBalanceError(TransportError):
    """Measures do not carry the same total mass."""

    def __init__(self, total_a: float, total_b: float = 1.0):
        self.total_a = total_a
        self.total_b = total_b
        super().__init__(f"Unbalanced transport problem: masses {total_a!r} and {total_b!r}")


class UnequalWeightsError(TransportError):
    """Method requires equal-weight atoms."""

    def __init__(self, method: str):
        self.method = method
        super().__init__(f"{method} requires equal-weight atoms")


class ExperimentError(LabError):
    """Experiment configuration or execution errors."""
    pass


class UnsupportedExperimentError(ExperimentError):
    """Experiment cannot run on the requested group."""

    def __init__(self, experiment: str, group: str, supported: Sequence[Tuple[str, str]]):
        self.experiment = experiment
        self.group = group
        self.supported = list(supported)
        pairs = ", ".join(f"{e}/{g}" for e, g in self.supported)
        super().__init__(
            f"Experiment '{experiment}' does not support group '{group}'. Supported: {pairs}"
        )


class ResultError(LabError):
    """Result persistence errors."""
    pass


class ResultNotFoundError(ResultError):
    """Result file does not exist."""

    def __init__(self, filename: str):
        self.filename = filename
        super().__init__(f"Result file '{filename}' not found")


class ResultCorruptionError(ResultError):
    """Result file checksum does not match its contents."""

    def __init__(self, filename: str):
        self.filename = filename
        super().__init__(f"Result file '{filename}' is corrupted")


class ResultParseError(ResultError):
    """Result file is malformed."""

    def __init__(self, filename: str, field: str, line: Optional[int] = None):
        self.filename = filename
        self.field = field
        self.line = line
        at = f" (line {line})" if line is not None else ""
        super().__init__(f"Cannot parse '{filename}'{at}: bad or missing field '{field}'")
