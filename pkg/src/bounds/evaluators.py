"""Right-hand sides of the explicit inequalities for counts and distances."""

import math
from dataclasses import dataclass, fields
from enum import Enum
from typing import Callable, Dict, Optional, Tuple

from scipy import special

from ..utils.exceptions import MissingFieldError, ValidationError
from ..utils.validators import (
    require_exponent,
    require_nonnegative,
    require_positive_int,
)


class LsiMetric(str, Enum):
    HILBERT_SCHMIDT = "hilbert_schmidt"
    GEODESIC = "geodesic"


@dataclass(frozen=True)
class ConstantMode:
    """ProofExplicit when ``c`` is None, otherwise an absolute constant C = c."""

    c: Optional[float] = None

    @classmethod
    def proof_explicit(cls) -> "ConstantMode":
        return cls(None)

    @classmethod
    def absolute(cls, c: float) -> "ConstantMode":
        return cls(require_nonnegative(c, "C"))

    @property
    def is_proof_explicit(self) -> bool:
        return self.c is None


PROOF_EXPLICIT = ConstantMode.proof_explicit()


@dataclass(frozen=True)
class BoundQuery:
    """Parameters for the bound evaluators; each evaluator reads only what it needs."""

    N: Optional[int] = None
    m: Optional[int] = None
    p: Optional[float] = None
    t: Optional[float] = None
    u: Optional[float] = None
    j: Optional[int] = None
    sigma_sq: Optional[float] = None
    L: Optional[float] = None

    def require(self, name: str, evaluator: str = ""):
        value = getattr(self, name)
        if value is None:
            raise MissingFieldError(name, evaluator)
        return value

    def present(self) -> Dict[str, object]:
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        return {name: value for name, value in values.items() if value is not None}


def _power_pair(n: int, m: int):
    n = require_positive_int(n, "N")
    m = require_positive_int(m, "m")
    if m > n:
        raise ValidationError(f"m must satisfy m <= N, got m={m}, N={n}")
    return n, m


def log_factor(n: int, m: int) -> float:
    """m·[log(N/m) + 1]."""
    n, m = _power_pair(n, m)
    return m * (math.log(n / m) + 1.0)


def power_variance_bound(n: int, m: int) -> float:
    """Variance bound m(log(N/m) + 1) for counts of U^m."""
    return log_factor(n, m)


def bernstein_tail(t: float, sigma_sq: float) -> float:
    """2·exp(−min{t²/4σ², t/2})."""
    t = require_nonnegative(t, "t")
    if t <= 0.0:
        raise ValidationError("t must be > 0")
    sigma_sq = require_nonnegative(sigma_sq, "sigma_sq")
    exponent = t / 2.0 if sigma_sq == 0.0 else min(t * t / (4.0 * sigma_sq), t / 2.0)
    return 2.0 * math.exp(-exponent)


def eigenangle_tail(n: int, m: int, u: float) -> float:
    """4·exp(−min{u²/(m[log(N/m)+1]), u}) bounding P[|θ_j − 2πj/N| > (4π/N)u]."""
    scale = log_factor(n, m)
    u = require_nonnegative(u, "u")
    if u <= 0.0:
        raise ValidationError("u must be > 0")
    return 4.0 * math.exp(-min(u * u / scale, u))


def eigenangle_deviation(n: int, u: float) -> float:
    """Angular deviation (4π/N)·u matching ``eigenangle_tail``'s u."""
    return 4.0 * math.pi * require_nonnegative(u, "u") / require_positive_int(n, "N")


def eigenangle_moment_bound(n: int, m: int, p: float) -> float:
    """8Γ(p+1)·((4π/N)·√(m[log(N/m)+1]))^p bounding E|θ_j − 2πj/N|^p."""
    p = require_exponent(p)
    scale = 4.0 * math.pi * math.sqrt(log_factor(n, m)) / n
    return math.exp(math.log(8.0) + special.gammaln(p + 1.0) + p * math.log(scale))


def mean_wp_bound(n: int, m: int, p: float, mode: ConstantMode = PROOF_EXPLICIT) -> float:
    """Bound on E W_p(μ_{N,m}, ν).

    ProofExplicit: (8Γ(p+1))^{1/p}·(4π/N)·√(m[log(N/m)+1]) + π/N.
    AbsoluteC(c): c·p·√(m[log(N/m)+1])/N.
    """
    p = require_exponent(p)
    root = math.sqrt(log_factor(n, m))
    if mode.is_proof_explicit:
        prefactor = math.exp((math.log(8.0) + special.gammaln(p + 1.0)) / p)
        return prefactor * (4.0 * math.pi / n) * root + math.pi / n
    return mode.c * p * root / n


def tail_bound(n: int, m: int, p: float, t: float) -> float:
    """exp(−N²t²/24m) for p ≤ 2, exp(−N^{1+2/p}t²/24m) for p > 2."""
    n, m = _power_pair(n, m)
    p = require_exponent(p)
    t = require_nonnegative(t, "t")
    power = 2.0 if p <= 2.0 else 1.0 + 2.0 / p
    return math.exp(-(n ** power) * t * t / (24.0 * m))


def rate_exponent(p: float) -> float:
    """min{1, 1/2 + 1/p}."""
    return min(1.0, 0.5 + 1.0 / require_exponent(p))


def as_rate(n: int, m: int, p: float, c: Optional[float] = None) -> float:
    """Almost-sure rate C·p·√(m log N)/N^{min(1, 1/2+1/p)}.

    For p <= 2 the rate is usually stated as C·√(m log N)/N; that constant is
    absorbed into C·p here so both branches agree at p = 2.

    Without ``c`` the value is the explicit mean bound plus the deviation
    t_N = 5·√(m log N)/N^{min(1, 1/2+1/p)}.
    """
    n, m = _power_pair(n, m)
    if n < 2:
        raise ValidationError("as_rate needs N >= 2")
    p = require_exponent(p)
    rate = math.sqrt(m * math.log(n)) / n ** rate_exponent(p)
    if c is None:
        return mean_wp_bound(n, m, p) + 5.0 * rate
    return require_nonnegative(c, "C") * p * rate


def lipschitz_constant(n: int, p: float) -> float:
    """N^{−1/max(p, 2)}."""
    n = require_positive_int(n, "N")
    p = require_exponent(p)
    return n ** (-1.0 / max(p, 2.0))


def lsi_constant(n: int, metric: LsiMetric = LsiMetric.HILBERT_SCHMIDT) -> float:
    """Log-Sobolev constant of U(N): 6/N (Hilbert-Schmidt) or 3π²/2N (geodesic)."""
    n = require_positive_int(n, "N")
    if LsiMetric(metric) is LsiMetric.GEODESIC:
        return 3.0 * math.pi ** 2 / (2.0 * n)
    return 6.0 / n


def concentration_bound(n_min: float, lipschitz: float, t: float) -> float:
    """exp(−N·t²/(12L²)) for an L-Lipschitz function of independent Haar unitaries."""
    n_min = require_nonnegative(n_min, "N_min")
    if n_min <= 0.0:
        raise ValidationError("N_min must be > 0")
    lipschitz = require_nonnegative(lipschitz, "L")
    if lipschitz == 0.0:
        raise ValidationError("L must be > 0")
    t = require_nonnegative(t, "t")
    return math.exp(-n_min * t * t / (12.0 * lipschitz ** 2))


def derived_tail_bound(n: int, m: int, p: float, t: float) -> float:
    """Concentration bound with ⌊N/m⌋ replaced by N/2m and the spectral Lipschitz constant."""
    n, m = _power_pair(n, m)
    return concentration_bound(n / (2.0 * m), lipschitz_constant(n, p), t)


def eigenangle_center(n: int, j: int) -> float:
    """Predicted location 2πj/N of the j-th eigenangle."""
    n = require_positive_int(n, "N")
    j = require_positive_int(j, "j")
    if j > n:
        raise ValidationError(f"j must satisfy 1 <= j <= N, got j={j}, N={n}")
    return 2.0 * math.pi * j / n


Evaluator = Callable[[BoundQuery], float]

# name -> (required fields, applicability guard, evaluator)
EVALUATORS: Dict[str, Tuple[Tuple[str, ...], Callable[[BoundQuery], bool], Evaluator]] = {
    "bernstein_tail": (
        ("t", "sigma_sq"), lambda q: q.t > 0, lambda q: bernstein_tail(q.t, q.sigma_sq)),
    "lsi_constant": (("N",), lambda q: True, lambda q: lsi_constant(q.N)),
    "lsi_constant_geodesic": (
        ("N",), lambda q: True, lambda q: lsi_constant(q.N, LsiMetric.GEODESIC)),
    "lipschitz_constant": (
        ("N", "p"), lambda q: True, lambda q: lipschitz_constant(q.N, q.p)),
    "eigenangle_center": (
        ("N", "j"), lambda q: True, lambda q: eigenangle_center(q.N, q.j)),
    "power_variance_bound": (
        ("N", "m"), lambda q: True, lambda q: power_variance_bound(q.N, q.m)),
    "eigenangle_tail": (
        ("N", "m", "u"), lambda q: q.u > 0, lambda q: eigenangle_tail(q.N, q.m, q.u)),
    "eigenangle_deviation": (
        ("N", "m", "u"), lambda q: q.u > 0, lambda q: eigenangle_deviation(q.N, q.u)),
    "mean_wp_bound": (
        ("N", "m", "p"), lambda q: True, lambda q: mean_wp_bound(q.N, q.m, q.p)),
    "mean_wp_bound_c1": (
        ("N", "m", "p"), lambda q: True,
        lambda q: mean_wp_bound(q.N, q.m, q.p, ConstantMode.absolute(1.0))),
    "eigenangle_moment_bound": (
        ("N", "m", "p"), lambda q: True, lambda q: eigenangle_moment_bound(q.N, q.m, q.p)),
    "as_rate": (("N", "m", "p"), lambda q: q.N >= 2, lambda q: as_rate(q.N, q.m, q.p)),
    "tail_bound": (
        ("N", "m", "p", "t"), lambda q: True, lambda q: tail_bound(q.N, q.m, q.p, q.t)),
    "derived_tail_bound": (
        ("N", "m", "p", "t"), lambda q: True,
        lambda q: derived_tail_bound(q.N, q.m, q.p, q.t)),
    "concentration_bound": (
        ("N", "L", "t"), lambda q: q.L > 0, lambda q: concentration_bound(q.N, q.L, q.t)),
}


def evaluate(name: str, query: BoundQuery) -> float:
    """Run one named evaluator; a field it needs that ``query`` lacks raises MissingFieldError."""
    if name not in EVALUATORS:
        raise ValidationError(f"Unknown bound evaluator: {name}")
    required, _, evaluator = EVALUATORS[name]
    for field_name in required:
        query.require(field_name, name)
    return evaluator(query)


def evaluate_all(query: BoundQuery) -> Dict[str, float]:
    """Every evaluator whose inputs are present in ``query``; the others are left out."""
    present = query.present()
    results: Dict[str, float] = {}
    for name, (required, applies, _) in EVALUATORS.items():
        if all(field_name in present for field_name in required) and applies(query):
            results[name] = evaluate(name, query)
    return results
