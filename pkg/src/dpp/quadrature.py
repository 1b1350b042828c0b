"""Adaptive quadrature helpers for kernel moments."""

import math
import warnings
from typing import Callable, Iterable, Tuple

import numpy as np
from scipy import integrate

from ..utils.exceptions import QuadratureError
from ..utils.logger import get_logger

logger = get_logger(__name__)

GAUSS_ORDER = 16
TENSOR_TOL = 1e-7
MAX_PANELS = 2 ** 16
# Kernel evaluations held in memory at once by the tensor rule
_CHUNK = 1 << 22


def integrate_panels(
    func: Callable[[float], float],
    breakpoints: Iterable[float],
    epsabs: float = 1e-12,
    epsrel: float = 1e-10,
) -> Tuple[float, float]:
    """Sum of adaptive Gauss-Kronrod integrals over consecutive breakpoints.

    Returns (value, error estimate). Raises QuadratureError when a panel fails.
    """
    points = np.unique(np.asarray(list(breakpoints), dtype=float))
    total = 0.0
    error = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        for a, b in zip(points[:-1], points[1:]):
            try:
                value, err = integrate.quad(func, a, b, epsabs=epsabs, epsrel=epsrel, limit=200)
            except integrate.IntegrationWarning as exc:
                raise QuadratureError(f"panel [{a:.6g}, {b:.6g}]: {exc}") from None
            total += value
            error += err
    return total, error


def gauss_panels(a: float, b: float, panels: int, order: int = GAUSS_ORDER
                 ) -> Tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights on [a, b]."""
    base_x, base_w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = np.diff(edges) / 2.0
    mid = (edges[:-1] + edges[1:]) / 2.0
    nodes = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
    weights = (half[:, None] * base_w[None, :]).ravel()
    return nodes, weights


def _tensor_sum(
    kernel_sq: Callable[[np.ndarray, np.ndarray], np.ndarray],
    x_nodes: np.ndarray,
    x_weights: np.ndarray,
    y_nodes: np.ndarray,
    y_weights: np.ndarray,
) -> float:
    rows = max(1, _CHUNK // max(1, y_nodes.size))
    total = 0.0
    for start in range(0, x_nodes.size, rows):
        xs = x_nodes[start:start + rows]
        block = kernel_sq(xs[:, None], y_nodes[None, :])
        total += float(x_weights[start:start + rows] @ block @ y_weights)
    return total


def tensor_double_integral(
    kernel_sq: Callable[[np.ndarray, np.ndarray], np.ndarray],
    x_interval: Tuple[float, float],
    y_interval: Tuple[float, float],
    initial_panels: int,
    tol: float = TENSOR_TOL,
    max_panels: int = MAX_PANELS,
) -> float:
    """∫∫ kernel_sq over a rectangle by tensor Gauss-Legendre with panel doubling.

    Stops once two successive refinements differ by less than ``tol``.
    """
    panels = max(1, initial_panels)
    previous = math.nan
    while panels <= max_panels:
        xn, xw = gauss_panels(*x_interval, panels)
        yn, yw = gauss_panels(*y_interval, panels)
        value = _tensor_sum(kernel_sq, xn, xw, yn, yw)
        if abs(value - previous) < tol:
            return value
        logger.debug(f"tensor quadrature: {panels} panels -> {value:.12g}")
        previous = value
        panels *= 2
    raise QuadratureError(
        f"no convergence to {tol:g} within {max_panels} panels per axis "
        f"(last value {previous:.12g})"
    )
