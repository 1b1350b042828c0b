"""Exact transport between atomic circular measures."""

import math
from typing import List, Optional

import numpy as np
import ot
from ortools.graph.python import min_cost_flow

from ..core.config import config
from ..utils.exceptions import InfeasibleBalanceError, TransportError, ValidationError
from ..utils.logger import get_logger
from ..utils.validators import require_exponent, require_positive_int
from .measures import (
    CostModel,
    MeasureLike,
    PlanEntry,
    TransportMethod,
    TransportResult,
    as_measure,
    cost_matrix,
    uniform_grid,
)

logger = get_logger(__name__)

TWO_PI = 2.0 * math.pi
COST_RESOLUTION = 1e-12
# Keeps total integer cost Q·max_cost/quantum inside int64
_INT_HEADROOM = 2.0 ** 60


def _flow_plan(cost: np.ndarray, n_a: int, n_b: int):
    """Integer min-cost flow on the complete bipartite graph; returns (plan, quantum)."""
    supply_total = math.lcm(n_a, n_b)
    supply = supply_total // n_a
    demand = supply_total // n_b
    max_cost = float(cost.max()) if cost.size else 0.0
    quantum = max(COST_RESOLUTION, max_cost * supply_total / _INT_HEADROOM)
    unit_costs = np.rint(cost / quantum).astype(np.int64).ravel()

    start_nodes = np.repeat(np.arange(n_a), n_b)
    end_nodes = np.tile(np.arange(n_a, n_a + n_b), n_a)
    capacities = np.full(start_nodes.size, min(supply, demand), dtype=np.int64)

    smcf = min_cost_flow.SimpleMinCostFlow()
    all_arcs = smcf.add_arcs_with_capacity_and_unit_cost(
        start_nodes, end_nodes, capacities, unit_costs
    )
    supplies = np.concatenate([np.full(n_a, supply), np.full(n_b, -demand)]).astype(np.int64)
    smcf.set_nodes_supplies(np.arange(n_a + n_b), supplies)

    status = smcf.solve()
    if status != smcf.OPTIMAL:
        raise TransportError(f"min-cost flow failed with status {status}")

    flows = np.asarray(smcf.flows(all_arcs))
    used = np.nonzero(flows)[0]
    plan: List[PlanEntry] = [
        (int(start_nodes[k]), int(end_nodes[k] - n_a), float(flows[k]) / supply_total)
        for k in used
    ]
    return plan, quantum


def _emd_plan(cost: np.ndarray, a_weights: np.ndarray, b_weights: np.ndarray):
    b_weights = b_weights * (a_weights.sum() / b_weights.sum())
    coupling = ot.emd(a_weights, b_weights, cost)
    rows, cols = np.nonzero(coupling > 0.0)
    return [(int(i), int(j), float(coupling[i, j])) for i, j in zip(rows, cols)]


def wasserstein_exact(
    a: MeasureLike,
    b: MeasureLike,
    p: float = 1.0,
    cost_model: CostModel = CostModel.CHORD,
    max_atoms: Optional[int] = None,
) -> TransportResult:
    """Solve the finite transportation problem between ``a`` and ``b`` to optimality.

    Equal-weight measures go through an integer min-cost flow (costs quantized
    at ``COST_RESOLUTION`` or coarser, folded into the bracket); arbitrary
    weights use a network-simplex EMD.
    """
    p = require_exponent(p)
    cost_model = CostModel(cost_model)
    a = as_measure(a)
    b = as_measure(b)
    limit = max_atoms if max_atoms is not None else config.max_transport_atoms
    for name, measure in (("first", a), ("second", b)):
        if measure.size > limit:
            raise ValidationError(
                f"{name} measure has {measure.size} atoms; the exact solver allows {limit}"
            )
    if not (a.is_balanced and b.is_balanced):
        raise InfeasibleBalanceError(a.total_mass, b.total_mass)

    cost = cost_matrix(a, b, p, cost_model)
    if a.has_equal_weights and b.has_equal_weights:
        plan, quantum = _flow_plan(cost, a.size, b.size)
    else:
        plan, quantum = _emd_plan(cost, a.weights, b.weights), 0.0

    total = float(sum(mass * cost[i, j] for i, j, mass in plan))
    total = max(total, 0.0)
    value = total ** (1.0 / p)
    lower = max(total - quantum, 0.0) ** (1.0 / p)
    logger.debug(
        f"exact W_{p:g} ({cost_model.value}) on {a.size}x{b.size} atoms = {value:.12g}"
    )
    return TransportResult(
        value=value,
        p=p,
        cost_model=cost_model,
        method=TransportMethod.EXACT_FLOW,
        error_bracket=(min(lower, value), value),
        plan=plan,
    )


def wasserstein_empirical_uniform(
    a: MeasureLike, p: float = 1.0, k: Optional[int] = None
) -> TransportResult:
    """W_p(a, ν) through the K-atom midpoint discretization of ν.

    The bracket is ±2π/K: moving mass inside one arc costs at most the arc's chord.
    """
    a = as_measure(a)
    if k is None:
        k = default_discretization(a.size)
    k = require_positive_int(k, "K")
    if k % a.size:
        raise ValidationError(f"K={k} must be a multiple of the atom count {a.size}")
    if k > config.max_transport_atoms:
        raise ValidationError(f"K={k} exceeds the limit {config.max_transport_atoms}")

    result = wasserstein_exact(a, uniform_grid(k), p, CostModel.CHORD)
    delta = TWO_PI / k
    result.error_bracket = (max(result.lower - delta, 0.0), result.value + delta)
    result.discretization = k
    return result


def default_discretization(atoms: int) -> int:
    """K = factor·n, lowered to the largest multiple of n within the atom limit."""
    atoms = require_positive_int(atoms, "atoms")
    limit = config.max_transport_atoms
    if atoms > limit:
        raise ValidationError(f"{atoms} atoms exceed the limit {limit}")
    return min(config.discretization_factor * atoms, (limit // atoms) * atoms)
