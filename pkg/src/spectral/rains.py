"""Block model for the spectrum of powers of Haar unitaries."""

import math
from typing import List

import numpy as np

from ..groups.haar import sample_haar
from ..groups.models import GroupFamily, GroupSpec
from ..groups.rng import RngStream
from ..utils.exceptions import ValidationError
from ..utils.logger import get_logger
from ..utils.validators import require_positive_int
from .angles import AngleSet, eigenangles

logger = get_logger(__name__)


def effective_power(n: int, m: int) -> int:
    """Powers m ≥ N all give N i.i.d. uniform angles, so only min(m, N) matters."""
    return min(require_positive_int(m, "m"), require_positive_int(n, "N"))


def rains_block_sizes(n: int, m: int) -> List[int]:
    """Sizes ⌈(N−j)/m⌉ for j = 0..m−1."""
    n = require_positive_int(n, "N")
    m = require_positive_int(m, "m")
    if m > n:
        raise ValidationError(f"m must satisfy m <= N, got m={m}, N={n}")
    return [(n - j + m - 1) // m for j in range(m)]


def sample_power_spectrum_rains(n: int, m: int, rng: RngStream) -> AngleSet:
    """Angles distributed as those of U^m for U Haar on U(N).

    Uses independent Haar blocks of sizes ``rains_block_sizes(N, m)``; for
    m > N the angles are N i.i.d. uniform points.
    """
    n = require_positive_int(n, "N")
    m = require_positive_int(m, "m")
    spec = GroupSpec(GroupFamily.UNITARY, n)
    if m > n:
        values = rng.uniform(0.0, 2.0 * math.pi, n)
        return AngleSet.from_angles(values, spec=spec, power=m)

    pieces = []
    for j, size in enumerate(rains_block_sizes(n, m)):
        block = sample_haar(GroupSpec(GroupFamily.UNITARY, size), rng.spawn(j))
        pieces.append(eigenangles(block).angles)
    logger.debug(f"Rains sample N={n} m={m} from {len(pieces)} blocks")
    return AngleSet.from_angles(np.concatenate(pieces), spec=spec, power=m)
