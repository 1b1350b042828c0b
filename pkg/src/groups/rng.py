"""Deterministic random streams for sampling."""

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np

from ..utils.exceptions import ValidationError

_UINT64 = (1 << 64) - 1

Shape = Union[int, Tuple[int, ...]]


@dataclass(frozen=True)
class RngStream:
    """Counter-based pseudo-random stream keyed by (master seed, stream index).

    The key material is ``(master_seed, stream_index, *path)``; ``path`` grows
    through :meth:`spawn`, so every (replica, purpose) pair gets its own
    Philox stream. Identical keys give identical draws regardless of which
    thread consumes the stream or in what order streams are created.

    A single stream is stateful and must not be shared between threads.
    """

    master_seed: int
    stream_index: int = 0
    path: Tuple[int, ...] = ()
    _generator: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 0 <= self.master_seed <= _UINT64:
            raise ValidationError(
                f"master seed must be a 64-bit unsigned integer, got {self.master_seed}"
            )
        if not 0 <= self.stream_index <= _UINT64:
            raise ValidationError(
                f"stream index must be a 64-bit unsigned integer, got {self.stream_index}"
            )
        seed_seq = np.random.SeedSequence(
            entropy=self.master_seed, spawn_key=(self.stream_index, *self.path)
        )
        object.__setattr__(self, "_generator", np.random.Generator(np.random.Philox(seed_seq)))

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    @property
    def trace(self) -> Tuple[int, int, Tuple[int, ...]]:
        """(master seed, stream index, purpose path) identifying this stream."""
        return (self.master_seed, self.stream_index, self.path)

    def spawn(self, purpose: int) -> "RngStream":
        """Child stream for a sub-purpose; independent of this stream's state."""
        return RngStream(self.master_seed, self.stream_index, (*self.path, int(purpose)))

    def standard_normal(self, size: Optional[Shape] = None) -> np.ndarray:
        return self._generator.standard_normal(size)

    def uniform(self, low: float = 0.0, high: float = 1.0, size: Optional[Shape] = None):
        return self._generator.uniform(low, high, size)

    def random(self, size: Optional[Shape] = None):
        return self._generator.random(size)


def stream_for(master_seed: int, stream_index: int, *path: int) -> RngStream:
    """Convenience constructor mirroring the harness's replica keying."""
    return RngStream(master_seed, stream_index, tuple(path))
