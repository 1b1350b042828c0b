"""Data models for the group sampler."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from ..utils.exceptions import ValidationError
from ..utils.validators import require_positive_int


class GroupFamily(str, Enum):
    """Compact classical groups and the SO⁻ coset."""

    UNITARY = "u"
    SPECIAL_UNITARY = "su"
    ORTHOGONAL = "o"
    SPECIAL_ORTHOGONAL = "so"
    NEG_ORTHOGONAL = "so-"
    SYMPLECTIC = "sp"

    @classmethod
    def parse(cls, value: str) -> "GroupFamily":
        """Accept CLI tokens ("so-") as well as enum names ("NEG_ORTHOGONAL")."""
        if isinstance(value, cls):
            return value
        text = str(value).strip()
        for member in cls:
            if text.lower() == member.value or text.upper() == member.name:
                return member
        choices = ", ".join(m.value for m in cls)
        raise ValidationError(f"Unknown group family {value!r}; expected one of {choices}")

    @property
    def is_real(self) -> bool:
        return self in (
            GroupFamily.ORTHOGONAL,
            GroupFamily.SPECIAL_ORTHOGONAL,
            GroupFamily.NEG_ORTHOGONAL,
        )


@dataclass(frozen=True)
class GroupSpec:
    """A group (or coset) together with its rank parameter N.

    Matrices are N×N except for Sp(N), which is realized as 2N×2N complex
    matrices.
    """

    family: GroupFamily
    rank: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", GroupFamily.parse(self.family))
        object.__setattr__(self, "rank", require_positive_int(self.rank, "rank"))

    @property
    def matrix_size(self) -> int:
        if self.family is GroupFamily.SYMPLECTIC:
            return 2 * self.rank
        return self.rank

    @property
    def label(self) -> str:
        """Short label such as ``so-(5)`` used in reports and CSV rows."""
        return f"{self.family.value}({self.rank})"

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse a label of the form ``family(N)``."""
        text = text.strip()
        if not text.endswith(")") or "(" not in text:
            raise ValidationError(f"Invalid group label {text!r}; expected family(N)")
        name, _, rest = text.partition("(")
        try:
            rank = int(rest[:-1])
        except ValueError:
            raise ValidationError(f"Invalid rank in group label {text!r}") from None
        return cls(GroupFamily.parse(name), rank)


@dataclass
class MatrixSample:
    """A sampled group element with its provenance."""

    entries: np.ndarray
    spec: GroupSpec
    seed_trace: Optional[Tuple[int, int, Tuple[int, ...]]] = None
    # Coset actually drawn when spec is plain O(N)
    coset: Optional[GroupFamily] = None
    residuals: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return int(self.entries.shape[0])

    @property
    def effective_family(self) -> GroupFamily:
        """Family used for eigenvalue classification (coset for O(N) draws)."""
        if self.spec.family is GroupFamily.ORTHOGONAL and self.coset is not None:
            return self.coset
        return self.spec.family
