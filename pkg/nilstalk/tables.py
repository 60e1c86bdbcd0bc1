"""Stalk tables: the restriction of a complex to each stratum."""

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Any

from .exceptions import DomainError
from .gradedz import CoefficientSpec, GradedGroup
from .partitions import Partition


class Perversity(Enum):
    """The two perversities over Z."""

    P = "p"
    P_PLUS = "p+"


@dataclass(frozen=True)
class StalkRow:
    """The stalk of a complex along one stratum."""

    label: str
    """Stratum label, e.g. ``"2,1"``."""

    dim: int
    """Complex dimension of the stratum."""

    group: GradedGroup
    """Stalk cohomology at a point of the stratum."""

    orbit: Partition | None = None
    """Jordan type, when the stratum is a nilpotent orbit of sl_n."""


@dataclass(frozen=True)
class StalkTable:
    """Stalks of a complex, densest stratum first."""

    strata: tuple[StalkRow, ...]
    """Rows in decreasing stratum dimension."""

    coefficients: CoefficientSpec
    """Coefficients of the complex."""

    perversity: Perversity = Perversity.P
    """The perversity the complex was built for."""

    def __post_init__(self) -> None:
        if not self.strata:
            raise DomainError("A stalk table needs at least one stratum")
        dims = [row.dim for row in self.strata]
        if any(a <= b for a, b in zip(dims, dims[1:])):
            raise DomainError(f"Strata must be listed by decreasing dimension: {dims}")
        for row in self.strata:
            if row.group.coefficients != self.coefficients:
                raise DomainError(f"Stratum {row.label} has mismatched coefficients")

    @classmethod
    def of(
        cls,
        rows: Sequence[StalkRow],
        coefficients: CoefficientSpec,
        perversity: Perversity = Perversity.P,
    ) -> "StalkTable":
        return cls(tuple(rows), coefficients, perversity)

    def __iter__(self) -> Iterator[StalkRow]:
        return iter(self.strata)

    def __len__(self) -> int:
        return len(self.strata)

    @property
    def total_dim(self) -> int:
        """Dimension of the dense stratum."""
        return self.strata[0].dim

    def labels(self) -> list[str]:
        return [row.label for row in self.strata]

    def row(self, label: str) -> StalkRow:
        for row in self.strata:
            if row.label == label:
                return row
        raise DomainError(f"No stratum labelled {label!r}")

    def stalk(self, label: str) -> GradedGroup:
        """Returns the stalk on the stratum with the given label."""
        return self.row(label).group

    def degree_range(self) -> tuple[int, int]:
        """Smallest and largest degree carrying a non-zero group (0, 0 if none)."""
        degrees = [d for row in self.strata for d in row.group.degrees()]
        if not degrees:
            return 0, 0
        return min(degrees), max(degrees)

    def to_json(self) -> dict[str, Any]:
        return {
            "coefficients": str(self.coefficients),
            "perversity": self.perversity.value,
            "strata": [
                {"label": row.label, "dim": row.dim, "groups": row.group.to_json()}
                for row in self.strata
            ],
        }
