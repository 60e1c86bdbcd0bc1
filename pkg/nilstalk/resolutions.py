"""Resolutions of nilpotent orbit closures and their proper pushforwards."""

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass

from .exceptions import DomainError, InvalidCase
from .gradedz import (
    CoefficientSpec,
    GradedGroup,
    change_coefficients,
    multiple,
    shift,
    subtract,
)
from .partitions import Partition, orbit_dim
from .spaces import SpaceDescriptor, cohomology
from .tables import StalkRow, StalkTable

_LOGGER = logging.getLogger("nilstalk")

_POINT = GradedGroup.concentrated([0])


@dataclass(frozen=True)
class StratumFiberData:
    """A stratum of the target together with the cohomology of the fibre over it."""

    label: str
    """Stratum label."""

    stratum_dim: int
    """Complex dimension of the stratum."""

    fiber_cohomology: GradedGroup
    """Integral cohomology of the fibre, in nonnegative degrees."""

    orbit: Partition | None = None
    """Jordan type of the stratum, for orbits in sl_n."""

    def __post_init__(self) -> None:
        if self.fiber_cohomology.coefficients.is_field:
            raise DomainError(f"Fibre over {self.label} needs integral cohomology")
        if self.fiber_cohomology.rank(0) < 1:
            raise DomainError(f"Fibre over {self.label} is empty")

    @classmethod
    def over_orbit(cls, orbit: Partition, fiber: GradedGroup) -> "StratumFiberData":
        return cls(str(orbit), orbit_dim(orbit), fiber, orbit)

    @property
    def fiber_dim(self) -> int:
        """Complex dimension of the fibre."""
        return max(self.fiber_cohomology.degrees()) // 2


@dataclass(frozen=True)
class ResolutionDescriptor:
    """A resolution of an irreducible variety, described stratum by stratum."""

    name: str
    """Registry name."""

    total_dim: int
    """Dimension of the source and of the target."""

    strata: tuple[StratumFiberData, ...]
    """Strata of the target, dense stratum first."""

    def __post_init__(self) -> None:
        if not self.strata:
            raise DomainError(f"{self.name}: no strata")
        dense = self.strata[0]
        if dense.stratum_dim != self.total_dim or dense.fiber_cohomology != _POINT:
            raise DomainError(f"{self.name}: the dense stratum must have a point fibre")
        dims = [s.stratum_dim for s in self.strata]
        if any(a <= b for a, b in zip(dims, dims[1:])):
            raise DomainError(f"{self.name}: stratum dimensions must decrease")

    def codim(self, stratum: StratumFiberData) -> int:
        return self.total_dim - stratum.stratum_dim


def is_semismall(r: ResolutionDescriptor) -> bool:
    """Whether 2 dim F_S <= codim S for every stratum S."""
    return all(2 * s.fiber_dim <= r.codim(s) for s in r.strata)


def relevant_strata(r: ResolutionDescriptor) -> list[StratumFiberData]:
    """Non-dense strata with 2 dim F_S = codim S."""
    return [s for s in r.strata[1:] if 2 * s.fiber_dim == r.codim(s)]


def is_small(r: ResolutionDescriptor) -> bool:
    """Whether r is semismall with no relevant stratum besides the dense one."""
    return is_semismall(r) and not relevant_strata(r)


def pushforward_stalk_table(r: ResolutionDescriptor, k: CoefficientSpec) -> StalkTable:
    """Stalks of the pushforward of the shifted constant sheaf k[total_dim].

    :param r: The resolution.
    :param k: Coefficients of the constant sheaf.
    """
    rows = []
    for s in r.strata:
        fiber = s.fiber_cohomology
        if k.is_field:
            fiber = change_coefficients(fiber, k)
        stalk = shift(fiber, r.total_dim)
        rows.append(StalkRow(s.label, s.stratum_dim, stalk, s.orbit))
    _LOGGER.debug("Pushforward stalks of %s over %s", r.name, k)
    return StalkTable.of(rows, k)


def split_subtract(
    total: GradedGroup, summand: GradedGroup, multiplicity: int
) -> GradedGroup:
    """Removes multiplicity copies of a split summand.

    :param total: The complex that splits.
    :param summand: The summand to remove.
    :param multiplicity: How many copies split off; at least one.
    :raises ContainmentError: if the copies do not fit, i.e. the splitting fails.
    """
    if multiplicity < 1:
        raise DomainError(f"Split multiplicity must be positive: {multiplicity}")
    return subtract(total, multiple(summand, multiplicity))


def subregular_fiber(n: int) -> GradedGroup:
    """Cohomology of a chain of n - 1 projective lines (the Dynkin curve of A_(n-1))."""
    return GradedGroup.from_ranks({0: 1, 2: n - 1})


def _check_n(name: str, n: int | None, least: int) -> int:
    if n is None:
        raise DomainError(f"{name} needs n")
    if n < least:
        raise DomainError(f"{name} needs n >= {least}, got {n}")
    return n


def _springer_sl2(n: int | None) -> ResolutionDescriptor:
    return ResolutionDescriptor(
        "springer-sl2",
        2,
        (
            StratumFiberData.over_orbit(Partition.of(2), _POINT),
            StratumFiberData.over_orbit(
                Partition.of(1, 1), cohomology(SpaceDescriptor.projective(1))
            ),
        ),
    )


def _minimal_sln(n: int | None) -> ResolutionDescriptor:
    n = _check_n("minimal-sln", n, 2)
    minimal = Partition((2,) + (1,) * (n - 2))
    zero = Partition((1,) * n)
    return ResolutionDescriptor(
        "minimal-sln",
        orbit_dim(minimal),
        (
            StratumFiberData.over_orbit(minimal, _POINT),
            StratumFiberData.over_orbit(
                zero, cohomology(SpaceDescriptor.projective(n - 1))
            ),
        ),
    )


def _minimal_sp2n(n: int | None) -> ResolutionDescriptor:
    n = _check_n("minimal-sp2n", n, 1)
    # Jordan types in sp_2n; the sl_n dimension formula does not apply.
    minimal = Partition((2,) + (1,) * (2 * n - 2))
    zero = Partition((1,) * (2 * n))
    return ResolutionDescriptor(
        "minimal-sp2n",
        2 * n,
        (
            StratumFiberData(str(minimal), 2 * n, _POINT),
            StratumFiberData(
                str(zero), 0, cohomology(SpaceDescriptor.projective(2 * n - 1))
            ),
        ),
    )


def _subregular(name: str, n: int) -> ResolutionDescriptor:
    regular = Partition.of(n)
    subregular = Partition.of(n - 1, 1)
    return ResolutionDescriptor(
        name,
        orbit_dim(regular),
        (
            StratumFiberData.over_orbit(regular, _POINT),
            StratumFiberData.over_orbit(subregular, subregular_fiber(n)),
        ),
    )


def _subreg_sln(n: int | None) -> ResolutionDescriptor:
    return _subregular("subreg-sln", _check_n("subreg-sln", n, 2))


def _springer_sl3_u(n: int | None) -> ResolutionDescriptor:
    return _subregular("springer-sl3-U", 3)


def _springer_sl3(n: int | None) -> ResolutionDescriptor:
    return ResolutionDescriptor(
        "springer-sl3",
        6,
        (
            StratumFiberData.over_orbit(Partition.of(3), _POINT),
            StratumFiberData.over_orbit(Partition.of(2, 1), subregular_fiber(3)),
            StratumFiberData.over_orbit(
                Partition.of(1, 1, 1), cohomology(SpaceDescriptor.full_flag(3))
            ),
        ),
    )


def _richardson_sl4_22(n: int | None) -> ResolutionDescriptor:
    return ResolutionDescriptor(
        "richardson-sl4-22",
        8,
        (
            StratumFiberData.over_orbit(Partition.of(2, 2), _POINT),
            StratumFiberData.over_orbit(
                Partition.of(2, 1, 1), cohomology(SpaceDescriptor.projective(1))
            ),
            StratumFiberData.over_orbit(
                Partition.of(1, 1, 1, 1),
                cohomology(SpaceDescriptor.grassmannian(2, 4)),
            ),
        ),
    )


_RESOLUTIONS: dict[str, Callable[[int | None], ResolutionDescriptor]] = {
    "springer-sl2": _springer_sl2,
    "minimal-sln": _minimal_sln,
    "minimal-sp2n": _minimal_sp2n,
    "subreg-sln": _subreg_sln,
    "springer-sl3-U": _springer_sl3_u,
    "springer-sl3": _springer_sl3,
    "richardson-sl4-22": _richardson_sl4_22,
}

PARAMETRIC = frozenset({"minimal-sln", "minimal-sp2n", "subreg-sln"})


def get_resolutions(n: int = 2) -> Iterable[ResolutionDescriptor]:
    """Retrieves every registered resolution.

    :param n: The rank parameter used for the parametric families.
    """
    for name, build in _RESOLUTIONS.items():
        yield build(n if name in PARAMETRIC else None)


def get_resolution(name: str, n: int | None = None) -> ResolutionDescriptor:
    """Retrieves a registered resolution.

    :param name: The registry name, e.g. ``"springer-sl2"``.
    :param n: The rank parameter of ``minimal-sln``, ``minimal-sp2n`` or
        ``subreg-sln``.
    """
    if (build := _RESOLUTIONS.get(name, None)) is None:
        raise InvalidCase(f"Unknown resolution name: {name}")
    return build(n)
