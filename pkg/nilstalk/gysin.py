"""Cohomology of a vector bundle minus its zero section, via the Gysin sequence.

For a complex vector bundle E of rank r over B the sequence reads::

    ... -> H^(i-2r)(B) --e--> H^i(B) -> H^i(E - B)
        -> H^(i-2r+1)(B) --e--> H^(i+1)(B) -> ...

When H^*(B) is free and concentrated in even degrees it splits: the
complement has the cokernel of e in even degrees and the kernel in odd ones.
"""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .exceptions import DomainError, PreconditionError
from .gradedz import CoefficientKind, CoefficientSpec, FGAbGroup, GradedGroup
from .spaces import (
    SpaceDescriptor,
    SpaceKind,
    cohomology,
    euler_characteristic,
    parse_space,
)

_LOGGER = logging.getLogger("nilstalk")

IntMatrix = tuple[tuple[int, ...], ...]


def _domain_matrix(matrix: IntMatrix, cols: int) -> DomainMatrix:
    rows = [[ZZ(x) for x in row] for row in matrix]
    return DomainMatrix(rows, (len(matrix), cols), ZZ)


def _rank_over(matrix: IntMatrix, cols: int, k: CoefficientSpec) -> int:
    if not matrix or not cols:
        return 0
    m = _domain_matrix(matrix, cols)
    domain = GF(k.p) if k.kind is CoefficientKind.PRIME_FIELD else QQ
    return m.convert_to(domain).rank()


def _cokernel(matrix: IntMatrix, cols: int) -> FGAbGroup:
    """Z^rows / image, through the Smith normal form."""
    rows = len(matrix)
    if not rows or not cols:
        return FGAbGroup(rows)
    factors = [abs(int(d)) for d in invariant_factors(_domain_matrix(matrix, cols))]
    rank = _rank_over(matrix, cols, CoefficientSpec.rational())
    return FGAbGroup.from_invariant_factors(rows - rank, *(d for d in factors if d > 1))


@dataclass(frozen=True)
class EulerAction:
    """Multiplication by the Euler class e in H^(2r) of the base."""

    base: GradedGroup
    """Integral cohomology of the base; free and in even degrees."""

    bundle_rank: int
    """Complex rank r of the bundle."""

    maps: Mapping[int, IntMatrix] = field(default_factory=dict)
    """Degree i -> matrix of e: H^(i-2r) -> H^i; omitted degrees act by zero."""

    def __post_init__(self) -> None:
        if self.bundle_rank < 1:
            raise DomainError(f"Bundle rank must be positive: {self.bundle_rank}")
        if self.base.coefficients.is_field:
            raise PreconditionError("Gysin bases need integral cohomology")
        for d, g in self.base.groups.items():
            if d % 2 or g.torsion:
                raise PreconditionError(
                    "Base cohomology must be free and even,"
                    f" found {g.render()} in degree {d}"
                )
        maps = {}
        for i, matrix in sorted(self.maps.items()):
            source, target = self.source_rank(i), self.base.rank(i)
            if not source or not target:
                continue
            if len(matrix) != target or any(len(row) != source for row in matrix):
                raise DomainError(
                    f"Euler map in degree {i} must be {target}x{source}"
                )
            maps[i] = tuple(tuple(row) for row in matrix)
        object.__setattr__(self, "maps", MappingProxyType(maps))

    def __hash__(self) -> int:
        return hash((self.base, self.bundle_rank, tuple(self.maps.items())))

    def source_rank(self, i: int) -> int:
        """Rank of H^(i-2r), the source of the map into degree i."""
        return self.base.rank(i - 2 * self.bundle_rank)

    def top_degree(self) -> int:
        """Top degree of the sphere bundle's cohomology."""
        return max(self.base.degrees()) + 2 * self.bundle_rank - 1


def _complement(a: EulerAction, k: CoefficientSpec) -> GradedGroup:
    # Ranks of the integral maps are computed over Q.
    rank_field = k if k.is_field else CoefficientSpec.rational()
    groups: dict[int, FGAbGroup] = {}
    for i in range(0, a.top_degree() + 1):
        if i % 2 == 0:
            matrix = a.maps.get(i, ())
            if not matrix:
                groups[i] = FGAbGroup(a.base.rank(i))
            elif k.is_field:
                image = _rank_over(matrix, a.source_rank(i), k)
                groups[i] = FGAbGroup(a.base.rank(i) - image)
            else:
                groups[i] = _cokernel(matrix, a.source_rank(i))
        else:
            source = a.source_rank(i + 1)
            matrix = a.maps.get(i + 1, ())
            groups[i] = FGAbGroup(source - _rank_over(matrix, source, rank_field))
    return GradedGroup(groups, k)


def complement_cohomology(a: EulerAction) -> GradedGroup:
    """Integral cohomology of the complement of the zero section."""
    result = _complement(a, CoefficientSpec.integers())
    _LOGGER.debug("Gysin complement: %s", dict(result.groups))
    return result


def complement_cohomology_over(a: EulerAction, k: CoefficientSpec) -> GradedGroup:
    """Cohomology of the complement with field coefficients, from matrices over k.

    :param a: The Euler action.
    :param k: Q or F_p.
    """
    if not k.is_field:
        raise DomainError("Use complement_cohomology for integer coefficients")
    return _complement(a, k)


def cotangent_euler_action(base: SpaceDescriptor) -> EulerAction:
    """Euler action of the cotangent bundle of a flag-type variety.

    The Euler class is chi(base) times the top generator; only the map
    H^0 -> H^top can be non-zero.
    """
    if base.kind is SpaceKind.LENS:
        raise DomainError(f"{base} has no cotangent bundle in this model")
    dim = base.complex_dim
    if dim == 0:
        raise DomainError(f"{base} is a point")
    chi = euler_characteristic(base)
    return EulerAction(cohomology(base), dim, {2 * dim: ((chi,),)})


def line_bundle_action_on_projective(m: int, degree_multiple: int) -> EulerAction:
    """Euler action of a line bundle with e = degree_multiple * t on P^m.

    :param m: Dimension of the projective space.
    :param degree_multiple: The Euler class as a multiple of the generator t of H^2.
    """
    if m < 1:
        raise DomainError(f"Projective space must have positive dimension: {m}")
    base = cohomology(SpaceDescriptor.projective(m))
    maps = {i: ((degree_multiple,),) for i in range(2, 2 * m + 1, 2)}
    return EulerAction(base, 1, maps)


def parse_complement(text: str) -> EulerAction:
    """Parses ``complement-cotangent:<space>`` or ``complement-line:m,c``."""
    name, _, rest = text.strip().partition(":")
    if name == "complement-cotangent":
        return cotangent_euler_action(parse_space(rest))
    if name == "complement-line":
        try:
            m, c = (int(a) for a in rest.split(","))
        except ValueError as ex:
            raise DomainError(f"Invalid line bundle: {text!r}") from ex
        return line_bundle_action_on_projective(m, c)
    raise DomainError(f"Invalid complement: {text!r}")
