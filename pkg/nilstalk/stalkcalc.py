"""Stalks of intersection cohomology complexes for the registered case studies.

Over a cone with punctured part U the IC stalk at the vertex is a single
truncation of the shifted cohomology of U. Intermediate strata are reduced to
cones through their transverse slices, and the three-strata cases obtain the
cohomology of U by splitting off the closed stratum's contribution from a
resolution.
"""

import logging
from dataclasses import dataclass
from enum import Enum

from .exceptions import DomainError, InadmissibleCharacteristic, InvalidCase
from .gradedz import (
    CoefficientSpec,
    GradedGroup,
    change_coefficients,
    direct_sum,
    shift,
    truncate_le,
    truncate_le_plus,
)
from .gysin import (
    complement_cohomology,
    cotangent_euler_action,
    line_bundle_action_on_projective,
)
from .partitions import Partition, check_prime, orbit_dim
from .resolutions import (
    get_resolution,
    is_semismall,
    pushforward_stalk_table,
    relevant_strata,
    split_subtract,
)
from .spaces import SpaceDescriptor, cohomology
from .tables import Perversity, StalkRow, StalkTable

__all__ = [
    "CaseId",
    "CaseKind",
    "MinimalReductionVerdict",
    "Perversity",
    "SplittingTerms",
    "StalkRow",
    "StalkTable",
    "cone_ic_stalk",
    "decomposition_theorem_holds",
    "ic_stalk_table",
    "link_cohomology",
    "minimal_reduction_verdict",
    "skyscraper_table",
    "splitting_terms",
    "support_violations",
]

_LOGGER = logging.getLogger("nilstalk")


class CaseKind(Enum):
    """The case studies."""

    SL2_CONE = "sl2-cone"
    SLN_MINIMAL = "sln-minimal"
    SP2N_MINIMAL = "sp2n-minimal"
    SLN_SUBREG = "sln-subreg"
    SL3_CONE = "sl3-cone"
    SL4_TWO_TWO = "sl4-two-two"


_LEAST_N = {
    CaseKind.SLN_MINIMAL: 2,
    CaseKind.SP2N_MINIMAL: 1,
    CaseKind.SLN_SUBREG: 2,
}

_FORBIDDEN_CHARACTERISTIC = {
    CaseKind.SL3_CONE: 3,
    CaseKind.SL4_TWO_TWO: 2,
}


@dataclass(frozen=True)
class CaseId:
    """A case study, with its rank parameter where it has one."""

    kind: CaseKind
    """Which case."""

    n: int | None = None
    """The n of sl_n or sp_2n for the parametric cases, None otherwise."""

    def __post_init__(self) -> None:
        if (least := _LEAST_N.get(self.kind)) is None:
            object.__setattr__(self, "n", None)
        elif self.n is None:
            raise DomainError(f"Case {self.kind.value} needs n")
        elif self.n < least:
            raise DomainError(
                f"Case {self.kind.value} needs n >= {least}, got {self.n}"
            )

    @classmethod
    def parse(cls, name: str, n: int | None = None) -> "CaseId":
        """Creates a CaseId from its command-line name."""
        try:
            kind = CaseKind(name)
        except ValueError as ex:
            raise InvalidCase(f"Unknown case name: {name}") from ex
        return cls(kind, n)

    @property
    def is_parametric(self) -> bool:
        return self.kind in _LEAST_N

    def __str__(self) -> str:
        if self.n is None:
            return self.kind.value
        return f"{self.kind.value}(n={self.n})"


@dataclass(frozen=True)
class MinimalReductionVerdict:
    """How IC of the minimal orbit closure of sl_n behaves modulo a prime."""

    irreducible: bool
    """Whether the reduction stays simple."""

    trivial_multiplicity: int
    """Multiplicity of the skyscraper at the origin in the reduction."""


@dataclass(frozen=True)
class SplittingTerms:
    """The shifted terms of RΓ(resolved) = RΓ(punctured) + m * RΓ(closed stratum)."""

    resolved: GradedGroup
    """Cohomology of the preimage of the punctured variety, shifted."""

    closed_stratum: GradedGroup
    """Cohomology of the closed stratum that splits off, shifted."""

    multiplicity: int
    """Number of copies of the closed stratum term."""

    punctured: GradedGroup
    """Cohomology of the punctured variety, shifted."""

    dim: int
    """Dimension of the variety: the shift of the resolved and punctured terms."""


def _over(c: GradedGroup, k: CoefficientSpec) -> GradedGroup:
    return change_coefficients(c, k) if k.is_field else c


def _effective_perversity(k: CoefficientSpec, perversity: Perversity) -> Perversity:
    # Over a field there is no torsion for p+ to keep.
    return Perversity.P if k.is_field else perversity


def cone_ic_stalk(
    link_sections: GradedGroup, dim_x: int, perversity: Perversity = Perversity.P
) -> GradedGroup:
    """Stalk at the vertex of IC of a cone of dimension dim_x.

    :param link_sections: Cohomology of the punctured cone, in nonnegative degrees.
    :param dim_x: Complex dimension of the cone.
    :param perversity: p or p+; p+ only differs over the integers.
    """
    if dim_x < 1:
        raise DomainError(f"Cone dimension must be positive: {dim_x}")
    shifted = shift(link_sections, dim_x)
    k = link_sections.coefficients
    if _effective_perversity(k, perversity) is Perversity.P_PLUS:
        return truncate_le_plus(shifted, -1)
    return truncate_le(shifted, -1)


def _constant(dim: int, k: CoefficientSpec) -> GradedGroup:
    return GradedGroup.concentrated([-dim], k)


def _check_admissible(case: CaseId, k: CoefficientSpec) -> None:
    forbidden = _FORBIDDEN_CHARACTERISTIC.get(case.kind)
    if forbidden is None:
        return
    if not k.is_field:
        raise DomainError(f"{case} needs field coefficients")
    if k.characteristic == forbidden:
        raise InadmissibleCharacteristic(
            f"{case} requires characteristic ≠ {forbidden}"
        )


def _minimal_sln_link(n: int) -> GradedGroup:
    action = cotangent_euler_action(SpaceDescriptor.projective(n - 1))
    return complement_cohomology(action)


def _slice_link(n: int) -> GradedGroup:
    return cohomology(SpaceDescriptor.lens(2, n))


def splitting_terms(case: CaseId, k: CoefficientSpec) -> SplittingTerms:
    """The splitting that yields the punctured cohomology of a three-strata case.

    :param case: ``sl3-cone`` or ``sl4-two-two``.
    :param k: A field of admissible characteristic.
    """
    _check_admissible(case, k)
    match case.kind:
        case CaseKind.SL3_CONE:
            base, closed_n, multiplicity = SpaceDescriptor.full_flag(3), 3, 2
        case CaseKind.SL4_TWO_TWO:
            base, closed_n, multiplicity = SpaceDescriptor.grassmannian(2, 4), 4, 1
        case _:
            raise InvalidCase(f"{case} has no splitting")
    dim = base.complex_dim * 2
    resolved = _over(complement_cohomology(cotangent_euler_action(base)), k)
    closed = _over(_minimal_sln_link(closed_n), k)
    closed_dim = 2 * closed_n - 2
    punctured = split_subtract(resolved, shift(closed, closed_dim - dim), multiplicity)
    _LOGGER.debug(
        "Split %d copies of the minimal orbit off %s over %s", multiplicity, case, k
    )
    return SplittingTerms(
        resolved=shift(resolved, dim),
        closed_stratum=shift(closed, closed_dim),
        multiplicity=multiplicity,
        punctured=shift(punctured, dim),
        dim=dim,
    )


def link_cohomology(case: CaseId, k: CoefficientSpec) -> GradedGroup:
    """Cohomology of the punctured cone at the most singular point, unshifted.

    For ``sln-subreg`` this is the link of the transverse slice, S^3/mu_n.
    """
    match case.kind:
        case CaseKind.SL2_CONE:
            return _over(_slice_link(2), k)
        case CaseKind.SLN_MINIMAL:
            return _over(_minimal_sln_link(case.n or 0), k)
        case CaseKind.SP2N_MINIMAL:
            n = case.n or 0
            action = line_bundle_action_on_projective(2 * n - 1, 2)
            return _over(complement_cohomology(action), k)
        case CaseKind.SLN_SUBREG:
            return _over(_slice_link(case.n or 0), k)
    terms = splitting_terms(case, k)
    return shift(terms.punctured, -terms.dim)


def _partition_row(lam: Partition, group: GradedGroup) -> StalkRow:
    return StalkRow(str(lam), orbit_dim(lam), group, lam)


def _slice_row(
    lam: Partition, n: int, k: CoefficientSpec, perversity: Perversity
) -> StalkRow:
    # A stratum with an A_(n-1) surface slice: the vertex stalk moved to the stratum.
    stalk = cone_ic_stalk(_over(_slice_link(n), k), 2, perversity)
    return _partition_row(lam, shift(stalk, orbit_dim(lam)))


def ic_stalk_table(
    case: CaseId, k: CoefficientSpec, perversity: Perversity = Perversity.P
) -> StalkTable:
    """Stalks of the IC complex of a case study along each stratum.

    :param case: The case study.
    :param k: Coefficients.
    :param perversity: p or p+; over a field both give the same complex.
    :raises InadmissibleCharacteristic: for sl3-cone in characteristic 3 and
        sl4-two-two in characteristic 2.
    """
    _check_admissible(case, k)
    perversity = _effective_perversity(k, perversity)
    n = case.n or 0
    rows: list[StalkRow]
    match case.kind:
        case CaseKind.SL2_CONE:
            regular = Partition.of(2)
            rows = [
                _partition_row(regular, _constant(2, k)),
                _partition_row(
                    Partition.of(1, 1),
                    cone_ic_stalk(link_cohomology(case, k), 2, perversity),
                ),
            ]
        case CaseKind.SLN_MINIMAL:
            minimal = Partition((2,) + (1,) * (n - 2))
            dim = orbit_dim(minimal)
            rows = [
                _partition_row(minimal, _constant(dim, k)),
                _partition_row(
                    Partition((1,) * n),
                    cone_ic_stalk(link_cohomology(case, k), dim, perversity),
                ),
            ]
        case CaseKind.SP2N_MINIMAL:
            # Jordan types in sp_2n, whose minimal orbit has dimension 2n.
            label_min = str(Partition((2,) + (1,) * (2 * n - 2)))
            label_zero = str(Partition((1,) * (2 * n)))
            rows = [
                StalkRow(label_min, 2 * n, _constant(2 * n, k)),
                StalkRow(
                    label_zero,
                    0,
                    cone_ic_stalk(link_cohomology(case, k), 2 * n, perversity),
                ),
            ]
        case CaseKind.SLN_SUBREG:
            regular = Partition.of(n)
            rows = [
                _partition_row(regular, _constant(orbit_dim(regular), k)),
                _slice_row(Partition.of(n - 1, 1), n, k, perversity),
            ]
        case CaseKind.SL3_CONE:
            rows = [
                _partition_row(Partition.of(3), _constant(6, k)),
                _slice_row(Partition.of(2, 1), 3, k, perversity),
                _partition_row(
                    Partition.of(1, 1, 1), cone_ic_stalk(link_cohomology(case, k), 6)
                ),
            ]
        case CaseKind.SL4_TWO_TWO:
            rows = [
                _partition_row(Partition.of(2, 2), _constant(8, k)),
                _slice_row(Partition.of(2, 1, 1), 2, k, perversity),
                _partition_row(
                    Partition.of(1, 1, 1, 1), cone_ic_stalk(link_cohomology(case, k), 8)
                ),
            ]
    _LOGGER.debug("IC stalks of %s over %s (%s)", case, k, perversity.value)
    return StalkTable.of(rows, k, perversity)


def skyscraper_table(orbit: Partition, k: CoefficientSpec) -> StalkTable:
    """IC of the zero orbit: k in degree 0 at the origin.

    :param orbit: The zero orbit (1^n).
    :param k: Coefficients.
    """
    if orbit_dim(orbit) != 0:
        raise DomainError(f"{orbit} is not the zero orbit")
    return StalkTable.of([_partition_row(orbit, GradedGroup.concentrated([0], k))], k)


def minimal_reduction_verdict(n: int, ell: int) -> MinimalReductionVerdict:
    """Whether IC of the minimal orbit closure of sl_n stays simple modulo ell.

    :param n: At least 2.
    :param ell: A prime.
    """
    check_prime(ell)
    k = CoefficientSpec.prime_field(ell)
    table = ic_stalk_table(CaseId(CaseKind.SLN_MINIMAL, n), k)
    multiplicity = table.strata[-1].group.rank(-1)
    return MinimalReductionVerdict(
        irreducible=multiplicity == 0, trivial_multiplicity=multiplicity
    )


_RESOLUTION_OF_CASE = {
    CaseKind.SL2_CONE: "springer-sl2",
    CaseKind.SLN_MINIMAL: "minimal-sln",
    CaseKind.SLN_SUBREG: "subreg-sln",
}


def decomposition_theorem_holds(case: CaseId, k: CoefficientSpec) -> bool:
    """Whether the pushforward along the case's resolution is IC plus skyscraper terms.

    Compares stalks of the pushforward with those of IC plus, on each
    relevant stratum S, the top cohomology of the fibre times k[dim S].

    :param case: ``sl2-cone``, ``sln-minimal`` or ``sln-subreg``.
    :param k: A field.
    """
    if (name := _RESOLUTION_OF_CASE.get(case.kind)) is None:
        raise InvalidCase(f"No semismall resolution registered for {case}")
    if not k.is_field:
        raise DomainError("The decomposition theorem is checked over fields")
    resolution = get_resolution(name, case.n)
    if not is_semismall(resolution):
        return False
    pushed = pushforward_stalk_table(resolution, k)
    ic = ic_stalk_table(case, k)
    relevant = {s.label: s for s in relevant_strata(resolution)}
    for row in ic:
        expected = row.group
        # Each relevant stratum is closed here, so its summand lives on its own row.
        if (s := relevant.get(row.label)) is not None:
            top = s.fiber_cohomology.rank(2 * s.fiber_dim)
            summand = GradedGroup.from_ranks({-s.stratum_dim: top}, k)
            expected = direct_sum(expected, summand)
        if pushed.stalk(row.label) != expected:
            _LOGGER.debug(
                "Decomposition fails on %s for %s over %s", row.label, case, k
            )
            return False
    return True


def support_violations(table: StalkTable) -> list[str]:
    """Lists the ways in which a table breaks the stalk conditions of its perversity."""
    problems = []
    k = table.coefficients
    dense = table.strata[0]
    if dense.group != _constant(dense.dim, k):
        problems.append(f"{dense.label}: dense stratum is not k[{dense.dim}]")
    plus = _effective_perversity(k, table.perversity) is Perversity.P_PLUS
    for row in table.strata[1:]:
        # p: degrees < -dim S; p+: also torsion in degree -dim S.
        bound = -row.dim - (0 if plus else 1)
        for d in row.group.degrees():
            if d > bound:
                problems.append(f"{row.label}: non-zero in degree {d} > {bound}")
            elif plus and d == bound and row.group[d].rank:
                problems.append(f"{row.label}: free part in degree {d}")
    return problems
