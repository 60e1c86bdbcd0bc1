"""Decomposition matrices from stalk tables.

Derived reduction modulo p preserves stalkwise Euler characteristics, so the
class of the reduction of IC(lam) in the Grothendieck group is the vector of
Euler characteristics of the rational stalks. Writing it in the basis of the
classes of the modular IC complexes gives one row of the decomposition matrix.
"""

import logging
from collections import Counter
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any

from .exceptions import DomainError, InconsistentTablesError, InvalidCase
from .gradedz import CoefficientSpec, euler
from .partitions import (
    Partition,
    check_prime,
    conjugate,
    dominance_leq,
    is_ell_regular,
    orbit_order_key,
    sorted_by_orbit,
    springer_dual,
)
from .stalkcalc import CaseId, CaseKind, StalkTable, ic_stalk_table, skyscraper_table

_LOGGER = logging.getLogger("nilstalk")


@dataclass(frozen=True)
class ClassVector:
    """Euler characteristic of a complex's stalk on each orbit."""

    entries: Mapping[Partition, int] = field(default_factory=dict)
    """Orbit -> Euler characteristic; orbits with zero are omitted."""

    def __post_init__(self) -> None:
        ordered = sorted(self.entries.items(), key=lambda i: orbit_order_key(i[0]))
        entries = {mu: c for mu, c in ordered if c}
        object.__setattr__(self, "entries", MappingProxyType(entries))

    def __hash__(self) -> int:
        return hash(tuple(self.entries.items()))

    def __getitem__(self, mu: Partition) -> int:
        return self.entries.get(mu, 0)


@dataclass(frozen=True)
class DecompositionMatrix:
    """A decomposition matrix with partition labels."""

    rows: tuple[Partition, ...]
    """Row labels."""

    cols: tuple[Partition, ...]
    """Column labels."""

    entries: tuple[tuple[int, ...], ...]
    """entries[i][j] is the multiplicity of column j in row i."""

    row_prefix: str = ""
    """Label prefix for rows (``S_`` for Specht modules)."""

    col_prefix: str = ""
    """Label prefix for columns (``D_`` for simple modules)."""

    def __post_init__(self) -> None:
        if len(self.entries) != len(self.rows) or any(
            len(row) != len(self.cols) for row in self.entries
        ):
            raise DomainError(
                f"Matrix must be {len(self.rows)}x{len(self.cols)}"
            )

    def entry(self, row: Partition, col: Partition) -> int:
        return self.entries[self.rows.index(row)][self.cols.index(col)]

    def _label(self, prefix: str, lam: Partition) -> str:
        return f"{prefix}({lam})" if prefix else str(lam)

    def row_labels(self) -> list[str]:
        return [self._label(self.row_prefix, lam) for lam in self.rows]

    def col_labels(self) -> list[str]:
        return [self._label(self.col_prefix, mu) for mu in self.cols]

    def is_unitriangular(self) -> bool:
        """Diagonal ones and zeros outside the closure order (orbit labels only)."""
        for lam, row in zip(self.rows, self.entries):
            for mu, d in zip(self.cols, row):
                if lam == mu and d != 1:
                    return False
                if lam != mu and d and not dominance_leq(mu, lam):
                    return False
        return True

    def to_json(self) -> dict[str, Any]:
        return {
            "rows": self.row_labels(),
            "cols": self.col_labels(),
            "entries": [list(row) for row in self.entries],
        }


def class_vector(t: StalkTable) -> ClassVector:
    """Stalkwise Euler characteristics of a table with field coefficients."""
    if not t.coefficients.is_field:
        raise DomainError("Class vectors need field coefficients")
    entries = {}
    for row in t:
        if row.orbit is None:
            raise DomainError(f"Stratum {row.label} is not an orbit of sl_n")
        entries[row.orbit] = euler(row.group)
    return ClassVector(entries)


def solve_decomposition(
    char0: Mapping[Partition, ClassVector], modp: Mapping[Partition, ClassVector]
) -> DecompositionMatrix:
    """Writes each characteristic zero class in the basis of modular classes.

    :param char0: Rational IC class for each orbit.
    :param modp: Modular IC class for each orbit.
    :raises InconsistentTablesError: if no nonnegative unitriangular solution exists.
    """
    if set(char0) != set(modp):
        raise InconsistentTablesError(
            "Rational and modular classes cover different orbits"
        )
    labels = sorted_by_orbit(char0)
    for lam in labels:
        if char0[lam][lam] != 1 or modp[lam][lam] != 1:
            raise InconsistentTablesError(
                f"IC({lam}) does not restrict to k on its own orbit"
            )
    entries = []
    for lam in labels:
        remainder = Counter(char0[lam].entries)
        row = {}
        for mu in reversed(labels):
            c = remainder[mu]
            if c < 0:
                raise InconsistentTablesError(
                    f"Negative multiplicity of IC({mu}) in IC({lam})"
                )
            if c and not dominance_leq(mu, lam):
                raise InconsistentTablesError(
                    f"IC({mu}) is not in the closure of {lam}"
                )
            row[mu] = c
            for nu, e in modp[mu].entries.items():
                remainder[nu] -= c * e
        if any(remainder.values()):
            raise InconsistentTablesError(
                f"IC({lam}) is not a combination of modular classes"
            )
        entries.append(tuple(row[mu] for mu in labels))
    return DecompositionMatrix(tuple(labels), tuple(labels), tuple(entries))


def symmetric_group_submatrix(d: DecompositionMatrix, ell: int) -> DecompositionMatrix:
    """The decomposition matrix of the symmetric group inside the nilpotent one.

    Rows become Specht modules S_(lam') and the columns whose transposed label
    is ell-regular become simple modules D_(mu').

    :param d: A matrix labelled by orbits.
    :param ell: The characteristic.
    """
    check_prime(ell)
    keep = [j for j, mu in enumerate(d.cols) if is_ell_regular(conjugate(mu), ell)]
    return DecompositionMatrix(
        rows=tuple(springer_dual(lam) for lam in d.rows),
        cols=tuple(springer_dual(d.cols[j]) for j in keep),
        entries=tuple(tuple(row[j] for j in keep) for row in d.entries),
        row_prefix="S_",
        col_prefix="D_",
    )


def _zero(n: int) -> Partition:
    return Partition((1,) * n)


def _sl2(n: int | None) -> dict[Partition, CaseId | None]:
    return {Partition.of(2): CaseId(CaseKind.SL2_CONE), _zero(2): None}


def _sl3(n: int | None) -> dict[Partition, CaseId | None]:
    return {
        Partition.of(3): CaseId(CaseKind.SL3_CONE),
        Partition.of(2, 1): CaseId(CaseKind.SLN_MINIMAL, 3),
        _zero(3): None,
    }


def _sl4_two_two(n: int | None) -> dict[Partition, CaseId | None]:
    return {
        Partition.of(2, 2): CaseId(CaseKind.SL4_TWO_TWO),
        Partition.of(2, 1, 1): CaseId(CaseKind.SLN_MINIMAL, 4),
        _zero(4): None,
    }


def _sln_minimal(n: int | None) -> dict[Partition, CaseId | None]:
    if n is None:
        raise DomainError("sln-minimal needs n")
    case = CaseId(CaseKind.SLN_MINIMAL, n)
    return {Partition((2,) + (1,) * (n - 2)): case, _zero(n): None}


_CaseBuilder = Callable[[int | None], dict[Partition, CaseId | None]]

_DECOMPOSITION_CASES: dict[str, _CaseBuilder] = {
    "sl2": _sl2,
    "sl3": _sl3,
    "sl4-two-two": _sl4_two_two,
    "sln-minimal": _sln_minimal,
}


def decomposition_case_names() -> list[str]:
    return list(_DECOMPOSITION_CASES)


def _ic_table(lam: Partition, case: CaseId | None, k: CoefficientSpec) -> StalkTable:
    if case is None:
        return skyscraper_table(lam, k)
    return ic_stalk_table(case, k)


def decomposition_case(name: str, p: int, n: int | None = None) -> DecompositionMatrix:
    """Builds the decomposition matrix of a registered family from its stalk tables.

    :param name: ``sl2``, ``sl3``, ``sl4-two-two`` or ``sln-minimal``.
    :param p: The characteristic.
    :param n: The n of ``sln-minimal``.
    """
    if (build := _DECOMPOSITION_CASES.get(name, None)) is None:
        raise InvalidCase(f"Unknown decomposition case: {name}")
    check_prime(p)
    cases = build(n)
    rational = CoefficientSpec.rational()
    modular = CoefficientSpec.prime_field(p)
    char0 = {lam: class_vector(_ic_table(lam, c, rational)) for lam, c in cases.items()}
    modp = {lam: class_vector(_ic_table(lam, c, modular)) for lam, c in cases.items()}
    _LOGGER.debug("Solving %s at p=%d", name, p)
    return solve_decomposition(char0, modp)
