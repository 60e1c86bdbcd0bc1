"""Graded finitely generated abelian groups: the derived category of a point.

Every object of D^b(pt, Z) is the direct sum of its shifted cohomology
groups, so a complex is modelled by its cohomology: a finitely supported
map from degrees to finitely generated abelian groups.
"""

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Any

from sympy import factorint

from .exceptions import ContainmentError, DomainError
from .partitions import check_prime


class CoefficientKind(Enum):
    """The coefficient theories supported."""

    RATIONAL = "q"
    PRIME_FIELD = "f"
    INTEGERS = "z"


@dataclass(frozen=True)
class CoefficientSpec:
    """Coefficients: Q, F_p or Z."""

    kind: CoefficientKind
    """Which coefficient theory."""

    p: int = 0
    """The characteristic of a prime field, 0 otherwise."""

    def __post_init__(self) -> None:
        if self.kind is CoefficientKind.PRIME_FIELD:
            check_prime(self.p)
        elif self.p != 0:
            raise DomainError(f"Only prime fields carry a characteristic: {self}")

    @classmethod
    def rational(cls) -> "CoefficientSpec":
        return cls(CoefficientKind.RATIONAL)

    @classmethod
    def integers(cls) -> "CoefficientSpec":
        return cls(CoefficientKind.INTEGERS)

    @classmethod
    def prime_field(cls, p: int) -> "CoefficientSpec":
        return cls(CoefficientKind.PRIME_FIELD, p)

    @classmethod
    def parse(cls, text: str) -> "CoefficientSpec":
        """Parses ``"q"``, ``"z"`` or ``"f<p>"``."""
        text = text.strip().lower()
        if text == "q":
            return cls.rational()
        if text == "z":
            return cls.integers()
        if text.startswith("f") and text[1:].isdigit():
            return cls.prime_field(int(text[1:]))
        raise DomainError(f"Invalid coefficients: {text!r}")

    @property
    def is_field(self) -> bool:
        return self.kind is not CoefficientKind.INTEGERS

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def symbol(self) -> str:
        """Mathematical symbol, e.g. ``𝔽_2``."""
        if self.kind is CoefficientKind.RATIONAL:
            return "ℚ"
        if self.kind is CoefficientKind.INTEGERS:
            return "ℤ"
        return f"𝔽_{self.p}"

    def __str__(self) -> str:
        if self.kind is CoefficientKind.PRIME_FIELD:
            return f"f{self.p}"
        return self.kind.value


QQ = CoefficientSpec.rational()
ZZ = CoefficientSpec.integers()


def _prime_of(q: int) -> int | None:
    factors = factorint(q)
    if len(factors) != 1:
        return None
    return next(iter(factors))


@dataclass(frozen=True)
class FGAbGroup:
    """A finitely generated abelian group Z^rank + sum of Z/q, q prime powers."""

    rank: int = 0
    """Rank of the free part."""

    torsion: tuple[int, ...] = ()
    """Elementary divisors in increasing order."""

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise DomainError(f"Negative rank: {self.rank}")
        for q in self.torsion:
            if q < 2 or _prime_of(q) is None:
                raise DomainError(f"Torsion entries must be prime powers: {q}")
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))

    @classmethod
    def from_invariant_factors(cls, rank: int, *factors: int) -> "FGAbGroup":
        """Creates a group from arbitrary cyclic orders (Z/6 becomes Z/2 + Z/3).

        :param rank: Rank of the free part.
        :param factors: Orders of the finite cyclic summands; units are dropped.
        """
        torsion: list[int] = []
        for d in factors:
            for p, a in factorint(abs(d)).items():
                torsion.append(p**a)
        return cls(rank, tuple(torsion))

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def torsion_part(self) -> "FGAbGroup":
        return FGAbGroup(0, self.torsion)

    def free_part(self) -> "FGAbGroup":
        return FGAbGroup(self.rank)

    def p_torsion_count(self, p: int) -> int:
        """Number of cyclic summands of p-power order."""
        return sum(1 for q in self.torsion if q % p == 0)

    def __add__(self, other: "FGAbGroup") -> "FGAbGroup":
        return FGAbGroup(self.rank + other.rank, self.torsion + other.torsion)

    def contains(self, other: "FGAbGroup") -> bool:
        """Whether other embeds summand-wise (ranks and torsion multisets)."""
        return self.rank >= other.rank and not (
            Counter(other.torsion) - Counter(self.torsion)
        )

    def __sub__(self, other: "FGAbGroup") -> "FGAbGroup":
        if not self.contains(other):
            raise ContainmentError(
                f"{other.render()} is not a summand of {self.render()}"
            )
        left = Counter(self.torsion) - Counter(other.torsion)
        return FGAbGroup(self.rank - other.rank, tuple(left.elements()))

    def render(self, field_symbol: str | None = None) -> str:
        """Canonical text rendering, e.g. ``ℤ^2 ⊕ ℤ/2 ⊕ ℤ/3``.

        :param field_symbol: Symbol to use for field coefficients (e.g. ``k``).
        """
        if self.is_zero:
            return "0"
        base = field_symbol or "ℤ"
        terms = []
        if self.rank == 1:
            terms.append(base)
        elif self.rank > 1:
            terms.append(f"{base}^{self.rank}")
        terms.extend(f"ℤ/{q}" for q in self.torsion)
        return " ⊕ ".join(terms)

    def to_json(self) -> dict[str, Any]:
        return {"rank": self.rank, "torsion": list(self.torsion)}


ZERO = FGAbGroup()


@dataclass(frozen=True)
class GradedGroup:
    """Cohomology of a complex on a point: degree -> FGAbGroup."""

    groups: Mapping[int, FGAbGroup] = field(default_factory=dict)
    """Non-zero groups indexed by degree."""

    coefficients: CoefficientSpec = ZZ
    """The coefficients of the complex."""

    def __post_init__(self) -> None:
        groups = {d: g for d, g in sorted(self.groups.items()) if not g.is_zero}
        if self.coefficients.is_field:
            for d, g in groups.items():
                if g.torsion:
                    raise DomainError(
                        f"Torsion in degree {d} over {self.coefficients.symbol}"
                    )
        object.__setattr__(self, "groups", MappingProxyType(groups))

    def __hash__(self) -> int:
        return hash((tuple(self.groups.items()), self.coefficients))

    @classmethod
    def from_ranks(
        cls, ranks: Mapping[int, int], coefficients: CoefficientSpec = ZZ
    ) -> "GradedGroup":
        """Creates a torsion-free graded group from ranks per degree."""
        return cls({d: FGAbGroup(r) for d, r in ranks.items()}, coefficients)

    @classmethod
    def concentrated(
        cls, degrees: Iterable[int], coefficients: CoefficientSpec = ZZ
    ) -> "GradedGroup":
        """Rank one in each listed degree (repeats add up)."""
        return cls.from_ranks(Counter(degrees), coefficients)

    @classmethod
    def zero(cls, coefficients: CoefficientSpec = ZZ) -> "GradedGroup":
        return cls({}, coefficients)

    def __getitem__(self, degree: int) -> FGAbGroup:
        return self.groups.get(degree, ZERO)

    def rank(self, degree: int) -> int:
        return self[degree].rank

    def degrees(self) -> list[int]:
        return list(self.groups)

    @property
    def is_zero(self) -> bool:
        return not self.groups

    def render(self, degree: int) -> str:
        """Renders the group in one degree (``k`` for field coefficients)."""
        return self[degree].render("k" if self.coefficients.is_field else None)

    def to_json(self) -> dict[str, Any]:
        return {str(d): g.to_json() for d, g in self.groups.items()}


def shift(c: GradedGroup, s: int) -> GradedGroup:
    """The shift C[s]: degree d of the result is degree d + s of C."""
    return GradedGroup({d - s: g for d, g in c.groups.items()}, c.coefficients)


def truncate_le(c: GradedGroup, i: int) -> GradedGroup:
    """The truncation tau_{<= i}: keeps the degrees <= i."""
    return GradedGroup({d: g for d, g in c.groups.items() if d <= i}, c.coefficients)


def truncate_le_plus(c: GradedGroup, i: int) -> GradedGroup:
    """The truncation tau+_{<= i}: also keeps the torsion of degree i + 1."""
    groups = dict(truncate_le(c, i).groups)
    groups[i + 1] = c[i + 1].torsion_part()
    return GradedGroup(groups, c.coefficients)


def dual_point(c: GradedGroup) -> GradedGroup:
    """Duality RHom(-, Z) on a point.

    Free summands go from degree d to -d; Z/q in degree d goes to degree 1 - d.
    """
    groups: dict[int, FGAbGroup] = {}
    for d, g in c.groups.items():
        groups[-d] = groups.get(-d, ZERO) + g.free_part()
        if g.torsion:
            groups[1 - d] = groups.get(1 - d, ZERO) + g.torsion_part()
    return GradedGroup(groups, c.coefficients)


def change_coefficients(c: GradedGroup, k: CoefficientSpec) -> GradedGroup:
    """Derived extension of scalars k (x)^L_Z C.

    Each Z becomes k; each Z/p^a contributes k in its own degree and the one
    below it when char k = p, and nothing otherwise.

    :param c: A complex with integer coefficients.
    :param k: A field.
    """
    if c.coefficients.is_field:
        raise DomainError(f"Expected integer coefficients, got {c.coefficients.symbol}")
    if not k.is_field:
        raise DomainError("Coefficient change to Z is the identity, not a change")
    ranks: Counter[int] = Counter()
    for d, g in c.groups.items():
        ranks[d] += g.rank
        if k.kind is CoefficientKind.PRIME_FIELD:
            count = g.p_torsion_count(k.p)
            ranks[d] += count
            ranks[d - 1] += count
    return GradedGroup.from_ranks(ranks, k)


def _check_same_coefficients(a: GradedGroup, b: GradedGroup) -> None:
    if a.coefficients != b.coefficients:
        raise DomainError(
            f"Mismatched coefficients: {a.coefficients.symbol}"
            f" and {b.coefficients.symbol}"
        )


def direct_sum(a: GradedGroup, b: GradedGroup) -> GradedGroup:
    """Degreewise direct sum."""
    _check_same_coefficients(a, b)
    groups = dict(a.groups)
    for d, g in b.groups.items():
        groups[d] = groups.get(d, ZERO) + g
    return GradedGroup(groups, a.coefficients)


def multiple(c: GradedGroup, m: int) -> GradedGroup:
    """The direct sum of m copies of C."""
    if m < 0:
        raise DomainError(f"Negative multiplicity: {m}")
    result = GradedGroup.zero(c.coefficients)
    for _ in range(m):
        result = direct_sum(result, c)
    return result


def subtract(a: GradedGroup, b: GradedGroup) -> GradedGroup:
    """Removes the summand B from A (field coefficients only).

    :raises ContainmentError: if B is not degreewise contained in A.
    """
    _check_same_coefficients(a, b)
    if not a.coefficients.is_field:
        raise DomainError("Subtraction of graded groups needs field coefficients")
    groups = dict(a.groups)
    for d, g in b.groups.items():
        if not a[d].contains(g):
            raise ContainmentError(
                f"Degree {d}: {b.render(d)} is not a summand of {a.render(d)}"
            )
        groups[d] = a[d] - g
    return GradedGroup(groups, a.coefficients)


def euler(c: GradedGroup) -> int:
    """Alternating sum of ranks (torsion ignored)."""
    return sum((-1) ** (d % 2) * g.rank for d, g in c.groups.items())
