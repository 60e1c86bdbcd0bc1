"""Kostka-Foulkes polynomials and the characteristic zero stalks they encode."""

import logging
from collections import Counter
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from .exceptions import DomainError
from .partitions import (
    Partition,
    closure_strata,
    dominance_leq,
    n_stat,
)

_LOGGER = logging.getLogger("nilstalk")


@dataclass(frozen=True)
class QPolynomial:
    """A polynomial in q with nonnegative integer coefficients."""

    coefficients: Mapping[int, int] = field(default_factory=dict)
    """Exponent -> coefficient, without zero coefficients."""

    def __post_init__(self) -> None:
        for e, c in self.coefficients.items():
            if e < 0 or c < 0:
                raise DomainError(f"Invalid term {c} q^{e}")
        coefficients = {e: c for e, c in sorted(self.coefficients.items()) if c}
        object.__setattr__(self, "coefficients", MappingProxyType(coefficients))

    def __hash__(self) -> int:
        return hash(tuple(self.coefficients.items()))

    @classmethod
    def of(cls, *coefficients: int) -> "QPolynomial":
        """Creates a polynomial from coefficients in increasing degree."""
        return cls(dict(enumerate(coefficients)))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self.coefficients, default=-1)

    def __getitem__(self, exponent: int) -> int:
        return self.coefficients.get(exponent, 0)

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        total = Counter(self.coefficients)
        total.update(other.coefficients)
        return QPolynomial(total)

    def at_one(self) -> int:
        """The value at q = 1."""
        return sum(self.coefficients.values())

    def render(self) -> str:
        """Renders as ``1 + q + 2q^3``."""
        if self.is_zero:
            return "0"
        terms = []
        for e, c in self.coefficients.items():
            prefix = "" if c == 1 and e else str(c)
            if e == 0:
                terms.append(str(c))
            elif e == 1:
                terms.append(f"{prefix}q")
            else:
                terms.append(f"{prefix}q^{e}")
        return " + ".join(terms)

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.coefficients.items()}


@dataclass(frozen=True)
class Tableau:
    """A semistandard Young tableau."""

    rows: tuple[tuple[int, ...], ...]
    """Entries row by row, top row first."""

    def __post_init__(self) -> None:
        for row in self.rows:
            if any(a > b for a, b in zip(row, row[1:])):
                raise DomainError(f"Rows must weakly increase: {self.rows}")
        for upper, lower in zip(self.rows, self.rows[1:]):
            if len(lower) > len(upper) or any(a >= b for a, b in zip(upper, lower)):
                raise DomainError(f"Columns must strictly increase: {self.rows}")

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(row) for row in self.rows))

    @property
    def content(self) -> tuple[int, ...]:
        """Multiplicity of each entry 1, 2, ..."""
        counts = Counter(e for row in self.rows for e in row)
        return tuple(counts[i] for i in range(1, max(counts, default=0) + 1))

    def reading_word(self) -> list[int]:
        """Rows read left to right, from the bottom row up."""
        return [e for row in reversed(self.rows) for e in row]


def _check_sizes(lam: Partition, mu: Partition) -> None:
    if lam.size != mu.size:
        raise DomainError(f"Partitions of different sizes: {lam} and {mu}")


def _strips(
    lengths: tuple[int, ...], shape: tuple[int, ...], count: int, row: int = 0
) -> Iterator[tuple[int, ...]]:
    """Ways to add count boxes as a horizontal strip, as per-row box counts."""
    if row == len(shape):
        if count == 0:
            yield ()
        return
    limit = shape[row] if row == 0 else min(shape[row], lengths[row - 1])
    room = limit - lengths[row]
    for take in range(min(room, count), -1, -1):
        for rest in _strips(lengths, shape, count - take, row + 1):
            yield (take,) + rest


def _fillings(
    rows: tuple[tuple[int, ...], ...],
    shape: tuple[int, ...],
    content: tuple[int, ...],
    value: int,
) -> Iterator[tuple[tuple[int, ...], ...]]:
    if value > len(content):
        yield rows
        return
    lengths = tuple(len(r) for r in rows)
    for strip in _strips(lengths, shape, content[value - 1]):
        grown = tuple(r + (value,) * t for r, t in zip(rows, strip))
        yield from _fillings(grown, shape, content, value + 1)


def ssyt_enumerate(lam: Partition, mu: Partition) -> list[Tableau]:
    """All semistandard tableaux of shape lam and content mu.

    :param lam: The shape.
    :param mu: The content: mu_i entries equal to i.
    """
    _check_sizes(lam, mu)
    empty = tuple(() for _ in lam.parts)
    return [Tableau(rows) for rows in _fillings(empty, lam.parts, mu.parts, 1)]


def _find_left(word: list[int | None], letter: int, start: int) -> tuple[int, bool]:
    """Position of letter searching leftwards from start, cyclically; flags a wrap."""
    for i in range(start - 1, -1, -1):
        if word[i] == letter:
            return i, False
    for i in range(len(word) - 1, start, -1):
        if word[i] == letter:
            return i, True
    raise DomainError(f"Letter {letter} missing from word")


def word_charge(word: list[int]) -> int:
    """Charge of a word whose content is a partition.

    Standard subwords are extracted one at a time: start at the rightmost 1
    and look leftwards, cyclically, for 2, 3, ...; the index rises by one at
    each wrap and the charge adds up the indices.
    """
    counts = Counter(word)
    letters = sorted(counts)
    if letters != list(range(1, len(letters) + 1)) or any(
        counts[i] < counts[i + 1] for i in letters[:-1]
    ):
        raise DomainError(f"Word content is not a partition: {word}")
    remaining: list[int | None] = list(word)
    total = 0
    while any(e is not None for e in remaining):
        top = max(e for e in remaining if e is not None)
        pos = max(i for i, e in enumerate(remaining) if e == 1)
        picked = [pos]
        index = 0
        for letter in range(2, top + 1):
            pos, wrapped = _find_left(remaining, letter, pos)
            index += wrapped
            total += index
            picked.append(pos)
        for i in picked:
            remaining[i] = None
    return total


def charge(t: Tableau) -> int:
    """Charge of the reading word of a tableau."""
    return word_charge(t.reading_word())


def kostka_foulkes(lam: Partition, mu: Partition) -> QPolynomial:
    """K_(lam, mu)(q), counting tableaux of shape lam and content mu by charge."""
    _check_sizes(lam, mu)
    charges = Counter(charge(t) for t in ssyt_enumerate(lam, mu))
    _LOGGER.debug("K_(%s),(%s) charges: %s", lam, mu, dict(charges))
    return QPolynomial(charges)


def char0_ic_stalk_poly(lam: Partition, mu: Partition) -> QPolynomial:
    """Poincare polynomial of the rational IC stalk of the closure of O_lam at O_mu.

    The coefficient of q^i is the rank of the stalk in degree -dim O_lam + 2i.
    Zero when O_mu is not in the closure.
    """
    _check_sizes(lam, mu)
    if not dominance_leq(mu, lam):
        return QPolynomial()
    top = n_stat(mu) - n_stat(lam)
    charges = kostka_foulkes(lam, mu).coefficients
    return QPolynomial({top - e: c for e, c in charges.items()})


def char0_class_vector(lam: Partition) -> dict[Partition, int]:
    """Euler characteristics of the rational IC stalks of the closure of O_lam.

    Keyed by the orbits of closure_strata(lam).
    """
    return {mu: char0_ic_stalk_poly(lam, mu).at_one() for mu in closure_strata(lam)}
