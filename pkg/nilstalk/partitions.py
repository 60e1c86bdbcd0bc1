"""Partition combinatorics for nilpotent orbits in sl_n."""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import accumulate, zip_longest

from sympy import isprime

from .exceptions import DomainError


@dataclass(frozen=True)
class Partition:
    """A partition of n, i.e. the Jordan type of a nilpotent orbit in sl_n."""

    parts: tuple[int, ...]
    """Positive parts in weakly decreasing order, without trailing zeros."""

    def __post_init__(self) -> None:
        if not self.parts:
            raise DomainError("A partition needs at least one part")
        if any(p < 1 for p in self.parts):
            raise DomainError(f"Partition parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise DomainError(f"Partition parts must be decreasing: {self.parts}")

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        """Creates a Partition from its parts."""
        return cls(tuple(parts))

    @classmethod
    def from_string(cls, text: str) -> "Partition":
        """Parses a comma-separated part list such as ``"2,1,1"``."""
        try:
            parts = tuple(int(p) for p in text.replace(" ", "").split(","))
        except ValueError as ex:
            raise DomainError(f"Invalid partition: {text!r}") from ex
        return cls(parts)

    @property
    def size(self) -> int:
        """The integer n this is a partition of."""
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


def parse_partition(text: str) -> Partition:
    """Parses a comma-separated part list.

    :param text: Parts separated by commas, e.g. ``"2,1,1"``.
    """
    return Partition.from_string(text)


def conjugate(lam: Partition) -> Partition:
    """Returns the conjugate partition (the transposed Young diagram)."""
    return Partition(
        tuple(sum(1 for p in lam.parts if p >= i) for i in range(1, lam.parts[0] + 1))
    )


def _check_sizes(mu: Partition, lam: Partition) -> None:
    if mu.size != lam.size:
        raise DomainError(f"Partitions of different sizes: {mu} and {lam}")


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """Whether mu <= lam in the dominance order.

    :param mu: The smaller candidate.
    :param lam: The larger candidate.
    """
    _check_sizes(mu, lam)
    return all(
        a <= b
        for a, b in zip_longest(
            accumulate(mu.parts), accumulate(lam.parts), fillvalue=lam.size
        )
    )


def closure_contains(lam: Partition, mu: Partition) -> bool:
    """Whether the orbit of type mu lies in the closure of the orbit of type lam."""
    return dominance_leq(mu, lam)


def orbit_dim(lam: Partition) -> int:
    """Complex dimension of the nilpotent orbit of Jordan type lam in sl_n."""
    n = lam.size
    return n * n - sum(c * c for c in conjugate(lam).parts)


def n_stat(lam: Partition) -> int:
    """The statistic n(lam) = sum of (i - 1) * lam_i."""
    return sum(i * p for i, p in enumerate(lam.parts))


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in reverse lexicographic order.

    :param n: A positive integer.
    """
    if n < 1:
        raise DomainError(f"Cannot enumerate partitions of {n}")
    return [Partition(parts) for parts in _partitions(n, n)]


def orbit_order_key(lam: Partition) -> tuple[int, tuple[int, ...]]:
    """Sort key refining the dominance order (smaller orbits first)."""
    return orbit_dim(lam), lam.parts


def closure_strata(lam: Partition) -> list[Partition]:
    """The orbits in the closure of O_lam, largest first."""
    below = [mu for mu in partitions_of(lam.size) if dominance_leq(mu, lam)]
    return sorted(below, key=orbit_order_key, reverse=True)


def springer_dual(lam: Partition) -> Partition:
    """Relabels between orbits and symmetric group modules (transposition)."""
    return conjugate(lam)


def check_prime(ell: int) -> None:
    """Raises DomainError unless ell is a prime number."""
    if not isprime(ell):
        raise DomainError(f"Not a prime: {ell}")


def is_ell_regular(lam: Partition, ell: int) -> bool:
    """Whether no part of lam is repeated ell or more times.

    :param lam: The partition to test.
    :param ell: A prime.
    """
    check_prime(ell)
    return all(lam.parts.count(p) < ell for p in set(lam.parts))


def sorted_by_orbit(labels: Iterable[Partition]) -> list[Partition]:
    """Sorts orbit labels so that every orbit precedes the orbits above it."""
    return sorted(labels, key=orbit_order_key)
