"""Integral cohomology of the base spaces and links used by the case studies."""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from operator import mul

from sympy import Poly, symbols

from .exceptions import DomainError
from .gradedz import FGAbGroup, GradedGroup, euler

_LOGGER = logging.getLogger("nilstalk")

_Q = symbols("q")


class SpaceKind(Enum):
    """Families of spaces with closed-form cohomology."""

    PROJECTIVE = "proj"
    GRASSMANNIAN = "grass"
    FULL_FLAG = "flag"
    LENS = "lens"


_ARITY = {
    SpaceKind.PROJECTIVE: 1,
    SpaceKind.GRASSMANNIAN: 2,
    SpaceKind.FULL_FLAG: 1,
    SpaceKind.LENS: 2,
}


@dataclass(frozen=True)
class SpaceDescriptor:
    """A space from one of the supported families.

    ``LENS`` with arguments (m, d) is the lens space S^(2m-1)/mu_d.
    """

    kind: SpaceKind
    """The family."""

    args: tuple[int, ...]
    """Family parameters: (m,), (k, n), (n,) or (m, d)."""

    def __post_init__(self) -> None:
        if len(self.args) != _ARITY[self.kind]:
            raise DomainError(f"Wrong number of parameters for {self.kind.value}")
        match self.kind, self.args:
            case SpaceKind.PROJECTIVE, (m,) if m >= 0:
                pass
            case SpaceKind.GRASSMANNIAN, (k, n) if 0 <= k <= n:
                pass
            case SpaceKind.FULL_FLAG, (n,) if n >= 1:
                pass
            case SpaceKind.LENS, (m, d) if m >= 1 and d >= 1:
                pass
            case _:
                raise DomainError(f"Invalid space: {self}")

    @classmethod
    def projective(cls, m: int) -> "SpaceDescriptor":
        return cls(SpaceKind.PROJECTIVE, (m,))

    @classmethod
    def grassmannian(cls, k: int, n: int) -> "SpaceDescriptor":
        return cls(SpaceKind.GRASSMANNIAN, (k, n))

    @classmethod
    def full_flag(cls, n: int) -> "SpaceDescriptor":
        return cls(SpaceKind.FULL_FLAG, (n,))

    @classmethod
    def lens(cls, m: int, d: int) -> "SpaceDescriptor":
        return cls(SpaceKind.LENS, (m, d))

    @property
    def complex_dim(self) -> int:
        """Complex dimension of a projective, Grassmannian or flag variety."""
        match self.kind, self.args:
            case SpaceKind.PROJECTIVE, (m,):
                return m
            case SpaceKind.GRASSMANNIAN, (k, n):
                return k * (n - k)
            case SpaceKind.FULL_FLAG, (n,):
                return n * (n - 1) // 2
        raise DomainError(f"{self} is not a complex projective variety")

    def __str__(self) -> str:
        return f"{self.kind.value}:{','.join(str(a) for a in self.args)}"


def parse_space(text: str) -> SpaceDescriptor:
    """Parses ``proj:m``, ``grass:k,n``, ``flag:n`` or ``lens:m,d``."""
    name, _, params = text.strip().partition(":")
    try:
        kind = SpaceKind(name)
        args = tuple(int(a) for a in params.split(","))
    except ValueError as ex:
        raise DomainError(f"Invalid space: {text!r}") from ex
    return SpaceDescriptor(kind, args)


def _q_integer(m: int) -> Poly:
    return Poly([1] * m, _Q)


def _q_factorial(n: int) -> Poly:
    return reduce(mul, (_q_integer(i) for i in range(1, n + 1)), Poly(1, _Q))


def _coefficients(poly: Poly) -> list[int]:
    """Coefficients in increasing degree."""
    return [int(c) for c in reversed(poly.all_coeffs())]


def gaussian_binomial(n: int, k: int) -> list[int]:
    """Coefficients of the Gaussian binomial [n choose k]_q."""
    num = _q_factorial(n)
    den = _q_factorial(k) * _q_factorial(n - k)
    return _coefficients(num.exquo(den))


def inversion_counts(n: int) -> list[int]:
    """Number of permutations of n letters by number of inversions."""
    return _coefficients(_q_factorial(n))


def _even_cohomology(coefficients: list[int]) -> GradedGroup:
    return GradedGroup.from_ranks({2 * j: c for j, c in enumerate(coefficients)})


def cohomology(s: SpaceDescriptor) -> GradedGroup:
    """Integral cohomology of a space, in nonnegative degrees."""
    _LOGGER.debug("Computing cohomology of %s", s)
    match s.kind, s.args:
        case SpaceKind.PROJECTIVE, (m,):
            return _even_cohomology([1] * (m + 1))
        case SpaceKind.GRASSMANNIAN, (k, n):
            return _even_cohomology(gaussian_binomial(n, k))
        case SpaceKind.FULL_FLAG, (n,):
            return _even_cohomology(inversion_counts(n))
        case SpaceKind.LENS, (m, d):
            groups = {0: FGAbGroup(1), 2 * m - 1: FGAbGroup(1)}
            for i in range(2, 2 * m - 1, 2):
                groups[i] = FGAbGroup.from_invariant_factors(0, d)
            return GradedGroup(groups)
    raise DomainError(f"Invalid space: {s}")


def euler_characteristic(s: SpaceDescriptor) -> int:
    """Euler characteristic of a space."""
    return euler(cohomology(s))
