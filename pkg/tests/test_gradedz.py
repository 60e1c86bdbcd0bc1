import random

import pytest

from nilstalk import gradedz
from nilstalk.exceptions import ContainmentError, DomainError
from nilstalk.gradedz import CoefficientSpec, FGAbGroup, GradedGroup

QQ = CoefficientSpec.rational()
ZZ = CoefficientSpec.integers()
F2 = CoefficientSpec.prime_field(2)
F3 = CoefficientSpec.prime_field(3)

PRIME_POWERS = (2, 3, 4, 5, 7, 8, 9, 25)


def random_graded_group(rng: random.Random) -> GradedGroup:
    groups = {}
    for d in range(-6, 7):
        if rng.random() < 0.5:
            continue
        torsion = tuple(rng.choice(PRIME_POWERS) for _ in range(rng.randint(0, 2)))
        groups[d] = FGAbGroup(rng.randint(0, 3), torsion)
    return GradedGroup(groups)


@pytest.fixture
def random_groups() -> list[GradedGroup]:
    rng = random.Random(20240101)
    return [random_graded_group(rng) for _ in range(1000)]


def z_at(*degrees: int) -> GradedGroup:
    return GradedGroup.concentrated(degrees)


def k_at(k: CoefficientSpec, *degrees: int) -> GradedGroup:
    return GradedGroup.concentrated(degrees, k)


class TestCoefficientSpec:
    @pytest.mark.parametrize(
        "text,spec", [("q", QQ), ("z", ZZ), ("f2", F2), ("F3", F3)]
    )
    def test_parse(self, text, spec):
        assert CoefficientSpec.parse(text) == spec

    @pytest.mark.parametrize("spec", [QQ, ZZ, F2, CoefficientSpec.prime_field(13)])
    def test_str_parses_back(self, spec):
        assert CoefficientSpec.parse(str(spec)) == spec

    @pytest.mark.parametrize("text", ["f4", "f1", "r", "f", "fx"])
    def test_parse_invalid(self, text):
        with pytest.raises(DomainError):
            CoefficientSpec.parse(text)

    def test_symbols(self):
        assert QQ.symbol == "ℚ"
        assert ZZ.symbol == "ℤ"
        assert F2.symbol == "𝔽_2"
        assert F2.is_field and QQ.is_field and not ZZ.is_field


class TestFGAbGroup:
    def test_invariant_factors_split(self):
        assert FGAbGroup.from_invariant_factors(1, 6) == FGAbGroup(1, (2, 3))
        assert FGAbGroup.from_invariant_factors(0, 1) == FGAbGroup()
        assert FGAbGroup.from_invariant_factors(0, 12) == FGAbGroup(0, (3, 4))

    def test_rejects_non_prime_powers(self):
        with pytest.raises(DomainError):
            FGAbGroup(0, (6,))
        with pytest.raises(DomainError):
            FGAbGroup(-1)

    def test_render(self):
        assert FGAbGroup().render() == "0"
        assert FGAbGroup(1).render() == "ℤ"
        assert FGAbGroup(2, (3, 2)).render() == "ℤ^2 ⊕ ℤ/2 ⊕ ℤ/3"
        assert FGAbGroup(2).render("k") == "k^2"

    def test_to_json(self):
        assert FGAbGroup(1, (4, 2)).to_json() == {"rank": 1, "torsion": [2, 4]}

    def test_subtract(self):
        assert FGAbGroup(2, (2, 2, 3)) - FGAbGroup(1, (2,)) == FGAbGroup(1, (2, 3))
        with pytest.raises(ContainmentError):
            FGAbGroup(1, (2,)) - FGAbGroup(0, (4,))

    def test_p_torsion_count(self):
        assert FGAbGroup(0, (2, 4, 3)).p_torsion_count(2) == 2
        assert FGAbGroup(0, (2, 4, 3)).p_torsion_count(5) == 0


class TestGradedGroup:
    def test_zero_groups_dropped(self):
        c = GradedGroup({0: FGAbGroup(1), 1: FGAbGroup()})
        assert c.degrees() == [0]

    def test_field_rejects_torsion(self):
        with pytest.raises(DomainError):
            GradedGroup({0: FGAbGroup(0, (2,))}, F2)

    def test_render(self):
        assert k_at(F2, 0, 0).render(0) == "k^2"
        assert z_at(0).render(1) == "0"

    def test_to_json(self):
        c = GradedGroup({-4: FGAbGroup(1), 0: FGAbGroup(0, (2,))})
        assert c.to_json() == {
            "-4": {"rank": 1, "torsion": []},
            "0": {"rank": 0, "torsion": [2]},
        }


class TestShift:
    def test_examples(self):
        assert gradedz.shift(z_at(0), 2) == z_at(-2)
        assert gradedz.shift(k_at(F2, 0, 1, 2, 3), 2) == k_at(F2, -2, -1, 0, 1)

    def test_composition(self, random_groups):
        for c in random_groups[:50]:
            assert gradedz.shift(gradedz.shift(c, 3), -5) == gradedz.shift(c, -2)

    def test_commutes_with_truncation(self, random_groups):
        for c in random_groups[:200]:
            for s in (-2, 0, 3):
                for i in (-1, 0, 2):
                    assert gradedz.truncate_le(gradedz.shift(c, s), i) == gradedz.shift(
                        gradedz.truncate_le(c, i + s), s
                    )


class TestTruncation:
    def test_truncate_le(self):
        assert gradedz.truncate_le(k_at(F2, -2, -1, 0, 1), -1) == k_at(F2, -2, -1)
        assert gradedz.truncate_le(z_at(0, 2), 10) == z_at(0, 2)

    def test_truncate_le_plus_keeps_torsion(self):
        c = GradedGroup({-2: FGAbGroup(1), 0: FGAbGroup(0, (2,)), 1: FGAbGroup(1)})
        assert gradedz.truncate_le(c, -1) == z_at(-2)
        assert gradedz.truncate_le_plus(c, -1) == GradedGroup(
            {-2: FGAbGroup(1), 0: FGAbGroup(0, (2,))}
        )

    def test_truncate_le_plus_drops_free_part(self):
        c = GradedGroup({0: FGAbGroup(2, (3,))})
        assert gradedz.truncate_le_plus(c, -1) == GradedGroup({0: FGAbGroup(0, (3,))})

    def test_agree_without_torsion(self, random_groups):
        for c in random_groups[:200]:
            free = GradedGroup({d: g.free_part() for d, g in c.groups.items()})
            assert gradedz.truncate_le_plus(free, 0) == gradedz.truncate_le(free, 0)
            over_f2 = gradedz.change_coefficients(c, F2)
            plus = gradedz.truncate_le_plus(over_f2, 0)
            assert plus == gradedz.truncate_le(over_f2, 0)


class TestDuality:
    def test_examples(self):
        assert gradedz.dual_point(z_at(0)) == z_at(0)
        torsion = GradedGroup({0: FGAbGroup(0, (4,))})
        assert gradedz.dual_point(torsion) == GradedGroup({1: FGAbGroup(0, (4,))})
        assert gradedz.dual_point(k_at(F2, -2, 3)) == k_at(F2, 2, -3)

    def test_involution(self, random_groups):
        for c in random_groups:
            assert gradedz.dual_point(gradedz.dual_point(c)) == c


class TestChangeCoefficients:
    def test_torsion_in_two_degrees(self):
        n = 4
        c = GradedGroup({2 * n - 2: FGAbGroup(0, (4,))})
        assert gradedz.change_coefficients(c, F2) == k_at(F2, 2 * n - 3, 2 * n - 2)
        assert gradedz.change_coefficients(c, F3).is_zero

    def test_minimal_orbit_sl3_to_f2(self):
        c = GradedGroup(
            {
                0: FGAbGroup(1),
                2: FGAbGroup(1),
                4: FGAbGroup(0, (3,)),
                5: FGAbGroup(1),
                7: FGAbGroup(1),
            }
        )
        assert gradedz.change_coefficients(c, F2) == k_at(F2, 0, 2, 5, 7)

    def test_to_rationals_drops_torsion(self):
        c = GradedGroup({0: FGAbGroup(1, (2,)), 3: FGAbGroup(0, (9,))})
        assert gradedz.change_coefficients(c, QQ) == k_at(QQ, 0)

    def test_rejects_integers(self):
        with pytest.raises(DomainError):
            gradedz.change_coefficients(z_at(0), ZZ)
        with pytest.raises(DomainError):
            gradedz.change_coefficients(k_at(F2, 0), F3)

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_euler_invariance(self, random_groups, p):
        k = CoefficientSpec.prime_field(p)
        for c in random_groups:
            chi = gradedz.euler(c)
            assert gradedz.euler(gradedz.change_coefficients(c, k)) == chi
            assert gradedz.euler(gradedz.change_coefficients(c, QQ)) == chi


class TestSumAndSubtract:
    def test_subtract_splitting(self):
        total = GradedGroup.from_ranks(
            {-6: 1, -4: 2, -2: 2, -1: 1, 0: 1, 1: 2, 3: 2, 5: 1}, F2
        )
        minimal = GradedGroup.from_ranks({-4: 1, -2: 1, 1: 1, 3: 1}, F2)
        result = gradedz.subtract(total, gradedz.multiple(minimal, 2))
        assert result == k_at(F2, -6, -1, 0, 5)

    def test_subtract_self(self):
        c = k_at(F3, -2, 0, 0)
        assert gradedz.subtract(c, c).is_zero

    def test_subtract_not_contained(self):
        with pytest.raises(ContainmentError):
            gradedz.subtract(k_at(F2, 0), k_at(F2, 1))

    def test_subtract_needs_field(self):
        with pytest.raises(DomainError):
            gradedz.subtract(z_at(0), z_at(0))

    def test_mismatched_coefficients(self):
        with pytest.raises(DomainError):
            gradedz.direct_sum(k_at(F2, 0), k_at(F3, 0))

    def test_sum_laws(self, random_groups):
        rng = random.Random(7)
        for a in random_groups[:100]:
            b, c = rng.choice(random_groups), rng.choice(random_groups)
            assert gradedz.direct_sum(a, b) == gradedz.direct_sum(b, a)
            left = gradedz.direct_sum(gradedz.direct_sum(a, b), c)
            assert left == gradedz.direct_sum(a, gradedz.direct_sum(b, c))

    def test_sum_then_subtract(self, random_groups):
        for a, b in zip(random_groups[:100], random_groups[100:200]):
            a_k = gradedz.change_coefficients(a, F2)
            b_k = gradedz.change_coefficients(b, F2)
            assert gradedz.subtract(gradedz.direct_sum(a_k, b_k), b_k) == a_k

    def test_euler(self):
        assert gradedz.euler(k_at(F2, -4, -2)) == 2
        assert gradedz.euler(GradedGroup({1: FGAbGroup(2, (2,))})) == -2
