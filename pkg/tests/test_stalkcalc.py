import pytest

from nilstalk import gysin, stalkcalc
from nilstalk.exceptions import DomainError, InadmissibleCharacteristic, InvalidCase
from nilstalk.gradedz import CoefficientSpec, FGAbGroup, GradedGroup
from nilstalk.kostka import char0_ic_stalk_poly
from nilstalk.partitions import Partition, orbit_dim
from nilstalk.spaces import SpaceDescriptor, cohomology
from nilstalk.stalkcalc import CaseId, CaseKind, Perversity, StalkRow, StalkTable

QQ = CoefficientSpec.rational()
ZZ = CoefficientSpec.integers()
F2 = CoefficientSpec.prime_field(2)
F3 = CoefficientSpec.prime_field(3)

PRIMES = (2, 3, 5, 7)

SL2 = CaseId(CaseKind.SL2_CONE)
SL3 = CaseId(CaseKind.SL3_CONE)
SL4 = CaseId(CaseKind.SL4_TWO_TWO)


def k_at(k: CoefficientSpec, *degrees: int) -> GradedGroup:
    return GradedGroup.concentrated(degrees, k)


def all_tables() -> list[StalkTable]:
    tables = []
    for p in (2, 3, 5):
        k = CoefficientSpec.prime_field(p)
        tables.append(stalkcalc.ic_stalk_table(SL2, k))
        for n in range(2, 6):
            tables.append(stalkcalc.ic_stalk_table(CaseId(CaseKind.SLN_MINIMAL, n), k))
            tables.append(stalkcalc.ic_stalk_table(CaseId(CaseKind.SLN_SUBREG, n), k))
            tables.append(stalkcalc.ic_stalk_table(CaseId(CaseKind.SP2N_MINIMAL, n), k))
    tables.append(stalkcalc.ic_stalk_table(SL3, F2))
    tables.append(stalkcalc.ic_stalk_table(SL4, F3))
    for perversity in Perversity:
        tables.append(stalkcalc.ic_stalk_table(SL2, ZZ, perversity))
        tables.append(
            stalkcalc.ic_stalk_table(CaseId(CaseKind.SP2N_MINIMAL, 3), ZZ, perversity)
        )
    return tables


class TestCaseId:
    def test_parse(self):
        assert CaseId.parse("sln-minimal", 3) == CaseId(CaseKind.SLN_MINIMAL, 3)
        assert str(CaseId.parse("sln-minimal", 3)) == "sln-minimal(n=3)"
        assert str(CaseId.parse("sl3-cone")) == "sl3-cone"

    def test_unknown(self):
        with pytest.raises(InvalidCase):
            CaseId.parse("e8-cone")

    def test_n_ignored_when_not_parametric(self):
        assert CaseId(CaseKind.SL2_CONE, 5) == SL2
        assert not SL2.is_parametric

    @pytest.mark.parametrize(
        "kind,n",
        [
            (CaseKind.SLN_MINIMAL, None),
            (CaseKind.SLN_MINIMAL, 1),
            (CaseKind.SP2N_MINIMAL, 0),
        ],
    )
    def test_bad_n(self, kind, n):
        with pytest.raises(DomainError):
            CaseId(kind, n)


class TestConeStalk:
    def test_truncates(self):
        link = k_at(F2, 0, 1, 2, 3)
        assert stalkcalc.cone_ic_stalk(link, 2) == k_at(F2, -2, -1)

    def test_plus_keeps_torsion(self):
        link = cohomology(SpaceDescriptor.lens(2, 2))
        assert stalkcalc.cone_ic_stalk(link, 2) == k_at(ZZ, -2)
        assert stalkcalc.cone_ic_stalk(link, 2, Perversity.P_PLUS) == GradedGroup(
            {-2: FGAbGroup(1), 0: FGAbGroup(0, (2,))}
        )

    def test_plus_over_field_is_p(self):
        link = k_at(F2, 0, 1, 2, 3)
        assert stalkcalc.cone_ic_stalk(link, 2, Perversity.P_PLUS) == k_at(F2, -2, -1)

    def test_point_rejected(self):
        with pytest.raises(DomainError):
            stalkcalc.cone_ic_stalk(k_at(F2, 0), 0)


class TestSl2:
    @pytest.mark.parametrize(
        "k,origin",
        [(F2, (-2, -1)), (F3, (-2,)), (QQ, (-2,))],
    )
    def test_over_fields(self, k, origin):
        table = stalkcalc.ic_stalk_table(SL2, k)
        assert table.labels() == ["2", "1,1"]
        assert table.stalk("2") == k_at(k, -2)
        assert table.stalk("1,1") == k_at(k, *origin)

    def test_over_integers(self):
        table = stalkcalc.ic_stalk_table(SL2, ZZ)
        assert table.stalk("1,1") == k_at(ZZ, -2)
        plus = stalkcalc.ic_stalk_table(SL2, ZZ, Perversity.P_PLUS)
        assert plus.perversity is Perversity.P_PLUS
        assert plus.stalk("1,1") == GradedGroup(
            {-2: FGAbGroup(1), 0: FGAbGroup(0, (2,))}
        )

    def test_link(self):
        link = stalkcalc.link_cohomology(SL2, ZZ)
        assert link == cohomology(SpaceDescriptor.lens(2, 2))


class TestMinimalSln:
    @pytest.mark.parametrize("n", range(2, 9))
    @pytest.mark.parametrize("p", PRIMES)
    def test_origin_over_prime_fields(self, n, p):
        k = CoefficientSpec.prime_field(p)
        table = stalkcalc.ic_stalk_table(CaseId(CaseKind.SLN_MINIMAL, n), k)
        dim = 2 * n - 2
        assert table.total_dim == dim
        assert table.strata[0].group == k_at(k, -dim)
        expected = list(range(-dim, -1, 2))
        if n % p == 0:
            expected.append(-1)
        assert table.stalk(",".join(["1"] * n)) == k_at(k, *expected)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_over_integers(self, n):
        case = CaseId(CaseKind.SLN_MINIMAL, n)
        zero = ",".join(["1"] * n)
        free = k_at(ZZ, *range(-2 * n + 2, -1, 2))
        assert stalkcalc.ic_stalk_table(case, ZZ).stalk(zero) == free
        plus = stalkcalc.ic_stalk_table(case, ZZ, Perversity.P_PLUS).stalk(zero)
        assert plus == GradedGroup(
            {**dict(free.groups), 0: FGAbGroup.from_invariant_factors(0, n)}
        )

    def test_cli_example(self):
        table = stalkcalc.ic_stalk_table(CaseId(CaseKind.SLN_MINIMAL, 3), F2)
        assert table.stalk("2,1") == k_at(F2, -4)
        assert table.stalk("1,1,1") == k_at(F2, -4, -2)

    @pytest.mark.parametrize("n", range(2, 9))
    @pytest.mark.parametrize("p", PRIMES)
    def test_reduction_verdict(self, n, p):
        verdict = stalkcalc.minimal_reduction_verdict(n, p)
        assert verdict.irreducible == (n % p != 0)
        assert verdict.trivial_multiplicity == (1 if n % p == 0 else 0)

    def test_verdict_needs_prime(self):
        with pytest.raises(DomainError):
            stalkcalc.minimal_reduction_verdict(4, 4)


class TestMinimalSp2n:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_f2_run(self, n):
        table = stalkcalc.ic_stalk_table(CaseId(CaseKind.SP2N_MINIMAL, n), F2)
        assert [row.dim for row in table] == [2 * n, 0]
        assert table.strata[-1].group == k_at(F2, *range(-2 * n, 0))

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_odd_characteristic(self, n, p):
        k = CoefficientSpec.prime_field(p)
        table = stalkcalc.ic_stalk_table(CaseId(CaseKind.SP2N_MINIMAL, n), k)
        assert table.strata[-1].group == k_at(k, -2 * n)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_over_integers(self, n):
        case = CaseId(CaseKind.SP2N_MINIMAL, n)
        torsion = {d: FGAbGroup(0, (2,)) for d in range(-2 * n + 2, -1, 2)}
        expected = GradedGroup({-2 * n: FGAbGroup(1), **torsion})
        assert stalkcalc.ic_stalk_table(case, ZZ).strata[-1].group == expected
        plus = stalkcalc.ic_stalk_table(case, ZZ, Perversity.P_PLUS).strata[-1].group
        assert plus == GradedGroup({**dict(expected.groups), 0: FGAbGroup(0, (2,))})

    @pytest.mark.parametrize("n", range(1, 7))
    def test_link_is_real_projective(self, n):
        link = stalkcalc.link_cohomology(CaseId(CaseKind.SP2N_MINIMAL, n), ZZ)
        assert link == cohomology(SpaceDescriptor.lens(2 * n, 2))

    @pytest.mark.parametrize("k", [F2, F3, QQ, ZZ])
    def test_rank_one_is_sl2(self, k):
        sp = stalkcalc.ic_stalk_table(CaseId(CaseKind.SP2N_MINIMAL, 1), k)
        sl = stalkcalc.ic_stalk_table(SL2, k)
        assert [(r.label, r.dim, r.group) for r in sp] == [
            (r.label, r.dim, r.group) for r in sl
        ]


class TestFieldRoute:
    """Stalks from Gysin matrices over k agree with reducing the integral link."""

    @staticmethod
    def action(case: CaseId) -> tuple[gysin.EulerAction, int]:
        n = case.n or 0
        match case.kind:
            case CaseKind.SL2_CONE:
                return gysin.cotangent_euler_action(SpaceDescriptor.projective(1)), 2
            case CaseKind.SLN_MINIMAL:
                base = SpaceDescriptor.projective(n - 1)
                return gysin.cotangent_euler_action(base), 2 * n - 2
        return gysin.line_bundle_action_on_projective(2 * n - 1, 2), 2 * n

    @pytest.mark.parametrize(
        "case",
        [SL2]
        + [CaseId(CaseKind.SLN_MINIMAL, n) for n in range(2, 6)]
        + [CaseId(CaseKind.SP2N_MINIMAL, n) for n in range(1, 5)],
        ids=str,
    )
    @pytest.mark.parametrize("p", PRIMES)
    def test_origin_stalk(self, case, p):
        k = CoefficientSpec.prime_field(p)
        action, dim = self.action(case)
        link = gysin.complement_cohomology_over(action, k)
        direct = stalkcalc.cone_ic_stalk(link, dim)
        assert stalkcalc.ic_stalk_table(case, k).strata[-1].group == direct


class TestSubregular:
    @pytest.mark.parametrize("n", range(2, 9))
    @pytest.mark.parametrize("p", PRIMES)
    def test_over_prime_fields(self, n, p):
        k = CoefficientSpec.prime_field(p)
        table = stalkcalc.ic_stalk_table(CaseId(CaseKind.SLN_SUBREG, n), k)
        dim_nilcone = n * n - n
        assert table.labels() == [str(n), f"{n - 1},1"]
        expected = [-dim_nilcone] + ([-dim_nilcone + 1] if n % p == 0 else [])
        assert table.stalk(f"{n - 1},1") == k_at(k, *expected)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_integers_give_constant_sheaf(self, n):
        table = stalkcalc.ic_stalk_table(CaseId(CaseKind.SLN_SUBREG, n), ZZ)
        for row in table:
            assert row.group == k_at(ZZ, -(n * n - n))

    def test_link_is_lens_space(self):
        link = stalkcalc.link_cohomology(CaseId(CaseKind.SLN_SUBREG, 3), ZZ)
        assert link[2] == FGAbGroup(0, (3,))

    @pytest.mark.parametrize("perversity", list(Perversity))
    @pytest.mark.parametrize("k", [F2, F3, QQ, ZZ])
    def test_rank_two_is_sl2(self, k, perversity):
        subreg = stalkcalc.ic_stalk_table(CaseId(CaseKind.SLN_SUBREG, 2), k, perversity)
        sl2 = stalkcalc.ic_stalk_table(SL2, k, perversity)
        assert subreg == sl2


class TestSl3:
    @pytest.mark.parametrize(
        "p,origin", [(2, (-6, -1)), (5, (-6,)), (7, (-6,)), (11, (-6,))]
    )
    def test_origin(self, p, origin):
        k = CoefficientSpec.prime_field(p)
        table = stalkcalc.ic_stalk_table(SL3, k)
        assert table.labels() == ["3", "2,1", "1,1,1"]
        assert table.stalk("3") == k_at(k, -6)
        assert table.stalk("2,1") == k_at(k, -6)
        assert table.stalk("1,1,1") == k_at(k, *origin)

    def test_rationals(self):
        table = stalkcalc.ic_stalk_table(SL3, QQ)
        for row in table:
            assert row.group == k_at(QQ, -6)

    def test_splitting_over_f2(self):
        terms = stalkcalc.splitting_terms(SL3, F2)
        assert terms.dim == 6
        assert terms.multiplicity == 2
        assert terms.resolved == GradedGroup.from_ranks(
            {-6: 1, -4: 2, -2: 2, -1: 1, 0: 1, 1: 2, 3: 2, 5: 1}, F2
        )
        assert terms.closed_stratum == k_at(F2, -4, -2, 1, 3)
        assert terms.punctured == k_at(F2, -6, -1, 0, 5)

    def test_splitting_over_f5(self):
        terms = stalkcalc.splitting_terms(SL3, CoefficientSpec.prime_field(5))
        assert terms.punctured == k_at(CoefficientSpec.prime_field(5), -6, 5)

    def test_characteristic_three(self):
        with pytest.raises(InadmissibleCharacteristic, match="characteristic ≠ 3"):
            stalkcalc.ic_stalk_table(SL3, F3)

    def test_integers(self):
        with pytest.raises(DomainError):
            stalkcalc.ic_stalk_table(SL3, ZZ)


class TestSl4:
    @pytest.mark.parametrize(
        "p,origin", [(3, (-8, -4, -1)), (5, (-8, -4)), (7, (-8, -4))]
    )
    def test_origin(self, p, origin):
        k = CoefficientSpec.prime_field(p)
        table = stalkcalc.ic_stalk_table(SL4, k)
        assert table.labels() == ["2,2", "2,1,1", "1,1,1,1"]
        assert table.stalk("2,1,1") == k_at(k, -8)
        assert table.stalk("1,1,1,1") == k_at(k, *origin)

    def test_splitting_over_f3(self):
        terms = stalkcalc.splitting_terms(SL4, F3)
        assert terms.dim == 8
        assert terms.multiplicity == 1
        assert terms.resolved == GradedGroup.from_ranks(
            {-8: 1, -6: 1, -4: 2, -2: 1, -1: 1, 0: 1, 1: 1, 3: 2, 5: 1, 7: 1}, F3
        )
        assert terms.closed_stratum == k_at(F3, -6, -4, -2, 1, 3, 5)
        assert terms.punctured == k_at(F3, -8, -4, -1, 0, 3, 7)

    def test_characteristic_two(self):
        with pytest.raises(InadmissibleCharacteristic, match="characteristic ≠ 2"):
            stalkcalc.ic_stalk_table(SL4, F2)

    def test_no_splitting_for_two_strata(self):
        with pytest.raises(InvalidCase):
            stalkcalc.splitting_terms(SL2, F2)


class TestRationalAgreesWithKostka:
    @pytest.mark.parametrize(
        "case",
        [
            SL2,
            SL3,
            SL4,
            CaseId(CaseKind.SLN_MINIMAL, 3),
            CaseId(CaseKind.SLN_MINIMAL, 5),
            CaseId(CaseKind.SLN_SUBREG, 4),
        ],
    )
    def test_rows(self, case):
        table = stalkcalc.ic_stalk_table(case, QQ)
        lam = table.strata[0].orbit
        for row in table:
            poly = char0_ic_stalk_poly(lam, row.orbit)
            shift = -orbit_dim(lam)
            expected = {shift + 2 * e: c for e, c in poly.coefficients.items()}
            assert row.group == GradedGroup.from_ranks(expected, QQ)


class TestSkyscraper:
    def test_zero_orbit(self):
        table = stalkcalc.skyscraper_table(Partition.of(1, 1, 1), F2)
        assert table.stalk("1,1,1") == k_at(F2, 0)

    def test_not_zero_orbit(self):
        with pytest.raises(DomainError):
            stalkcalc.skyscraper_table(Partition.of(2, 1), F2)


class TestDecompositionTheorem:
    @pytest.mark.parametrize("p", PRIMES)
    def test_sl2(self, p):
        k = CoefficientSpec.prime_field(p)
        assert stalkcalc.decomposition_theorem_holds(SL2, k) == (p != 2)

    @pytest.mark.parametrize("n", range(2, 7))
    @pytest.mark.parametrize("p", PRIMES)
    @pytest.mark.parametrize("kind", [CaseKind.SLN_MINIMAL, CaseKind.SLN_SUBREG])
    def test_divisibility(self, kind, n, p):
        k = CoefficientSpec.prime_field(p)
        assert stalkcalc.decomposition_theorem_holds(CaseId(kind, n), k) == (n % p != 0)

    def test_rationals(self):
        case = CaseId(CaseKind.SLN_MINIMAL, 4)
        assert stalkcalc.decomposition_theorem_holds(case, QQ)

    def test_unsupported(self):
        with pytest.raises(InvalidCase):
            stalkcalc.decomposition_theorem_holds(SL3, F2)
        with pytest.raises(DomainError):
            stalkcalc.decomposition_theorem_holds(SL2, ZZ)


class TestSupportViolations:
    def test_computed_tables(self):
        for table in all_tables():
            assert stalkcalc.support_violations(table) == []

    def test_detects_high_degree(self):
        table = StalkTable.of(
            [StalkRow("2", 2, k_at(F2, -2)), StalkRow("1,1", 0, k_at(F2, -2, 0))], F2
        )
        assert stalkcalc.support_violations(table) == ["1,1: non-zero in degree 0 > -1"]

    def test_detects_bad_dense_stratum(self):
        table = StalkTable.of([StalkRow("2", 2, k_at(F2, -2, -2))], F2)
        assert stalkcalc.support_violations(table) == ["2: dense stratum is not k[2]"]

    def test_plus_allows_torsion_only(self):
        table = StalkTable.of(
            [StalkRow("2", 2, k_at(ZZ, -2)), StalkRow("1,1", 0, k_at(ZZ, -2, 0))],
            ZZ,
            Perversity.P_PLUS,
        )
        assert stalkcalc.support_violations(table) == ["1,1: free part in degree 0"]

    def test_plus_torsion_bound(self):
        def table(*torsion_degrees: int) -> StalkTable:
            origin = {-2: FGAbGroup(1)}
            origin.update({d: FGAbGroup(0, (2,)) for d in torsion_degrees})
            rows = [
                StalkRow("2", 2, k_at(ZZ, -2)),
                StalkRow("1,1", 0, GradedGroup(origin)),
            ]
            return StalkTable.of(rows, ZZ, Perversity.P_PLUS)

        assert stalkcalc.support_violations(table(0)) == []
        assert stalkcalc.support_violations(table(1)) == [
            "1,1: non-zero in degree 1 > 0"
        ]
