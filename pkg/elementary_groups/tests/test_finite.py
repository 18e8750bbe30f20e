import numpy as np
import pytest

from elementary_groups.elementary import a_diag, e
from elementary_groups.exactmat import Matrix, product
from elementary_groups.finite import (
    CapExceededError,
    FiniteRingError,
    UnimodularVector,
    bfs_closure,
    check_lambda_sr,
    check_normal_theorem,
    check_sr,
    closure_report,
    count_unitary,
    count_unitary_cosets,
    elementary_generators,
    eu_generators,
    gl_generators,
    gl_order,
    is_unimodular,
    k1_stabilization_check,
    ku1_stabilization_probe,
    lambda_matrices,
    lambda_sr_report,
    lambda_stable_range,
    nilpotency_class,
    nilpotent_report,
    normal_closure,
    normal_generation_report,
    perfect_report,
    random_unitary_probes,
    relative_elementary,
    sr_report,
    stable_range,
    tables_for,
    two_sided_ideal,
    verify_perfect,
)
from elementary_groups.formring import MINIMAL, FormRing
from elementary_groups.reports import FAIL, PARTIAL, PASS
from elementary_groups.rings import FreeRing, GroupRing, Integers, ModularIntegers


def _record(report, check_id):
    return [r for r in report.records if r.check_id == check_id][0]


def test_gl_order():
    """Test the order formula against known group orders"""
    tests = (
        (2, 3, 168),
        (3, 3, 11232),
        (5, 2, 480),
        (5, 3, 1488000),
        (4, 1, 2),
        (6, 2, 6 * 48),
    )

    for m, n, expected in tests:
        assert gl_order(m, n) == expected, (m, n)


class TestTables(object):
    def test_modular_matmul_agrees_with_matrices(self):
        R = ModularIntegers(5)
        tables = tables_for(R)
        A = Matrix.from_rows(R, [[1, 2], [3, 4]])
        B = Matrix.from_rows(R, [[0, 4], [2, 1]])
        product_arr = tables.matmul(tables.encode(A), tables.encode(B))
        assert tables.decode(product_arr) == A * B

    def test_group_ring_matmul_agrees_with_matrices(self):
        R = GroupRing([[2, 3, 1]], modulus=2)
        tables = tables_for(R)
        g = R.generators()["g1"]
        A = Matrix.from_rows(R, [[g, 1], [0, g + 1]])
        B = Matrix.from_rows(R, [[1, g * g], [g, 0]])
        assert tables.decode(tables.matmul(tables.encode(A), tables.encode(B))) == A * B
        assert tables.decode(tables.star_transpose(tables.encode(A))) == A.star()

    def test_tables_are_cached(self):
        assert tables_for(ModularIntegers(7)) is tables_for(ModularIntegers(7))

    def test_infinite_rings_have_no_tables(self):
        for ring in (Integers(), FreeRing(["x"])):
            with pytest.raises(FiniteRingError):
                tables_for(ring)


class TestClosure(object):
    def test_elementary_over_z2(self):
        E = bfs_closure(elementary_generators(ModularIntegers(2), 3))
        assert E.complete
        assert len(E) == 168 == gl_order(2, 3)

    def test_a_family(self):
        R = ModularIntegers(5)
        table = bfs_closure([a_diag(i, i + 1, 4, R) for i in range(1, 4)])
        assert len(table) == 8

    def test_trivial_group(self):
        table = bfs_closure([], ring=ModularIntegers(3), n=3)
        assert len(table) == 1
        assert Matrix.identity(ModularIntegers(3), 3) in table

        with pytest.raises(ValueError):
            bfs_closure([])

    def test_membership_and_words(self):
        R = ModularIntegers(2)
        gens = elementary_generators(R, 3)
        E = bfs_closure(gens)
        M = (e(1, 2, 1, 3, R) * e(2, 3, 1, 3, R) * e(3, 1, 1, 3, R)).value
        assert M in E
        word = E.word_for(M)
        assert product([gens[k] for k in word], R, 3).value == M
        assert E.word_for(Matrix.identity(R, 3)) == []

        permutation = Matrix.from_rows(R, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        singular = Matrix.from_rows(R, [[1, 1, 0], [1, 1, 0], [0, 0, 1]])
        assert permutation in E
        assert singular not in E
        assert E.word_for(singular) is None

    def test_cap(self):
        table = bfs_closure(elementary_generators(ModularIntegers(3), 3), cap=100)
        assert not table.complete
        assert len(table) == 100
        assert "partial" in repr(table)

    def test_report(self):
        report = closure_report(ModularIntegers(3), 3)
        assert report.status == PASS
        assert _record(report, "closure.elementary").detail["size"] == 5616

        partial = closure_report(ModularIntegers(3), 3, cap=50)
        assert partial.status == PARTIAL

    @pytest.mark.slow
    def test_elementary_over_z4(self):
        report = closure_report(ModularIntegers(4), 3)
        assert report.status == PASS
        assert _record(report, "closure.elementary").detail["size"] == 43008


class TestNormalClosure(object):
    def test_e12_generates_e3(self):
        report = normal_generation_report(ModularIntegers(3), 3)
        assert report.status == PASS
        assert _record(report, "normal_closure").detail["closure"] == 5616

    def test_normal_closure_of_centre(self):
        R = ModularIntegers(2)
        E = bfs_closure(elementary_generators(R, 2))
        identity = e(1, 2, 0, 2, R)
        assert len(normal_closure([identity], E)) == 1

    def test_needs_complete_ambient(self):
        R = ModularIntegers(3)
        partial = bfs_closure(elementary_generators(R, 3), cap=10)
        with pytest.raises(CapExceededError):
            normal_closure([e(1, 2, 1, 3, R)], partial)

    def test_seed_outside_ambient(self):
        R = ModularIntegers(3)
        ambient = bfs_closure([e(1, 2, 1, 3, R)])
        with pytest.raises(ValueError):
            normal_closure([e(2, 1, 1, 3, R)], ambient)

    def test_normal_theorem(self):
        report = check_normal_theorem(ModularIntegers(3), 3)
        assert report.status == PASS
        assert len(report.records) == 3
        for record in report.records:
            assert record.detail["relative"] <= record.detail["closure"]

    @pytest.mark.slow
    def test_normal_theorem_over_z5(self):
        report = check_normal_theorem(ModularIntegers(5), 3)
        assert report.status == PASS
        assert len(report.records) == 3

    def test_normal_theorem_in_characteristic_two(self):
        # every A is the identity, so nothing is tested
        report = check_normal_theorem(ModularIntegers(2), 3)
        assert report.status == PASS
        assert not report.records
        assert report.notes

    def test_ideals(self):
        R = ModularIntegers(4)
        tests = (
            ([R.from_int(2)], [0, 2]),
            ([R.one], [0, 1, 2, 3]),
            ([R.zero], [0]),
        )

        for gens, expected in tests:
            assert [x.payload for x in two_sided_ideal(R, gens)] == expected

    def test_relative_elementary(self):
        R = ModularIntegers(4)
        ambient = bfs_closure(elementary_generators(R, 2))
        ideal = two_sided_ideal(R, [R.from_int(2)])
        relative = relative_elementary(R, 2, ideal, ambient)
        assert relative.is_subset_of(ambient)
        assert len(ambient) % len(relative) == 0
        assert len(relative_elementary(R, 2, [R.zero], ambient)) == 1


class TestPerfect(object):
    def test_e3_z2(self):
        assert verify_perfect(bfs_closure(elementary_generators(ModularIntegers(2), 3)))
        assert perfect_report(ModularIntegers(2), 3).status == PASS

    def test_e2_z2_is_not_perfect(self):
        # E_2(Z/2) = S_3
        report = perfect_report(ModularIntegers(2), 2)
        assert report.status == FAIL

    @pytest.mark.slow
    def test_e3_z4(self):
        assert perfect_report(ModularIntegers(4), 3).status == PASS


class TestNilpotent(object):
    def test_heisenberg(self):
        R = ModularIntegers(3)
        table = bfs_closure([e(1, 3, 1, 3, R), e(3, 2, 1, 3, R)])
        assert len(table) == 27
        assert nilpotency_class(table) == 2

    def test_not_nilpotent(self):
        table = bfs_closure(elementary_generators(ModularIntegers(2), 2))
        assert nilpotency_class(table) is None
        assert nilpotency_class(bfs_closure([], ring=ModularIntegers(2), n=2)) == 0

    def test_report(self):
        R = ModularIntegers(3)
        F = FormRing(R, eps=-1)
        report = nilpotent_report(R, 3, F)
        assert report.status == PASS
        ids = [r.check_id for r in report.records]
        assert ids == ["nilpotent.gamma", "nilpotent.linear", "nilpotent.unitary"]


class TestUnimodular(object):
    def test_examples_over_z4(self):
        R = ModularIntegers(4)
        tests = (
            ((1, 0), True),
            ((2, 3), True),
            ((2, 2), False),
            ((0, 0), False),
            ((2, 0, 1), True),
        )

        for entries, expected in tests:
            witness = is_unimodular(entries, R)
            assert (witness is not None) == expected, entries
            if witness is not None:
                v = UnimodularVector([R.from_int(a) for a in entries], witness)
                assert v.check()

    def test_certify(self):
        R = ModularIntegers(6)
        v = UnimodularVector.certify([R.from_int(2), R.from_int(3)], R)
        assert v.check()

        with pytest.raises(ValueError):
            UnimodularVector.certify([R.from_int(2), R.from_int(4)], R)


class TestStableRange(object):
    @pytest.mark.parametrize("m", [2, 3, 4, 6])
    def test_finite_rings_have_sr1(self, m):
        R = ModularIntegers(m)
        assert check_sr(R, 1) == (True, None)
        assert stable_range(R) == 1

    def test_monotone(self):
        report = sr_report(ModularIntegers(4), 1)
        assert report.status == PASS
        assert [r.check_id for r in report.records] == ["sr[1]", "sr.monotone[2]"]

    def test_group_ring(self):
        assert stable_range(GroupRing([[2, 1]], modulus=2)) == 1

    def test_bad_m(self):
        with pytest.raises(ValueError):
            check_sr(ModularIntegers(2), 0)


class TestLambdaStableRange(object):
    def test_lambda_matrices(self):
        F = FormRing(ModularIntegers(3), eps=-1)
        gammas = lambda_matrices(F, 2)
        assert len(gammas) == 27
        tables = tables_for(F.base)
        assert all(F.lambda_n_contains(tables.decode(g)) for g in gammas)

        orthogonal = FormRing(ModularIntegers(3), eps=1)
        assert len(lambda_matrices(orthogonal, 2)) == 3

    @pytest.mark.parametrize("m", [2, 3])
    def test_symplectic(self, m):
        F = FormRing(ModularIntegers(m), eps=-1)
        assert check_lambda_sr(F, 1) == (True, None)
        assert lambda_stable_range(F) == 1
        assert lambda_sr_report(F, 1).status == PASS

    def test_matrix_limit(self):
        F = FormRing(ModularIntegers(11), eps=-1)
        with pytest.raises(FiniteRingError):
            lambda_matrices(F, 4)


class TestK1(object):
    @pytest.mark.parametrize("m,units", [(2, 1), (3, 2)])
    def test_small_rings(self, m, units):
        report = k1_stabilization_check(ModularIntegers(m), 2)
        assert report.status == PASS
        assert _record(report, "k1.index[2]").detail["index"] == units
        assert _record(report, "k1.index[3]").detail["index"] == units
        assert _record(report, "k1.order[2]").detail == {
            "bfs": gl_order(m, 2),
            "formula": gl_order(m, 2),
        }
        assert _record(report, "k1.stable").detail == {"indices": [units, units]}

    @pytest.mark.slow
    def test_z5(self):
        report = k1_stabilization_check(ModularIntegers(5), 2)
        assert report.status == PASS
        detail = _record(report, "k1.index[2]").detail
        assert (detail["gl"], detail["e"], detail["index"]) == (480, 120, 4)
        assert _record(report, "k1.order[3]").status == PASS

    def test_below_stable_range(self):
        report = k1_stabilization_check(ModularIntegers(2), 1)
        assert _record(report, "k1.precondition").status == PARTIAL
        assert _record(report, "k1.stable").status == PASS

    def test_cap(self):
        report = k1_stabilization_check(ModularIntegers(3), 2, cap=100)
        assert report.status == PARTIAL
        assert _record(report, "k1.index[3]").status == PARTIAL

    def test_needs_finite_commutative_ring(self):
        for ring in (Integers(), GroupRing([[2, 3, 1], [2, 1, 3]], modulus=2)):
            with pytest.raises(FiniteRingError):
                k1_stabilization_check(ring, 2)

    def test_gl_generators(self):
        R = ModularIntegers(5)
        GL = bfs_closure(gl_generators(R, 2))
        assert len(GL) == 480


class TestKU1(object):
    def test_symplectic_z2(self):
        F = FormRing(ModularIntegers(2), eps=-1)
        assert count_unitary(F, 1) == 6
        report = ku1_stabilization_probe(F, 1)
        first = _record(report, "ku1.index[1]").detail
        second = _record(report, "ku1.index[2]").detail
        assert (first["u"], first["eu"], first["index"]) == (6, 6, 1)
        assert (second["u"], second["eu"], second["index"]) == (720, 720, 1)
        assert _record(report, "ku1.stable").status == PASS
        assert _record(report, "ku1.precondition").status == PARTIAL

    def test_quadratic_z2(self):
        F = FormRing(ModularIntegers(2), eps=1, strategy=MINIMAL)
        report = ku1_stabilization_probe(F, 1)
        assert _record(report, "ku1.index[1]").status == PASS
        first = _record(report, "ku1.index[1]").detail
        assert (first["u"], first["eu"]) == (2, 1)

    def test_quadratic_z2_smoke(self):
        F = FormRing(ModularIntegers(2), eps=1, strategy=MINIMAL)
        report = ku1_stabilization_probe(F, 2)
        ids = {r.check_id for r in report.records}
        assert {"ku1.precondition", "ku1.index[2]", "ku1.index[3]", "ku1.stable"} == ids
        assert _record(report, "ku1.index[2]").detail["index"] == 2

        # the stabilized coset representative keeps the bound above EU_6
        third = _record(report, "ku1.index[3]").detail
        assert third["u_from"] == "generated lower bound"
        assert third["index"] >= 2

    def test_coset_representatives(self):
        F = FormRing(ModularIntegers(2), eps=1, strategy=MINIMAL)
        EU = bfs_closure(eu_generators(F, 1), ring=F.base, n=2)
        count, reps = count_unitary_cosets(F, 1, EU)
        assert (count, len(EU), len(reps)) == (2, 1, 1)
        assert reps[0].value not in EU

    def test_random_unitary_candidates(self):
        F = FormRing(ModularIntegers(2), eps=1, strategy=MINIMAL)
        EU = bfs_closure(eu_generators(F, 1), ring=F.base, n=2)
        reps = random_unitary_probes(F, 1, EU, seed=3, samples=4096)
        assert len(reps) == 1
        assert reps[0].value not in EU
        assert not random_unitary_probes(F, 1, EU, samples=0)

    @pytest.mark.slow
    def test_symplectic_z2_stabilizes(self):
        F = FormRing(ModularIntegers(2), eps=-1)
        report = ku1_stabilization_probe(F, 2)
        assert _record(report, "ku1.index[2]").detail["index"] == 1
        third = _record(report, "ku1.index[3]").detail
        assert third["eu"] == 1451520
        assert third["index"] == 1

    def test_lower_bound_is_partial(self):
        F = FormRing(ModularIntegers(3), eps=-1)
        with pytest.raises(CapExceededError):
            count_unitary(F, 2)
        report = ku1_stabilization_probe(F, 1)
        assert _record(report, "ku1.index[2]").status == PARTIAL
        detail = _record(report, "ku1.index[2]").detail
        assert detail["u_from"] == "generated lower bound"
        assert _record(report, "ku1.stable").status == PARTIAL

    def test_eu_generators(self):
        F = FormRing(ModularIntegers(3), eps=-1)
        gens = eu_generators(F, 2)
        values = [g.value for g in gens]
        assert len(set(values)) == len(values)
        assert not any(g.is_identity() for g in gens)

    def test_needs_finite_form(self):
        with pytest.raises(FiniteRingError):
            ku1_stabilization_probe(FormRing(Integers(), eps=-1), 1)


def test_keys_are_distinct():
    R = ModularIntegers(3)
    tables = tables_for(R)
    batch = np.array([tables.identity_array(2), np.zeros((2, 2), dtype=np.int64)])
    keys = tables.keys(batch)
    assert keys[0] != keys[1]
