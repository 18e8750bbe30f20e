import random

import pytest
from hypothesis import given, settings, strategies as st

from elementary_groups.rings import (
    DistinctRingError,
    FreeRing,
    GroupRing,
    Integers,
    ModularIntegers,
    RingSpecError,
    UnsupportedRingOperation,
    check_characteristic,
    ensure_generators,
    parameter_tuples,
    ring_from_spec,
    units_of,
)

FREE = FreeRing(["x", "y", "z"], involution=True)


@st.composite
def free_elements(draw):
    """Short integer combinations of words in x, y, z and their stars"""
    acc = FREE.zero
    for _ in range(draw(st.integers(min_value=0, max_value=3))):
        letters = draw(
            st.lists(st.sampled_from(["x", "y", "z", "x*", "y*", "z*"]), max_size=3)
        )
        coeff = draw(st.integers(min_value=-9, max_value=9))
        acc = acc + coeff * FREE.word(*letters)
    return acc


class TestFreeRingAxioms(object):
    @given(free_elements(), free_elements(), free_elements())
    @settings(max_examples=50, deadline=None)
    def test_associative_and_distributive(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c

    @given(free_elements(), free_elements())
    @settings(max_examples=50, deadline=None)
    def test_involution_is_an_anti_automorphism(self, a, b):
        assert (a * b).star() == b.star() * a.star()
        assert (a + b).star() == a.star() + b.star()
        assert a.star().star() == a

    @given(free_elements())
    @settings(max_examples=50, deadline=None)
    def test_additive_inverse(self, a):
        assert (a - a).is_zero
        assert a + FREE.zero == a
        assert a * FREE.one == a == FREE.one * a


@given(st.integers(min_value=2, max_value=30), st.integers(), st.integers())
@settings(max_examples=50, deadline=None)
def test_modular_matches_integers(m, a, b):
    R = ModularIntegers(m)
    assert R.from_int(a) * R.from_int(b) == R.from_int(a * b)
    assert R.from_int(a) + R.from_int(b) == R.from_int(a + b)
    assert R.from_int(a) - R.from_int(b) == R.from_int(a - b)


def test_free_ring_is_noncommutative():
    R = FreeRing(["r", "s"])
    r, s = R.word("r"), R.word("s")
    assert r * s != s * r
    assert str(3 * r * s - 2) == "-2 + 3·rs"


def test_free_ring_without_involution():
    R = FreeRing(["r", "s"])
    with pytest.raises(UnsupportedRingOperation):
        R.word("r").star()


def test_free_ring_names():
    """Test that generator names are validated"""
    tests = (
        [],
        ["x", "x"],
        ["x", "xy"],
        ["1x"],
    )

    for gens in tests:
        with pytest.raises(RingSpecError):
            FreeRing(gens)


def test_extended_free_ring():
    R = FreeRing(["r"], involution=True)
    wider = R.extended(3)
    assert wider.gens[0] == "r"
    assert len(wider.gens) == 3
    assert wider.involutive
    assert ensure_generators(R, 1) is R
    assert len(ensure_generators(R, 4).gens) == 4


def test_distinct_rings_do_not_mix():
    with pytest.raises(DistinctRingError):
        ModularIntegers(3).one + ModularIntegers(5).one

    with pytest.raises(DistinctRingError):
        FreeRing(["x"]).one * Integers().one


def test_integer_coercion():
    R = ModularIntegers(7)
    assert 3 + R.from_int(5) == R.one
    assert 2 * R.from_int(4) == R.one
    assert R.from_int(8) == 1
    assert 1 - R.from_int(2) == R.from_int(6)


class TestGroupRing(object):
    @pytest.fixture
    def s3(self):
        return GroupRing([[2, 1, 3], [2, 3, 1]])

    def test_order(self, s3):
        assert s3.order == 6
        assert s3.describe() == "Z[G, |G|=6]"

    def test_involution_inverts_group_elements(self, s3):
        for k in range(s3.order):
            g = s3.basis(k)
            assert g * g.star() == s3.one
            assert g.star().star() == g

    def test_noncommutative(self, s3):
        gens = s3.generators()
        a, b = gens["g1"], gens["g2"]
        assert a * b != b * a
        assert (a * b).star() == b.star() * a.star()

    def test_modular_group_ring_is_finite(self):
        R = GroupRing([[2, 1]], modulus=3)
        assert R.is_finite
        assert R.size() == 9
        assert len(R.elements()) == 9
        assert len(set(R.elements())) == 9

    def test_bad_permutations(self):
        with pytest.raises(RingSpecError):
            GroupRing([[1, 1, 2]])
        with pytest.raises(RingSpecError):
            GroupRing([])


def test_units_of():
    """Test that units are found exhaustively"""
    tests = (
        (ModularIntegers(2), [1]),
        (ModularIntegers(4), [1, 3]),
        (ModularIntegers(5), [1, 2, 3, 4]),
        (ModularIntegers(6), [1, 5]),
        (ModularIntegers(9), [1, 2, 4, 5, 7, 8]),
    )

    for R, expected in tests:
        assert [u.payload for u in units_of(R)] == expected

    with pytest.raises(UnsupportedRingOperation):
        units_of(Integers())


def test_units_of_group_ring():
    # F_2[C_2] has 4 elements and units 1 and g
    R = GroupRing([[2, 1]], modulus=2)
    units = units_of(R)
    assert len(units) == 2
    assert R.one in units


def test_ring_from_spec():
    tests = (
        ({"kind": "integers"}, Integers()),
        ({"kind": "modular", "m": 5}, ModularIntegers(5)),
        ({"kind": "free", "gens": ["r", "s"]}, FreeRing(["r", "s"])),
        (
            {"kind": "free", "gens": ["x"], "involution": True, "epsilon": 1},
            FreeRing(["x"], involution=True, epsilon=1),
        ),
        ({"kind": "group_ring", "perm_gens": [[2, 1]]}, GroupRing([[2, 1]])),
    )

    for data, expected in tests:
        ring = ring_from_spec(data)
        assert ring == expected
        assert ring_from_spec(ring.to_json()) == ring


def test_ring_from_spec_failures():
    tests = (
        [],
        {"kind": "octonions"},
        {"kind": "modular"},
        {"kind": "modular", "m": 1},
        {"kind": "free"},
    )

    for data in tests:
        with pytest.raises(RingSpecError):
            ring_from_spec(data)


class TestParameterTuples(object):
    def test_free_ring_uses_generators(self):
        R = FreeRing(["r", "s", "t"])
        assert parameter_tuples(R, 2) == [(R.word("r"), R.word("s"))]

        with pytest.raises(RingSpecError):
            parameter_tuples(R, 4)

    def test_finite_ring_is_exhausted(self):
        R = ModularIntegers(3)
        params = parameter_tuples(R, 2)
        assert len(params) == 9
        assert len(set(params)) == 9

    def test_integers_are_sampled(self):
        Z = Integers()
        params = parameter_tuples(Z, 2, trials=10, rng=random.Random(0))
        assert len(params) == 12
        assert params[0] == (Z.zero, Z.zero)
        assert params[1] == (Z.one, Z.one)
        assert all(-9 <= x.payload <= 9 for p in params for x in p)

    def test_sampling_is_deterministic(self):
        Z = Integers()
        first = parameter_tuples(Z, 3, trials=5, rng=random.Random(7))
        second = parameter_tuples(Z, 3, trials=5, rng=random.Random(7))
        assert first == second


def test_characteristic():
    assert check_characteristic(ModularIntegers(6))
    assert check_characteristic(Integers())
    assert check_characteristic(GroupRing([[2, 1]], modulus=4))
