import pytest

from elementary_groups.rings import FreeRing, GroupRing, Integers, ModularIntegers
from elementary_groups.tokeniser import (
    Number as N,
    Operator as O,
    Token as T,
    TokeniserException,
    parse_element,
    tokenise,
)


def test_tokeniser():
    """Test that literals split into numbers, names and operators"""
    names = ["x", "y", "g1", "g10"]
    tests = (
        ("3", [N(3, 0)]),
        ("12 + x", [N(12, 0), O("+", 3), T("x", 5)]),
        ("xy*", [T("x", 0), T("y", 1), O("*", 2)]),
        ("3·x - y", [N(3, 0), O("·", 1), T("x", 2), O("-", 4), T("y", 6)]),
        ("2.x", [N(2, 0), O("·", 1), T("x", 2)]),
        ("−x", [O("-", 0), T("x", 1)]),
        ("g10g1", [T("g10", 0), T("g1", 3)]),
        ("(x + 1)*", [O("(", 0), T("x", 1), O("+", 3), N(1, 5), O(")", 6), O("*", 7)]),
        ("   ", []),
    )

    for literal, expected in tests:
        actual = [e.__dict__ for e in tokenise(literal, names)]
        assert actual == [e.__dict__ for e in expected], literal


def test_tokeniser_failures():
    """Test that unknown characters are reported with their position"""
    with pytest.raises(TokeniserException) as e:
        tokenise("x + z", ["x", "y"])

    assert e.value.pos == 4
    assert "position 4" in str(e.value)


class TestParseElement(object):
    @pytest.fixture
    def free(self):
        return FreeRing(["x", "y"], involution=True)

    def test_integers(self):
        Z = Integers()
        tests = (
            ("3", 3),
            ("-3 + 5", 2),
            ("2·3 - 1", 5),
            ("2(3 + 4)", 14),
            ("7*", 7),
        )

        for literal, expected in tests:
            assert parse_element(Z, literal) == Z.from_int(expected), literal

    def test_modular_reduction(self):
        R = ModularIntegers(5)
        assert parse_element(R, "7") == R.from_int(2)
        assert parse_element(R, "-1") == R.from_int(4)

    def test_free_words(self, free):
        x, y = free.word("x"), free.word("y")
        tests = (
            ("xy", x * y),
            ("yx", y * x),
            ("x*", x.star()),
            ("(xy)*", y.star() * x.star()),
            ("3·xy* - 2", 3 * x * y.star() - 2),
            ("x(y + 1)", x * y + x),
        )

        for literal, expected in tests:
            assert parse_element(free, literal) == expected, literal

    def test_render_parses_back(self, free):
        tests = ("3·xy* - 2", "x*y - y*x", "-x + 4", "0")

        for literal in tests:
            element = parse_element(free, literal)
            assert parse_element(free, str(element)) == element

    def test_group_ring_generators(self):
        R = GroupRing([[2, 3, 1]], modulus=3)
        g = R.generators()["g1"]
        assert parse_element(R, "g1g1g1") == R.one
        assert parse_element(R, "2g1 + 1") == 2 * g + 1

    def test_failures(self, free):
        tests = ("", "x +", "(x", "x)", "z", "·x")

        for literal in tests:
            with pytest.raises(TokeniserException):
                parse_element(free, literal)
