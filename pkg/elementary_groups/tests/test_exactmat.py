import pytest

from elementary_groups.exactmat import (
    DimensionError,
    GroupElement,
    InverseMismatchError,
    Matrix,
    block_diag,
    canonical_hash,
    commutator,
    mulclose,
    product,
)
from elementary_groups.rings import (
    DistinctRingError,
    FreeRing,
    Integers,
    ModularIntegers,
)


def _element(ring, rows, inverse_rows):
    return GroupElement(
        Matrix.from_rows(ring, rows), Matrix.from_rows(ring, inverse_rows)
    )


@pytest.fixture
def Z():
    return Integers()


@pytest.fixture
def free():
    return FreeRing(["x", "y"], involution=True)


class TestMatrix(object):
    def test_identity_is_neutral(self, Z):
        M = Matrix.from_rows(Z, [[1, 2], [3, 4]])
        identity = Matrix.identity(Z, 2)
        assert M * identity == M
        assert identity * M == M
        assert identity.is_identity()
        assert not M.is_identity()

    def test_arithmetic(self, Z):
        A = Matrix.from_rows(Z, [[1, 2], [3, 4]])
        B = Matrix.from_rows(Z, [[0, 1], [1, 0]])
        assert A * B == Matrix.from_rows(Z, [[2, 1], [4, 3]])
        assert B * A == Matrix.from_rows(Z, [[3, 4], [1, 2]])
        assert A + B == Matrix.from_rows(Z, [[1, 3], [4, 4]])
        assert A - A == Matrix.zero(Z, 2)
        assert -B + B == Matrix.zero(Z, 2)

    def test_noncommutative_entries(self, free):
        x, y = free.word("x"), free.word("y")
        X = Matrix.diagonal(free, [x, 1])
        Y = Matrix.diagonal(free, [y, 1])
        assert (X * Y)[0, 0] == x * y
        assert (Y * X)[0, 0] == y * x
        assert X.scale(y)[0, 0] == y * x
        assert X.scale(y, left=False)[0, 0] == x * y

    def test_star_reverses_products(self, free):
        x, y = free.word("x"), free.word("y")
        A = Matrix.from_rows(free, [[x, 1], [0, y]])
        B = Matrix.from_rows(free, [[y, x], [1, 0]])
        assert (A * B).star() == B.star() * A.star()
        assert A.star()[0, 1] == 0
        assert A.star()[1, 0] == 1
        assert A.star()[0, 0] == x.star()

    def test_transpose_and_blocks(self, Z):
        M = Matrix.from_rows(Z, [[1, 2, 3], [4, 5, 6]])
        assert M.transpose() == Matrix.from_rows(Z, [[1, 4], [2, 5], [3, 6]])
        assert M.block(0, 2, 1, 3) == Matrix.from_rows(Z, [[2, 3], [5, 6]])

        square = Matrix.from_rows(Z, [[1, 2], [3, 4]])
        zero = Matrix.zero(Z, 2)
        assembled = Matrix.from_blocks([[square, zero], [zero, square]])
        assert assembled.rows == 4
        assert assembled.block(2, 4, 2, 4) == square
        assert assembled.block(0, 2, 2, 4) == zero

    def test_unit(self, Z):
        M = Matrix.unit(Z, 3, 0, 2, Z.from_int(5))
        assert M[0, 2] == 5
        assert sum(1 for e in M.entries if not e.is_zero) == 1

    def test_dimension_errors(self, Z):
        A = Matrix.from_rows(Z, [[1, 2]])
        with pytest.raises(DimensionError):
            A * A
        with pytest.raises(DimensionError):
            A + Matrix.identity(Z, 2)
        with pytest.raises(DimensionError):
            Matrix.from_rows(Z, [[1, 2], [3]])
        with pytest.raises(DimensionError):
            Matrix(Z, 2, 2, [Z.one])

    def test_rings_do_not_mix(self, Z):
        with pytest.raises(DistinctRingError):
            Matrix.identity(Z, 2) * Matrix.identity(ModularIntegers(3), 2)

    def test_equality_and_hash(self):
        R = ModularIntegers(5)
        A = Matrix.from_rows(R, [[6, 0], [0, -1]])
        B = Matrix.from_rows(R, [[1, 0], [0, 4]])
        assert A == B
        assert len({A, B}) == 1
        assert canonical_hash(A) == canonical_hash(B)
        assert canonical_hash(A) != canonical_hash(Matrix.identity(R, 2))

    def test_json(self, free):
        x, y = free.word("x"), free.word("y")
        M = Matrix.from_rows(free, [[x * y.star(), 1], [-2, x + 3]])
        data = M.to_json()
        assert data["rows"] == 2
        assert Matrix.from_json(free, data) == M

        with pytest.raises(DimensionError):
            Matrix.from_json(
                free, {"rows": 3, "cols": 2, "entries": [["1", "0"], ["0", "1"]]}
            )


class TestGroupElement(object):
    def test_checked_inverse(self, Z):
        A = Matrix.from_rows(Z, [[1, 2], [0, 1]])
        inverse = Matrix.from_rows(Z, [[1, -2], [0, 1]])
        g = GroupElement(A, inverse)
        assert (g * g.inv()).is_identity()
        assert g.inv().inv() == g

        with pytest.raises(InverseMismatchError):
            GroupElement(A, A)

    def test_powers_and_order(self):
        R = ModularIntegers(5)
        A = Matrix.from_rows(R, [[1, 1], [0, 1]])
        g = GroupElement(A, Matrix.from_rows(R, [[1, -1], [0, 1]]))
        assert g.order() == 5
        assert (g**5).is_identity()
        assert g**-1 == g.inv()
        assert g**0 == GroupElement.identity(R, 2)

    def test_order_limit(self, Z):
        A = Matrix.from_rows(Z, [[1, 1], [0, 1]])
        g = GroupElement(A, Matrix.from_rows(Z, [[1, -1], [0, 1]]))
        assert g.order(limit=20) is None

    def test_commutator(self, Z):
        a = _element(Z, [[1, 1], [0, 1]], [[1, -1], [0, 1]])
        b = _element(Z, [[1, 0], [1, 1]], [[1, 0], [-1, 1]])
        c = commutator(a, b)
        assert c == a * b * a.inv() * b.inv()
        assert (c * c.inv()).is_identity()
        assert commutator(a, a).is_identity()

    def test_product(self, Z):
        assert product([], Z, 3).is_identity()
        g = _element(Z, [[1, 1], [0, 1]], [[1, -1], [0, 1]])
        assert product([g, g, g]) == g**3

    def test_block_diag(self, Z):
        g = _element(Z, [[1, 1], [0, 1]], [[1, -1], [0, 1]])
        d = block_diag(g, g.inv())
        assert d.n == 4
        assert (d * d.inv()).is_identity()


class TestMulclose(object):
    def test_cyclic(self):
        R = ModularIntegers(3)
        g = GroupElement(
            Matrix.from_rows(R, [[1, 1], [0, 1]]), Matrix.from_rows(R, [[1, 2], [0, 1]])
        )
        elements = mulclose([g])
        assert len(elements) == 3
        assert elements[0].is_identity()

    def test_sl2_f2(self):
        R = ModularIntegers(2)
        a = GroupElement(
            Matrix.from_rows(R, [[1, 1], [0, 1]]), Matrix.from_rows(R, [[1, 1], [0, 1]])
        )
        b = GroupElement(
            Matrix.from_rows(R, [[1, 0], [1, 1]]), Matrix.from_rows(R, [[1, 0], [1, 1]])
        )
        assert len(mulclose([a, b])) == 6

    def test_maxsize(self):
        R = ModularIntegers(7)
        g = GroupElement(
            Matrix.from_rows(R, [[1, 1], [0, 1]]), Matrix.from_rows(R, [[1, 6], [0, 1]])
        )
        assert len(mulclose([g], maxsize=4)) == 4
        assert mulclose([]) == []
