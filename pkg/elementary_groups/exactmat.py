import hashlib
import logging

from elementary_groups.rings import DistinctRingError, RingElement

logger = logging.getLogger(__name__)


class DimensionError(ValueError):
    def __init__(self, msg):
        super(DimensionError, self).__init__(msg)


class InverseMismatchError(ValueError):
    def __init__(self, msg):
        super(InverseMismatchError, self).__init__(msg)


class Matrix(object):
    """
    A dense matrix over a RingSpec

    Entries are stored row-major as normalised RingElements, so equality
    and hashing are structural. Indexing is zero-based: M[i, j].
    """

    __slots__ = ("owner", "rows", "cols", "entries", "_key")

    def __init__(self, owner, rows, cols, entries):
        entries = tuple(entries)
        if rows < 1 or cols < 1 or len(entries) != rows * cols:
            raise DimensionError(
                "{} entries do not make a {}x{} matrix".format(len(entries), rows, cols)
            )
        for e in entries:
            if e.owner is not owner and e.owner != owner:
                raise DistinctRingError(owner, e.owner)

        self.owner = owner
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._key = None

    @classmethod
    def zero(cls, owner, rows, cols=None):
        cols = rows if cols is None else cols
        return cls(owner, rows, cols, [owner.zero] * (rows * cols))

    @classmethod
    def identity(cls, owner, n):
        zero, one = owner.zero, owner.one
        return cls(
            owner, n, n, [one if i == j else zero for i in range(n) for j in range(n)]
        )

    @classmethod
    def from_rows(cls, owner, rows):
        """Build from nested lists of RingElements or ints"""
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("Rows must be non-empty and of equal length")

        entries = []
        for r in rows:
            for e in r:
                entries.append(e if isinstance(e, RingElement) else owner.from_int(e))
        return cls(owner, len(rows), len(rows[0]), entries)

    @classmethod
    def unit(cls, owner, n, i, j, r=None):
        """r E_ij, zero-based, with r = 1 by default"""
        entries = [owner.zero] * (n * n)
        entries[i * n + j] = owner.one if r is None else r
        return cls(owner, n, n, entries)

    @classmethod
    def diagonal(cls, owner, diag):
        n = len(diag)
        entries = [owner.zero] * (n * n)
        for i, d in enumerate(diag):
            entries[i * n + i] = d if isinstance(d, RingElement) else owner.from_int(d)
        return cls(owner, n, n, entries)

    @property
    def key(self):
        if self._key is None:
            self._key = (
                self.owner.key,
                self.rows,
                self.cols,
                tuple(e.payload for e in self.entries),
            )
        return self._key

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def _check_same_shape(self, other):
        if self.owner != other.owner:
            raise DistinctRingError(self.owner, other.owner)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(
                "Shapes differ: {}x{} and {}x{}".format(
                    self.rows, self.cols, other.rows, other.cols
                )
            )

    def __add__(self, other):
        self._check_same_shape(other)
        return Matrix(
            self.owner,
            self.rows,
            self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def __sub__(self, other):
        self._check_same_shape(other)
        return Matrix(
            self.owner,
            self.rows,
            self.cols,
            [a - b for a, b in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return Matrix(self.owner, self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        return NotImplemented

    def scale(self, r, left=True):
        """r·M when `left`, otherwise M·r"""
        if left:
            entries = [r * a for a in self.entries]
        else:
            entries = [a * r for a in self.entries]
        return Matrix(self.owner, self.rows, self.cols, entries)

    def transpose(self):
        return Matrix(
            self.owner,
            self.cols,
            self.rows,
            [self[i, j] for j in range(self.cols) for i in range(self.rows)],
        )

    def star(self):
        """Conjugate transpose: (x_ij)* = (x_ji*)"""
        return Matrix(
            self.owner,
            self.cols,
            self.rows,
            [self[i, j].star() for j in range(self.cols) for i in range(self.rows)],
        )

    def block(self, r0, r1, c0, c1):
        """The submatrix of rows r0..r1-1 and columns c0..c1-1"""
        return Matrix(
            self.owner,
            r1 - r0,
            c1 - c0,
            [self[i, j] for i in range(r0, r1) for j in range(c0, c1)],
        )

    @classmethod
    def from_blocks(cls, blocks):
        """Assemble from a grid (list of rows) of matrices"""
        owner = blocks[0][0].owner
        acc = []
        for block_row in blocks:
            height = block_row[0].rows
            for b in block_row:
                if b.rows != height:
                    raise DimensionError("Blocks in a row must have equal height")
            for i in range(height):
                line = []
                for b in block_row:
                    line.extend(b.row(i))
                acc.append(line)
        return cls.from_rows(owner, acc)

    def is_identity(self):
        return self.is_square and self == Matrix.identity(self.owner, self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.key == other.key

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        return "[{}]".format(
            "; ".join(", ".join(str(e) for e in r) for r in self.to_rows())
        )

    def __repr__(self):
        return "Matrix({}x{} over {}: {})".format(
            self.rows, self.cols, self.owner.describe(), self
        )

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(e) for e in r] for r in self.to_rows()],
        }

    @classmethod
    def from_json(cls, owner, data):
        """Inverse of to_json; entries are element literals or integers"""
        rows = []
        for r in data["entries"]:
            rows.append([e if isinstance(e, int) else owner.parse(e) for e in r])
        M = cls.from_rows(owner, rows)
        if (M.rows, M.cols) != (data.get("rows", M.rows), data.get("cols", M.cols)):
            raise DimensionError("Declared shape does not match the entries")
        return M


def mat_mul(A, B):
    """Exact product; zero entries of A are skipped"""
    if A.owner != B.owner:
        raise DistinctRingError(A.owner, B.owner)
    if A.cols != B.rows:
        raise DimensionError(
            "Cannot multiply {}x{} by {}x{}".format(A.rows, A.cols, B.rows, B.cols)
        )

    zero = A.owner.zero
    acc = []
    for i in range(A.rows):
        row = A.row(i)
        for j in range(B.cols):
            total = zero
            for k, a in enumerate(row):
                if a.is_zero:
                    continue
                b = B.entries[k * B.cols + j]
                if not b.is_zero:
                    total = total + a * b
            acc.append(total)

    return Matrix(A.owner, A.rows, B.cols, acc)


class GroupElement(object):
    """
    An invertible matrix travelling with its inverse

    Nothing here inverts a matrix; inverses come from formulas and are
    checked on both sides at construction unless `check` is False.
    """

    __slots__ = ("value", "inverse")

    def __init__(self, value, inverse, check=True):
        if not value.is_square or (value.rows, value.cols) != (
            inverse.rows,
            inverse.cols,
        ):
            raise DimensionError("A group element needs square matrices of one size")
        if check:
            left, right = value * inverse, inverse * value
            if not left.is_identity() or not right.is_identity():
                raise InverseMismatchError(
                    "{} is not the inverse of {}".format(inverse, value)
                )

        self.value = value
        self.inverse = inverse

    @classmethod
    def identity(cls, owner, n):
        identity = Matrix.identity(owner, n)
        return cls(identity, identity, check=False)

    @property
    def owner(self):
        return self.value.owner

    @property
    def n(self):
        return self.value.rows

    def inv(self):
        return GroupElement(self.inverse, self.value, check=False)

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return GroupElement(
            self.value * other.value, other.inverse * self.inverse, check=False
        )

    def __pow__(self, k):
        base = self if k >= 0 else self.inv()
        acc = GroupElement.identity(self.owner, self.n)
        for _ in range(abs(k)):
            acc = acc * base
        return acc

    def order(self, limit=1000):
        """Multiplicative order, or None past `limit`"""
        acc = self
        for k in range(1, limit + 1):
            if acc.value.is_identity():
                return k
            acc = acc * self
        return None

    def is_identity(self):
        return self.value.is_identity()

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.value == other.value

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return "GroupElement({})".format(self.value)


def product(elements, owner=None, n=None):
    """Ordered product of GroupElements; the identity for an empty list"""
    elements = list(elements)
    if not elements:
        return GroupElement.identity(owner, n)
    acc = elements[0]
    for g in elements[1:]:
        acc = acc * g
    return acc


def commutator(g, h):
    """[g, h] = g h g^-1 h^-1"""
    if g.n != h.n:
        raise DimensionError("Commutator of {}x{} and {}x{}".format(g.n, g.n, h.n, h.n))
    return GroupElement(
        g.value * h.value * g.inverse * h.inverse,
        h.value * g.value * h.inverse * g.inverse,
        check=False,
    )


def block_diag(A, B):
    """Block diagonal of values and of inverses"""
    if A.owner != B.owner:
        raise DistinctRingError(A.owner, B.owner)

    def _diag(X, Y):
        return Matrix.from_blocks(
            [
                [X, Matrix.zero(X.owner, X.rows, Y.cols)],
                [Matrix.zero(X.owner, Y.rows, X.cols), Y],
            ]
        )

    return GroupElement(
        _diag(A.value, B.value), _diag(A.inverse, B.inverse), check=False
    )


def canonical_hash(M):
    """Stable digest of a matrix's normal form"""
    if isinstance(M, GroupElement):
        M = M.value
    return hashlib.sha256(repr(M.key).encode("utf-8")).hexdigest()


def mulclose(generators, maxsize=None):
    """
    Closure of a finite set of GroupElements under multiplication

    Elements are returned in discovery order, identity first. When
    `maxsize` is reached the partial list is returned.
    """
    generators = list(generators)
    if not generators:
        return []

    acc = [GroupElement.identity(generators[0].owner, generators[0].n)]
    seen = {acc[0].value}
    frontier = list(acc)

    while frontier:
        next_frontier = []
        for B in frontier:
            for A in generators:
                C = B * A
                if C.value in seen:
                    continue
                seen.add(C.value)
                acc.append(C)
                next_frontier.append(C)
                if maxsize and len(acc) >= maxsize:
                    logger.warning("Closure stopped at %d elements", len(acc))
                    return acc
        frontier = next_frontier

    logger.debug("Closure of %d generators has %d elements", len(generators), len(acc))
    return acc
