import itertools
import logging

from elementary_groups.exactmat import (
    GroupElement,
    Matrix,
    commutator,
    mulclose,
    product,
)
from elementary_groups.reports import PASS, Report, check_identity
from elementary_groups.rings import ensure_generators, parameter_tuples

logger = logging.getLogger(__name__)


class GeneratorIndexError(IndexError):
    def __init__(self, msg):
        super(GeneratorIndexError, self).__init__(msg)


def _check_pair(i, j, n):
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise GeneratorIndexError(
            "e_{},{} is not an elementary generator of size {}".format(i, j, n)
        )


class ElemGen(object):
    """The elementary matrix e_ij(r) = I + rE_ij, indices from 1"""

    def __init__(self, i, j, r, n):
        _check_pair(i, j, n)
        self.i = i
        self.j = j
        self.r = r
        self.n = n

    def matrix(self):
        owner = self.r.owner
        identity = Matrix.identity(owner, self.n)
        step = Matrix.unit(owner, self.n, self.i - 1, self.j - 1, self.r)
        return GroupElement(identity + step, identity - step, check=False)

    def inv(self):
        return ElemGen(self.i, self.j, -self.r, self.n)

    def __eq__(self, other):
        return isinstance(other, ElemGen) and (self.i, self.j, self.r, self.n) == (
            other.i,
            other.j,
            other.r,
            other.n,
        )

    def __hash__(self):
        return hash((self.i, self.j, self.r, self.n))

    def __repr__(self):
        return "e{},{}({})".format(self.i, self.j, self.r)


class ElemWord(object):
    """A word of (ElemGen, +-1) letters"""

    def __init__(self, letters, n, owner):
        self.letters = [(g, exp) for g, exp in letters]
        self.n = n
        self.owner = owner
        for g, exp in self.letters:
            if exp not in (1, -1):
                raise ValueError("Exponents must be +1 or -1, got {}".format(exp))
            if g.n != n:
                raise GeneratorIndexError("Letter {} is not of size {}".format(g, n))

    def evaluate(self):
        acc = []
        for g, exp in self.letters:
            m = g.matrix()
            acc.append(m if exp == 1 else m.inv())
        return product(acc, owner=self.owner, n=self.n)

    def inverse(self):
        """Reversed word with each letter inverted by e_ij(r)^-1 = e_ij(-r)"""
        return ElemWord(
            [(g.inv(), 1) if exp == 1 else (g, 1) for g, exp in reversed(self.letters)],
            self.n,
            self.owner,
        )

    def __mul__(self, other):
        return ElemWord(self.letters + other.letters, self.n, self.owner)

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return " ".join(
            repr(g) if exp == 1 else "{}^-1".format(g) for g, exp in self.letters
        )


def e(i, j, r, n, ring=None):
    """
    The elementary matrix e_ij(r) with its inverse e_ij(-r)

    :param r: a RingElement, or an int when `ring` is given
    """
    if ring is not None and isinstance(r, int):
        r = ring.from_int(r)
    return ElemGen(i, j, r, n).matrix()


def a_diag(i, j, n, ring):
    """
    Diagonal matrix with -1 at (i, i) and (j, j). Over characteristic 2
    this is the identity.
    """
    _check_pair(i, j, n)
    diag = [-1 if k in (i, j) else 1 for k in range(1, n + 1)]
    A = Matrix.diagonal(ring, diag)
    return GroupElement(A, A, check=False)


def a_decomposition(n, ring):
    """A_12 as e12(1) e21(-1) e12(1) e12(1) e21(-1) e12(1)"""
    w = [e(1, 2, 1, n, ring), e(2, 1, -1, n, ring), e(1, 2, 1, n, ring)]
    return product(w + w)


def b_matrix(i, n, ring):
    """B_i = e_{2i-1,2i}(1) e_{2i,2i-1}(-1) e_{2i-1,2i}(1) e_{2i,2i-1}(-1)"""
    if n % 2 or not 1 <= i <= n // 2:
        raise GeneratorIndexError(
            "B_{} needs an even size of at least {}".format(i, 2 * i)
        )

    a, b = 2 * i - 1, 2 * i
    return product(
        [
            e(a, b, 1, n, ring),
            e(b, a, -1, n, ring),
            e(a, b, 1, n, ring),
            e(b, a, -1, n, ring),
        ]
    )


def _pairs(n):
    return [(i, j) for i, j in itertools.permutations(range(1, n + 1), 2)]


def verify_ecom(n, ring, trials=25, rng=None, report=None):
    """
    The commutator formulas for E_n(R) over every admissible index tuple:
    additivity, [e_ij(r), e_jk(s)] = e_ik(rs) and [e_ij(r), e_kl(s)] = I
    for j != k, i != l
    """
    report = report or Report("ecom")
    ring = ensure_generators(ring, 2)
    params = parameter_tuples(ring, 2, trials=trials, rng=rng)

    for i, j in _pairs(n):
        check_identity(
            report,
            "ecom.additivity[{},{}]".format(i, j),
            params,
            lambda r, s: (e(i, j, r, n) * e(i, j, s, n), e(i, j, r + s, n)),
            names=("r", "s"),
        )

    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        check_identity(
            report,
            "ecom.chain[{},{},{}]".format(i, j, k),
            params,
            lambda r, s: (commutator(e(i, j, r, n), e(j, k, s, n)), e(i, k, r * s, n)),
            names=("r", "s"),
        )

    identity = GroupElement.identity(ring, n)
    for (i, j), (k, l) in itertools.product(_pairs(n), repeat=2):
        if j == k or i == l:
            continue
        check_identity(
            report,
            "ecom.disjoint[{},{},{},{}]".format(i, j, k, l),
            params,
            lambda r, s: (commutator(e(i, j, r, n), e(k, l, s, n)), identity),
            names=("r", "s"),
        )

    logger.debug("ecom over %s, n=%d: %s", ring.describe(), n, report.status)
    return report


def check_prop(n, ring, report=None):
    """The A_{i,i+1} family: decomposition of A_12, involutions, commuting"""
    report = report or Report("prop")
    identity = GroupElement.identity(ring, n)

    report.check(
        "prop.decomposition",
        a_decomposition(n, ring) == a_diag(1, 2, n, ring),
        {"product": a_decomposition(n, ring).value},
    )

    family = [a_diag(i, i + 1, n, ring) for i in range(1, n)]
    report.check(
        "prop.involution",
        all(A * A == identity for A in family),
    )
    report.check(
        "prop.commute",
        all(A * B == B * A for A, B in itertools.combinations(family, 2)),
    )

    expected = 1 if ring.from_int(2).is_zero else 2 ** (n - 1)
    size = len(mulclose(family, maxsize=expected + 1))
    detail = {"size": size, "expected": expected}
    report.check("prop.order", size == expected, detail, detail)
    return report


def normal_conjugation(r, n):
    """Both sides of e12(r) A e12(-r) A^-1 = e12(2r) with A = diag(1,-1,-1,1,...)"""
    A = a_diag(2, 3, n, r.owner)
    lhs = e(1, 2, r, n) * A * e(1, 2, -r, n) * A.inv()
    return lhs, e(1, 2, r + r, n)


def verify_normal_conjugation(r, ring, n):
    if isinstance(r, int):
        r = ring.from_int(r)
    lhs, rhs = normal_conjugation(r, n)
    return lhs == rhs


def normal_conjugation_report(n, ring, trials=25, rng=None, report=None):
    report = report or Report("normal-conj")
    ring = ensure_generators(ring, 1)
    check_identity(
        report,
        "normal_conj",
        parameter_tuples(ring, 1, trials=trials, rng=rng),
        lambda r: normal_conjugation(r, n),
        names=("r",),
    )
    return report


def check_b_family(n, ring, report=None):
    """B_i torsion: the corner block, order 3, commuting, subgroup order 3^k"""
    report = report or Report("b-identities")
    k = n // 2
    family = [b_matrix(i, n, ring) for i in range(1, k + 1)]

    B1 = family[0].value
    block = Matrix.from_rows(ring, [[-1, 1], [-1, 0]])
    corner = B1.block(0, 2, 0, 2)
    report.check("b.block", corner == block, {"block": corner})

    orders = [B.order(limit=6) for B in family]
    report.check("b.order", all(o == 3 for o in orders), {"orders": orders})
    report.check(
        "b.commute",
        all(A * B == B * A for A, B in itertools.combinations(family, 2)),
    )

    size = len(mulclose(family, maxsize=3**k + 1))
    detail = {"size": size, "expected": 3**k}
    report.check("b.subgroup", size == 3**k, detail, detail)
    return report


def b_regeneration_sides(ring, n=4):
    """
    The two regeneration identities:
    [e32(1), B1] = e31(-1) e32(2) and [e31(-1) e32(2), e12(-1)] = e32(1)
    """
    B1 = b_matrix(1, n, ring)
    middle = e(3, 1, -1, n, ring) * e(3, 2, 2, n, ring)
    return [
        (commutator(e(3, 2, 1, n, ring), B1), middle),
        (commutator(middle, e(1, 2, -1, n, ring)), e(3, 2, 1, n, ring)),
    ]


def b_regeneration_report(ring, n=4, report=None):
    report = report or Report("b-identities")
    for k, (lhs, rhs) in enumerate(b_regeneration_sides(ring, n), start=1):
        report.check(
            "b.regeneration.{}".format(k), lhs == rhs, {"lhs": lhs, "rhs": rhs}
        )
    return report


def verify_b_regeneration(ring, n=4):
    return all(lhs == rhs for lhs, rhs in b_regeneration_sides(ring, n))


def nested_upper(i, j, r, n):
    """e_ij(r) as [e_{i,i+1}(r), [e_{i+1,i+2}(1), ... e_{j-1,j}(1)]]"""
    ring = r.owner
    inner = e(j - 1, j, 1, n, ring)
    for k in range(j - 2, i, -1):
        inner = commutator(e(k, k + 1, 1, n, ring), inner)
    return commutator(e(i, i + 1, r, n), inner) if j > i + 1 else e(i, j, r, n)


def lower_route(j, i, r, n):
    """
    e_ji(r), i < j, from upper triangular generators and e_n1:
    [e_jn(r), e_ni(1)] for j < n, [e_n1(r), e_1i(1)] for j = n
    """
    ring = r.owner
    if j == n:
        if i == 1:
            return e(n, 1, r, n)
        return commutator(e(n, 1, r, n), e(1, i, 1, n, ring))

    if i == 1:
        e_ni = e(n, 1, 1, n, ring)
    else:
        e_ni = commutator(e(n, 1, 1, n, ring), e(1, i, 1, n, ring))
    return commutator(e(j, n, r, n), e_ni)


def verify_generation_identities(n, ring, trials=25, rng=None, report=None):
    """Nested commutator expansions for every e_ij(r) and e_ji(r), i < j"""
    report = report or Report("generation")
    ring = ensure_generators(ring, 1)
    params = parameter_tuples(ring, 1, trials=trials, rng=rng)

    for i, j in itertools.combinations(range(1, n + 1), 2):
        if j > i + 1:
            check_identity(
                report,
                "generation.upper.step[{},{}]".format(i, j),
                params,
                lambda r: (
                    commutator(e(i, i + 1, r, n), e(i + 1, j, 1, n, ring)),
                    e(i, j, r, n),
                ),
                names=("r",),
            )
            check_identity(
                report,
                "generation.upper.nested[{},{}]".format(i, j),
                params,
                lambda r: (nested_upper(i, j, r, n), e(i, j, r, n)),
                names=("r",),
            )

        check_identity(
            report,
            "generation.lower[{},{}]".format(j, i),
            params,
            lambda r: (lower_route(j, i, r, n), e(j, i, r, n)),
            names=("r",),
        )

    return report


def fuu_linear_report(ring, n=3, trials=25, rng=None, report=None):
    """
    e12(r) = [e13(1), e32(r)], and z = [e13(x), e32(y)] = e12(xy) commutes
    with every e13(u) and e32(v)
    """
    report = report or Report("fuu")
    ring = ensure_generators(ring, 4)
    identity = GroupElement.identity(ring, n)

    check_identity(
        report,
        "fuu.identity",
        parameter_tuples(ring, 1, trials=trials, rng=rng),
        lambda r: (commutator(e(1, 3, 1, n, ring), e(3, 2, r, n)), e(1, 2, r, n)),
        names=("r",),
    )

    def _central(x, y, u, v):
        z = commutator(e(1, 3, x, n), e(3, 2, y, n))
        lhs = (z, commutator(z, e(1, 3, u, n)), commutator(z, e(3, 2, v, n)))
        return lhs, (e(1, 2, x * y, n), identity, identity)

    check_identity(
        report,
        "fuu.central",
        parameter_tuples(ring, 4, trials=trials, rng=rng),
        _central,
        names=("x", "y", "u", "v"),
    )
    return report


def verify_fuu_linear(ring, n=3, trials=25, rng=None):
    return fuu_linear_report(ring, n, trials=trials, rng=rng).status == PASS
