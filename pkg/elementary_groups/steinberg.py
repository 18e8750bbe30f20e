import itertools
import logging

from elementary_groups.elementary import GeneratorIndexError, e
from elementary_groups.exactmat import GroupElement, product
from elementary_groups.reports import Report, check_identity
from elementary_groups.rings import ensure_generators, parameter_tuples

logger = logging.getLogger(__name__)


class StLetter(object):
    """The symbol x_ij(r), or its formal inverse when exp = -1"""

    def __init__(self, i, j, r, exp=1):
        if i == j:
            raise GeneratorIndexError("x_{},{} needs distinct indices".format(i, j))
        if exp not in (1, -1):
            raise ValueError("Exponents must be +1 or -1, got {}".format(exp))
        self.i = i
        self.j = j
        self.r = r
        self.exp = exp

    def inv(self):
        return StLetter(self.i, self.j, self.r, -self.exp)

    def cancels(self, other):
        return (self.i, self.j, self.r) == (other.i, other.j, other.r) and (
            self.exp == -other.exp
        )

    def __eq__(self, other):
        return isinstance(other, StLetter) and (
            self.i,
            self.j,
            self.r,
            self.exp,
        ) == (other.i, other.j, other.r, other.exp)

    def __hash__(self):
        return hash((self.i, self.j, self.r, self.exp))

    def __repr__(self):
        base = "x{},{}({})".format(self.i, self.j, self.r)
        return base if self.exp == 1 else base + "^-1"


class StWord(object):
    """A word in the Steinberg symbols of size n over `owner`"""

    def __init__(self, letters, n, owner):
        self.letters = list(letters)
        self.n = n
        self.owner = owner
        for x in self.letters:
            if not (1 <= x.i <= n and 1 <= x.j <= n):
                raise GeneratorIndexError("{} is outside size {}".format(x, n))

    @classmethod
    def symbol(cls, i, j, r, n, exp=1):
        return cls([StLetter(i, j, r, exp)], n, r.owner)

    def inverse(self):
        return StWord([x.inv() for x in reversed(self.letters)], self.n, self.owner)

    def __mul__(self, other):
        return StWord(self.letters + other.letters, self.n, self.owner)

    def __eq__(self, other):
        return isinstance(other, StWord) and (self.n, self.letters) == (
            other.n,
            other.letters,
        )

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return " ".join(repr(x) for x in self.letters) or "1"


def st_commutator(u, v):
    """[u, v] = u v u^-1 v^-1 as a word"""
    return u * v * u.inverse() * v.inverse()


def st_evaluate(w):
    """The image of a Steinberg word under x_ij(r) -> e_ij(r)"""
    acc = []
    for x in w.letters:
        g = e(x.i, x.j, x.r, w.n)
        acc.append(g if x.exp == 1 else g.inv())
    if not acc:
        return GroupElement.identity(w.owner, w.n)
    return product(acc)


def st_free_reduce(w):
    """
    Remove zero-parameter letters and cancel adjacent inverse pairs.
    Letters with equal indices are never merged.
    """
    stack = []
    for x in w.letters:
        if x.r.is_zero:
            continue
        if stack and stack[-1].cancels(x):
            stack.pop()
            continue
        stack.append(x)
    return StWord(stack, w.n, w.owner)


def verify_st_relations(n, ring, trials=25, rng=None, report=None):
    """
    Both sides of every relation instance evaluate to the same matrix:
    x_ij(r) x_ij(s) = x_ij(r+s), [x_ij(r), x_jk(s)] = x_ik(rs) for i != k and
    [x_ij(r), x_kl(s)] = 1 for j != k, i != l
    """
    report = report or Report("st")
    ring = ensure_generators(ring, 2)
    params = parameter_tuples(ring, 2, trials=trials, rng=rng)
    x = StWord.symbol
    empty = StWord([], n, ring)

    pairs = list(itertools.permutations(range(1, n + 1), 2))
    for i, j in pairs:
        check_identity(
            report,
            "st.1[{},{}]".format(i, j),
            params,
            lambda r, s: (
                st_evaluate(x(i, j, r, n) * x(i, j, s, n)),
                st_evaluate(x(i, j, r + s, n)),
            ),
            names=("r", "s"),
        )

    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        check_identity(
            report,
            "st.2[{},{},{}]".format(i, j, k),
            params,
            lambda r, s: (
                st_evaluate(st_commutator(x(i, j, r, n), x(j, k, s, n))),
                st_evaluate(x(i, k, r * s, n)),
            ),
            names=("r", "s"),
        )

    for (i, j), (k, l) in itertools.product(pairs, repeat=2):
        if j == k or i == l:
            continue
        check_identity(
            report,
            "st.3[{},{},{},{}]".format(i, j, k, l),
            params,
            lambda r, s: (
                st_evaluate(st_commutator(x(i, j, r, n), x(k, l, s, n))),
                st_evaluate(empty),
            ),
            names=("r", "s"),
        )

    logger.debug(
        "Steinberg relations over %s, n=%d: %s", ring.describe(), n, report.status
    )
    return report


def evaluation_is_multiplicative(u, v):
    """st_evaluate(uv) = st_evaluate(u) st_evaluate(v)"""
    return st_evaluate(u * v) == st_evaluate(u) * st_evaluate(v)
