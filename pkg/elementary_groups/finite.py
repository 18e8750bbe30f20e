"""
Finite-scale oracles over finite rings.

Matrices are held as numpy arrays of element indices into a
FiniteRingTables, and closure searches run layer by layer over whole
frontiers at once. Every matrix gets an int64 key (its entries read as
digits base |R|), which is what the visited sets are made of.
"""

import itertools
import logging

import numpy as np
from sympy import factorint

from elementary_groups.elementary import a_diag, e
from elementary_groups.exactmat import GroupElement, Matrix, commutator
from elementary_groups.reports import Report
from elementary_groups.rings import ModularIntegers, units_of
from elementary_groups.unitary import (
    UnitaryGen,
    hyperbolic_embed,
    long_pairs,
    short_pairs,
    sigma,
    stabilize,
    unitary_inverse,
)

logger = logging.getLogger(__name__)

DEFAULT_CAP = 5000000

# Rows of a frontier multiplied at once
CHUNK = 1 << 16

# Largest ring for which we build full addition/multiplication tables
TABLE_LIMIT = 4096

# Full matrix spaces up to this size are enumerated outright
FULL_SPACE_LIMIT = 1 << 24

# Largest Lambda_{m+1} we enumerate for the Lambda-stable range
LAMBDA_MATRIX_LIMIT = 1000000

# Cosets of EU collected as probes, and random candidates tried for them
PROBE_COSETS = 4
PROBE_SAMPLES = 1 << 18

_KEY_LIMIT = 1 << 63


class FiniteRingError(ValueError):
    def __init__(self, msg):
        super(FiniteRingError, self).__init__(msg)


class CapExceededError(Exception):
    def __init__(self, msg):
        super(CapExceededError, self).__init__(msg)


class FiniteRingTables(object):
    """
    Addition, multiplication, negation and involution of a finite ring as
    index tables. Z/m uses residues as indices and multiplies with a plain
    integer matmul.
    """

    def __init__(self, ring):
        if not ring.is_finite:
            raise FiniteRingError("{} is not finite".format(ring.describe()))
        if ring.size() > TABLE_LIMIT:
            raise FiniteRingError(
                "{} has {} elements; tables are limited to {}".format(
                    ring.describe(), ring.size(), TABLE_LIMIT
                )
            )

        self.ring = ring
        self.elements = ring.elements()
        self.size = len(self.elements)
        self.index = {x: k for k, x in enumerate(self.elements)}
        self.modulus = ring.m if isinstance(ring, ModularIntegers) else None

        N = self.size
        self.add = np.empty((N, N), dtype=np.int64)
        self.mul = np.empty((N, N), dtype=np.int64)
        for a, x in enumerate(self.elements):
            for b, y in enumerate(self.elements):
                self.add[a, b] = self.index[x + y]
                self.mul[a, b] = self.index[x * y]

        self.neg = np.array([self.index[-x] for x in self.elements], dtype=np.int64)
        if ring.has_involution:
            self.star = np.array(
                [self.index[x.star()] for x in self.elements], dtype=np.int64
            )
        else:
            self.star = None

        self.zero = self.index[ring.zero]
        self.one = self.index[ring.one]
        self._weights = {}

    def identity_array(self, n):
        acc = np.full((n, n), self.zero, dtype=np.int64)
        np.fill_diagonal(acc, self.one)
        return acc

    def encode(self, M):
        """Matrix -> (rows, cols) index array"""
        if isinstance(M, GroupElement):
            M = M.value
        return np.array(
            [[self.index[M[i, j]] for j in range(M.cols)] for i in range(M.rows)],
            dtype=np.int64,
        )

    def decode(self, arr):
        rows, cols = arr.shape
        return Matrix(
            self.ring,
            rows,
            cols,
            [self.elements[int(k)] for k in arr.reshape(-1)],
        )

    def matmul(self, A, B):
        """Batched product of index arrays; broadcasts over leading axes"""
        if self.modulus:
            return np.matmul(A, B) % self.modulus

        prod = self.mul[A[..., :, :, None], B[..., None, :, :]]
        acc = prod[..., :, 0, :]
        for k in range(1, prod.shape[-2]):
            acc = self.add[acc, prod[..., :, k, :]]
        return acc

    def star_transpose(self, A):
        return np.swapaxes(self.star[A], -1, -2)

    def keys(self, arr):
        """int64 key of each (n, n) matrix in a batch"""
        cells = arr.shape[-1] * arr.shape[-2]
        weights = self._weights.get(cells)
        if weights is None:
            if self.size**cells >= _KEY_LIMIT:
                raise FiniteRingError(
                    "{}x{} matrices over {} do not fit in 64-bit keys".format(
                        arr.shape[-2], arr.shape[-1], self.ring.describe()
                    )
                )
            weights = np.array([self.size**k for k in range(cells)], dtype=np.int64)
            self._weights[cells] = weights
        return arr.reshape(-1, cells) @ weights


_TABLES = {}


def tables_for(ring):
    """Tables are cached per ring"""
    tables = _TABLES.get(ring.key)
    if tables is None:
        tables = FiniteRingTables(ring)
        _TABLES[ring.key] = tables
    return tables


def _explore(tables, n, moves, cap):
    """
    Breadth-first search from the identity, where each move sends x to
    L x R (either side may be None). Returns the matrices in discovery order
    with their keys, parent positions and the move that reached them.
    """
    start = tables.identity_array(n)[None]
    mats = [start]
    keys = [tables.keys(start)]
    parents = [np.array([-1], dtype=np.int64)]
    via = [np.array([-1], dtype=np.int64)]
    visited = keys[0].copy()
    total = 1
    complete = True

    frontier = start
    frontier_ids = np.array([0], dtype=np.int64)

    while len(frontier):
        found_m, found_k, found_p, found_v = [], [], [], []
        for lo in range(0, len(frontier), CHUNK):
            block = frontier[lo : lo + CHUNK]
            ids = frontier_ids[lo : lo + CHUNK]
            for v, (L, R) in enumerate(moves):
                C = block
                if L is not None:
                    C = tables.matmul(L, C)
                if R is not None:
                    C = tables.matmul(C, R)

                k = tables.keys(C)
                fresh = ~np.isin(k, visited, assume_unique=False)
                if fresh.any():
                    found_m.append(C[fresh])
                    found_k.append(k[fresh])
                    found_p.append(ids[fresh])
                    found_v.append(np.full(int(fresh.sum()), v, dtype=np.int64))

        if not found_k:
            break

        cand_k = np.concatenate(found_k)
        _, first = np.unique(cand_k, return_index=True)
        first = np.sort(first)

        if total + len(first) > cap:
            first = first[: cap - total]
            complete = False

        new_m = np.concatenate(found_m)[first]
        new_k = cand_k[first]
        mats.append(new_m)
        keys.append(new_k)
        parents.append(np.concatenate(found_p)[first])
        via.append(np.concatenate(found_v)[first])

        frontier = new_m
        frontier_ids = np.arange(total, total + len(first), dtype=np.int64)
        total += len(first)
        visited = np.sort(np.concatenate([visited, new_k]))
        logger.debug("Closure layer: %d new, %d total", len(first), total)

        if not complete:
            logger.warning("Closure stopped at the cap of %d elements", cap)
            break

    return (
        np.concatenate(mats),
        np.concatenate(keys),
        np.concatenate(parents),
        np.concatenate(via),
        complete,
    )


class FiniteGroupTable(object):
    """
    The elements reached by a closure search, keyed for membership, with the
    BFS parent and move of each element kept for provenance
    """

    def __init__(self, tables, n, generators, moves, cap=DEFAULT_CAP):
        self.tables = tables
        self.n = n
        self.generators = list(generators)
        self.cap = cap

        mats, keys, parents, via, complete = _explore(tables, n, moves, cap)
        self.complete = complete
        self._mats = mats.astype(np.int32)
        self._keys = keys
        self._parents = parents
        self._via = via
        self._order = np.argsort(keys, kind="stable")
        self._sorted = keys[self._order]

    @property
    def ring(self):
        return self.tables.ring

    def __len__(self):
        return len(self._keys)

    def position(self, M):
        """Discovery position of a matrix, or None"""
        key = self.tables.keys(self.tables.encode(M)[None])[0]
        k = int(np.searchsorted(self._sorted, key))
        if k < len(self._sorted) and self._sorted[k] == key:
            return int(self._order[k])
        return None

    def __contains__(self, M):
        return self.position(M) is not None

    def contains_keys(self, keys):
        return np.isin(keys, self._sorted)

    def is_subset_of(self, other):
        return bool(other.contains_keys(self._keys).all())

    def matrix(self, k):
        return self.tables.decode(self._mats[k].astype(np.int64))

    def matrices(self):
        for k in range(len(self)):
            yield self.matrix(k)

    def word_for(self, M):
        """Indices of the moves leading from the identity to M, in order"""
        k = self.position(M)
        if k is None:
            return None

        acc = []
        while self._parents[k] >= 0:
            acc.append(int(self._via[k]))
            k = int(self._parents[k])
        return list(reversed(acc))

    def __repr__(self):
        return "<FiniteGroupTable {} elements{}>".format(
            len(self), "" if self.complete else " (partial)"
        )


def bfs_closure(generators, cap=DEFAULT_CAP, ring=None, n=None):
    """
    The subgroup generated by GroupElements over a finite ring

    With the cap reached the table is returned with complete = False.
    """
    generators = list(generators)
    if generators:
        ring, n = generators[0].owner, generators[0].n
    if ring is None or n is None:
        raise ValueError("An empty generating set needs a ring and a size")

    tables = tables_for(ring)
    moves = [(None, tables.encode(g.value)) for g in generators]
    table = FiniteGroupTable(tables, n, generators, moves, cap=cap)
    logger.debug("Closure of %d generators: %r", len(generators), table)
    return table


def normal_closure(seeds, ambient, cap=None):
    """
    Smallest subgroup containing `seeds` that is normalised by the
    generators of `ambient`

    :raises CapExceededError: when the ambient table is not complete
    """
    if not ambient.complete:
        raise CapExceededError("Normal closure needs a complete ambient table")

    seeds = list(seeds)
    for s in seeds:
        if s.value not in ambient:
            raise ValueError("Seed {} is not in the ambient group".format(s))

    tables = ambient.tables
    moves = [(None, tables.encode(s.value)) for s in seeds]
    for g in ambient.generators:
        moves.append((tables.encode(g.value), tables.encode(g.inverse)))

    table = FiniteGroupTable(
        tables, ambient.n, seeds, moves, cap=cap or ambient.cap
    )
    if not table.complete:
        raise CapExceededError("Normal closure exceeded {} elements".format(table.cap))
    return table


def _distinct(elements):
    acc = []
    seen = set()
    for g in elements:
        if g.value not in seen:
            seen.add(g.value)
            acc.append(g)
    return acc


def verify_perfect(table):
    """Whether the commutators of generator pairs normally generate the table"""
    seeds = [commutator(a, b) for a, b in itertools.combinations(table.generators, 2)]
    seeds = [s for s in _distinct(seeds) if not s.is_identity()]
    derived = len(normal_closure(seeds, table)) if seeds else 1
    logger.debug("Derived subgroup has %d of %d elements", derived, len(table))
    return derived == len(table)


def nilpotency_class(table, limit=12):
    """
    Length of the lower central series down to the identity, or None if it
    stalls above it (or runs past `limit` steps)
    """
    if len(table) == 1:
        return 0

    gens = table.generators
    seeds = list(gens)
    previous = len(table)
    for k in range(1, limit + 1):
        seeds = _distinct(commutator(s, x) for s in seeds for x in gens)
        seeds = [s for s in seeds if not s.is_identity()]
        if not seeds:
            return k

        size = len(normal_closure(seeds, table))
        if size == previous:
            return None
        previous = size

    return None


def elementary_generators(ring, n):
    """e_ij(r) for r in a generating set of (R, +)"""
    return [
        e(i, j, r, n)
        for i, j in itertools.permutations(range(1, n + 1), 2)
        for r in ring.additive_generators()
    ]


def unit_pairs(ring):
    """(u, u^-1) for every unit"""
    acc = []
    elements = ring.elements()
    for u in units_of(ring):
        for v in elements:
            if u * v == ring.one and v * u == ring.one:
                acc.append((u, v))
                break
    return acc


def gl_generators(ring, n):
    """Elementary generators together with diag(u, 1, ..., 1) for units u"""
    acc = elementary_generators(ring, n)
    for u, v in unit_pairs(ring):
        if u == ring.one:
            continue
        acc.append(
            GroupElement(
                Matrix.diagonal(ring, [u] + [1] * (n - 1)),
                Matrix.diagonal(ring, [v] + [1] * (n - 1)),
                check=False,
            )
        )
    return acc


def gl_order(m, n):
    """|GL_n(Z/m)| from the prime factorisation of m"""
    acc = 1
    for p, k in factorint(m).items():
        acc *= p ** ((k - 1) * n * n)
        for i in range(n):
            acc *= p**n - p**i
    return acc


def two_sided_ideal(ring, gens):
    """The two-sided ideal of a finite ring generated by `gens`"""
    elements = ring.elements()
    spanning = {a * g * b for g in gens for a in elements for b in elements}
    acc = {ring.zero}
    frontier = [ring.zero]
    while frontier:
        next_frontier = []
        for x in frontier:
            for g in spanning:
                y = x + g
                if y not in acc:
                    acc.add(y)
                    next_frontier.append(y)
        frontier = next_frontier
    return sorted(acc, key=lambda x: elements.index(x))


def relative_elementary(ring, n, ideal, ambient=None, cap=DEFAULT_CAP):
    """
    E_n(R, I): the normal closure of {e_ij(x) : x in I} in E_n(R)

    :param ideal: the elements of I
    """
    ambient = ambient or bfs_closure(elementary_generators(ring, n), cap=cap)
    seeds = [
        e(i, j, x, n)
        for i, j in itertools.permutations(range(1, n + 1), 2)
        for x in ideal
        if not x.is_zero
    ]
    if not seeds:
        return bfs_closure([], ring=ring, n=n)
    return normal_closure(seeds, ambient)


def check_normal_theorem(ring, n, cap=DEFAULT_CAP, report=None):
    """
    Every A != +-I in <A_{i,i+1}> normally generates a subgroup of E_n(R)
    containing E_n(R, 2R)
    """
    report = report or Report("normal-closure")
    ambient = bfs_closure(elementary_generators(ring, n), cap=cap)
    if not ambient.complete:
        report.partial("normal_theorem", detail={"elementary": len(ambient)})
        return report

    relative = relative_elementary(
        ring, n, two_sided_ideal(ring, [ring.from_int(2)]), ambient=ambient
    )

    family = bfs_closure(
        [a_diag(i, i + 1, n, ring) for i in range(1, n)], ring=ring, n=n
    )
    identity = Matrix.identity(ring, n)
    tested = 0
    for A in family.matrices():
        if A == identity or A == -identity:
            continue
        tested += 1
        closure = normal_closure([GroupElement(A, A, check=False)], ambient)
        report.check(
            "normal_theorem[{}]".format(tested),
            relative.is_subset_of(closure),
            {"A": A, "closure": len(closure), "relative": len(relative)},
            {"A": A, "closure": len(closure), "relative": len(relative)},
        )

    if not tested:
        report.note("no noncentral A over {}".format(ring.describe()))
    return report


class UnimodularVector(object):
    """A right unimodular vector together with b such that sum a_i b_i = 1"""

    def __init__(self, entries, witness):
        self.entries = tuple(entries)
        self.witness = tuple(witness)

    @classmethod
    def certify(cls, entries, ring):
        witness = is_unimodular(entries, ring)
        if witness is None:
            raise ValueError("{} is not right unimodular".format(list(entries)))
        return cls(entries, witness)

    def check(self):
        acc = self.entries[0].owner.zero
        for a, b in zip(self.entries, self.witness):
            acc = acc + a * b
        return acc == 1

    def __repr__(self):
        return "UnimodularVector({})".format(", ".join(str(a) for a in self.entries))


def _right_span(tables, vec):
    """{sum a_i b_i} over all b, with one witness b per reachable element"""
    reach = {tables.zero: ()}
    for a in vec:
        nxt = {}
        for s, wit in reach.items():
            for b in range(tables.size):
                t = int(tables.add[s, tables.mul[a, b]])
                if t not in nxt:
                    nxt[t] = wit + (b,)
        reach = nxt
    return reach


def is_unimodular(v, ring):
    """A witness (b_1, ..., b_n) with sum a_i b_i = 1, or None"""
    tables = tables_for(ring)
    vec = [tables.index[a if not isinstance(a, int) else ring.from_int(a)] for a in v]
    witness = _right_span(tables, vec).get(tables.one)
    if witness is None:
        return None
    return tuple(tables.elements[b] for b in witness)


class _UnimodularMemo(object):
    def __init__(self, tables):
        self.tables = tables
        self._memo = {}

    def __call__(self, vec):
        vec = tuple(vec)
        ok = self._memo.get(vec)
        if ok is None:
            ok = self.tables.one in _right_span(self.tables, vec)
            self._memo[vec] = ok
        return ok


def check_sr(ring, m):
    """
    sr_m: every unimodular (a_1, ..., a_{m+1}) shortens to a unimodular
    (a_1 + a_{m+1} b_1, ..., a_m + a_{m+1} b_m)

    :returns: (holds, counterexample or None)
    """
    if m < 1:
        raise ValueError("Stable range conditions start at m = 1")

    tables = tables_for(ring)
    unimodular = _UnimodularMemo(tables)
    N = tables.size

    for vec in itertools.product(range(N), repeat=m + 1):
        if not unimodular(vec):
            continue

        last = vec[-1]
        found = False
        for bs in itertools.product(range(N), repeat=m):
            short = [
                int(tables.add[a, tables.mul[last, b]]) for a, b in zip(vec[:-1], bs)
            ]
            if unimodular(short):
                found = True
                break

        if not found:
            counterexample = [tables.elements[a] for a in vec]
            logger.debug(
                "sr_%d fails over %s at %s", m, ring.describe(), counterexample
            )
            return False, counterexample

    return True, None


def stable_range(ring, max_m=4):
    """Least m <= max_m with sr_m, or None"""
    for m in range(1, max_m + 1):
        if check_sr(ring, m)[0]:
            return m
    return None


def lambda_matrices(F, size):
    """Every matrix of Lambda_size as index arrays"""
    ring = F.base
    tables = tables_for(ring)
    lam = [tables.index[x] for x in F.lambda_elements()]
    upper = [(i, j) for i in range(size) for j in range(i + 1, size)]

    count = len(lam) ** size * tables.size ** len(upper)
    if count > LAMBDA_MATRIX_LIMIT:
        raise FiniteRingError(
            "Lambda_{} over {} has {} matrices; too many to enumerate".format(
                size, ring.describe(), count
            )
        )

    eps = F.eps
    acc = []
    for diag in itertools.product(lam, repeat=size):
        for off in itertools.product(range(tables.size), repeat=len(upper)):
            gamma = np.zeros((size, size), dtype=np.int64)
            for i, d in enumerate(diag):
                gamma[i, i] = d
            for (i, j), x in zip(upper, off):
                a = tables.elements[x]
                gamma[i, j] = x
                gamma[j, i] = tables.index[-(eps.star() * a.star())]
            acc.append(gamma)

    acc = [g for g in acc if F.lambda_n_contains(tables.decode(g))]
    return acc


def check_lambda_sr(F, m):
    """
    Lambda sr_m: sr_m holds, and every unimodular (a, b) in R^2(m+1) has a
    gamma in Lambda_{m+1} making a + b gamma unimodular

    :returns: (holds, counterexample or None)
    """
    ok, counterexample = check_sr(F.base, m)
    if not ok:
        return False, {"sr": m, "vector": counterexample}

    tables = tables_for(F.base)
    unimodular = _UnimodularMemo(tables)
    gammas = lambda_matrices(F, m + 1)
    size = m + 1

    for vec in itertools.product(range(tables.size), repeat=2 * size):
        if not unimodular(vec):
            continue

        a = np.array(vec[:size], dtype=np.int64)
        b = np.array(vec[size:], dtype=np.int64)
        found = False
        for gamma in gammas:
            bg = tables.matmul(b[None, :], gamma)[0]
            if unimodular(int(x) for x in tables.add[a, bg]):
                found = True
                break

        if not found:
            return False, {"vector": [tables.elements[x] for x in vec]}

    return True, None


def lambda_stable_range(F, max_m=2):
    """Least m <= max_m with Lambda sr_m, or None"""
    for m in range(1, max_m + 1):
        if check_lambda_sr(F, m)[0]:
            return m
    return None


def _is_commutative(ring):
    elements = ring.elements()
    return all(x * y == y * x for x, y in itertools.combinations(elements, 2))


def _gl_and_e(ring, n, cap):
    E = bfs_closure(elementary_generators(ring, n), cap=cap, ring=ring, n=n)
    GL = bfs_closure(gl_generators(ring, n), cap=cap, ring=ring, n=n)
    return GL, E


def k1_stabilization_check(ring, n, cap=DEFAULT_CAP, report=None):
    """
    [GL_n(R) : E_n(R)] against |R^*| at n and n + 1, with E_n normal in GL_n
    and, over Z/m, |GL_n| against its order formula
    """
    report = report or Report("k1")
    if not ring.is_finite or not _is_commutative(ring):
        raise FiniteRingError(
            "K_1 probing needs a finite commutative ring, not {}".format(
                ring.describe()
            )
        )

    units = units_of(ring)
    sr = stable_range(ring)
    if sr is None or n < sr + 1:
        report.partial("k1.precondition", detail={"sr": sr, "n": n})
    else:
        report.check("k1.precondition", True, detail={"sr": sr, "n": n})

    indices = {}
    for size in (n, n + 1):
        GL, E = _gl_and_e(ring, size, cap)
        if not (GL.complete and E.complete):
            report.partial(
                "k1.index[{}]".format(size), detail={"gl": len(GL), "e": len(E)}
            )
            continue

        index, remainder = divmod(len(GL), len(E))
        indices[size] = index
        report.check(
            "k1.index[{}]".format(size),
            remainder == 0 and index == len(units),
            {"gl": len(GL), "e": len(E), "units": len(units)},
            {"gl": len(GL), "e": len(E), "index": index},
        )

        witness = None
        for g in GL.generators:
            for x in E.generators:
                conj = g * x * g.inv()
                if conj.value not in E:
                    witness = {"g": g.value, "x": x.value}
                    break
            if witness:
                break
        report.check("k1.normal[{}]".format(size), witness is None, witness)

        if isinstance(ring, ModularIntegers):
            expected = gl_order(ring.m, size)
            detail = {"bfs": len(GL), "formula": expected}
            report.check(
                "k1.order[{}]".format(size), len(GL) == expected, detail, detail
            )

    if len(indices) == 2:
        detail = {"indices": [indices[n], indices[n + 1]]}
        report.check("k1.stable", indices[n] == indices[n + 1], detail, detail)
    else:
        report.partial("k1.stable", detail={"indices": sorted(indices.items())})
    return report


def eu_generators(F, n):
    """
    Generators of EU_2n: long roots rho_ij(r) for r generating (R, +) and
    short roots rho_{i,si}(l) for every admissible l
    """
    ring = F.base
    acc = []
    for i, j in long_pairs(n):
        for r in ring.additive_generators():
            acc.append(UnitaryGen(i, j, r, n, F).matrix())

    for i, j in short_pairs(n):
        allowed = F.lambda_star_elements() if i <= n else F.lambda_elements()
        for a in allowed:
            if not a.is_zero:
                acc.append(UnitaryGen(i, j, a, n, F).matrix())
    return _distinct(acc)


def _unitary_mask(tables, F, X):
    """Vectorised unitary membership for a batch of 2n x 2n index arrays"""
    n = X.shape[-1] // 2
    eps = tables.index[F.eps]
    lam = np.zeros(tables.size, dtype=bool)
    for x in F.lambda_elements():
        lam[tables.index[x]] = True

    alpha, beta = X[:, :n, :n], X[:, :n, n:]
    gamma, delta = X[:, n:, :n], X[:, n:, n:]

    lhs = tables.add[
        tables.matmul(tables.star_transpose(alpha), delta),
        tables.matmul(tables.mul[tables.star_transpose(gamma), eps], beta),
    ]
    ok = (lhs == tables.identity_array(n)[None]).all(axis=(1, 2))

    for Y in (
        tables.matmul(tables.star_transpose(alpha), gamma),
        tables.matmul(tables.star_transpose(beta), delta),
    ):
        for i in range(n):
            ok &= lam[Y[:, i, i]]
            for j in range(n):
                if i != j:
                    dual = tables.neg[tables.mul[tables.star[Y[:, j, i]], eps]]
                    ok &= Y[:, i, j] == dual
    return ok


def _unitary_batches(F, n):
    """The unitary matrices of the whole 2n x 2n space, one chunk at a time"""
    tables = tables_for(F.base)
    N = tables.size
    cells = 4 * n * n
    total = N**cells
    if total > FULL_SPACE_LIMIT:
        raise CapExceededError(
            "{} matrices of size {} is too many to filter".format(total, 2 * n)
        )

    weights = np.array([N**k for k in range(cells)], dtype=np.int64)
    for lo in range(0, total, CHUNK):
        k = np.arange(lo, min(lo + CHUNK, total), dtype=np.int64)
        X = ((k[:, None] // weights[None, :]) % N).reshape(-1, 2 * n, 2 * n)
        yield X[_unitary_mask(tables, F, X)]


def count_unitary(F, n):
    """|U_2n(R, Lambda)| by filtering the whole matrix space"""
    return sum(len(X) for X in _unitary_batches(F, n))


def _outside_coset(tables, batch, g, EU):
    moved = tables.matmul(tables.encode(g.inverse)[None], batch)
    return batch[~EU.contains_keys(tables.keys(moved))]


def _new_cosets(tables, F, batch, EU, reps, limit):
    """Add members of batch lying in cosets of EU not yet represented"""
    batch = batch[~EU.contains_keys(tables.keys(batch))]
    for r in reps:
        batch = _outside_coset(tables, batch, r, EU)
    while len(batch) and len(reps) < limit:
        g = unitary_inverse(tables.decode(batch[0]), F)
        reps.append(g)
        batch = _outside_coset(tables, batch, g, EU)


def count_unitary_cosets(F, n, EU, limit=PROBE_COSETS):
    """
    |U_2n(R, Lambda)| together with up to `limit` unitary matrices in
    distinct cosets of EU_2n other than EU_2n itself
    """
    tables = tables_for(F.base)
    count, reps = 0, []
    for X in _unitary_batches(F, n):
        count += len(X)
        _new_cosets(tables, F, X, EU, reps, limit)
    return count, reps


def random_unitary_probes(F, n, EU, seed=0, samples=PROBE_SAMPLES):
    """
    Unitary matrices outside EU_2n among uniformly random candidates, at
    most one per coset
    """
    tables = tables_for(F.base)
    rng = np.random.default_rng(seed)
    reps = []
    for lo in range(0, samples, CHUNK):
        size = min(CHUNK, samples - lo)
        X = rng.integers(0, tables.size, size=(size, 2 * n, 2 * n), dtype=np.int64)
        unitary = X[_unitary_mask(tables, F, X)]
        _new_cosets(tables, F, unitary, EU, reps, PROBE_COSETS)
    logger.debug("Random probing found %d new cosets", len(reps))
    return reps


def _hyperbolic_unit_probes(F, n):
    ring = F.base
    acc = []
    for u, v in unit_pairs(ring):
        if u == ring.one:
            continue
        A = GroupElement(
            Matrix.diagonal(ring, [u] + [1] * (n - 1)),
            Matrix.diagonal(ring, [v] + [1] * (n - 1)),
            check=False,
        )
        acc.append(hyperbolic_embed(A, F))
    return acc


def ku1_stabilization_probe(F, n, cap=DEFAULT_CAP, report=None, seed=0):
    """
    [U_2n : EU_2n] at n and n + 1. U_2n is counted exactly when the matrix
    space is small enough to filter. Otherwise the subgroup generated by
    EU_2n and probes stands in for it and the record is partial. The probes
    are hyperbolic units, stabilized coset representatives from the smaller
    size and random unitary candidates outside EU_2n.
    """
    report = report or Report("ku1")
    if not F.base.is_finite:
        raise FiniteRingError("KU_1 probing needs a finite form ring")

    try:
        lsr = lambda_stable_range(F)
    except FiniteRingError as e:
        logger.warning("Lambda-stable range not computed: %s", e)
        lsr = None

    if lsr is None or n < lsr + 1:
        report.partial("ku1.precondition", detail={"lambda_sr": lsr, "n": n})
    else:
        report.check("ku1.precondition", True, detail={"lambda_sr": lsr, "n": n})

    indices = {}
    exact = True
    reps = []
    for size in (n, n + 1):
        gens = eu_generators(F, size)
        EU = bfs_closure(gens, cap=cap, ring=F.base, n=2 * size)
        if not EU.complete:
            report.partial("ku1.index[{}]".format(size), detail={"eu": len(EU)})
            exact = False
            reps = []
            continue

        try:
            U, reps = count_unitary_cosets(F, size, EU)
            how = "full space"
        except (CapExceededError, FiniteRingError):
            probes = (
                _hyperbolic_unit_probes(F, size)
                + [stabilize(g, F) for g in reps]
                + random_unitary_probes(F, size, EU, seed=seed)
            )
            probe = bfs_closure(gens + probes, cap=cap, ring=F.base, n=2 * size)
            U = len(probe)
            how = "generated lower bound"
            exact = False
            reps = []

        index, remainder = divmod(U, len(EU))
        indices[size] = index
        detail = {"u": U, "eu": len(EU), "index": index, "u_from": how}
        if how == "full space":
            report.check("ku1.index[{}]".format(size), remainder == 0, detail, detail)
        else:
            report.partial("ku1.index[{}]".format(size), detail=detail)

    if len(indices) == 2 and exact:
        report.check(
            "ku1.stable",
            indices[n] == indices[n + 1],
            {"indices": [indices[n], indices[n + 1]]},
        )
    else:
        report.partial("ku1.stable", detail={"indices": sorted(indices.items())})
    return report


def nilpotent_witnesses(ring, n, F=None):
    """
    Generating sets of the nilpotent subgroups used to split the elementary
    groups: <e13, e32>, and with a form <rho12, rho13, rho_3,n+2,
    rho_2,n+2(Lambda*)> and <rho_n1, rho_n,n-1, rho_1,2n-1,
    rho_n-1,2n-1(Lambda*)>
    """
    acc = {
        "linear": [e(1, 3, r, 3) for r in ring.additive_generators()]
        + [e(3, 2, r, 3) for r in ring.additive_generators()]
    }
    if F is None:
        return acc

    def _long(i, j):
        return [UnitaryGen(i, j, r, n, F).matrix() for r in ring.additive_generators()]

    def _short(i):
        return [
            UnitaryGen(i, sigma(i, n), x, n, F).matrix()
            for x in F.lambda_star_elements()
            if not x.is_zero
        ]

    acc["unitary"] = (
        _long(1, 2) + _long(1, 3) + _long(3, n + 2) + _short(2)
    )
    acc["gamma"] = (
        _long(n, 1) + _long(n, n - 1) + _long(1, 2 * n - 1) + _short(n - 1)
    )
    return acc


def nilpotent_report(ring, n, F=None, cap=DEFAULT_CAP, report=None):
    report = report or Report("nilpotent")
    for name, gens in sorted(nilpotent_witnesses(ring, n, F).items()):
        table = bfs_closure(gens, cap=cap)
        if not table.complete:
            report.partial("nilpotent.{}".format(name), detail={"size": len(table)})
            continue
        c = nilpotency_class(table)
        report.check(
            "nilpotent.{}".format(name),
            c is not None,
            {"size": len(table)},
            {"size": len(table), "class": c},
        )
    return report


def closure_report(ring, n, cap=DEFAULT_CAP, report=None):
    """|E_n(R)| by BFS, cross-checked with |GL_n| when E_n = SL_n is known"""
    report = report or Report("closure")
    E = bfs_closure(elementary_generators(ring, n), cap=cap)
    if not E.complete:
        report.partial("closure.elementary", detail={"size": len(E)})
        return report

    detail = {"size": len(E)}
    if isinstance(ring, ModularIntegers):
        # E_n(Z/m) = SL_n(Z/m), of index |(Z/m)^*| in GL_n
        expected = gl_order(ring.m, n) // len(units_of(ring))
        detail["expected"] = expected
        report.check("closure.elementary", len(E) == expected, detail, detail)
    else:
        report.check("closure.elementary", True, detail=detail)

    identity = Matrix.identity(ring, n)
    report.check("closure.identity", identity in E)
    return report


def normal_generation_report(ring, n, cap=DEFAULT_CAP, report=None):
    """E_n(R) is the normal closure of e_12(1)"""
    report = report or Report("normal-closure")
    E = bfs_closure(elementary_generators(ring, n), cap=cap)
    if not E.complete:
        report.partial("normal_closure", detail={"size": len(E)})
        return report

    N = normal_closure([e(1, 2, 1, n, ring)], E)
    report.check(
        "normal_closure",
        len(N) == len(E),
        {"closure": len(N), "elementary": len(E)},
        {"closure": len(N), "elementary": len(E)},
    )
    return report


def perfect_report(ring, n, cap=DEFAULT_CAP, report=None):
    report = report or Report("perfect")
    E = bfs_closure(elementary_generators(ring, n), cap=cap)
    if not E.complete:
        report.partial("perfect", detail={"size": len(E)})
        return report
    report.check("perfect", verify_perfect(E), {"size": len(E)}, {"size": len(E)})
    return report


def sr_report(ring, m, report=None):
    """sr_m, together with sr_{m+1} which it must imply"""
    report = report or Report("sr")
    ok, counterexample = check_sr(ring, m)
    report.check("sr[{}]".format(m), ok, {"vector": counterexample})
    if ok:
        ok_next, counterexample = check_sr(ring, m + 1)
        report.check(
            "sr.monotone[{}]".format(m + 1), ok_next, {"vector": counterexample}
        )
    return report


def lambda_sr_report(F, m, report=None):
    report = report or Report("lambda-sr")
    ok, counterexample = check_lambda_sr(F, m)
    report.check("lambda_sr[{}]".format(m), ok, counterexample)
    return report
