import itertools
import logging
import random

from elementary_groups.elementary import GeneratorIndexError, e
from elementary_groups.exactmat import (
    GroupElement,
    Matrix,
    commutator,
    mulclose,
    product,
)
from elementary_groups.formring import MAXIMAL
from elementary_groups.reports import PASS, Report, check_identity
from elementary_groups.rings import ensure_generators, parameter_tuples

logger = logging.getLogger(__name__)

SHORT = "short"
LONG = "long"


class LambdaViolationError(ValueError):
    def __init__(self, msg):
        super(LambdaViolationError, self).__init__(msg)


class MembershipError(ValueError):
    def __init__(self, msg):
        super(MembershipError, self).__init__(msg)


def sigma(k, n):
    """The pairing k <-> k + n of indices 1..2n"""
    if not 1 <= k <= 2 * n:
        raise GeneratorIndexError("Index {} is outside 1..{}".format(k, 2 * n))
    return k + n if k <= n else k - n


def _side(k, n):
    return "lo" if k <= n else "hi"


def prime(a, i, j, n, eps):
    """
    a' for the long root generator rho_ij(a):
    a* (i, j <= n), eps* a* (i <= n < j), a* eps (j <= n < i) and
    eps* a* eps (n < i, j)
    """
    a_star = a.star()
    eps_star = eps.star()
    if i <= n and j <= n:
        return a_star
    if i <= n < j:
        return eps_star * a_star
    if j <= n < i:
        return a_star * eps
    return eps_star * a_star * eps


class UnitaryGen(object):
    """
    An elementary unitary matrix rho_ij(a) of size 2n, indices from 1.

    Short root generators (j = sigma i) need a* in Lambda for i <= n and a in
    Lambda for i > n; this is enforced here and nowhere else.
    """

    def __init__(self, i, j, a, n, F):
        if i == j or not (1 <= i <= 2 * n and 1 <= j <= 2 * n):
            raise GeneratorIndexError(
                "rho_{},{} is not a unitary generator of size {}".format(i, j, 2 * n)
            )

        self.i = i
        self.j = j
        self.a = a
        self.n = n
        self.F = F
        self.kind = SHORT if j == sigma(i, n) else LONG

        if self.kind == SHORT:
            ok = F.lambda_star_contains(a) if i <= n else F.lambda_contains(a)
            if not ok:
                raise LambdaViolationError(
                    "rho_{},{}({}) needs {} in Lambda".format(
                        i, j, a, "a*" if i <= n else "a"
                    )
                )

    @property
    def a_prime(self):
        if self.kind == SHORT:
            return None
        return prime(self.a, self.i, self.j, self.n, self.F.eps)

    def _value(self, a):
        owner = a.owner
        size = 2 * self.n
        M = Matrix.identity(owner, size) + Matrix.unit(
            owner, size, self.i - 1, self.j - 1, a
        )
        if self.kind == LONG:
            a_prime = prime(a, self.i, self.j, self.n, self.F.eps)
            M = M - Matrix.unit(
                owner,
                size,
                sigma(self.j, self.n) - 1,
                sigma(self.i, self.n) - 1,
                a_prime,
            )
        return M

    def matrix(self):
        return GroupElement(self._value(self.a), self._value(-self.a), check=False)

    def __repr__(self):
        return "rho{},{}({})".format(self.i, self.j, self.a)


def rho(i, j, a, F, n):
    """
    rho_ij(a) as a GroupElement with inverse rho_ij(-a)

    :param a: a RingElement, or an int coerced through the base of F
    """
    if isinstance(a, int):
        a = F.base.from_int(a)
    return UnitaryGen(i, j, a, n, F).matrix()


def long_pairs(n):
    return [
        (i, j)
        for i, j in itertools.permutations(range(1, 2 * n + 1), 2)
        if j != sigma(i, n)
    ]


def short_pairs(n):
    return [(i, sigma(i, n)) for i in range(1, 2 * n + 1)]


class UnitaryBlockView(object):
    """The n x n quadrants (alpha beta; gamma delta) of a 2n x 2n matrix"""

    def __init__(self, M):
        if not M.is_square or M.rows % 2:
            raise ValueError("Need a square matrix of even size, got {}x{}".format(
                M.rows, M.cols
            ))
        n = M.rows // 2
        self.n = n
        self.alpha = M.block(0, n, 0, n)
        self.beta = M.block(0, n, n, 2 * n)
        self.gamma = M.block(n, 2 * n, 0, n)
        self.delta = M.block(n, 2 * n, n, 2 * n)

    def reassemble(self):
        return Matrix.from_blocks([[self.alpha, self.beta], [self.gamma, self.delta]])


def phi(F, n):
    """(0 I_n; eps I_n 0)"""
    owner = F.base
    identity = Matrix.identity(owner, n)
    zero = Matrix.zero(owner, n)
    return Matrix.from_blocks([[zero, identity], [identity.scale(F.eps), zero]])


def _as_matrix(M):
    return M.value if isinstance(M, GroupElement) else M


def unitary_membership(M, F):
    """alpha* delta + gamma* eps beta = I with alpha* gamma, beta* delta in Lambda_n"""
    M = _as_matrix(M)
    view = UnitaryBlockView(M)
    identity = Matrix.identity(F.base, view.n)

    hermitian = view.gamma.star().scale(F.eps, left=False)
    lhs = view.alpha.star() * view.delta + hermitian * view.beta
    if lhs != identity:
        return False

    return F.lambda_n_contains(view.alpha.star() * view.gamma) and F.lambda_n_contains(
        view.beta.star() * view.delta
    )


def preserves_phi(M, F):
    """M* phi M = phi"""
    M = _as_matrix(M)
    form = phi(F, M.rows // 2)
    return M.star() * form * M == form


def unitary_inverse(M, F):
    """
    Inverse from the block formula (eps* delta* eps, eps* beta*; gamma* eps, alpha*)

    :raises MembershipError: when M is not unitary
    """
    M = _as_matrix(M)
    if not unitary_membership(M, F):
        raise MembershipError("Matrix is not in U_2n: {}".format(M))

    view = UnitaryBlockView(M)
    eps, eps_star = F.eps, F.eps.star()
    inverse = Matrix.from_blocks(
        [
            [
                view.delta.star().scale(eps_star).scale(eps, left=False),
                view.beta.star().scale(eps_star),
            ],
            [view.gamma.star().scale(eps, left=False), view.alpha.star()],
        ]
    )
    return GroupElement(M, inverse)


def hyperbolic_embed(A, F):
    """diag(A, (A^-1)*) with inverse diag(A^-1, A*)"""
    owner = A.owner
    n = A.n
    zero = Matrix.zero(owner, n)
    value = Matrix.from_blocks([[A.value, zero], [zero, A.inverse.star()]])
    inverse = Matrix.from_blocks([[A.inverse, zero], [zero, A.value.star()]])
    return GroupElement(value, inverse, check=False)


def stabilize(M, F):
    """
    U_2n -> U_2(n+1): identity rows and columns inserted at positions n+1
    and 2n+2
    """
    if isinstance(M, GroupElement):
        return GroupElement(stabilize(M.value, F), stabilize(M.inverse, F), check=False)

    n = M.rows // 2
    owner = M.owner

    def _old(k):
        if k < n:
            return k
        if n < k < 2 * n + 1:
            return k - 1
        return None

    size = 2 * n + 2
    entries = []
    for i in range(size):
        for j in range(size):
            oi, oj = _old(i), _old(j)
            if oi is None or oj is None:
                entries.append(owner.one if i == j else owner.zero)
            else:
                entries.append(M[oi, oj])
    return Matrix(owner, size, size, entries)


def c_matrix(i, n, F):
    """
    C_i = rho_{i,n+i}(1) rho_{n+i,i}(-1) rho_{i,n+i}(1) rho_{n+i,i}(-1)

    :raises LambdaViolationError: when 1 is not in Lambda
    """
    return product(
        [
            rho(i, n + i, 1, F, n),
            rho(n + i, i, -1, F, n),
            rho(i, n + i, 1, F, n),
            rho(n + i, i, -1, F, n),
        ]
    )


def _guarded(evaluate):
    """Turn a Lambda violation on one side into a recorded mismatch"""

    def _inner(*p):
        try:
            return evaluate(*p)
        except LambdaViolationError as e:
            return "Lambda violation: {}".format(e), "a well-defined generator"

    return _inner


def _with_generators(F, count):
    ring = ensure_generators(F.base, count)
    return F if ring is F.base else F.rebase(ring)


def constrained_pairs(F, star, trials=25, rng=None):
    """
    (a, b) pairs with a free and b in Lambda (or Lambda* when `star`):
    exhaustive for finite bases
    """
    ring = F.base
    if ring.is_finite:
        constrained = F.lambda_star_elements() if star else F.lambda_elements()
        return list(itertools.product(ring.elements(), constrained))

    acc = []
    for a, y in parameter_tuples(ring, 2, trials=trials, rng=rng):
        for b in F.lambda_parameters([y], star=star):
            acc.append((a, b))
    return acc


def _constrained_singles(F, star, trials=25, rng=None):
    ring = F.base
    if ring.is_finite:
        constrained = F.lambda_star_elements() if star else F.lambda_elements()
        return [(b,) for b in constrained]

    samples = [p[0] for p in parameter_tuples(ring, 1, trials=trials, rng=rng)]
    return [(b,) for b in F.lambda_parameters(samples, star=star)]


def _short_constraint_star(i, n):
    """Short generators at row i <= n constrain a*, the others a"""
    return i <= n


def verify_ucom(n, F, trials=25, rng=None, report=None):
    """
    The four families of unitary commutator formulas, over every admissible
    index tuple. Records are tagged with the side (lo: <= n, hi: > n) of
    each index so every case of a' and c shows up separately.
    """
    report = report or Report("ucom")
    F = _with_generators(F, 2)
    ring = F.base
    eps, eps_star = F.eps, F.eps.star()
    identity = GroupElement.identity(ring, 2 * n)
    free_pairs = parameter_tuples(ring, 2, trials=trials, rng=rng)

    for i, j in long_pairs(n):
        check_identity(
            report,
            "ucom.1.long.{}_{}[{},{}]".format(_side(i, n), _side(j, n), i, j),
            free_pairs,
            lambda a, b: (
                rho(i, j, a, F, n) * rho(i, j, b, F, n),
                rho(i, j, a + b, F, n),
            ),
            names=("a", "b"),
        )

    for i, j in short_pairs(n):
        star = _short_constraint_star(i, n)
        singles = [p[0] for p in _constrained_singles(F, star, trials=trials, rng=rng)]
        check_identity(
            report,
            "ucom.1.short.{}[{},{}]".format(_side(i, n), i, j),
            list(itertools.product(singles, repeat=2)),
            _guarded(
                lambda a, b: (
                    rho(i, j, a, F, n) * rho(i, j, b, F, n),
                    rho(i, j, a + b, F, n),
                )
            ),
            names=("a", "b"),
        )

    for i, j, k in itertools.permutations(range(1, 2 * n + 1), 3):
        indices = {i, j, k, sigma(i, n), sigma(j, n), sigma(k, n)}
        if len(indices) != 6:
            continue
        check_identity(
            report,
            "ucom.2[{},{},{}]".format(i, j, k),
            free_pairs,
            lambda a, b: (
                commutator(rho(i, j, a, F, n), rho(j, k, b, F, n)),
                rho(i, k, a * b, F, n),
            ),
            names=("a", "b"),
        )

    for i, j in long_pairs(n):
        si = sigma(i, n)

        def _family3(a, b):
            if i <= n:
                c = eps_star * b.star() * a.star()
            else:
                c = b.star() * a.star() * eps
            lhs = commutator(rho(i, j, a, F, n), rho(j, si, b, F, n))
            return lhs, rho(i, si, a * b - c, F, n)

        check_identity(
            report,
            "ucom.3.{}[{},{}]".format(_side(i, n), i, j),
            free_pairs,
            _guarded(_family3),
            names=("a", "b"),
        )

    for i, j in long_pairs(n):
        si, sj = sigma(i, n), sigma(j, n)
        star = _short_constraint_star(j, n)

        def _family4(a, b):
            if i <= n and j <= n:
                c = a * b * a.star()
            elif j <= n < i:
                c = a * b * a.star() * eps
            elif i <= n < j:
                c = -(a * b.star() * a.star())
            else:
                c = -(a * b.star() * a.star() * eps)
            lhs = commutator(rho(i, j, a, F, n), rho(j, sj, b, F, n))
            return lhs, rho(i, sj, a * b, F, n) * rho(i, si, c, F, n)

        check_identity(
            report,
            "ucom.4.{}_{}[{},{}]".format(_side(i, n), _side(j, n), i, j),
            constrained_pairs(F, star, trials=trials, rng=rng),
            _guarded(_family4),
            names=("a", "b"),
        )

    report.check(
        "ucom.1.zero",
        all(rho(i, j, 0, F, n) == identity for i, j in long_pairs(n)),
    )
    logger.debug("ucom over %s, n=%d: %s", F.describe(), n, report.status)
    return report


def _generator_samples(F, n, trials=25, rng=None):
    """Every generator kind with sampled (finite: exhaustive) parameters"""
    ring = F.base
    acc = []
    singles = [p[0] for p in parameter_tuples(ring, 1, trials=trials, rng=rng)]
    for i, j in long_pairs(n):
        acc.extend(UnitaryGen(i, j, a, n, F) for a in singles)
    for i, j in short_pairs(n):
        star = _short_constraint_star(i, n)
        for (a,) in _constrained_singles(F, star, trials=trials, rng=rng):
            acc.append(UnitaryGen(i, j, a, n, F))
    return acc


def random_unitary_product(gens, length, rng):
    """Product of `length` generators drawn with `rng`"""
    return product([rng.choice(gens).matrix() for _ in range(length)])


def membership_report(n, F, products=100, length=5, trials=25, rng=None, report=None):
    """
    Generators lie in U_2n, membership agrees with A* phi A = phi for the
    maximal form parameter, and the block inverse formula holds on random
    products
    """
    report = report or Report("membership")
    F = _with_generators(F, 1)
    rng = rng or random.Random(0)
    gens = _generator_samples(F, n, trials=trials, rng=rng)

    witness = None
    for g in gens:
        if not unitary_membership(g.matrix(), F):
            witness = {"generator": repr(g)}
            break
    report.check("membership.generator", witness is None, witness, {"cases": len(gens)})

    if F.strategy == MAXIMAL:
        witness = None
        for g in gens:
            M = g.matrix().value
            if unitary_membership(M, F) != preserves_phi(M, F):
                witness = {"generator": repr(g)}
                break
        report.check("membership.phi", witness is None, witness)

    witness = None
    for _ in range(products):
        M = random_unitary_product(gens, length, rng)
        try:
            G = unitary_inverse(M.value, F)
        except (MembershipError, ValueError) as e:
            witness = {"matrix": M.value, "error": str(e)}
            break
        if G.inverse != M.inverse:
            witness = {"matrix": M.value, "formula": G.inverse}
            break
    report.check("membership.inverse", witness is None, witness, {"cases": products})
    return report


def check_duality(n, F, trials=25, rng=None, report=None):
    """
    rho_ij(a) = rho_{sj,si}(-a') for long generators, and
    rho_{i,2n}(r) = rho_{n,n+i}(-eps* r*) for i < n
    """
    report = report or Report("duality")
    F = _with_generators(F, 1)
    ring = F.base
    singles = parameter_tuples(ring, 1, trials=trials, rng=rng)

    for i, j in long_pairs(n):
        si, sj = sigma(i, n), sigma(j, n)
        check_identity(
            report,
            "duality.long.{}_{}[{},{}]".format(_side(i, n), _side(j, n), i, j),
            singles,
            lambda a: (
                rho(i, j, a, F, n),
                rho(sj, si, -prime(a, i, j, n, F.eps), F, n),
            ),
            names=("a",),
        )

    for i in range(1, n):
        check_identity(
            report,
            "duality.corner[{}]".format(i),
            singles,
            lambda r: (
                rho(i, 2 * n, r, F, n),
                rho(n, n + i, -(F.eps.star() * r.star()), F, n),
            ),
            names=("r",),
        )
    return report


def fuu_unitary_sides(r, F, n):
    """
    rho_1,n+1(r), rho_1,n+2(-r)[rho_12(1), rho_2,n+2(r)] and
    [rho_13(1), rho_3,n+2(-r)][rho_12(1), rho_2,n+2(r)]
    """
    inner = commutator(rho(1, 2, 1, F, n), rho(2, n + 2, r, F, n))
    return (
        rho(1, n + 1, r, F, n),
        rho(1, n + 2, -r, F, n) * inner,
        commutator(rho(1, 3, 1, F, n), rho(3, n + 2, -r, F, n)) * inner,
    )


def fuu_unitary_report(n, F, trials=25, rng=None, report=None):
    report = report or Report("fuu-unitary")
    F = _with_generators(F, 1)
    params = _constrained_singles(F, True, trials=trials, rng=rng)

    def _first(r):
        target, first, _ = fuu_unitary_sides(r, F, n)
        return first, target

    def _second(r):
        target, _, second = fuu_unitary_sides(r, F, n)
        return second, target

    check_identity(report, "fuu_unitary.first", params, _guarded(_first), ("r",))
    check_identity(report, "fuu_unitary.second", params, _guarded(_second), ("r",))
    return report


def verify_fuu_unitary(n, F, trials=25, rng=None):
    return fuu_unitary_report(n, F, trials=trials, rng=rng).status == PASS


def gamma_chain_sides(r, x, F, n):
    """
    rho_{n,2n-1}(r) rho_{n,2n}(x),
    rho_{n,2n-1}(r-x) [rho_{n,n-1}(1), rho_{n-1,2n-1}(x)] and
    [rho_{n1}(r-x), rho_{1,2n-1}(1)] [rho_{n,n-1}(1), rho_{n-1,2n-1}(x)]
    """
    inner = commutator(rho(n, n - 1, 1, F, n), rho(n - 1, 2 * n - 1, x, F, n))
    return (
        rho(n, 2 * n - 1, r, F, n) * rho(n, 2 * n, x, F, n),
        rho(n, 2 * n - 1, r - x, F, n) * inner,
        commutator(rho(n, 1, r - x, F, n), rho(1, 2 * n - 1, 1, F, n)) * inner,
    )


def verify_gamma_identities(n, F, trials=25, rng=None, report=None):
    """
    The chain for rho_{n,2n-1}(r) rho_{n,2n}(x) with x in Lambda*, the
    companion expressions of long generators as commutators, and the
    commutators showing the distinguished subgroups generate EU_2n
    """
    report = report or Report("gamma")
    F = _with_generators(F, 2)
    ring = F.base
    pairs = constrained_pairs(F, True, trials=trials, rng=rng)

    def _middle(r, x):
        target, middle, _ = gamma_chain_sides(r, x, F, n)
        return middle, target

    def _outer(r, x):
        target, _, outer = gamma_chain_sides(r, x, F, n)
        return outer, target

    check_identity(report, "gamma.chain.middle", pairs, _guarded(_middle), ("r", "x"))
    check_identity(report, "gamma.chain.outer", pairs, _guarded(_outer), ("r", "x"))

    singles = parameter_tuples(ring, 1, trials=trials, rng=rng)
    for i in range(1, n - 1):
        check_identity(
            report,
            "gamma.companion.corner[{}]".format(i),
            singles,
            lambda r: (
                commutator(rho(i, n - 1, 1, F, n), rho(n - 1, 2 * n, r, F, n)),
                rho(i, 2 * n, r, F, n),
            ),
            names=("r",),
        )

    for i in range(1, n):
        for j in range(n + 1, 2 * n):
            if j == i + n:
                continue
            check_identity(
                report,
                "gamma.companion.through_n[{},{}]".format(i, j),
                singles,
                lambda r: (
                    commutator(rho(i, n, 1, F, n), rho(n, j, r, F, n)),
                    rho(i, j, r, F, n),
                ),
                names=("r",),
            )

    for i in range(3, 2 * n + 1):
        if i in (n + 1, n + 2):
            continue
        check_identity(
            report,
            "gamma.generation.row[{}]".format(i),
            singles,
            lambda r: (
                commutator(rho(n + 1, 2, r, F, n), rho(2, i, 1, F, n)),
                rho(n + 1, i, r, F, n),
            ),
            names=("r",),
        )

    for i, j in long_pairs(n):
        if {i, j} & {1, n + 1}:
            continue
        check_identity(
            report,
            "gamma.generation.through_1[{},{}]".format(i, j),
            singles,
            lambda r: (
                commutator(rho(i, 1, 1, F, n), rho(1, j, r, F, n)),
                rho(i, j, r, F, n),
            ),
            names=("r",),
        )

    return report


def c_family_report(n, F, report=None):
    """C_i order 3 and the C_i generating an elementary abelian 3-group"""
    report = report or Report("c-order")
    try:
        family = [c_matrix(i, n, F) for i in range(1, n + 1)]
    except LambdaViolationError as e:
        report.check("c.order", False, {"error": str(e)})
        return report

    orders = [C.order(limit=6) for C in family]
    report.check("c.order", all(o == 3 for o in orders), {"orders": orders})

    size = len(mulclose(family, maxsize=3**n + 1))
    detail = {"size": size, "expected": 3**n}
    report.check("c.subgroup", size == 3**n, detail, detail)
    return report


def embed_report(n, F, trials=25, rng=None, report=None):
    """The hyperbolic embedding of E_n lands in U_2n and is multiplicative"""
    report = report or Report("embed")
    F = _with_generators(F, 2)
    ring = F.base
    pairs = parameter_tuples(ring, 2, trials=trials, rng=rng)
    index_pairs = list(itertools.permutations(range(1, n + 1), 2))

    witness = None
    for i, j in index_pairs:
        for r, _ in pairs:
            if not unitary_membership(hyperbolic_embed(e(i, j, r, n), F), F):
                witness = {"generator": "e{},{}({})".format(i, j, r)}
                break
        if witness:
            break
    report.check("embed.membership", witness is None, witness)

    for (i, j), (k, l) in itertools.combinations(index_pairs, 2):
        check_identity(
            report,
            "embed.homomorphism[{},{},{},{}]".format(i, j, k, l),
            pairs,
            lambda r, s: (
                hyperbolic_embed(e(i, j, r, n) * e(k, l, s, n), F),
                hyperbolic_embed(e(i, j, r, n), F) * hyperbolic_embed(e(k, l, s, n), F),
            ),
            names=("r", "s"),
        )

    witness = None
    for i, j in long_pairs(n):
        M = stabilize(rho(i, j, 1, F, n), F)
        if not unitary_membership(M, F):
            witness = {"generator": "rho{},{}(1)".format(i, j)}
            break
    report.check("stabilize", witness is None, witness)
    return report
