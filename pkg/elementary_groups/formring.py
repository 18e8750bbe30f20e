import logging
import random

from elementary_groups.reports import Report
from elementary_groups.rings import (
    DEFAULT_TRIALS,
    FreeRing,
    GroupRing,
    Integers,
    RingElement,
    UnsupportedRingOperation,
    parameter_tuples,
)

logger = logging.getLogger(__name__)

MINIMAL = "minimal"
MAXIMAL = "maximal"
GENERATED = "generated"


class UndecidableStrategyError(Exception):
    def __init__(self, msg):
        super(UndecidableStrategyError, self).__init__(msg)


class FormRing(object):
    """
    A form ring: a ring with involution, a symmetry sign epsilon and a form
    parameter Lambda with R_eps <= Lambda <= R^eps, where
    R_eps = {x - x*eps} and R^eps = {x : x = -x*eps}.

    Lambda is described by strategy rather than by listing it:

    - maximal: Lambda = R^eps
    - minimal: Lambda = R_eps
    - generated: the smallest form parameter containing the given elements;
      only decidable over finite bases
    """

    def __init__(self, base, eps=None, strategy=MAXIMAL, generators=()):
        if not base.has_involution:
            raise UnsupportedRingOperation(
                "{} has no involution, so it cannot carry a form".format(
                    base.describe()
                )
            )
        if strategy not in (MINIMAL, MAXIMAL, GENERATED):
            raise ValueError("Unknown form parameter strategy '{}'".format(strategy))

        if eps is None:
            eps = base.epsilon if isinstance(base, FreeRing) else -1
        if isinstance(eps, RingElement):
            self.eps = eps
        else:
            # Reduced by the base, so -1 and +1 coincide in characteristic 2
            self.eps = base.from_int(eps)

        self.base = base
        self.strategy = strategy
        self.generators = tuple(generators)
        self._finite_lambda = None

    @property
    def key(self):
        return (
            self.base.key,
            self.eps.payload,
            self.strategy,
            tuple(g.payload for g in self.generators),
        )

    def __eq__(self, other):
        return isinstance(other, FormRing) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def describe(self):
        return "({}, eps={}, {})".format(self.base.describe(), self.eps, self.strategy)

    def __repr__(self):
        return "<FormRing {}>".format(self.describe())

    def rebase(self, base):
        """The same form over a ring extending this one (e.g. more free letters)"""
        return FormRing(
            base,
            eps=base.element(self.eps.payload),
            strategy=self.strategy,
            generators=[base.element(g.payload) for g in self.generators],
        )

    def in_upper_bound(self, x):
        """x in R^eps"""
        return x == -(x.star() * self.eps)

    def r_eps(self, y):
        """The element y - y*eps of R_eps"""
        return y - y.star() * self.eps

    def lambda_contains(self, x):
        if self.strategy == MAXIMAL:
            return self.in_upper_bound(x)

        if self.base.is_finite:
            return x in self._lambda_set()

        if self.strategy == GENERATED:
            raise UndecidableStrategyError(
                "Generated form parameters are only decidable over finite rings, "
                "not {}".format(self.base.describe())
            )

        return self._minimal_over_integers(x)

    def _minimal_over_integers(self, x):
        """
        Membership in R_eps over rings with a Z-basis permuted by the
        involution (Z, free rings, integral group rings). On a pair of
        distinct starred partners the condition is exactly that of R^eps; on
        a self-dual basis element the coefficient must be even (eps = -1) or
        zero (eps = +1).
        """
        if not self.in_upper_bound(x):
            return False

        owner = self.base
        if self.eps == 1:
            multiple = 0
        elif self.eps == -1:
            multiple = 2
        else:
            raise UndecidableStrategyError(
                "Minimal form parameter needs eps = +1 or -1 over {}".format(
                    owner.describe()
                )
            )

        if isinstance(owner, Integers):
            terms = [(None, x.payload)]
        elif isinstance(owner, (FreeRing, GroupRing)):
            terms = [
                (b, c) for b, c in x.payload if owner.star(((b, 1),)) == ((b, 1),)
            ]
        else:
            raise UndecidableStrategyError(
                "Minimal form parameter is undecidable over {}".format(
                    owner.describe()
                )
            )

        for _, c in terms:
            if multiple == 0 and c != 0:
                return False
            if multiple and c % multiple:
                return False
        return True

    def _lambda_set(self):
        if self._finite_lambda is not None:
            return self._finite_lambda

        elements = self.base.elements()
        acc = {self.r_eps(y) for y in elements}
        if self.strategy == GENERATED:
            for g in self.generators:
                for r in elements:
                    acc.add(r.star() * g * r)

        acc = _additive_closure(acc, self.base.zero)
        logger.debug(
            "Form parameter over %s has %d elements", self.describe(), len(acc)
        )
        self._finite_lambda = frozenset(acc)
        return self._finite_lambda

    def lambda_star_contains(self, x):
        """x in Lambda*, i.e. x* in Lambda"""
        return self.lambda_contains(x.star())

    def lambda_elements(self):
        return [x for x in self.base.elements() if self.lambda_contains(x)]

    def lambda_star_elements(self):
        return [x for x in self.base.elements() if self.lambda_star_contains(x)]

    def lambda_parameters(self, samples, star=False):
        """
        Parameters for slots constrained to Lambda (or Lambda* when `star`).

        Finite bases give the whole of Lambda. Otherwise each sample y gives
        y - y*eps, which lies in every form parameter, and samples that are
        themselves members are kept as well.
        """
        if self.base.is_finite:
            return self.lambda_star_elements() if star else self.lambda_elements()

        contains = self.lambda_star_contains if star else self.lambda_contains
        acc = []
        for y in samples:
            x = self.r_eps(y)
            if star:
                x = x.star()
            for candidate in (x, y):
                if candidate not in acc and contains(candidate):
                    acc.append(candidate)
        return acc

    def lambda_n_contains(self, M):
        """Whether a square matrix lies in Lambda_n"""
        if M.rows != M.cols:
            raise ValueError("Lambda_n membership needs a square matrix")

        for i in range(M.rows):
            if not self.lambda_contains(M[i, i]):
                return False
            for j in range(i + 1, M.cols):
                if M[i, j] != -(M[j, i].star() * self.eps):
                    return False
        return True

    def to_json(self):
        if self.strategy == GENERATED:
            lam = {GENERATED: [str(g) for g in self.generators]}
        else:
            lam = self.strategy
        return {"base": self.base.to_json(), "epsilon": str(self.eps), "lambda": lam}


def _additive_closure(elements, zero):
    """Additive subgroup generated by a finite set in a finite ring"""
    acc = {zero}
    frontier = [zero]
    gens = [g for g in elements if not g.is_zero]
    while frontier:
        next_frontier = []
        for x in frontier:
            for g in gens:
                y = x + g
                if y not in acc:
                    acc.add(y)
                    next_frontier.append(y)
        frontier = next_frontier
    return acc


def form_samples(F, trials=DEFAULT_TRIALS, rng=None):
    """Elements to test the axioms on: every element when the base is finite"""
    if F.base.is_finite:
        return F.base.elements()

    rng = rng or random.Random(0)
    if isinstance(F.base, FreeRing):
        acc = list(F.base.generators().values())
        acc.extend(F.base.random_element(rng) for _ in range(trials))
        return acc

    return [t[0] for t in parameter_tuples(F.base, 1, trials=trials, rng=rng)]


def validate_form_ring(F, trials=DEFAULT_TRIALS, rng=None):
    """
    Check the form ring axioms on samples (exhaustively over finite bases)

    :returns: a Report with one record per axiom and a counterexample
        witness on failure
    """
    report = Report("form")
    samples = form_samples(F, trials=trials, rng=rng)
    eps = F.eps

    report.check("form.eps_squared", eps * eps == 1, {"eps": eps})

    witness = None
    for x in samples:
        if x.star().star() != eps * x * eps.star():
            witness = {"x": x}
            break
    report.check("form.double_star", witness is None, witness)

    witness = None
    for y in samples:
        if not F.lambda_contains(F.r_eps(y)):
            witness = {"y": y}
            break
    report.check("form.lower_bound", witness is None, witness)

    members = [x for x in samples if F.lambda_contains(x)]
    members.extend(F.r_eps(y) for y in samples[:8])

    witness = None
    for x in members:
        if not F.in_upper_bound(x):
            witness = {"x": x}
            break
    report.check("form.upper_bound", witness is None, witness)

    witness = None
    for a in members:
        for b in members:
            if not F.lambda_contains(a + b):
                witness = {"a": a, "b": b}
                break
        if witness:
            break
    report.check("form.additive", witness is None, witness)

    witness = None
    for r in samples:
        for lam in members:
            if not F.lambda_contains(r.star() * lam * r):
                witness = {"r": r, "lambda": lam}
                break
        if witness:
            break
    report.check("form.conjugation", witness is None, witness)

    report.note("finite generation of Lambda/R_eps over R: not checked")
    return report
