import itertools
import logging
import random

from sympy.combinatorics import Permutation

logger = logging.getLogger(__name__)

# Largest finite group accepted as the basis of a group ring
GROUP_ORDER_CAP = 10000

# Largest finite ring we are prepared to list element by element
ENUMERATION_CAP = 100000

SAMPLE_BOUND = 9
DEFAULT_TRIALS = 25


class DistinctRingError(ValueError):
    def __init__(self, left, right):
        super(DistinctRingError, self).__init__(
            "Elements belong to distinct rings: {} and {}".format(left, right)
        )


class UnsupportedRingOperation(Exception):
    def __init__(self, msg):
        super(UnsupportedRingOperation, self).__init__(msg)


class RingSpecError(ValueError):
    def __init__(self, msg):
        super(RingSpecError, self).__init__(msg)


class RingElement(object):
    """
    An exact element of a ring.

    The payload is always held in normal form by the owning RingSpec, so
    structural equality of payloads is ring equality. Plain integers are
    accepted on either side of the arithmetic operators and coerced through
    the owner.
    """

    __slots__ = ("owner", "payload")

    def __init__(self, owner, payload):
        self.owner = owner
        self.payload = payload

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.owner is not self.owner and other.owner != self.owner:
                raise DistinctRingError(self.owner, other.owner)
            return other

        if isinstance(other, int):
            return self.owner.from_int(other)

        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ring_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.owner, self.owner.neg(self.payload))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ring_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ring_add(other, -self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ring_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ring_mul(other, self)

    def star(self):
        return involution(self)

    @property
    def is_zero(self):
        return self.payload == self.owner.zero.payload

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.owner.from_int(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.owner == other.owner and self.payload == other.payload

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.owner.key, self.payload))

    def __str__(self):
        return self.owner.render(self.payload)

    def __repr__(self):
        return "RingElement({!r}, {})".format(self.owner, self)


def ring_add(a, b):
    """Normalised sum of two elements of the same ring"""
    if a.owner is not b.owner and a.owner != b.owner:
        raise DistinctRingError(a.owner, b.owner)
    return RingElement(a.owner, a.owner.add(a.payload, b.payload))


def ring_mul(a, b):
    """Normalised product; never assumed commutative"""
    if a.owner is not b.owner and a.owner != b.owner:
        raise DistinctRingError(a.owner, b.owner)
    return RingElement(a.owner, a.owner.mul(a.payload, b.payload))


def involution(a):
    """Apply the ring's anti-automorphism"""
    if not a.owner.has_involution:
        raise UnsupportedRingOperation(
            "{} carries no involution".format(a.owner.describe())
        )
    return RingElement(a.owner, a.owner.star(a.payload))


def units_of(ring):
    """
    All two-sided units of a finite ring, found by exhaustive pairing.

    :returns: tuple of units in the ring's canonical element order
    """
    if not ring.is_finite:
        raise UnsupportedRingOperation(
            "Cannot list the units of the infinite ring {}".format(ring.describe())
        )

    elements = ring.elements()
    one = ring.one
    units = []
    for u in elements:
        for v in elements:
            if u * v == one and v * u == one:
                units.append(u)
                break

    logger.debug("%s has %d units", ring.describe(), len(units))
    return tuple(units)


class RingSpec(object):
    """
    Base class for the closed catalogue of rings.

    Subclasses hold the arithmetic on normalised payloads; RingElement only
    ever sees the results.
    """

    kind = None
    characteristic = 0
    is_finite = False
    has_involution = True

    @property
    def key(self):
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, k):
        raise NotImplementedError

    def element(self, payload):
        return RingElement(self, payload)

    def add(self, p, q):
        raise NotImplementedError

    def neg(self, p):
        raise NotImplementedError

    def mul(self, p, q):
        raise NotImplementedError

    def star(self, p):
        return p

    def render(self, p):
        return str(p)

    def describe(self):
        return self.kind

    def size(self):
        raise UnsupportedRingOperation("{} is infinite".format(self.describe()))

    def elements(self):
        raise UnsupportedRingOperation(
            "Cannot enumerate the infinite ring {}".format(self.describe())
        )

    def additive_generators(self):
        """Elements generating (R, +); enough to generate E_n(R) with e_ij"""
        return [self.one]

    def generators(self):
        """Named generators available to the element literal syntax"""
        return {}

    def random_element(self, rng):
        return self.from_int(rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND))

    def parse(self, literal):
        from elementary_groups import tokeniser

        return tokeniser.parse_element(self, literal)

    def to_json(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, RingSpec) and self.key == other.key

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "<{}>".format(self.describe())


class Integers(RingSpec):
    kind = "integers"

    @property
    def key(self):
        return ("integers",)

    def from_int(self, k):
        return RingElement(self, int(k))

    def add(self, p, q):
        return p + q

    def neg(self, p):
        return -p

    def mul(self, p, q):
        return p * q

    def describe(self):
        return "Z"

    def to_json(self):
        return {"kind": "integers"}


class ModularIntegers(RingSpec):
    kind = "modular"
    is_finite = True

    def __init__(self, m):
        if not isinstance(m, int) or m < 2:
            raise RingSpecError("Modulus must be an integer >= 2, got {!r}".format(m))
        self.m = m
        self.characteristic = m

    @property
    def key(self):
        return ("modular", self.m)

    def from_int(self, k):
        return RingElement(self, int(k) % self.m)

    def add(self, p, q):
        return (p + q) % self.m

    def neg(self, p):
        return -p % self.m

    def mul(self, p, q):
        return p * q % self.m

    def describe(self):
        return "Z/{}".format(self.m)

    def size(self):
        return self.m

    def elements(self):
        return [RingElement(self, k) for k in range(self.m)]

    def to_json(self):
        return {"kind": "modular", "m": self.m}


def _canonical_terms(acc):
    """Drop zero coefficients and order terms so payloads compare structurally"""
    return tuple(sorted(((w, c) for w, c in acc.items() if c), key=_term_order))


def _term_order(term):
    word = term[0]
    if isinstance(word, tuple):
        return (len(word), word)
    return (0, word)


class FreeRing(RingSpec):
    """
    The free ring Z<x_1, ..., x_k>, optionally with the involution that
    sends x_i to a new letter x_i* and reverses words.

    Words are tuples of letter indices. With an involution, letter 2i is x_i
    and letter 2i + 1 is x_i*, so starring a letter is flipping its low bit.
    """

    kind = "free"

    def __init__(self, gens, involution=False, epsilon=-1):
        gens = tuple(gens)
        if not gens:
            raise RingSpecError("A free ring needs at least one generator")
        if len(set(gens)) != len(gens):
            raise RingSpecError(
                "Free generator names must be distinct: {}".format(gens)
            )
        for name in gens:
            if not name or not name.isidentifier():
                raise RingSpecError("Bad generator name {!r}".format(name))
        for a, b in itertools.combinations(gens, 2):
            if a.startswith(b) or b.startswith(a):
                raise RingSpecError(
                    "Generator names cannot be prefixes of each other: {}, {}".format(
                        a, b
                    )
                )
        if epsilon not in (1, -1):
            raise RingSpecError("Free ring epsilon must be +1 or -1")

        self.gens = gens
        self.involutive = bool(involution)
        self.has_involution = self.involutive
        self.epsilon = epsilon

    @property
    def key(self):
        return ("free", self.gens, self.involutive, self.epsilon)

    def letter(self, name, starred=False):
        k = self.gens.index(name)
        if not self.involutive:
            if starred:
                raise UnsupportedRingOperation(
                    "{} carries no involution".format(self.describe())
                )
            return k
        return 2 * k + (1 if starred else 0)

    def letter_name(self, letter):
        if not self.involutive:
            return self.gens[letter]
        return self.gens[letter // 2] + ("*" if letter % 2 else "")

    def word(self, *names):
        """Monomial for a sequence of letter names such as ('x', 'y*')"""
        letters = []
        for name in names:
            starred = name.endswith("*")
            letters.append(self.letter(name.rstrip("*"), starred))
        return RingElement(self, ((tuple(letters), 1),))

    def from_int(self, k):
        k = int(k)
        return RingElement(self, ((((), k),) if k else ()))

    def add(self, p, q):
        acc = dict(p)
        for w, c in q:
            acc[w] = acc.get(w, 0) + c
        return _canonical_terms(acc)

    def neg(self, p):
        return tuple((w, -c) for w, c in p)

    def mul(self, p, q):
        acc = {}
        for w1, c1 in p:
            for w2, c2 in q:
                w = w1 + w2
                acc[w] = acc.get(w, 0) + c1 * c2
        return _canonical_terms(acc)

    def star(self, p):
        acc = {}
        for w, c in p:
            acc[tuple(letter ^ 1 for letter in reversed(w))] = c
        return _canonical_terms(acc)

    def render(self, p):
        if not p:
            return "0"

        acc = ""
        for w, c in p:
            word = "".join(self.letter_name(letter) for letter in w)
            if not word:
                body = str(abs(c))
            elif abs(c) == 1:
                body = word
            else:
                body = "{}·{}".format(abs(c), word)

            if not acc:
                acc = "-" + body if c < 0 else body
            else:
                acc += " {} {}".format("-" if c < 0 else "+", body)

        return acc

    def describe(self):
        return "Z<{}>{}".format(
            ",".join(self.gens),
            "*" if self.involutive else "",
        )

    def generators(self):
        return {name: self.word(name) for name in self.gens}

    def random_element(self, rng, max_length=4):
        """A short random linear combination of words of length <= max_length"""
        letters = 2 * len(self.gens) if self.involutive else len(self.gens)
        acc = {}
        for _ in range(rng.randint(1, 3)):
            w = tuple(rng.randrange(letters) for _ in range(rng.randint(0, max_length)))
            acc[w] = acc.get(w, 0) + rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND)
        return RingElement(self, _canonical_terms(acc))

    def extended(self, count, prefix="t"):
        """The same kind of free ring with at least `count` generators"""
        gens = list(self.gens)
        k = 1
        while len(gens) < count:
            name = "{}{}".format(prefix, k)
            k += 1
            if any(name.startswith(g) or g.startswith(name) for g in gens):
                continue
            gens.append(name)
        return FreeRing(gens, involution=self.involutive, epsilon=self.epsilon)

    def to_json(self):
        return {
            "kind": "free",
            "gens": list(self.gens),
            "involution": self.involutive,
            "epsilon": self.epsilon,
        }


class GroupRing(RingSpec):
    """
    The group ring of a finite permutation group, with coefficients in Z or,
    when a modulus is given, in Z/m.

    Group elements are listed by closure from the generators, breadth first,
    so each one carries a shortest word in g1, g2, ... and index 0 is the
    identity. The involution is g -> g^-1 extended linearly.
    """

    kind = "group_ring"

    def __init__(self, perm_gens, modulus=None):
        perm_gens = [list(p) for p in perm_gens]
        if not perm_gens:
            raise RingSpecError("A group ring needs at least one permutation generator")

        degree = len(perm_gens[0])
        for p in perm_gens:
            if sorted(p) != list(range(1, degree + 1)):
                raise RingSpecError(
                    "{} is not a permutation of 1..{}".format(p, degree)
                )

        if modulus is not None and (not isinstance(modulus, int) or modulus < 2):
            raise RingSpecError("Group ring modulus must be an integer >= 2")

        self.perm_gens = tuple(tuple(p) for p in perm_gens)
        self.modulus = modulus
        self.characteristic = modulus or 0
        self.is_finite = modulus is not None

        self._perms, self._words = self._enumerate_group(
            [Permutation([k - 1 for k in p]) for p in perm_gens]
        )
        self._index = {tuple(p.array_form): k for k, p in enumerate(self._perms)}
        self._inverse = [self._index[tuple((~p).array_form)] for p in self._perms]
        self._products = {}

    @staticmethod
    def _enumerate_group(gens):
        identity = Permutation(list(range(gens[0].size)))
        perms = [identity]
        words = [()]
        seen = {tuple(identity.array_form)}
        frontier = [0]

        while frontier:
            next_frontier = []
            for k in frontier:
                for g_idx, g in enumerate(gens):
                    p = perms[k] * g
                    key = tuple(p.array_form)
                    if key in seen:
                        continue

                    seen.add(key)
                    perms.append(p)
                    words.append(words[k] + (g_idx,))
                    next_frontier.append(len(perms) - 1)

                    if len(perms) > GROUP_ORDER_CAP:
                        raise RingSpecError(
                            "Group has more than {} elements".format(GROUP_ORDER_CAP)
                        )
            frontier = next_frontier

        logger.debug("Enumerated permutation group of order %d", len(perms))
        return perms, words

    @property
    def key(self):
        return ("group_ring", self.perm_gens, self.modulus)

    @property
    def order(self):
        return len(self._perms)

    def _reduce(self, c):
        return c % self.modulus if self.modulus else c

    def basis(self, k):
        return RingElement(self, ((k, 1),))

    def _basis_product(self, i, j):
        k = self._products.get((i, j))
        if k is None:
            k = self._index[tuple((self._perms[i] * self._perms[j]).array_form)]
            self._products[(i, j)] = k
        return k

    def from_int(self, k):
        k = self._reduce(int(k))
        return RingElement(self, (((0, k),) if k else ()))

    def add(self, p, q):
        acc = dict(p)
        for g, c in q:
            acc[g] = self._reduce(acc.get(g, 0) + c)
        return _canonical_terms(acc)

    def neg(self, p):
        return tuple((g, self._reduce(-c)) for g, c in p)

    def mul(self, p, q):
        acc = {}
        for g, c1 in p:
            for h, c2 in q:
                k = self._basis_product(g, h)
                acc[k] = self._reduce(acc.get(k, 0) + c1 * c2)
        return _canonical_terms(acc)

    def star(self, p):
        return _canonical_terms({self._inverse[g]: c for g, c in p})

    def render(self, p):
        if not p:
            return "0"

        terms = []
        for g, c in p:
            word = "".join("g{}".format(k + 1) for k in self._words[g])
            if not word:
                body = str(c)
            elif c == 1:
                body = word
            else:
                body = "{}·{}".format(c, word)
            terms.append(body)

        return " + ".join(terms).replace("+ -", "- ")

    def describe(self):
        coeffs = "Z/{}".format(self.modulus) if self.modulus else "Z"
        return "{}[G, |G|={}]".format(coeffs, self.order)

    def size(self):
        if not self.modulus:
            return super(GroupRing, self).size()
        return self.modulus**self.order

    def elements(self):
        if not self.modulus:
            return super(GroupRing, self).elements()
        if self.size() > ENUMERATION_CAP:
            raise UnsupportedRingOperation(
                "{} has {} elements; too many to enumerate".format(
                    self.describe(), self.size()
                )
            )

        acc = []
        for coeffs in itertools.product(range(self.modulus), repeat=self.order):
            acc.append(
                RingElement(self, _canonical_terms(dict(enumerate(coeffs))))
            )
        return acc

    def additive_generators(self):
        return [self.basis(k) for k in range(self.order)]

    def generators(self):
        return {
            "g{}".format(k + 1): self.basis(self._generator_index(k))
            for k in range(len(self.perm_gens))
        }

    def _generator_index(self, k):
        perm = Permutation([i - 1 for i in self.perm_gens[k]])
        return self._index[tuple(perm.array_form)]

    def random_element(self, rng):
        acc = {}
        for _ in range(rng.randint(1, 3)):
            g = rng.randrange(self.order)
            step = rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND)
            acc[g] = self._reduce(acc.get(g, 0) + step)
        return RingElement(self, _canonical_terms(acc))

    def to_json(self):
        data = {"kind": "group_ring", "perm_gens": [list(p) for p in self.perm_gens]}
        if self.modulus:
            data["modulus"] = self.modulus
        return data


def ring_from_spec(data):
    """
    Build a RingSpec from its JSON description, e.g.
    {"kind": "modular", "m": 5} or {"kind": "free", "gens": ["x", "y"]}
    """
    if not isinstance(data, dict):
        raise RingSpecError("Ring spec must be an object, got {!r}".format(data))

    kind = data.get("kind")
    try:
        if kind == "integers":
            return Integers()
        if kind == "modular":
            return ModularIntegers(data["m"])
        if kind == "free":
            return FreeRing(
                data["gens"],
                involution=data.get("involution", False),
                epsilon=data.get("epsilon", -1),
            )
        if kind == "group_ring":
            return GroupRing(data["perm_gens"], modulus=data.get("modulus"))
    except KeyError as e:
        raise RingSpecError("Ring spec of kind '{}' is missing {}".format(kind, e))
    except TypeError as e:
        raise RingSpecError("Malformed ring spec {!r}: {}".format(data, e))

    raise RingSpecError("Unknown ring kind {!r}".format(kind))


def ensure_generators(ring, count):
    """
    For a free ring, a free ring with at least `count` generators (the
    original generators first). Other rings are returned unchanged.
    """
    if isinstance(ring, FreeRing) and len(ring.gens) < count:
        return ring.extended(count)
    return ring


def parameter_tuples(ring, arity, trials=DEFAULT_TRIALS, rng=None):
    """
    Parameter tuples for verifying an identity with `arity` ring slots.

    Free rings get one tuple of distinct free generators, which proves the
    identity for every ring. Finite rings are exhausted. Other rings get 0,
    1 and `trials` seeded random samples.
    """
    if isinstance(ring, FreeRing):
        if len(ring.gens) < arity:
            raise RingSpecError(
                "{} has fewer than {} generators".format(ring.describe(), arity)
            )
        gens = ring.generators()
        return [tuple(gens[name] for name in ring.gens[:arity])]

    if ring.is_finite:
        return list(itertools.product(ring.elements(), repeat=arity))

    rng = rng or random.Random(0)
    acc = [tuple([ring.zero] * arity), tuple([ring.one] * arity)]
    for _ in range(trials):
        acc.append(tuple(ring.random_element(rng) for _ in range(arity)))
    return acc


def check_characteristic(ring):
    """Whether adding 1 to itself characteristic-many times first gives 0"""
    if ring.characteristic == 0:
        return True

    acc = ring.zero
    for k in range(1, ring.characteristic + 1):
        acc = acc + ring.one
        if acc.is_zero:
            return k == ring.characteristic
    return False
