import logging

logger = logging.getLogger(__name__)

_OPERATORS = {
    "+": "+",
    "-": "-",
    "−": "-",
    "*": "*",
    "·": "·",
    ".": "·",
    "(": "(",
    ")": ")",
}


def tokenise(s, names):
    """
    Breaks a ring element literal down into tokens

    :param s: The literal, e.g. "3·xy* - 2"
    :param names: Generator names the ring understands. Names are matched
        greedily, longest first, so "g10" wins over "g1".
    """
    acc = []
    by_length = sorted(names, key=len, reverse=True)
    curr = ""
    pos = 0

    def _flush_number():
        if curr != "":
            acc.append(Number(int(curr), pos - len(curr)))

    while pos < len(s):
        c = s[pos]

        if c.isdigit():
            curr += c
            pos += 1
            continue

        _flush_number()
        curr = ""

        if c.isspace():
            pos += 1
            continue

        if c in _OPERATORS:
            acc.append(Operator(_OPERATORS[c], pos))
            pos += 1
            continue

        for name in by_length:
            if s.startswith(name, pos):
                acc.append(Token(name, pos))
                pos += len(name)
                break
        else:
            raise TokeniserException("Unexpected character '{}'".format(c), pos)

    _flush_number()
    return acc


def parse_element(ring, s):
    """
    Parse a literal into an element of `ring`

    Juxtaposition is multiplication, '*' after a factor is the involution and
    integers are coerced through the ring.
    """
    generators = ring.generators()
    tokens = tokenise(s, generators.keys())
    if not tokens:
        raise TokeniserException("Empty element literal", 0)

    parser = _Parser(ring, generators, tokens, len(s))
    result = parser.expression()
    if parser.peek() is not None:
        t = parser.peek()
        raise TokeniserException("Unexpected '{}'".format(t.text), t.pos)

    logger.debug("Parsed '%s' as %s in %s", s, result, ring.describe())
    return result


class _Parser(object):
    def __init__(self, ring, generators, tokens, end):
        self.ring = ring
        self.generators = generators
        self.tokens = tokens
        self.end = end
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _is_op(self, t, value):
        return isinstance(t, Operator) and t.value == value

    def _take(self):
        t = self.peek()
        if t is None:
            raise TokeniserException("Unexpected end of literal", self.end)
        self.i += 1
        return t

    def expression(self):
        sign = 1
        if self._is_op(self.peek(), "-"):
            self._take()
            sign = -1
        elif self._is_op(self.peek(), "+"):
            self._take()

        acc = self.term()
        if sign < 0:
            acc = -acc

        while self._is_op(self.peek(), "+") or self._is_op(self.peek(), "-"):
            op = self._take()
            rhs = self.term()
            acc = acc + rhs if op.value == "+" else acc - rhs

        return acc

    def term(self):
        acc = self.factor()
        while True:
            t = self.peek()
            if self._is_op(t, "·"):
                self._take()
                acc = acc * self.factor()
            elif isinstance(t, (Number, Token)) or self._is_op(t, "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        t = self._take()

        if isinstance(t, Number):
            value = self.ring.from_int(t.value)
        elif isinstance(t, Token):
            value = self.generators[t.name]
        elif self._is_op(t, "("):
            value = self.expression()
            close = self._take()
            if not self._is_op(close, ")"):
                raise TokeniserException("Expected ')'", close.pos)
        else:
            raise TokeniserException("Unexpected '{}'".format(t.text), t.pos)

        while self._is_op(self.peek(), "*"):
            self._take()
            value = value.star()

        return value


class Token(object):
    def __init__(self, name, pos):
        self.name = name
        self.pos = pos

    @property
    def text(self):
        return self.name


class Number(object):
    def __init__(self, value, pos):
        self.value = value
        self.pos = pos

    @property
    def text(self):
        return str(self.value)


class Operator(object):
    def __init__(self, value, pos):
        self.value = value
        self.pos = pos

    @property
    def text(self):
        return self.value


class TokeniserException(Exception):
    def __init__(self, msg, pos=None):
        if pos is not None:
            msg = "{} at position {}".format(msg, pos)
        super(TokeniserException, self).__init__(msg)
        self.pos = pos
