"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
exponents strictly decreasing, so equal ordinals have identical term tuples.
Only the arithmetic the rank calculus needs is provided: sums, left
multiplication by omega, the limit part and fundamental sequences.
"""
import logging
import re
from enum import Enum
from functools import total_ordering
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from app.config import settings
from app.errors import OrdinalDepthExceeded, OrdinalError, OrdinalSyntaxError

logger = logging.getLogger(__name__)

OrdinalLike = Union["Ordinal", int]


class Kind(str, Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


@total_ordering
class Ordinal:
    __slots__ = ("terms", "depth", "_hash")

    def __init__(self, terms: Iterable[Tuple["Ordinal", int]] = ()):
        terms = tuple((exponent, int(coefficient)) for exponent, coefficient in terms)
        for index, (exponent, coefficient) in enumerate(terms):
            if not isinstance(exponent, Ordinal):
                raise OrdinalError(f"exponent {exponent!r} is not an Ordinal")
            if coefficient < 1:
                raise OrdinalError(f"coefficient {coefficient} must be positive")
            if index and compare(terms[index - 1][0], exponent) <= 0:
                raise OrdinalError("exponents must be strictly decreasing")
        depth = 1 + max((e.depth for e, _ in terms), default=-1)
        if depth > settings.ordinal_max_depth:
            raise OrdinalDepthExceeded(
                f"exponent nesting depth {depth} exceeds {settings.ordinal_max_depth}"
            )
        self.terms: Tuple[Tuple[Ordinal, int], ...] = terms
        self.depth = depth
        self._hash = hash(terms)

    @classmethod
    def of(cls, value: OrdinalLike) -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise OrdinalError(f"cannot read {value!r} as an ordinal")
        if value < 0:
            raise OrdinalError(f"negative value {value} is not an ordinal")
        return cls(((ZERO, value),)) if value else ZERO

    @classmethod
    def parse(cls, text: str) -> "Ordinal":
        return parse_ordinal(text)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0].is_zero

    def to_int(self) -> int:
        if not self.is_finite:
            raise OrdinalError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) < 0

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: OrdinalLike) -> "Ordinal":
        return add(self, Ordinal.of(other))

    def __radd__(self, other: OrdinalLike) -> "Ordinal":
        return add(Ordinal.of(other), self)

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def compare(a: Ordinal, b: Ordinal) -> int:
    """Return -1, 0 or 1 as a is less than, equal to or greater than b."""
    for (exp_a, coef_a), (exp_b, coef_b) in zip(a.terms, b.terms):
        order = compare(exp_a, exp_b)
        if order:
            return order
        if coef_a != coef_b:
            return -1 if coef_a < coef_b else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero:
        return a
    lead, lead_coef = b.terms[0]
    kept: List[Tuple[Ordinal, int]] = []
    for exponent, coefficient in a.terms:
        order = compare(exponent, lead)
        if order > 0:
            kept.append((exponent, coefficient))
        elif order == 0:
            return Ordinal(kept + [(lead, coefficient + lead_coef)] + list(b.terms[1:]))
        else:
            break
    return Ordinal(kept + list(b.terms))


def mul_omega(b: Ordinal) -> Ordinal:
    """omega * b, term by term: omega * omega^g * c = omega^(1+g) * c."""
    return Ordinal((add(ONE, exponent), coefficient) for exponent, coefficient in b.terms)


def limit_part(a: Ordinal) -> Ordinal:
    return Ordinal(term for term in a.terms if not term[0].is_zero)


def finite_part(a: Ordinal) -> int:
    if a.terms and a.terms[-1][0].is_zero:
        return a.terms[-1][1]
    return 0


def sup(values: Iterable[OrdinalLike]) -> Ordinal:
    best = ZERO
    for value in values:
        value = Ordinal.of(value)
        if compare(value, best) > 0:
            best = value
    return best


def successor_kind(a: Ordinal) -> Kind:
    if a.is_zero:
        return Kind.ZERO
    if a.terms[-1][0].is_zero:
        return Kind.SUCCESSOR
    return Kind.LIMIT


def predecessor(a: Ordinal) -> Ordinal:
    if successor_kind(a) is not Kind.SUCCESSOR:
        raise OrdinalError(f"{a} has no predecessor")
    *head, (exponent, coefficient) = a.terms
    if coefficient > 1:
        head.append((exponent, coefficient - 1))
    return Ordinal(head)


def omega_power(exponent: OrdinalLike, coefficient: int = 1) -> Ordinal:
    if coefficient == 0:
        return ZERO
    return Ordinal(((Ordinal.of(exponent), coefficient),))


def fundamental_sequence(a: Ordinal, index: int) -> Ordinal:
    """The canonical index-th approximation of the limit ordinal a.

    With a = prefix + omega^g * c, the sequence is prefix + omega^g * (c - 1)
    followed by omega^d * index when g = d + 1, or omega^(g[index]) * index when
    g is itself a limit.
    """
    if successor_kind(a) is not Kind.LIMIT:
        raise OrdinalError(f"{a} is not a limit ordinal")
    if index < 0:
        raise OrdinalError("fundamental sequence index must be non-negative")
    *head, (exponent, coefficient) = a.terms
    prefix = Ordinal(head)
    if coefficient > 1:
        prefix = add(prefix, omega_power(exponent, coefficient - 1))
    if successor_kind(exponent) is Kind.SUCCESSOR:
        return add(prefix, omega_power(predecessor(exponent), index))
    return add(prefix, omega_power(fundamental_sequence(exponent, index), index))


# Text syntax: 0, 5, w, w*3, w^2*3+w+4, w^(w)

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<omega>w)|(?P<op>[\^*+()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if not match:
            raise OrdinalSyntaxError(f"unexpected character {text[position]!r}", position)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        position = match.end()
    return tokens


class _OrdinalParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self, value: Optional[str] = None, kind: Optional[str] = None) -> Tuple[str, str, int]:
        token = self.peek()
        if token is None:
            raise OrdinalSyntaxError("unexpected end of ordinal", len(self.text))
        if (value is not None and token[1] != value) or (kind is not None and token[0] != kind):
            raise OrdinalSyntaxError(f"unexpected {token[1]!r}", token[2])
        self.index += 1
        return token

    def parse(self) -> Ordinal:
        if not self.tokens:
            raise OrdinalSyntaxError("empty ordinal", 0)
        value = self.ordinal()
        if self.peek() is not None:
            raise OrdinalSyntaxError(f"trailing {self.peek()[1]!r}", self.peek()[2])
        return value

    def ordinal(self) -> Ordinal:
        value = self.term()
        while self.peek() and self.peek()[1] == "+":
            self.take("+")
            value = add(value, self.term())
        return value

    def term(self) -> Ordinal:
        token = self.peek()
        if token and token[0] == "int":
            self.take()
            return Ordinal.of(int(token[1]))
        self.take("w")
        exponent = ONE
        if self.peek() and self.peek()[1] == "^":
            self.take("^")
            exponent = self.atom()
        coefficient = 1
        if self.peek() and self.peek()[1] == "*":
            self.take("*")
            coefficient = int(self.take(kind="int")[1])
        return omega_power(exponent, coefficient)

    def atom(self) -> Ordinal:
        token = self.take()
        if token[0] == "int":
            return Ordinal.of(int(token[1]))
        if token[0] == "omega":
            return OMEGA
        if token[1] == "(":
            value = self.ordinal()
            self.take(")")
            return value
        raise OrdinalSyntaxError(f"unexpected {token[1]!r}", token[2])


def parse_ordinal(text: str) -> Ordinal:
    return _OrdinalParser(text).parse()


def format_ordinal(a: Ordinal) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for exponent, coefficient in a.terms:
        if exponent.is_zero:
            parts.append(str(coefficient))
            continue
        if exponent == ONE:
            base = "w"
        elif exponent.is_finite:
            base = f"w^{exponent.to_int()}"
        else:
            base = f"w^({format_ordinal(exponent)})"
        parts.append(base if coefficient == 1 else f"{base}*{coefficient}")
    return "+".join(parts)


def generate_ordinals(max_exponent: int = 2, max_coefficient: int = 2) -> List[Ordinal]:
    """All ordinals below omega^(max_exponent+1) with coefficients up to max_coefficient."""
    values: List[Ordinal] = []

    def build(exponent: int, terms: Sequence[Tuple[Ordinal, int]]) -> None:
        if exponent < 0:
            values.append(Ordinal(terms))
            return
        for coefficient in range(max_coefficient + 1):
            extra = [(Ordinal.of(exponent), coefficient)] if coefficient else []
            build(exponent - 1, list(terms) + extra)

    build(max_exponent, [])
    logger.debug(f"generated {len(values)} ordinals below w^{max_exponent + 1}")
    return values
