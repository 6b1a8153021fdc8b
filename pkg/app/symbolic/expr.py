"""Symbolic group expressions.

Each node stands for a non-archimedean CLI group built from finite chain groups
by products, countable powers, wreath products with an infinite discrete top and
restricted products along a fundamental sequence. Nodes are immutable and
hashable; atoms compare by name.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Tuple, Union

from app.errors import ExpressionError
from app.groups.chain import ChainGroup
from app.ordinals.cnf import Kind, Ordinal, format_ordinal, fundamental_sequence, successor_kind


class ExampleKind(str, Enum):
    G = "G"
    H = "H"


class GroupExpr:
    """Base class of expression nodes."""

    def __str__(self) -> str:
        return format_expr(self)


@dataclass(frozen=True, eq=True)
class Trivial(GroupExpr):
    pass


@dataclass(frozen=True, eq=True)
class Atom(GroupExpr):
    name: str
    group: ChainGroup = field(compare=False, repr=False)

    @property
    def nontrivial(self) -> bool:
        return not self.group.is_trivial()


@dataclass(frozen=True, eq=True)
class DiscreteInfinite(GroupExpr):
    pass


@dataclass(frozen=True, eq=True)
class Prod(GroupExpr):
    factors: Tuple[GroupExpr, ...] = ()


@dataclass(frozen=True, eq=True)
class PowInf(GroupExpr):
    operand: GroupExpr


@dataclass(frozen=True, eq=True)
class ExampleSeq(GroupExpr):
    """The family i -> example(kind, limit[i]) along the fundamental sequence."""

    kind: ExampleKind
    limit: Ordinal

    def __post_init__(self):
        if successor_kind(self.limit) is not Kind.LIMIT:
            raise ExpressionError(f"seq needs a limit ordinal, got {format_ordinal(self.limit)}")

    def index(self, i: int) -> Ordinal:
        return fundamental_sequence(self.limit, i)


@dataclass(frozen=True, eq=True)
class ProdInf(GroupExpr):
    """prod_i G^i with G^i = head[i] and then the tail from len(head) on."""

    head: Tuple[GroupExpr, ...]
    tail: GroupExpr


@dataclass(frozen=True, eq=True)
class Wreath(GroupExpr):
    operand: GroupExpr


@dataclass(frozen=True, eq=True)
class RestrictedProd(GroupExpr):
    head: Tuple[GroupExpr, ...] = ()
    tail: Union[ExampleSeq, None] = None


@dataclass(frozen=True, eq=True)
class Example(GroupExpr):
    kind: ExampleKind
    alpha: Ordinal


def factors(head: Tuple[GroupExpr, ...], tail, count: int) -> Iterator[GroupExpr]:
    """The first `count` factors of a head followed by a tail sequence or constant."""
    for i in range(count):
        if i < len(head):
            yield head[i]
        elif isinstance(tail, ExampleSeq):
            yield Example(tail.kind, tail.index(i - len(head)))
        elif tail is not None:
            yield tail
        else:
            return


def format_expr(e: GroupExpr) -> str:
    if isinstance(e, Trivial):
        return "trivial"
    if isinstance(e, DiscreteInfinite):
        return "Z"
    if isinstance(e, Atom):
        return f"atom({e.name})"
    if isinstance(e, Prod):
        return "prod(" + ", ".join(format_expr(f) for f in e.factors) + ")"
    if isinstance(e, PowInf):
        return f"powinf({format_expr(e.operand)})"
    if isinstance(e, Wreath):
        return f"wreath({format_expr(e.operand)})"
    if isinstance(e, ExampleSeq):
        return f"seq({e.kind.value}, {format_ordinal(e.limit)})"
    if isinstance(e, Example):
        return f"example({e.kind.value}, {format_ordinal(e.alpha)})"
    if isinstance(e, (ProdInf, RestrictedProd)):
        keyword = "prodinf" if isinstance(e, ProdInf) else "restricted"
        head = ", ".join(format_expr(f) for f in e.head)
        if e.tail is None:
            return f"{keyword}({head})"
        if not e.head:
            return f"{keyword}({format_expr(e.tail)})"
        return f"{keyword}({head}; {format_expr(e.tail)})"
    raise ExpressionError(f"unknown expression node {type(e).__name__}")
