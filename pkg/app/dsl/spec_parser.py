"""Parser and printer for group spec files.

    # comments run to the end of the line
    chain S3deg3 = [ (0 1 2), (0 1) ] > [ (0 1 2) ] > [ ]
    chain C4 degree 4 = [ [1,2,3,0] ] > [ ]
    group W = wreath(powinf(atom(Z2)))
    group H = prodinf(atom(S3deg3), W; seq(G, w))

A bare chain name inside an expression is read as atom(name). Names are unique,
may be used before their definition and must not refer to themselves.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Union

from arpeggio import EOF, NoMatch, ParserPython, PTNodeVisitor, ZeroOrMore, visit_parse_tree
from arpeggio import Optional as Maybe
from arpeggio import RegExMatch as _

from app.errors import (
    DslSyntaxError,
    DuplicateName,
    ExpressionError,
    GroupError,
    OrdinalError,
    UnknownName,
    ValidationError,
)
from app.groups.chain import ChainGroup, make_chain_group
from app.groups.constructions import s3_chain, z2_chain
from app.groups.perm import cycle_degree, format_cycles, parse_cycles
from app.ordinals.cnf import Ordinal, parse_ordinal
from app.symbolic.calculus import rank_calculus
from app.symbolic.expr import (
    Atom,
    DiscreteInfinite,
    Example,
    ExampleKind,
    ExampleSeq,
    GroupExpr,
    PowInf,
    Prod,
    ProdInf,
    RestrictedProd,
    Trivial,
    Wreath,
    format_expr,
)
from app.utils.text import normalize_text, strip_comment

logger = logging.getLogger(__name__)

BUILTIN_CHAINS: Dict[str, Callable[[], ChainGroup]] = {
    "Z2": z2_chain,
    "S3": s3_chain,
}


# Grammar

def identifier():
    return _(r"[A-Za-z_][A-Za-z0-9_]*")


def number():
    return _(r"\d+")


def cycles():
    return _(r"\((?:\s*\d+)*\s*\)(?:\s*\((?:\s*\d+)*\s*\))*")


def images():
    return _(r"\[\s*\d+(?:\s*,\s*\d+)*\s*\]")


def perm():
    return [cycles, images]


def level():
    return "[", Maybe(perm, ZeroOrMore(",", perm)), "]"


def chain_def():
    return _(r"chain\b"), identifier, Maybe(_(r"degree\b"), number), "=", level, ZeroOrMore(">", level)


def ord_atom():
    return [number, _(r"w"), ("(", ordinal, ")")]


def ord_term():
    return [number, (_(r"w"), Maybe("^", ord_atom), Maybe("*", number))]


def ordinal():
    return ord_term, ZeroOrMore("+", ord_term)


def kind():
    return _(r"[GH]\b")


def trivial():
    return _(r"trivial\b")


def discrete():
    return _(r"Z\b")


def atom():
    return _(r"atom\b"), "(", identifier, ")"


def prod():
    return _(r"prod\b"), "(", Maybe(expr, ZeroOrMore(",", expr)), ")"


def powinf():
    return _(r"powinf\b"), "(", expr, ")"


def wreath():
    return _(r"wreath\b"), "(", expr, ")"


def head():
    return expr, ZeroOrMore(",", expr)


def prodinf():
    return _(r"prodinf\b"), "(", [(Maybe(head), ";", expr), head], ")"


def restricted():
    return _(r"restricted\b"), "(", [(Maybe(head), ";", expr), head], ")"


def example():
    return _(r"example\b"), "(", kind, ",", ordinal, ")"


def seq():
    return _(r"seq\b"), "(", kind, ",", ordinal, ")"


def expr():
    return [trivial, discrete, atom, prodinf, prod, powinf, wreath, restricted, example, seq, identifier]


def group_def():
    return _(r"group\b"), identifier, "=", expr


def statement():
    return [chain_def, group_def]


def spec():
    return ZeroOrMore(statement), EOF


_PARSER = None


def _get_parser() -> ParserPython:
    global _PARSER
    if _PARSER is None:
        _PARSER = ParserPython(spec, ignore_case=False)
    return _PARSER


# Parse tree -> raw statements

@dataclass
class _Name:
    name: str
    line: int
    column: int


@dataclass
class _Perm:
    text: str


@dataclass
class _Level:
    perms: List[str]


@dataclass
class _Head:
    items: List["_Raw"]


@dataclass
class _Raw:
    op: str
    args: List[Any] = field(default_factory=list)
    line: int = 0
    column: int = 0


@dataclass
class _ChainStmt:
    name: _Name
    degree: Optional[int]
    levels: List[List[str]]


@dataclass
class _GroupStmt:
    name: _Name
    body: _Raw


def _of(children, kind_) -> List[Any]:
    return [c for c in children if isinstance(c, kind_)]


class _SpecVisitor(PTNodeVisitor):
    def __init__(self, parser: ParserPython, text: str):
        super().__init__()
        self.parser = parser
        self.text = text

    def _where(self, node):
        return self.parser.pos_to_linecol(node.position)

    def _raw(self, node, op: str, args=None) -> _Raw:
        line, column = self._where(node)
        return _Raw(op, list(args or []), line, column)

    def visit_identifier(self, node, children):
        line, column = self._where(node)
        return _Name(node.value, line, column)

    def visit_number(self, node, children):
        return int(node.value)

    def visit_cycles(self, node, children):
        return _Perm(node.value)

    def visit_images(self, node, children):
        return _Perm(node.value)

    def visit_perm(self, node, children):
        return _of(children, _Perm)[0]

    def visit_level(self, node, children):
        return _Level([p.text for p in _of(children, _Perm)])

    def visit_chain_def(self, node, children):
        degrees = [c for c in children if isinstance(c, int)]
        levels = [lv.perms for lv in _of(children, _Level)]
        return _ChainStmt(_of(children, _Name)[0], degrees[0] if degrees else None, levels)

    def visit_ordinal(self, node, children):
        line, column = self._where(node)
        source = self.text[node.position:node.position_end]
        try:
            return parse_ordinal(source)
        except OrdinalError as e:
            raise DslSyntaxError(str(e), line, column) from None

    def visit_kind(self, node, children):
        return ExampleKind(node.value)

    def visit_trivial(self, node, children):
        return self._raw(node, "trivial")

    def visit_discrete(self, node, children):
        return self._raw(node, "Z")

    def visit_atom(self, node, children):
        return self._raw(node, "atom", _of(children, _Name))

    def visit_prod(self, node, children):
        return self._raw(node, "prod", _of(children, _Raw))

    def visit_powinf(self, node, children):
        return self._raw(node, "powinf", _of(children, _Raw))

    def visit_wreath(self, node, children):
        return self._raw(node, "wreath", _of(children, _Raw))

    def visit_head(self, node, children):
        return _Head(_of(children, _Raw))

    def _head_and_tail(self, node, op: str, children) -> _Raw:
        heads = _of(children, _Head)
        tails = _of(children, _Raw)
        items = heads[0].items if heads else []
        if tails:
            return self._raw(node, op, [items, tails[0]])
        if op == "prodinf" or items[-1].op == "seq":
            return self._raw(node, op, [items[:-1], items[-1]])
        return self._raw(node, op, [items, None])

    def visit_prodinf(self, node, children):
        return self._head_and_tail(node, "prodinf", children)

    def visit_restricted(self, node, children):
        return self._head_and_tail(node, "restricted", children)

    def visit_example(self, node, children):
        return self._raw(node, "example", _of(children, ExampleKind) + _of(children, Ordinal))

    def visit_seq(self, node, children):
        return self._raw(node, "seq", _of(children, ExampleKind) + _of(children, Ordinal))

    def visit_expr(self, node, children):
        item = children[0]
        if isinstance(item, _Name):
            return _Raw("ref", [item], item.line, item.column)
        return item

    def visit_group_def(self, node, children):
        return _GroupStmt(_of(children, _Name)[0], _of(children, _Raw)[0])

    def visit_statement(self, node, children):
        return children[0]

    def visit_spec(self, node, children):
        return _of(children, (_ChainStmt, _GroupStmt))


# Resolution

@dataclass
class SpecFile:
    chains: Dict[str, ChainGroup] = field(default_factory=dict)
    groups: Dict[str, GroupExpr] = field(default_factory=dict)

    def names(self) -> List[str]:
        return list(self.chains) + list(self.groups)

    def chain(self, name: str) -> ChainGroup:
        if name in self.chains:
            return self.chains[name]
        if name in BUILTIN_CHAINS:
            return BUILTIN_CHAINS[name]()
        if name in self.groups:
            raise ValidationError(f"{name} is a group expression, not a chain group")
        raise UnknownName(f"no chain named {name}")

    def expr(self, name: str) -> GroupExpr:
        if name in self.groups:
            return self.groups[name]
        if name in self.chains or name in BUILTIN_CHAINS:
            return Atom(name, self.chain(name))
        raise UnknownName(f"no group named {name}")

    def lookup(self, name: str) -> Union[ChainGroup, GroupExpr]:
        """A chain group by name, falling back to a group expression."""
        if name in self.chains or name in BUILTIN_CHAINS:
            return self.chain(name)
        return self.expr(name)


def _build_chain(stmt: _ChainStmt) -> ChainGroup:
    texts = [text for lv in stmt.levels for text in lv]
    degree = stmt.degree if stmt.degree is not None else cycle_degree(texts)
    where = f"line {stmt.name.line}: chain {stmt.name.name}"
    try:
        chain = [[parse_cycles(text, degree) for text in lv] for lv in stmt.levels]
        return make_chain_group(degree, chain)
    except GroupError as e:
        raise ValidationError(f"{where}: {e}") from e


class _Resolver:
    def __init__(self, chains: Dict[str, ChainGroup], bodies: Dict[str, _Raw]):
        self.chains = chains
        self.bodies = bodies
        self.done: Dict[str, GroupExpr] = {}
        self.active: List[str] = []

    def group(self, name: str) -> GroupExpr:
        if name in self.done:
            return self.done[name]
        if name in self.active:
            loop = " -> ".join(self.active[self.active.index(name):] + [name])
            raise ValidationError(f"cyclic definition: {loop}")
        self.active.append(name)
        self.done[name] = self.build(self.bodies[name])
        self.active.pop()
        return self.done[name]

    def chain_atom(self, ref: _Name) -> Atom:
        if ref.name in self.chains:
            return Atom(ref.name, self.chains[ref.name])
        if ref.name in BUILTIN_CHAINS:
            return Atom(ref.name, BUILTIN_CHAINS[ref.name]())
        if ref.name in self.bodies:
            raise ValidationError(f"line {ref.line}, column {ref.column}: atom({ref.name}) needs a chain, not a group")
        raise UnknownName(f"line {ref.line}, column {ref.column}: no chain named {ref.name}")

    def build(self, raw: _Raw) -> GroupExpr:
        a = raw.args
        if raw.op == "trivial":
            return Trivial()
        if raw.op == "Z":
            return DiscreteInfinite()
        if raw.op == "atom":
            return self.chain_atom(a[0])
        if raw.op == "ref":
            ref = a[0]
            if ref.name in self.bodies:
                return self.group(ref.name)
            return self.chain_atom(ref)
        if raw.op == "prod":
            return Prod(tuple(self.build(x) for x in a))
        if raw.op == "powinf":
            return PowInf(self.build(a[0]))
        if raw.op == "wreath":
            return Wreath(self.build(a[0]))
        if raw.op in ("prodinf", "restricted"):
            items, tail = a
            head_ = tuple(self.build(x) for x in items)
            tail_ = self.build(tail) if tail is not None else None
            if raw.op == "prodinf":
                return ProdInf(head_, tail_)
            if tail_ is not None and not isinstance(tail_, ExampleSeq):
                raise ValidationError(f"line {raw.line}, column {raw.column}: the tail of restricted must be seq(...)")
            return RestrictedProd(head_, tail_)
        try:
            if raw.op == "example":
                return Example(a[0], a[1])
            if raw.op == "seq":
                return ExampleSeq(a[0], a[1])
        except ExpressionError as e:
            raise ValidationError(f"line {raw.line}, column {raw.column}: {e}") from e
        raise ValidationError(f"unknown expression form {raw.op}")


def parse_spec(text: str, validate: bool = True) -> SpecFile:
    """Parse spec text into named chain groups and expressions.

    With validate, every expression is classified once so that wreath and
    restricted-product hypotheses are checked up front.
    """
    source = "\n".join(strip_comment(line) for line in normalize_text(text).split("\n"))
    parser = _get_parser()
    try:
        tree = parser.parse(source)
    except NoMatch as e:
        raise DslSyntaxError(str(e), e.line, e.col) from None
    statements = visit_parse_tree(tree, _SpecVisitor(parser, source))

    seen: Dict[str, _Name] = {}
    for stmt in statements:
        name = stmt.name
        if name.name in seen or name.name in BUILTIN_CHAINS:
            raise DuplicateName(f"line {name.line}: {name.name} is already defined")
        seen[name.name] = name

    chains = {s.name.name: _build_chain(s) for s in statements if isinstance(s, _ChainStmt)}
    bodies = {s.name.name: s.body for s in statements if isinstance(s, _GroupStmt)}
    resolver = _Resolver(chains, bodies)
    groups = {name: resolver.group(name) for name in bodies}

    if validate:
        for name, e in groups.items():
            try:
                rank_calculus.classify(e)
            except ExpressionError as err:
                raise ValidationError(f"group {name}: {err}") from err
    logger.debug(f"parsed spec with {len(chains)} chains and {len(groups)} groups")
    return SpecFile(chains, groups)


def format_chain(name: str, group: ChainGroup) -> str:
    levels = ["[ " + ", ".join(format_cycles(g) for g in lv) + " ]" if lv else "[ ]" for lv in group.gens]
    return f"chain {name} degree {group.degree} = " + " > ".join(levels)


def print_spec(spec_file: SpecFile) -> str:
    lines = [format_chain(name, group) for name, group in spec_file.chains.items()]
    lines += [f"group {name} = {format_expr(e)}" for name, e in spec_file.groups.items()]
    return "\n".join(lines) + "\n"


def load_spec(path: str) -> SpecFile:
    with open(path, "r", encoding="utf-8") as f:
        return parse_spec(f.read())
