"""Finite shadows of symbolic expressions as chain groups.

depth cuts atom chains and restricted products, breadth is the number of
factors kept from an infinite product and the size of the wreath top.
"""
import logging
from functools import reduce
from typing import Optional

from app.errors import ExpressionError, ValidationError
from app.groups.chain import ChainGroup, trivial_chain
from app.groups.constructions import (
    cut_chain,
    cyclic_chain,
    product_chain,
    restricted_truncation,
    staggered_product,
    wreath_truncation,
)
from app.symbolic.expr import (
    Atom,
    DiscreteInfinite,
    Example,
    ExampleSeq,
    GroupExpr,
    PowInf,
    Prod,
    ProdInf,
    RestrictedProd,
    Trivial,
    Wreath,
    factors,
    format_expr,
)
from app.symbolic.hierarchy import build_example

logger = logging.getLogger(__name__)


def truncate(e: GroupExpr, depth: int, breadth: int, budget: Optional[int] = None) -> ChainGroup:
    if depth < 1:
        raise ValidationError(f"depth must be at least 1, got {depth}")
    if breadth < 1:
        raise ValidationError(f"breadth must be at least 1, got {breadth}")
    result = _truncate(e, depth, breadth, budget)
    logger.debug(f"truncate {format_expr(e)} at depth {depth}, breadth {breadth}: orders {result.orders()}")
    return result


def _truncate(e: GroupExpr, depth: int, breadth: int, budget: Optional[int]) -> ChainGroup:
    def shadow(sub: GroupExpr) -> ChainGroup:
        return _truncate(sub, depth, breadth, budget)

    if isinstance(e, Trivial):
        return trivial_chain()
    if isinstance(e, Atom):
        return cut_chain(e.group, depth)
    if isinstance(e, DiscreteInfinite):
        return cyclic_chain(breadth)
    if isinstance(e, Example):
        return shadow(build_example(e.kind, e.alpha))
    if isinstance(e, Prod):
        if not e.factors:
            return trivial_chain()
        return reduce(lambda left, right: product_chain(left, right, budget), [shadow(f) for f in e.factors])
    if isinstance(e, PowInf):
        return staggered_product([shadow(e.operand)] * breadth, budget)
    if isinstance(e, ProdInf):
        return staggered_product([shadow(f) for f in factors(e.head, e.tail, breadth)], budget)
    if isinstance(e, Wreath):
        return wreath_truncation(breadth, shadow(e.operand), budget)
    if isinstance(e, RestrictedProd):
        parts = [shadow(f) for f in factors(e.head, e.tail, breadth)]
        if not parts:
            return trivial_chain()
        return cut_chain(restricted_truncation(parts, budget), depth)
    if isinstance(e, ExampleSeq):
        raise ExpressionError(f"{format_expr(e)} has no finite shadow on its own")
    raise ExpressionError(f"unknown expression node {type(e).__name__}")
