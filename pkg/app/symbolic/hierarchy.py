"""The witnesses G_a and H_a with rank(G_a) = rank(H_a) = a.

H_a is a-CLI and G_a is L-a-CLI but not a-CLI.
"""
import logging
from typing import Any, Dict, List, Union

from app.config import settings
from app.errors import DepthBudgetExceeded
from app.groups.constructions import z2_chain
from app.ordinals.cnf import Kind, Ordinal, finite_part, format_ordinal, predecessor, successor_kind
from app.symbolic.calculus import rank_calculus
from app.symbolic.expr import (
    Atom,
    ExampleKind,
    ExampleSeq,
    GroupExpr,
    PowInf,
    ProdInf,
    RestrictedProd,
    Trivial,
    Wreath,
)

logger = logging.getLogger(__name__)


def build_example(kind: Union[ExampleKind, str], alpha: Ordinal) -> GroupExpr:
    """Expand example(kind, alpha) one layer at a time down to the last limit.

    Successor steps are unrolled, limits stay as seq(G, limit) tails.
    """
    kind = ExampleKind(kind)
    alpha = Ordinal.of(alpha)
    steps = finite_part(alpha)
    if steps > settings.example_max_steps:
        raise DepthBudgetExceeded(
            f"{format_ordinal(alpha)} needs {steps} successor steps, the limit is {settings.example_max_steps}"
        )
    return _build(kind, alpha)


def _build(kind: ExampleKind, alpha: Ordinal) -> GroupExpr:
    shape = successor_kind(alpha)
    if shape is Kind.ZERO:
        return Trivial() if kind is ExampleKind.H else Atom("Z2", z2_chain())
    if shape is Kind.LIMIT:
        seq = ExampleSeq(ExampleKind.G, alpha)
        if kind is ExampleKind.H:
            return ProdInf((), seq)
        return RestrictedProd((), seq)
    power = PowInf(_build(ExampleKind.G, predecessor(alpha)))
    return power if kind is ExampleKind.H else Wreath(power)


def describe_examples(alpha: Ordinal, kinds: List[ExampleKind]) -> List[Dict[str, Any]]:
    rows = []
    for kind in kinds:
        expr = build_example(kind, alpha)
        c = rank_calculus.classify(expr)
        rows.append(
            {
                "kind": kind.value,
                "alpha": format_ordinal(alpha),
                "expr": str(expr),
                "rank": format_ordinal(c.rank),
                "tight": c.tight,
                "verdicts": rank_calculus.verdicts(expr, alpha),
            }
        )
        logger.debug(f"example {kind.value}_{format_ordinal(alpha)} = {expr}")
    return rows
