"""Rank calculus for symbolic expressions.

A Classification is (rank, tight): the group has rho = w*rank exactly when tight,
and rho = w*rank + m for some finite m >= 1 otherwise. It is alpha-CLI iff
rank < alpha or rank = alpha and tight, and L-alpha-CLI iff rank <= alpha.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence

from app.errors import ExpressionError, LimitHypothesisFails, WreathOperandUnsupported
from app.ordinals.cnf import ONE, ZERO, Kind, Ordinal, add, format_ordinal, successor_kind, sup
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

logger = logging.getLogger(__name__)

# terms of a fundamental sequence checked for strict growth
_SEQUENCE_SAMPLE = 4


@dataclass(frozen=True)
class Classification:
    rank: Ordinal
    tight: bool

    def is_alpha_cli(self, alpha: Ordinal) -> bool:
        return self.rank < alpha or (self.rank == alpha and self.tight)

    def is_L_alpha_cli(self, alpha: Ordinal) -> bool:
        return self.rank <= alpha

    def __str__(self) -> str:
        return f"rank {format_ordinal(self.rank)}, {'tight' if self.tight else 'not tight'}"


class RankCalculus:
    def classify(self, e: GroupExpr) -> Classification:
        if isinstance(e, Trivial):
            return Classification(ZERO, True)
        if isinstance(e, Atom):
            return Classification(ZERO, not e.nontrivial)
        if isinstance(e, DiscreteInfinite):
            return Classification(ZERO, False)
        if isinstance(e, Example):
            return Classification(e.alpha, e.kind is ExampleKind.H)
        if isinstance(e, Prod):
            return self._finite_product([self.classify(f) for f in e.factors])
        if isinstance(e, PowInf):
            return self._infinite_product([], e.operand)
        if isinstance(e, ProdInf):
            return self._infinite_product([self.classify(f) for f in e.head], e.tail)
        if isinstance(e, Wreath):
            return self._wreath(e)
        if isinstance(e, RestrictedProd):
            return self._restricted(e)
        if isinstance(e, ExampleSeq):
            raise ExpressionError(f"{format_expr(e)} is only allowed as the tail of prodinf or restricted")
        raise ExpressionError(f"unknown expression node {type(e).__name__}")

    def _finite_product(self, parts: Sequence[Classification]) -> Classification:
        if not parts:
            return Classification(ZERO, True)
        rank = sup(c.rank for c in parts)
        return Classification(rank, all(c.tight for c in parts if c.rank == rank))

    def _infinite_product(self, head: List[Classification], tail: GroupExpr) -> Classification:
        if isinstance(tail, ExampleSeq):
            self._check_increasing(tail)
            # tail ranks all lie below the limit, so every tail factor is rank-CLI
            rank = sup([c.rank for c in head] + [tail.limit])
            return Classification(rank, all(c.is_alpha_cli(rank) for c in head))
        cofinal = self.classify(tail)
        top = sup([c.rank for c in head] + [cofinal.rank])
        if cofinal.rank < top or cofinal.tight:
            rank = top
        else:
            rank = add(top, ONE)
        return Classification(rank, all(c.is_alpha_cli(rank) for c in head + [cofinal]))

    def _wreath(self, e: Wreath) -> Classification:
        operand = self.classify(e.operand)
        if not operand.tight:
            return Classification(add(operand.rank, ONE), False)
        if successor_kind(operand.rank) is Kind.SUCCESSOR:
            return Classification(operand.rank, False)
        raise WreathOperandUnsupported(
            f"wreath needs an operand that is (a+1)-CLI but not a-CLI, got {format_expr(e.operand)} with {operand}"
        )

    def _check_increasing(self, seq: ExampleSeq) -> None:
        terms = [seq.index(i) for i in range(_SEQUENCE_SAMPLE)]
        if any(not a < b for a, b in zip(terms, terms[1:])):
            raise LimitHypothesisFails(f"{format_expr(seq)} does not increase strictly")

    def _restricted(self, e: RestrictedProd) -> Classification:
        if not isinstance(e.tail, ExampleSeq):
            raise LimitHypothesisFails(
                "a restricted product needs factor ranks increasing strictly to a limit; give a seq(...) tail"
            )
        self._check_increasing(e.tail)
        limit = e.tail.limit
        for f in e.head:
            c = self.classify(f)
            if not c.rank < limit:
                raise LimitHypothesisFails(f"head factor {format_expr(f)} has rank {format_ordinal(c.rank)} >= {format_ordinal(limit)}")
        return Classification(limit, False)

    def is_alpha_cli(self, e: GroupExpr, alpha: Ordinal) -> bool:
        return self.classify(e).is_alpha_cli(alpha)

    def is_L_alpha_cli(self, e: GroupExpr, alpha: Ordinal) -> bool:
        return self.classify(e).is_L_alpha_cli(alpha)

    def verdicts(self, e: GroupExpr, alpha: Ordinal) -> Dict[str, Any]:
        c = self.classify(e)
        cli, l_cli = c.is_alpha_cli(alpha), c.is_L_alpha_cli(alpha)
        # L-a-CLI groups are (a+1)-CLI
        if l_cli and not c.is_alpha_cli(add(alpha, ONE)):
            raise ExpressionError(f"inconsistent classification {c} at {format_ordinal(alpha)}")
        a = format_ordinal(alpha)
        if cli:
            summary = f"{a}-CLI"
        elif l_cli:
            summary = f"L-{a}-CLI, not {a}-CLI"
        else:
            summary = f"not L-{a}-CLI"
        return {
            "alpha": a,
            "alpha_cli": cli,
            "L_alpha_cli": l_cli,
            "summary": summary,
        }


rank_calculus = RankCalculus()


def classify(e: GroupExpr) -> Classification:
    return rank_calculus.classify(e)
