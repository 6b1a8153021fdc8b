# Symbolic expressions and their rank calculus
from app.symbolic.calculus import Classification, classify, rank_calculus
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
from app.symbolic.hierarchy import build_example, describe_examples
from app.symbolic.truncate import truncate
