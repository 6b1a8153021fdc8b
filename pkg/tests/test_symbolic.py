import pytest

from app.config import settings
from app.errors import DepthBudgetExceeded, ExpressionError, LimitHypothesisFails, ValidationError, WreathOperandUnsupported
from app.groups.chain import rho, rho_profile, trivial_chain
from app.groups.constructions import s3_chain, z2_chain
from app.ordinals.cnf import OMEGA, ONE, Ordinal, add, omega_power, parse_ordinal
from app.symbolic.calculus import Classification, classify, rank_calculus
from app.symbolic.expr import (
    Atom,
    DiscreteInfinite,
    Example,
    ExampleKind,
    ExampleSeq,
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

Z2 = Atom("Z2", z2_chain())
ALPHAS = [Ordinal.of(0), ONE, Ordinal.of(2), Ordinal.of(3), OMEGA, add(OMEGA, ONE), omega_power(1, 2)]


def test_leaves():
    assert classify(Trivial()) == Classification(Ordinal.of(0), True)
    assert classify(Z2) == Classification(Ordinal.of(0), False)
    assert classify(Atom("one", trivial_chain())) == Classification(Ordinal.of(0), True)
    assert classify(DiscreteInfinite()) == Classification(Ordinal.of(0), False)
    assert classify(Example(ExampleKind.H, OMEGA)) == Classification(OMEGA, True)


def test_finite_products():
    g1 = Example(ExampleKind.G, ONE)
    h1 = Example(ExampleKind.H, ONE)
    assert classify(Prod(())) == Classification(Ordinal.of(0), True)
    assert classify(Prod((h1, Z2))) == Classification(ONE, True)
    assert classify(Prod((h1, g1))) == Classification(ONE, False)
    assert classify(Prod((Trivial(), Example(ExampleKind.G, OMEGA)))) == Classification(OMEGA, False)


def test_countable_powers():
    assert classify(PowInf(Z2)) == Classification(ONE, True)
    assert classify(PowInf(Trivial())) == Classification(Ordinal.of(0), True)
    assert classify(PowInf(Example(ExampleKind.H, ONE))) == Classification(ONE, True)
    assert classify(PowInf(Example(ExampleKind.G, ONE))) == Classification(Ordinal.of(2), True)


def test_infinite_products_with_head():
    tail = Example(ExampleKind.H, ONE)
    e = ProdInf((Example(ExampleKind.G, Ordinal.of(2)),), tail)
    assert classify(e) == Classification(Ordinal.of(2), False)
    e = ProdInf((Z2,), ExampleSeq(ExampleKind.G, OMEGA))
    assert classify(e) == Classification(OMEGA, True)
    e = ProdInf((Example(ExampleKind.G, OMEGA),), ExampleSeq(ExampleKind.G, OMEGA))
    assert classify(e) == Classification(OMEGA, False)


def test_wreath():
    assert classify(Wreath(PowInf(Z2))) == Classification(ONE, False)
    assert classify(Wreath(Z2)) == Classification(ONE, False)
    assert classify(Wreath(Example(ExampleKind.G, OMEGA))) == Classification(add(OMEGA, ONE), False)
    with pytest.raises(WreathOperandUnsupported):
        classify(Wreath(Trivial()))
    with pytest.raises(WreathOperandUnsupported):
        classify(Wreath(Example(ExampleKind.H, OMEGA)))


def test_restricted_products():
    seq = ExampleSeq(ExampleKind.G, OMEGA)
    assert classify(RestrictedProd((), seq)) == Classification(OMEGA, False)
    assert classify(RestrictedProd((Example(ExampleKind.H, Ordinal.of(5)),), seq)) == Classification(OMEGA, False)
    with pytest.raises(LimitHypothesisFails):
        classify(RestrictedProd((Example(ExampleKind.H, OMEGA),), seq))
    with pytest.raises(LimitHypothesisFails):
        classify(RestrictedProd((Z2, Z2)))


def test_example_sequences():
    seq = ExampleSeq(ExampleKind.G, omega_power(1, 2))
    assert [seq.index(i) for i in range(3)] == [OMEGA, add(OMEGA, ONE), add(OMEGA, Ordinal.of(2))]
    with pytest.raises(ExpressionError):
        ExampleSeq(ExampleKind.G, Ordinal.of(3))
    with pytest.raises(ExpressionError):
        classify(seq)


def test_hierarchy_witnesses():
    for alpha in ALPHAS:
        assert classify(build_example("H", alpha)) == Classification(alpha, True)
        assert classify(build_example("G", alpha)) == Classification(alpha, False)


def test_build_example_shapes():
    assert build_example("H", 0) == Trivial()
    assert build_example("G", 0) == Z2
    assert build_example("H", 1) == PowInf(Z2)
    assert build_example("G", 1) == Wreath(PowInf(Z2))
    assert format_expr(build_example("G", OMEGA)) == "restricted(seq(G, w))"
    assert format_expr(build_example("H", add(OMEGA, ONE))) == "powinf(restricted(seq(G, w)))"
    with pytest.raises(DepthBudgetExceeded):
        build_example("G", Ordinal.of(settings.example_max_steps + 1))


def test_verdicts():
    v = rank_calculus.verdicts(build_example("G", 1), ONE)
    assert v["summary"] == "L-1-CLI, not 1-CLI"
    assert v["L_alpha_cli"] and not v["alpha_cli"]
    v = rank_calculus.verdicts(build_example("H", 0), Ordinal.of(0))
    assert v["summary"] == "0-CLI"
    v = rank_calculus.verdicts(build_example("G", 2), ONE)
    assert v["summary"] == "not L-1-CLI"
    assert rank_calculus.is_alpha_cli(build_example("G", OMEGA), add(OMEGA, ONE))
    assert rank_calculus.is_L_alpha_cli(build_example("G", OMEGA), OMEGA)


def test_describe_examples():
    rows = describe_examples(OMEGA, [ExampleKind.H, ExampleKind.G])
    assert [r["kind"] for r in rows] == ["H", "G"]
    assert rows[0]["tight"] and not rows[1]["tight"]
    assert rows[1]["verdicts"]["summary"] == "L-w-CLI, not w-CLI"


def test_format_expr():
    e = ProdInf((Atom("S3", s3_chain()), DiscreteInfinite()), ExampleSeq(ExampleKind.H, parse_ordinal("w^2")))
    assert format_expr(e) == "prodinf(atom(S3), Z; seq(H, w^2))"
    assert str(Prod((Trivial(), Example(ExampleKind.G, omega_power(1, 2))))) == "prod(trivial, example(G, w*2))"


def test_truncate_leaves():
    assert truncate(Trivial(), 3, 2).order == 1
    assert truncate(Z2, 3, 2) == z2_chain()
    assert truncate(DiscreteInfinite(), 3, 4).orders() == [4, 1]
    assert truncate(Atom("S3", s3_chain()), 1, 1).orders() == [6, 1]
    with pytest.raises(ValidationError):
        truncate(Z2, 0, 1)
    with pytest.raises(ValidationError):
        truncate(Z2, 1, 0)
    with pytest.raises(ExpressionError):
        truncate(ExampleSeq(ExampleKind.G, OMEGA), 2, 2)


def test_truncate_first_examples():
    h1 = truncate(build_example("H", 1), 4, 2)
    g1 = truncate(build_example("G", 1), 4, 2)
    assert h1.orders() == [4, 2, 1]
    assert rho(h1) == 2
    assert rho(g1) == 3
    assert truncate(Example(ExampleKind.H, ONE), 3, 2).orders() == [4, 2, 1]


def test_wreath_shadows_grow():
    power = PowInf(Z2)
    shadows = [truncate(Wreath(power), 4, b) for b in (1, 2, 3)]
    assert [g.order for g in shadows] == [2, 32, 1536]
    assert [rho(g) for g in shadows] == [2, 3, 4]
    assert rho(shadows[-1]) > rho(truncate(power, 4, 3))


def test_staggered_shadow_profile():
    group = truncate(PowInf(Z2), 4, 3)
    assert [str(r) for r in rho_profile(group)] == ["0", "1", "2", "3"]


def test_truncate_limit_examples():
    h = truncate(build_example("H", OMEGA), 3, 2)
    g = truncate(build_example("G", OMEGA), 3, 2)
    assert h.order == g.order
    assert g.length <= 3
    assert truncate(Prod((Z2, Z2)), 2, 2).orders() == [4, 1]
