import pytest

from app.dsl.spec_parser import format_chain, load_spec, parse_spec, print_spec
from app.errors import DslSyntaxError, DuplicateName, UnknownName, ValidationError
from app.groups.chain import rho_profile
from app.groups.constructions import s3_chain
from app.ordinals.cnf import OMEGA
from app.symbolic.calculus import Classification, classify
from app.symbolic.expr import Atom, ExampleSeq, PowInf, ProdInf, RestrictedProd, Wreath

SPEC = """
# the symmetric group on three points
chain S3deg3 = [ (0 1 2),(0 1) ] > [ (0 1 2) ] > [ ]
chain C4 degree 4 = [ [1,2,3,0] ] > [ ]

group W = wreath(powinf(atom(Z2)))
group H = prodinf(atom(S3deg3), W; seq(G, w))
group R = restricted(C4, seq(G, w*2))
group P = prod(W, H, trivial, Z)   # mixed product
group E = example(G, w+1)
"""


def test_chain_statements():
    spec = parse_spec(SPEC)
    assert spec.chains["S3deg3"] == s3_chain()
    assert spec.chains["S3deg3"].degree == 3
    assert [str(r) for r in rho_profile(spec.chains["S3deg3"])] == ["0", "1", "2"]
    assert spec.chains["C4"].orders() == [4, 1]


def test_group_statements():
    spec = parse_spec(SPEC)
    assert spec.groups["W"] == Wreath(PowInf(Atom("Z2", None)))
    h = spec.groups["H"]
    assert isinstance(h, ProdInf)
    assert h.head == (Atom("S3deg3", None), spec.groups["W"])
    assert h.tail == ExampleSeq("G", OMEGA)
    r = spec.groups["R"]
    assert isinstance(r, RestrictedProd)
    assert r.head == (Atom("C4", None),)
    assert classify(spec.groups["W"]) == Classification(1, False)
    assert classify(h) == Classification(OMEGA, True)
    assert str(classify(spec.groups["E"])) == "rank w+1, not tight"
    assert spec.names() == ["S3deg3", "C4", "W", "H", "R", "P", "E"]


def test_prodinf_without_separator_uses_last_item_as_tail():
    spec = parse_spec("group A = prodinf(Z2, S3)\ngroup B = prodinf(seq(H, w))\ngroup C = restricted(Z2, seq(G, w))")
    assert spec.groups["A"].head == (Atom("Z2", None),)
    assert spec.groups["A"].tail == Atom("S3", None)
    assert spec.groups["B"].head == ()
    assert spec.groups["C"].tail == ExampleSeq("G", OMEGA)


def test_forward_references():
    spec = parse_spec("group A = powinf(B)\ngroup B = wreath(Z2)")
    assert spec.groups["A"] == PowInf(Wreath(Atom("Z2", None)))


def test_lookup():
    spec = parse_spec(SPEC)
    assert spec.lookup("S3deg3") is spec.chains["S3deg3"]
    assert spec.lookup("S3") == s3_chain()
    assert spec.lookup("W") is spec.groups["W"]
    assert spec.expr("C4") == Atom("C4", None)
    with pytest.raises(UnknownName):
        spec.lookup("nope")
    with pytest.raises(ValidationError):
        spec.chain("W")


def test_unknown_names():
    with pytest.raises(UnknownName):
        parse_spec("group A = powinf(B)")
    with pytest.raises(UnknownName):
        parse_spec("group A = atom(Missing)")


def test_duplicate_names():
    with pytest.raises(DuplicateName):
        parse_spec("group A = trivial\ngroup A = Z")
    with pytest.raises(DuplicateName):
        parse_spec("chain Z2 = [ (0 1) ] > [ ]")


def test_cyclic_definitions():
    with pytest.raises(ValidationError, match="cyclic"):
        parse_spec("group A = powinf(B)\ngroup B = prod(A)")
    with pytest.raises(ValidationError):
        parse_spec("group A = powinf(A)")


def test_syntax_errors_carry_positions():
    with pytest.raises(DslSyntaxError) as info:
        parse_spec("chain A = [ (0 1) ]\ngroup B = wreath(")
    assert info.value.line == 2
    with pytest.raises(DslSyntaxError):
        parse_spec("group B = example(G, w^)")
    with pytest.raises(DslSyntaxError):
        parse_spec("grop B = trivial")


def test_validation_errors():
    with pytest.raises(ValidationError):
        parse_spec("chain Bad = [ (0 1) ] > [ (0 1 2) ] > [ ]")
    with pytest.raises(ValidationError):
        parse_spec("chain Bad = [ (0 1) ]")
    with pytest.raises(ValidationError):
        parse_spec("group A = wreath(trivial)")
    with pytest.raises(ValidationError):
        parse_spec("group A = restricted(Z2, Z2)")
    with pytest.raises(ValidationError):
        parse_spec("group A = seq(G, 3)")
    with pytest.raises(ValidationError):
        parse_spec("group A = trivial\ngroup B = atom(A)")
    assert "A" in parse_spec("group A = wreath(trivial)", validate=False).groups


def test_print_round_trip():
    spec = parse_spec(SPEC)
    text = print_spec(spec)
    again = parse_spec(text)
    assert again.chains == spec.chains
    assert again.groups == spec.groups
    assert print_spec(again) == text


def test_format_chain():
    line = format_chain("S3deg3", s3_chain())
    assert line == "chain S3deg3 degree 3 = [ (0 1 2), (0 1) ] > [ (0 1 2) ] > [ ]"


def test_empty_spec_and_load(tmp_path):
    assert parse_spec("").names() == []
    path = tmp_path / "groups.spec"
    path.write_text(SPEC, encoding="utf-8")
    assert load_spec(str(path)).names() == parse_spec(SPEC).names()
