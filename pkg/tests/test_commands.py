import json

import pytest

from app.dsl.spec_parser import parse_spec
from app.errors import IndexOutOfRange, UnknownName, ValidationError
from app.handlers.commands import commands
from app.ordinals.cnf import OMEGA, ONE

SPEC = parse_spec(
    """
chain S3deg3 = [ (0 1 2), (0 1) ] > [ (0 1 2) ] > [ ]
group W = wreath(powinf(Z2))
group H1 = example(H, 1)
"""
)


def test_rank_of_chain():
    result = commands.cmd_rank(SPEC, "S3deg3")
    assert result["kind"] == "chain"
    assert result["orders"] == [6, 3, 1]
    assert result["rho_k"] == ["0", "1", "2"]
    assert result["rho"] == "2"
    assert result["tsi"]["all_normal"]


def test_rank_of_expression():
    result = commands.cmd_rank(SPEC, "W", ONE)
    assert result["kind"] == "expression"
    assert result["expr"] == "wreath(powinf(atom(Z2)))"
    assert result["rank"] == "1"
    assert not result["tight"]
    assert result["verdicts"]["summary"] == "L-1-CLI, not 1-CLI"
    with pytest.raises(UnknownName):
        commands.cmd_rank(SPEC, "missing")


def test_classify_defaults_alpha_to_rank():
    result = commands.classify(SPEC.expr("H1"))
    assert result["rank"] == "1"
    assert result["tight"]
    assert result["verdicts"]["summary"] == "1-CLI"


def test_tree_json_and_dot():
    result = commands.cmd_tree(SPEC, "S3deg3", 2)
    assert result["nodes"] == 3
    assert result["rank"] == "2"
    assert len(json.loads(result["output"])) == 3
    dot = commands.cmd_tree(SPEC, "S3deg3", 1, "dot")["output"]
    assert dot.startswith('digraph "S3deg3_k1"')
    with pytest.raises(ValidationError):
        commands.cmd_tree(SPEC, "S3deg3", 1, "svg")
    with pytest.raises(ValidationError):
        commands.cmd_tree(SPEC, "W", 1)
    with pytest.raises(IndexOutOfRange):
        commands.cmd_tree(SPEC, "S3deg3", 3)


def test_truncate_writes_a_spec(tmp_path):
    out = tmp_path / "h1.spec"
    result = commands.cmd_truncate(SPEC, "H1", 3, 2, str(out))
    assert result["name"] == "H1_d3_b2"
    assert result["orders"] == [4, 2, 1]
    written = out.read_text(encoding="utf-8")
    assert written == result["text"]
    assert parse_spec(written).chains["H1_d3_b2"].orders() == [4, 2, 1]
    with pytest.raises(ValidationError):
        commands.cmd_truncate(SPEC, "H1", 3, 0)


def test_examples():
    result = commands.cmd_examples(OMEGA)
    assert result["alpha"] == "w"
    assert [row["kind"] for row in result["examples"]] == ["H", "G"]
    only = commands.cmd_examples(OMEGA, "G")
    assert len(only["examples"]) == 1
    assert only["examples"][0]["verdicts"]["summary"] == "L-w-CLI, not w-CLI"


def test_verify_with_spec_pool():
    report = commands.cmd_verify(SPEC, seed=3, trials=2, only=["rho-monotone", "spec-expressions"])
    assert report["ok"]
    assert [c["name"] for c in report["checks"]] == ["rho-monotone", "spec-expressions"]
