import json

import pytest
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from app.errors import (
    CycleDetected,
    DanglingParent,
    DuplicateNode,
    LevelMismatch,
    MapNotTotal,
    NodeNotFound,
    TreeError,
    WeightOnInternalNode,
)
from app.orbits.eqseq import make_eqseq, orbit_tree
from app.ordinals.cnf import OMEGA, Ordinal, add, limit_part, parse_ordinal, sup
from app.trees.export import tree_from_json, tree_to_dot, tree_to_json, tree_to_records
from app.trees.wftree import (
    EMPTY_TREE,
    check_order_preserving,
    height,
    level,
    level_subtree,
    levels,
    node_rank,
    product_tree,
    subtree_at,
    tree_rank,
    validate_tree,
)


def path(length):
    return validate_tree([{"id": i, "level": i, "parent": i - 1 if i else None} for i in range(length)])


def sample_tree():
    # 0 has children 1 and 2; 2 has child 3; 4 is a second root
    return validate_tree([
        {"id": 0, "level": 0, "parent": None},
        {"id": 1, "level": 1, "parent": 0},
        {"id": 2, "level": 1, "parent": 0},
        {"id": 3, "level": 2, "parent": 2},
        {"id": 4, "level": 0, "parent": None},
    ])


def test_ranks():
    tree = sample_tree()
    assert node_rank(tree, 3) == 0
    assert node_rank(tree, 2) == 1
    assert node_rank(tree, 0) == 2
    assert node_rank(tree, 4) == 0
    assert tree_rank(tree) == 3
    assert tree_rank(EMPTY_TREE) == 0
    assert tree_rank(path(4)) == 4


def test_levels_and_height():
    tree = sample_tree()
    assert levels(tree) == {0: [0, 4], 1: [1, 2], 2: [3]}
    assert level(tree, 5) == []
    assert height(tree) == 3
    assert height(EMPTY_TREE) == 0


def test_validation_errors():
    with pytest.raises(DuplicateNode):
        validate_tree([{"id": 0, "level": 0}, {"id": 0, "level": 0}])
    with pytest.raises(DanglingParent):
        validate_tree([{"id": 1, "level": 1, "parent": 7}])
    with pytest.raises(CycleDetected):
        validate_tree([{"id": 0, "level": 1, "parent": 1}, {"id": 1, "level": 1, "parent": 0}])
    with pytest.raises(LevelMismatch):
        validate_tree([{"id": 0, "level": 1}])
    with pytest.raises(LevelMismatch):
        validate_tree([{"id": 0, "level": 0}, {"id": 1, "level": 2, "parent": 0}])
    with pytest.raises(WeightOnInternalNode):
        validate_tree([{"id": 0, "level": 0, "weight": "w"}, {"id": 1, "level": 1, "parent": 0}])
    with pytest.raises(TreeError):
        validate_tree([{"id": 0, "level": -1}])
    with pytest.raises(NodeNotFound):
        sample_tree().node(99)


def test_weighted_terminals():
    tree = validate_tree([
        {"id": 0, "level": 0},
        {"id": 1, "level": 1, "parent": 0, "weight": "w"},
        {"id": 2, "level": 1, "parent": 0, "weight": 3},
    ])
    assert node_rank(tree, 1) == OMEGA
    assert node_rank(tree, 0) == add(OMEGA, Ordinal.of(1))
    assert tree_rank(tree) == parse_ordinal("w+2")


def test_subtree_at():
    tree = sample_tree()
    branch = subtree_at(tree, 2)
    assert len(branch) == 2
    assert tree_rank(branch) == node_rank(tree, 2) + 1
    assert subtree_at(tree, None).is_empty
    assert subtree_at(tree, 42).is_empty


def test_level_subtree_plain():
    tree = path(5)
    assert tree_rank(level_subtree(tree, [0, 2, 4])) == 3
    assert tree_rank(level_subtree(tree, [1, 3])) == 2
    assert level_subtree(tree, []).is_empty
    with pytest.raises(TreeError):
        level_subtree(tree, [2, 1])


def test_level_subtree_keeps_limit_part():
    tree = validate_tree([
        {"id": 0, "level": 0},
        {"id": 1, "level": 1, "parent": 0},
        {"id": 2, "level": 2, "parent": 1, "weight": "w+2"},
    ])
    for indices in ([0], [1], [0, 2], [3], [0, 1, 2, 3]):
        small = level_subtree(tree, indices)
        assert tree_rank(small) <= tree_rank(tree)
        assert limit_part(tree_rank(small)) == limit_part(tree_rank(tree))


def test_order_preserving_report():
    tree = sample_tree()
    identity = {i: i for i in tree.ids}
    report = check_order_preserving(identity, tree, tree, lipschitz=True)
    assert report.is_isomorphism
    assert report.ok

    small = path(2)
    into = check_order_preserving({0: 0, 1: 2}, small, tree, lipschitz=True)
    assert into.is_embedding
    assert not into.bijective
    assert into.rank_bound_holds

    backwards = check_order_preserving({0: 2, 1: 0}, small, tree)
    assert not backwards.order_preserving
    assert backwards.problems

    with pytest.raises(MapNotTotal):
        check_order_preserving({0: 0}, small, tree)


def test_product_tree_rank_is_max():
    left, right = path(3), sample_tree()
    assert tree_rank(product_tree(left, right)) == 3
    assert tree_rank(product_tree(path(1), path(4))) == 4
    assert product_tree(EMPTY_TREE, EMPTY_TREE).is_empty


def test_json_round_trip_and_dot():
    tree = sample_tree()
    text = tree_to_json(tree)
    records = json.loads(text)
    assert records[0]["rank"] == "2"
    assert tree_from_json(text) == tree
    assert tree_from_json(json.dumps({"nodes": tree_to_records(tree)})) == tree

    dot = tree_to_dot(tree, "sample")
    assert dot.startswith('digraph "sample" {')
    assert '"0" -> "1";' in dot
    assert "rank 2" in dot


@st.composite
def random_trees(draw, max_nodes=25):
    size = draw(st.integers(0, max_nodes))
    records = []
    for i in range(size):
        if i == 0 or draw(st.booleans()) and draw(st.integers(0, 5)) == 0:
            records.append({"id": i, "level": 0, "parent": None})
        else:
            parent = records[draw(st.integers(0, i - 1))]
            records.append({"id": i, "level": parent["level"] + 1, "parent": parent["id"]})
    return validate_tree(records)


@hsettings(max_examples=50)
@given(random_trees())
def test_rank_recursion(tree):
    for s in tree.ids:
        children = tree.children(s)
        expected = max((tree_rank(subtree_at(tree, t)) for t in children), default=Ordinal.of(0)) + 1
        assert tree_rank(subtree_at(tree, s)) == expected


@hsettings(max_examples=50)
@given(random_trees(), st.lists(st.integers(0, 8), unique=True))
def test_level_subtree_never_raises_rank(tree, indices):
    assert tree_rank(level_subtree(tree, sorted(indices))) <= tree_rank(tree)


@hsettings(max_examples=50)
@given(random_trees())
def test_level_subtree_bounds(tree):
    total = tree_rank(tree)
    for k in range(height(tree) + 1):
        best = max((node_rank(tree, s) + 1 for s in level(tree, k)), default=Ordinal.of(0))
        assert best <= total <= best + k


WEIGHTS = ["3", "w", "w+2", "w*2", "w^2+1"]


@st.composite
def weighted_trees(draw, max_nodes=15):
    tree = draw(random_trees(max_nodes))
    records = [{"id": n.id, "level": n.level, "parent": n.parent} for n in tree]
    for record in records:
        if tree.is_terminal(record["id"]) and draw(st.booleans()):
            record["weight"] = draw(st.sampled_from(WEIGHTS))
    return validate_tree(records)


def level_sup(tree, k):
    return sup(node_rank(tree, s) + 1 for s in level(tree, k))


@hsettings(max_examples=50)
@given(st.one_of(random_trees(), weighted_trees()))
def test_level_sup_has_the_limit_part_of_the_rank(tree):
    total = tree_rank(tree)
    shallowest = min((n.level for n in tree if n.weight is not None), default=height(tree))
    for k in range(shallowest + 1):
        best = level_sup(tree, k)
        assert best <= total <= best + k
        assert limit_part(best) == limit_part(total)


@hsettings(max_examples=50)
@given(st.one_of(random_trees(), weighted_trees()))
def test_deep_subtree_pushes_rank_up(tree):
    total = tree_rank(tree)
    for k in range(height(tree) + 1):
        for s in level(tree, k):
            assert add(node_rank(tree, s) + 1, Ordinal.of(k)) <= total


def test_level_clauses_on_a_weighted_path():
    tree = validate_tree([
        {"id": 0, "level": 0},
        {"id": 1, "level": 1, "parent": 0},
        {"id": 2, "level": 2, "parent": 1, "weight": "w*2"},
    ])
    assert tree_rank(tree) == parse_ordinal("w*2+3")
    assert level_sup(tree, 2) == parse_ordinal("w*2+1")
    assert limit_part(level_sup(tree, 2)) == limit_part(tree_rank(tree))
    assert add(level_sup(tree, 2), Ordinal.of(2)) == tree_rank(tree)


def test_dot_keeps_every_class_member():
    points = list(range(30))
    tree = orbit_tree(make_eqseq(points, [[points], [[p] for p in points]]))
    dot = tree_to_dot(tree)
    assert "{" + ",".join(str(p) for p in points) + "}" in dot
    assert "..." not in dot

    quoted = validate_tree([{"id": 0, "level": 0, "label": 'say "hi"'}])
    assert 'say \\"hi\\"' in tree_to_dot(quoted)
