"""Finite well-founded leveled forests with ordinal ranks.

Terminals may carry an ordinal weight that stands in for a pruned, possibly
infinite, subtree: a weighted terminal has rank equal to its weight. Weight 0
(or no weight) gives the usual rank recursion.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field
from pydantic import ValidationError as PydanticValidationError

from app.errors import (
    CycleDetected,
    DanglingParent,
    DuplicateNode,
    EmbeddingCheckFailed,
    LevelMismatch,
    MapNotTotal,
    NodeNotFound,
    TreeError,
    WeightOnInternalNode,
)
from app.ordinals.cnf import ONE, ZERO, Ordinal, add, compare, finite_part, limit_part, parse_ordinal, sup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Node:
    id: int
    level: int
    parent: Optional[int] = None
    weight: Optional[Ordinal] = None
    label: Any = None

    @property
    def weight_or_zero(self) -> Ordinal:
        return self.weight if self.weight is not None else ZERO


class NodeRecord(BaseModel):
    """One entry of the JSON tree format."""

    id: int
    level: int = Field(ge=0)
    parent: Optional[int] = None
    weight: Optional[str] = None
    label: Optional[str] = None

    def to_node(self) -> Node:
        weight = parse_ordinal(self.weight) if self.weight is not None else None
        return Node(self.id, self.level, self.parent, weight, self.label)


RawNode = Union[Node, NodeRecord, Mapping[str, Any]]


class WfTree:
    """A validated forest. Build instances with :func:`validate_tree`."""

    def __init__(self, nodes: Dict[int, Node], children: Dict[int, Tuple[int, ...]], ranks: Dict[int, Ordinal]):
        self._nodes = nodes
        self._children = children
        self._ranks = ranks
        self.roots: Tuple[int, ...] = tuple(i for i, n in nodes.items() if n.parent is None)

    def __len__(self) -> int:
        return len(self._nodes)

    def __iter__(self) -> Iterator[Node]:
        return iter(sorted(self._nodes.values(), key=lambda n: (n.level, n.id)))

    def __contains__(self, node_id: object) -> bool:
        return node_id in self._nodes

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WfTree):
            return NotImplemented
        return self._nodes == other._nodes

    def __repr__(self) -> str:
        return f"WfTree(nodes={len(self)}, rank={tree_rank(self)})"

    @property
    def is_empty(self) -> bool:
        return not self._nodes

    @property
    def ids(self) -> List[int]:
        return [n.id for n in self]

    def node(self, node_id: int) -> Node:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise NodeNotFound(f"node {node_id} is not in the tree") from None

    def children(self, node_id: int) -> Tuple[int, ...]:
        self.node(node_id)
        return self._children.get(node_id, ())

    def is_terminal(self, node_id: int) -> bool:
        return not self.children(node_id)

    def rank_of(self, node_id: int) -> Ordinal:
        self.node(node_id)
        return self._ranks[node_id]

    def ancestors(self, node_id: int) -> List[int]:
        """Strict ancestors, nearest first."""
        chain = []
        parent = self.node(node_id).parent
        while parent is not None:
            chain.append(parent)
            parent = self._nodes[parent].parent
        return chain

    def ancestor_at(self, node_id: int, level: int) -> Optional[int]:
        current: Optional[int] = node_id
        while current is not None and self._nodes[current].level > level:
            current = self._nodes[current].parent
        if current is None or self._nodes[current].level != level:
            return None
        return current

    def is_below(self, upper: int, lower: int) -> bool:
        """True when upper < lower in the tree order (upper a strict ancestor)."""
        return upper in self.ancestors(lower)

    def nodes(self) -> List[Node]:
        return list(self)


def _coerce(raw: RawNode) -> Node:
    if isinstance(raw, Node):
        return raw
    if isinstance(raw, NodeRecord):
        return raw.to_node()
    record = dict(raw)
    weight = record.pop("weight", None)
    label = record.pop("label", None)
    try:
        node = NodeRecord(**record).to_node()
    except PydanticValidationError as e:
        raise TreeError(f"malformed node record {raw!r}: {e}") from e
    if weight is not None:
        weight = parse_ordinal(weight) if isinstance(weight, str) else Ordinal.of(weight)
    return replace(node, weight=weight, label=label)


def validate_tree(raw: Iterable[RawNode]) -> WfTree:
    """Check the tree axioms and compute every node rank.

    Checks run in a fixed order: duplicate ids, dangling parents, cycles,
    levels, then weights on internal nodes.
    """
    nodes: Dict[int, Node] = {}
    for item in raw:
        node = _coerce(item)
        if node.id in nodes:
            raise DuplicateNode(f"node id {node.id} appears twice")
        nodes[node.id] = node

    for node in nodes.values():
        if node.parent is not None and node.parent not in nodes:
            raise DanglingParent(f"node {node.id} points to missing parent {node.parent}")

    state: Dict[int, int] = {}
    for start in nodes:
        path = []
        current: Optional[int] = start
        while current is not None and state.get(current) != 2:
            if state.get(current) == 1:
                raise CycleDetected(f"parent pointers loop through node {current}")
            state[current] = 1
            path.append(current)
            current = nodes[current].parent
        for visited in path:
            state[visited] = 2

    children: Dict[int, List[int]] = {}
    for node in nodes.values():
        if node.parent is None:
            if node.level != 0:
                raise LevelMismatch(f"root {node.id} has level {node.level}, expected 0")
            continue
        parent = nodes[node.parent]
        if node.level != parent.level + 1:
            raise LevelMismatch(
                f"node {node.id} has level {node.level} but its parent {parent.id} has level {parent.level}"
            )
        children.setdefault(node.parent, []).append(node.id)

    for node in nodes.values():
        if node.id in children and node.weight is not None and not node.weight.is_zero:
            raise WeightOnInternalNode(f"node {node.id} has children and weight {node.weight}")

    ranks: Dict[int, Ordinal] = {}
    for node in sorted(nodes.values(), key=lambda n: -n.level):
        kids = children.get(node.id)
        if kids:
            ranks[node.id] = sup(add(ranks[c], ONE) for c in kids)
        else:
            ranks[node.id] = node.weight_or_zero

    frozen_children = {k: tuple(sorted(v)) for k, v in children.items()}
    return WfTree(nodes, frozen_children, ranks)


EMPTY_TREE = validate_tree([])


def node_rank(tree: WfTree, node_id: int) -> Ordinal:
    return tree.rank_of(node_id)


def tree_rank(tree: WfTree) -> Ordinal:
    return sup(add(tree.rank_of(r), ONE) for r in tree.roots)


def levels(tree: WfTree) -> Dict[int, List[int]]:
    """L_n(T) for every populated level n."""
    result: Dict[int, List[int]] = {}
    for node in tree:
        result.setdefault(node.level, []).append(node.id)
    return result


def level(tree: WfTree, n: int) -> List[int]:
    return levels(tree).get(n, [])


def height(tree: WfTree) -> int:
    return 1 + max((n.level for n in tree), default=-1)


def subtree_at(tree: WfTree, node_id: Optional[int]) -> WfTree:
    if node_id is None or node_id not in tree:
        return EMPTY_TREE
    top = tree.node(node_id)
    keep = [node_id]
    stack = [node_id]
    while stack:
        for child in tree.children(stack.pop()):
            keep.append(child)
            stack.append(child)
    shifted = []
    for i in keep:
        node = tree.node(i)
        parent = None if i == node_id else node.parent
        shifted.append(replace(node, level=node.level - top.level, parent=parent))
    return validate_tree(shifted)


def level_subtree(tree: WfTree, indices: Sequence[int]) -> WfTree:
    """The forest on the selected levels, with the induced order.

    A node at level indices[j] moves to level j under its ancestor at level
    indices[j-1]. Weighted terminals are carried along by reading the index
    sequence as continuing one level at a time after its last entry: the part
    of a weight that reaches into selected levels is kept, the rest is cut, and
    the limit part of a weight always survives. Terminals off the selected
    levels hand their weight to a stand-in terminal on the next selected level.
    """
    indices = list(indices)
    if any(i < 0 for i in indices) or any(b <= a for a, b in zip(indices, indices[1:])):
        raise TreeError(f"indices {indices} must be strictly increasing naturals")
    if not indices:
        return EMPTY_TREE
    position = {n: j for j, n in enumerate(indices)}
    last = indices[-1]

    def extended_position(lvl: int) -> Optional[int]:
        if lvl in position:
            return position[lvl]
        if lvl > last:
            return len(indices) - 1 + (lvl - last)
        return None

    def new_parent(node_id: int, j: int) -> Optional[int]:
        if j == 0:
            return None
        return tree.ancestor_at(node_id, indices[j - 1])

    result: List[Node] = []
    handled = set()
    next_id = 1 + max(tree.ids, default=-1)

    for node in tree:
        weighted = node.weight is not None and not node.weight.is_zero and tree.is_terminal(node.id)
        if not weighted:
            continue
        handled.add(node.id)
        lam, m = limit_part(node.weight), finite_part(node.weight)
        below = [n for n in indices if n < node.level]
        floor = below[-1] if below else -1
        anchor = next(n for n in indices + [last + 1] if n > floor)
        depth_reach = node.level + m
        count = sum(1 for lvl in range(anchor, depth_reach + 1) if extended_position(lvl) is not None)
        if count >= 1:
            weight = add(lam, Ordinal.of(count - 1))
        elif not lam.is_zero:
            weight = lam
        else:
            continue
        j = extended_position(anchor)
        parent = tree.ancestor_at(node.id, floor) if floor >= 0 else None
        if anchor == node.level:
            result.append(replace(node, level=j, parent=parent, weight=weight))
        else:
            result.append(Node(next_id, j, parent, weight, node.label))
            logger.debug(f"stand-in {next_id} at level {j} for weighted terminal {node.id}")
            next_id += 1

    for node in tree:
        if node.id in handled or node.level not in position:
            continue
        j = position[node.level]
        result.append(replace(node, level=j, parent=new_parent(node.id, j)))

    return validate_tree(result)


@dataclass
class MapReport:
    order_preserving: bool
    injective: bool
    lipschitz: bool
    reflecting: bool
    bijective: bool
    weights_dominated: bool
    source_rank: Ordinal
    target_rank: Ordinal
    rank_bound_holds: Optional[bool] = None
    lipschitz_required: bool = False
    problems: List[str] = field(default_factory=list)

    @property
    def is_embedding(self) -> bool:
        """Injective, order preserving and level preserving."""
        return self.order_preserving and self.injective and self.lipschitz

    @property
    def is_isomorphism(self) -> bool:
        return self.is_embedding and self.reflecting and self.bijective

    @property
    def ok(self) -> bool:
        if self.lipschitz_required and not self.lipschitz:
            return False
        return self.order_preserving and self.rank_bound_holds is not False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "order_preserving": self.order_preserving,
            "injective": self.injective,
            "lipschitz": self.lipschitz,
            "reflecting": self.reflecting,
            "bijective": self.bijective,
            "weights_dominated": self.weights_dominated,
            "source_rank": str(self.source_rank),
            "target_rank": str(self.target_rank),
            "rank_bound_holds": self.rank_bound_holds,
            "problems": list(self.problems),
        }


def check_order_preserving(
    mapping: Mapping[int, int], source: WfTree, target: WfTree, lipschitz: bool = False
) -> MapReport:
    """Classify a node map between two trees.

    When the map is order preserving and every weighted terminal lands on a
    node of at least its weight, rank(source) <= rank(target) must hold; a
    violation raises EmbeddingCheckFailed.
    """
    missing = [i for i in source.ids if i not in mapping]
    if missing:
        raise MapNotTotal(f"map is undefined on nodes {missing}")
    outside = [i for i in source.ids if mapping[i] not in target]
    if outside:
        raise MapNotTotal(f"nodes {outside} map outside the target tree")

    problems: List[str] = []
    preserving = True
    reflecting = True
    ids = source.ids
    for lower in ids:
        upper_set = set(source.ancestors(lower))
        for upper in ids:
            above_in_source = upper in upper_set
            above_in_target = target.is_below(mapping[upper], mapping[lower])
            if above_in_source and not above_in_target:
                preserving = False
                problems.append(f"{upper} < {lower} is not preserved")
            if above_in_target and not above_in_source:
                reflecting = False

    images = [mapping[i] for i in ids]
    injective = len(set(images)) == len(images)
    level_ok = all(target.node(mapping[i]).level == source.node(i).level for i in ids)
    bijective = injective and set(images) == set(target.ids)

    dominated = True
    for i in ids:
        weight = source.node(i).weight
        if weight is not None and compare(weight, target.rank_of(mapping[i])) > 0:
            dominated = False
            problems.append(f"weight {weight} of {i} exceeds the rank of its image")

    source_rank, target_rank = tree_rank(source), tree_rank(target)
    bound = None
    if preserving and dominated:
        bound = compare(source_rank, target_rank) <= 0
        if not bound:
            raise EmbeddingCheckFailed(
                f"order preserving map with rank {source_rank} > {target_rank}"
            )
    if lipschitz and not level_ok:
        problems.append("map does not preserve levels")

    return MapReport(
        order_preserving=preserving,
        injective=injective,
        lipschitz=level_ok,
        reflecting=reflecting,
        bijective=bijective,
        weights_dominated=dominated,
        source_rank=source_rank,
        target_rank=target_rank,
        rank_bound_holds=bound,
        lipschitz_required=lipschitz,
        problems=problems,
    )


@dataclass(frozen=True)
class Exhausted:
    """Product coordinate whose side has run out of nodes below ``below``."""

    below: Optional[int] = None

    def __str__(self) -> str:
        return "⊥" if self.below is None else f"⊥{self.below}"


Coordinate = Union[int, Exhausted]


def product_tree(left: WfTree, right: WfTree) -> WfTree:
    """Level-wise product forest with rank max(rank(left), rank(right)).

    Pairs (x, y) sit at a common level; a side that has no node there is an
    Exhausted marker remembering the last real node above it. A pair touching
    a weighted terminal becomes a terminal weighted by the larger component rank.
    """

    def options(tree: WfTree, coord: Optional[Coordinate]) -> List[Coordinate]:
        if coord is None:
            return list(tree.roots) + [Exhausted()]
        if isinstance(coord, Exhausted):
            return [coord]
        return list(tree.children(coord)) + [Exhausted(coord)]

    def rank(tree: WfTree, coord: Coordinate) -> Ordinal:
        return ZERO if isinstance(coord, Exhausted) else tree.rank_of(coord)

    def weighted(tree: WfTree, coord: Coordinate) -> bool:
        if isinstance(coord, Exhausted):
            return False
        weight = tree.node(coord).weight
        return weight is not None and not weight.is_zero

    nodes: List[Node] = []
    frontier: List[Tuple[Optional[int], int, Optional[Coordinate], Optional[Coordinate]]] = [(None, 0, None, None)]
    next_id = 0
    while frontier:
        parent, lvl, x, y = frontier.pop(0)
        for cx in options(left, x):
            for cy in options(right, y):
                if isinstance(cx, Exhausted) and isinstance(cy, Exhausted):
                    continue
                node_id = next_id
                next_id += 1
                label = (str(cx) if isinstance(cx, Exhausted) else cx, str(cy) if isinstance(cy, Exhausted) else cy)
                if weighted(left, cx) or weighted(right, cy):
                    weight = sup([rank(left, cx), rank(right, cy)])
                    nodes.append(Node(node_id, lvl, parent, weight, label))
                    continue
                nodes.append(Node(node_id, lvl, parent, None, label))
                frontier.append((node_id, lvl + 1, cx, cy))
    logger.debug(f"product tree of {len(left)} x {len(right)} nodes has {len(nodes)} nodes")
    return validate_tree(nodes)
