"""Decreasing sequences of partitions and their orbit trees.

A sequence P_0, P_1, ..., P_N of partitions of a finite point set is valid when
each P_{n+1} refines P_n and P_N is discrete. The orbit tree has one node
(n, C) for every non-singleton class C of P_n, below the node of the P_{n-1}
class containing C.
"""
import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, FrozenSet, Hashable, Iterable, List, Sequence, Tuple

from app.errors import NotAPartition, NotDecreasing, NotEventuallyDiscrete
from app.trees.wftree import Node, WfTree, validate_tree

logger = logging.getLogger(__name__)

Point = Hashable
Block = FrozenSet[Point]
Partition = Tuple[Block, ...]


def _block_key(block: Block) -> Any:
    return min(block)


@dataclass(frozen=True)
class EqSeq:
    points: Tuple[Point, ...]
    partitions: Tuple[Partition, ...]
    _lookup: Tuple[Dict[Point, Block], ...] = field(default=(), compare=False, repr=False)

    @property
    def depth(self) -> int:
        """Index N of the final (discrete) partition."""
        return len(self.partitions) - 1

    def partition(self, n: int) -> Partition:
        return self.partitions[min(n, self.depth)]

    def class_of(self, n: int, point: Point) -> Block:
        """[point]_{E_n}; levels past N read the final partition."""
        return self._lookup[min(n, self.depth)][point]

    def equivalent(self, n: int, x: Point, y: Point) -> bool:
        return y in self.class_of(n, x)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "points": list(self.points),
            "partitions": [[sorted(block) for block in p] for p in self.partitions],
        }


def make_eqseq(points: Iterable[Point], partitions: Sequence[Iterable[Iterable[Point]]]) -> EqSeq:
    point_list = list(points)
    point_set = frozenset(point_list)
    if len(point_set) != len(point_list):
        raise NotAPartition("point list contains duplicates")
    if not partitions:
        raise NotEventuallyDiscrete("no partitions given")

    canonical: List[Partition] = []
    lookups: List[Dict[Point, Block]] = []
    for n, raw in enumerate(partitions):
        blocks = [frozenset(b) for b in raw]
        lookup: Dict[Point, Block] = {}
        for block in blocks:
            if not block:
                raise NotAPartition(f"partition {n} has an empty class")
            for point in block:
                if point not in point_set:
                    raise NotAPartition(f"partition {n} mentions unknown point {point!r}")
                if point in lookup:
                    raise NotAPartition(f"point {point!r} lies in two classes of partition {n}")
                lookup[point] = block
        if len(lookup) != len(point_set):
            missing = sorted(point_set - set(lookup))
            raise NotAPartition(f"partition {n} misses points {missing}")
        canonical.append(tuple(sorted(blocks, key=_block_key)))
        lookups.append(lookup)

    for n in range(1, len(canonical)):
        for block in canonical[n]:
            outer = lookups[n - 1][next(iter(block))]
            if not block <= outer:
                raise NotDecreasing(f"class {sorted(block)} of partition {n} is not inside a class of partition {n - 1}")

    if any(len(block) > 1 for block in canonical[-1]):
        raise NotEventuallyDiscrete("the final partition is not discrete")

    return EqSeq(tuple(sorted(point_set)), tuple(canonical), tuple(lookups))


def eqseq_from_dict(data: Dict[str, Any]) -> EqSeq:
    """Read the JSON form {points: [...], partitions: [[[ids]...]...]}."""
    def point(value: Any) -> Point:
        return tuple(value) if isinstance(value, list) else value

    points = [point(p) for p in data.get("points", [])]
    partitions = [[[point(x) for x in block] for block in p] for p in data.get("partitions", [])]
    return make_eqseq(points, partitions)


def orbit_tree_index(seq: EqSeq) -> Tuple[WfTree, Dict[Tuple[int, Block], int]]:
    """The orbit tree together with the node id of every (n, C)."""
    index: Dict[Tuple[int, Block], int] = {}
    nodes: List[Node] = []
    for n, partition in enumerate(seq.partitions):
        for block in partition:
            if len(block) < 2:
                continue
            parent = None
            if n > 0:
                parent = index[(n - 1, seq.class_of(n - 1, next(iter(block))))]
            node_id = len(nodes)
            index[(n, block)] = node_id
            nodes.append(Node(node_id, n, parent, None, (n, block)))
    return validate_tree(nodes), index


def orbit_tree(seq: EqSeq) -> WfTree:
    return orbit_tree_index(seq)[0]


def product_seq(left: EqSeq, right: EqSeq) -> EqSeq:
    """Classes [(x, y)]_n = [x]_n x [y]_n, the shorter side padded with its final partition."""
    depth = max(left.depth, right.depth)
    points = [(x, y) for x, y in product(left.points, right.points)]
    partitions = []
    for n in range(depth + 1):
        partitions.append([
            [(x, y) for x, y in product(sorted(a), sorted(b))]
            for a in left.partition(n)
            for b in right.partition(n)
        ])
    logger.debug(f"product sequence on {len(points)} points, depth {depth}")
    return make_eqseq(points, partitions)


def discrete_seq(points: Iterable[Point]) -> EqSeq:
    points = list(points)
    return make_eqseq(points, [[[p] for p in points]])
