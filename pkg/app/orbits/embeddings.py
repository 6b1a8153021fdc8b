"""Tree maps induced by point maps between partition sequences."""
import logging
from dataclasses import dataclass
from typing import Dict, Mapping, Optional

from app.errors import (
    EmbeddingCheckFailed,
    NotAReduction,
    NotClassSurjective,
    NotInjective,
    NotSurjective,
    SequenceError,
)
from app.orbits.eqseq import EqSeq, Point, orbit_tree_index
from app.trees.wftree import MapReport, WfTree, check_order_preserving

logger = logging.getLogger(__name__)

PointMap = Mapping[Point, Point]


@dataclass
class OrbitMap:
    source: WfTree
    target: WfTree
    mapping: Dict[int, int]
    report: MapReport


def _check_total(theta: PointMap, source: EqSeq, target: EqSeq) -> None:
    for x in source.points:
        if x not in theta:
            raise SequenceError(f"point map is undefined on {x!r}")
        if theta[x] not in target.points:
            raise SequenceError(f"point {x!r} maps to {theta[x]!r}, which is not a target point")


def _check_injective(theta: PointMap, source: EqSeq) -> None:
    seen: Dict[Point, Point] = {}
    for x in source.points:
        y = theta[x]
        if y in seen:
            raise NotInjective(f"points {seen[y]!r} and {x!r} both map to {y!r}")
        seen[y] = x


def _check_preserves(theta: PointMap, source: EqSeq, target: EqSeq, reflect: bool) -> None:
    depth = max(source.depth, target.depth)
    points = source.points
    for n in range(depth + 1):
        for i, x in enumerate(points):
            for y in points[i + 1:]:
                before = source.equivalent(n, x, y)
                after = target.equivalent(n, theta[x], theta[y])
                if (before and not after) or (reflect and after and not before):
                    raise NotAReduction(n, (x, y))


def _verified(source: WfTree, target: WfTree, mapping: Dict[int, int], embedding: bool) -> OrbitMap:
    report = check_order_preserving(mapping, source, target, lipschitz=True)
    if not report.ok or (embedding and not report.is_embedding):
        raise EmbeddingCheckFailed(f"constructed tree map failed verification: {report.problems}")
    return OrbitMap(source, target, mapping, report)


def reduction_embedding(theta: PointMap, source: EqSeq, target: EqSeq) -> OrbitMap:
    """(n, C) -> (n, [theta(C)]_{F_n}) for an injective reduction theta.

    The result is a verified Lipschitz embedding of orbit trees, and an
    isomorphism when theta is a bijection.
    """
    _check_total(theta, source, target)
    _check_injective(theta, source)
    _check_preserves(theta, source, target, reflect=True)
    return _saturate(theta, source, target, embedding=True)


def saturation_map(theta: PointMap, source: EqSeq, target: EqSeq) -> OrbitMap:
    """(n, C) -> (n, [theta(C)]_{F_n}) for an injective theta that preserves every E_n.

    Without reflection the map need not be injective, but it is still order
    and level preserving, which bounds rank(T_E) by rank(T_F).
    """
    _check_total(theta, source, target)
    _check_injective(theta, source)
    _check_preserves(theta, source, target, reflect=False)
    return _saturate(theta, source, target, embedding=False)


def _saturate(theta: PointMap, source: EqSeq, target: EqSeq, embedding: bool) -> OrbitMap:
    source_tree, source_index = orbit_tree_index(source)
    target_tree, target_index = orbit_tree_index(target)
    mapping: Dict[int, int] = {}
    for (n, block), node_id in source_index.items():
        image = target.class_of(n, theta[next(iter(block))])
        mapping[node_id] = target_index[(n, image)]
    return _verified(source_tree, target_tree, mapping, embedding)


def surjection_embedding(theta: PointMap, source: EqSeq, target: EqSeq) -> OrbitMap:
    """Build psi: T_F -> T_E from a class-surjective surjection theta: E -> F.

    Nodes of T_F are handled level by level. Each (n, C) gets the least point
    x inside the class chosen for its parent with theta(x) in C, and maps to
    (n, [x]_{E_n}).
    """
    _check_total(theta, source, target)
    images = {theta[x] for x in source.points}
    missed = [y for y in target.points if y not in images]
    if missed:
        raise NotSurjective(f"target points {missed} are not hit")

    depth = max(source.depth, target.depth)
    for n in range(depth + 1):
        for x in source.points:
            hit = frozenset(theta[z] for z in source.class_of(n, x))
            cls = target.class_of(n, theta[x])
            if hit != cls:
                raise NotClassSurjective(n, sorted(cls))

    source_tree, source_index = orbit_tree_index(source)
    target_tree, target_index = orbit_tree_index(target)
    witness: Dict[int, Point] = {}
    mapping: Dict[int, int] = {}
    for node in target_tree:
        n, block = node.label
        pool = source.points if node.parent is None else sorted(source.class_of(n - 1, witness[node.parent]))
        x: Optional[Point] = next((z for z in pool if theta[z] in block), None)
        if x is None:
            raise EmbeddingCheckFailed(f"no witness for node {node.id} at level {n}")
        witness[node.id] = x
        mapping[node.id] = source_index[(n, source.class_of(n, x))]
    logger.debug(f"surjection embedding maps {len(target_tree)} nodes into {len(source_tree)}")
    return _verified(target_tree, source_tree, mapping, embedding=True)
