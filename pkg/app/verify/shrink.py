"""Greedy shrinking of counterexamples."""
import logging
from typing import Any, Callable, Iterable, Iterator, List

from app.errors import LabError
from app.groups.chain import ChainGroup, make_chain_group
from app.orbits.eqseq import EqSeq, make_eqseq
from app.trees.wftree import WfTree, validate_tree

logger = logging.getLogger(__name__)

MAX_SHRINK_STEPS = 200


def shrink(case: Any, candidates: Callable[[Any], Iterable[Any]], fails: Callable[[Any], bool]) -> Any:
    """Replace case by its first failing candidate until none fails."""
    for _ in range(MAX_SHRINK_STEPS):
        for candidate in candidates(case):
            try:
                failed = fails(candidate)
            except LabError:
                failed = False
            if failed:
                case = candidate
                break
        else:
            return case
    logger.warning(f"⚠️ shrinking stopped after {MAX_SHRINK_STEPS} steps")
    return case


def no_candidates(case: Any) -> Iterator[Any]:
    return iter(())


def _orbits(group: ChainGroup) -> List[List[int]]:
    seen, orbits = set(), []
    for start in range(group.degree):
        if start in seen:
            continue
        orbit = sorted({g[start] for g in group.elements[0]})
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def restrict_to_points(group: ChainGroup, points: List[int]) -> ChainGroup:
    """The chain acting on an invariant set of points, relabelled 0..len-1."""
    position = {p: i for i, p in enumerate(points)}
    chain = [[tuple(position[g[p]] for p in points) for g in level] for level in group.gens]
    return make_chain_group(len(points), chain)


def chain_candidates(group: ChainGroup) -> Iterator[ChainGroup]:
    """Drop one middle level, or keep a single orbit of G_0."""
    for n in range(1, group.length):
        keep = [i for i in range(group.length + 1) if i != n]
        yield ChainGroup(group.degree, [group.gens[i] for i in keep], [group.elements[i] for i in keep])
    orbits = _orbits(group)
    if len(orbits) > 1:
        for orbit in orbits:
            if len(orbit) > 1:
                yield restrict_to_points(group, orbit)


def pair_candidates(pair) -> Iterator[Any]:
    left, right = pair
    for smaller in chain_candidates(left):
        yield smaller, right
    for smaller in chain_candidates(right):
        yield left, smaller


def tree_candidates(tree: WfTree) -> Iterator[WfTree]:
    """Drop one terminal."""
    for node_id in tree.ids:
        if tree.is_terminal(node_id):
            yield validate_tree([n for n in tree if n.id != node_id])


def eqseq_candidates(seq: EqSeq) -> Iterator[EqSeq]:
    """Delete one point from every partition."""
    if len(seq.points) < 2:
        return
    for point in seq.points:
        rest = [p for p in seq.points if p != point]
        partitions = [[[x for x in block if x != point] for block in p if block != frozenset([point])] for p in seq.partitions]
        yield make_eqseq(rest, partitions)


def eqseq_pair_candidates(pair) -> Iterator[Any]:
    left, right = pair
    for smaller in eqseq_candidates(left):
        yield smaller, right
    for smaller in eqseq_candidates(right):
        yield left, smaller
