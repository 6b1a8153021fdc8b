"""Seeded random instances for the property suite."""
import logging
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from app.config import settings
from app.errors import BudgetExceeded
from app.groups.chain import ChainGroup, from_levels
from app.groups.perm import Perm, closure, from_sympy, perm_group, to_sympy
from app.orbits.eqseq import EqSeq, make_eqseq
from app.ordinals.cnf import OMEGA, Ordinal, add, omega_power
from app.trees.wftree import WfTree, validate_tree

logger = logging.getLogger(__name__)

MAX_CHAIN_LENGTH = 5


def random_perm(rng: np.random.Generator, degree: int) -> Perm:
    return tuple(int(i) for i in rng.permutation(degree))


def random_element(rng: np.random.Generator, elements) -> Perm:
    members = sorted(elements)
    return members[int(rng.integers(len(members)))]


def random_top_group(rng: np.random.Generator, degree: int, max_order: int) -> frozenset:
    """A subgroup of S_degree generated by one or two random permutations."""
    while True:
        gens = [random_perm(rng, degree) for _ in range(int(rng.integers(1, 3)))]
        try:
            return closure(gens, degree, max_order)
        except BudgetExceeded:
            logger.debug(f"random generators on {degree} points exceed order {max_order}, drawing again")


def random_chain(
    rng: np.random.Generator, max_degree: Optional[int] = None, max_order: Optional[int] = None
) -> ChainGroup:
    """A random chain ending in {1}.

    Each level is a point stabilizer or a cyclic subgroup of the level above;
    levels may repeat.
    """
    max_degree = max_degree or settings.verify_max_degree
    max_order = max_order or settings.verify_max_order
    degree = int(rng.integers(2, max_degree + 1))
    levels = [random_top_group(rng, degree, max_order)]
    while len(levels[-1]) > 1 and len(levels) < MAX_CHAIN_LENGTH:
        current = levels[-1]
        if rng.random() < 0.5:
            point = int(rng.integers(degree))
            levels.append(frozenset(g for g in current if g[point] == point))
        else:
            levels.append(closure([random_element(rng, current)], degree, max_order))
    return from_levels(degree, levels, max_order)


def random_subgroup_gens(rng: np.random.Generator, group: ChainGroup) -> List[Perm]:
    count = int(rng.integers(0, 3))
    return [random_element(rng, group.elements[0]) for _ in range(count)]


def random_normal_gens(rng: np.random.Generator, group: ChainGroup) -> List[Perm]:
    """Generators of the normal closure of a random element of G_0."""
    g = random_element(rng, group.elements[0])
    normal = perm_group(group.gens[0], group.degree).normal_closure(to_sympy(g))
    return [from_sympy(h, group.degree) for h in normal.generators if not h.is_Identity]


def sub_chain(rng: np.random.Generator, group: ChainGroup) -> ChainGroup:
    """The chain restricted to a random set of its levels, keeping the top and the end."""
    inner = [n for n in range(1, group.length) if rng.random() < 0.5]
    indices = [0] + inner + [group.length] if group.length > 0 else [0]
    return ChainGroup(group.degree, [group.gens[i] for i in indices], [group.elements[i] for i in indices])


def random_tree_records(rng: np.random.Generator, max_nodes: Optional[int] = None) -> List[Dict[str, Any]]:
    max_nodes = max_nodes or settings.verify_max_tree_nodes
    size = int(rng.integers(0, max_nodes + 1))
    records: List[Dict[str, Any]] = []
    for i in range(size):
        if i == 0 or rng.random() < 0.15:
            records.append({"id": i, "level": 0, "parent": None})
        else:
            parent = records[int(rng.integers(i))]
            records.append({"id": i, "level": parent["level"] + 1, "parent": parent["id"]})
    return records


def random_tree(rng: np.random.Generator, max_nodes: Optional[int] = None) -> WfTree:
    return validate_tree(random_tree_records(rng, max_nodes))


def random_limit(rng: np.random.Generator) -> Ordinal:
    """w, w*2, w^2 or w^2+w."""
    choices = [OMEGA, omega_power(1, 2), omega_power(2), add(omega_power(2), OMEGA)]
    return choices[int(rng.integers(len(choices)))]


def random_weighted_tree(rng: np.random.Generator, max_nodes: int = 12) -> WfTree:
    """A random tree whose rank is a limit: its weighted terminals carry a common limit weight."""
    records = random_tree_records(rng, max_nodes) or [{"id": 0, "level": 0, "parent": None}]
    parents = {r["parent"] for r in records}
    limit = random_limit(rng)
    for r in records:
        if r["id"] not in parents and rng.random() < 0.7:
            r["weight"] = limit
    if not any("weight" in r for r in records):
        terminal = next(r for r in records if r["id"] not in parents)
        terminal["weight"] = limit
    return validate_tree(records)


def random_partition_refinement(rng: np.random.Generator, blocks: List[List[int]]) -> List[List[int]]:
    refined = []
    for block in blocks:
        labels = rng.integers(0, 2, size=len(block)) if len(block) > 1 else [0]
        parts: Dict[int, List[int]] = {}
        for point, label in zip(block, labels):
            parts.setdefault(int(label), []).append(point)
        refined.extend(parts.values())
    return refined


def random_eqseq(rng: np.random.Generator, max_points: int = 6, max_depth: int = 5) -> EqSeq:
    size = int(rng.integers(1, max_points + 1))
    points = list(range(size))
    partitions = [random_partition_refinement(rng, [points]) if rng.random() < 0.3 else [points]]
    while len(partitions) < max_depth and any(len(b) > 1 for b in partitions[-1]):
        partitions.append(random_partition_refinement(rng, partitions[-1]))
    partitions.append([[p] for p in points])
    return make_eqseq(points, partitions)


def random_chain_pair(rng: np.random.Generator, max_order: int) -> Tuple[ChainGroup, ChainGroup]:
    """Two chains whose direct product stays within max_order."""
    while True:
        left = random_chain(rng, max_degree=4)
        right = random_chain(rng, max_degree=4)
        if left.order * right.order <= max_order:
            return left, right
