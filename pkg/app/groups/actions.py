"""Finite G-sets for chain groups: stabilizers, orbit trees and their ranks."""
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Sequence, Tuple

from app.errors import BudgetExceeded, InvalidAction, NotAHomomorphism
from app.groups.chain import ChainGroup, coset_eqseq, orbit_partitions, rho_k
from app.groups.perm import Perm, closure, direct_sum, is_perm, restrict
from app.orbits.embeddings import OrbitMap, surjection_embedding
from app.orbits.eqseq import EqSeq, make_eqseq, orbit_tree
from app.ordinals.cnf import Ordinal
from app.trees.wftree import tree_rank

logger = logging.getLogger(__name__)


@dataclass
class GSet:
    size: int
    action: Dict[Perm, Perm]
    images: Dict[Perm, Perm] = field(default_factory=dict, repr=False)

    @property
    def points(self) -> List[int]:
        return list(range(self.size))

    def act(self, g: Perm, x: int) -> int:
        return self.images[g][x]


def make_gset(group: ChainGroup, size: int, action: Mapping[Perm, Sequence[int]]) -> GSet:
    """Attach a permutation of 0..size-1 to every generator of G_0.

    The assignment must extend to a homomorphism: the group generated by the
    pairs (g, action(g)) must have exactly |G_0| elements.
    """
    action = {tuple(g): tuple(p) for g, p in action.items()}
    for g in group.gens[0]:
        if g not in action:
            raise InvalidAction(f"no action given for generator {g}")
    for g, p in action.items():
        if len(p) != size or not is_perm(p):
            raise InvalidAction(f"action of {g} is not a permutation of {size} points")
        if g not in group.elements[0]:
            raise InvalidAction(f"{g} is not an element of G_0")
    paired = [direct_sum(g, p) for g, p in action.items()]
    try:
        graph = closure(paired, group.degree + size, group.order)
    except BudgetExceeded:
        raise NotAHomomorphism(f"the action generates more pairs than the group order {group.order}") from None
    if len(graph) != len(group.elements[0]):
        raise NotAHomomorphism(f"the action generates {len(graph)} pairs for a group of order {group.order}")
    images = {restrict(x, 0, group.degree): restrict(x, group.degree, size) for x in graph}
    logger.debug(f"G-set on {size} points for a group of order {group.order}")
    return GSet(size, action, images)


def natural_gset(group: ChainGroup) -> GSet:
    return make_gset(group, group.degree, {g: g for g in group.gens[0]})


def coset_gset(group: ChainGroup, k: int) -> GSet:
    """G/G_k with the left multiplication action."""
    return make_gset(group, len(group.coset_index(k)[0]), {g: group.act_on_cosets(k, g) for g in group.gens[0]})


def gset_eqseq(group: ChainGroup, gset: GSet) -> EqSeq:
    level_moves = [[gset.images[g] for g in level] for level in group.gens]
    return orbit_partitions(gset.size, level_moves)


def gset_rank(group: ChainGroup, gset: GSet) -> Ordinal:
    return tree_rank(orbit_tree(gset_eqseq(group, gset)))


@dataclass
class Stabilizer:
    point: int
    elements: FrozenSet[Perm]
    level: int


def stabilizer(group: ChainGroup, gset: GSet, x: int) -> Stabilizer:
    """G_x and the least k with G_k inside it."""
    if x < 0 or x >= gset.size:
        raise InvalidAction(f"point {x} is outside 0..{gset.size - 1}")
    elements = frozenset(g for g in group.elements[0] if gset.act(g, x) == x)
    level = next(k for k in range(group.length + 1) if group.elements[k] <= elements)
    return Stabilizer(x, elements, level)


@dataclass
class TransitiveWitness:
    point: int
    orbit: Tuple[int, ...]
    level: int
    rank: Ordinal
    bound: Ordinal
    embedding: OrbitMap


def _restricted_seq(seq: EqSeq, points: Sequence[int]) -> EqSeq:
    keep = set(points)
    partitions = [[sorted(block) for block in p if next(iter(block)) in keep] for p in seq.partitions]
    return make_eqseq(sorted(points), partitions)


def transitive_witness(group: ChainGroup, gset: GSet, x: int) -> TransitiveWitness:
    """On the orbit of x, gG_k -> g.x is class-surjective for k with G_k inside G_x.

    The resulting embedding of orbit trees gives rank(T(G.x)) <= rho_k.
    """
    stab = stabilizer(group, gset, x)
    k = stab.level
    reps, _ = group.coset_index(k)
    orbit = tuple(sorted({gset.act(g, x) for g in group.elements[0]}))
    theta = {i: gset.act(rep, x) for i, rep in enumerate(reps)}
    target = _restricted_seq(gset_eqseq(group, gset), orbit)
    embedding = surjection_embedding(theta, coset_eqseq(group, k), target)
    rank = tree_rank(embedding.source)
    return TransitiveWitness(x, orbit, k, rank, rho_k(group, k), embedding)


def orbit_witnesses(group: ChainGroup, gset: GSet) -> List[TransitiveWitness]:
    """One transitive witness per G_0-orbit, at its least point."""
    witnesses = []
    covered = set()
    for x in gset.points:
        if x in covered:
            continue
        witness = transitive_witness(group, gset, x)
        covered.update(witness.orbit)
        witnesses.append(witness)
    return witnesses
