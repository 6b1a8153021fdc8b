"""Finite permutation groups with a decreasing subgroup chain.

A ChainGroup holds G_0 >= G_1 >= ... >= G_N = {1} as generator lists plus
their element sets, computed once at construction. The chain may repeat a
subgroup; it must end at the trivial group.
"""
import logging
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from app.config import settings
from app.errors import ChainNotTrivialAtEnd, IndexOutOfRange, InvalidPermutation, NotASubgroup
from app.groups.perm import Perm, closure, compose, format_cycles, generators_for, identity, is_identity
from app.orbits.eqseq import EqSeq, make_eqseq, orbit_tree
from app.ordinals.cnf import Ordinal
from app.trees.wftree import WfTree, tree_rank

logger = logging.getLogger(__name__)


class ChainGroup:
    def __init__(self, degree: int, gens: Sequence[Sequence[Perm]], elements: Sequence[FrozenSet[Perm]]):
        self.degree = degree
        self.gens: Tuple[Tuple[Perm, ...], ...] = tuple(tuple(level) for level in gens)
        self.elements: Tuple[FrozenSet[Perm], ...] = tuple(elements)
        self._cosets: Dict[int, Tuple[List[Perm], Dict[Perm, int]]] = {}

    @property
    def length(self) -> int:
        """N, the index of the trivial end of the chain."""
        return len(self.gens) - 1

    @property
    def order(self) -> int:
        return len(self.elements[0])

    def level(self, n: int) -> FrozenSet[Perm]:
        """G_n; indices past N give the trivial group."""
        return self.elements[min(n, self.length)]

    def level_gens(self, n: int) -> Tuple[Perm, ...]:
        return self.gens[min(n, self.length)]

    def orders(self) -> List[int]:
        return [len(level) for level in self.elements]

    def is_trivial(self) -> bool:
        return self.order == 1

    def coset_index(self, k: int) -> Tuple[List[Perm], Dict[Perm, int]]:
        """Least-element representatives of G_0/G_k and the coset id of every element."""
        check_index(self, k)
        if k not in self._cosets:
            sub = sorted(self.elements[k])
            reps: List[Perm] = []
            owner: Dict[Perm, int] = {}
            for g in sorted(self.elements[0]):
                if g in owner:
                    continue
                reps.append(g)
                for h in sub:
                    owner[compose(g, h)] = len(reps) - 1
            self._cosets[k] = (reps, owner)
        return self._cosets[k]

    def act_on_cosets(self, k: int, g: Perm) -> Tuple[int, ...]:
        """g acting on coset ids by left multiplication."""
        reps, owner = self.coset_index(k)
        return tuple(owner[compose(g, rep)] for rep in reps)

    def describe(self) -> Dict[str, object]:
        return {
            "degree": self.degree,
            "length": self.length,
            "orders": self.orders(),
            "chain": [[format_cycles(g) for g in level] for level in self.gens],
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.degree, self.elements))

    def __repr__(self) -> str:
        return f"ChainGroup(degree={self.degree}, orders={self.orders()})"


def check_index(group: ChainGroup, k: int) -> None:
    if k < 0 or k > group.length:
        raise IndexOutOfRange(f"index {k} is outside 0..{group.length}")


def make_chain_group(degree: int, chain: Sequence[Sequence[Perm]], budget: Optional[int] = None) -> ChainGroup:
    if not chain:
        raise ChainNotTrivialAtEnd("a chain needs at least one level")
    budget = budget or settings.max_group_order
    gens = []
    for n, level in enumerate(chain):
        level = [tuple(g) for g in level]
        for g in level:
            if len(g) != degree:
                raise InvalidPermutation(f"generator {format_cycles(g)} at level {n} does not have degree {degree}")
        gens.append([g for g in level if not is_identity(g)])
    elements = [closure(level, degree, budget) for level in gens]
    for n in range(1, len(elements)):
        if not elements[n] <= elements[n - 1]:
            raise NotASubgroup(n)
    if len(elements[-1]) != 1:
        raise ChainNotTrivialAtEnd(f"the last level has order {len(elements[-1])}, expected 1")
    logger.debug(f"chain group of degree {degree} with orders {[len(e) for e in elements]}")
    return ChainGroup(degree, gens, elements)


def trivial_chain(degree: int = 1) -> ChainGroup:
    return make_chain_group(degree, [[]])


def _orbit_partition(size: int, moves: Sequence[Sequence[int]]) -> List[List[int]]:
    """Orbits of the group generated by the given point permutations."""
    seen = [False] * size
    blocks = []
    for start in range(size):
        if seen[start]:
            continue
        seen[start] = True
        block = [start]
        stack = [start]
        while stack:
            x = stack.pop()
            for move in moves:
                y = move[x]
                if not seen[y]:
                    seen[y] = True
                    block.append(y)
                    stack.append(y)
        blocks.append(sorted(block))
    return blocks


def orbit_partitions(size: int, level_moves: Sequence[Sequence[Sequence[int]]]) -> EqSeq:
    return make_eqseq(range(size), [_orbit_partition(size, moves) for moves in level_moves])


def coset_eqseq(group: ChainGroup, k: int) -> EqSeq:
    """Orbit partitions of G/G_k under G_0, G_1, ..., G_N acting on the left."""
    reps, _ = group.coset_index(k)
    level_moves = [[group.act_on_cosets(k, g) for g in level] for level in group.gens]
    return orbit_partitions(len(reps), level_moves)


def coset_tree(group: ChainGroup, k: int) -> WfTree:
    return orbit_tree(coset_eqseq(group, k))


def cosets(group: ChainGroup, k: int) -> List[FrozenSet[Perm]]:
    reps, _ = group.coset_index(k)
    sub = group.elements[k]
    return [frozenset(compose(g, h) for h in sub) for g in reps]


def rho_k(group: ChainGroup, k: int) -> Ordinal:
    return tree_rank(coset_tree(group, k))


def rho(group: ChainGroup) -> Ordinal:
    """sup of rho_k over k, attained at k = N since rho_k is nondecreasing."""
    return rho_k(group, group.length)


def rho_profile(group: ChainGroup) -> List[Ordinal]:
    return [rho_k(group, k) for k in range(group.length + 1)]


def padded_rho_k(group: ChainGroup, k: int) -> Ordinal:
    """rho_k with the chain read as constant at {1} after N."""
    return rho_k(group, min(k, group.length))


def from_levels(degree: int, levels: Sequence[FrozenSet[Perm]], budget: Optional[int] = None) -> ChainGroup:
    """Build a chain group from element sets, choosing small generating sets."""
    gens = [generators_for(level, degree, budget) for level in levels]
    if len(levels[-1]) != 1:
        gens.append([])
        levels = list(levels) + [frozenset([identity(degree)])]
    for n in range(1, len(levels)):
        if not levels[n] <= levels[n - 1]:
            raise NotASubgroup(n)
    return ChainGroup(degree, gens, levels)
