"""Chain groups built from other chain groups.

Subgroup and quotient chains, direct and staggered products, the finite wreath
truncation with a cyclic top group, restricted products, shifted chains and
the interleaving of two chains on one group.
"""
import logging
from dataclasses import dataclass, field
from math import prod
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from app.config import settings
from app.errors import BudgetExceeded, GroupError, NoInterleaving, NotASubgroup, NotNormal
from app.groups.chain import ChainGroup, coset_eqseq, coset_tree, from_levels, make_chain_group
from app.groups.perm import Perm, closure, compose, cyclic_generator, embed, identity, perm_group
from app.orbits.embeddings import OrbitMap, saturation_map, surjection_embedding
from app.ordinals.cnf import Ordinal
from app.trees.wftree import MapReport, WfTree, check_order_preserving, level_subtree, subtree_at, tree_rank

logger = logging.getLogger(__name__)


def _budget(budget: Optional[int]) -> int:
    return budget or settings.max_group_order


def subgroup_chain(group: ChainGroup, gens: Sequence[Perm], budget: Optional[int] = None) -> ChainGroup:
    """H_n = H ∩ G_n, kept index-aligned with the chain of G."""
    sub = closure(gens, group.degree, _budget(budget))
    if not sub <= group.elements[0]:
        raise NotASubgroup(message="the given generators leave G_0")
    levels = [sub & level for level in group.elements]
    return from_levels(group.degree, levels, budget)


def subgroup_witness(group: ChainGroup, sub: ChainGroup, k: int) -> OrbitMap:
    """The map hH_k -> hG_k on coset trees; it bounds rho_k(H) by rho_k(G)."""
    reps, _ = sub.coset_index(k)
    _, owner = group.coset_index(k)
    theta = {i: owner[rep] for i, rep in enumerate(reps)}
    return saturation_map(theta, coset_eqseq(sub, k), coset_eqseq(group, k))


def is_normal(sub_gens: Sequence[Perm], group_gens: Sequence[Perm], degree: int) -> bool:
    return perm_group(sub_gens, degree).is_normal(perm_group(group_gens, degree))


@dataclass
class Quotient:
    group: ChainGroup
    projection: Dict[Perm, Perm]


def quotient_projection(group: ChainGroup, gens: Sequence[Perm], budget: Optional[int] = None) -> Quotient:
    """G_0/N acting on the left cosets of N, with the chain G_n N / N."""
    normal = closure(gens, group.degree, _budget(budget))
    if not normal <= group.elements[0]:
        raise NotASubgroup(message="the normal subgroup generators leave G_0")
    if not is_normal(gens, group.gens[0], group.degree):
        raise NotNormal("the given subgroup is not normal in G_0")
    members = sorted(normal)
    reps: List[Perm] = []
    owner: Dict[Perm, int] = {}
    for g in sorted(group.elements[0]):
        if g in owner:
            continue
        reps.append(g)
        for h in members:
            owner[compose(g, h)] = len(reps) - 1
    projection = {g: tuple(owner[compose(g, rep)] for rep in reps) for g in group.elements[0]}
    chain = [[projection[g] for g in level] for level in group.gens]
    quotient = make_chain_group(len(reps), chain, budget)
    logger.debug(f"quotient of order {quotient.order} acting on {len(reps)} cosets")
    return Quotient(quotient, projection)


def quotient_chain(group: ChainGroup, gens: Sequence[Perm], budget: Optional[int] = None) -> ChainGroup:
    return quotient_projection(group, gens, budget).group


def quotient_witness(group: ChainGroup, quotient: Quotient, k: int) -> OrbitMap:
    """gG_k -> pi(g)Q_k is class-surjective, so T(Q/Q_k) embeds into T(G/G_k)."""
    reps, _ = group.coset_index(k)
    _, owner = quotient.group.coset_index(k)
    theta = {i: owner[quotient.projection[rep]] for i, rep in enumerate(reps)}
    return surjection_embedding(theta, coset_eqseq(group, k), coset_eqseq(quotient.group, k))


def projection_witness(group: ChainGroup, k: int) -> OrbitMap:
    """gG_{k+1} -> gG_k, witnessing rho_k <= rho_{k+1}."""
    reps, _ = group.coset_index(k + 1)
    _, owner = group.coset_index(k)
    theta = {i: owner[rep] for i, rep in enumerate(reps)}
    return surjection_embedding(theta, coset_eqseq(group, k + 1), coset_eqseq(group, k))


def _check_order(orders: Sequence[int], budget: Optional[int]) -> None:
    budget = _budget(budget)
    if prod(orders) > budget:
        raise BudgetExceeded(budget)


def _product_levels(
    factors: Sequence[ChainGroup], level_of: Sequence[Sequence[int]], budget: Optional[int]
) -> ChainGroup:
    """Chain on the disjoint union of factor points; level n uses G^i_{level_of[n][i]}."""
    degree = sum(f.degree for f in factors)
    offsets = [sum(f.degree for f in factors[:i]) for i in range(len(factors))]
    _check_order([f.order for f in factors], budget)
    chain = []
    for indices in level_of:
        gens = []
        for factor, offset, index in zip(factors, offsets, indices):
            gens.extend(embed(g, offset, degree) for g in factor.level_gens(index))
        chain.append(gens)
    return make_chain_group(degree, chain, budget)


def product_chain(left: ChainGroup, right: ChainGroup, budget: Optional[int] = None) -> ChainGroup:
    length = max(left.length, right.length)
    return _product_levels([left, right], [[n, n] for n in range(length + 1)], budget)


def staggered_product(factors: Sequence[ChainGroup], budget: Optional[int] = None) -> ChainGroup:
    """Level n constrains coordinates i < n to G^i_n and leaves the rest at G^i_0.

    The chain runs until every coordinate has reached its trivial level.
    """
    if not factors:
        raise GroupError("a staggered product needs at least one factor")
    length = max(max(i + 1, f.length) for i, f in enumerate(factors))
    level_of = [[n if i < n else 0 for i in range(len(factors))] for n in range(length + 1)]
    result = _product_levels(factors, level_of, budget)
    logger.debug(f"staggered product of {len(factors)} factors, orders {result.orders()}")
    return result


def power_chain(group: ChainGroup, copies: int, budget: Optional[int] = None) -> ChainGroup:
    """Staggered product of copies of group: level n is G_n on coordinates i < n and G_0 on the rest.

    Coordinate 0 sits at G_n from level 1 on, so a single copy gives back the
    factor chain itself with no shift.
    """
    if copies < 1:
        raise GroupError("power_chain needs at least one copy")
    return staggered_product([group] * copies, budget)


def restricted_truncation(factors: Sequence[ChainGroup], budget: Optional[int] = None) -> ChainGroup:
    """G_0 is the whole product; for n >= 1 coordinates i < n-1 sit in G^i_n, the rest in G^i_1."""
    if not factors:
        raise GroupError("a restricted product needs at least one factor")
    length = max(len(factors) + 1, max(f.length for f in factors))
    level_of = [[0] * len(factors)]
    for n in range(1, length + 1):
        level_of.append([n if i < n - 1 else 1 for i in range(len(factors))])
    return _product_levels(factors, level_of, budget)


def wreath_truncation(blocks: int, group: ChainGroup, budget: Optional[int] = None) -> ChainGroup:
    """C_b wreath G on b blocks of G's points.

    The top group rotates the blocks. H_0 is the whole group and H_{n+1} is the
    set of base elements whose first min(n, b) coordinates lie in G_n; the
    chain stops once H is trivial.
    """
    if blocks < 1:
        raise GroupError("the wreath top needs at least one block")
    _check_order([blocks] + [group.order] * blocks, budget)
    d = group.degree
    degree = blocks * d
    shift = tuple(((p // d + 1) % blocks) * d + p % d for p in range(degree))

    def base_level(constrained: int, n: int) -> List[Perm]:
        return [
            embed(g, j * d, degree)
            for j in range(blocks)
            for g in group.level_gens(n if j < constrained else 0)
        ]

    chain = [[shift] + base_level(0, 0)]
    n = 0
    while True:
        constrained = min(n, blocks)
        level = base_level(constrained, n)
        chain.append(level)
        if constrained == blocks and n >= group.length:
            break
        n += 1
    result = make_chain_group(degree, chain, budget)
    logger.debug(f"wreath truncation with {blocks} blocks, orders {result.orders()}")
    return result


def cyclic_chain(order: int) -> ChainGroup:
    """C_order on its own points with chain [C_order, 1]."""
    if order < 1:
        raise GroupError("cyclic order must be positive")
    if order == 1:
        return make_chain_group(1, [[]])
    return make_chain_group(order, [[cyclic_generator(order)], []])


def prepend_level(group: ChainGroup, gens: Sequence[Perm], budget: Optional[int] = None) -> ChainGroup:
    """New chain with G_0 = <gens> and G_{n+1} = H_n."""
    top = closure(gens, group.degree, _budget(budget))
    if not group.elements[0] <= top:
        raise NotASubgroup(0, "the old top is not inside the new top group")
    return make_chain_group(group.degree, [list(gens)] + [list(level) for level in group.gens], budget)


def _label_index(tree: WfTree) -> Dict[Tuple[int, frozenset], int]:
    return {node.label: node.id for node in tree}


@dataclass
class ShiftedChain:
    group: ChainGroup
    offset: int
    reports: List[MapReport] = field(default_factory=list)


def shifted_chain(group: ChainGroup, offset: int, budget: Optional[int] = None) -> ShiftedChain:
    """H = G_offset with H_n = G_{n+offset}.

    For every k the coset tree of H/H_k is checked to be isomorphic to the
    subtree of T(G/G_{k+offset}) at the level-offset node over the identity coset.
    """
    if offset < 0 or offset > group.length:
        raise GroupError(f"offset {offset} is outside 0..{group.length}")
    shifted = make_chain_group(group.degree, [list(level) for level in group.gens[offset:]], budget)
    reports = []
    for k in range(shifted.length + 1):
        small = coset_tree(shifted, k)
        big_seq = coset_eqseq(group, k + offset)
        big = coset_tree(group, k + offset)
        reps, _ = shifted.coset_index(k)
        _, owner = group.coset_index(k + offset)
        to_big = {i: owner[rep] for i, rep in enumerate(reps)}
        top_class = big_seq.class_of(offset, owner[identity(group.degree)])
        top_id = _label_index(big).get((offset, top_class))
        branch = subtree_at(big, top_id)
        index = _label_index(branch)
        mapping = {}
        for node in small:
            n, block = node.label
            image = frozenset(to_big[x] for x in block)
            mapping[node.id] = index[(n + offset, image)]
        reports.append(check_order_preserving(mapping, small, branch, lipschitz=True))
    return ShiftedChain(shifted, offset, reports)


@dataclass
class Interleaving:
    group: ChainGroup
    first_indices: List[int]
    second_indices: List[int]
    first_sub: ChainGroup
    second_sub: ChainGroup
    reports: List[MapReport] = field(default_factory=list)
    rank_pairs: List[Tuple[Ordinal, Ordinal]] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return all(r.is_isomorphism for r in self.reports)


def _subsequence(group: ChainGroup, indices: Sequence[int]) -> ChainGroup:
    return ChainGroup(group.degree, [group.level_gens(i) for i in indices], [group.level(i) for i in indices])


def _next_index(chain: ChainGroup, low: int, bound: FrozenSet[Perm], other: str) -> int:
    """Least j >= low with chain level j inside bound; skipped levels must contain bound."""
    j = low
    while not chain.level(j) <= bound:
        if not bound <= chain.level(j):
            raise NoInterleaving(f"level {j} of the {other} chain is incomparable with the level above it")
        j += 1
    return j


def _level_iso(sub: ChainGroup, whole: ChainGroup, k: int, whole_k: int, picks: Sequence[int]) -> Tuple[MapReport, WfTree, WfTree]:
    small = coset_tree(sub, k)
    restricted = level_subtree(coset_tree(whole, whole_k), picks)
    index = _label_index(restricted)
    mapping = {}
    for node in small:
        n, block = node.label
        key = (picks[n], block)
        if key in index:
            mapping[node.id] = index[key]
    report = check_order_preserving(mapping, small, restricted, lipschitz=True) if len(mapping) == len(small) else None
    return report, small, restricted


def interleave_chains(first: ChainGroup, second: ChainGroup) -> Interleaving:
    """Alternate the two chains: H_{2i} = G_{n_i}, H_{2i+1} = G'_{m_i}.

    Indices are chosen greedily as the least ones with
    G_{n_i} >= G'_{m_i} >= G_{n_{i+1}}; indices past a chain's end read the
    trivial group. A level passed over must contain the current bound, so both
    chains thread through one linear order. For every k the coset trees of the
    two subsequence chains are checked to be isomorphic to the even and odd
    level subtrees of the interleaved chain's trees.
    """
    if first.degree != second.degree or first.elements[0] != second.elements[0]:
        raise NoInterleaving("the two chains do not start at the same group")
    n_idx, m_idx = [0], []
    while True:
        bound = first.level(n_idx[-1])
        m_idx.append(_next_index(second, m_idx[-1] + 1 if m_idx else 0, bound, "second"))
        if len(bound) == 1:
            break
        n_idx.append(_next_index(first, n_idx[-1] + 1, second.level(m_idx[-1]), "first"))

    levels, gens = [], []
    for n, m in zip(n_idx, m_idx):
        levels += [first.level(n), second.level(m)]
        gens += [first.level_gens(n), second.level_gens(m)]
    merged = ChainGroup(first.degree, gens, levels)
    first_sub, second_sub = _subsequence(first, n_idx), _subsequence(second, m_idx)

    evens = list(range(0, len(levels), 2))
    odds = list(range(1, len(levels), 2))
    result = Interleaving(merged, n_idx, m_idx, first_sub, second_sub)
    for i in range(len(n_idx)):
        for sub, picks, whole_k in ((first_sub, evens, 2 * i), (second_sub, odds, 2 * i + 1)):
            report, small, restricted = _level_iso(sub, merged, i, whole_k, picks)
            if report is None:
                raise NoInterleaving(f"subsequence tree at k={i} does not match the interleaved chain")
            result.reports.append(report)
            result.rank_pairs.append((tree_rank(restricted), tree_rank(coset_tree(merged, whole_k))))
    logger.debug(f"interleaved chain with indices {n_idx} and {m_idx}")
    return result


def z2_chain() -> ChainGroup:
    return cyclic_chain(2)


def s3_chain() -> ChainGroup:
    """S_3 on three points with the chain S_3 > A_3 > 1."""
    return make_chain_group(3, [[(1, 2, 0), (1, 0, 2)], [(1, 2, 0)], []])


def cut_chain(group: ChainGroup, depth: int) -> ChainGroup:
    """Keep G_0 .. G_{depth-1} and end with the trivial group."""
    if group.length <= depth:
        return group
    gens = list(group.gens[:depth]) + [()]
    elements = list(group.elements[:depth]) + [frozenset([identity(group.degree)])]
    return ChainGroup(group.degree, gens, elements)
