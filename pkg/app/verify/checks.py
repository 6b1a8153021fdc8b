"""Property checks run by the verification suite.

Every check draws a case from a seeded generator and returns None when the
property holds, or a short failure message otherwise.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Iterable, List, Optional, Sequence

import numpy as np

from app.config import settings
from app.groups.actions import natural_gset, orbit_witnesses
from app.groups.chain import ChainGroup, padded_rho_k, rho, rho_k, rho_profile
from app.groups.constructions import (
    interleave_chains,
    power_chain,
    product_chain,
    projection_witness,
    quotient_projection,
    quotient_witness,
    subgroup_chain,
    subgroup_witness,
    z2_chain,
)
from app.groups.tsi import conjugates_inside, core_chain, tsi_check
from app.orbits.eqseq import EqSeq, orbit_tree, product_seq
from app.ordinals.cnf import OMEGA, Kind, Ordinal, add, compare, generate_ordinals, limit_part, mul_omega, successor_kind, sup
from app.symbolic.calculus import Classification, rank_calculus
from app.symbolic.expr import Atom, PowInf, Prod, Trivial, Wreath, format_expr
from app.symbolic.hierarchy import build_example
from app.symbolic.truncate import truncate
from app.trees.export import tree_to_records
from app.trees.wftree import height, level, level_subtree, node_rank, subtree_at, tree_rank
from app.verify import generators as gen
from app.verify.shrink import (
    chain_candidates,
    eqseq_pair_candidates,
    no_candidates,
    pair_candidates,
    tree_candidates,
)

logger = logging.getLogger(__name__)

Pool = Optional[Sequence[ChainGroup]]

MUTANTS = ("product-sum",)

HIERARCHY_ALPHAS = [
    Ordinal.of(0),
    Ordinal.of(1),
    Ordinal.of(2),
    Ordinal.of(3),
    OMEGA,
    add(OMEGA, Ordinal.of(1)),
    add(OMEGA, OMEGA),
]


@dataclass
class Check:
    name: str
    description: str
    generate: Callable[[np.random.Generator, Pool], Any]
    holds: Callable[[Any, Optional[str]], Optional[str]]
    candidates: Callable[[Any], Iterable[Any]] = no_candidates
    show: Callable[[Any], Any] = repr
    once: bool = False


def pick_chain(rng: np.random.Generator, pool: Pool) -> ChainGroup:
    if pool:
        return pool[int(rng.integers(len(pool)))]
    return gen.random_chain(rng)


def show_chain(group: ChainGroup) -> Any:
    return group.describe()


def show_pair(pair) -> Any:
    return [show_chain(pair[0]), show_chain(pair[1])]


def _profile_text(values: Sequence[Ordinal]) -> str:
    return "[" + ", ".join(str(v) for v in values) + "]"


# Chain groups

def rho_zero(group: ChainGroup, mutant: Optional[str]) -> Optional[str]:
    value = rho_k(group, 0)
    return None if value == 0 else f"rho_0 = {value}"


def rho_monotone(group: ChainGroup, mutant: Optional[str]) -> Optional[str]:
    profile = rho_profile(group)
    for k in range(group.length):
        witness = projection_witness(group, k)
        if not (witness.report.ok and witness.report.is_embedding):
            return f"projection witness at k={k} is not a Lipschitz embedding: {witness.report.problems}"
        if not profile[k] <= profile[k + 1]:
            return f"rho_{k} = {profile[k]} > rho_{k + 1} = {profile[k + 1]}"
    return None


def pick_pair(rng: np.random.Generator, pool: Pool):
    if pool:
        left, right = pick_chain(rng, pool), pick_chain(rng, pool)
        if left.order * right.order <= settings.verify_max_order:
            return left, right
    return gen.random_chain_pair(rng, settings.verify_max_order)


def product_law(pair, mutant: Optional[str]) -> Optional[str]:
    left, right = pair
    both = product_chain(left, right)
    for k in range(both.length + 1):
        a, b = padded_rho_k(left, k), padded_rho_k(right, k)
        expected = add(a, b) if mutant == "product-sum" else sup([a, b])
        got = rho_k(both, k)
        if got != expected:
            return f"rho_{k}(G x H) = {got}, expected {expected} from {a} and {b}"
    return None


def pick_subgroup(rng: np.random.Generator, pool: Pool):
    group = pick_chain(rng, pool)
    return group, gen.random_subgroup_gens(rng, group)


def subgroup_monotone(case, mutant: Optional[str]) -> Optional[str]:
    group, gens = case
    sub = subgroup_chain(group, gens)
    for k in range(min(sub.length, group.length) + 1):
        small, big = rho_k(sub, k), rho_k(group, k)
        if not small <= big:
            return f"rho_{k}(H) = {small} > rho_{k}(G) = {big}"
        report = subgroup_witness(group, sub, k).report
        if not report.ok:
            return f"subgroup witness at k={k} fails: {report.problems}"
    return None


def pick_normal(rng: np.random.Generator, pool: Pool):
    group = pick_chain(rng, pool)
    return group, gen.random_normal_gens(rng, group)


def quotient_monotone(case, mutant: Optional[str]) -> Optional[str]:
    group, gens = case
    quotient = quotient_projection(group, gens)
    for k in range(min(quotient.group.length, group.length) + 1):
        small, big = rho_k(quotient.group, k), rho_k(group, k)
        if not small <= big:
            return f"rho_{k}(G/N) = {small} > rho_{k}(G) = {big}"
        report = quotient_witness(group, quotient, k).report
        if not (report.ok and report.is_embedding):
            return f"quotient witness at k={k} fails: {report.problems}"
    return None


def pick_power(rng: np.random.Generator, pool: Pool):
    copies = int(rng.integers(1, 4))
    for _ in range(20):
        group = pick_chain(rng, pool) if pool else gen.random_chain(rng, max_degree=4)
        if group.order ** copies <= settings.verify_max_order:
            return group, copies
    return z2_chain(), copies


def power_bound(case, mutant: Optional[str]) -> Optional[str]:
    group, copies = case
    power = power_chain(group, copies)
    for k in range(power.length + 1):
        got, factor = rho_k(power, k), padded_rho_k(group, k)
        if not got <= add(factor, Ordinal.of(k)):
            return f"rho_{k} of {copies} copies is {got}, above {factor} + {k}"
    return None


def normal_chain(group: ChainGroup, mutant: Optional[str]) -> Optional[str]:
    for k, value in enumerate(rho_profile(core_chain(group))):
        if not value <= k:
            return f"normal core chain has rho_{k} = {value} > {k}"
    report = tsi_check(group)
    for k, m in enumerate(report.witnesses):
        if not conjugates_inside(group, m, k):
            return f"conjugates of G_{m} leave G_{k}"
    if not report.klee_bounded:
        return f"normal closure chain profile {_profile_text(report.klee_profile)} exceeds k"
    return None


def interleave(pair, mutant: Optional[str]) -> Optional[str]:
    first, second = pair
    result = interleave_chains(first, second)
    if not result.verified:
        return "level subtree maps are not Lipschitz isomorphisms"
    for restricted, whole in result.rank_pairs:
        if not restricted <= whole:
            return f"level subtree rank {restricted} exceeds {whole}"
    return None


def pick_interleaving(rng: np.random.Generator, pool: Pool):
    group = pick_chain(rng, pool)
    return group, gen.sub_chain(rng, group)


def transitive_orbits(group: ChainGroup, mutant: Optional[str]) -> Optional[str]:
    gset = natural_gset(group)
    for witness in orbit_witnesses(group, gset):
        if not witness.embedding.report.ok:
            return f"orbit of {witness.point}: embedding fails {witness.embedding.report.problems}"
        if not witness.rank <= witness.bound:
            return f"orbit of {witness.point} has rank {witness.rank} > rho_{witness.level} = {witness.bound}"
    return None


# Trees and partition sequences

def tree_levels(tree, mutant: Optional[str]) -> Optional[str]:
    total = tree_rank(tree)
    for k in range(height(tree) + 1):
        best = sup(add(node_rank(tree, s), Ordinal.of(1)) for s in level(tree, k))
        if not best <= total <= add(best, Ordinal.of(k)):
            return f"level {k}: sup of subtree ranks {best}, tree rank {total}"
        if limit_part(best) != limit_part(total):
            return f"level {k}: sup of subtree ranks {best} and tree rank {total} have different limit parts"
    return deep_subtrees(tree, mutant)


def deep_subtrees(tree, mutant: Optional[str]) -> Optional[str]:
    """A subtree of rank a rooted at level k forces tree rank at least a + k; weighted terminals included."""
    total = tree_rank(tree)
    for k in range(height(tree) + 1):
        for s in level(tree, k):
            if not add(add(node_rank(tree, s), Ordinal.of(1)), Ordinal.of(k)) <= total:
                return f"subtree at {s} on level {k} plus {k} exceeds tree rank {total}"
    return None


def tree_recursion(tree, mutant: Optional[str]) -> Optional[str]:
    for s in tree.ids:
        below = sup(tree_rank(subtree_at(tree, t)) for t in tree.children(s))
        value = tree_rank(subtree_at(tree, s))
        if value != add(below, Ordinal.of(1)) or value != add(node_rank(tree, s), Ordinal.of(1)):
            return f"subtree at {s} has rank {value}, children give {below} + 1"
    if successor_kind(tree_rank(tree)) is Kind.LIMIT:
        return f"plain tree has limit rank {tree_rank(tree)}"
    return None


def pick_indices(rng: np.random.Generator, top: int, nonempty: bool) -> List[int]:
    indices = [n for n in range(top) if rng.random() < 0.6]
    if nonempty and not indices:
        indices = [int(rng.integers(top))]
    return indices


def pick_level_case(rng: np.random.Generator, pool: Pool):
    tree = gen.random_tree(rng)
    return tree, pick_indices(rng, height(tree) + 2, nonempty=False)


def pick_weighted_case(rng: np.random.Generator, pool: Pool):
    tree = gen.random_weighted_tree(rng)
    return tree, pick_indices(rng, height(tree) + 2, nonempty=True)


def level_subtree_bound(case, mutant: Optional[str]) -> Optional[str]:
    tree, indices = case
    small, big = tree_rank(level_subtree(tree, indices)), tree_rank(tree)
    if not small <= big:
        return f"levels {indices}: rank {small} > {big}"
    return None


def weighted_level_subtree(case, mutant: Optional[str]) -> Optional[str]:
    tree, indices = case
    small, big = tree_rank(level_subtree(tree, indices)), tree_rank(tree)
    if not small <= big:
        return f"levels {indices}: rank {small} > {big}"
    if limit_part(small) != limit_part(big):
        return f"levels {indices}: limit part {limit_part(small)} differs from {limit_part(big)}"
    return None


def tree_case_candidates(case):
    tree, indices = case
    for smaller in tree_candidates(tree):
        yield smaller, indices


def brute_rank(seq: EqSeq) -> int:
    """Rank of the orbit tree straight from the partitions."""

    @lru_cache(maxsize=None)
    def rank(n: int, block: frozenset) -> int:
        if n >= seq.depth:
            return 0
        inner = [b for b in seq.partition(n + 1) if len(b) > 1 and b <= block]
        return max((rank(n + 1, b) + 1 for b in inner), default=0)

    return max((rank(0, b) + 1 for b in seq.partition(0) if len(b) > 1), default=0)


def pick_eqseq_pair(rng: np.random.Generator, pool: Pool):
    return gen.random_eqseq(rng), gen.random_eqseq(rng)


def eqseq_product(pair, mutant: Optional[str]) -> Optional[str]:
    left, right = pair
    a, b = brute_rank(left), brute_rank(right)
    for seq, expected in ((left, a), (right, b)):
        if tree_rank(orbit_tree(seq)) != expected:
            return f"orbit tree rank {tree_rank(orbit_tree(seq))} differs from direct rank {expected}"
    tree = orbit_tree(product_seq(left, right))
    expected = max(a, b)
    if tree_rank(tree) != expected:
        return f"product rank {tree_rank(tree)}, expected {expected} from {a} and {b}"
    if tree.is_empty != (a == 0 and b == 0):
        return "product tree emptiness does not match the factors"
    return None


def show_eqseq_pair(pair) -> Any:
    return [pair[0].to_dict(), pair[1].to_dict()]


def show_tree_case(case) -> Any:
    tree, indices = case
    return {"tree": tree_to_records(tree), "indices": list(indices)}


# Ordinals and symbolic expressions

def pick_ordinals(rng: np.random.Generator, pool: Pool):
    values = _ordinals()
    return [tuple(values[int(i)] for i in rng.integers(len(values), size=3)) for _ in range(5)]


@lru_cache(maxsize=1)
def _ordinals() -> List[Ordinal]:
    return generate_ordinals(2, 5)


def ordinal_kernel(triples, mutant: Optional[str]) -> Optional[str]:
    for a, b, c in triples:
        if add(add(a, b), c) != add(a, add(b, c)):
            return f"({a} + {b}) + {c} != {a} + ({b} + {c})"
        if b < c and not (add(a, b) < add(a, c) and add(b, a) <= add(c, a)):
            return f"addition is not monotone at {a}, {b}, {c}"
        if limit_part(limit_part(a)) != limit_part(a):
            return f"limit part of {a} is not idempotent"
        if mul_omega(add(b, c)) != add(mul_omega(b), mul_omega(c)):
            return f"w*({b} + {c}) != w*{b} + w*{c}"
        if compare(b, c) != -compare(c, b):
            return f"comparison of {b} and {c} is not antisymmetric"
        if b < c and not mul_omega(b) < mul_omega(c):
            return f"w*{b} is not below w*{c}"
        if (limit_part(a) == a) != (successor_kind(a) is not Kind.SUCCESSOR):
            return f"limit part of {a} disagrees with its kind"
    return None


def show_ordinals(triples) -> Any:
    return [[str(x) for x in t] for t in triples]


def hierarchy(_, mutant: Optional[str]) -> Optional[str]:
    for alpha in HIERARCHY_ALPHAS:
        for kind, tight in (("H", True), ("G", False)):
            got = rank_calculus.classify(build_example(kind, alpha))
            if got != Classification(alpha, tight):
                return f"{kind}_{alpha} classifies as {got}"
    return None


def wreath_growth(_, mutant: Optional[str]) -> Optional[str]:
    power = PowInf(Atom("Z2", z2_chain()))
    values = [rho(truncate(Wreath(power), 4, b)) for b in (1, 2, 3)]
    if any(not x <= y for x, y in zip(values, values[1:])) or values[0] == values[-1]:
        return f"wreath shadows have rho {_profile_text(values)}"
    base = rho(truncate(power, 4, 3))
    if not values[-1] > base:
        return f"wreath shadow rho {values[-1]} does not exceed power shadow rho {base}"
    return None


def _nothing(rng: np.random.Generator, pool: Pool) -> None:
    return None


CHECKS: List[Check] = [
    Check("rho0-zero", "rho_0 vanishes", lambda rng, pool: pick_chain(rng, pool), rho_zero, chain_candidates, show_chain),
    Check("rho-monotone", "rho_k is nondecreasing in k with a verified witness", lambda rng, pool: pick_chain(rng, pool), rho_monotone, chain_candidates, show_chain),
    Check("product-law", "rho_k(G x H) is the max of the factors", pick_pair, product_law, pair_candidates, show_pair),
    Check("subgroup-monotone", "rho_k(H) <= rho_k(G) for subgroup chains", pick_subgroup, subgroup_monotone, show=lambda c: [show_chain(c[0]), [list(g) for g in c[1]]]),
    Check("quotient-monotone", "rho_k(G/N) <= rho_k(G)", pick_normal, quotient_monotone, show=lambda c: [show_chain(c[0]), [list(g) for g in c[1]]]),
    Check("power-bound", "staggered powers stay within rho_k + k", pick_power, power_bound, show=lambda c: [show_chain(c[0]), c[1]]),
    Check("normal-chain", "normal chains have rho_k <= k", lambda rng, pool: pick_chain(rng, pool), normal_chain, chain_candidates, show_chain),
    Check("transitive-orbits", "orbit trees of G-sets are bounded by rho_k", lambda rng, pool: pick_chain(rng, pool), transitive_orbits, chain_candidates, show_chain),
    Check("interleave", "interleaved chains give isomorphic level subtrees", pick_interleaving, interleave, show=show_pair),
    Check("tree-levels", "sup of level-k subtree ranks bounds the tree rank within k", lambda rng, pool: gen.random_tree(rng), tree_levels, tree_candidates, tree_to_records),
    Check("weighted-deep-subtrees", "deep subtrees push the rank of weighted trees up", lambda rng, pool: gen.random_weighted_tree(rng), deep_subtrees, tree_candidates, tree_to_records),
    Check("tree-recursion", "subtree ranks follow the successor recursion", lambda rng, pool: gen.random_tree(rng), tree_recursion, tree_candidates, tree_to_records),
    Check("level-subtree", "level subtrees never raise the rank", pick_level_case, level_subtree_bound, tree_case_candidates, show_tree_case),
    Check("weighted-level-subtree", "level subtrees keep the limit part of weighted ranks", pick_weighted_case, weighted_level_subtree, tree_case_candidates, show_tree_case),
    Check("eqseq-product", "orbit tree of a product has the max rank", pick_eqseq_pair, eqseq_product, eqseq_pair_candidates, show_eqseq_pair),
    Check("ordinal-kernel", "ordinal addition, comparison and w-multiplication laws below w^3", pick_ordinals, ordinal_kernel, show=show_ordinals),
    Check("hierarchy", "G_a and H_a classify with rank a", _nothing, hierarchy, once=True),
    Check("wreath-growth", "wreath shadows grow with the top size", _nothing, wreath_growth, once=True),
]


def get_check(name: str) -> Check:
    for check in CHECKS:
        if check.name == name:
            return check
    raise KeyError(name)


def expression_check(exprs: Sequence[Any]) -> Check:
    """Classification identities for the expressions of a spec file."""

    def pick(rng: np.random.Generator, pool: Pool):
        return exprs[int(rng.integers(len(exprs)))]

    def holds(e, mutant: Optional[str]) -> Optional[str]:
        c = rank_calculus.classify(e)
        if rank_calculus.classify(Prod((e, Trivial()))) != c:
            return f"{format_expr(e)} x trivial classifies differently from {c}"
        if rank_calculus.classify(e) != c:
            return f"classification of {format_expr(e)} is not deterministic"
        if not c.is_alpha_cli(add(c.rank, Ordinal.of(1))):
            return f"{format_expr(e)} is not (rank+1)-CLI"
        return None

    return Check("spec-expressions", "classification identities for spec expressions", pick, holds, show=format_expr)
