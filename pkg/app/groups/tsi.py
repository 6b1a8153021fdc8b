"""Normality checks for chains: conjugate unions, normal cores and normal closures."""
import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Optional

from sympy.combinatorics import PermutationGroup

from app.groups.chain import ChainGroup, from_levels, rho_profile
from app.groups.perm import Perm, closure, conjugate, from_sympy, inverse, perm_group
from app.ordinals.cnf import Ordinal

logger = logging.getLogger(__name__)


def level_group(group: ChainGroup, n: int) -> PermutationGroup:
    return perm_group(group.level_gens(n), group.degree)


def is_normal_level(group: ChainGroup, n: int) -> bool:
    return level_group(group, n).is_normal(level_group(group, 0))


def closure_gens(group: ChainGroup, m: int) -> List[Perm]:
    """Generators of the normal closure of G_m in G_0."""
    if len(group.level(m)) == 1:
        return []
    normal = level_group(group, 0).normal_closure(level_group(group, m))
    return [from_sympy(g, group.degree) for g in normal.generators]


def conjugates_inside(group: ChainGroup, m: int, k: int, gens: Optional[List[Perm]] = None) -> bool:
    """Whether g^-1 G_m g lies in G_k for every g in G_0."""
    target = group.level(k)
    gens = closure_gens(group, m) if gens is None else gens
    return all(g in target for g in gens)


def conjugate_witnesses(group: ChainGroup) -> List[int]:
    """For each k the least m with the union of conjugates of G_m inside G_k."""
    closures = [closure_gens(group, m) for m in range(group.length + 1)]
    return [
        next(m for m in range(group.length + 1) if conjugates_inside(group, m, k, closures[m]))
        for k in range(group.length + 1)
    ]


def normal_core(group: ChainGroup, n: int) -> FrozenSet[Perm]:
    """The largest normal subgroup of G_0 inside G_n."""
    level = group.level(n)
    reps, _ = group.coset_index(min(n, group.length))
    core = set(level)
    for rep in reps:
        back = inverse(rep)
        core = {h for h in core if conjugate(back, h) in level}
    return frozenset(core)


def normal_closure(group: ChainGroup, n: int) -> FrozenSet[Perm]:
    return closure(closure_gens(group, n), group.degree)


def core_chain(group: ChainGroup) -> ChainGroup:
    return from_levels(group.degree, [normal_core(group, n) for n in range(group.length + 1)])


def klee_chain(group: ChainGroup, witnesses: Optional[List[int]] = None) -> ChainGroup:
    """N_k = normal closure of G_{m_k}, a normal chain with N_k inside G_k."""
    witnesses = conjugate_witnesses(group) if witnesses is None else witnesses
    return from_levels(group.degree, [normal_closure(group, m) for m in witnesses])


@dataclass
class TsiReport:
    normal_levels: List[bool]
    witnesses: List[int]
    core_orders: List[int]
    klee_orders: List[int]
    klee_profile: List[Ordinal]

    @property
    def all_normal(self) -> bool:
        return all(self.normal_levels)

    @property
    def klee_bounded(self) -> bool:
        return all(r <= k for k, r in enumerate(self.klee_profile))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "all_normal": self.all_normal,
            "normal_levels": self.normal_levels,
            "witnesses": self.witnesses,
            "core_orders": self.core_orders,
            "klee_orders": self.klee_orders,
            "klee_profile": [str(r) for r in self.klee_profile],
            "klee_bounded": self.klee_bounded,
        }


def tsi_check(group: ChainGroup) -> TsiReport:
    normal = [is_normal_level(group, n) for n in range(group.length + 1)]
    witnesses = conjugate_witnesses(group)
    core = core_chain(group)
    klee = klee_chain(group, witnesses)
    logger.debug(f"tsi check: normal levels {normal}, witnesses {witnesses}")
    return TsiReport(
        normal_levels=normal,
        witnesses=witnesses,
        core_orders=core.orders()[: group.length + 1],
        klee_orders=klee.orders()[: group.length + 1],
        klee_profile=rho_profile(klee),
    )
