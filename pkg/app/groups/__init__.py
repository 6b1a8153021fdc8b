# Permutation groups with subgroup chains
from app.groups.perm import Perm, closure, compose, format_cycles, identity, inverse, parse_cycles
from app.groups.chain import (
    ChainGroup,
    coset_eqseq,
    coset_tree,
    cosets,
    make_chain_group,
    rho,
    rho_k,
    rho_profile,
    trivial_chain,
)
