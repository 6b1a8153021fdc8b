"""Permutations as image tuples, cycle notation and subgroup closure.

A permutation of {0, ..., m-1} is the tuple of its images. Composition follows
function order: compose(p, q)[i] = p[q[i]], so q acts first. Group computations
go through sympy's PermutationGroup; tuples are what the rest of the package
stores and hashes.
"""
import logging
import re
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from sympy.combinatorics import Permutation, PermutationGroup

from app.config import settings
from app.errors import BudgetExceeded, InvalidPermutation

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def is_identity(p: Perm) -> bool:
    return all(i == image for i, image in enumerate(p))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    result = [0] * len(p)
    for i, image in enumerate(p):
        result[image] = i
    return tuple(result)


def conjugate(g: Perm, h: Perm) -> Perm:
    """g h g^-1"""
    return compose(compose(g, h), inverse(g))


def direct_sum(p: Perm, q: Perm) -> Perm:
    """p on the first len(p) points, q shifted after it."""
    shift = len(p)
    return tuple(p) + tuple(shift + i for i in q)


def embed(p: Perm, offset: int, degree: int) -> Perm:
    """Place p on the points offset .. offset+len(p)-1 of a larger set."""
    images = list(range(degree))
    for i, image in enumerate(p):
        images[offset + i] = offset + image
    return tuple(images)


def restrict(p: Perm, offset: int, size: int) -> Perm:
    return tuple(p[offset + i] - offset for i in range(size))


def make_perm(images: Sequence[int], degree: Optional[int] = None) -> Perm:
    images = tuple(int(i) for i in images)
    if degree is not None and len(images) != degree:
        raise InvalidPermutation(f"{list(images)} has {len(images)} images, expected {degree}")
    if not is_perm(images):
        raise InvalidPermutation(f"{list(images)} is not a permutation")
    return images


_CYCLE = re.compile(r"\(([^()]*)\)")


def to_sympy(p: Perm) -> Permutation:
    return Permutation(list(p))


def from_sympy(p: Permutation, degree: int) -> Perm:
    images = list(p.array_form)
    return tuple(images + list(range(len(images), degree)))


def perm_group(gens: Iterable[Perm], degree: int) -> PermutationGroup:
    """The sympy group generated by gens; the identity of the given degree when gens is empty."""
    gens = [to_sympy(g) for g in gens] or [to_sympy(identity(degree))]
    return PermutationGroup(gens)


def parse_cycles(text: str, degree: int) -> Perm:
    """Read `(0 1 2)(3 4)`, `()` or an image list `[1, 0, 2]`."""
    text = text.strip()
    if text.startswith("["):
        body = text.strip("[] ")
        images = [int(x) for x in re.split(r"[,\s]+", body) if x] if body else []
        return make_perm(images, degree)
    if _CYCLE.sub("", text).strip():
        raise InvalidPermutation(f"cannot read {text!r} as cycles")
    cycles = []
    seen: Set[int] = set()
    for match in _CYCLE.finditer(text):
        cycle = [int(x) for x in re.split(r"[,\s]+", match.group(1).strip()) if x]
        for point in cycle:
            if point < 0 or point >= degree:
                raise InvalidPermutation(f"point {point} is outside 0..{degree - 1}")
            if point in seen:
                raise InvalidPermutation(f"point {point} appears in two cycles of {text!r}")
            seen.add(point)
        if cycle:
            cycles.append(cycle)
    if not cycles:
        return identity(degree)
    return from_sympy(Permutation(cycles, size=degree), degree)


def format_cycles(p: Perm) -> str:
    cycles = to_sympy(p).cyclic_form
    return "".join("(" + " ".join(str(x) for x in cycle) + ")" for cycle in cycles) or "()"


def cycle_degree(texts: Iterable[str]) -> int:
    """Smallest degree that fits every point named in the given cycle strings."""
    points = [int(x) for text in texts for x in re.findall(r"\d+", text)]
    return 1 + max(points, default=0)


def closure(gens: Iterable[Perm], degree: Optional[int] = None, budget: Optional[int] = None) -> FrozenSet[Perm]:
    """Elements of the subgroup generated by gens."""
    gens = [g for g in gens]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    if any(len(g) != degree for g in gens):
        raise InvalidPermutation(f"generators must all have degree {degree}")
    budget = budget or settings.max_group_order
    gens = [g for g in dict.fromkeys(gens) if not is_identity(g)]
    if not gens:
        return frozenset([identity(degree)])
    group = perm_group(gens, degree)
    order = group.order()
    if order > budget:
        raise BudgetExceeded(budget)
    elements = frozenset(tuple(af) for af in group.generate_dimino(af=True))
    logger.debug(f"closure of {len(gens)} generators on {degree} points has {order} elements")
    return elements


def generators_for(elements: Iterable[Perm], degree: int, budget: Optional[int] = None) -> List[Perm]:
    """A small generating set of the given subgroup, picked greedily in sorted order."""
    target = frozenset(elements)
    gens: List[Perm] = []
    current = perm_group(gens, degree)
    for g in sorted(target):
        if current.contains(to_sympy(g)):
            continue
        gens.append(g)
        current = perm_group(gens, degree)
        if current.order() == len(target):
            break
    return gens


def cyclic_generator(order: int) -> Perm:
    """The rotation i -> i+1 mod order."""
    return tuple((i + 1) % order for i in range(order))
