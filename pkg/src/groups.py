"""
File: groups.py

Purpose: Finite permutation groups held as fully enumerated, canonically sorted
         element lists. Subgroups are bitsets over the ambient element list,
         homomorphisms are tuples of images aligned with the domain's members.
         Everything downstream (fusion systems, cohomology, orbit categories)
         works on element indices of one ambient group.

Imports from: dataclasses, functools, itertools, logging, math, typing, numpy,
              src.errors, src.settings
Imported by: src.presets, src.fusion, src.cohomology, src.orbit_category,
             src.rep_graphs, src.verification, app.py

Key Functions:
- group_from_generators(): Closure of a generating set of permutations
- enumerate_subgroups() / subgroups_of(): All subgroups, canonically sorted
- normalizer(), centralizer(), center(), sylow(): Standard subgroups
- conjugation_hom(), compose_hom(), restrict_hom(), invert_iso(): Morphisms
- hom_from_generator_images(): Extend a generator assignment to a homomorphism
- automorphism_group(): Aut(P) as a permutation group on member positions

Key Classes:
- FiniteGroup: Enumerated permutation group with a lazy Cayley table
- SubgroupHandle: Subgroup of a FiniteGroup given by a member bitset
- GroupHom: Injective homomorphism between subgroups of one ambient group
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from .errors import ArgumentError, CapacityError, ContainmentError
from .settings import get_settings

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]

# Cayley tables are precomputed up to this order; larger groups compose on demand
TABLE_LIMIT = 2048


# ------------------------------
# Permutation helpers
# ------------------------------

def check_permutation(images: Sequence[int], degree: int) -> Permutation:
    """Validate a permutation of {0..degree-1} given by its images."""
    perm = tuple(int(x) for x in images)
    if len(perm) != degree or sorted(perm) != list(range(degree)):
        raise ArgumentError(f"Not a permutation of degree {degree}: {list(images)}")
    return perm


def perm_mul(g: Permutation, h: Permutation) -> Permutation:
    """Product g*h, acting as h first: (g*h)[i] = g[h[i]]."""
    return tuple(g[i] for i in h)


def perm_inv(g: Permutation) -> Permutation:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def cycles_to_perm(cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
    """Build a permutation from disjoint cycles, e.g. [(0, 2, 1, 3)]."""
    images = list(range(degree))
    for cycle in cycles:
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            images[a] = b
    return check_permutation(images, degree)


def cycle_string(g: Permutation) -> str:
    """Cycle notation, identity as '()'."""
    seen = set()
    parts = []
    for start in range(len(g)):
        if start in seen or g[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        x = g[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = g[x]
        parts.append("(" + " ".join(str(c) for c in cycle) + ")")
    return "".join(parts) or "()"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def prime_power(n: int) -> Optional[Tuple[int, int]]:
    """(p, k) with n = p**k, k >= 1, or None."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


# ------------------------------
# Groups
# ------------------------------

class FiniteGroup:
    """
    A permutation group stored as its sorted list of elements.

    Elements are referred to by their index in `elements`; the identity is
    always index 0 because it is the lexicographically smallest permutation.
    """

    def __init__(
        self,
        degree: int,
        elements: Iterable[Permutation],
        generators: Sequence[Permutation] = (),
        prime_hint: Optional[int] = None,
    ):
        self.degree = degree
        self.elements: Tuple[Permutation, ...] = tuple(sorted(set(elements)))
        self.index: Dict[Permutation, int] = {g: i for i, g in enumerate(self.elements)}
        self.generators: Tuple[Permutation, ...] = tuple(generators)
        self.prime_hint = prime_hint
        self._hash = hash((degree, self.elements))
        self._rows: Optional[List[List[int]]] = None
        self._inverses: Optional[List[int]] = None

    # Identity and equality -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup(degree={self.degree}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.elements)

    # Arithmetic on indices -------------------------------------------------

    def _build_table(self) -> None:
        n, d = self.order, self.degree
        E = np.array(self.elements, dtype=np.int64).reshape(n, d)
        rows: List[List[int]] = []
        if d <= 15:
            weights = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
            codes = E @ weights
            for i in range(n):
                rows.append(np.searchsorted(codes, E[i][E] @ weights).tolist())
        else:
            for i in range(n):
                rows.append([self.index[tuple(r)] for r in E[i][E].tolist()])
        self._rows = rows
        logger.debug("Cayley table built for group of order %d", n)

    @property
    def table(self) -> Optional[List[List[int]]]:
        if self._rows is None and self.order <= TABLE_LIMIT:
            self._build_table()
        return self._rows

    def mul(self, i: int, j: int) -> int:
        rows = self.table
        if rows is not None:
            return rows[i][j]
        return self.index[perm_mul(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        if self._inverses is None:
            self._inverses = [self.index[perm_inv(g)] for g in self.elements]
        return self._inverses[i]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def power(self, x: int, k: int) -> int:
        result = 0
        for _ in range(k):
            result = self.mul(result, x)
        return result

    def element(self, perm: Sequence[int]) -> int:
        try:
            return self.index[tuple(perm)]
        except KeyError:
            raise ArgumentError(f"Permutation {list(perm)} is not in the group")

    def whole(self) -> "SubgroupHandle":
        return SubgroupHandle(self, (1 << self.order) - 1)

    def trivial(self) -> "SubgroupHandle":
        return SubgroupHandle(self, 1)


GroupLike = Union[FiniteGroup, "SubgroupHandle"]


def group_from_generators(
    degree: int,
    gens: Sequence[Sequence[int]],
    prime_hint: Optional[int] = None,
    cap: Optional[int] = None,
) -> FiniteGroup:
    """
    Closure of a set of permutations under composition.

    Args:
        degree: Number of points
        gens: Generator image lists
        prime_hint: Prime remembered with the group (optional)
        cap: Largest allowed order (defaults to settings.group_size_cap)

    Returns:
        FiniteGroup with canonically sorted elements
    """
    limit = cap or get_settings().group_size_cap
    perms = [check_permutation(g, degree) for g in gens]
    identity_perm = tuple(range(degree))
    seen = {identity_perm}
    frontier = [identity_perm]
    while frontier:
        fresh = []
        for a in frontier:
            for g in perms:
                c = perm_mul(a, g)
                if c not in seen:
                    seen.add(c)
                    fresh.append(c)
                    if len(seen) > limit:
                        raise CapacityError("group_size_cap", limit, f"> {limit} elements")
        frontier = fresh
    group = FiniteGroup(degree, seen, perms, prime_hint)
    logger.info("Generated group of degree %d and order %d", degree, group.order)
    return group


# ------------------------------
# Subgroups
# ------------------------------

@dataclass(frozen=True)
class SubgroupHandle:
    ambient: FiniteGroup
    mask: int

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def __len__(self) -> int:
        return self.order

    def __lt__(self, other: "SubgroupHandle") -> bool:
        return self.sort_key < other.sort_key

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={list(self.members)})"

    @cached_property
    def members(self) -> Tuple[int, ...]:
        mask, out, i = self.mask, [], 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return tuple(out)

    @cached_property
    def order(self) -> int:
        return bin(self.mask).count("1")

    @cached_property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.order, self.members)

    @cached_property
    def position(self) -> Dict[int, int]:
        return {x: k for k, x in enumerate(self.members)}

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        """Greedy generating set: members not in the span of earlier choices."""
        gens: List[int] = []
        span = 1
        for x in self.members:
            if not (span >> x) & 1:
                gens.append(x)
                span = _closure_mask(self.ambient, gens)
        return tuple(gens)

    @cached_property
    def local_table(self) -> np.ndarray:
        """Multiplication table on member positions (identity at position 0)."""
        G, pos, mem = self.ambient, self.position, self.members
        return np.array([[pos[G.mul(x, y)] for y in mem] for x in mem], dtype=np.int64)

    @cached_property
    def local_inverse(self) -> np.ndarray:
        G, pos = self.ambient, self.position
        return np.array([pos[G.inv(x)] for x in self.members], dtype=np.int64)

    def is_subgroup_of(self, other: "SubgroupHandle") -> bool:
        return self.ambient == other.ambient and self.mask & ~other.mask == 0

    def label(self) -> str:
        return "{" + ", ".join(cycle_string(self.ambient.elements[x]) for x in self.members) + "}"


def as_handle(G: GroupLike) -> SubgroupHandle:
    return G.whole() if isinstance(G, FiniteGroup) else G


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def _closure_mask(G: FiniteGroup, gens: Sequence[int], start: Optional[SubgroupHandle] = None) -> int:
    if start is not None:
        mask, frontier = start.mask, list(start.members)
    else:
        mask, frontier = 1, [0]
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                c = G.mul(a, g)
                if not (mask >> c) & 1:
                    mask |= 1 << c
                    fresh.append(c)
        frontier = fresh
    return mask


def subgroup_generated(G: GroupLike, elements: Iterable[int]) -> SubgroupHandle:
    ambient = as_handle(G).ambient
    return SubgroupHandle(ambient, _closure_mask(ambient, list(elements)))


def join_subgroups(A: SubgroupHandle, B: SubgroupHandle) -> SubgroupHandle:
    """The subgroup generated by A and B."""
    if B.is_subgroup_of(A):
        return A
    return SubgroupHandle(A.ambient, _closure_mask(A.ambient, A.generators + B.generators, start=A))


def intersect(A: SubgroupHandle, B: SubgroupHandle) -> SubgroupHandle:
    return SubgroupHandle(A.ambient, A.mask & B.mask)


def element_order(G: GroupLike, x: int) -> int:
    ambient = as_handle(G).ambient
    k, y = 1, x
    while y != 0:
        y = ambient.mul(y, x)
        k += 1
    return k


def _cyclic_generators(G: FiniteGroup, x: int) -> int:
    """Mask of the generators of the cyclic subgroup <x>."""
    n = element_order(G, x)
    mask, y = 0, 0
    for k in range(1, n + 1):
        y = G.mul(y, x)
        if gcd(k, n) == 1:
            mask |= 1 << y
    return mask


@lru_cache(maxsize=None)
def subgroups_of(H: SubgroupHandle) -> Tuple[SubgroupHandle, ...]:
    """
    Every subgroup of H, breadth-first over cyclic extensions <K, x>.

    Returns:
        Subgroups sorted by (order, member list); the trivial subgroup first
    """
    G = H.ambient
    trivial = G.trivial()
    found: Dict[int, SubgroupHandle] = {trivial.mask: trivial}
    queue = [trivial]
    for K in queue:
        done = K.mask
        for x in H.members:
            if (done >> x) & 1:
                continue
            done |= _cyclic_generators(G, x)
            mask = _closure_mask(G, K.generators + (x,), start=K)
            if mask not in found:
                L = SubgroupHandle(G, mask)
                found[mask] = L
                queue.append(L)
    result = tuple(sorted(found.values(), key=lambda s: s.sort_key))
    logger.debug("Enumerated %d subgroups of a group of order %d", len(result), H.order)
    return result


def enumerate_subgroups(G: GroupLike) -> Tuple[SubgroupHandle, ...]:
    return subgroups_of(as_handle(G))


def conjugate_subgroup(g: int, P: SubgroupHandle) -> SubgroupHandle:
    G = P.ambient
    return SubgroupHandle(G, mask_of(G.conj(g, x) for x in P.members))


@lru_cache(maxsize=None)
def normalizer(within: GroupLike, P: SubgroupHandle) -> SubgroupHandle:
    """N_within(P): elements g of `within` with g P g^-1 = P."""
    W = as_handle(within)
    G = W.ambient
    gens = P.generators
    mask = 0
    for g in W.members:
        if all((P.mask >> G.conj(g, x)) & 1 for x in gens):
            mask |= 1 << g
    return SubgroupHandle(G, mask)


@lru_cache(maxsize=None)
def centralizer(within: GroupLike, P: SubgroupHandle) -> SubgroupHandle:
    """C_within(P): elements of `within` commuting with every element of P."""
    W = as_handle(within)
    G = W.ambient
    gens = P.generators
    mask = 0
    for g in W.members:
        if all(G.mul(g, x) == G.mul(x, g) for x in gens):
            mask |= 1 << g
    return SubgroupHandle(G, mask)


def center(P: SubgroupHandle) -> SubgroupHandle:
    return centralizer(P, P)


def is_normal(P: SubgroupHandle, within: GroupLike) -> bool:
    W = as_handle(within)
    return normalizer(W, P).mask == W.mask


def is_abelian(P: SubgroupHandle) -> bool:
    G = P.ambient
    gens = P.generators
    return all(G.mul(a, b) == G.mul(b, a) for a in gens for b in gens)


def exponent(P: SubgroupHandle) -> int:
    result = 1
    for x in P.members:
        n = element_order(P, x)
        result = result * n // gcd(result, n)
    return result


def is_p_group(P: GroupLike, p: int) -> bool:
    order = as_handle(P).order
    while order % p == 0:
        order //= p
    return order == 1


def is_extraspecial_exponent_p(P: SubgroupHandle, p: int) -> bool:
    """Non-abelian of order p^3 and exponent p (so extraspecial p_+^{1+2}, p odd)."""
    return P.order == p ** 3 and not is_abelian(P) and exponent(P) == p


def sylow(G: GroupLike, p: int) -> SubgroupHandle:
    """
    A Sylow p-subgroup, chosen deterministically.

    Starting from the trivial subgroup H, repeatedly adjoin the first element x
    (in canonical order) of N(H) outside H with x^p in H.
    """
    if not is_prime(p):
        raise ArgumentError(f"Invalid prime: {p}")
    W = as_handle(G)
    ambient = W.ambient
    H = ambient.trivial()
    while True:
        N = normalizer(W, H)
        step = next(
            (x for x in N.members if x not in H and ambient.power(x, p) in H),
            None,
        )
        if step is None:
            return H
        H = SubgroupHandle(ambient, _closure_mask(ambient, H.generators + (step,), start=H))


# ------------------------------
# Homomorphisms
# ------------------------------

@dataclass(frozen=True)
class GroupHom:
    domain: SubgroupHandle
    codomain: SubgroupHandle
    images: Tuple[int, ...]  # aligned with domain.members

    def __call__(self, x: int) -> int:
        return self.images[self.domain.position[x]]

    @cached_property
    def image(self) -> SubgroupHandle:
        return SubgroupHandle(self.domain.ambient, mask_of(self.images))

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_identity(self) -> bool:
        return self.images == self.domain.members

    def as_dict(self) -> Dict[int, int]:
        return dict(zip(self.domain.members, self.images))


def identity_hom(P: SubgroupHandle) -> GroupHom:
    return GroupHom(P, P, P.members)


def inclusion_hom(P: SubgroupHandle, Q: SubgroupHandle) -> GroupHom:
    if not P.is_subgroup_of(Q):
        raise ContainmentError("Inclusion requires P <= Q")
    return GroupHom(P, Q, P.members)


def conjugation_hom(g: int, P: SubgroupHandle, target: SubgroupHandle) -> GroupHom:
    """x -> g x g^-1 on P, landing in target."""
    G = P.ambient
    images = tuple(G.conj(g, x) for x in P.members)
    if any(not (target.mask >> y) & 1 for y in images):
        raise ContainmentError(
            f"Conjugate of {P.label()} by {cycle_string(G.elements[g])} is not contained in the target"
        )
    return GroupHom(P, target, images)


def compose_hom(f: GroupHom, g: GroupHom) -> GroupHom:
    """f after g."""
    if not g.image.is_subgroup_of(f.domain):
        raise ContainmentError("Image of the inner map is not contained in the outer domain")
    pos = f.domain.position
    return GroupHom(g.domain, f.codomain, tuple(f.images[pos[y]] for y in g.images))


def restrict_hom(f: GroupHom, P: SubgroupHandle, to_image: bool = False) -> GroupHom:
    if not P.is_subgroup_of(f.domain):
        raise ContainmentError("Restriction requires P <= domain")
    pos = f.domain.position
    images = tuple(f.images[pos[x]] for x in P.members)
    codomain = SubgroupHandle(P.ambient, mask_of(images)) if to_image else f.codomain
    return GroupHom(P, codomain, images)


def invert_iso(f: GroupHom) -> GroupHom:
    if f.image.mask != f.codomain.mask or not f.is_injective():
        raise ArgumentError("Only isomorphisms onto the codomain can be inverted")
    back = dict(zip(f.images, f.domain.members))
    return GroupHom(f.codomain, f.domain, tuple(back[y] for y in f.codomain.members))


def hom_from_generator_images(
    domain: SubgroupHandle,
    generators: Sequence[int],
    images: Sequence[int],
    codomain: SubgroupHandle,
) -> Optional[GroupHom]:
    """
    Extend generators -> images to a homomorphism, or None if ill-defined.

    Every Cayley-graph edge x -> x*g is checked, so a returned map is
    multiplicative. Injectivity is not required here.
    """
    G = domain.ambient
    pairs = list(zip(generators, images))
    hom = {0: 0}
    frontier = [0]
    while frontier:
        fresh = []
        for x in frontier:
            fx = hom[x]
            for g, gi in pairs:
                y = G.mul(x, g)
                fy = G.mul(fx, gi)
                known = hom.get(y)
                if known is None:
                    hom[y] = fy
                    fresh.append(y)
                elif known != fy:
                    return None
        frontier = fresh
    if len(hom) != domain.order or any(not (codomain.mask >> y) & 1 for y in hom.values()):
        return None
    return GroupHom(domain, codomain, tuple(hom[x] for x in domain.members))


def hom_as_positions(f: GroupHom) -> Tuple[int, ...]:
    """An automorphism of P as a permutation of member positions."""
    pos = f.codomain.position
    return tuple(pos[y] for y in f.images)


@lru_cache(maxsize=None)
def automorphism_group(P: SubgroupHandle) -> FiniteGroup:
    """
    Aut(P) acting on positions of P.members.

    Candidate images of the greedy generators are drawn from elements of the
    same order; each candidate is extended and kept when bijective.
    """
    gens = P.generators
    orders = {x: element_order(P, x) for x in P.members}
    pools = [[y for y in P.members if orders[y] == orders[g]] for g in gens]
    count = 1
    for pool in pools:
        count *= len(pool)
    cap = get_settings().morphism_cap
    if count > cap:
        raise CapacityError("morphism_cap", cap, count)
    perms = []
    for choice in product(*pools):
        f = hom_from_generator_images(P, gens, choice, P)
        if f is not None and f.is_injective():
            perms.append(hom_as_positions(f))
    return FiniteGroup(P.order, perms, prime_hint=P.ambient.prime_hint)


if __name__ == "__main__":
    S4 = group_from_generators(4, [(1, 2, 3, 0), (1, 0, 2, 3)])
    D8 = sylow(S4, 2)
    print(f"|S4| = {S4.order}, subgroups: {len(enumerate_subgroups(S4))}")
    print(f"Sylow 2-subgroup: {D8.label()}")
    print(f"|Aut(D8)| = {automorphism_group(D8).order}")
