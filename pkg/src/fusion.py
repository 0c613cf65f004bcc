"""
File: fusion.py

Purpose: Fusion systems over a finite p-group S. A fusion system stores, for
         every subgroup P of S, the full set of its morphisms P -> S as image
         tuples; Hom_F(P, Q) is the part landing in Q. Systems are built by
         realization in a finite group or as the closure of seed morphisms,
         and the module decides saturation and classifies subgroups.

Imports from: dataclasses, itertools, logging, typing, src.errors, src.groups,
              src.settings, src.verdicts
Imported by: src.orbit_category, src.rep_graphs, src.verification, app.py

Key Functions:
- realize(): F_S(G), morphisms given by conjugation in G
- generate() / join(): Smallest fusion system containing given morphisms
- normalizer_subsystem(): N_F(P)
- is_saturated(): Sylow and extension axioms with a witness on failure
- classify(): Fully normalized / centric / radical / essential flags
- extension_subgroup(): Automorphisms extending to strictly larger subgroups
- enumerate_saturated_systems(): All saturated systems over a small p-group

Key Classes:
- FusionSystem: Materialized morphism sets over S
- SubgroupReport: Classification of one subgroup
- SaturationVerdict: Result of the saturation test
- Triple: (F1, F2, Fe) together with the join F
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple
import logging

from .errors import ArgumentError, CapacityError, ContainmentError
from .groups import (
    FiniteGroup,
    GroupHom,
    GroupLike,
    SubgroupHandle,
    as_handle,
    automorphism_group,
    centralizer,
    conjugate_subgroup,
    group_from_generators,
    intersect,
    join_subgroups,
    mask_of,
    normalizer,
    prime_power,
    subgroup_generated,
    subgroups_of,
    sylow,
)
from .settings import get_settings
from .verdicts import Check, ScenarioVerdict

logger = logging.getLogger(__name__)

Images = Tuple[int, ...]
PositionMap = Tuple[int, ...]


# ------------------------------
# Position-permutation helpers
# ------------------------------

def _compose(a: PositionMap, b: PositionMap) -> PositionMap:
    """a after b."""
    return tuple(a[i] for i in b)


def _invert(a: PositionMap) -> PositionMap:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def _mulclose(gens: Iterable[PositionMap], n: int) -> set:
    gens = list(gens)
    identity = tuple(range(n))
    els = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                c = _compose(a, g)
                if c not in els:
                    els.add(c)
                    fresh.append(c)
        frontier = fresh
    return els


def _reduce_generators(gens: Iterable[PositionMap], n: int) -> List[PositionMap]:
    chosen: List[PositionMap] = []
    span = {tuple(range(n))}
    for g in sorted(set(gens)):
        if g not in span:
            chosen.append(g)
            span = _mulclose(chosen, n)
    return chosen


def _as_group(A: FiniteGroup, H: SubgroupHandle) -> FiniteGroup:
    """A subgroup handle of a permutation group as a group in its own right."""
    return FiniteGroup(A.degree, [A.elements[i] for i in H.members], prime_hint=A.prime_hint)


def _infer_prime(S: SubgroupHandle, p: Optional[int]) -> int:
    pk = prime_power(S.order)
    if pk is None:
        if S.order == 1:
            return p or S.ambient.prime_hint or 2
        raise ArgumentError(f"Not a p-group: order {S.order}")
    if p is not None and p != pk[0]:
        raise ArgumentError(f"Order {S.order} is not a power of {p}")
    return pk[0]


# ------------------------------
# Fusion systems
# ------------------------------

class FusionSystem:
    """
    A fusion system over S.

    For every subgroup P of S the sorted tuple of all morphisms P -> S is kept
    (each an image tuple aligned with P.members). Hom_F(P, Q) is the subset
    with image inside Q.
    """

    def __init__(
        self,
        S: SubgroupHandle,
        p: int,
        maps: Dict[SubgroupHandle, Iterable[Images]],
        name: str = "",
    ):
        self.S = S
        self.p = p
        self.name = name
        self.subgroups: Tuple[SubgroupHandle, ...] = subgroups_of(S)
        self._maps: Dict[SubgroupHandle, Tuple[Images, ...]] = {
            P: tuple(sorted(set(maps.get(P, ())))) for P in self.subgroups
        }
        self._sets: Dict[SubgroupHandle, frozenset] = {}
        self._cache: Dict[Any, Any] = {}
        cap = get_settings().morphism_cap
        if self.morphism_count > cap:
            raise CapacityError("morphism_cap", cap, self.morphism_count)

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"FusionSystem({label}|S|={self.S.order}, morphisms={self.morphism_count})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FusionSystem):
            return NotImplemented
        return self.S == other.S and self._maps == other._maps

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def key(self) -> Tuple:
        if "key" not in self._cache:
            self._cache["key"] = (self.S.mask, tuple((P.mask, self._maps[P]) for P in self.subgroups))
        return self._cache["key"]

    @property
    def morphism_count(self) -> int:
        return sum(len(v) for v in self._maps.values())

    @property
    def ambient(self) -> FiniteGroup:
        return self.S.ambient

    # Morphism access -------------------------------------------------------

    def maps(self, P: SubgroupHandle) -> Tuple[Images, ...]:
        try:
            return self._maps[P]
        except KeyError:
            raise ContainmentError(f"{P!r} is not a subgroup of the underlying group")

    def map_set(self, P: SubgroupHandle) -> frozenset:
        if P not in self._sets:
            self._sets[P] = frozenset(self.maps(P))
        return self._sets[P]

    def hom_images(self, P: SubgroupHandle, Q: SubgroupHandle) -> Tuple[Images, ...]:
        """Hom_F(P, Q) as image tuples."""
        if Q.mask == self.S.mask:
            return self.maps(P)
        q = Q.mask
        return tuple(img for img in self.maps(P) if all((q >> y) & 1 for y in img))

    def homs(self, P: SubgroupHandle, Q: Optional[SubgroupHandle] = None) -> List[GroupHom]:
        target = Q if Q is not None else self.S
        return [GroupHom(P, target, img) for img in self.hom_images(P, target)]

    def contains(self, f: GroupHom) -> bool:
        return f.domain in self._maps and f.images in self.map_set(f.domain)

    def aut_images(self, P: SubgroupHandle) -> Tuple[Images, ...]:
        return tuple(img for img in self.maps(P) if mask_of(img) == P.mask)

    def iso_class(self, P: SubgroupHandle) -> Tuple[SubgroupHandle, ...]:
        """F-conjugacy class of P, canonically sorted."""
        key = ("class", P.mask)
        if key not in self._cache:
            masks = {mask_of(img) for img in self.maps(P)}
            self._cache[key] = tuple(sorted(SubgroupHandle(self.ambient, m) for m in masks))
        return self._cache[key]

    def are_conjugate(self, P: SubgroupHandle, Q: SubgroupHandle) -> bool:
        return P.order == Q.order and any(mask_of(img) == Q.mask for img in self.maps(P))

    def all_pairs(self) -> Iterable[Tuple[SubgroupHandle, Images]]:
        for P in self.subgroups:
            for img in self._maps[P]:
                yield P, img

    # Subgroup predicates ---------------------------------------------------

    def is_fully_normalized(self, P: SubgroupHandle) -> bool:
        size = normalizer(self.S, P).order
        return all(normalizer(self.S, Q).order <= size for Q in self.iso_class(P))

    def is_centric(self, P: SubgroupHandle) -> bool:
        return all(centralizer(self.S, Q).is_subgroup_of(Q) for Q in self.iso_class(P))

    def fully_normalized_representative(self, P: SubgroupHandle) -> SubgroupHandle:
        return next(Q for Q in self.iso_class(P) if self.is_fully_normalized(Q))

    def centric_subgroups(self) -> List[SubgroupHandle]:
        return [r.subgroup for r in classify(self) if r.centric]

    def centric_radical_subgroups(self) -> List[SubgroupHandle]:
        return [r.subgroup for r in classify(self) if r.centric_radical]

    def essential_subgroups(self, conventional: bool = True) -> List[SubgroupHandle]:
        return [r.subgroup for r in classify(self) if (r.essential if conventional else r.proper_strongly_p_embedded)]


# ------------------------------
# Construction
# ------------------------------

def realize(G: GroupLike, S: SubgroupHandle, p: Optional[int] = None, name: str = "") -> FusionSystem:
    """
    F_S(G): morphisms P -> S are the maps x -> g x g^-1 with g in G.

    Args:
        G: Group (or subgroup handle) providing the conjugating elements
        S: p-subgroup of G
        p: Prime (inferred from |S| when omitted)

    Returns:
        FusionSystem over S
    """
    W = as_handle(G)
    if not S.is_subgroup_of(W):
        raise ContainmentError("S is not a subgroup of G")
    prime = _infer_prime(S, p)
    ambient = S.ambient
    maps: Dict[SubgroupHandle, set] = {}
    for P in subgroups_of(S):
        gens = P.generators
        images = set()
        for g in W.members:
            if all((S.mask >> ambient.conj(g, x)) & 1 for x in gens):
                images.add(tuple(ambient.conj(g, x) for x in P.members))
        maps[P] = images
    F = FusionSystem(S, prime, maps, name=name)
    logger.info("Realized fusion system over |S|=%d in |G|=%d: %d morphisms", S.order, W.order, F.morphism_count)
    return F


def inner_fusion(S: SubgroupHandle, p: Optional[int] = None) -> FusionSystem:
    return realize(S, S, p, name="inner")


def _edge(X: SubgroupHandle, images: Images) -> Tuple[SubgroupHandle, SubgroupHandle, PositionMap]:
    Y = SubgroupHandle(X.ambient, mask_of(images))
    return X, Y, tuple(Y.position[y] for y in images)


def _restrict_edge(edge, R: SubgroupHandle):
    X, Y, pm = edge
    images = tuple(Y.members[pm[X.position[r]]] for r in R.members)
    return _edge(R, images)


def _close_level(level: Sequence[SubgroupHandle], edges: Sequence[Tuple]) -> List[Dict[str, Any]]:
    """
    Groupoid closure of isomorphisms between subgroups of one order.

    Each connected component gets a base B, transports tau_X: B -> X along a
    breadth-first tree and Aut(B) generated by the Schreier elements
    tau_Y^-1 g tau_X; then Iso(X, Y) = tau_Y Aut(B) tau_X^-1.
    """
    adjacency: Dict[SubgroupHandle, List[Tuple[SubgroupHandle, PositionMap]]] = {X: [] for X in level}
    for X, Y, pm in edges:
        adjacency[X].append((Y, pm))
        adjacency[Y].append((X, _invert(pm)))

    seen: Dict[SubgroupHandle, bool] = {}
    components = []
    for B in level:
        if B in seen:
            continue
        n = B.order
        tau = {B: tuple(range(n))}
        queue = [B]
        for X in queue:
            seen[X] = True
            for Y, pm in adjacency[X]:
                if Y not in tau:
                    tau[Y] = _compose(pm, tau[X])
                    queue.append(Y)
        schreier = set()
        for X in queue:
            for Y, pm in adjacency[X]:
                schreier.add(_compose(_invert(tau[Y]), _compose(pm, tau[X])))
        aut = _mulclose(schreier, n)
        components.append({
            "base": B,
            "members": queue,
            "tau": tau,
            "aut": aut,
            "aut_gens": _reduce_generators(schreier, n),
        })
    return components


def _generate_from_pairs(
    S: SubgroupHandle,
    p: int,
    pairs: Iterable[Tuple[SubgroupHandle, Images]],
    name: str = "",
) -> FusionSystem:
    subgroups = subgroups_of(S)
    by_order: Dict[int, List[SubgroupHandle]] = {}
    for P in subgroups:
        by_order.setdefault(P.order, []).append(P)

    seeds: Dict[int, List[Tuple]] = {}
    for P, images in pairs:
        if not P.is_subgroup_of(S) or any(not (S.mask >> y) & 1 for y in images):
            raise ContainmentError("Seed morphism does not live in S")
        if len(set(images)) != len(images):
            raise ArgumentError("Seed morphism is not injective")
        seeds.setdefault(P.order, []).append(_edge(P, tuple(images)))

    ambient = S.ambient
    maps: Dict[SubgroupHandle, set] = {}
    carried: List[Tuple] = []
    for k in sorted(by_order, reverse=True):
        level = by_order[k]
        edges = list(seeds.get(k, []))
        for X in level:
            for s in S.generators:
                edges.append(_edge(X, tuple(ambient.conj(s, x) for x in X.members)))
        for edge in carried:
            for R in subgroups_of(edge[0]):
                if R.order == k:
                    edges.append(_restrict_edge(edge, R))

        carried = []
        for comp in _close_level(level, edges):
            B, tau, aut = comp["base"], comp["tau"], comp["aut"]
            for X in comp["members"]:
                inv_x = _invert(tau[X])
                pulled = [_compose(a, inv_x) for a in aut]
                images = set()
                for Y in comp["members"]:
                    ty = tau[Y]
                    for q in pulled:
                        images.add(tuple(Y.members[i] for i in _compose(ty, q)))
                maps[X] = images
                if X != B:
                    carried.append((B, X, tau[X]))
            carried.extend((B, B, a) for a in comp["aut_gens"])
        logger.debug("Closed level of order %d: %d subgroups, %d generators carried", k, len(level), len(carried))

    F = FusionSystem(S, p, maps, name=name)
    logger.info("Generated fusion system over |S|=%d: %d morphisms", S.order, F.morphism_count)
    return F


def generate(
    S: SubgroupHandle,
    seeds: Iterable[GroupHom] = (),
    p: Optional[int] = None,
    name: str = "",
) -> FusionSystem:
    """
    Smallest fusion system over S containing the inner fusion and the seeds.

    Levels of subgroups are closed by decreasing order; each level is the
    groupoid generated by inner conjugations, seeds of that order and the
    restrictions of the previous level's generators.
    """
    prime = _infer_prime(S, p)
    return _generate_from_pairs(S, prime, ((f.domain, f.images) for f in seeds), name=name)


def join(F1: FusionSystem, F2: FusionSystem, name: str = "") -> FusionSystem:
    """<F1, F2>_S over the underlying group of F1."""
    if not F2.S.is_subgroup_of(F1.S):
        raise ArgumentError("Underlying group of the second system is not contained in the first")
    pairs = list(F1.all_pairs()) + list(F2.all_pairs())
    return _generate_from_pairs(F1.S, F1.p, pairs, name=name)


def normalizer_subsystem(F: FusionSystem, P: SubgroupHandle) -> FusionSystem:
    """
    N_F(P) over N_S(P).

    A morphism of A <= N_S(P) belongs to it when it is the restriction of some
    F-morphism of AP that maps P onto P.
    """
    if not P.is_subgroup_of(F.S):
        raise ContainmentError("P is not a subgroup of S")
    N = normalizer(F.S, P)
    maps: Dict[SubgroupHandle, set] = {}
    for A in subgroups_of(N):
        AP = join_subgroups(A, P)
        pos = AP.position
        idx_a = [pos[a] for a in A.members]
        idx_p = [pos[x] for x in P.members]
        images = set()
        for img in F.maps(AP):
            if mask_of(img[i] for i in idx_p) != P.mask:
                continue
            restricted = tuple(img[i] for i in idx_a)
            if all((N.mask >> y) & 1 for y in restricted):
                images.add(restricted)
        maps[A] = images
    return FusionSystem(N, F.p, maps, name=f"N({F.name})" if F.name else "normalizer")


def intersection(F: FusionSystem, H: FusionSystem) -> FusionSystem:
    """Homset-wise meet over the intersection of the underlying groups."""
    S0 = intersect(F.S, H.S)
    maps = {
        P: set(F.hom_images(P, S0)) & set(H.hom_images(P, S0))
        for P in subgroups_of(S0)
    }
    return FusionSystem(S0, F.p, maps)


# ------------------------------
# Comparison
# ------------------------------

def fusion_subsystem_leq(F: FusionSystem, H: FusionSystem) -> Check:
    """Every morphism of F is a morphism of H."""
    if not F.S.is_subgroup_of(H.S):
        return Check("subsystem", False, {"reason": "underlying group not contained"})
    for P in F.subgroups:
        missing = [img for img in F.maps(P) if img not in H.map_set(P)]
        if missing:
            return Check("subsystem", False, GroupHom(P, F.S, missing[0]))
    return Check("subsystem", True)


def fusion_subsystem_eq(F: FusionSystem, H: FusionSystem) -> Check:
    if F.S != H.S:
        return Check("equal", False, {"reason": "different underlying groups"})
    forward = fusion_subsystem_leq(F, H)
    if not forward:
        return Check("equal", False, forward.witness)
    backward = fusion_subsystem_leq(H, F)
    return Check("equal", backward.holds, backward.witness)


# ------------------------------
# Automorphism groups
# ------------------------------

def aut_group(F: FusionSystem, P: SubgroupHandle) -> FiniteGroup:
    """Aut_F(P) acting on positions of P.members."""
    key = ("aut", P.mask)
    if key not in F._cache:
        pos = P.position
        perms = [tuple(pos[y] for y in img) for img in F.aut_images(P)]
        F._cache[key] = FiniteGroup(P.order, perms, prime_hint=F.p)
    return F._cache[key]


def _conjugation_positions(S: SubgroupHandle, P: SubgroupHandle, within: SubgroupHandle) -> List[PositionMap]:
    G = S.ambient
    pos = P.position
    return [tuple(pos[G.conj(s, x)] for x in P.members) for s in within.members]


def inner_subgroup(F: FusionSystem, P: SubgroupHandle) -> SubgroupHandle:
    """Inn(P) = Aut_P(P) inside aut_group(F, P)."""
    A = aut_group(F, P)
    return SubgroupHandle(A, mask_of(A.index[g] for g in _conjugation_positions(F.S, P, P)))


def quotient_group(A: FiniteGroup, N: SubgroupHandle) -> FiniteGroup:
    """A/N as the permutation group of A acting on the cosets aN (N normal)."""
    keys = sorted({min(A.mul(a, n) for n in N.members) for a in range(A.order)})
    where = {k: i for i, k in enumerate(keys)}
    coset_of = {}
    for a in range(A.order):
        coset_of[a] = where[min(A.mul(a, n) for n in N.members)]
    perms = []
    for g in A.whole().generators:
        perms.append(tuple(coset_of[A.mul(g, k)] for k in keys))
    return group_from_generators(len(keys), perms, prime_hint=A.prime_hint)


def out_group(F: FusionSystem, P: SubgroupHandle) -> FiniteGroup:
    """Out_F(P) = Aut_F(P)/Inn(P)."""
    key = ("out", P.mask)
    if key not in F._cache:
        F._cache[key] = quotient_group(aut_group(F, P), inner_subgroup(F, P))
    return F._cache[key]


def p_core(A: FiniteGroup, p: int) -> SubgroupHandle:
    """O_p(A): the intersection of the conjugates of a Sylow p-subgroup."""
    Q = sylow(A, p)
    mask = Q.mask
    for a in range(A.order):
        mask &= conjugate_subgroup(a, Q).mask
    return SubgroupHandle(A, mask)


def strongly_p_embedded(A: FiniteGroup, p: int) -> Optional[SubgroupHandle]:
    """
    A proper subgroup H containing a nontrivial Sylow p-subgroup Q with
    xQx^-1 meeting H trivially for every x outside H, or None.
    """
    Q = sylow(A, p)
    if Q.order == 1:
        return None
    whole = A.whole()
    for H in subgroups_of(whole):
        if H.mask == whole.mask or not Q.is_subgroup_of(H):
            continue
        if all(conjugate_subgroup(x, Q).mask & H.mask == 1 for x in range(A.order) if x not in H):
            return H
    return None


def extension_subgroup(F: FusionSystem, P: SubgroupHandle) -> SubgroupHandle:
    """
    H_F(P) inside aut_group(F, P): generated by the automorphisms of P that
    extend to F-morphisms of overgroups of index p.
    """
    A = aut_group(F, P)
    pos = P.position
    gens = set()
    for T in F.subgroups:
        if T.order != F.p * P.order or not P.is_subgroup_of(T):
            continue
        idx = [T.position[x] for x in P.members]
        for img in F.maps(T):
            restricted = tuple(img[i] for i in idx)
            if mask_of(restricted) == P.mask:
                gens.add(A.index[tuple(pos[y] for y in restricted)])
    return subgroup_generated(A, sorted(gens))


# ------------------------------
# Saturation
# ------------------------------

@dataclass(frozen=True)
class SaturationVerdict:
    saturated: bool
    axiom: Optional[str] = None
    witness: Optional[GroupHom] = None
    extension_domain: Optional[SubgroupHandle] = None

    def __bool__(self) -> bool:
        return self.saturated

    def to_dict(self) -> Dict[str, Any]:
        return {
            "saturated": self.saturated,
            "axiom": self.axiom,
            "witness": self.witness,
            "extension_domain": self.extension_domain,
        }


def _aut_s_positions(F: FusionSystem, Q: SubgroupHandle) -> frozenset:
    key = ("aut_s_pos", Q.mask)
    if key not in F._cache:
        F._cache[key] = frozenset(_conjugation_positions(F.S, Q, normalizer(F.S, Q)))
    return F._cache[key]


def extension_domain(F: FusionSystem, P: SubgroupHandle, images: Images) -> SubgroupHandle:
    """N_phi = {y in N_S(P) : phi c_y phi^-1 in Aut_S(phi(P))}."""
    G = F.ambient
    Q = SubgroupHandle(G, mask_of(images))
    qpos = Q.position
    phi = dict(zip(P.members, images))
    allowed = _aut_s_positions(F, Q)
    mask = 0
    for y in normalizer(F.S, P).members:
        perm = [0] * Q.order
        for x in P.members:
            perm[qpos[phi[x]]] = qpos[phi[G.conj(y, x)]]
        if tuple(perm) in allowed:
            mask |= 1 << y
    return SubgroupHandle(G, mask)


def is_saturated(F: FusionSystem) -> SaturationVerdict:
    """
    Sylow axiom: Aut_S(S) is a Sylow p-subgroup of Aut_F(S).
    Extension axiom: every phi: P -> S with phi(P) fully normalized extends
    to some F-morphism of N_phi.
    """
    key = "saturation"
    if key in F._cache:
        return F._cache[key]
    S = F.S
    inn_order = S.order // centralizer(S, S).order
    index = len(F.aut_images(S)) // inn_order
    if index % F.p == 0:
        witness = next(
            (GroupHom(S, S, img) for img in F.aut_images(S)
             if tuple(S.position[y] for y in img) not in _aut_s_positions(F, S)),
            None,
        )
        verdict = SaturationVerdict(False, "sylow", witness)
        F._cache[key] = verdict
        return verdict

    for P in F.subgroups:
        for img in F.maps(P):
            Q = SubgroupHandle(F.ambient, mask_of(img))
            if not F.is_fully_normalized(Q):
                continue
            N_phi = extension_domain(F, P, img)
            if N_phi.mask == P.mask:
                continue
            idx = [N_phi.position[x] for x in P.members]
            if not any(tuple(e[i] for i in idx) == img for e in F.maps(N_phi)):
                verdict = SaturationVerdict(False, "extension", GroupHom(P, S, img), N_phi)
                logger.debug("Extension axiom fails at a morphism of a subgroup of order %d", P.order)
                F._cache[key] = verdict
                return verdict
    verdict = SaturationVerdict(True)
    F._cache[key] = verdict
    return verdict


# ------------------------------
# Classification
# ------------------------------

@dataclass(frozen=True)
class SubgroupReport:
    """Flags of one subgroup; proper_strongly_p_embedded means Out_F(P) has a proper strongly p-embedded subgroup, and essential adds centricity."""

    subgroup: SubgroupHandle
    index: int
    fully_normalized: bool
    centric: bool
    radical: bool
    centric_radical: bool
    essential: bool
    proper_strongly_p_embedded: bool
    conjugacy_class: Tuple[SubgroupHandle, ...]
    aut_order: int
    out_order: int

    def to_row(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "order": self.subgroup.order,
            "members": self.subgroup.label(),
            "fully_normalized": self.fully_normalized,
            "centric": self.centric,
            "radical": self.radical,
            "centric_radical": self.centric_radical,
            "essential": self.essential,
            "proper_strongly_p_embedded": self.proper_strongly_p_embedded,
            "class_size": len(self.conjugacy_class),
            "aut_order": self.aut_order,
            "out_order": self.out_order,
        }


def classify(F: FusionSystem) -> List[SubgroupReport]:
    """Per-subgroup flags in canonical subgroup order."""
    if "classify" in F._cache:
        return F._cache["classify"]
    reports = []
    for k, P in enumerate(F.subgroups):
        A = aut_group(F, P)
        inn = inner_subgroup(F, P)
        out = out_group(F, P)
        centric = F.is_centric(P)
        radical = p_core(A, F.p).mask == inn.mask
        embedded = strongly_p_embedded(out, F.p) is not None
        reports.append(SubgroupReport(
            subgroup=P,
            index=k,
            fully_normalized=F.is_fully_normalized(P),
            centric=centric,
            radical=radical,
            centric_radical=centric and radical,
            essential=embedded and centric,
            proper_strongly_p_embedded=embedded,
            conjugacy_class=F.iso_class(P),
            aut_order=A.order,
            out_order=out.order,
        ))
    logger.info(
        "Classified %d subgroups: %d centric, %d essential",
        len(reports), sum(r.centric for r in reports), sum(r.essential for r in reports),
    )
    F._cache["classify"] = reports
    return reports


def alperin_generators(F: FusionSystem) -> List[GroupHom]:
    """Aut_F(S) and Aut_F(P) for the (conventional) essential subgroups P."""
    homs = [GroupHom(F.S, F.S, img) for img in F.aut_images(F.S)]
    for P in F.essential_subgroups():
        homs.extend(GroupHom(P, F.S, img) for img in F.aut_images(P))
    return homs


def pruned_subsystem(F: FusionSystem, pruned: Sequence[SubgroupHandle], name: str = "") -> FusionSystem:
    """<Aut_F(S), Aut_F(P) : P essential, P not F-conjugate to a pruned subgroup>_S."""
    seeds = [GroupHom(F.S, F.S, img) for img in F.aut_images(F.S)]
    for P in F.essential_subgroups():
        if any(F.are_conjugate(P, A) for A in pruned):
            continue
        seeds.extend(GroupHom(P, F.S, img) for img in F.aut_images(P))
    return generate(F.S, seeds, F.p, name=name or "pruned")


def subsystem_from_automorphisms(
    F: FusionSystem,
    subgroups: Sequence[SubgroupHandle],
    base: Optional[FusionSystem] = None,
) -> FusionSystem:
    """<base, Aut_F(P) : P in subgroups>_S (base defaults to inner fusion)."""
    seeds: List[GroupHom] = []
    if base is not None:
        seeds.extend(GroupHom(P, F.S, img) for P, img in base.all_pairs())
    for P in subgroups:
        seeds.extend(GroupHom(P, F.S, img) for img in F.aut_images(P))
    return generate(F.S, seeds, F.p)


# ------------------------------
# Normalizer checks
# ------------------------------

def normalizer_intersection_check(F: FusionSystem, H: FusionSystem, P: SubgroupHandle) -> ScenarioVerdict:
    """
    For H <= F saturated and P fully F-normalized: N_H(P) <= N_F(P) meet H,
    with equal morphism sets on every F-centric subgroup of N_{S_H}(P).
    """
    verdict = ScenarioVerdict("normalizer-intersection")
    verdict.require("H <= F", fusion_subsystem_leq(H, F).holds)
    verdict.require("F saturated", is_saturated(F).saturated)
    verdict.require("H saturated", is_saturated(H).saturated)
    verdict.require("P <= S_H", P.is_subgroup_of(H.S))
    verdict.require("P fully F-normalized", P.is_subgroup_of(F.S) and F.is_fully_normalized(P))
    if not verdict.hypotheses_hold:
        logger.warning("Normalizer intersection check skipped: %s", verdict.failed_hypotheses())
        return verdict
    NH = normalizer_subsystem(H, P)
    meet = intersection(normalizer_subsystem(F, P), H)
    contained = fusion_subsystem_leq(NH, meet)
    verdict.conclude("N_H(P) <= N_F(P) meet H", contained.holds, contained.witness)
    mismatches = [
        R for R in NH.subgroups
        if F.is_centric(R) and NH.map_set(R) != meet.map_set(R)
    ]
    verdict.conclude("equal on F-centric subgroups", not mismatches, mismatches[0] if mismatches else None)
    return verdict


# ------------------------------
# Triples
# ------------------------------

@dataclass(frozen=True)
class Triple:
    """F1 over S, F2 and Fe over S' <= S, and F = <F1, F2>_S."""

    F1: FusionSystem
    F2: FusionSystem
    Fe: FusionSystem
    F: FusionSystem = field(compare=False)

    @property
    def S(self) -> SubgroupHandle:
        return self.F1.S

    @property
    def S_prime(self) -> SubgroupHandle:
        return self.F2.S

    @property
    def p(self) -> int:
        return self.F1.p


def make_triple(F1: FusionSystem, F2: FusionSystem, Fe: FusionSystem) -> Triple:
    if F2.S != Fe.S:
        raise ArgumentError("F2 and Fe must share their underlying group")
    if not F2.S.is_subgroup_of(F1.S):
        raise ArgumentError("S' must be a subgroup of S")
    for name, big in (("F1", F1), ("F2", F2)):
        check = fusion_subsystem_leq(Fe, big)
        if not check:
            raise ArgumentError(f"Fe is not contained in {name}")
    return Triple(F1, F2, Fe, join(F1, F2, name="join"))


# ------------------------------
# Enumeration over small p-groups
# ------------------------------

def _essential_candidates(S: SubgroupHandle, p: int) -> List[Tuple[SubgroupHandle, List[List[Images]]]]:
    """
    For each S-conjugacy class of proper S-centric subgroups P (first member
    taken), the automorphism groups Y >= Aut_S(P) with Aut_S(P) Sylow in Y and
    Y/Inn(P) having a strongly p-embedded subgroup, each as a list of images.
    """
    G = S.ambient
    seen = set()
    out = []
    for P in subgroups_of(S):
        if P.mask == S.mask or P.mask in seen:
            continue
        for s in S.members:
            seen.add(conjugate_subgroup(s, P).mask)
        if not centralizer(S, P).is_subgroup_of(P):
            continue
        A = automorphism_group(P)
        aut_s = SubgroupHandle(A, mask_of(A.index[g] for g in _conjugation_positions(S, P, normalizer(S, P))))
        inn = SubgroupHandle(A, mask_of(A.index[g] for g in _conjugation_positions(S, P, P)))
        options = []
        for Y in subgroups_of(A.whole()):
            if not aut_s.is_subgroup_of(Y) or (Y.order // aut_s.order) % p == 0:
                continue
            Yg = _as_group(A, Y)
            inn_y = SubgroupHandle(Yg, mask_of(Yg.index[A.elements[i]] for i in inn.members))
            if strongly_p_embedded(quotient_group(Yg, inn_y), p) is None:
                continue
            options.append([tuple(P.members[k] for k in A.elements[i]) for i in Y.members])
        if options:
            out.append((P, options))
    return out


def enumerate_saturated_systems(S: SubgroupHandle, p: Optional[int] = None) -> List[FusionSystem]:
    """
    All saturated fusion systems over a small p-group S, up to equality.

    Aut_F(S) ranges over the subgroups of Aut(S) containing Inn(S) with
    p'-index; each class of proper S-centric subgroups either keeps inner
    automorphisms only or receives one of its candidate automorphism groups.
    Every generated system is decided by is_saturated.
    """
    prime = _infer_prime(S, p)
    A = automorphism_group(S)
    inn = SubgroupHandle(A, mask_of(A.index[g] for g in _conjugation_positions(S, S, S)))
    tops = [
        X for X in subgroups_of(A.whole())
        if inn.is_subgroup_of(X) and (X.order // inn.order) % prime != 0
    ]
    candidates = _essential_candidates(S, prime)
    choices = [[None] + [(P, imgs) for imgs in options] for P, options in candidates]

    found: Dict[Tuple, FusionSystem] = {}
    for X in tops:
        top_pairs = [(S, tuple(S.members[k] for k in A.elements[i])) for i in X.members]
        for combo in product(*choices):
            pairs = list(top_pairs)
            for item in combo:
                if item is not None:
                    P, imgs = item
                    pairs.extend((P, img) for img in imgs)
            F = _generate_from_pairs(S, prime, pairs)
            if F.key in found or not is_saturated(F):
                continue
            found[F.key] = F
    systems = list(found.values())
    logger.info("Found %d saturated fusion systems over a group of order %d", len(systems), S.order)
    return systems


def dump_fusion_system(F: FusionSystem) -> Dict[str, Any]:
    """Objects as member index lists, homsets as image lists per domain."""
    G = F.ambient
    return {
        "p": F.p,
        "elements": [list(g) for g in G.elements],
        "S": list(F.S.members),
        "objects": [list(P.members) for P in F.subgroups],
        "homsets": [
            {"domain": k, "maps": [list(img) for img in F.maps(P)]}
            for k, P in enumerate(F.subgroups)
        ],
    }
