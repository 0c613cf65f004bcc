"""
File: orbit_category.py

Purpose: Orbit categories O^C(F) over a closed family C of subgroups and
         contravariant F_p-functors on them. A morphism P -> Q is the
         Inn(Q)-orbit of an F-morphism under postcomposition, represented by
         its lexicographically least image tuple; composition is tabulated
         once at construction. Functors carry one matrix per morphism, with
         M(phi): M(Q) -> M(P) of shape (dim M(P), dim M(Q)).

Imports from: dataclasses, functools, logging, typing, numpy, src.cohomology,
              src.errors, src.fp_linalg, src.fusion, src.groups, src.settings,
              src.verdicts
Imported by: src.homalg, src.rep_graphs, src.verification, app.py

Key Functions:
- close_family(), centric_family(), certify_family(): Subgroup families
- build_orbit_category(): O^C(F) with canonical representatives (cached)
- constant_functor(), representable_functor(), cohomology_functor(): Functors
- restrict_functor(), induce_functor(): Change of fusion system
- kernel_functor(), cokernel_functor(): Kernels and cokernels of transformations
- nat_space(): All natural transformations between two functors

Key Classes:
- SubgroupFamily: Members plus closure certificate
- OrbitCategory: Objects, morphisms and composition table
- FunctorModule: Contravariant functor to F_p-vector spaces
- InducedModule: Induced functor with its Rep-class basis
- NaturalTransformation / NatSpace: Transformations and their spaces
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from .cohomology import group_cohomology, induced_cohomology_map, inner_triviality_check
from .errors import ArgumentError, CapacityError, ContainmentError, InvariantViolation
from .fp_linalg import (
    Coordinatizer,
    complement_columns,
    identity,
    image_basis,
    kernel_basis,
    matmul,
    rank,
    zeros,
)
from .fusion import FusionSystem
from .groups import GroupHom, SubgroupHandle, mask_of
from .settings import get_settings
from .verdicts import Check

logger = logging.getLogger(__name__)

Images = Tuple[int, ...]
ObjectRef = Union[int, SubgroupHandle]


# ------------------------------
# Subgroup families
# ------------------------------

@dataclass(frozen=True)
class SubgroupFamily:
    members: Tuple[SubgroupHandle, ...]
    conjugation_closed: bool = False
    overgroup_closed: bool = False
    name: str = ""

    def __contains__(self, P: SubgroupHandle) -> bool:
        return any(P == Q for Q in self.members)

    def __iter__(self) -> Iterator[SubgroupHandle]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def certified(self) -> bool:
        return self.conjugation_closed and self.overgroup_closed

    def minimal_members(self) -> List[SubgroupHandle]:
        return [P for P in self.members if not any(Q != P and Q.is_subgroup_of(P) for Q in self.members)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "members": [P.label() for P in self.members],
            "conjugation_closed": self.conjugation_closed,
            "overgroup_closed": self.overgroup_closed,
        }


def certify_family(F: FusionSystem, members: Iterable[SubgroupHandle], name: str = "") -> SubgroupFamily:
    """Record whether members are closed under F-conjugacy and overgroups in S."""
    chosen = tuple(sorted(set(members)))
    masks = {P.mask for P in chosen}
    for P in chosen:
        if not P.is_subgroup_of(F.S):
            raise ContainmentError(f"{P.label()} is not a subgroup of S")
    conj = all(Q.mask in masks for P in chosen for Q in F.iso_class(P))
    over = all(
        Q.mask in masks
        for P in chosen
        for Q in F.subgroups
        if P.is_subgroup_of(Q)
    )
    return SubgroupFamily(chosen, conj, over, name)


def close_family(F: FusionSystem, seed: Iterable[SubgroupHandle], name: str = "") -> SubgroupFamily:
    """Least family containing seed, closed under F-conjugacy and overgroups."""
    found: Dict[int, SubgroupHandle] = {}
    work = list(seed)
    while work:
        P = work.pop()
        if P.mask in found:
            continue
        if not P.is_subgroup_of(F.S):
            raise ContainmentError(f"{P.label()} is not a subgroup of S")
        found[P.mask] = P
        work.extend(F.iso_class(P))
        work.extend(Q for Q in F.subgroups if P.is_subgroup_of(Q))
    return SubgroupFamily(tuple(sorted(found.values())), True, True, name)


def centric_family(F: FusionSystem) -> SubgroupFamily:
    return certify_family(F, F.centric_subgroups(), "centric")


def centric_radical_closure(F: FusionSystem) -> SubgroupFamily:
    return close_family(F, F.centric_radical_subgroups(), "centric-radical-closure")


def all_subgroups_family(F: FusionSystem) -> SubgroupFamily:
    return SubgroupFamily(tuple(F.subgroups), True, True, "all")


def subfamily(C: SubgroupFamily, H: FusionSystem) -> SubgroupFamily:
    """Members of C inside the underlying group of H, certified for H."""
    return certify_family(H, [P for P in C if P.is_subgroup_of(H.S)], C.name)


# ------------------------------
# Orbit categories
# ------------------------------

class OrbitCategory:
    """
    O^C(F): objects the members of C, morphisms Inn(Q)\\Hom_F(P, Q).

    Morphisms are numbered globally; sources[m], targets[m] are object indices
    and images[m] the canonical representative aligned with P.members.
    """

    def __init__(self, F: FusionSystem, family: SubgroupFamily):
        if not family.certified:
            raise ArgumentError("Orbit categories need a family closed under conjugacy and overgroups")
        self.F = F
        self.family = family
        self.objects: Tuple[SubgroupHandle, ...] = tuple(sorted(family.members))
        self.index: Dict[SubgroupHandle, int] = {P: i for i, P in enumerate(self.objects)}
        self.sources: List[int] = []
        self.targets: List[int] = []
        self.images: List[Images] = []
        self.identities: List[int] = []
        self._lookup: Dict[Tuple[int, int, Images], int] = {}
        self._hom: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        for a, P in enumerate(self.objects):
            for b, Q in enumerate(self.objects):
                reps = sorted({self._canonical(img, Q) for img in F.hom_images(P, Q)})
                ids = []
                for img in reps:
                    m = len(self.images)
                    self.sources.append(a)
                    self.targets.append(b)
                    self.images.append(img)
                    self._lookup[(a, b, img)] = m
                    ids.append(m)
                self._hom[(a, b)] = tuple(ids)
            self.identities.append(self._lookup[(a, a, self._canonical(P.members, P))])
        self._composition = self._build_composition()
        logger.info(
            "Orbit category: %d objects, %d morphisms, %d composable pairs",
            len(self.objects), self.morphism_count, len(self._composition),
        )

    def __repr__(self) -> str:
        return f"OrbitCategory(objects={len(self.objects)}, morphisms={self.morphism_count})"

    def _canonical(self, images: Images, Q: SubgroupHandle) -> Images:
        G = Q.ambient
        return min(tuple(G.conj(q, y) for y in images) for q in Q.members)

    def _build_composition(self) -> Dict[Tuple[int, int], int]:
        pairs = sum(
            len(self._hom[(self.targets[m], c)])
            for m in range(self.morphism_count)
            for c in range(len(self.objects))
        )
        cap = get_settings().morphism_cap
        if pairs > cap:
            raise CapacityError("morphism_cap", cap, pairs)
        table: Dict[Tuple[int, int], int] = {}
        for m1 in range(self.morphism_count):
            b = self.targets[m1]
            Q = self.objects[b]
            pos = Q.position
            first = self.images[m1]
            for c in range(len(self.objects)):
                for m2 in self._hom[(b, c)]:
                    second = self.images[m2]
                    img = tuple(second[pos[y]] for y in first)
                    table[(m2, m1)] = self.lookup(self.sources[m1], c, img)
        return table

    # Objects ---------------------------------------------------------------

    def ob(self, P: ObjectRef) -> int:
        if isinstance(P, int):
            return P
        try:
            return self.index[P]
        except KeyError:
            raise ArgumentError(f"{P.label()} is not an object of the orbit category")

    def has_object(self, P: SubgroupHandle) -> bool:
        return P in self.index

    # Morphisms -------------------------------------------------------------

    @property
    def morphism_count(self) -> int:
        return len(self.images)

    def hom(self, P: ObjectRef, Q: ObjectRef) -> Tuple[int, ...]:
        return self._hom[(self.ob(P), self.ob(Q))]

    def lookup(self, P: ObjectRef, Q: ObjectRef, images: Images) -> int:
        """Morphism id of the orbit of images: P -> Q."""
        a, b = self.ob(P), self.ob(Q)
        key = (a, b, self._canonical(tuple(images), self.objects[b]))
        try:
            return self._lookup[key]
        except KeyError:
            raise ArgumentError("Map is not a morphism of the orbit category")

    def inclusion(self, P: ObjectRef, Q: ObjectRef) -> int:
        a = self.ob(P)
        return self.lookup(a, Q, self.objects[a].members)

    def compose(self, m2: int, m1: int) -> int:
        """m2 after m1."""
        try:
            return self._composition[(m2, m1)]
        except KeyError:
            raise ArgumentError(f"Morphisms {m2} and {m1} are not composable")

    def composable_pairs(self) -> Iterable[Tuple[Tuple[int, int], int]]:
        return self._composition.items()

    def is_identity(self, m: int) -> bool:
        return self.identities[self.sources[m]] == m

    def non_identity(self) -> List[int]:
        return [m for m in range(self.morphism_count) if not self.is_identity(m)]

    def group_hom(self, m: int) -> GroupHom:
        return GroupHom(self.objects[self.sources[m]], self.objects[self.targets[m]], self.images[m])

    def is_connected(self) -> bool:
        if not self.objects:
            return True
        seen = {0}
        work = [0]
        while work:
            a = work.pop()
            for m in range(self.morphism_count):
                for x, y in ((self.sources[m], self.targets[m]), (self.targets[m], self.sources[m])):
                    if x == a and y not in seen:
                        seen.add(y)
                        work.append(y)
        return len(seen) == len(self.objects)

    def describe(self, m: int) -> Dict[str, Any]:
        return {
            "source": self.sources[m],
            "target": self.targets[m],
            "images": list(self.images[m]),
        }


@lru_cache(maxsize=None)
def build_orbit_category(F: FusionSystem, C: SubgroupFamily) -> OrbitCategory:
    return OrbitCategory(F, C)


def check_associativity(O: OrbitCategory) -> Check:
    """(m3 m2) m1 = m3 (m2 m1) on every composable triple, identities neutral."""
    for m in range(O.morphism_count):
        a, b = O.sources[m], O.targets[m]
        if O.compose(m, O.identities[a]) != m or O.compose(O.identities[b], m) != m:
            return Check("associativity", False, {"identity": m})
    for (m2, m1), m21 in O.composable_pairs():
        c = O.targets[m2]
        for d in range(len(O.objects)):
            for m3 in O.hom(c, d):
                if O.compose(m3, m21) != O.compose(O.compose(m3, m2), m1):
                    return Check("associativity", False, {"triple": [m1, m2, m3]})
    return Check("associativity", True)


# ------------------------------
# Functors
# ------------------------------

class FunctorModule:
    """Contravariant functor O -> F_p-mod given by dimensions and matrices."""

    def __init__(
        self,
        category: OrbitCategory,
        dims: Sequence[int],
        action: Dict[int, np.ndarray],
        p: int,
        name: str = "",
    ):
        self.category = category
        self.dims: Tuple[int, ...] = tuple(int(d) for d in dims)
        self.p = p
        self.name = name
        if len(self.dims) != len(category.objects):
            raise ArgumentError(f"Expected {len(category.objects)} dimensions, got {len(self.dims)}")
        self._action: Dict[int, np.ndarray] = {}
        for m in range(category.morphism_count):
            a, b = category.sources[m], category.targets[m]
            shape = (self.dims[a], self.dims[b])
            if m in action:
                mat = np.mod(np.asarray(action[m], dtype=np.int64).reshape(shape), p)
            elif category.is_identity(m):
                mat = identity(self.dims[a])
            else:
                raise ArgumentError(f"Missing action matrix for morphism {m}")
            self._action[m] = mat

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"FunctorModule({label}dims={list(self.dims)})"

    def dim(self, P: ObjectRef) -> int:
        return self.dims[self.category.ob(P)]

    def matrix(self, m: int) -> np.ndarray:
        return self._action[m]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def check_functoriality(self) -> Check:
        """M(id) = 1 and M(m2 m1) = M(m1) M(m2) on every composable pair."""
        O = self.category
        for a, m in enumerate(O.identities):
            if not np.array_equal(self._action[m], identity(self.dims[a])):
                return Check("functoriality", False, {"identity": a})
        for (m2, m1), m in O.composable_pairs():
            expected = matmul(self._action[m1], self._action[m2], self.p)
            if not np.array_equal(self._action[m], expected):
                return Check("functoriality", False, {"pair": [m1, m2]})
        return Check("functoriality", True)

    def to_dict(self) -> Dict[str, Any]:
        O = self.category
        return {
            "name": self.name,
            "p": self.p,
            "objects": [P.label() for P in O.objects],
            "dims": list(self.dims),
            "morphisms": [
                dict(O.describe(m), matrix=self._action[m].tolist())
                for m in range(O.morphism_count)
            ],
        }


def dump_functor(M: FunctorModule) -> Dict[str, Any]:
    return M.to_dict()


def load_functor(O: OrbitCategory, data: Dict[str, Any], p: Optional[int] = None) -> FunctorModule:
    """Rebuild a functor from dump_functor output (objects by position)."""
    prime = int(data.get("p", p if p is not None else O.F.p))
    try:
        dims = [int(d) for d in data["dims"]]
        action = {}
        for entry in data["morphisms"]:
            m = O.lookup(int(entry["source"]), int(entry["target"]), tuple(int(x) for x in entry["images"]))
            action[m] = np.array(entry["matrix"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as e:
        raise ArgumentError(f"Malformed functor data: {e}")
    return FunctorModule(O, dims, action, prime, name=str(data.get("name", "")))


def constant_functor(O: OrbitCategory, p: Optional[int] = None) -> FunctorModule:
    prime = p or O.F.p
    return FunctorModule(O, [1] * len(O.objects), {m: identity(1) for m in range(O.morphism_count)}, prime, "constant")


def zero_functor(O: OrbitCategory, p: Optional[int] = None) -> FunctorModule:
    prime = p or O.F.p
    return FunctorModule(O, [0] * len(O.objects), {m: zeros(0, 0) for m in range(O.morphism_count)}, prime, "zero")


def representable_functor(O: OrbitCategory, x: ObjectRef, p: Optional[int] = None) -> FunctorModule:
    """F_p[Hom_O(-, x)], acting by precomposition."""
    prime = p or O.F.p
    target = O.ob(x)
    bases = [O.hom(a, target) for a in range(len(O.objects))]
    rows = [{psi: k for k, psi in enumerate(basis)} for basis in bases]
    action = {}
    for m in range(O.morphism_count):
        a, b = O.sources[m], O.targets[m]
        mat = zeros(len(bases[a]), len(bases[b]))
        for k, psi in enumerate(bases[b]):
            mat[rows[a][O.compose(psi, m)], k] = 1
        action[m] = mat
    return FunctorModule(O, [len(B) for B in bases], action, prime, f"representable({target})")


def cohomology_functor(O: OrbitCategory, j: int, p: Optional[int] = None) -> FunctorModule:
    """
    P -> H^j(P; F_p), acting by induced maps.

    Raises:
        CapacityError: j above the configured degree cap for some object
        InvariantViolation: an inner automorphism acts nontrivially
    """
    prime = p or O.F.p
    dims = [group_cohomology(P, j, prime).dim for P in O.objects]
    for P in O.objects:
        check = inner_triviality_check(P, j, prime)
        if not check:
            raise InvariantViolation("Inner automorphism acts nontrivially on cohomology", check.witness)
    action = {m: induced_cohomology_map(O.group_hom(m), j, prime) for m in range(O.morphism_count)}
    logger.info("Cohomology functor H^%d: dims %s", j, dims)
    return FunctorModule(O, dims, action, prime, f"H^{j}")


def _block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def direct_sum(A: FunctorModule, B: FunctorModule) -> FunctorModule:
    if A.category is not B.category:
        raise ArgumentError("Direct sum needs functors on the same category")
    O = A.category
    dims = [a + b for a, b in zip(A.dims, B.dims)]
    action = {m: _block_diag([A.matrix(m), B.matrix(m)]) for m in range(O.morphism_count)}
    return FunctorModule(O, dims, action, A.p, f"{A.name}+{B.name}")


def restrict_functor(M: FunctorModule, O_sub: OrbitCategory) -> FunctorModule:
    """Compose M with the inclusion O_sub -> M.category (same subgroups and maps)."""
    O = M.category
    try:
        objects = [O.ob(P) for P in O_sub.objects]
        morphisms = [
            O.lookup(objects[O_sub.sources[m]], objects[O_sub.targets[m]], O_sub.images[m])
            for m in range(O_sub.morphism_count)
        ]
    except ArgumentError as e:
        raise ArgumentError(f"Embedding is not a functor: {e}")
    dims = [M.dims[a] for a in objects]
    action = {m: M.matrix(mm) for m, mm in enumerate(morphisms)}
    return FunctorModule(O_sub, dims, action, M.p, M.name)


# ------------------------------
# Rep classes and induction
# ------------------------------

def rep_canonical(H: FusionSystem, images: Images) -> Images:
    """Least theta o phi over H-isomorphisms theta out of phi(P)."""
    R = SubgroupHandle(H.ambient, mask_of(images))
    if not R.is_subgroup_of(H.S):
        raise ContainmentError("Image is not contained in the underlying group of H")
    pos = R.position
    return min(tuple(theta[pos[y]] for y in images) for theta in H.maps(R))


@lru_cache(maxsize=None)
def rep_classes(F: FusionSystem, P: SubgroupHandle, H: FusionSystem) -> Tuple[Images, ...]:
    """Canonical representatives of Rep_F(P, H) = Hom_F(P, S_H) modulo H-isomorphisms."""
    return tuple(sorted({rep_canonical(H, img) for img in F.hom_images(P, H.S)}))


class InducedModule(FunctorModule):
    """M induced from O^C(H) to O^C(F); the value at P is a sum over Rep_F(P, H)."""

    def __init__(self, source: FunctorModule, into: OrbitCategory):
        O_H = source.category
        H = O_H.F
        G = into.F.ambient
        self.source = source
        self.subsystem = H
        self.classes: List[Tuple[Images, ...]] = []
        self.offsets: List[List[int]] = []
        self._class_index: List[Dict[Images, int]] = []
        dims = []
        for P in into.objects:
            classes = tuple(
                c for c in rep_classes(into.F, P, H)
                if O_H.has_object(SubgroupHandle(G, mask_of(c)))
            )
            offsets, total = [], 0
            for c in classes:
                offsets.append(total)
                total += source.dim(SubgroupHandle(G, mask_of(c)))
            self.classes.append(classes)
            self.offsets.append(offsets)
            self._class_index.append({c: k for k, c in enumerate(classes)})
            dims.append(total)
        action = {m: self._action_matrix(into, m, dims) for m in range(into.morphism_count)}
        super().__init__(into, dims, action, source.p, f"ind({source.name})")

    def class_index(self, a: int, images: Images) -> int:
        return self._class_index[a][rep_canonical(self.subsystem, images)]

    def _action_matrix(self, O: OrbitCategory, m: int, dims: List[int]) -> np.ndarray:
        G = O.F.ambient
        O_H, H = self.source.category, self.subsystem
        a, b = O.sources[m], O.targets[m]
        Q = O.objects[b]
        alpha = O.images[m]
        mat = zeros(dims[a], dims[b])
        for k, psi in enumerate(self.classes[b]):
            psi_alpha = tuple(psi[Q.position[y]] for y in alpha)
            chi = rep_canonical(H, psi_alpha)
            k2 = self._class_index[a][chi]
            R = SubgroupHandle(G, mask_of(chi))
            back = dict(zip(chi, psi_alpha))
            mu = tuple(back[r] for r in R.members)
            mid = O_H.lookup(R, SubgroupHandle(G, mask_of(psi)), mu)
            block = self.source.matrix(mid)
            r0, c0 = self.offsets[a][k2], self.offsets[b][k]
            mat[r0 : r0 + block.shape[0], c0 : c0 + block.shape[1]] = block
        return mat


def induce_functor(M: FunctorModule, into: OrbitCategory) -> InducedModule:
    if M.category.F.S.ambient != into.F.S.ambient:
        raise ArgumentError("Induction needs fusion systems in the same ambient group")
    return InducedModule(M, into)


def induced_constant(H: FusionSystem, O: OrbitCategory) -> InducedModule:
    """The constant functor of O^C(H) induced to O, C restricted to S_H."""
    O_H = build_orbit_category(H, subfamily(O.family, H))
    return induce_functor(constant_functor(O_H, O.F.p), O)


# ------------------------------
# Natural transformations
# ------------------------------

@dataclass
class NaturalTransformation:
    source: FunctorModule
    target: FunctorModule
    components: List[np.ndarray]  # (dim target(P), dim source(P))
    name: str = ""

    def component(self, P: ObjectRef) -> np.ndarray:
        return self.components[self.source.category.ob(P)]

    def check_naturality(self) -> Check:
        O = self.source.category
        p = self.source.p
        for m in range(O.morphism_count):
            a, b = O.sources[m], O.targets[m]
            left = matmul(self.components[a], self.source.matrix(m), p)
            right = matmul(self.target.matrix(m), self.components[b], p)
            if not np.array_equal(left, right):
                return Check("naturality", False, {"morphism": m})
        return Check("naturality", True)

    def compose(self, inner: "NaturalTransformation") -> "NaturalTransformation":
        """self after inner."""
        p = self.source.p
        comps = [matmul(x, y, p) for x, y in zip(self.components, inner.components)]
        return NaturalTransformation(inner.source, self.target, comps)

    def ranks(self) -> List[int]:
        return [rank(c, self.source.p) for c in self.components]

    def is_iso(self) -> bool:
        return all(
            c.shape[0] == c.shape[1] == r
            for c, r in zip(self.components, self.ranks())
        )


def identity_transformation(M: FunctorModule) -> NaturalTransformation:
    return NaturalTransformation(M, M, [identity(d) for d in M.dims], "id")


def kernel_functor(eta: NaturalTransformation) -> Tuple[FunctorModule, NaturalTransformation]:
    """ker(eta) with its inclusion into eta.source."""
    A, p = eta.source, eta.source.p
    O = A.category
    bases = [kernel_basis(c, p) if c.shape[1] else zeros(0, 0) for c in eta.components]
    coords = [Coordinatizer(b, p) for b in bases]
    action = {}
    for m in range(O.morphism_count):
        a, b = O.sources[m], O.targets[m]
        moved = matmul(A.matrix(m), bases[b], p)
        action[m] = coords[a](moved) if bases[b].shape[1] else zeros(bases[a].shape[1], 0)
    K = FunctorModule(O, [b.shape[1] for b in bases], action, p, f"ker({eta.name})")
    return K, NaturalTransformation(K, A, bases, "inclusion")


def cokernel_functor(eta: NaturalTransformation) -> Tuple[FunctorModule, NaturalTransformation]:
    """coker(eta) with its projection from eta.target."""
    B, p = eta.target, eta.target.p
    O = B.category
    projections, lifts = [], []
    for c, d in zip(eta.components, B.dims):
        img = image_basis(c, p) if c.size else zeros(d, 0)
        lift = identity(d)[:, complement_columns(img, d, p)] if d else zeros(0, 0)
        projections.append(_projection(np.hstack([img, lift]), lift.shape[1], p))
        lifts.append(lift)
    action = {}
    for m in range(O.morphism_count):
        a, b = O.sources[m], O.targets[m]
        action[m] = matmul(projections[a], matmul(B.matrix(m), lifts[b], p), p)
    Q = FunctorModule(O, [l.shape[1] for l in lifts], action, p, f"coker({eta.name})")
    return Q, NaturalTransformation(B, Q, projections, "projection")


def _projection(basis: np.ndarray, tail: int, p: int) -> np.ndarray:
    """Rows of the inverse basis change giving the last tail coordinates."""
    n = basis.shape[0]
    if n == 0:
        return zeros(tail, 0)
    coords = Coordinatizer(basis, p)(identity(n))
    return coords[basis.shape[1] - tail :]


@dataclass
class NatSpace:
    """Basis of Nat(A, B); each column stacks the row-major components."""

    source: FunctorModule
    target: FunctorModule
    basis: np.ndarray
    offsets: List[int] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def transformation(self, vector: np.ndarray) -> NaturalTransformation:
        comps = []
        for a, (dA, dB) in enumerate(zip(self.source.dims, self.target.dims)):
            start = self.offsets[a]
            comps.append(np.asarray(vector[start : start + dA * dB], dtype=np.int64).reshape(dB, dA))
        return NaturalTransformation(self.source, self.target, comps)

    def transformations(self) -> List[NaturalTransformation]:
        return [self.transformation(self.basis[:, k]) for k in range(self.dim)]

    def coordinates(self, vectors: np.ndarray) -> np.ndarray:
        return Coordinatizer(self.basis, self.source.p)(vectors)


def flatten_transformation(eta: NaturalTransformation) -> np.ndarray:
    parts = [c.reshape(-1) for c in eta.components]
    return np.concatenate(parts) if parts else zeros(0, 1)[:, 0]


def nat_space(A: FunctorModule, B: FunctorModule) -> NatSpace:
    """
    All natural transformations A -> B.

    Unknowns are the components X_P (dim B(P) x dim A(P)); every non-identity
    morphism m: P -> Q contributes X_P A(m) - B(m) X_Q = 0.
    """
    if A.category is not B.category:
        raise ArgumentError("Natural transformations need functors on the same category")
    O, p = A.category, A.p
    sizes = [dA * dB for dA, dB in zip(A.dims, B.dims)]
    offsets = list(np.cumsum([0] + sizes[:-1])) if sizes else []
    offsets = [int(x) for x in offsets]
    total = sum(sizes)
    blocks = []
    for m in O.non_identity():
        a, b = O.sources[m], O.targets[m]
        rows = B.dims[a] * A.dims[b]
        if rows == 0:
            continue
        block = zeros(rows, total)
        if sizes[a]:
            block[:, offsets[a] : offsets[a] + sizes[a]] += np.kron(identity(B.dims[a]), A.matrix(m).T)
        if sizes[b]:
            block[:, offsets[b] : offsets[b] + sizes[b]] -= np.kron(B.matrix(m), identity(A.dims[b]))
        blocks.append(np.mod(block, p))
    if total == 0:
        basis = zeros(0, 0)
    elif blocks:
        basis = kernel_basis(np.vstack(blocks), p)
    else:
        basis = identity(total)
    return NatSpace(A, B, basis, offsets)


def precomposition_matrix(f: NaturalTransformation, space_from: NatSpace, space_to: NatSpace) -> np.ndarray:
    """
    beta -> beta o f from Nat(f.target, M) to Nat(f.source, M).

    Returns:
        Matrix of shape (space_to.dim, space_from.dim)
    """
    p = f.source.p
    if space_from.dim == 0 or space_to.dim == 0:
        return zeros(space_to.dim, space_from.dim)
    columns = [
        flatten_transformation(beta.compose(f))
        for beta in space_from.transformations()
    ]
    return space_to.coordinates(np.stack(columns, axis=1) % p)


def induce_transformation(eta: NaturalTransformation, into: OrbitCategory) -> Tuple[InducedModule, InducedModule, NaturalTransformation]:
    """Induce eta: A -> B from O^C(H) to into; components are blockwise."""
    A_ind = induce_functor(eta.source, into)
    B_ind = induce_functor(eta.target, into)
    O_H = eta.source.category
    G = into.F.ambient
    comps = []
    for a in range(len(into.objects)):
        blocks = [eta.component(O_H.ob(SubgroupHandle(G, mask_of(c)))) for c in A_ind.classes[a]]
        comps.append(_block_diag(blocks) if blocks else zeros(0, 0))
    return A_ind, B_ind, NaturalTransformation(A_ind, B_ind, comps, f"ind({eta.name})")


if __name__ == "__main__":
    from .fusion import realize
    from .groups import sylow
    from .presets import symmetric

    G = symmetric(4)
    F = realize(G, sylow(G, 2))
    O = build_orbit_category(F, centric_family(F))
    print(O)
    for j in range(3):
        print(f"H^{j} dims on centric objects:", list(cohomology_functor(O, j).dims))
