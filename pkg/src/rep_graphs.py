"""
File: rep_graphs.py

Purpose: Rep sets and the bipartite Rep graphs of a triple (F1, F2, Fe).
         The F1- and F2-classes of Hom_F(P, -) are the vertices, the
         Fe-classes the edges; the cellular boundary of these graphs is the
         natural transformation f: CX1 -> CX0 of induced constant functors,
         whose kernel is the functor C_{F,Lambda}. Includes the tree criteria
         for vanishing and the pruning vanishing check.

Imports from: dataclasses, json, logging, typing, src.errors,
              src.fusion, src.groups, src.orbit_category, src.verdicts
Imported by: src.verification, app.py

Key Functions:
- rep_set(): Hom_F(P, S_H) modulo postcomposition by H-isomorphisms
- build_rep_graph(): Rep graph of a triple at one subgroup
- graph_map(): The graph morphism induced by a map Q -> P
- build_cx_complex() / c_functor(): f: CX1 -> CX0 and its kernel
- tree_criteria_check(): Sufficient conditions for a Rep graph to be a tree
- pruning_vanishing_check(): Trees and vanishing for a pruning triple

Key Classes:
- UnionFind: Disjoint sets with union by rank and path compression
- RepClass, RepGraph, GraphMorphism, CXComplex, TreeCriteria
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple
import json
import logging


from .errors import ArgumentError
from .fusion import (
    FusionSystem,
    Triple,
    fusion_subsystem_leq,
    fusion_subsystem_eq,
    is_saturated,
    make_triple,
    normalizer_subsystem,
    subsystem_from_automorphisms,
)
from .groups import GroupHom, SubgroupHandle
from .orbit_category import (
    FunctorModule,
    InducedModule,
    NaturalTransformation,
    OrbitCategory,
    SubgroupFamily,
    build_orbit_category,
    centric_family,
    certify_family,
    cokernel_functor,
    direct_sum,
    induced_constant,
    kernel_functor,
    rep_canonical,
    rep_classes,
)
from .fp_linalg import zeros
from .verdicts import Check, ScenarioVerdict

logger = logging.getLogger(__name__)

Images = Tuple[int, ...]
TAGS = ("F1", "F2", "Fe")


# ------------------------------
# Union-find
# ------------------------------

class UnionFind:
    """Disjoint-set forest over hashable items (union by rank, path compression)."""

    def __init__(self, items: Sequence[Hashable] = ()):
        self._parents: Dict[Hashable, Hashable] = {}
        self._ranks: Dict[Hashable, int] = {}
        for item in items:
            self.add(item)

    def add(self, item: Hashable) -> None:
        if item not in self._parents:
            self._parents[item] = item
            self._ranks[item] = 0

    def find(self, item: Hashable) -> Hashable:
        self.add(item)
        path = [item]
        root = self._parents[item]
        while root != path[-1]:
            path.append(root)
            root = self._parents[root]
        for node in path:
            self._parents[node] = root
        return root

    def union(self, a: Hashable, b: Hashable) -> bool:
        """Merge the sets of a and b; False when already merged."""
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return False
        rank_a, rank_b = self._ranks[root_a], self._ranks[root_b]
        if rank_a < rank_b:
            root_a, root_b = root_b, root_a
        self._parents[root_b] = root_a
        if rank_a == rank_b:
            self._ranks[root_a] += 1
        return True

    def component_count(self) -> int:
        return len({self.find(item) for item in self._parents})


# ------------------------------
# Rep sets
# ------------------------------

@dataclass(frozen=True)
class RepClass:
    """[phi]_H with phi the least image tuple of its class."""

    representative: GroupHom
    tag: str

    @property
    def images(self) -> Images:
        return self.representative.images

    def label(self) -> str:
        return f"{self.tag}{list(self.images)}"

    def to_dict(self) -> Dict[str, Any]:
        return {"tag": self.tag, "images": list(self.images)}


def rep_set(F: FusionSystem, P: SubgroupHandle, H: FusionSystem, tag: str = "") -> List[RepClass]:
    """
    Rep_F(P, H): Hom_F(P, S_H) modulo postcomposition with H-isomorphisms.

    Returns:
        Classes in canonical order; empty when Hom_F(P, S_H) is empty
    """
    return [RepClass(GroupHom(P, H.S, img), tag) for img in rep_classes(F, P, H)]


# ------------------------------
# Rep graphs
# ------------------------------

@dataclass
class RepGraph:
    """
    Bipartite graph with vertex parts Rep_F(P, F1) and Rep_F(P, F2) and edge
    set Rep_F(P, Fe); the edge [phi]_Fe joins [phi]_F2 and [i phi]_F1.
    """

    subgroup: SubgroupHandle
    f1_vertices: List[RepClass]
    f2_vertices: List[RepClass]
    edges: List[RepClass]
    endpoints: List[Tuple[int, int]]  # (F2 index, F1 index) per edge

    @property
    def vertex_count(self) -> int:
        return len(self.f1_vertices) + len(self.f2_vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def components(self) -> int:
        uf = UnionFind([("F1", i) for i in range(len(self.f1_vertices))])
        for j in range(len(self.f2_vertices)):
            uf.add(("F2", j))
        for j, i in self.endpoints:
            uf.union(("F2", j), ("F1", i))
        return uf.component_count()

    def h1_dim(self) -> int:
        """Cycle rank |E| - |V| + components."""
        return self.edge_count - self.vertex_count + self.components()

    def is_connected(self) -> bool:
        return self.components() == 1

    def is_tree(self) -> bool:
        return self.is_connected() and self.h1_dim() == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subgroup": self.subgroup.label(),
            "f1_vertices": [v.to_dict() for v in self.f1_vertices],
            "f2_vertices": [v.to_dict() for v in self.f2_vertices],
            "edges": [
                dict(e.to_dict(), f2=j, f1=i)
                for e, (j, i) in zip(self.edges, self.endpoints)
            ],
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "components": self.components(),
            "h1_dim": self.h1_dim(),
            "is_tree": self.is_tree(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_dot(self, name: str = "rep_graph") -> str:
        lines = [f"graph {name} {{"]
        for i, v in enumerate(self.f1_vertices):
            lines.append(f'  a{i} [label="F1 {list(v.images)}", shape=box];')
        for j, v in enumerate(self.f2_vertices):
            lines.append(f'  b{j} [label="F2 {list(v.images)}", shape=ellipse];')
        for k, (j, i) in enumerate(self.endpoints):
            lines.append(f'  b{j} -- a{i} [label="e{k}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_rep_graph(T: Triple, P: SubgroupHandle) -> RepGraph:
    F = T.F
    f1 = rep_classes(F, P, T.F1)
    f2 = rep_classes(F, P, T.F2)
    edges = rep_classes(F, P, T.Fe)
    f1_index = {c: i for i, c in enumerate(f1)}
    f2_index = {c: j for j, c in enumerate(f2)}
    endpoints = [
        (f2_index[rep_canonical(T.F2, e)], f1_index[rep_canonical(T.F1, e)])
        for e in edges
    ]
    graph = RepGraph(
        P,
        [RepClass(GroupHom(P, T.S, c), "F1") for c in f1],
        [RepClass(GroupHom(P, T.S_prime, c), "F2") for c in f2],
        [RepClass(GroupHom(P, T.S_prime, c), "Fe") for c in edges],
        endpoints,
    )
    logger.debug(
        "Rep graph at a subgroup of order %d: %d vertices, %d edges",
        P.order, graph.vertex_count, graph.edge_count,
    )
    return graph


@dataclass
class GraphMorphism:
    """[psi] -> [psi o phi] from the graph at P to the graph at Q."""

    source: RepGraph
    target: RepGraph
    f1_map: List[int]
    f2_map: List[int]
    edge_map: List[int]

    def check_endpoints(self) -> Check:
        for k, (j, i) in enumerate(self.source.endpoints):
            image = self.target.endpoints[self.edge_map[k]]
            if image != (self.f2_map[j], self.f1_map[i]):
                return Check("endpoints", False, {"edge": k})
        return Check("endpoints", True)

    def is_identity(self) -> bool:
        return (
            self.source.subgroup == self.target.subgroup
            and self.f1_map == list(range(len(self.f1_map)))
            and self.f2_map == list(range(len(self.f2_map)))
            and self.edge_map == list(range(len(self.edge_map)))
        )

    def compose(self, inner: "GraphMorphism") -> "GraphMorphism":
        """self after inner."""
        return GraphMorphism(
            inner.source,
            self.target,
            [self.f1_map[x] for x in inner.f1_map],
            [self.f2_map[x] for x in inner.f2_map],
            [self.edge_map[x] for x in inner.edge_map],
        )


def graph_map(T: Triple, phi: GroupHom) -> GraphMorphism:
    """The map of Rep graphs induced by an F-morphism phi: Q -> P."""
    if not T.F.contains(GroupHom(phi.domain, T.S, phi.images)):
        raise ArgumentError("Map is not a morphism of the fusion system")
    Q, P = phi.domain, phi.codomain
    source, target = build_rep_graph(T, P), build_rep_graph(T, Q)
    pos = P.position

    def chase(classes: List[RepClass], H: FusionSystem, into: List[RepClass]) -> List[int]:
        where = {c.images: k for k, c in enumerate(into)}
        return [where[rep_canonical(H, tuple(c.images[pos[y]] for y in phi.images))] for c in classes]

    return GraphMorphism(
        source,
        target,
        chase(source.f1_vertices, T.F1, target.f1_vertices),
        chase(source.f2_vertices, T.F2, target.f2_vertices),
        chase(source.edges, T.Fe, target.edges),
    )


# ------------------------------
# The complex CX1 -> CX0
# ------------------------------

def family_for(F: FusionSystem, C: Optional[SubgroupFamily]) -> SubgroupFamily:
    """C (default: F-centric subgroups) certified for F."""
    if C is None:
        return centric_family(F)
    return certify_family(F, C.members, C.name)


@dataclass
class CXComplex:
    category: OrbitCategory
    triple: Triple
    cx1: InducedModule
    cx0_f1: InducedModule
    cx0_f2: InducedModule
    cx0: FunctorModule
    f: NaturalTransformation

    def kernel(self) -> Tuple[FunctorModule, NaturalTransformation]:
        return kernel_functor(self.f)

    def cokernel(self) -> Tuple[FunctorModule, NaturalTransformation]:
        return cokernel_functor(self.f)


def build_cx_complex(T: Triple, C: Optional[SubgroupFamily] = None, O: Optional[OrbitCategory] = None) -> CXComplex:
    """
    CX1 = induced constant of Fe, CX0 = induced constants of F1 and F2, and
    f([phi]_Fe) = (-[i phi]_F1, [phi]_F2).

    O defaults to the orbit category of the join over C; any orbit category
    whose fusion system contains the join may be given instead.
    """
    if O is None:
        O = build_orbit_category(T.F, family_for(T.F, C))
    cx1 = induced_constant(T.Fe, O)
    cx0_f1 = induced_constant(T.F1, O)
    cx0_f2 = induced_constant(T.F2, O)
    cx0 = direct_sum(cx0_f1, cx0_f2)
    components = []
    for a in range(len(O.objects)):
        comp = zeros(cx0.dims[a], cx1.dims[a])
        shift = cx0_f1.dims[a]
        for k, c in enumerate(cx1.classes[a]):
            comp[cx0_f1.class_index(a, c), k] = (-1) % T.p
            comp[shift + cx0_f2.class_index(a, c), k] = 1
        components.append(comp)
    f = NaturalTransformation(cx1, cx0, components, "f")
    logger.info("CX complex: dims CX1 %s, CX0 %s", list(cx1.dims), list(cx0.dims))
    return CXComplex(O, T, cx1, cx0_f1, cx0_f2, cx0, f)


def c_functor(T: Triple, C: Optional[SubgroupFamily] = None) -> FunctorModule:
    """C_{F,Lambda} = ker(f)."""
    return build_cx_complex(T, C).kernel()[0]


def graph_dimension_check(T: Triple, C: Optional[SubgroupFamily] = None) -> Check:
    """dim ker f(P) equals the cycle rank of the Rep graph at every object."""
    cx = build_cx_complex(T, C)
    K, _ = cx.kernel()
    for a, P in enumerate(cx.category.objects):
        expected = build_rep_graph(T, P).h1_dim()
        if K.dims[a] != expected:
            return Check("kernel-dimension", False, {"subgroup": P.label(), "kernel": K.dims[a], "h1": expected})
    return Check("kernel-dimension", True)


def cokernel_check(T: Triple, C: Optional[SubgroupFamily] = None) -> Check:
    """coker f is one-dimensional everywhere with identity action."""
    cx = build_cx_complex(T, C)
    Q, _ = cx.cokernel()
    bad = [P.label() for a, P in enumerate(cx.category.objects) if Q.dims[a] != 1]
    if bad:
        return Check("cokernel", False, {"dims": list(Q.dims), "subgroups": bad})
    for m in range(cx.category.morphism_count):
        if int(Q.matrix(m)[0, 0]) != 1:
            return Check("cokernel", False, {"morphism": cx.category.describe(m)})
    return Check("cokernel", True)


# ------------------------------
# Tree criteria
# ------------------------------

def homs_into(E: FusionSystem, P: SubgroupHandle, target: SubgroupHandle) -> frozenset:
    """Hom_E(P, target) as image tuples; empty when P is not inside S_E."""
    if not P.is_subgroup_of(E.S):
        return frozenset()
    return frozenset(E.hom_images(P, target))


@dataclass
class TreeCriteria:
    subgroup: SubgroupHandle
    base_holds: bool
    condition_one: List[str] = field(default_factory=list)
    condition_two: bool = False
    is_tree: bool = False

    @property
    def criteria_hold(self) -> bool:
        return self.base_holds and (bool(self.condition_one) or self.condition_two)

    @property
    def sound(self) -> bool:
        return not self.criteria_hold or self.is_tree

    @property
    def status(self) -> str:
        if not self.base_holds:
            return "criteria inapplicable"
        return "criteria hold" if self.criteria_hold else "criteria fail"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subgroup": self.subgroup.label(),
            "base_holds": self.base_holds,
            "condition_one": self.condition_one,
            "condition_two": self.condition_two,
            "is_tree": self.is_tree,
            "status": self.status,
        }


def tree_criteria_check(T: Triple, P: SubgroupHandle) -> TreeCriteria:
    """
    Base: Hom_Fe(Q, S') = Hom_F1(Q, S') meet Hom_F2(Q, S') for every
    F-conjugate Q of P inside S'. Then (1) Hom_F(P, S') = Hom_H(P, S') for
    H = F1 or F2, or (2) Aut_F(P) = Aut_F2(P) and Hom_Fe(Q, S') = Hom_F2(Q, S')
    for the F-conjugates Q of P not Fe-conjugate to P.
    """
    F, Sp = T.F, T.S_prime
    conjugates = [Q for Q in F.iso_class(P) if Q.is_subgroup_of(Sp)]
    base = all(
        homs_into(T.Fe, Q, Sp) == homs_into(T.F1, Q, Sp) & homs_into(T.F2, Q, Sp)
        for Q in conjugates
    )
    target = homs_into(F, P, Sp)
    condition_one = [name for name, H in (("F1", T.F1), ("F2", T.F2)) if target == homs_into(H, P, Sp)]
    condition_two = (
        P.is_subgroup_of(Sp)
        and set(F.aut_images(P)) == set(T.F2.aut_images(P))
        and all(
            homs_into(T.Fe, Q, Sp) == homs_into(T.F2, Q, Sp)
            for Q in conjugates
            if not T.Fe.are_conjugate(P, Q)
        )
    )
    result = TreeCriteria(P, base, condition_one, condition_two, build_rep_graph(T, P).is_tree())
    if not result.sound:
        logger.warning("Tree criteria hold but the Rep graph at %s is not a tree", P.label())
    return result


def pruning_triple(H: FusionSystem, F: FusionSystem, P: SubgroupHandle) -> Triple:
    """Lambda = (H, N_F(P), N_H(P))."""
    return make_triple(H, normalizer_subsystem(F, P), normalizer_subsystem(H, P))


def pruning_vanishing_check(
    F: FusionSystem,
    H: FusionSystem,
    P: SubgroupHandle,
    C: Optional[SubgroupFamily] = None,
) -> ScenarioVerdict:
    """
    For H <= F saturated, P fully F-normalized and F = <H, Aut_F(P)>_S: the
    Rep graph of (H, N_F(P), N_H(P)) is a tree at every Q in C not
    F-conjugate into a proper subgroup of P, and C_{F,Lambda} = 0 when P is
    minimal in C.
    """
    family = family_for(F, C)
    verdict = ScenarioVerdict("pruning-vanishing")
    verdict.require("H <= F", fusion_subsystem_leq(H, F).holds)
    verdict.require("F saturated", is_saturated(F).saturated)
    verdict.require("H saturated", is_saturated(H).saturated)
    verdict.require("P in C", P in family, P.label())
    verdict.require("P fully F-normalized", P.is_subgroup_of(F.S) and F.is_fully_normalized(P))
    if verdict.hypotheses_hold:
        generated = fusion_subsystem_eq(subsystem_from_automorphisms(F, [P], base=H), F)
        verdict.require("F = <H, Aut_F(P)>", generated.holds, generated.witness)
    if not verdict.hypotheses_hold:
        logger.warning("Pruning vanishing check skipped: %s", verdict.failed_hypotheses())
        return verdict

    T = pruning_triple(H, F, P)
    checked = [
        Q for Q in family
        if not any(R.order < P.order and R.is_subgroup_of(P) for R in F.iso_class(Q))
    ]
    non_trees = [Q.label() for Q in checked if not build_rep_graph(T, Q).is_tree()]
    verdict.conclude("Rep graphs are trees", not non_trees, non_trees or None)
    if P in family.minimal_members():
        K = c_functor(T, family)
        verdict.conclude("C_{F,Lambda} = 0", K.is_zero(), list(K.dims) if not K.is_zero() else None)
    return verdict
