"""Tests for Rep sets, Rep graphs, the CX complex and tree criteria."""

import json

import pytest

from src.errors import ArgumentError
from src.groups import GroupHom, identity_hom, inclusion_hom
from src.rep_graphs import (
    RepClass,
    RepGraph,
    UnionFind,
    build_cx_complex,
    build_rep_graph,
    c_functor,
    cokernel_check,
    graph_dimension_check,
    graph_map,
    homs_into,
    pruning_vanishing_check,
    rep_set,
    tree_criteria_check,
)


def test_union_find_merges():
    uf = UnionFind(range(5))
    assert uf.union(0, 1)
    assert uf.union(3, 4)
    assert not uf.union(1, 0)
    assert uf.find(1) == uf.find(0)
    assert uf.component_count() == 3
    uf.add("x")
    assert uf.component_count() == 4


def test_rep_set_at_klein_four(s4_fusion, d8_fusion, sub):
    classes = rep_set(s4_fusion, sub("V"), d8_fusion, "F1")
    assert len(classes) == 3
    assert all(c.tag == "F1" for c in classes)
    assert len(rep_set(s4_fusion, sub("V"), s4_fusion)) == 1


def test_rep_graph_at_klein_four_is_a_star(d8_triple, sub):
    graph = build_rep_graph(d8_triple, sub("V"))
    assert len(graph.f1_vertices) == 3
    assert len(graph.f2_vertices) == 1
    assert graph.edge_count == 3
    assert sorted(i for _, i in graph.endpoints) == [0, 1, 2]
    assert graph.is_tree()
    assert graph.h1_dim() == 0


def test_every_centric_rep_graph_is_a_tree(d8_triple, sub):
    for name in ("V'", "V", "C4", "D8"):
        assert build_rep_graph(d8_triple, sub(name)).is_tree()


def test_cycle_rank_of_a_square(sub):
    V = sub("V")
    cls = RepClass(identity_hom(V), "F1")
    graph = RepGraph(V, [cls, cls], [cls, cls], [cls] * 4, [(0, 0), (0, 1), (1, 0), (1, 1)])
    assert graph.components() == 1
    assert graph.h1_dim() == 1
    assert not graph.is_tree()


def test_forest_is_not_a_tree(sub):
    V = sub("V")
    cls = RepClass(identity_hom(V), "F1")
    graph = RepGraph(V, [cls, cls], [cls, cls], [cls, cls], [(0, 0), (1, 1)])
    assert graph.components() == 2
    assert graph.h1_dim() == 0
    assert not graph.is_tree()


def test_graph_exports(d8_triple, sub):
    graph = build_rep_graph(d8_triple, sub("V"))
    data = json.loads(graph.to_json())
    assert data["edge_count"] == 3
    assert data["is_tree"] is True
    dot = graph.to_dot("at_v")
    assert dot.startswith("graph at_v {")
    assert dot.count(" -- ") == 3


def test_graph_map_identity_and_inclusion(d8_triple, sub):
    V, Z = sub("V"), sub("Z")
    identity = graph_map(d8_triple, identity_hom(V))
    assert identity.is_identity()
    restriction = graph_map(d8_triple, inclusion_hom(Z, V))
    assert restriction.check_endpoints()
    composite = restriction.compose(identity)
    assert composite.f1_map == restriction.f1_map
    assert composite.edge_map == restriction.edge_map


def test_graph_map_rejects_foreign_morphism(d8_triple, d8, sub):
    swap = GroupHom(sub("V"), d8, sub("V'").members)
    with pytest.raises(ArgumentError):
        graph_map(d8_triple, swap)


def test_homs_into_outside_underlying_group(d8_triple, s4, sub):
    assert homs_into(d8_triple.F1, sub("V"), d8_triple.S_prime)
    full = s4.whole()
    assert homs_into(d8_triple.F1, full, d8_triple.S_prime) == frozenset()


def test_cx_complex_shape(d8_triple):
    cx = build_cx_complex(d8_triple)
    assert list(cx.cx1.dims) == [1, 3, 1, 1]
    assert list(cx.cx0.dims) == [2, 4, 2, 2]
    assert cx.f.check_naturality()
    assert c_functor(d8_triple).is_zero()


def test_kernel_dimension_matches_cycle_rank(d8_triple):
    assert graph_dimension_check(d8_triple)


def test_cokernel_is_constant(d8_triple):
    assert cokernel_check(d8_triple)


def test_tree_criteria_at_klein_four(d8_triple, sub):
    result = tree_criteria_check(d8_triple, sub("V"))
    assert result.base_holds
    assert result.condition_one == ["F2"]
    assert result.criteria_hold
    assert result.sound
    assert result.to_dict()["status"] == "criteria hold"


def test_pruning_vanishing(s4_fusion, d8_fusion, sub):
    verdict = pruning_vanishing_check(s4_fusion, d8_fusion, sub("V"))
    assert verdict.passed
    assert [c.name for c in verdict.conclusions] == ["Rep graphs are trees", "C_{F,Lambda} = 0"]


def test_pruning_vanishing_needs_generation(s4_fusion, d8_fusion, sub):
    verdict = pruning_vanishing_check(s4_fusion, d8_fusion, sub("V'"))
    assert verdict.failed_hypotheses() == ["F = <H, Aut_F(P)>"]
    assert not verdict.conclusion_checked
