"""Tests for fusion systems: construction, classification and saturation."""

import pytest

from src.errors import ArgumentError, CapacityError, ContainmentError
from src.fusion import (
    alperin_generators,
    aut_group,
    classify,
    dump_fusion_system,
    enumerate_saturated_systems,
    extension_subgroup,
    fusion_subsystem_eq,
    fusion_subsystem_leq,
    generate,
    inner_fusion,
    intersection,
    is_saturated,
    join,
    make_triple,
    normalizer_intersection_check,
    normalizer_subsystem,
    out_group,
    realize,
)
from src.groups import GroupHom, subgroup_generated, subgroups_of
from src.presets import abelian, cyclic, dihedral, elementary_abelian, quaternion8
from src.settings import load_settings, use_settings


def test_s4_classification(s4_fusion, sub):
    reports = classify(s4_fusion)
    assert len(reports) == 10
    centric = {r.subgroup for r in reports if r.centric}
    assert centric == {sub("D8"), sub("C4"), sub("V"), sub("V'")}
    assert set(s4_fusion.essential_subgroups()) == {sub("V")}
    assert set(s4_fusion.centric_radical_subgroups()) == {sub("V"), sub("D8")}


def test_strongly_embedded_flag_includes_conventional(s4_fusion, sub):
    embedded = set(s4_fusion.essential_subgroups(conventional=False))
    assert set(s4_fusion.essential_subgroups()) <= embedded
    assert embedded == {sub("V")}
    rows = {r.subgroup: r.to_row() for r in classify(s4_fusion)}
    assert rows[sub("V")]["proper_strongly_p_embedded"]
    assert not rows[sub("V'")]["proper_strongly_p_embedded"]
    assert "essential_raw" not in rows[sub("V")]


def test_automizer_orders(s4_fusion, sub):
    assert aut_group(s4_fusion, sub("V")).order == 6
    assert out_group(s4_fusion, sub("V")).order == 6
    assert aut_group(s4_fusion, sub("D8")).order == 4
    assert aut_group(s4_fusion, sub("C4")).order == 2


def test_classification_rows_are_plain(s4_fusion):
    row = classify(s4_fusion)[-1].to_row()
    assert row["order"] == 8
    assert row["centric_radical"] is True
    assert row["essential"] is False


def test_fully_normalized_representatives(s4, s4_fusion, d8):
    Z = subgroup_generated(d8, [s4.element((1, 0, 3, 2))])
    W = subgroup_generated(d8, [s4.element((2, 3, 0, 1))])
    assert s4_fusion.are_conjugate(Z, W)
    assert s4_fusion.is_fully_normalized(Z)
    assert not s4_fusion.is_fully_normalized(W)
    assert s4_fusion.fully_normalized_representative(W) == Z
    assert len(s4_fusion.iso_class(W)) == 3


def test_realized_and_inner_systems_are_saturated(s4_fusion, d8_fusion):
    assert is_saturated(s4_fusion)
    assert is_saturated(d8_fusion)
    assert is_saturated(inner_fusion(quaternion8().whole()))


def test_missing_extension_is_detected():
    S = abelian(3, 3).whole()
    G = S.ambient
    P = next(P for P in subgroups_of(S) if P.order == 3)
    inversion = GroupHom(P, S, tuple(G.inv(x) for x in P.members))
    F = generate(S, [inversion], 3)
    verdict = is_saturated(F)
    assert not verdict
    assert verdict.axiom == "extension"
    assert verdict.extension_domain == S


def test_sylow_axiom_failure():
    S = elementary_abelian(2, 2).whole()
    G = S.ambient
    a, b = S.generators
    swap = GroupHom(S, S, tuple(
        {0: 0, a: b, b: a}.get(x, G.mul(a, b)) for x in S.members
    ))
    verdict = is_saturated(generate(S, [swap], 2))
    assert verdict.axiom == "sylow"


def test_realize_rejects_outside_subgroup(sub):
    with pytest.raises(ContainmentError):
        realize(sub("V"), sub("C4"), 2)


def test_seed_outside_s_rejected(s4, d8, sub):
    outside = GroupHom(sub("Z"), s4.whole(), (0, s4.element((0, 2, 1, 3))))
    with pytest.raises(ContainmentError):
        generate(d8, [outside], 2)


def test_morphism_cap(d8):
    use_settings(load_settings({"morphism_cap": 10}))
    with pytest.raises(CapacityError):
        realize(d8, d8, 2)


def test_pruning_the_only_essential_leaves_inner_fusion(pruned, d8_fusion):
    assert pruned == d8_fusion
    assert fusion_subsystem_eq(pruned, d8_fusion)


def test_alperin_generators_recover_the_system(s4_fusion, d8):
    assert generate(d8, alperin_generators(s4_fusion), 2) == s4_fusion


def test_subsystem_order(s4_fusion, d8_fusion):
    assert fusion_subsystem_leq(d8_fusion, s4_fusion)
    backward = fusion_subsystem_leq(s4_fusion, d8_fusion)
    assert not backward
    assert backward.witness is not None


def test_join_of_inner_and_realized(s4_fusion, d8_fusion):
    assert join(d8_fusion, s4_fusion) == s4_fusion


def test_normalizer_of_normal_klein_four(s4_fusion, sub):
    assert normalizer_subsystem(s4_fusion, sub("V")) == s4_fusion
    N = normalizer_subsystem(s4_fusion, sub("V'"))
    assert N.S == sub("D8")
    assert N.morphism_count < s4_fusion.morphism_count


def test_normalizer_intersection(s4_fusion, d8_fusion, sub):
    assert normalizer_intersection_check(s4_fusion, d8_fusion, sub("V")).passed


def test_normalizer_intersection_hypothesis_failure(s4, s4_fusion, d8_fusion, d8):
    W = subgroup_generated(d8, [s4.element((2, 3, 0, 1))])
    verdict = normalizer_intersection_check(s4_fusion, d8_fusion, W)
    assert verdict.failed_hypotheses() == ["P fully F-normalized"]
    assert not verdict.conclusion_checked


def test_triple_fields(d8_triple, s4_fusion, d8):
    assert d8_triple.S == d8
    assert d8_triple.S_prime == d8
    assert d8_triple.p == 2
    assert d8_triple.F == s4_fusion


def test_make_triple_rejects_bad_inputs(s4_fusion, d8_fusion, sub):
    with pytest.raises(ArgumentError):
        make_triple(d8_fusion, d8_fusion, s4_fusion)
    with pytest.raises(ArgumentError):
        make_triple(d8_fusion, inner_fusion(sub("V")), d8_fusion)


def test_dump_lists_every_subgroup(s4_fusion):
    data = dump_fusion_system(s4_fusion)
    assert data["p"] == 2
    assert len(data["objects"]) == 10
    assert sum(len(h["maps"]) for h in data["homsets"]) == s4_fusion.morphism_count


@pytest.mark.parametrize(
    "group, expected",
    [
        (dihedral(8), 4),
        (quaternion8(), 2),
        (elementary_abelian(2, 2), 2),
        (cyclic(4), 1),
        (cyclic(8), 1),
        (abelian(4, 2), 1),
        (cyclic(2), 1),
    ],
    ids=["D8", "Q8", "C2^2", "C4", "C8", "C4xC2", "C2"],
)
def test_saturated_system_counts(group, expected):
    assert len(enumerate_saturated_systems(group.whole(), 2)) == expected


@pytest.mark.slow
def test_saturated_systems_on_rank_three_elementary_abelian():
    assert len(enumerate_saturated_systems(elementary_abelian(2, 3).whole(), 2)) == 45


def test_intersection_with_inner_system(s4_fusion, d8_fusion):
    assert intersection(s4_fusion, d8_fusion) == d8_fusion
    assert intersection(d8_fusion, d8_fusion) == d8_fusion


def test_extension_subgroup_orders(s4_fusion, sub):
    assert extension_subgroup(s4_fusion, sub("V")).order == 2
    assert extension_subgroup(s4_fusion, sub("V'")).order == 2
    assert extension_subgroup(s4_fusion, sub("D8")).order == 1
