"""Tests for permutation groups, subgroup lattices and presets."""

import pytest
from hypothesis import given, settings, strategies as st

from src.errors import ArgumentError, CapacityError, ConfigError, ContainmentError
from src.groups import (
    automorphism_group,
    center,
    centralizer,
    compose_hom,
    conjugation_hom,
    element_order,
    cycle_string,
    enumerate_subgroups,
    exponent,
    group_from_generators,
    hom_from_generator_images,
    inclusion_hom,
    invert_iso,
    is_abelian,
    is_extraspecial_exponent_p,
    is_normal,
    is_p_group,
    normalizer,
    prime_power,
    subgroup_generated,
    subgroups_of,
    sylow,
)
from src.presets import (
    alternating,
    cyclic,
    dihedral,
    elementary_abelian,
    extraspecial_exponent_p,
    parse_group_source,
    quaternion8,
    resolve_subgroup,
    symmetric,
    subgroup_names,
)


def test_preset_orders():
    assert alternating(4).order == 12
    assert dihedral(8).order == 8
    assert quaternion8().order == 8
    assert elementary_abelian(2, 3).order == 8
    assert extraspecial_exponent_p(3).order == 27


def test_subgroup_counts(s4, d8):
    assert len(subgroups_of(d8)) == 10
    assert len(enumerate_subgroups(s4)) == 30
    assert len(subgroups_of(quaternion8().whole())) == 6


def test_subgroups_sorted_trivial_first(d8):
    subgroups = subgroups_of(d8)
    assert subgroups[0].order == 1
    assert subgroups[-1] == d8
    assert [P.order for P in subgroups] == sorted(P.order for P in subgroups)


def test_sylow_is_registered_d8(s4, d8):
    assert sylow(s4, 2) == d8
    assert sylow(s4, 3).order == 3


def test_sylow_rejects_non_prime(s4):
    with pytest.raises(ArgumentError):
        sylow(s4, 4)


def test_normal_klein_four(s4, sub):
    V = sub("V")
    assert is_normal(V, s4)
    assert not is_normal(sub("V'"), s4)
    assert normalizer(s4, V).order == 24
    assert centralizer(s4, V) == V


def test_center_of_d8(d8, sub):
    assert center(d8) == sub("Z")
    assert exponent(d8) == 4
    assert not is_abelian(d8)


def test_automorphism_group_orders(sub):
    assert automorphism_group(sub("V")).order == 6
    assert automorphism_group(sub("C4")).order == 2
    assert automorphism_group(sub("D8")).order == 8
    assert automorphism_group(quaternion8().whole()).order == 24


def test_extraspecial_detection(d8):
    E = extraspecial_exponent_p(3).whole()
    assert is_extraspecial_exponent_p(E, 3)
    assert not is_extraspecial_exponent_p(d8, 2)


def test_ill_defined_generator_images_rejected():
    G = cyclic(4)
    C4 = G.whole()
    r = G.element((1, 2, 3, 0))
    square = G.mul(r, r)
    assert hom_from_generator_images(C4, [r], [square], C4) is not None
    C2 = subgroup_generated(G, [square])
    assert hom_from_generator_images(C2, [square], [r], C4) is None


def test_conjugation_hom_containment(s4, sub):
    V, C4 = sub("V"), sub("C4")
    g = s4.element((1, 2, 0, 3))
    with pytest.raises(ContainmentError):
        conjugation_hom(g, C4, C4)
    assert conjugation_hom(g, V, V).image == V


def test_compose_with_inclusion(sub):
    V, D8 = sub("V"), sub("D8")
    f = compose_hom(inclusion_hom(V, D8), inclusion_hom(sub("Z"), V))
    assert f.domain == sub("Z")
    assert f.codomain == D8
    assert f.is_identity()


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(27) == (3, 3)
    assert prime_power(24) is None
    assert prime_power(1) is None


def test_cycle_string(s4):
    assert cycle_string(s4.elements[0]) == "()"
    assert cycle_string((1, 0, 3, 2)) == "(0 1)(2 3)"


def test_parse_group_source_presets():
    G, key = parse_group_source("preset:symmetric:4")
    assert G.order == 24
    assert key == "symmetric:4"
    with pytest.raises(ConfigError):
        parse_group_source("preset:nope:4")
    with pytest.raises(ConfigError):
        parse_group_source("preset:dihedral:5")
    with pytest.raises(ConfigError):
        parse_group_source("preset:symmetric:x")


def test_resolve_subgroup_by_name_and_index(d8, sub):
    assert resolve_subgroup(d8, "symmetric:4", "V") == sub("V")
    assert resolve_subgroup(d8, "symmetric:4", "P0").order == 1
    assert resolve_subgroup(d8, "symmetric:4", "P9") == d8
    with pytest.raises(ConfigError):
        resolve_subgroup(d8, "symmetric:4", "P10")
    with pytest.raises(ConfigError):
        resolve_subgroup(d8, "symmetric:4", "W")


def test_group_json_source(tmp_path):
    path = tmp_path / "c3.json"
    path.write_text('{"degree": 3, "generators": [[1, 2, 0]]}')
    G, key = parse_group_source(str(path))
    assert G.order == 3
    assert key == str(path)
    bad = tmp_path / "bad.json"
    bad.write_text('{"degree": 3, "generators": [[1, 1, 0]]}')
    with pytest.raises(ConfigError):
        parse_group_source(str(bad))


def test_subgroup_names(d8):
    names = subgroup_names(d8, "symmetric:4")
    assert sorted(names.values()) == ["C4", "D8", "V", "V'", "Z"]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 23), st.integers(0, 23), st.integers(0, 23))
def test_conjugation_is_an_action(g, h, x):
    G = symmetric(4)
    assert G.conj(g, G.conj(h, x)) == G.conj(G.mul(g, h), x)
    assert G.mul(G.inv(g), g) == 0


def test_group_from_generators_closure():
    assert group_from_generators(4, [(1, 2, 3, 0), (1, 0, 2, 3)]).order == 24
    assert group_from_generators(1, []).order == 1
    klein = group_from_generators(4, [(1, 0, 3, 2), (2, 3, 0, 1)])
    assert klein.order == 4
    assert klein.elements[0] == (0, 1, 2, 3)


def test_group_from_generators_errors():
    with pytest.raises(CapacityError):
        group_from_generators(4, [(1, 2, 3, 0), (1, 0, 2, 3)], cap=5)
    with pytest.raises(ArgumentError):
        group_from_generators(3, [(0, 0, 1)])


def test_invert_iso_undoes_conjugation(s4, sub):
    V = sub("V")
    f = conjugation_hom(s4.element((1, 2, 0, 3)), V, V)
    back = invert_iso(f)
    assert compose_hom(back, f).is_identity()
    assert compose_hom(f, back).is_identity()
    with pytest.raises(ArgumentError):
        invert_iso(inclusion_hom(sub("Z"), V))


def test_p_group_detection(s4, d8):
    assert is_p_group(d8, 2)
    assert not is_p_group(s4, 2)
    assert is_p_group(extraspecial_exponent_p(3), 3)


def test_element_orders(s4, d8):
    assert element_order(s4, 0) == 1
    assert element_order(s4, s4.element((1, 2, 3, 0))) == 4
    assert element_order(s4, s4.element((1, 2, 0, 3))) == 3
    assert max(element_order(d8, x) for x in d8.members) == 4
