"""Tests for subgroup families, orbit categories and functors on them."""

import numpy as np
import pytest

from src.errors import ArgumentError
from src.fusion import inner_fusion
from src.presets import dihedral
from src.orbit_category import (
    FunctorModule,
    NaturalTransformation,
    OrbitCategory,
    all_subgroups_family,
    build_orbit_category,
    centric_family,
    centric_radical_closure,
    certify_family,
    check_associativity,
    close_family,
    cohomology_functor,
    cokernel_functor,
    constant_functor,
    direct_sum,
    dump_functor,
    induce_functor,
    induce_transformation,
    identity_transformation,
    induced_constant,
    kernel_functor,
    load_functor,
    nat_space,
    representable_functor,
    restrict_functor,
    subfamily,
    zero_functor,
)


@pytest.fixture(scope="module")
def O(s4_fusion):
    return build_orbit_category(s4_fusion, centric_family(s4_fusion))


def test_centric_family_is_certified(s4_fusion, sub):
    C = centric_family(s4_fusion)
    assert C.certified
    assert list(C) == [sub("V'"), sub("V"), sub("C4"), sub("D8")]
    assert C.minimal_members() == [sub("V'"), sub("V"), sub("C4")]


def test_uncertified_family(s4_fusion, sub):
    C = certify_family(s4_fusion, [sub("V")])
    assert C.conjugation_closed
    assert not C.overgroup_closed
    with pytest.raises(ArgumentError):
        OrbitCategory(s4_fusion, C)


def test_closing_a_family(s4_fusion, sub):
    assert list(close_family(s4_fusion, [sub("V")])) == [sub("V"), sub("D8")]
    assert list(centric_radical_closure(s4_fusion)) == [sub("V"), sub("D8")]
    assert len(all_subgroups_family(s4_fusion)) == 10


def test_subfamily_for_inner_system(s4_fusion, d8_fusion):
    C = subfamily(centric_family(s4_fusion), d8_fusion)
    assert C.certified
    assert len(C) == 4


def test_orbit_category_shape(O, sub):
    assert O.morphism_count == 16
    assert len(O.hom(sub("V"), sub("V"))) == 6
    assert len(O.hom(sub("V"), sub("D8"))) == 3
    assert len(O.hom(sub("D8"), sub("V"))) == 0
    assert len(O.hom(sub("D8"), sub("D8"))) == 1
    assert O.is_connected()


def test_orbit_category_is_cached(s4_fusion, O):
    assert build_orbit_category(s4_fusion, centric_family(s4_fusion)) is O


def test_composition_is_associative(O):
    assert check_associativity(O)


def test_inclusions_compose(O, sub):
    composite = O.compose(O.inclusion(sub("C4"), sub("D8")), O.inclusion(sub("C4"), sub("C4")))
    assert composite == O.inclusion(sub("C4"), sub("D8"))
    with pytest.raises(ArgumentError):
        O.compose(O.inclusion(sub("C4"), sub("D8")), O.inclusion(sub("V"), sub("D8")))


def test_non_morphism_lookup_rejected(O, sub):
    with pytest.raises(ArgumentError):
        O.inclusion(sub("V"), sub("C4"))


def test_cohomology_functor(O):
    H1 = cohomology_functor(O, 1)
    assert list(H1.dims) == [2, 2, 1, 2]
    assert H1.check_functoriality()
    assert cohomology_functor(O, 0).dims == constant_functor(O).dims


def test_missing_action_rejected(O):
    with pytest.raises(ArgumentError):
        FunctorModule(O, [1] * 4, {}, 2)


def test_representable_functor(O, sub):
    R = representable_functor(O, sub("D8"))
    assert list(R.dims) == [1, 3, 1, 1]
    assert R.check_functoriality()


def test_induced_constant_from_inner_system(O, d8_fusion, sub):
    ind = induced_constant(d8_fusion, O)
    assert ind.dims == representable_functor(O, sub("D8")).dims
    assert ind.check_functoriality()
    assert len(ind.classes[O.ob(sub("V"))]) == 3


def test_direct_sum(O):
    total = direct_sum(constant_functor(O), cohomology_functor(O, 1))
    assert list(total.dims) == [3, 3, 2, 3]
    assert total.check_functoriality()


def test_restriction_to_a_subcategory(s4_fusion, O):
    O_sub = build_orbit_category(s4_fusion, centric_radical_closure(s4_fusion))
    restricted = restrict_functor(cohomology_functor(O, 1), O_sub)
    direct = cohomology_functor(O_sub, 1)
    assert restricted.dims == direct.dims
    for m in range(O_sub.morphism_count):
        assert np.array_equal(restricted.matrix(m), direct.matrix(m))


def test_dumped_functor_loads_back(O):
    H1 = cohomology_functor(O, 1)
    loaded = load_functor(O, dump_functor(H1))
    assert loaded.dims == H1.dims
    assert all(np.array_equal(loaded.matrix(m), H1.matrix(m)) for m in range(O.morphism_count))


def test_malformed_functor_data(O):
    with pytest.raises(ArgumentError):
        load_functor(O, {"dims": [1, 1, 1, 1], "morphisms": [{"source": 0}]})


def test_constant_endomorphisms(O):
    k = constant_functor(O)
    assert nat_space(k, k).dim == 1
    assert nat_space(k, zero_functor(O)).dim == 0


def test_nat_space_elements_are_natural(O):
    H1 = cohomology_functor(O, 1)
    space = nat_space(H1, H1)
    assert space.dim >= 1
    assert all(eta.check_naturality() for eta in space.transformations())


def test_nat_space_needs_one_category(s4_fusion, O):
    other = build_orbit_category(s4_fusion, centric_radical_closure(s4_fusion))
    with pytest.raises(ArgumentError):
        nat_space(constant_functor(O), constant_functor(other))


def test_kernel_and_cokernel_of_identity(O):
    H1 = cohomology_functor(O, 1)
    ident = identity_transformation(H1)
    assert ident.is_iso()
    K, _ = kernel_functor(ident)
    Q, _ = cokernel_functor(ident)
    assert K.is_zero()
    assert Q.is_zero()


def test_kernel_and_cokernel_of_zero_map(O):
    H1 = cohomology_functor(O, 1)
    zero = NaturalTransformation(H1, H1, [np.zeros((d, d), dtype=np.int64) for d in H1.dims])
    K, inclusion = kernel_functor(zero)
    Q, projection = cokernel_functor(zero)
    assert K.dims == H1.dims == Q.dims
    assert K.check_functoriality()
    assert Q.check_functoriality()
    assert inclusion.check_naturality()
    assert projection.check_naturality()


def test_induction_is_additive(O, d8_fusion):
    O_H = build_orbit_category(d8_fusion, subfamily(O.family, d8_fusion))
    k, H1 = constant_functor(O_H), cohomology_functor(O_H, 1)
    ind_k, ind_H1 = induce_functor(k, O), induce_functor(H1, O)
    total = induce_functor(direct_sum(k, H1), O)
    assert list(total.dims) == [a + b for a, b in zip(ind_k.dims, ind_H1.dims)]
    assert ind_H1.check_functoriality()


def test_induction_needs_one_ambient_group(O):
    D8 = dihedral(8).whole()
    F = inner_fusion(D8)
    other = build_orbit_category(F, centric_family(F))
    with pytest.raises(ArgumentError):
        induce_functor(constant_functor(other), O)


def test_induced_identity_is_identity(O, d8_fusion):
    O_H = build_orbit_category(d8_fusion, subfamily(O.family, d8_fusion))
    H1 = cohomology_functor(O_H, 1)
    source, target, eta = induce_transformation(identity_transformation(H1), O)
    assert source.dims == target.dims
    assert eta.check_naturality()
    assert eta.is_iso()
