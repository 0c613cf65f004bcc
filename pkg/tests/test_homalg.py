"""Tests for cobar complexes, projective resolutions and higher limits."""

import numpy as np
import pytest

from src.errors import ArgumentError, CapacityError
from src.fusion import realize
from src.groups import sylow
from src.homalg import (
    ProjectiveResolution,
    choose_method,
    cobar_complex,
    cobar_dims,
    ext_groups,
    higher_limit_dims,
    higher_limits,
    limit_zero,
    sharpness_table,
    stable_elements,
)
from src.orbit_category import (
    build_orbit_category,
    centric_family,
    centric_radical_closure,
    certify_family,
    cohomology_functor,
    constant_functor,
    representable_functor,
)
from src.presets import alternating
from src.settings import load_settings, use_settings


@pytest.fixture(scope="module")
def O(s4_fusion):
    return build_orbit_category(s4_fusion, centric_family(s4_fusion))


@pytest.fixture(scope="module")
def H1(O):
    return cohomology_functor(O, 1)


def test_cobar_dimensions_match_the_plan(O, H1):
    complex_ = cobar_complex(O, H1, 2)
    assert complex_.dims == cobar_dims(O, H1, 3)
    complex_.check_d_squared()


def test_cobar_degree_out_of_range(O, H1):
    complex_ = cobar_complex(O, H1, 1)
    with pytest.raises(ArgumentError):
        complex_.cohomology_dim(2)
    with pytest.raises(ArgumentError):
        cobar_complex(O, H1, -1)


def test_cobar_degree_cap(O, H1):
    use_settings(load_settings({"cobar_degree_cap": 1}))
    with pytest.raises(CapacityError):
        cobar_complex(O, H1, 2)


def test_s4_limits_of_first_cohomology(O, H1):
    assert higher_limit_dims(O, H1, 2, "cobar") == [1, 0, 0]
    assert higher_limit_dims(O, H1, 2, "resolution") == [1, 0, 0]


def test_constant_functor_has_no_higher_limits(O):
    assert higher_limit_dims(O, constant_functor(O), 3) == [1, 0, 0, 0]


@pytest.mark.parametrize("j, stable", [(0, 1), (1, 1), (2, 2), (3, 3)])
def test_realized_system_is_sharp(O, j, stable):
    assert higher_limit_dims(O, cohomology_functor(O, j), 3) == [stable, 0, 0, 0]


def test_sparse_and_dense_cobar_agree(O, H1):
    dense = higher_limit_dims(O, H1, 2, "cobar")
    use_settings(load_settings({"dense_column_limit": 1}))
    complex_ = cobar_complex(O, H1, 2)
    assert complex_.differentials[1].is_sparse
    assert [complex_.cohomology_dim(n) for n in range(3)] == dense


def test_methods_agree_on_representable(O, sub):
    R = representable_functor(O, sub("D8"))
    assert higher_limit_dims(O, R, 2, "cobar") == higher_limit_dims(O, R, 2, "resolution")


def test_limits_on_a_smaller_family(s4_fusion):
    O_cr = build_orbit_category(s4_fusion, centric_radical_closure(s4_fusion))
    assert higher_limit_dims(O_cr, cohomology_functor(O_cr, 1), 2) == [1, 0, 0]


def test_alternating_group_top_only_family():
    G = alternating(4)
    S = sylow(G, 2)
    F = realize(G, S, 2)
    O = build_orbit_category(F, certify_family(F, [S]))
    M = cohomology_functor(O, 1)
    assert higher_limit_dims(O, M, 2) == [0, 0, 0]
    assert limit_zero(O, M) == 0


def test_limit_zero_and_stable_elements(O, H1, d8):
    assert limit_zero(O, H1) == 1
    stable = stable_elements(O, H1)
    assert stable.shape == (2, 1)
    assert np.any(stable)


def test_higher_limits_result(O, H1):
    result = higher_limits(O, H1, 0, "cobar")
    assert result.dim == 1
    assert result.method == "cobar"
    assert result.cocycles.shape[1] == 1
    assert result.to_dict() == {"degree": 0, "dim": 1, "method": "cobar"}


def test_method_selection(O, H1):
    assert choose_method(O, H1, 2, "resolution") == "resolution"
    with pytest.raises(ArgumentError):
        choose_method(O, H1, 2, "spectral")
    use_settings(load_settings({"cobar_dimension_cap": 1}))
    assert choose_method(O, H1, 2) == "resolution"


def test_ext_of_constant_equals_limits(O, H1):
    assert ext_groups(constant_functor(O), H1, 2) == higher_limit_dims(O, H1, 2, "cobar")


def test_representable_is_projective(O, H1, sub):
    R = representable_functor(O, sub("V"))
    dims = ext_groups(R, H1, 2)
    assert dims[1:] == [0, 0]
    assert dims[0] == H1.dim(sub("V"))


def test_resolution_rejects_foreign_functor(O, s4_fusion):
    other = build_orbit_category(s4_fusion, centric_radical_closure(s4_fusion))
    resolution = ProjectiveResolution(constant_functor(O), 2)
    with pytest.raises(ArgumentError):
        resolution.hom_complex(constant_functor(other))


def test_sharpness_table_keys(O):
    functors = [cohomology_functor(O, j) for j in range(2)]
    table = sharpness_table(O, functors, 1)
    assert table == {(0, 0): 1, (1, 0): 0, (0, 1): 1, (1, 1): 0}
