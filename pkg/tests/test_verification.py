"""Tests for the scenario checkers built on the triple (F_D8(D8), N_F(V), N_H(V))."""

import pytest

from src.errors import ArgumentError, InvariantViolation
from src.fusion import generate, inner_fusion, make_triple
from src.groups import GroupHom, group_from_generators, subgroup_generated, subgroups_of
from src.orbit_category import (
    build_orbit_category,
    centric_family,
    close_family,
    cohomology_functor,
    constant_functor,
)
from src.presets import abelian
from src.verdicts import STATUS_HYPOTHESIS_FAILURE
from src import verification
from src.verification import (
    centric_radical_check,
    corollary_induction_checks,
    find_realizing_group,
    gamma_map,
    induction_square,
    limits_of_subsystem,
    limone_identification,
    normalizer_triple,
    sharpness_suite,
    small_group_census,
    splitting_check,
    subsystem_limits_vanish,
    theorem_a_check,
    theorem_b_scenario,
    theorem_c_scenario,
    two_essential_scenario,
    two_essential_triple,
)


@pytest.fixture(scope="module")
def O(s4_fusion):
    return build_orbit_category(s4_fusion, centric_family(s4_fusion))


@pytest.fixture(scope="module")
def H1(O):
    return cohomology_functor(O, 1)


def test_centric_radical_check(s4_fusion, sub):
    assert centric_radical_check(s4_fusion, centric_family(s4_fusion))
    top_only = close_family(s4_fusion, [sub("D8")])
    check = centric_radical_check(s4_fusion, top_only)
    assert not check
    assert check.witness == [sub("V").label()]


def test_subsystem_limits_vanish(d8_fusion, s4_fusion, H1):
    check = subsystem_limits_vanish(d8_fusion, centric_family(s4_fusion), H1, 2)
    assert check
    assert check.witness == {"dims": [2, 0, 0]}


def test_limits_of_inner_subsystem(s4_fusion, d8_fusion, H1):
    assert limits_of_subsystem(s4_fusion, d8_fusion, H1, 2) == [2, 0, 0]


def test_functor_on_another_category_rejected(s4_fusion, d8_fusion, sub):
    other = build_orbit_category(s4_fusion, close_family(s4_fusion, [sub("V")]))
    with pytest.raises(ArgumentError):
        limits_of_subsystem(s4_fusion, d8_fusion, constant_functor(other), 1)


@pytest.mark.parametrize("j, stable", [(1, 1), (2, 2), (3, 3)])
def test_theorem_a_ledger(d8_triple, O, j, stable):
    ledger = theorem_a_check(d8_triple, None, cohomology_functor(O, j), n_max=3)
    assert ledger.passed
    assert ledger.lim_dims == [stable, 0, 0, 0]
    assert ledger.ext_dims[1] == 0
    assert ledger.nat_dims["C"] == 0
    assert all(ledger.exactness.values())
    assert ledger.to_dict()["verdict"]["status"] == "pass"


def test_theorem_a_on_constant_functor(d8_triple, O):
    ledger = theorem_a_check(d8_triple, None, constant_functor(O), n_max=2)
    assert ledger.passed
    assert ledger.ker_fstar_dim == ledger.lim_dims[0] == 1
    assert ledger.ext_dims == []


def test_theorem_a_needs_two_degrees(d8_triple, H1):
    with pytest.raises(ArgumentError):
        theorem_a_check(d8_triple, None, H1, n_max=1)


def test_theorem_a_family_missing_radical_subgroup(d8_triple, s4_fusion, sub):
    C = close_family(s4_fusion, [sub("D8")])
    M = cohomology_functor(build_orbit_category(s4_fusion, C), 1)
    ledger = theorem_a_check(d8_triple, C, M, n_max=2)
    assert ledger.status == STATUS_HYPOTHESIS_FAILURE
    assert "F2 centric-radical subgroups in C" in ledger.verdict.failed_hypotheses()
    assert ledger.lim_dims == []


def test_lim1_identification(d8_triple, H1):
    verdict = limone_identification(d8_triple, None, H1)
    assert verdict.passed
    assert verdict.details["stable_F"] == 1
    assert verdict.details["stable_Fe"] == 2
    assert verdict.details["coker_fstar"] == 0


def test_sharpness_of_s4(s4_fusion):
    report = sharpness_suite(s4_fusion, j_max=2, n_max=2)
    assert report.sharp
    assert report.stable == [1, 1, 2]
    assert report.nonzero_cells() == []
    frame = report.frame()
    assert list(frame.columns) == ["j=0", "j=1", "j=2"]
    assert frame.loc["lim^0", "j=2"] == 2


def test_sharpness_skips_unsaturated_systems():
    S = abelian(3, 3).whole()
    G = S.ambient
    P = next(P for P in subgroups_of(S) if P.order == 3)
    F = generate(S, [GroupHom(P, S, tuple(G.inv(x) for x in P.members))], 3)
    report = sharpness_suite(F, j_max=1, n_max=1)
    assert not report.saturated
    assert not report.sharp
    assert report.table == {}


def test_theorem_b_with_pruned_klein_four(s4_fusion, pruned, sub):
    verdict = theorem_b_scenario(s4_fusion, pruned, [sub("V")], j_max=2, n_max=2)
    assert verdict.passed
    induction = verdict.details["induction"]
    assert induction["reaches_F"]
    assert induction["steps"][0]["all_trees"]
    assert verdict.details["F_table"]["sharp"]


def test_theorem_b_generation_failure(s4_fusion, d8_fusion, sub):
    verdict = theorem_b_scenario(s4_fusion, d8_fusion, [sub("V'")], j_max=1, n_max=1)
    assert verdict.failed_hypotheses() == ["F = <H, Aut_F(P) : P pruned>"]
    assert not verdict.conclusion_checked


def test_theorem_b_without_pruning_is_vacuous(s4_fusion):
    verdict = theorem_b_scenario(s4_fusion, s4_fusion, [], j_max=1, n_max=1)
    assert verdict.passed
    assert verdict.details["induction"]["steps"] == []
    assert verdict.details["induction"]["reaches_F"]


def test_theorem_b_pruning_condition_fails_at_the_top(s4_fusion, pruned, sub):
    verdict = theorem_b_scenario(s4_fusion, pruned, [sub("V"), sub("D8")], j_max=1, n_max=1)
    assert verdict.status == STATUS_HYPOTHESIS_FAILURE
    assert verdict.failed_hypotheses() == [f"pruning condition at {sub('D8').label()}"]
    assert not verdict.conclusion_checked


def test_pruning_condition_on_an_extraspecial_subgroup():
    points = [(x, y) for x in range(3) for y in range(3)]
    shift = tuple(((x + 1) % 3) * 3 + y for x, y in points) + (9, 10, 11)
    shear = tuple(x * 3 + (y + x) % 3 for x, y in points) + (9, 10, 11)
    rotate = tuple(range(9)) + (10, 11, 9)
    G = group_from_generators(12, [shift, shear, rotate], prime_hint=3)
    S = G.whole()
    P = subgroup_generated(G, [G.element(shift), G.element(shear)])
    assert (S.order, P.order) == (81, 27)
    F = inner_fusion(S, 3)
    bullet = verification._pruning_bullet(F, F, P)
    assert bullet["extraspecial"]
    assert not verification._pruning_bullet(F, F, S)["extraspecial"]


def test_two_essential_with_single_class(s4_fusion, sub, H1):
    T, trees = two_essential_triple(s4_fusion, sub("V"), sub("V"))
    assert T.F == s4_fusion
    assert all(trees.values())
    verdict = two_essential_scenario(s4_fusion, sub("V"), sub("V"), H1, n_max=2)
    assert verdict.passed
    assert verdict.details["lim_dims"] == [1, 0, 0]


def test_two_essential_needs_normal_p(s4_fusion, sub, H1):
    verdict = two_essential_scenario(s4_fusion, sub("V'"), sub("V"), H1, n_max=2)
    assert "P, Q centric-radical" in verdict.failed_hypotheses()


def test_normalizer_triple_of_klein_four(d8_triple, sub):
    xi = normalizer_triple(d8_triple, sub("V"))
    assert xi.S == d8_triple.S
    assert xi.F == d8_triple.F


def test_induction_square_commutes(d8_triple, sub):
    square = induction_square(d8_triple, sub("V"))
    assert square.commutes()
    assert square.pi1.check_naturality()


def test_gamma_at_klein_four(d8_triple, sub):
    report = gamma_map(d8_triple, sub("V"))
    assert report.is_iso
    assert all(report.conditions)
    assert all(c.holds for c in report.checks)
    assert [c.name for c in report.checks][-1] == "induction transitivity"
    rows = corollary_induction_checks(d8_triple, sub("V"))
    assert all(r["dims_agree"] for r in rows)


def test_realizing_group(s4, d8_triple, d8):
    assert find_realizing_group(s4.whole(), d8_triple) == d8


def test_splitting_needs_a_group(d8_triple, sub):
    verdict = splitting_check(d8_triple, sub("V"), 1)
    assert verdict.failed_hypotheses() == ["realizing group provided"]


def test_splitting_over_the_sylow_subgroup(d8_triple, d8, sub):
    verdict = splitting_check(d8_triple, sub("V"), 1, group=d8)
    assert verdict.passed
    assert verdict.details["index"] == 1


@pytest.mark.parametrize("j", [1, pytest.param(2, marks=pytest.mark.slow)])
def test_splitting_in_the_symmetric_group(s4, s4_fusion, sub, j):
    T = make_triple(s4_fusion, s4_fusion, s4_fusion)
    verdict = splitting_check(T, sub("C4"), j, group=s4.whole())
    assert verdict.details["index"] == 3
    assert verdict.passed


def test_theorem_c_at_klein_four(d8_triple, d8, sub):
    verdict = theorem_c_scenario(d8_triple, sub("V"), 1, n_max=2, group=d8)
    assert verdict.passed
    assert verdict.details["gamma"]["is_iso"]
    assert verdict.details["splitting"]["status"] == "pass"
    assert verdict.details["lim_dims"][2:] == [0]


def test_theorem_c_rejects_non_fully_normalized_subgroup(s4, d8_triple, d8):
    W = subgroup_generated(d8, [s4.element((2, 3, 0, 1))])
    verdict = theorem_c_scenario(d8_triple, W, 1, n_max=2, group=d8)
    assert verdict.status == STATUS_HYPOTHESIS_FAILURE
    assert "Q fully F-normalized" in verdict.failed_hypotheses()
    assert not verdict.conclusion_checked


def test_theorem_c_reports_a_non_iso_gamma(monkeypatch, d8_triple, d8, sub):
    real = verification.gamma_map

    def degraded(T, Q, C=None):
        report = real(T, Q, C)
        report.iso = [False] * len(report.iso)
        return report

    monkeypatch.setattr(verification, "gamma_map", degraded)
    verdict = theorem_c_scenario(d8_triple, sub("V"), 1, n_max=2, group=d8)
    assert verdict.failed_hypotheses() == ["Gamma isomorphism"]


def test_theorem_c_propagates_broken_gamma(monkeypatch, d8_triple, d8, sub):
    def broken(T, Q, C=None):
        raise InvariantViolation("Gamma construction failed: square commutes")

    monkeypatch.setattr(verification, "gamma_map", broken)
    with pytest.raises(InvariantViolation):
        theorem_c_scenario(d8_triple, sub("V"), 1, n_max=2, group=d8)


def test_census_of_small_orders():
    rows = small_group_census(orders=(2, 4), j_max=2, n_max=2)
    assert [(r["group"], r["system"]) for r in rows] == [
        ("C2", 0), ("C4", 0), ("C2xC2", 0), ("C2xC2", 1),
    ]
    assert all(r["sharp"] for r in rows)


def test_census_arguments():
    with pytest.raises(ArgumentError):
        small_group_census(p=3)
    with pytest.raises(ArgumentError):
        small_group_census(orders=(16,))


@pytest.mark.slow
def test_census_of_order_eight():
    rows = small_group_census(orders=(8,), j_max=3, n_max=3)
    counts = {}
    for r in rows:
        counts[r["group"]] = counts.get(r["group"], 0) + 1
    assert counts == {"C8": 1, "C4xC2": 1, "C2^3": 45, "D8": 4, "Q8": 2}
    assert all(r["sharp"] and r["nonzero"] == [] for r in rows)
