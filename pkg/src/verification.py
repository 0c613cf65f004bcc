"""
File: verification.py

Purpose: Scenario checkers for higher limits over orbit categories. Each
         checker records its hypotheses, evaluates its conclusion only when
         they all hold, and treats every stated conclusion as a test oracle:
         a failed conclusion under passing hypotheses is reported loudly.

Imports from: dataclasses, logging, typing, numpy, src.cohomology, src.errors,
              src.fp_linalg, src.fusion, src.groups, src.homalg,
              src.orbit_category, src.presets, src.rep_graphs, src.utils,
              src.verdicts
Imported by: app.py, test_setup.py

Key Functions:
- theorem_a_check(): Ext of C_{F,Lambda} against higher limits, and the
  four-term exact sequence through coker(f*)
- limone_identification(): ker(f*) and coker(f*) as stable-element spaces
- subsystem_limit_pair(): Ext of an induced constant and limits over H, side by side
- limits_of_subsystem(): the same pair, raising when the two disagree
- sharpness_suite(): lim^n of H^j over the centric orbit category
- theorem_b_scenario() / pruning_induction_steps(): Sharpness along pruning
- two_essential_scenario() / two_essential_triple(): Two essential classes
- gamma_map() / splitting_check() / theorem_c_scenario(): Induction from
  the normalizer of Q
- small_group_census(): Every saturated system over the 2-groups of order <= 8

Key Classes:
- TheoremALedger: All dimensions and exactness flags of one Theorem A run
- SharpnessReport: (n, j) table with stable-element cross-check
- InductionSquare / GammaReport: CY -> CX comparison data
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from .cohomology import transfer_identity_check
from .errors import ArgumentError, InvariantViolation
from .fp_linalg import Coordinatizer, matmul, rank, zeros
from .fusion import (
    FusionSystem,
    Triple,
    aut_group,
    enumerate_saturated_systems,
    extension_subgroup,
    fusion_subsystem_eq,
    fusion_subsystem_leq,
    is_saturated,
    join,
    make_triple,
    normalizer_subsystem,
    realize,
    subsystem_from_automorphisms,
)
from .groups import (
    SubgroupHandle,
    centralizer,
    is_extraspecial_exponent_p,
    is_normal,
    normalizer,
    subgroups_of,
)
from .homalg import ext_groups, higher_limit_dims, limit_zero, stable_elements
from .orbit_category import (
    FunctorModule,
    NaturalTransformation,
    OrbitCategory,
    SubgroupFamily,
    build_orbit_category,
    cohomology_functor,
    induce_functor,
    induced_constant,
    nat_space,
    precomposition_matrix,
    restrict_functor,
    subfamily,
)
from .presets import abelian, cyclic, dihedral, elementary_abelian, quaternion8
from .rep_graphs import (
    CXComplex,
    homs_into,
    build_cx_complex,
    build_rep_graph,
    family_for,
    pruning_triple,
)
from .utils import limits_frame
from .verdicts import Check, ScenarioVerdict

logger = logging.getLogger(__name__)

VANISHING_READING = "subsystem hypothesis read as lim^n = 0 for n >= 1"
SATURATION_READING = "saturation required of the join and of every member of the normalizer triple"


# ------------------------------
# Shared hypothesis checks
# ------------------------------

def _category(F: FusionSystem, C: Optional[SubgroupFamily]) -> OrbitCategory:
    return build_orbit_category(F, family_for(F, C))


def _require_on(M: FunctorModule, O: OrbitCategory) -> OrbitCategory:
    """The category M lives on, provided it has the objects and fusion of O."""
    if M.category is O:
        return O
    if M.category.F != O.F or M.category.objects != O.objects:
        raise ArgumentError("Functor is not defined on the orbit category of the scenario")
    return M.category


def centric_radical_check(E: FusionSystem, C: SubgroupFamily) -> Check:
    """Every E-centric E-radical subgroup lies in C."""
    missing = [P.label() for P in E.centric_radical_subgroups() if P not in C]
    return Check("centric-radical in family", not missing, missing or None)


def subsystem_limits_vanish(
    H: FusionSystem,
    C: SubgroupFamily,
    M: FunctorModule,
    n_max: int,
    method: Optional[str] = None,
) -> Check:
    """lim^n over O^C(H) of M restricted vanishes for n = 1..n_max."""
    O_H = build_orbit_category(H, subfamily(C, H))
    dims = higher_limit_dims(O_H, restrict_functor(M, O_H), n_max, method)
    return Check("subsystem limits vanish", all(d == 0 for d in dims[1:]), {"dims": dims})


def _triple_members(T: Triple) -> List[Tuple[str, FusionSystem]]:
    return [("F1", T.F1), ("F2", T.F2), ("Fe", T.Fe)]


# ------------------------------
# Ext against limits
# ------------------------------

def subsystem_limit_pair(
    F: FusionSystem,
    H: FusionSystem,
    M: FunctorModule,
    n: int,
    C: Optional[SubgroupFamily] = None,
    method: Optional[str] = None,
) -> Tuple[List[int], List[int]]:
    """Ext^k over O^C(F) of the induced constant of H against M, and lim^k over O^C(H) of M restricted, for k = 0..n."""
    O = _require_on(M, _category(F, C))
    ext = ext_groups(induced_constant(H, O), M, n)
    O_H = build_orbit_category(H, subfamily(O.family, H))
    return ext, higher_limit_dims(O_H, restrict_functor(M, O_H), n, method)


def limits_of_subsystem(
    F: FusionSystem,
    H: FusionSystem,
    M: FunctorModule,
    n: int,
    C: Optional[SubgroupFamily] = None,
    method: Optional[str] = None,
) -> List[int]:
    """
    lim^k over O^C(H) of M restricted, for k = 0..n, checked against the Ext
    groups of subsystem_limit_pair.

    Raises:
        InvariantViolation: the two computations disagree
    """
    ext, lim = subsystem_limit_pair(F, H, M, n, C, method)
    if ext != lim:
        raise InvariantViolation("Ext of the induced constant differs from limits over the subsystem", {"ext": ext, "lim": lim})
    logger.info("Subsystem limits agree: %s", lim)
    return lim


@dataclass
class TheoremALedger:
    triple: Triple
    family: SubgroupFamily
    functor: str
    n_max: int
    verdict: ScenarioVerdict
    lim_dims: List[int] = field(default_factory=list)
    ext_dims: List[int] = field(default_factory=list)
    nat_dims: Dict[str, int] = field(default_factory=dict)
    ker_fstar_dim: Optional[int] = None
    coker_fstar_dim: Optional[int] = None
    nat_dim: Optional[int] = None
    upsilon_rank: Optional[int] = None
    exactness: Dict[str, bool] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return self.verdict.status

    @property
    def passed(self) -> bool:
        return self.verdict.passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            "functor": self.functor,
            "family": self.family.to_dict(),
            "n_max": self.n_max,
            "verdict": self.verdict.to_dict(),
            "lim_dims": self.lim_dims,
            "ext_dims": self.ext_dims,
            "nat_dims": self.nat_dims,
            "ker_fstar_dim": self.ker_fstar_dim,
            "coker_fstar_dim": self.coker_fstar_dim,
            "nat_dim": self.nat_dim,
            "upsilon_rank": self.upsilon_rank,
            "exactness": self.exactness,
        }


def _fstar(cx: CXComplex, M: FunctorModule):
    N0, N1 = nat_space(cx.cx0, M), nat_space(cx.cx1, M)
    return N0, N1, precomposition_matrix(cx.f, N0, N1)


def theorem_a_check(
    T: Triple,
    C: Optional[SubgroupFamily],
    M: FunctorModule,
    n_max: int = 3,
    method: Optional[str] = None,
) -> TheoremALedger:
    """
    Hypotheses: the centric-radical subgroups of F1, F2, Fe and F lie in C,
    and lim^n over O^C(H) of M vanishes for H in the triple, n = 1..n_max.

    Conclusions: Ext^n(C_{F,Lambda}, M) = lim^{n+2} M for n = 1..n_max-2, and
    0 -> lim^1 -> coker f* -> Nat(C_{F,Lambda}, M) -> lim^2 -> 0 is exact,
    the middle map being restriction along ker f inside CX1.
    """
    if n_max < 2:
        raise ArgumentError(f"Theorem A needs n_max >= 2, got {n_max}")
    family = family_for(T.F, C)
    O = build_orbit_category(T.F, family)
    O = _require_on(M, O)
    verdict = ScenarioVerdict("theorem-a", details={"readings": [VANISHING_READING]})
    for label, E in _triple_members(T) + [("F", T.F)]:
        check = centric_radical_check(E, family)
        verdict.require(f"{label} centric-radical subgroups in C", check.holds, check.witness)
    for label, H in _triple_members(T):
        check = subsystem_limits_vanish(H, family, M, n_max, method)
        verdict.require(f"limits over O^C({label}) vanish", check.holds, check.witness)
    ledger = TheoremALedger(T, family, M.name, n_max, verdict)
    if not verdict.hypotheses_hold:
        logger.warning("Theorem A hypotheses fail: %s", verdict.failed_hypotheses())
        return ledger

    p = M.p
    ledger.lim_dims = higher_limit_dims(O, M, n_max, method)
    cx = build_cx_complex(T, family, O)
    K, inclusion = cx.kernel()
    if n_max >= 3:
        ledger.ext_dims = ext_groups(K, M, n_max - 2)
        for n in range(1, n_max - 1):
            verdict.conclude(
                f"Ext^{n}(C, M) = lim^{n + 2}(M)",
                ledger.ext_dims[n] == ledger.lim_dims[n + 2],
                {"ext": ledger.ext_dims[n], "lim": ledger.lim_dims[n + 2]},
            )

    N0, N1, fstar = _fstar(cx, M)
    NC = nat_space(K, M)
    res = precomposition_matrix(inclusion, N1, NC)
    r_f, r_res = rank(fstar, p), rank(res, p)
    ledger.nat_dims = {"CX0": N0.dim, "CX1": N1.dim, "C": NC.dim}
    ledger.ker_fstar_dim = N0.dim - r_f
    ledger.coker_fstar_dim = N1.dim - r_f
    ledger.nat_dim = NC.dim
    ledger.upsilon_rank = r_res
    ker_upsilon = (N1.dim - r_res) - r_f
    coker_upsilon = NC.dim - r_res
    lim = ledger.lim_dims
    ledger.exactness = {
        "image of f* inside kernel of restriction": not np.any(matmul(res, fstar, p)),
        "lim^0 = ker f*": ledger.ker_fstar_dim == lim[0],
        "lim^1 = ker Upsilon": ker_upsilon == lim[1],
        "lim^2 = coker Upsilon": coker_upsilon == lim[2],
        "alternating sum": lim[1] - ledger.coker_fstar_dim + NC.dim - lim[2] == 0,
    }
    for name, holds in ledger.exactness.items():
        verdict.conclude(name, holds, {"ker_upsilon": ker_upsilon, "coker_upsilon": coker_upsilon} if not holds else None)
    logger.info("Theorem A ledger: lim %s, coker f* %d, Nat(C, M) %d", lim, ledger.coker_fstar_dim, NC.dim)
    return ledger


def limone_identification(T: Triple, C: Optional[SubgroupFamily], M: FunctorModule) -> ScenarioVerdict:
    """
    ker f* has the dimension of the stable elements M^F, and coker f* that of
    M^Fe / (M^F1 restricted to S' + M^F2) inside M(S').
    """
    family = family_for(T.F, C)
    O = build_orbit_category(T.F, family)
    O = _require_on(M, O)
    verdict = ScenarioVerdict("lim1-identification")
    verdict.require("S' in C", T.S_prime in family, T.S_prime.label())
    if not verdict.hypotheses_hold:
        return verdict
    p = M.p
    cx = build_cx_complex(T, family, O)
    N0, N1, fstar = _fstar(cx, M)
    r_f = rank(fstar, p)

    stable: Dict[str, np.ndarray] = {}
    for label, E in _triple_members(T):
        O_E = build_orbit_category(E, subfamily(family, E))
        stable[label] = stable_elements(O_E, restrict_functor(M, O_E), top=E.S)
    res = M.matrix(O.inclusion(T.S_prime, T.S))
    combined = np.hstack([matmul(res, stable["F1"], p), stable["F2"]])
    fe_dim = stable["Fe"].shape[1]
    sum_dim = rank(combined, p)
    contained = rank(np.hstack([stable["Fe"], combined]), p) == fe_dim
    quotient = fe_dim - sum_dim
    verdict.details.update({
        "stable_F": limit_zero(O, M),
        "stable_F1": stable["F1"].shape[1],
        "stable_F2": stable["F2"].shape[1],
        "stable_Fe": fe_dim,
        "ker_fstar": N0.dim - r_f,
        "coker_fstar": N1.dim - r_f,
    })
    verdict.conclude("ker f* = M^F", N0.dim - r_f == verdict.details["stable_F"])
    verdict.conclude("M^F1 restricted + M^F2 inside M^Fe", contained)
    verdict.conclude("coker f* = M^Fe / (M^F1 + M^F2)", N1.dim - r_f == quotient, {"quotient": quotient})
    return verdict


# ------------------------------
# Sharpness
# ------------------------------

@dataclass
class SharpnessReport:
    name: str
    order: int
    j_max: int
    n_max: int
    saturated: bool
    table: Dict[Tuple[int, int], int] = field(default_factory=dict)
    stable: List[int] = field(default_factory=list)

    @property
    def sharp(self) -> bool:
        return self.saturated and all(d == 0 for (n, _), d in self.table.items() if n >= 1)

    def nonzero_cells(self) -> List[Tuple[int, int]]:
        return [cell for cell, d in sorted(self.table.items()) if cell[0] >= 1 and d]

    def frame(self):
        return limits_frame(self.table)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "order": self.order,
            "j_max": self.j_max,
            "n_max": self.n_max,
            "saturated": self.saturated,
            "sharp": self.sharp,
            "table": [{"n": n, "j": j, "dim": d} for (n, j), d in sorted(self.table.items())],
            "stable": self.stable,
        }


def sharpness_suite(
    F: FusionSystem,
    j_max: int = 3,
    n_max: int = 3,
    C: Optional[SubgroupFamily] = None,
    method: Optional[str] = None,
) -> SharpnessReport:
    """
    lim^n over O(F^c) of H^j(-; F_p) for j <= j_max and n <= n_max.

    Raises:
        InvariantViolation: the lim^0 row differs from the stable elements
    """
    report = SharpnessReport(F.name, F.S.order, j_max, n_max, is_saturated(F).saturated)
    if not report.saturated:
        logger.warning("Sharpness suite skipped: fusion system is not saturated")
        return report
    O = _category(F, C)
    for j in range(j_max + 1):
        M = cohomology_functor(O, j)
        dims = higher_limit_dims(O, M, n_max, method)
        for n, d in enumerate(dims):
            report.table[(n, j)] = d
        stable = limit_zero(O, M)
        report.stable.append(stable)
        if stable != dims[0]:
            raise InvariantViolation("lim^0 differs from the stable elements", {"degree": j, "lim0": dims[0], "stable": stable})
    logger.info("Sharpness table over |S|=%d: %s", F.S.order, "sharp" if report.sharp else report.nonzero_cells())
    return report


def _pruning_bullet(F: FusionSystem, H: FusionSystem, P: SubgroupHandle) -> Dict[str, bool]:
    """Extraspecial of order p^3 and exponent p with H_H(P) = Aut_H(P), or C_S(Q) not in Q for all Q < P."""
    extraspecial = (
        is_extraspecial_exponent_p(P, F.p)
        and extension_subgroup(H, P).mask == aut_group(H, P).whole().mask
    )
    centralizers = all(
        not centralizer(F.S, Q).is_subgroup_of(Q)
        for Q in subgroups_of(P)
        if Q.mask != P.mask
    )
    return {"extraspecial": extraspecial, "centralizers": centralizers}


def pruning_induction_steps(
    F: FusionSystem,
    H: FusionSystem,
    pruned: Sequence[SubgroupHandle],
    C: Optional[SubgroupFamily] = None,
) -> Dict[str, Any]:
    """
    Re-adjoin the pruned subgroups one at a time, largest first: at each step
    the triple (H_k, N_F(P), N_{H_k}(P)) is built, its Rep graphs examined,
    and H_{k+1} = <H_k, N_F(P)>.
    """
    family = family_for(F, C)
    order = sorted(
        {F.fully_normalized_representative(P) for P in pruned},
        key=lambda P: (-P.order, P.members),
    )
    current = H
    steps = []
    for P in order:
        T = pruning_triple(current, F, P)
        members = family_for(T.F, family)
        trees = {Q.label(): build_rep_graph(T, Q).is_tree() for Q in members}
        nxt = join(current, normalizer_subsystem(F, P))
        steps.append({
            "subgroup": P.label(),
            "trees": trees,
            "all_trees": all(trees.values()),
            "morphisms_before": current.morphism_count,
            "morphisms_after": nxt.morphism_count,
        })
        current = nxt
    return {"steps": steps, "reaches_F": fusion_subsystem_eq(current, F).holds}


def theorem_b_scenario(
    F: FusionSystem,
    H: FusionSystem,
    pruned: Sequence[SubgroupHandle],
    j_max: int = 3,
    n_max: int = 3,
    C: Optional[SubgroupFamily] = None,
    method: Optional[str] = None,
) -> ScenarioVerdict:
    """Cohomological sharpness passes from H to F = <H, Aut_F(P) : P pruned>_S."""
    verdict = ScenarioVerdict("theorem-b")
    verdict.require("F saturated", is_saturated(F).saturated)
    verdict.require("H saturated", is_saturated(H).saturated)
    verdict.require("H <= F", fusion_subsystem_leq(H, F).holds)
    if verdict.hypotheses_hold:
        generated = fusion_subsystem_eq(subsystem_from_automorphisms(F, list(pruned), base=H), F)
        verdict.require("F = <H, Aut_F(P) : P pruned>", generated.holds, generated.witness)
    for P in pruned:
        bullet = _pruning_bullet(F, H, P)
        verdict.require(f"pruning condition at {P.label()}", any(bullet.values()), bullet)
    if verdict.hypotheses_hold:
        sub_report = sharpness_suite(H, j_max, n_max, method=method)
        verdict.details["H_table"] = sub_report.to_dict()
        verdict.require("H cohomologically sharp", sub_report.sharp, sub_report.nonzero_cells() or None)
    if not verdict.hypotheses_hold:
        logger.warning("Theorem B hypotheses fail: %s", verdict.failed_hypotheses())
        return verdict
    verdict.details["induction"] = pruning_induction_steps(F, H, pruned, C)
    report = sharpness_suite(F, j_max, n_max, C, method)
    verdict.details["F_table"] = report.to_dict()
    verdict.conclude("F cohomologically sharp", report.sharp, report.nonzero_cells() or None)
    return verdict


# ------------------------------
# Two essential classes
# ------------------------------

def two_essential_triple(
    F: FusionSystem,
    P: SubgroupHandle,
    Q: SubgroupHandle,
    C: Optional[SubgroupFamily] = None,
) -> Tuple[Triple, Dict[str, bool]]:
    """(N_F(P), N_F(Q), N_{N_F(P)}(Q)) with its tree verdict at every object."""
    NP = normalizer_subsystem(F, P)
    T = make_triple(NP, normalizer_subsystem(F, Q), normalizer_subsystem(NP, Q))
    members = family_for(T.F, family_for(F, C))
    return T, {R.label(): build_rep_graph(T, R).is_tree() for R in members}


def two_essential_scenario(
    F: FusionSystem,
    P: SubgroupHandle,
    Q: SubgroupHandle,
    M: FunctorModule,
    n_max: int = 3,
    C: Optional[SubgroupFamily] = None,
    method: Optional[str] = None,
) -> ScenarioVerdict:
    """P normal in S, P and Q centric-radical and fully normalized, F = <N_F(P), Aut_F(Q)>_S, Q minimal: lim^n M = 0 for n >= 2."""
    O = _require_on(M, _category(F, C))
    cr = F.centric_radical_subgroups()
    verdict = ScenarioVerdict("two-essential")
    verdict.require("P normal in S", is_normal(P, F.S), P.label())
    verdict.require("P, Q centric-radical", P in cr and Q in cr)
    verdict.require("P, Q fully normalized", F.is_fully_normalized(P) and F.is_fully_normalized(Q))
    if verdict.hypotheses_hold:
        generated = fusion_subsystem_eq(
            subsystem_from_automorphisms(F, [Q], base=normalizer_subsystem(F, P)), F
        )
        verdict.require("F = <N_F(P), Aut_F(Q)>", generated.holds, generated.witness)
    verdict.require(
        "Q minimal among centric-radical subgroups",
        not any(R != Q and R.is_subgroup_of(Q) for R in cr),
    )
    if not verdict.hypotheses_hold:
        logger.warning("Two-essential hypotheses fail: %s", verdict.failed_hypotheses())
        return verdict
    _, trees = two_essential_triple(F, P, Q, C)
    verdict.details["trees"] = trees
    dims = higher_limit_dims(O, M, n_max, method)
    verdict.details["lim_dims"] = dims
    verdict.conclude("lim^n = 0 for n >= 2", all(d == 0 for d in dims[2:]), dims)
    return verdict


# ------------------------------
# Induction from the normalizer of Q
# ------------------------------

def normalizer_triple(T: Triple, Q: SubgroupHandle) -> Triple:
    """Xi = (N_F1(Q), N_F2(Q), N_Fe(Q)) with join E."""
    return make_triple(
        normalizer_subsystem(T.F1, Q),
        normalizer_subsystem(T.F2, Q),
        normalizer_subsystem(T.Fe, Q),
    )


def _class_map(source, target, a: int, shift_rows: int = 0, shift_cols: int = 0, out=None):
    for k, c in enumerate(source.classes[a]):
        out[shift_rows + target.class_index(a, c), shift_cols + k] = 1
    return out


@dataclass
class InductionSquare:
    """The induced complex of Xi mapped to the complex of Lambda by [phi] -> [i phi]."""

    triple: Triple
    xi: Triple
    subgroup: SubgroupHandle
    category: OrbitCategory
    cx: CXComplex
    cy: CXComplex
    pi1: NaturalTransformation
    pi0: NaturalTransformation

    def commutes(self) -> Check:
        p = self.triple.p
        for a in range(len(self.category.objects)):
            left = matmul(self.cx.f.components[a], self.pi1.components[a], p)
            right = matmul(self.pi0.components[a], self.cy.f.components[a], p)
            if not np.array_equal(left, right):
                return Check("square commutes", False, {"object": self.category.objects[a].label()})
        return Check("square commutes", True)


def induction_square(T: Triple, Q: SubgroupHandle, C: Optional[SubgroupFamily] = None) -> InductionSquare:
    family = family_for(T.F, C)
    O = build_orbit_category(T.F, family)
    xi = normalizer_triple(T, Q)
    cx = build_cx_complex(T, family, O)
    cy = build_cx_complex(xi, O=O)
    pi1, pi0 = [], []
    for a in range(len(O.objects)):
        pi1.append(_class_map(cy.cx1, cx.cx1, a, out=zeros(cx.cx1.dims[a], cy.cx1.dims[a])))
        block = zeros(cx.cx0.dims[a], cy.cx0.dims[a])
        _class_map(cy.cx0_f1, cx.cx0_f1, a, out=block)
        _class_map(cy.cx0_f2, cx.cx0_f2, a, cx.cx0_f1.dims[a], cy.cx0_f1.dims[a], out=block)
        pi0.append(block)
    return InductionSquare(
        T, xi, Q, O, cx, cy,
        NaturalTransformation(cy.cx1, cx.cx1, pi1, "pi1"),
        NaturalTransformation(cy.cx0, cx.cx0, pi0, "pi0"),
    )


@dataclass
class GammaReport:
    transformation: NaturalTransformation
    conditions: List[bool]
    iso: List[bool]
    checks: List[Check]

    @property
    def is_iso(self) -> bool:
        return all(self.iso)

    def objects(self) -> List[Dict[str, Any]]:
        O = self.transformation.source.category
        return [
            {
                "subgroup": P.label(),
                "condition": self.conditions[a],
                "source_dim": self.transformation.source.dims[a],
                "target_dim": self.transformation.target.dims[a],
                "iso": self.iso[a],
            }
            for a, P in enumerate(O.objects)
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "is_iso": self.is_iso,
            "objects": self.objects(),
            "checks": [c.to_dict() for c in self.checks],
        }


def gamma_map(T: Triple, Q: SubgroupHandle, C: Optional[SubgroupFamily] = None) -> GammaReport:
    """
    Gamma: induced C_{E,Xi} -> C_{F,Lambda}, the restriction of pi1 to the
    kernels, with the objectwise condition Hom_E(P, N_S(Q)) = Hom_F(P, N_S(Q)).
    """
    square = induction_square(T, Q, C)
    O, p = square.category, T.p
    K_xi, inc_xi = square.cy.kernel()
    K, inc = square.cx.kernel()
    comps = []
    for a in range(len(O.objects)):
        moved = matmul(square.pi1.components[a], inc_xi.components[a], p)
        try:
            comps.append(Coordinatizer(inc.components[a], p)(moved, check=True))
        except ArgumentError:
            raise InvariantViolation("pi1 does not map ker g into ker f", {"object": O.objects[a].label()}) from None
    gamma = NaturalTransformation(K_xi, K, comps, "Gamma")
    E, N = square.xi.F, square.xi.S
    conditions = [homs_into(E, P, N) == homs_into(T.F, P, N) for P in O.objects]
    iso = [
        c.shape[0] == c.shape[1] and rank(c, p) == c.shape[0]
        for c in comps
    ]
    checks = [square.pi1.check_naturality(), square.commutes(), gamma.check_naturality()]
    # the kernel of the induced complex agrees with the induced kernel computed over O^C(E)
    C_E = build_cx_complex(square.xi, subfamily(O.family, E)).kernel()[0]
    induced = induce_functor(C_E, O)
    checks.append(Check("induction transitivity", list(induced.dims) == list(K_xi.dims), {"induced": list(induced.dims), "kernel": list(K_xi.dims)}))
    for check in checks:
        if not check:
            raise InvariantViolation(f"Gamma construction failed: {check.name}", check.witness)
    return GammaReport(gamma, conditions, iso, checks)


def corollary_induction_checks(T: Triple, Q: SubgroupHandle, C: Optional[SubgroupFamily] = None) -> List[Dict[str, Any]]:
    """Per object: the Hom condition and, where it holds, agreement of dimensions."""
    report = gamma_map(T, Q, C)
    rows = report.objects()
    for row in rows:
        row["dims_agree"] = row["source_dim"] == row["target_dim"]
        if row["condition"] and not (row["dims_agree"] and row["iso"]):
            logger.warning("Induction condition holds at %s but Gamma is not an isomorphism there", row["subgroup"])
    return rows


def find_realizing_group(G: SubgroupHandle, T: Triple) -> Optional[SubgroupHandle]:
    """First of S', N_G(S'), G whose fusion over S' is Fe."""
    Sp = T.S_prime
    for W in (Sp, normalizer(G, Sp), G):
        if realize(W, Sp, T.p) == T.Fe:
            return W
    return None


def splitting_check(
    T: Triple,
    Q: SubgroupHandle,
    j: int,
    C: Optional[SubgroupFamily] = None,
    group: Optional[SubgroupHandle] = None,
) -> ScenarioVerdict:
    """
    pi1*: Nat(CX1, H^j) -> Nat(induced CY1, H^j) is injective, and in the
    realizing group G_e the transfer gives tr o Res = [G_e : N_{G_e}(Q)].
    """
    verdict = ScenarioVerdict("splitting")
    Sp = T.S_prime
    verdict.require("Q <= S'", Q.is_subgroup_of(Sp), Q.label())
    verdict.require("Q normal in S'", Q.is_subgroup_of(Sp) and is_normal(Q, Sp))
    verdict.require("realizing group provided", group is not None)
    if group is not None:
        verdict.require("group realizes Fe over S'", Sp.is_subgroup_of(group) and realize(group, Sp, T.p) == T.Fe)
    if not verdict.hypotheses_hold:
        logger.warning("Splitting check skipped: %s", verdict.failed_hypotheses())
        return verdict
    NQ = normalizer(group, Q)
    index = group.order // NQ.order
    verdict.details["index"] = index
    verdict.require("index prime to p", index % T.p != 0, index)
    if not verdict.hypotheses_hold:
        return verdict
    square = induction_square(T, Q, C)
    M = cohomology_functor(square.category, j)
    N1, NY = nat_space(square.cx.cx1, M), nat_space(square.cy.cx1, M)
    pullback = precomposition_matrix(square.pi1, N1, NY)
    verdict.details.update({"nat_cx1": N1.dim, "nat_cy1": NY.dim})
    verdict.conclude("pi1* injective", rank(pullback, T.p) == N1.dim, {"rank": rank(pullback, T.p), "dim": N1.dim})
    transfer = transfer_identity_check(group, NQ, j, T.p)
    verdict.conclude("tr o Res = index", transfer.holds, transfer.witness)
    return verdict


def theorem_c_scenario(
    T: Triple,
    Q: SubgroupHandle,
    j: int,
    n_max: int = 3,
    C: Optional[SubgroupFamily] = None,
    group: Optional[SubgroupHandle] = None,
    method: Optional[str] = None,
    M: Optional[FunctorModule] = None,
) -> ScenarioVerdict:
    """If Gamma is an isomorphism and pi1* splits, lim^n M = 0 for 2 <= n <= n_max (M defaults to H^j)."""
    family = family_for(T.F, C)
    O = build_orbit_category(T.F, family)
    M = M if M is not None else cohomology_functor(O, j)
    O = _require_on(M, O)
    verdict = ScenarioVerdict("theorem-c", details={"readings": [VANISHING_READING, SATURATION_READING]})
    for label, E in _triple_members(T) + [("F", T.F)]:
        verdict.require(f"{label} saturated", is_saturated(E).saturated)
        check = centric_radical_check(E, family)
        verdict.require(f"{label} centric-radical subgroups in C", check.holds, check.witness)
    verdict.require("Q <= S'", Q.is_subgroup_of(T.S_prime), Q.label())
    if not verdict.hypotheses_hold:
        logger.warning("Theorem C hypotheses fail: %s", verdict.failed_hypotheses())
        return verdict
    xi = normalizer_triple(T, Q)
    for label, E in _triple_members(xi) + [("E", xi.F)]:
        verdict.require(f"{label} of Xi saturated", is_saturated(E).saturated)
        check = centric_radical_check(E, family)
        verdict.require(f"{label} of Xi centric-radical subgroups in C", check.holds, check.witness)
    for label, H in _triple_members(T):
        check = subsystem_limits_vanish(H, family, M, n_max, method)
        verdict.require(f"limits over O^C({label}) vanish", check.holds, check.witness)
    verdict.require("Q fully F-normalized", T.F.is_fully_normalized(Q))
    equal = fusion_subsystem_eq(normalizer_subsystem(T.F, Q), xi.F)
    verdict.require("N_F(Q) = E", equal.holds, equal.witness)
    if verdict.hypotheses_hold:
        gamma = gamma_map(T, Q, family)
        verdict.details["gamma"] = gamma.to_dict()
        verdict.require("Gamma isomorphism", gamma.is_iso, [r["subgroup"] for r in gamma.objects() if not r["iso"]] or None)
    if verdict.hypotheses_hold:
        split = splitting_check(T, Q, j, family, group)
        verdict.details["splitting"] = split.to_dict()
        verdict.require("pi1* split", split.passed, split.failed_hypotheses() or None)
    if not verdict.hypotheses_hold:
        logger.warning("Theorem C hypotheses fail: %s", verdict.failed_hypotheses())
        return verdict
    dims = higher_limit_dims(O, M, n_max, method)
    verdict.details["lim_dims"] = dims
    verdict.conclude("lim^n = 0 for 2 <= n <= n_max", all(d == 0 for d in dims[2:]), dims)
    return verdict


# ------------------------------
# Census
# ------------------------------

CENSUS_GROUPS = {
    2: [("C2", lambda: cyclic(2))],
    4: [("C4", lambda: cyclic(4)), ("C2xC2", lambda: abelian(2, 2))],
    8: [
        ("C8", lambda: cyclic(8)),
        ("C4xC2", lambda: abelian(4, 2)),
        ("C2^3", lambda: elementary_abelian(2, 3)),
        ("D8", lambda: dihedral(8)),
        ("Q8", quaternion8),
    ],
}


def small_group_census(
    p: int = 2,
    orders: Sequence[int] = (2, 4, 8),
    j_max: int = 3,
    n_max: int = 3,
    method: Optional[str] = None,
) -> List[Dict[str, Any]]:
    """Sharpness tables of every saturated fusion system over the listed 2-groups."""
    if p != 2:
        raise ArgumentError("The census covers 2-groups only")
    rows = []
    for order in orders:
        if order not in CENSUS_GROUPS:
            raise ArgumentError(f"No census groups of order {order}")
        for label, build in CENSUS_GROUPS[order]:
            S = build().whole()
            systems = enumerate_saturated_systems(S, p)
            for k, F in enumerate(systems):
                report = sharpness_suite(F, j_max, n_max, method=method)
                rows.append({
                    "group": label,
                    "order": order,
                    "system": k,
                    "morphisms": F.morphism_count,
                    "sharp": report.sharp,
                    "nonzero": report.nonzero_cells(),
                })
            logger.info("Census: %s has %d saturated fusion systems", label, len(systems))
    return rows
