"""
File: cohomology.py

Purpose: Mod-p cohomology of small p-groups from the normalized bar
         resolution. Cochains of degree n are functions on n-tuples of
         non-identity elements (tuples containing the identity are zero);
         a tuple (g1, ..., gn) of member positions is stored at the
         mixed-radix index sum (g_k - 1) * b^(n-k), b = |P| - 1.
         One basis of representative cocycles is fixed per (group, degree)
         so that induced maps and transfers live in consistent coordinates.

Imports from: dataclasses, functools, logging, typing, numpy, src.errors,
              src.fp_linalg, src.groups, src.settings, src.verdicts
Imported by: src.orbit_category, src.verification, app.py, test_setup.py

Key Functions:
- bar_differential(): d: C^n -> C^(n+1) as a dense matrix
- group_cohomology(): H^j(P; F_p) with a fixed cocycle basis (cached)
- induced_cohomology_map(): Pullback phi*: H^j(Q) -> H^j(P)
- transfer_map(): Cochain transfer H^j(H) -> H^j(G), tr o Res = [G:H] asserted

Key Classes:
- GroupCohomology: Dimension, representative cocycles and coordinates
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List
import logging

import numpy as np

from .errors import ArgumentError, CapacityError, ContainmentError, InvariantViolation
from .fp_linalg import Coordinatizer, identity, image_basis, kernel_basis, matmul, row_reduce, zeros
from .groups import GroupHom, SubgroupHandle, conjugation_hom, inclusion_hom
from .settings import cohomology_degree_cap, get_settings
from .verdicts import Check

logger = logging.getLogger(__name__)


# ------------------------------
# Cochain indexing
# ------------------------------

def _all_tuples(b: int, n: int) -> np.ndarray:
    """All n-tuples over 1..b in index order, shape (b^n, n)."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if b == 0:
        return np.zeros((0, n), dtype=np.int64)
    grid = np.unravel_index(np.arange(b ** n), (b,) * n)
    return np.stack(grid, axis=1).astype(np.int64) + 1


def _tuple_index(T: np.ndarray, b: int) -> np.ndarray:
    n = T.shape[1]
    if n == 0:
        return np.zeros(T.shape[0], dtype=np.int64)
    weights = b ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (T - 1) @ weights


def cochain_dim(P: SubgroupHandle, n: int) -> int:
    return (P.order - 1) ** n


def _check_caps(P: SubgroupHandle, j: int) -> None:
    if j < 0:
        raise ArgumentError(f"Invalid cohomological degree: {j}")
    cap = cohomology_degree_cap(P.order)
    if j > cap:
        raise CapacityError("cohomology_degree_cap", cap, j)
    entries = cochain_dim(P, j + 1) * cochain_dim(P, j)
    limit = get_settings().cochain_entry_cap
    if entries > limit:
        raise CapacityError("cochain_entry_cap", limit, entries)


# ------------------------------
# Bar complex
# ------------------------------

def bar_differential(P: SubgroupHandle, n: int, p: int) -> np.ndarray:
    """
    The coboundary C^n(P; F_p) -> C^(n+1)(P; F_p), trivial coefficients.

    (df)(g1..g_{n+1}) = f(g2..g_{n+1}) + sum_i (-1)^i f(.., g_i g_{i+1}, ..)
                        + (-1)^(n+1) f(g1..g_n)

    Args:
        P: The group
        n: Source degree
        p: Prime

    Returns:
        Matrix of shape (b^(n+1), b^n); uint8 for p < 256
    """
    b = P.order - 1
    rows, cols = b ** (n + 1), b ** n
    D = np.zeros((rows, cols), dtype=np.int16)
    if rows == 0 or cols == 0:
        return D.astype(np.uint8)
    table = P.local_table
    T = _all_tuples(b, n + 1)
    r = np.arange(rows)
    np.add.at(D, (r, _tuple_index(T[:, 1:], b)), 1)
    for i in range(1, n + 1):
        merged = table[T[:, i - 1], T[:, i]]
        keep = merged != 0
        U = np.concatenate([T[:, : i - 1], merged[:, None], T[:, i + 1 :]], axis=1)
        np.add.at(D, (r[keep], _tuple_index(U[keep], b)), (-1) ** i)
    np.add.at(D, (r, _tuple_index(T[:, :n], b)), (-1) ** (n + 1))
    D = np.mod(D, p)
    return D.astype(np.uint8) if p < 256 else D.astype(np.int64)


# ------------------------------
# Cohomology groups
# ------------------------------

@dataclass(frozen=True, eq=False)
class GroupCohomology:
    group: SubgroupHandle
    degree: int
    p: int
    representatives: np.ndarray  # (b^j, dim) normalized cocycles
    coordinatizer: Coordinatizer  # basis [coboundaries | representatives]
    boundary_rank: int

    @property
    def dim(self) -> int:
        return self.representatives.shape[1]

    def coordinates(self, cocycles: np.ndarray) -> np.ndarray:
        """Classes of cocycle columns in the representative basis, shape (dim, k)."""
        coords = self.coordinatizer(cocycles)
        return coords[self.boundary_rank :]


@lru_cache(maxsize=None)
def group_cohomology(P: SubgroupHandle, j: int, p: int) -> GroupCohomology:
    """
    H^j(P; F_p) from the normalized bar complex.

    Representatives extend a coboundary basis greedily (first pivots win),
    so the basis is deterministic.
    """
    _check_caps(P, j)
    size = cochain_dim(P, j)
    if j == 0:
        reps = identity(1)
        return GroupCohomology(P, 0, p, reps, Coordinatizer(reps, p), 0)
    if size == 0:
        empty = zeros(0, 0)
        return GroupCohomology(P, j, p, empty, Coordinatizer(empty, p), 0)
    cocycles = kernel_basis(bar_differential(P, j, p), p)
    boundaries = image_basis(bar_differential(P, j - 1, p), p)
    width = boundaries.shape[1]
    _, pivots = row_reduce(np.hstack([boundaries, cocycles]), p)
    chosen = [c - width for c in pivots if c >= width]
    reps = cocycles[:, chosen]
    logger.debug(
        "H^%d of order-%d group: cocycles %d, coboundaries %d, dim %d",
        j, P.order, cocycles.shape[1], width, len(chosen),
    )
    return GroupCohomology(P, j, p, reps, Coordinatizer(np.hstack([boundaries, reps]), p), width)


def cohomology_dim(P: SubgroupHandle, j: int, p: int) -> int:
    return group_cohomology(P, j, p).dim


def cohomology_dims(P: SubgroupHandle, j_max: int, p: int) -> List[int]:
    return [cohomology_dim(P, j, p) for j in range(j_max + 1)]


# ------------------------------
# Induced maps
# ------------------------------

def pullback_cochains(phi: GroupHom, cochains: np.ndarray, j: int) -> np.ndarray:
    """Precompose degree-j cochains on phi.codomain with phi."""
    P, Q = phi.domain, phi.codomain
    bP, bQ = P.order - 1, Q.order - 1
    pos = Q.position
    try:
        loc = np.array([pos[y] for y in phi.images], dtype=np.int64)
    except KeyError:
        raise ContainmentError("Image of the map is not contained in its codomain")
    T = _all_tuples(bP, j)
    out = zeros(T.shape[0], cochains.shape[1])
    if T.shape[0] == 0 or cochains.shape[1] == 0:
        return out
    U = loc[T]
    valid = np.all(U != 0, axis=1)
    out[valid] = cochains[_tuple_index(U[valid], bQ)]
    return out


def induced_cohomology_map(phi: GroupHom, j: int, p: int) -> np.ndarray:
    """
    phi*: H^j(Q; F_p) -> H^j(P; F_p) for phi: P -> Q.

    Returns:
        Matrix of shape (dim H^j(P), dim H^j(Q))
    """
    source = group_cohomology(phi.codomain, j, p)
    target = group_cohomology(phi.domain, j, p)
    if source.dim == 0 or target.dim == 0:
        return zeros(target.dim, source.dim)
    if j == 0:
        return identity(1)
    pulled = pullback_cochains(phi, source.representatives, j)
    return target.coordinates(pulled)


def restriction_map(G: SubgroupHandle, H: SubgroupHandle, j: int, p: int) -> np.ndarray:
    """Res: H^j(G) -> H^j(H), shape (dim H^j(H), dim H^j(G))."""
    return induced_cohomology_map(inclusion_hom(H, G), j, p)


def inner_triviality_check(Q: SubgroupHandle, j: int, p: int) -> Check:
    """Every conjugation c_q of Q induces the identity on H^j(Q)."""
    dim = cohomology_dim(Q, j, p)
    for q in Q.generators:
        M = induced_cohomology_map(conjugation_hom(q, Q, Q), j, p)
        if not np.array_equal(M, identity(dim)):
            return Check("inner-triviality", False, {"degree": j, "element": q})
    return Check("inner-triviality", True)


# ------------------------------
# Transfer
# ------------------------------

def _right_coset_representatives(G: SubgroupHandle, H: SubgroupHandle) -> Dict[int, int]:
    """x -> least element of Hx, for every x in G."""
    A = G.ambient
    rep: Dict[int, int] = {}
    for x in G.members:
        if x not in rep:
            coset = [A.mul(h, x) for h in H.members]
            least = min(coset)
            for y in coset:
                rep[y] = least
    return rep


def transfer_cochain_matrix(G: SubgroupHandle, H: SubgroupHandle, j: int) -> np.ndarray:
    """
    Integer matrix (b_G^j, b_H^j) of the cochain transfer C^j(H) -> C^j(G).

    (tr f)(g1..gj) = sum over representatives t of f(h1..hj), where
    x_0 = t, h_k = x_{k-1} g_k rep(x_{k-1} g_k)^-1 and x_k = rep(x_{k-1} g_k).
    """
    A = G.ambient
    rep = _right_coset_representatives(G, H)
    reps = sorted(set(rep.values()))
    bG, bH = G.order - 1, H.order - 1
    hpos = H.position
    T = _all_tuples(bG, j)
    out = np.zeros((T.shape[0], bH ** j), dtype=np.int64)
    for row, tup in enumerate(T):
        elements = [G.members[k] for k in tup]
        for t in reps:
            x, idx = t, 0
            for g in elements:
                y = A.mul(x, g)
                r = rep[y]
                k = hpos[A.mul(y, A.inv(r))]
                if k == 0:
                    break
                idx = idx * bH + (k - 1)
                x = r
            else:
                out[row, idx] += 1
    return out


def transfer_map(G: SubgroupHandle, H: SubgroupHandle, j: int, p: int) -> np.ndarray:
    """
    tr: H^j(H; F_p) -> H^j(G; F_p), shape (dim H^j(G), dim H^j(H)).

    Raises:
        ContainmentError: H is not a subgroup of G
        InvariantViolation: tr o Res differs from [G:H] * id
    """
    if not H.is_subgroup_of(G):
        raise ContainmentError("Transfer requires H <= G")
    index = G.order // H.order
    target = group_cohomology(G, j, p)
    source = group_cohomology(H, j, p)
    if j == 0:
        tr = np.array([[index % p]], dtype=np.int64)
    elif target.dim == 0 or source.dim == 0:
        tr = zeros(target.dim, source.dim)
    else:
        cochains = matmul(transfer_cochain_matrix(G, H, j), source.representatives, p)
        tr = target.coordinates(cochains)
    composite = matmul(tr, restriction_map(G, H, j, p), p)
    expected = np.mod(index * identity(target.dim), p)
    if not np.array_equal(composite, expected):
        raise InvariantViolation(
            "tr o Res differs from multiplication by the index",
            {"index": index, "degree": j, "composite": composite.tolist()},
        )
    return tr


def transfer_identity_check(G: SubgroupHandle, H: SubgroupHandle, j: int, p: int) -> Check:
    try:
        transfer_map(G, H, j, p)
    except InvariantViolation as e:
        return Check("transfer-identity", False, e.witness)
    return Check("transfer-identity", True, {"index": G.order // H.order, "degree": j})


if __name__ == "__main__":
    from .presets import dihedral

    D8 = dihedral(8).whole()
    print("H^j(D8; F2), j = 0..3:", cohomology_dims(D8, 3, 2))
