"""
File: homalg.py

Purpose: Homological algebra over orbit categories. Higher limits come from
         the normalized cobar complex (chains of non-identity morphisms) or,
         for large categories, from Ext of the constant functor computed
         with a resolution by sums of representable functors. Both pipelines
         agree on every instance small enough to run them side by side.

Imports from: dataclasses, functools, logging, typing, numpy, src.errors,
              src.fp_linalg, src.orbit_category, src.settings
Imported by: src.verification, app.py, test_setup.py

Key Functions:
- cobar_complex(): C^n = product over chains P0 -> ... -> Pn of M(P0)
- higher_limits() / higher_limit_dims(): lim^n with auto method selection
- limit_zero() / stable_elements(): lim^0 as an equalizer, and inside M(S)
- ext_groups(): Ext^n(A, M) through a projective resolution of A

Key Classes:
- CochainComplex: Dimensions and differentials with d o d = 0 checked
- ProjectiveResolution: Greedy resolution by representable functors
- LimitResult: Dimension, method and (small cases) representative cocycles
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from .errors import ArgumentError, CapacityError, InvariantViolation
from .fp_linalg import (
    EchelonBasis,
    FpMatrix,
    SparseRow,
    identity,
    image_basis,
    kernel_basis,
    matmul,
    row_reduce,
    zeros,
)
from .orbit_category import FunctorModule, OrbitCategory, constant_functor, nat_space
from .settings import LIMIT_METHODS, get_settings

logger = logging.getLogger(__name__)

Chain = Tuple[int, Tuple[int, ...]]  # (start object, morphism ids)


# ------------------------------
# Cochain complexes
# ------------------------------

@dataclass
class CochainComplex:
    p: int
    dims: List[int]
    differentials: List[FpMatrix]  # d^n: C^n -> C^(n+1), shape (dims[n+1], dims[n])
    _ranks: Dict[int, int] = field(default_factory=dict, repr=False)

    @property
    def top(self) -> int:
        """Highest degree whose cohomology is defined."""
        return len(self.differentials) - 1

    def rank(self, n: int) -> int:
        if n < 0 or n >= len(self.differentials):
            return 0
        if n not in self._ranks:
            self._ranks[n] = self.differentials[n].rank()
            logger.debug("rank d^%d = %d (%d x %d)", n, self._ranks[n], *self.differentials[n].shape)
        return self._ranks[n]

    def cohomology_dim(self, n: int) -> int:
        if n < 0 or n > self.top:
            raise ArgumentError(f"Degree {n} outside the computed range 0..{self.top}")
        return self.dims[n] - self.rank(n) - self.rank(n - 1)

    def cohomology_basis(self, n: int) -> np.ndarray:
        """Representative cocycles of H^n (dense differentials only)."""
        d = self.differentials[n].to_dense()
        cocycles = kernel_basis(d, self.p) if d.shape[1] else zeros(0, 0)
        if n == 0:
            return cocycles
        boundaries = image_basis(self.differentials[n - 1].to_dense(), self.p)
        width = boundaries.shape[1]
        if cocycles.shape[1] == 0:
            return cocycles
        _, pivots = row_reduce(np.hstack([boundaries, cocycles]), self.p)
        return cocycles[:, [c - width for c in pivots if c >= width]]

    def check_d_squared(self) -> None:
        for n in range(len(self.differentials) - 1):
            first, second = self.differentials[n], self.differentials[n + 1]
            if first.is_sparse or second.is_sparse:
                zero = _sparse_product_is_zero(second, first, self.p)
            else:
                zero = not np.any(matmul(second.dense, first.dense, self.p))
            if not zero:
                raise InvariantViolation("d o d is nonzero", {"degree": n})


def _sparse_rows(M: FpMatrix) -> List[SparseRow]:
    if M.sparse is not None:
        return M.sparse
    return [{int(c): int(v) for c, v in zip(np.flatnonzero(row), row[np.flatnonzero(row)])} for row in M.dense]


def _sparse_product_is_zero(second: FpMatrix, first: FpMatrix, p: int) -> bool:
    inner = _sparse_rows(first)
    for row in _sparse_rows(second):
        acc: Dict[int, int] = {}
        for k, v in row.items():
            for c, w in inner[k].items():
                acc[c] = (acc.get(c, 0) + v * w) % p
        if any(acc.values()):
            return False
    return True


# ------------------------------
# Cobar complex
# ------------------------------

def _outgoing(O: OrbitCategory) -> List[List[int]]:
    out: List[List[int]] = [[] for _ in O.objects]
    for m in O.non_identity():
        out[O.sources[m]].append(m)
    return out


def chain_counts(O: OrbitCategory, n_max: int) -> List[List[int]]:
    """counts[n][a] = number of chains of n non-identity morphisms starting at a."""
    out = _outgoing(O)
    counts = [[1] * len(O.objects)]
    for _ in range(n_max):
        prev = counts[-1]
        counts.append([sum(prev[O.targets[m]] for m in out[a]) for a in range(len(O.objects))])
    return counts


def cobar_dims(O: OrbitCategory, M: FunctorModule, n_max: int) -> List[int]:
    counts = chain_counts(O, n_max)
    return [sum(c * d for c, d in zip(row, M.dims)) for row in counts]


def _enumerate_chains(O: OrbitCategory, n_max: int) -> List[List[Chain]]:
    out = _outgoing(O)
    chains: List[List[Chain]] = [[(a, ()) for a in range(len(O.objects))]]
    for _ in range(n_max):
        level = []
        for a, seq in chains[-1]:
            end = O.targets[seq[-1]] if seq else a
            level.extend((a, seq + (m,)) for m in out[end])
        chains.append(level)
    return chains


def cobar_complex(O: OrbitCategory, M: FunctorModule, n_max: int) -> CochainComplex:
    """
    Normalized cobar complex of M, degrees 0..n_max+1.

    (dc)(f1..f_{n+1}) = M(f1) c(f2..f_{n+1}) + sum_i (-1)^i c(.., f_{i+1} f_i, ..)
                        + (-1)^(n+1) c(f1..f_n)
    Chains containing identities are omitted; a composite equal to an
    identity contributes zero.
    """
    cfg = get_settings()
    if n_max < 0:
        raise ArgumentError(f"Invalid degree: {n_max}")
    if n_max > cfg.cobar_degree_cap:
        raise CapacityError("cobar_degree_cap", cfg.cobar_degree_cap, n_max)
    planned = cobar_dims(O, M, n_max + 1)
    if max(planned) > cfg.resolution_dimension_cap:
        raise CapacityError("resolution_dimension_cap", cfg.resolution_dimension_cap, max(planned))
    p = M.p
    chains = _enumerate_chains(O, n_max + 1)
    offsets: List[Dict[Chain, int]] = []
    dims: List[int] = []
    for level in chains:
        table, total = {}, 0
        for chain in level:
            table[chain] = total
            total += M.dims[chain[0]]
        offsets.append(table)
        dims.append(total)
    differentials = []
    for n in range(n_max + 1):
        rows_dim, cols_dim = dims[n + 1], dims[n]
        dense = cols_dim <= cfg.dense_column_limit and rows_dim * cols_dim <= cfg.cochain_entry_cap
        D = zeros(rows_dim, cols_dim) if dense else None
        sparse: List[SparseRow] = [dict() for _ in range(rows_dim)] if not dense else []

        def put(r0: int, c0: int, block: np.ndarray) -> None:
            if dense:
                D[r0 : r0 + block.shape[0], c0 : c0 + block.shape[1]] += block
                return
            for i, j in zip(*np.nonzero(block)):
                row = sparse[r0 + int(i)]
                row[c0 + int(j)] = (row.get(c0 + int(j), 0) + int(block[i, j])) % p

        for chain in chains[n + 1]:
            a, seq = chain
            d = M.dims[a]
            if d == 0:
                continue
            r0 = offsets[n + 1][chain]
            first = seq[0]
            put(r0, offsets[n][(O.targets[first], seq[1:])], M.matrix(first))
            for i in range(1, n + 1):
                composite = O.compose(seq[i], seq[i - 1])
                if O.is_identity(composite):
                    continue
                face = (a, seq[: i - 1] + (composite,) + seq[i + 1 :])
                put(r0, offsets[n][face], ((-1) ** i) * identity(d))
            put(r0, offsets[n][(a, seq[:n])], ((-1) ** (n + 1)) * identity(d))
        if dense:
            differentials.append(FpMatrix.from_dense(np.mod(D, p), p))
        else:
            differentials.append(FpMatrix.from_rows(sparse, cols_dim, p))
    complex_ = CochainComplex(p, dims, differentials)
    complex_.check_d_squared()
    logger.info("Cobar complex of %s: dims %s", M.name or "functor", dims)
    return complex_


# ------------------------------
# Projective resolutions
# ------------------------------

def _object_order(O: OrbitCategory) -> List[int]:
    """Objects by decreasing subgroup order, ties by decreasing index."""
    return sorted(range(len(O.objects)), key=lambda a: (O.objects[a].order, a), reverse=True)


class ProjectiveResolution:
    """
    ... -> P_1 -> P_0 -> A -> 0 with each P_n a sum of representables.

    Generators of degree n are pairs (x, v) with v in the value at x of the
    previous kernel; they are chosen greedily over objects of decreasing
    order among basis vectors not yet generated.
    """

    def __init__(self, A: FunctorModule, length: int):
        self.module = A
        self.O = A.category
        self.p = A.p
        self.length = length
        self.generators: List[List[Tuple[int, np.ndarray]]] = []
        self.bases: List[List[List[Tuple[int, int]]]] = []
        self._positions: List[List[Dict[Tuple[int, int], int]]] = []
        cap = get_settings().resolution_dimension_cap

        act: Callable[[int, np.ndarray], np.ndarray] = lambda m, v: matmul(A.matrix(m), v, self.p)
        value_dims = list(A.dims)
        kernel = [identity(d) for d in A.dims]
        for n in range(length + 1):
            gens = self._choose_generators(act, value_dims, kernel)
            self.generators.append(gens)
            basis = [
                [(g, m) for g, (x, _) in enumerate(gens) for m in self.O.hom(a, x)]
                for a in range(len(self.O.objects))
            ]
            positions = [{b: k for k, b in enumerate(level)} for level in basis]
            self.bases.append(basis)
            self._positions.append(positions)
            total = sum(len(level) for level in basis)
            if total > cap:
                raise CapacityError("resolution_dimension_cap", cap, total)
            logger.debug("Resolution degree %d: %d generators, total dim %d", n, len(gens), total)
            if n == length:
                break
            kernel = []
            for a in range(len(self.O.objects)):
                eps = zeros(value_dims[a], len(basis[a]))
                for k, (g, m) in enumerate(basis[a]):
                    eps[:, k] = act(m, gens[g][1])
                kernel.append(kernel_basis(eps, self.p) if basis[a] else zeros(0, 0))
            act = self._representable_action(n)
            value_dims = [len(level) for level in basis]

    def _choose_generators(self, act, value_dims: List[int], kernel: List[np.ndarray]) -> List[Tuple[int, np.ndarray]]:
        O = self.O
        spans = [EchelonBasis(d, self.p) for d in value_dims]
        gens: List[Tuple[int, np.ndarray]] = []
        for x in _object_order(O):
            for k in range(kernel[x].shape[1]):
                v = kernel[x][:, k]
                if spans[x].contains(v):
                    continue
                gens.append((x, v))
                for a in range(len(O.objects)):
                    for m in O.hom(a, x):
                        spans[a].add(act(m, v))
        for a, K in enumerate(kernel):
            if spans[a].dim != K.shape[1]:
                raise InvariantViolation("Generators do not span the kernel", {"object": a})
        return gens

    def _representable_action(self, n: int) -> Callable[[int, np.ndarray], np.ndarray]:
        O, basis, positions = self.O, self.bases[n], self._positions[n]
        maps: Dict[int, np.ndarray] = {}

        def act(m: int, v: np.ndarray) -> np.ndarray:
            a, b = O.sources[m], O.targets[m]
            if m not in maps:
                maps[m] = np.array(
                    [positions[a][(g, O.compose(psi, m))] for g, psi in basis[b]], dtype=np.int64
                )
            out = zeros(len(basis[a]), 1)[:, 0]
            if len(basis[b]):
                np.add.at(out, maps[m], np.asarray(v, dtype=np.int64))
            return np.mod(out, self.p)

        return act

    def hom_complex(self, M: FunctorModule) -> CochainComplex:
        """Hom(P_n, M) = sum over generators of M(x) (Yoneda), degrees 0..length."""
        if M.category is not self.O:
            raise ArgumentError("Functor lives on a different orbit category")
        p = self.p
        dims, offsets = [], []
        for gens in self.generators:
            offs, total = [], 0
            for x, _ in gens:
                offs.append(total)
                total += M.dims[x]
            dims.append(total)
            offsets.append(offs)
        differentials = []
        for n in range(self.length):
            D = zeros(dims[n + 1], dims[n])
            basis = self.bases[n]
            for h, (y, vec) in enumerate(self.generators[n + 1]):
                r0 = offsets[n + 1][h]
                for k in np.flatnonzero(vec):
                    g, psi = basis[y][int(k)]
                    block = int(vec[k]) * M.matrix(psi)
                    c0 = offsets[n][g]
                    D[r0 : r0 + block.shape[0], c0 : c0 + block.shape[1]] += block
            differentials.append(FpMatrix.from_dense(np.mod(D, p), p))
        complex_ = CochainComplex(p, dims, differentials)
        complex_.check_d_squared()
        return complex_


@lru_cache(maxsize=None)
def _constant_resolution(O: OrbitCategory, length: int) -> ProjectiveResolution:
    return ProjectiveResolution(constant_functor(O), length)


def ext_groups(A: FunctorModule, M: FunctorModule, n_max: int, resolution: Optional[ProjectiveResolution] = None) -> List[int]:
    """dim Ext^n(A, M) for n = 0..n_max."""
    if n_max < 0:
        raise ArgumentError(f"Invalid degree: {n_max}")
    res = resolution or ProjectiveResolution(A, n_max + 1)
    if res.length < n_max + 1:
        raise ArgumentError("Resolution is too short for the requested degree")
    complex_ = res.hom_complex(M)
    return [complex_.cohomology_dim(n) for n in range(n_max + 1)]


# ------------------------------
# Higher limits
# ------------------------------

@dataclass
class LimitResult:
    degree: int
    dim: int
    method: str
    cocycles: Optional[np.ndarray] = None

    def to_dict(self) -> Dict[str, object]:
        return {"degree": self.degree, "dim": self.dim, "method": self.method}


def choose_method(O: OrbitCategory, M: FunctorModule, n_max: int, method: Optional[str] = None) -> str:
    chosen = method or get_settings().limit_method
    if chosen not in LIMIT_METHODS:
        raise ArgumentError(f"Unknown limit method: {chosen}")
    if chosen != "auto":
        return chosen
    size = max(cobar_dims(O, M, n_max + 1))
    cap = get_settings().cobar_dimension_cap
    if size > cap or n_max > get_settings().cobar_degree_cap:
        logger.warning("Cobar complex would reach dimension %d (cap %d); using a projective resolution", size, cap)
        return "resolution"
    return "cobar"


def higher_limit_dims(O: OrbitCategory, M: FunctorModule, n_max: int, method: Optional[str] = None) -> List[int]:
    """dim lim^n M for n = 0..n_max."""
    chosen = choose_method(O, M, n_max, method)
    if chosen == "cobar":
        complex_ = cobar_complex(O, M, n_max)
        return [complex_.cohomology_dim(n) for n in range(n_max + 1)]
    return ext_groups(constant_functor(O, M.p), M, n_max, _constant_resolution(O, n_max + 1))


def higher_limits(O: OrbitCategory, M: FunctorModule, n: int, method: Optional[str] = None) -> LimitResult:
    """lim^n M with representative cocycles when the cobar complex is dense."""
    chosen = choose_method(O, M, n, method)
    if chosen == "cobar":
        complex_ = cobar_complex(O, M, n)
        cocycles = None
        if not complex_.differentials[n].is_sparse and (n == 0 or not complex_.differentials[n - 1].is_sparse):
            cocycles = complex_.cohomology_basis(n)
        return LimitResult(n, complex_.cohomology_dim(n), chosen, cocycles)
    dims = higher_limit_dims(O, M, n, chosen)
    return LimitResult(n, dims[n], chosen)


def limit_zero(O: OrbitCategory, M: FunctorModule) -> int:
    """lim^0 M as the equalizer Nat(constant, M)."""
    return nat_space(constant_functor(O, M.p), M).dim


def stable_elements(O: OrbitCategory, M: FunctorModule, top=None) -> np.ndarray:
    """
    lim^0 M as a subspace of M(top), top defaulting to S.

    Returns:
        Basis columns, shape (dim M(top), dim lim^0)
    """
    T = top if top is not None else O.F.S
    if not O.has_object(T):
        raise ArgumentError("Stable elements need the top subgroup as an object")
    a = O.ob(T)
    space = nat_space(constant_functor(O, M.p), M)
    if space.dim == 0:
        return zeros(M.dims[a], 0)
    return np.stack([eta.components[a][:, 0] for eta in space.transformations()], axis=1)


def sharpness_table(O: OrbitCategory, functors: Sequence[FunctorModule], n_max: int, method: Optional[str] = None) -> Dict[Tuple[int, int], int]:
    """{(n, j): dim lim^n M_j} for a list of functors indexed by j."""
    table = {}
    for j, M in enumerate(functors):
        for n, d in enumerate(higher_limit_dims(O, M, n_max, method)):
            table[(n, j)] = d
    return table
