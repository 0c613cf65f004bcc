"""
File: fp_linalg.py

Purpose: Exact linear algebra over the prime field F_p. Dense matrices are
         numpy int64 arrays with entries reduced mod p (p = 2 is eliminated on
         uint8 with XOR row operations); very wide matrices are kept as sparse
         row dictionaries and only their rank is computed. Pivots are always
         the first nonzero entry, so every result is deterministic.

Imports from: dataclasses, typing, numpy, src.errors
Imported by: src.cohomology, src.orbit_category, src.homalg, src.rep_graphs,
             src.verification

Key Functions:
- row_reduce(): Reduced row echelon form and pivot columns
- rank(), kernel_basis(), image_basis(), solve(): The basic operations
- complement_columns(): Standard basis vectors completing a subspace basis
- sparse_rank(): Rank of a list of sparse rows

Key Classes:
- FpMatrix: Dense-or-sparse matrix over F_p
- Coordinatizer: Fast coordinates with respect to a fixed basis
- EchelonBasis: Incrementally grown subspace (membership and extension)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import ArgumentError

SparseRow = Dict[int, int]


def as_matrix(data, p: int, shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """Copy data into a 2-D int64 array reduced mod p."""
    arr = np.array(data, dtype=np.int64)
    if shape is not None:
        arr = arr.reshape(shape)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ArgumentError(f"Invalid matrix dimension: {arr.ndim}")
    return np.mod(arr, p)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def _working_copy(A, p: int) -> np.ndarray:
    """Fresh 2-D copy reduced mod p; uint8 when p = 2, int64 otherwise."""
    arr = np.array(A)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ArgumentError(f"Invalid matrix dimension: {arr.ndim}")
    if p == 2:
        if arr.dtype.kind in "iub":
            return np.bitwise_and(arr, 1).astype(np.uint8)
        return np.mod(arr.astype(np.int64), 2).astype(np.uint8)
    return np.mod(arr.astype(np.int64), p)


def row_reduce(A, p: int) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """
    Reduced row echelon form over F_p.

    Args:
        A: Matrix-like (rows x cols)
        p: Prime

    Returns:
        Tuple of (reduced matrix, pivot column indices); the matrix is uint8
        when p = 2 and int64 otherwise
    """
    M = _working_copy(A, p)
    n_rows, n_cols = M.shape
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        if p != 2:
            inv = pow(int(M[r, c]), -1, p)
            if inv != 1:
                M[r, c:] = (M[r, c:] * inv) % p
        column = M[:, c].copy()
        column[r] = 0
        targets = np.flatnonzero(column)
        if targets.size:
            if p == 2:
                M[targets, c:] ^= M[r, c:]
            else:
                M[targets, c:] = (M[targets, c:] - np.outer(column[targets], M[r, c:])) % p
        pivots.append(c)
        r += 1
    return M, tuple(pivots)


def rank(A, p: int) -> int:
    M = _working_copy(A, p)
    if M.size == 0:
        return 0
    # eliminate along the shorter side
    if M.shape[0] > M.shape[1]:
        M = M.T
    return len(row_reduce(M, p)[1])


def kernel_basis(A, p: int) -> np.ndarray:
    """Columns spanning {x : A x = 0}; shape (cols, nullity)."""
    M = _working_copy(A, p)
    n = M.shape[1]
    if M.shape[0] == 0:
        return identity(n)
    R, pivots = row_reduce(M, p)
    free = [c for c in range(n) if c not in set(pivots)]
    K = zeros(n, len(free))
    if free:
        K[free, np.arange(len(free))] = 1
        if pivots:
            K[list(pivots), :] = np.mod(-R[: len(pivots)][:, free].astype(np.int64), p)
    return K


def image_basis(A, p: int) -> np.ndarray:
    """Columns of A at pivot positions; a basis of the column space."""
    M = _working_copy(A, p)
    if M.shape[1] == 0:
        return zeros(M.shape[0], 0)
    _, pivots = row_reduce(M, p)
    return M[:, list(pivots)].astype(np.int64)


def solve(A, B, p: int) -> Optional[np.ndarray]:
    """
    One solution X of A X = B, or None when the system is inconsistent.

    Args:
        A: Matrix (m x n)
        B: Right-hand side (m,) or (m x k)
        p: Prime

    Returns:
        X of shape (n,) or (n x k); free variables are set to zero
    """
    M = as_matrix(A, p)
    vector = np.ndim(B) == 1
    rhs = as_matrix(B, p)
    if rhs.shape[0] != M.shape[0]:
        raise ArgumentError(f"Shape mismatch: {M.shape} vs {rhs.shape}")
    m, n = M.shape
    R, pivots = row_reduce(np.hstack([M, rhs]), p)
    if any(c >= n for c in pivots):
        return None
    X = zeros(n, rhs.shape[1])
    for i, c in enumerate(pivots):
        X[c] = R[i, n:]
    return X[:, 0] if vector else X


def inverse(A, p: int) -> np.ndarray:
    M = as_matrix(A, p)
    if M.shape[0] != M.shape[1]:
        raise ArgumentError(f"Matrix is not square: {M.shape}")
    X = solve(M, identity(M.shape[0]), p)
    if X is None or rank(M, p) != M.shape[0]:
        raise ArgumentError("Matrix is not invertible")
    return X


def complement_columns(B, n: int, p: int) -> List[int]:
    """Indices k such that the columns of B plus e_k form a basis of F_p^n."""
    base = as_matrix(B, p).reshape(n, -1) if np.size(B) else zeros(n, 0)
    width = base.shape[1]
    _, pivots = row_reduce(np.hstack([base, identity(n)]), p)
    return [c - width for c in pivots if c >= width]


def is_in_span(B, v, p: int) -> bool:
    base = as_matrix(B, p)
    if base.shape[1] == 0:
        return not np.any(np.mod(v, p))
    return solve(base, v, p) is not None


def matmul(A, B, p: int) -> np.ndarray:
    return np.mod(np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64), p)


class Coordinatizer:
    """Coordinates of vectors in the span of a fixed independent column set."""

    def __init__(self, basis, p: int):
        self.p = p
        self.basis = as_matrix(basis, p) if np.size(basis) else zeros(np.shape(basis)[0], 0)
        k = self.basis.shape[1]
        if k == 0:
            self.rows: List[int] = []
            self.inverse = zeros(0, 0)
            return
        _, rows = row_reduce(self.basis.T, p)
        if len(rows) != k:
            raise ArgumentError("Basis columns are not independent")
        self.rows = list(rows)
        self.inverse = inverse(self.basis[self.rows], p)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def __call__(self, V, check: bool = False) -> np.ndarray:
        vecs = as_matrix(V, self.p)
        if self.dim == 0:
            coords = zeros(0, vecs.shape[1])
        else:
            coords = matmul(self.inverse, vecs[self.rows], self.p)
        if check and not np.array_equal(matmul(self.basis, coords, self.p), vecs):
            raise ArgumentError("Vector is not in the span of the basis")
        return coords


class EchelonBasis:
    """Growing subspace of F_p^n kept in reduced row echelon form."""

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.rows = np.zeros((0, n), dtype=np.int64)
        self.pivots: List[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        v = np.mod(np.asarray(v, dtype=np.int64).reshape(-1), self.p)
        if self.pivots:
            v = np.mod(v - v[self.pivots] @ self.rows, self.p)
        return v

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def add(self, v) -> bool:
        """Add v to the span; False when it was already there."""
        r = self.reduce(v)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        c = int(nz[0])
        r = np.mod(r * pow(int(r[c]), -1, self.p), self.p)
        if self.pivots:
            self.rows = np.mod(self.rows - np.outer(self.rows[:, c], r), self.p)
        order = int(np.searchsorted(self.pivots, c))
        self.pivots.insert(order, c)
        self.rows = np.insert(self.rows, order, r, axis=0)
        return True


def sparse_rank(rows: Sequence[SparseRow], p: int) -> int:
    """Rank of sparse rows (column -> value) by online echelon reduction."""
    pivots: Dict[int, SparseRow] = {}
    for row in rows:
        current = {c: v % p for c, v in row.items() if v % p}
        while current:
            c = min(current)
            pivot_row = pivots.get(c)
            if pivot_row is None:
                inv = pow(current[c], -1, p)
                pivots[c] = {k: (v * inv) % p for k, v in current.items()}
                break
            factor = current[c]
            for k, v in pivot_row.items():
                value = (current.get(k, 0) - factor * v) % p
                if value:
                    current[k] = value
                else:
                    current.pop(k, None)
    return len(pivots)


@dataclass
class FpMatrix:
    """Matrix over F_p stored densely or as sparse rows."""

    rows: int
    cols: int
    p: int
    dense: Optional[np.ndarray] = None
    sparse: Optional[List[SparseRow]] = None

    @classmethod
    def from_dense(cls, data, p: int) -> "FpMatrix":
        arr = as_matrix(data, p)
        return cls(arr.shape[0], arr.shape[1], p, dense=arr)

    @classmethod
    def from_rows(cls, sparse_rows: List[SparseRow], cols: int, p: int) -> "FpMatrix":
        return cls(len(sparse_rows), cols, p, sparse=sparse_rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_sparse(self) -> bool:
        return self.dense is None

    def to_dense(self) -> np.ndarray:
        if self.dense is not None:
            return self.dense
        arr = zeros(self.rows, self.cols)
        for i, row in enumerate(self.sparse or []):
            for c, v in row.items():
                arr[i, c] = v % self.p
        return arr

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        if self.dense is not None:
            return rank(self.dense, self.p)
        return sparse_rank(self.sparse or [], self.p)

    def kernel_basis(self) -> np.ndarray:
        return kernel_basis(self.to_dense(), self.p)

    def image_basis(self) -> np.ndarray:
        return image_basis(self.to_dense(), self.p)

    def __matmul__(self, other: Union["FpMatrix", np.ndarray]) -> "FpMatrix":
        right = other.to_dense() if isinstance(other, FpMatrix) else other
        return FpMatrix.from_dense(matmul(self.to_dense(), right, self.p), self.p)

    def is_zero(self) -> bool:
        if self.dense is not None:
            return not np.any(self.dense)
        return not any(v % self.p for row in (self.sparse or []) for v in row.values())


__all__ = [
    "FpMatrix",
    "Coordinatizer",
    "EchelonBasis",
    "as_matrix",
    "identity",
    "zeros",
    "row_reduce",
    "rank",
    "kernel_basis",
    "image_basis",
    "solve",
    "inverse",
    "complement_columns",
    "is_in_span",
    "matmul",
    "sparse_rank",
]
