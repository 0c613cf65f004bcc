"""Tests for exact linear algebra over F_p."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.errors import ArgumentError
from src.fp_linalg import (
    Coordinatizer,
    EchelonBasis,
    FpMatrix,
    complement_columns,
    image_basis,
    inverse,
    is_in_span,
    kernel_basis,
    matmul,
    rank,
    row_reduce,
    solve,
    sparse_rank,
)


def matrices(p, max_rows=5, max_cols=6):
    shape = st.tuples(st.integers(1, max_rows), st.integers(1, max_cols))
    return shape.flatmap(
        lambda s: st.lists(
            st.lists(st.integers(0, p - 1), min_size=s[1], max_size=s[1]),
            min_size=s[0],
            max_size=s[0],
        )
    ).map(lambda rows: np.array(rows, dtype=np.int64))


def test_rank_small_cases():
    assert rank([[1, 1], [1, 1]], 2) == 1
    assert rank([[1, 1], [1, 2]], 3) == 2
    assert rank([[1, 2], [2, 1]], 3) == 1
    assert rank(np.zeros((3, 0), dtype=np.int64), 2) == 0


def test_row_reduce_pivots():
    R, pivots = row_reduce([[0, 1, 1], [0, 1, 0]], 2)
    assert pivots == (1, 2)
    assert R.tolist() == [[0, 1, 0], [0, 0, 1]]


def test_solve_inconsistent_returns_none():
    assert solve([[1, 1], [1, 1]], [0, 1], 2) is None


def test_solve_vector_shape():
    X = solve([[1, 0], [0, 1]], [1, 1], 5)
    assert X.tolist() == [1, 1]


def test_inverse_of_singular_raises():
    with pytest.raises(ArgumentError):
        inverse([[1, 1], [1, 1]], 2)
    with pytest.raises(ArgumentError):
        inverse([[1, 0, 0], [0, 1, 0]], 2)


def test_inverse_mod_three():
    A = np.array([[2, 1], [1, 1]])
    assert matmul(A, inverse(A, 3), 3).tolist() == [[1, 0], [0, 1]]


def test_complement_columns_completes_basis():
    B = np.array([[1], [1], [0]])
    extra = complement_columns(B, 3, 2)
    full = np.hstack([B, np.eye(3, dtype=np.int64)[:, extra]])
    assert rank(full, 2) == 3
    assert len(extra) == 2


def test_is_in_span():
    B = np.array([[1, 0], [1, 0], [0, 1]])
    assert is_in_span(B, [1, 1, 1], 2)
    assert not is_in_span(B, [1, 0, 0], 2)


def test_echelon_basis_membership():
    E = EchelonBasis(4, 3)
    assert E.add([1, 2, 0, 0])
    assert E.add([0, 1, 1, 0])
    assert not E.add([1, 0, 1, 0])
    assert E.contains([2, 1, 0, 0])
    assert not E.contains([0, 0, 0, 1])
    assert E.dim == 2


def test_coordinatizer_recovers_coordinates():
    basis = np.array([[1, 0], [1, 1], [0, 1]])
    coords = Coordinatizer(basis, 2)(matmul(basis, [[1], [1]], 2), check=True)
    assert coords[:, 0].tolist() == [1, 1]


def test_coordinatizer_rejects_outside_span():
    basis = np.array([[1], [1], [0]])
    with pytest.raises(ArgumentError):
        Coordinatizer(basis, 2)([[1], [0], [0]], check=True)


def test_coordinatizer_rejects_dependent_basis():
    with pytest.raises(ArgumentError):
        Coordinatizer(np.array([[1, 1], [1, 1]]), 2)


def test_fp_matrix_sparse_and_dense_agree():
    dense = np.array([[1, 2, 0], [2, 4, 0], [0, 1, 1]])
    rows = [{c: int(v) for c, v in enumerate(r) if v} for r in dense]
    sparse = FpMatrix.from_rows(rows, 3, 5)
    assert sparse.is_sparse
    assert sparse.rank() == FpMatrix.from_dense(dense, 5).rank() == 2
    assert np.array_equal(sparse.to_dense(), dense % 5)


@settings(max_examples=40, deadline=None)
@given(matrices(2))
def test_kernel_is_annihilated_mod_two(A):
    K = kernel_basis(A, 2)
    assert K.shape[1] == A.shape[1] - rank(A, 2)
    assert not np.any(matmul(A, K, 2))


@settings(max_examples=40, deadline=None)
@given(matrices(3))
def test_rank_nullity_mod_three(A):
    K = kernel_basis(A, 3)
    assert not np.any(matmul(A, K, 3))
    assert rank(K, 3) == K.shape[1]
    assert image_basis(A, 3).shape[1] == rank(A, 3)


@settings(max_examples=40, deadline=None)
@given(matrices(3))
def test_sparse_rank_matches_dense(A):
    rows = [{c: int(v) for c, v in enumerate(r) if v} for r in A]
    assert sparse_rank(rows, 3) == rank(A, 3)


@settings(max_examples=40, deadline=None)
@given(matrices(2), st.data())
def test_solve_finds_preimage(A, data):
    x = np.array(data.draw(st.lists(st.integers(0, 1), min_size=A.shape[1], max_size=A.shape[1])))
    b = matmul(A, x, 2)
    X = solve(A, b, 2)
    assert X is not None
    assert np.array_equal(matmul(A, X, 2), b)
