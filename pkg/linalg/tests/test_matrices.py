import numpy as np
import pytest
from scipy import sparse

from core.exceptions import MonotonicityViolation, SymmetryError
from linalg.matrices import SymSparseMatrix, mesh_inner, mesh_norm


def test_missing_mirrors_are_closed():
    M = SymSparseMatrix(3, [(0, 0, 2.0), (0, 1, -1.0), (1, 1, 2.0), (2, 2, 1.0)])
    dense = M.toarray()
    assert dense[1, 0] == -1.0
    assert np.array_equal(dense, dense.T)


def test_duplicates_are_summed():
    M = SymSparseMatrix(2, [(0, 0, 1.0), (0, 0, 2.0), (1, 1, 1.0)])
    assert M.toarray()[0, 0] == 3.0


def test_contradicting_mirror_raises():
    with pytest.raises(SymmetryError):
        SymSparseMatrix(2, [(0, 0, 2.0), (1, 1, 2.0), (0, 1, 1.0), (1, 0, 0.5)])


def test_indefinite_matrix_declared_psd_raises():
    with pytest.raises(MonotonicityViolation):
        SymSparseMatrix.from_dense([[1.0, 2.0], [2.0, 1.0]])


def test_indefinite_matrix_is_allowed_when_not_declared_psd():
    M = SymSparseMatrix.from_dense([[1.0, 2.0], [2.0, 1.0]], psd=False)
    assert not M.psd


def test_out_of_range_entry():
    with pytest.raises(IndexError):
        SymSparseMatrix(2, [(2, 0, 1.0)])


def test_constructors():
    assert np.array_equal(SymSparseMatrix.identity(3, 2.0).toarray(), 2.0 * np.eye(3))
    assert SymSparseMatrix.zeros(4).max_abs == 0.0
    diagonal = SymSparseMatrix.diagonal([1.0, -1.0])
    assert not diagonal.psd


def test_matvec_and_addition():
    M = SymSparseMatrix.from_dense([[2.0, -1.0], [-1.0, 2.0]])
    v = np.array([1.0, 2.0])
    assert np.allclose(M @ v, [0.0, 3.0])
    total = M + sparse.identity(2)
    assert np.allclose(total.toarray(), [[3.0, -1.0], [-1.0, 3.0]])
    assert np.allclose((M + M).toarray(), 2.0 * M.toarray())


def test_entries_round_trip_through_constructor():
    M = SymSparseMatrix.from_dense([[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]])
    again = SymSparseMatrix(3, M.entries())
    assert np.array_equal(M.toarray(), again.toarray())


def test_mesh_inner_is_weighted():
    u = np.array([1.0, 2.0])
    assert mesh_inner(u, u, 0.5) == 2.5
    assert mesh_norm(u, 0.25) == pytest.approx(np.sqrt(1.25))
