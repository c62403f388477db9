"""
Symmetric sparse matrices in coordinate form and the mesh-weighted inner
product used for every norm reported by the library.
"""
import numpy as np
from scipy import sparse

from core.exceptions import SymmetryError, MonotonicityViolation

ORACLE_LIMIT = 512
PSD_SLACK = 1e-10


class SymSparseMatrix:
    """
    Symmetric matrix assembled from (row, col, value) triplets.

    Duplicate coordinates are summed; a missing mirror entry (j, i) is added
    for every off-diagonal (i, j); a mirror given with a different value is a
    :class:`SymmetryError`. Instances are immutable after construction.
    """

    def __init__(self, dimension, entries=(), psd=True, validate=True):
        if dimension < 1:
            raise ValueError('dimension must be positive')
        self.dimension = int(dimension)
        self.psd = bool(psd)

        accumulated = {}
        for row, col, value in entries:
            row, col = int(row), int(col)
            if not (0 <= row < dimension and 0 <= col < dimension):
                raise IndexError(f'entry ({row}, {col}) outside a {dimension}x{dimension} matrix')
            accumulated[(row, col)] = accumulated.get((row, col), 0.0) + float(value)

        closed = dict(accumulated)
        for (row, col), value in accumulated.items():
            mirror = closed.get((col, row))
            if mirror is None:
                closed[(col, row)] = value
            elif not np.isclose(mirror, value, rtol=1e-12, atol=0.0):
                raise SymmetryError(
                    f'entry ({row}, {col}) = {value} but mirror ({col}, {row}) = {mirror}'
                )

        if closed:
            rows, cols = zip(*closed.keys())
            values = list(closed.values())
        else:
            rows, cols, values = (), (), ()
        self._csr = sparse.coo_matrix(
            (np.asarray(values, dtype=float), (np.asarray(rows, dtype=int), np.asarray(cols, dtype=int))),
            shape=(dimension, dimension),
        ).tocsr()
        self._csr.sum_duplicates()

        if validate and self.psd and dimension <= ORACLE_LIMIT:
            self._check_psd()

    @classmethod
    def from_sparse(cls, matrix, psd=True, validate=True):
        coo = sparse.coo_matrix(matrix)
        return cls(coo.shape[0], zip(coo.row, coo.col, coo.data), psd=psd, validate=validate)

    @classmethod
    def from_dense(cls, array, psd=True, validate=True):
        array = np.atleast_2d(np.asarray(array, dtype=float))
        return cls.from_sparse(sparse.coo_matrix(array), psd=psd, validate=validate)

    @classmethod
    def identity(cls, dimension, scale=1.0):
        return cls(dimension, ((i, i, scale) for i in range(dimension)))

    @classmethod
    def zeros(cls, dimension):
        return cls(dimension, ())

    @classmethod
    def diagonal(cls, values):
        values = np.asarray(values, dtype=float)
        return cls(len(values), ((i, i, v) for i, v in enumerate(values)), psd=bool(np.all(values >= 0)))

    def _check_psd(self):
        dense = self.toarray()
        scale = float(np.max(np.abs(dense))) if dense.size else 0.0
        if scale == 0.0:
            return
        smallest = float(np.linalg.eigvalsh(dense)[0])
        if smallest < -PSD_SLACK * scale:
            raise MonotonicityViolation(
                f'matrix declared PSD has eigenvalue {smallest:.3e}'
            )

    @property
    def csr(self):
        return self._csr

    @property
    def max_abs(self):
        return float(np.max(np.abs(self._csr.data))) if self._csr.nnz else 0.0

    def entries(self):
        coo = self._csr.tocoo()
        return [(int(r), int(c), float(v)) for r, c, v in zip(coo.row, coo.col, coo.data)]

    def toarray(self):
        return self._csr.toarray()

    def __matmul__(self, vector):
        return self._csr @ vector

    def matvec(self, vector):
        return self._csr @ np.asarray(vector, dtype=float)

    def __add__(self, other):
        if isinstance(other, SymSparseMatrix):
            other = other.csr
        return SymSparseMatrix.from_sparse(self._csr + other, psd=self.psd, validate=False)

    def __repr__(self):
        return f'SymSparseMatrix(dimension={self.dimension}, nnz={self._csr.nnz}, psd={self.psd})'


def mesh_inner(u, v, weight=1.0):
    """Discrete L2 inner product ``weight * sum(u_i v_i)``"""
    return float(weight * np.dot(np.ravel(u), np.ravel(v)))


def mesh_norm(u, weight=1.0):
    return float(np.sqrt(max(mesh_inner(u, u, weight), 0.0)))
