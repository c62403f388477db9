"""
Uniform grids on the unit interval / unit square with homogeneous Dirichlet
data, and the finite-difference Laplacian on them.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import sparse

from core.exceptions import ConfigurationError
from linalg.matrices import SymSparseMatrix


@dataclass(frozen=True)
class GridSpec:
    dimension: int = 1
    points: int = 32

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise ConfigurationError(f'grid dimension must be 1 or 2, got {self.dimension}')
        if self.points < 2:
            raise ConfigurationError(f'a grid needs at least 2 points per axis, got {self.points}')

    @property
    def h(self):
        return 1.0 / (self.points + 1)

    @property
    def unknowns(self):
        return self.points ** self.dimension

    @property
    def weight(self):
        """Cell volume ``h^d`` of the discrete L2 inner product"""
        return self.h ** self.dimension

    @cached_property
    def axis(self):
        return self.h * np.arange(1, self.points + 1)

    @cached_property
    def nodes(self):
        """Node coordinates, shape ``(unknowns, dimension)``, row-major like the Laplacian"""
        if self.dimension == 1:
            return self.axis[:, None]
        x, y = np.meshgrid(self.axis, self.axis, indexing='ij')
        return np.column_stack([x.ravel(), y.ravel()])

    def to_dict(self):
        return {'dimension': self.dimension, 'points': self.points}


def _second_difference(n):
    ones = np.ones(n)
    return sparse.diags([-ones[1:], 2.0 * ones, -ones[1:]], [-1, 0, 1], format='csr')


def laplacian_matrix(grid):
    """``-Delta`` as a scipy sparse matrix, scaled by ``1/h^2``"""
    one = _second_difference(grid.points)
    if grid.dimension == 1:
        matrix = one
    else:
        identity = sparse.identity(grid.points, format='csr')
        matrix = sparse.kron(identity, one) + sparse.kron(one, identity)
    return sparse.csr_matrix(matrix / grid.h ** 2)


def build_laplacian(grid):
    """The (2d+1)-point Dirichlet Laplacian: symmetric, PSD, diagonally dominant"""
    return SymSparseMatrix.from_sparse(laplacian_matrix(grid))


def laplacian_eigenvalues(grid):
    """Closed-form spectrum ``(4/h^2) sin^2(k pi h / 2)`` (pairwise sums in 2D), ascending"""
    k = np.arange(1, grid.points + 1)
    one = 4.0 / grid.h ** 2 * np.sin(k * np.pi * grid.h / 2.0) ** 2
    if grid.dimension == 1:
        return one
    return np.sort(np.add.outer(one, one).ravel())
