import numpy as np
import pytest

from catalog.grids import GridSpec, build_laplacian, laplacian_eigenvalues
from core.exceptions import ConfigurationError
from linalg.solvers import dense_eigs


@pytest.mark.parametrize('grid', [GridSpec(1, 16), GridSpec(1, 40), GridSpec(2, 6)], ids=str)
def test_closed_form_spectrum_matches_the_dense_oracle(grid):
    computed = np.array([pair.value for pair in dense_eigs(build_laplacian(grid))])
    assert np.allclose(computed, laplacian_eigenvalues(grid), rtol=1e-10, atol=1e-8)


def test_two_dimensional_nodes_follow_the_matrix_ordering():
    grid = GridSpec(2, 3)
    assert grid.unknowns == 9
    assert grid.weight == pytest.approx(1.0 / 16.0)
    assert np.allclose(grid.nodes[1], [0.25, 0.5])


def test_laplacian_is_diagonally_dominant():
    matrix = build_laplacian(GridSpec(2, 5)).toarray()
    off_diagonal = np.abs(matrix).sum(axis=1) - np.abs(np.diag(matrix))
    assert np.all(np.diag(matrix) >= off_diagonal)
    assert np.allclose(matrix, matrix.T)


@pytest.mark.parametrize('kwargs', [{'dimension': 3}, {'points': 1}])
def test_grid_validation(kwargs):
    with pytest.raises(ConfigurationError):
        GridSpec(**kwargs)
