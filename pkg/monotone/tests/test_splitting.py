import numpy as np
import pytest

from core.exceptions import ToleranceError
from monotone.splitting import peaceman_rachford, shifted_resolvent


def _diagonal(d):
    return lambda step, z: z / (1.0 + step * d)


def test_shifted_resolvent_solves_the_shifted_inclusion():
    d, w, z = np.array([2.0]), np.array([1.0]), np.array([0.5])
    u = shifted_resolvent(_diagonal(d), w)(z)
    # z = u + d u + (u - w) / 2
    assert np.allclose(u + d * u + (u - w) / 2.0, z)


def test_linear_sum_is_solved():
    a, b = np.array([1.0, 3.0, 0.0]), np.array([2.0, 0.5, 4.0])
    w = np.array([4.0, -9.0, 10.0])
    result = peaceman_rachford(_diagonal(a), _diagonal(b), w)
    assert np.allclose(result.point, w / (1.0 + a + b), atol=1e-10)
    assert result.iterations > 0


def test_projection_plus_linear():
    project = lambda step, z: np.maximum(z, 0.0)  # noqa: E731
    w = np.array([-2.0, 3.0])
    result = peaceman_rachford(project, _diagonal(np.ones(2)), w)
    assert np.allclose(result.point, [0.0, 1.5], atol=1e-10)


def test_budget_exhaustion_raises_with_best_point():
    with pytest.raises(ToleranceError) as info:
        peaceman_rachford(_diagonal(np.ones(2)), _diagonal(np.full(2, 7.0)), np.ones(2), maxiter=1)
    assert info.value.iterations == 1
    assert info.value.best.shape == (2,)
