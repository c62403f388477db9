"""
Singular potentials ``Q(x) = offset + sum_k G(x - a_k) / k^2`` with a
power-law kernel ``G(x) = |x|^-p`` on ``|x| <= r``, and the form-sum
Schrödinger operator ``-Delta + Q`` built on them.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from catalog.grids import GridSpec, build_laplacian
from core.exceptions import ConfigurationError
from monotone.specs import FormSumSchrodinger

logger = logging.getLogger(__name__)

DEFAULT_EXPONENT = 0.7
DEFAULT_TRUNCATION = 16
REFINEMENT_POINTS = tuple(2 ** k for k in range(5, 11))


def dyadic_centers(count):
    """``0, 1/2, 1/4, 3/4, 1/8, 3/8, ...``: the dyadic rationals of [0, 1) by level"""
    centers = [0.0]
    level = 1
    while len(centers) < count:
        denominator = 2 ** level
        centers.extend(k / denominator for k in range(1, denominator, 2))
        level += 1
    return tuple(centers[:count])


@dataclass(frozen=True)
class PotentialSpec:
    exponent: float = DEFAULT_EXPONENT
    cutoff: float = 1.0
    offset: float = 0.0
    truncation: int = DEFAULT_TRUNCATION
    centers: tuple = field(default=None)

    def __post_init__(self):
        if self.truncation < 1:
            raise ConfigurationError('the series needs at least one term')
        if self.cutoff <= 0:
            raise ConfigurationError('kernel cutoff radius must be positive')
        if self.offset < 0:
            raise ConfigurationError('positivity offset must be nonnegative')
        if self.exponent <= 0:
            raise ConfigurationError('kernel exponent must be positive')
        centers = self.centers
        if centers is None:
            centers = dyadic_centers(self.truncation)
        centers = tuple(
            tuple(float(c) for c in np.atleast_1d(center)) for center in centers
        )
        if len(centers) < self.truncation:
            raise ConfigurationError(f'{self.truncation} terms requested, {len(centers)} centers given')
        for center in centers:
            if any(c < 0.0 or c > 1.0 for c in center):
                raise ConfigurationError(f'center {center} lies outside the closed unit box')
        object.__setattr__(self, 'centers', centers[:self.truncation])

    def kernel(self, distance, floor=0.0):
        """``G`` at the given distances; distances below ``floor`` are raised to it"""
        distance = np.maximum(np.asarray(distance, dtype=float), floor)
        with np.errstate(divide='ignore'):
            value = distance ** -self.exponent
        return np.where(distance <= self.cutoff, value, 0.0)

    def to_dict(self):
        return {
            'exponent': self.exponent,
            'cutoff': self.cutoff,
            'offset': self.offset,
            'truncation': self.truncation,
            'centers': [list(center) for center in self.centers],
        }


def check_exponent(potential, grid):
    """Integrable but not square integrable near a center: ``d/2 <= p < d``"""
    d = grid.dimension
    if not (d / 2.0 <= potential.exponent < d):
        raise ConfigurationError(
            f'exponent {potential.exponent} outside [{d / 2}, {d}) for a {d}-dimensional grid'
        )


def sample_potential(potential, grid):
    """
    ``Q`` at the grid nodes. A node closer than ``h/2`` to a center sees the
    kernel capped at ``G(h/2)``, so every value is finite.
    """
    check_exponent(potential, grid)
    nodes = grid.nodes
    values = np.full(len(nodes), potential.offset)
    floor = grid.h / 2.0
    for k, center in enumerate(potential.centers, start=1):
        point = np.resize(np.asarray(center), grid.dimension)
        distance = np.linalg.norm(nodes - point, axis=1)
        values += potential.kernel(distance, floor) / k ** 2
    if np.any(values <= 0):
        raise ConfigurationError('potential is not strictly positive on the grid; raise the cutoff or offset')
    return values


def build_form_sum(grid, potential):
    return FormSumSchrodinger(build_laplacian(grid), sample_potential(potential, grid))


def potential_refinement_study(potential=None, points=REFINEMENT_POINTS, dimension=1):
    """Discrete L1 and L2 proxies ``h^d sum Q`` and ``h^d sum Q^2`` under refinement"""
    potential = potential or PotentialSpec()
    rows = []
    for n in points:
        grid = GridSpec(dimension=dimension, points=n)
        q = sample_potential(potential, grid)
        rows.append({
            'points': n,
            'h': grid.h,
            'l1': float(grid.weight * np.sum(q)),
            'l2': float(grid.weight * np.sum(q ** 2)),
        })
    logger.info('potential refinement l1=%s l2=%s', [r['l1'] for r in rows], [r['l2'] for r in rows])
    return rows


def interaction_conditioning(potential=None, points=(8, 16, 32, 64), lam=1.0, mu=1.0):
    """
    Condition numbers of ``(I + lam L)(I + mu diag Q)`` under refinement. The
    growth is reported only; it is the grid-level trace of two operators
    whose domains barely meet.
    """
    potential = potential or PotentialSpec()
    rows = []
    for n in points:
        grid = GridSpec(points=n)
        laplacian = build_laplacian(grid).toarray()
        q = sample_potential(potential, grid)
        product = (np.eye(n) + lam * laplacian) @ np.diag(1.0 + mu * q)
        rows.append({'points': n, 'condition': float(np.linalg.cond(product))})
    return rows
