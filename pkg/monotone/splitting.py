"""
Averaged Peaceman-Rachford splitting for ``w in u + F(u) + G(u)``.

Both operators are shifted by ``(I - w) / 2`` so that the problem becomes the
zero of a sum of two strongly monotone operators, whose reflected resolvents
are then alternated with relaxation one half. Only the resolvents of ``F`` and
``G`` are needed, passed as callables ``(step, z) -> J_step(z)``.
"""
import logging
from dataclasses import dataclass

import numpy as np

from core.exceptions import ToleranceError

logger = logging.getLogger(__name__)

SPLITTING_TOL = 1e-12
SPLITTING_MAX_ITER = 10000


@dataclass(frozen=True)
class SplittingResult:
    point: np.ndarray
    residual: float
    iterations: int


def shifted_resolvent(resolve, w):
    """Unit-step resolvent of ``T + (I - w) / 2`` from the resolvents of ``T``"""
    def apply(z):
        return resolve(2.0 / 3.0, (2.0 * z + w) / 3.0)
    return apply


def peaceman_rachford(resolve_first, resolve_second, w, tol=SPLITTING_TOL, maxiter=SPLITTING_MAX_ITER, start=None):
    """
    Return the ``u`` solving ``w in u + F(u) + G(u)``.

    The fixed-point residual ``|z_next - z|`` is compared with
    ``tol * (1 + |z|)``; the budget running out raises
    :class:`ToleranceError` carrying the last point.
    """
    w = np.asarray(w, dtype=float)
    first = shifted_resolvent(resolve_first, w)
    second = shifted_resolvent(resolve_second, w)

    z = w.copy() if start is None else np.array(start, dtype=float)
    residual = np.inf
    for iteration in range(1, maxiter + 1):
        x = first(z)
        y = second(2.0 * x - z)
        step = y - x
        z = z + step
        residual = float(np.linalg.norm(step))
        if residual <= tol * (1.0 + float(np.linalg.norm(z))):
            point = first(z)
            logger.debug('splitting converged iterations=%d residual=%.3e', iteration, residual)
            return SplittingResult(point=point, residual=residual, iterations=iteration)

    raise ToleranceError(
        f'splitting did not reach {tol:.1e} in {maxiter} iterations (residual {residual:.3e})',
        residual=residual,
        iterations=maxiter,
        best=first(z),
    )
