"""
Linear and nonlinear kernels: conjugate gradients for shifted PSD systems,
a dense eigen-oracle for small matrices, and a damped Newton iteration for
monotone residuals.
"""
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from core.exceptions import (
    CapabilityError,
    IterationLimitError,
    MonotonicityViolation,
    NonConvergenceError,
)
from linalg.matrices import ORACLE_LIMIT

logger = logging.getLogger(__name__)

CG_TOL = 1e-12
NEWTON_TOL = 1e-10
NEWTON_MAX_ITER = 50
NEWTON_MAX_HALVINGS = 30


def conjugate_gradient(apply, b, tol=CG_TOL, maxiter=None, x0=None):
    """
    Conjugate gradients for ``apply(x) = b`` with ``apply`` symmetric positive
    definite. Stops on ``|r| <= tol * |b|``. Non-positive curvature along a
    search direction raises :class:`MonotonicityViolation`.
    """
    b = np.asarray(b, dtype=float)
    n = b.size
    maxiter = 10 * n if maxiter is None else maxiter
    b_norm = float(np.linalg.norm(b))
    if b_norm == 0.0:
        return np.zeros_like(b)

    x = np.zeros_like(b) if x0 is None else np.array(x0, dtype=float)
    r = b - apply(x) if x0 is not None else b.copy()
    d = r.copy()
    delta = float(r @ r)
    target = (tol * b_norm) ** 2

    for iteration in range(maxiter):
        if delta <= target:
            break
        q = apply(d)
        curvature = float(d @ q)
        if curvature <= 0.0:
            raise MonotonicityViolation(
                f'non-positive curvature {curvature:.3e} at CG iteration {iteration}'
            )
        alpha = delta / curvature
        x += alpha * d
        # periodic true residual against drift
        if iteration % 50 == 49:
            r = b - apply(x)
        else:
            r -= alpha * q
        delta_old, delta = delta, float(r @ r)
        d = r + (delta / delta_old) * d
    else:
        r = b - apply(x)
        delta = float(r @ r)
        if delta > target:
            residual = float(np.sqrt(delta)) / b_norm
            raise IterationLimitError(
                f'CG did not converge in {maxiter} iterations (relative residual {residual:.3e})',
                residual=residual,
                iterations=maxiter,
                best=x,
            )
    return x


def cg_solve(M, shift, b, tol=CG_TOL):
    """Solve ``(shift * I + M) x = b`` for a PSD :class:`SymSparseMatrix` ``M``"""
    if shift < 0:
        raise ValueError('shift must be nonnegative')
    if tol <= 0:
        raise ValueError('tol must be positive')
    b = np.asarray(b, dtype=float)
    if b.shape != (M.dimension,):
        raise ValueError(f'right-hand side has shape {b.shape}, expected ({M.dimension},)')
    csr = M.csr
    return conjugate_gradient(lambda v: shift * v + csr @ v, b, tol=tol)


@dataclass(frozen=True)
class EigenPair:
    value: float
    vector: np.ndarray


def dense_eigs(M):
    """Ascending eigenpairs of a small symmetric matrix"""
    if M.dimension > ORACLE_LIMIT:
        raise CapabilityError(
            f'dense eigendecomposition limited to n <= {ORACLE_LIMIT}, got {M.dimension}'
        )
    values, vectors = np.linalg.eigh(M.toarray())
    return [EigenPair(float(values[i]), vectors[:, i].copy()) for i in range(len(values))]


@dataclass(frozen=True)
class Residual:
    """
    A vector residual with access to its (symmetric) Jacobian. ``solve``
    replaces the Jacobian when the Newton system needs its own solver:
    ``solve(x, rhs)`` returns ``J(x)^-1 rhs``.
    """
    value: Callable
    jacobian: Callable = None
    solve: Callable = None

    def __call__(self, x):
        return self.value(x)

    def step(self, x, rhs):
        if self.solve is not None:
            return self.solve(x, rhs)
        J = self.jacobian(x)
        return conjugate_gradient(lambda v: J @ v, rhs)


def guarded_newton(residual, x0, tol=NEWTON_TOL, maxiter=NEWTON_MAX_ITER):
    """
    Newton's method with step halving. Each Jacobian is expected to be
    symmetric positive definite; its system is solved by conjugate gradients
    unless the residual brings its own ``solve``. A step that does not
    reduce the residual norm is halved up to 30 times.
    """
    x = np.array(x0, dtype=float)
    r = np.asarray(residual.value(x), dtype=float)
    r_norm = float(np.linalg.norm(r))
    best, best_norm = x.copy(), r_norm

    for iteration in range(maxiter):
        if r_norm <= tol:
            logger.debug('newton converged iterations=%d residual=%.3e', iteration, r_norm)
            return x
        try:
            step = residual.step(x, -r)
        except IterationLimitError as exc:
            step = exc.best

        scale = 1.0
        for _ in range(NEWTON_MAX_HALVINGS + 1):
            candidate = x + scale * step
            r_candidate = np.asarray(residual.value(candidate), dtype=float)
            candidate_norm = float(np.linalg.norm(r_candidate))
            if candidate_norm < r_norm:
                break
            scale *= 0.5
        else:
            raise NonConvergenceError(
                f'newton could not reduce residual {r_norm:.3e} after {NEWTON_MAX_HALVINGS} halvings',
                residual=best_norm,
                iterations=iteration,
                best=best,
            )
        x, r, r_norm = candidate, r_candidate, candidate_norm
        if r_norm < best_norm:
            best, best_norm = x.copy(), r_norm

    if r_norm <= tol:
        return x
    raise NonConvergenceError(
        f'newton did not reach {tol:.1e} in {maxiter} iterations (residual {best_norm:.3e})',
        residual=best_norm,
        iterations=maxiter,
        best=best,
    )
