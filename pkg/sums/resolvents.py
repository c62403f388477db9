"""
Resolvents of operator sums.

``regularized_resolvent`` solves ``u + A_lam u + B_mu u = w`` (a zero
parameter means the operator itself); ``variational_sum_resolvent`` follows
those solutions along a filter path to the resolvent of the variational sum;
``algebraic_sum_resolvent`` solves ``w in u + Au + Bu`` directly.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import aslinearoperator

from core.exceptions import ConvergenceError, ToleranceError
from core.reports import ConvergenceRecord, ConvergenceReport
from linalg.solvers import Residual, conjugate_gradient, guarded_newton
from monotone.specs import LinearSpec, Scaled, SeparableSpec, SubdifferentialSpec, YosidaRegularized
from monotone.splitting import peaceman_rachford
from sums.filters import FilterPath

logger = logging.getLogger(__name__)

INNER_TOL = 1e-10
VSUM_TOL = 1e-4
CAUCHY_SUSTAIN = 3


@dataclass(frozen=True)
class SumSolution:
    """A solved sum equation; ``residual`` is relative to ``1 + |w|``"""
    point: np.ndarray
    residual: float
    method: str


def _is_zero(spec):
    while isinstance(spec, (YosidaRegularized, Scaled)):
        spec = spec.base
    return isinstance(spec, LinearSpec) and spec.is_zero


def _check_pair(A, B, w):
    if A.dimension != B.dimension:
        raise ValueError(f'operators act on dimensions {A.dimension} and {B.dimension}')
    return A.check_dimension(w)


def _separable_graph(spec):
    """``(graph, c)`` when ``spec`` is ``c`` times a coordinate-wise graph"""
    factor = 1.0
    while isinstance(spec, Scaled):
        factor *= spec.factor
        spec = spec.base
    if isinstance(spec, SeparableSpec):
        return spec.graph, factor
    if isinstance(spec, SubdifferentialSpec) and spec.function.separable_graph is not None:
        return spec.function.separable_graph, factor
    return None, factor


def _semismooth_sum(smooth, graph, factor, w, tol, start):
    """
    Newton's method for ``w in u + S(u) + c g(u)`` in the variable
    ``v = u + c b``, ``b in g(u)``. Then ``u = J(v)`` with ``J`` the
    coordinate-wise resolvent of ``c g`` and the equation reads
    ``v + S(J(v)) = w``. Its generalized Jacobian ``I + K D`` has
    ``D = diag(J')`` in [0, 1]; the Newton system is solved through the
    symmetric positive definite ``I + D^1/2 K D^1/2``.
    """
    def resolve(v):
        return graph.resolve(factor, v)

    def value(v):
        return v + smooth.apply(resolve(v).point) - w

    def solve(v, rhs):
        resolution = resolve(v)
        root = np.sqrt(np.clip(resolution.derivative, 0.0, 1.0))
        K = aslinearoperator(smooth.jacobian(resolution.point))
        y = conjugate_gradient(lambda z: z + root * (K @ (root * z)), root * rhs)
        return rhs - K @ (root * y)

    u0 = resolve(w).point if start is None else np.asarray(start, dtype=float)
    v = guarded_newton(Residual(value=value, solve=solve), w - smooth.apply(u0), tol=tol)
    return resolve(v).point, float(np.linalg.norm(value(v)))


def solve_sum(first, second, w, tol=INNER_TOL, start=None):
    """
    Solve ``w in u + F(u) + G(u)``: a single resolvent when one operator is
    zero, Newton's method when both actions are smooth, semismooth Newton
    when one is smooth and the other coordinate-wise, averaged
    Peaceman-Rachford splitting otherwise.
    """
    w = np.asarray(w, dtype=float)
    scale = 1.0 + float(np.linalg.norm(w))
    if _is_zero(first):
        return SumSolution(second.resolvent(1.0, w), 0.0, 'resolvent')
    if _is_zero(second):
        return SumSolution(first.resolvent(1.0, w), 0.0, 'resolvent')

    if first.smooth and second.smooth:
        identity = aslinearoperator(sparse.identity(len(w), format='csr'))
        residual = Residual(
            value=lambda u: u + first.apply(u) + second.apply(u) - w,
            jacobian=lambda u: identity + aslinearoperator(first.jacobian(u)) + aslinearoperator(second.jacobian(u)),
        )
        x0 = w if start is None else start
        try:
            point = guarded_newton(residual, x0, tol=tol * scale)
        except ConvergenceError as exc:
            raise ToleranceError(
                f'sum equation not solved: {exc}',
                residual=exc.residual,
                iterations=exc.iterations,
                best=exc.best,
            ) from exc
        return SumSolution(point, float(np.linalg.norm(residual(point))) / scale, 'newton')

    for smooth, other in ((first, second), (second, first)):
        if not smooth.smooth:
            continue
        graph, factor = _separable_graph(other)
        if graph is None:
            continue
        try:
            point, residual = _semismooth_sum(smooth, graph, factor, w, tol * scale, start)
        except ConvergenceError as exc:
            logger.info('semismooth newton failed (%s); falling back to splitting', exc)
            break
        return SumSolution(point, residual / scale, 'semismooth')

    result = peaceman_rachford(first.resolvent, second.resolvent, w, tol=tol, start=start)
    return SumSolution(result.point, result.residual / scale, 'splitting')


def regularized_resolvent(A, B, lam, mu, w, tol=INNER_TOL, start=None):
    """The unique ``u`` solving ``u + A_lam u + B_mu u = w``"""
    if lam < 0 or mu < 0 or lam + mu == 0:
        raise ValueError(f'({lam}, {mu}) is outside lam, mu >= 0, lam + mu != 0')
    w = _check_pair(A, B, w)
    first = A.regularized(lam) if lam > 0 else A
    second = B.regularized(mu) if mu > 0 else B
    return solve_sum(first, second, w, tol=tol, start=start).point


def variational_sum_resolvent(A, B, w, path=None, tol=VSUM_TOL, inner_tol=INNER_TOL,
                              sustain=CAUCHY_SUSTAIN, start=None):
    """
    Evaluate regularized resolvents along ``path`` (default: the diagonal
    path), each warm-started from the previous one. Convergence means the
    last ``sustain`` successive differences are within ``tol * (1 + |u|)``.
    The final iterate is returned with the report; a path that ends without
    converging is reported, not raised.
    """
    path = path or FilterPath.diagonal()
    w = _check_pair(A, B, w)
    records, iterates = [], []
    previous = None
    for lam, mu in path:
        current = regularized_resolvent(
            A, B, lam, mu, w, tol=inner_tol, start=start if previous is None else previous,
        )
        difference = np.inf if previous is None else float(np.linalg.norm(current - previous))
        records.append(ConvergenceRecord(
            parameter=max(lam, mu),
            norm=float(np.linalg.norm(current)),
            difference=difference,
            lam=lam,
            mu=mu,
        ))
        logger.debug('vsum lam=%g mu=%g diff=%.3e', lam, mu, difference)
        iterates.append(current)
        previous = current

    report = ConvergenceReport.from_records(
        f'variational_sum[{path.label}]',
        records,
        limit=previous,
        tolerance=tol,
        sustain=sustain,
        iterates=iterates[-2:],
    )
    if not report.converged:
        logger.warning('vsum path=%s not converged final_diff=%.3e', path.label, report.final_difference)
    return previous, report


def algebraic_sum_resolvent(A, B, w, tol=INNER_TOL):
    """``u`` with ``w in u + Au + Bu``"""
    w = _check_pair(A, B, w)
    return solve_sum(A, B, w, tol=tol).point
