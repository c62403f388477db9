"""
Implicit Euler for ``u' + (A + B)u ∋ f``: every step is the resolvent
``u_(i+1) = J_tau(u_i + tau f(t_(i+1)))`` of the problem's sum construction.
"""
import logging

import numpy as np

from core.exceptions import ConfigurationError, EvolutionStepError, ToleranceError, VarsumError
from core.reports import DiagnosticReport
from evolution.problems import Trajectory
from sums.filters import FilterPath
from sums.resolvents import solve_sum, variational_sum_resolvent

logger = logging.getLogger(__name__)

STEP_TOL = 1e-10
VARIATIONAL_TOL = 1e-4
VARIATIONAL_DEPTH = 30
FLOW_SLACK = 1e-10


def step_resolvent(problem, tau, x, tol=STEP_TOL, start=None, path=None):
    """``J^(A+B)_tau(x)`` for the problem's strategy; returns ``(u, residual)``"""
    A, B = problem.A.scaled(tau), problem.B.scaled(tau)
    if problem.strategy == 'variational':
        u, report = variational_sum_resolvent(
            A, B, x, path=path or FilterPath.diagonal(VARIATIONAL_DEPTH), tol=tol, start=start,
        )
        if not report.converged:
            raise ToleranceError(
                f'filter path did not converge: {report.verdict}',
                residual=report.final_difference,
                iterations=len(report.records),
                best=u,
            )
        return u, report.final_difference / (1.0 + float(np.linalg.norm(u)))
    solution = solve_sum(A, B, x, tol=tol, start=start)
    return solution.point, solution.residual


def implicit_euler_solve(problem, steps, tol=None, path=None):
    """
    March ``steps`` implicit Euler steps to the horizon. ``tol`` bounds the
    inner solves (default 1e-10); the variational strategy instead uses
    ``tol / steps`` (default tol 1e-4) as the Cauchy tolerance of each
    filter limit. A failing step raises
    :class:`EvolutionStepError` with the trajectory computed so far.
    """
    if steps < 1:
        raise ConfigurationError(f'steps must be at least 1, got {steps}')
    tau = problem.horizon / steps
    if problem.strategy == 'variational':
        step_tol = (VARIATIONAL_TOL if tol is None else tol) / steps
    else:
        step_tol = STEP_TOL if tol is None else tol
    times = tau * np.arange(steps + 1)
    times[-1] = problem.horizon
    states = np.empty((steps + 1, problem.dimension))
    states[0] = problem.initial
    residuals = np.zeros(steps)

    for i in range(steps):
        rhs = states[i] + tau * problem.forcing(times[i + 1])
        try:
            states[i + 1], residuals[i] = step_resolvent(
                problem, tau, rhs, tol=step_tol, start=states[i], path=path,
            )
        except VarsumError as exc:
            partial = Trajectory(
                times=times[:i + 1],
                states=states[:i + 1].copy(),
                residuals=residuals[:i].copy(),
                step=tau,
                strategy=problem.strategy,
                tolerance=step_tol,
            )
            logger.error('evolution step=%d of %d failed: %s', i + 1, steps, exc)
            raise EvolutionStepError(f'step {i + 1} failed: {exc}', step_index=i + 1, partial=partial) from exc

    logger.debug('evolution strategy=%s steps=%d max_residual=%.3e', problem.strategy, steps, residuals.max())
    return Trajectory(
        times=times,
        states=states,
        residuals=residuals,
        step=tau,
        strategy=problem.strategy,
        tolerance=step_tol,
    )


def flow_nonexpansiveness_check(problem, u0_a, u0_b, steps, tol=None):
    """Two flows from different starts must never move apart"""
    first = implicit_euler_solve(problem.with_initial(u0_a), steps, tol)
    second = implicit_euler_solve(problem.with_initial(u0_b), steps, tol)
    distances = np.linalg.norm(first.states - second.states, axis=1)
    growth = np.diff(distances)
    worst = float(growth.max()) if len(growth) else 0.0
    index = int(np.argmax(growth)) + 1 if len(growth) else 0
    report = DiagnosticReport(
        name='flow_nonexpansiveness',
        samples=steps,
        witness=first.states[index] - second.states[index],
        worst=worst,
        tolerance=FLOW_SLACK,
        details={'distances': distances, 'step': first.step},
    )
    if not report.passed:
        logger.warning('flow distance grew by %.3e at step %d', worst, index)
    return report
