"""
Step-size convergence studies of implicit Euler.
"""
import logging

import numpy as np

from core.exceptions import ConfigurationError
from core.reports import ConvergenceRecord, ConvergenceReport
from evolution.integrators import implicit_euler_solve

logger = logging.getLogger(__name__)

STUDY_TOL = 1e-3
REFERENCE_FACTOR = 4


def step_convergence_study(problem, steps_list, reference_steps=None, tol=STUDY_TOL, exact=None, solve_tol=None):
    """
    Errors at the horizon for each step count against a reference final
    state: ``exact`` when known, otherwise a run with ``reference_steps``
    (at least four times the finest count). The report's rate is the
    observed order, the median of ``log2`` error ratios when counts double.
    """
    steps_list = sorted(int(s) for s in steps_list)
    if not steps_list:
        raise ConfigurationError('a step study needs at least one step count')
    if exact is None:
        reference_steps = reference_steps or REFERENCE_FACTOR * steps_list[-1]
        if reference_steps < REFERENCE_FACTOR * steps_list[-1]:
            raise ConfigurationError(
                f'reference run needs at least {REFERENCE_FACTOR * steps_list[-1]} steps, got {reference_steps}'
            )
        reference = implicit_euler_solve(problem, reference_steps, solve_tol).final
    else:
        reference = np.asarray(exact, dtype=float)

    records = []
    for steps in steps_list:
        final = implicit_euler_solve(problem, steps, solve_tol).final
        error = float(np.linalg.norm(final - reference))
        records.append(ConvergenceRecord(
            parameter=problem.horizon / steps,
            norm=float(np.linalg.norm(final)),
            difference=error,
        ))
        logger.debug('step study steps=%d error=%.3e', steps, error)

    report = ConvergenceReport.from_records(
        f'step_study[{problem.label}]', records, limit=reference, tolerance=tol,
    )
    logger.info('step study label=%s order=%s', problem.label, report.rate)
    return report
