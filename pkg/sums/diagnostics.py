"""
Sampled diagnostics for a pair of monotone operators: commuting resolvents,
the acute-angle condition ``<A_lam u, B_mu u> >= 0`` and boundedness of
``B_mu u_mu`` along a single-parameter path.
"""
import logging
import math

import numpy as np

from core.exceptions import CapabilityError, ConfigurationError
from core.reports import DiagnosticReport
from linalg.matrices import mesh_inner
from sums.filters import FilterPath
from sums.resolvents import INNER_TOL, regularized_resolvent

logger = logging.getLogger(__name__)

DIAGNOSTIC_SEED = 0
COMMUTATION_TOL = 1e-9
ACUTE_ANGLE_TOL = -1e-10
GROWTH_SLOPE_TOL = 0.05
GROWTH_WINDOW = 5
DEFAULT_LAMBDAS = (1.0, 0.1, 0.01)


def _draw(rng, n, spread):
    return rng.uniform(-spread, spread, n)


def check_resolvent_commutation(A, B, lambdas=DEFAULT_LAMBDAS, mus=DEFAULT_LAMBDAS, samples=20,
                                tol=COMMUTATION_TOL, seed=DIAGNOSTIC_SEED, spread=1.0):
    """
    Worst ``|J^A J^B w - J^B J^A w| / |w|`` over parameter pairs and random
    ``w``. Both operators must be linear.
    """
    for name, spec in (('A', A), ('B', B)):
        if not spec.linear:
            raise CapabilityError(f'commutation is only defined here for linear operators; {name} is {spec.kind}')
    rng = np.random.default_rng(seed)
    worst, witness, where = -math.inf, None, None
    for lam in lambdas:
        for mu in mus:
            for _ in range(samples):
                w = _draw(rng, A.dimension, spread)
                ab = A.resolvent(lam, B.resolvent(mu, w))
                ba = B.resolvent(mu, A.resolvent(lam, w))
                value = float(np.linalg.norm(ab - ba)) / max(float(np.linalg.norm(w)), 1e-300)
                if value > worst:
                    worst, witness, where = value, w, (lam, mu)
    report = DiagnosticReport(
        name='commutation',
        samples=samples * len(lambdas) * len(mus),
        witness=witness,
        worst=worst,
        tolerance=tol,
        details={'lambda': where[0], 'mu': where[1]},
    )
    _log(report)
    return report


def check_acute_angle(A, B, lambdas=DEFAULT_LAMBDAS, mus=DEFAULT_LAMBDAS, samples=200,
                      seed=DIAGNOSTIC_SEED, spread=3.0, weight=1.0, tolerance=ACUTE_ANGLE_TOL):
    """Smallest sampled ``<A_lam u, B_mu u>``; passes when it is at least ``-1e-10``"""
    if not A.selfadjoint:
        raise CapabilityError(f'the acute-angle condition needs a selfadjoint first operator; A is {A.kind}')
    rng = np.random.default_rng(seed)
    worst, witness, where = math.inf, None, None
    for _ in range(samples):
        u = _draw(rng, A.dimension, spread)
        second = [B.yosida(mu, u) for mu in mus]
        for lam in lambdas:
            a = A.yosida(lam, u)
            for mu, b in zip(mus, second):
                value = mesh_inner(a, b, weight)
                if value < worst:
                    worst, witness, where = value, u, (lam, mu)
    report = DiagnosticReport(
        name='acute_angle',
        samples=samples * len(lambdas) * len(mus),
        witness=witness,
        worst=worst,
        tolerance=tolerance,
        comparison='>=',
        details={'lambda': where[0], 'mu': where[1]},
    )
    _log(report)
    return report


def boundedness_diagnostic(A, B, w, path=None, tol=INNER_TOL, window=GROWTH_WINDOW):
    """
    Solve ``u_mu + A u_mu + B_mu u_mu = w`` along the ``mu`` values of
    ``path`` and judge whether ``|B_mu u_mu|`` stays bounded: the slope of
    ``log |B_mu u_mu|`` against ``log(1/mu)`` over the last points must not
    exceed 0.05.
    """
    path = path or FilterPath.second_only()
    mus = [mu for _, mu in path if mu > 0]
    if len(mus) < 2:
        raise ConfigurationError(
            f'path {path.label!r} has {len(mus)} positive mu values; boundedness needs at least two'
        )
    norms, previous = [], None
    for mu in mus:
        u = regularized_resolvent(A, B, 0.0, mu, w, tol=tol, start=previous)
        norms.append(float(np.linalg.norm(B.yosida(mu, u))))
        previous = u

    tail_mu = np.array(mus[-window:])
    tail = np.array(norms[-window:])
    positive = tail > 0.0
    if positive.sum() < 2:
        slope = 0.0
    else:
        slope = float(np.polyfit(np.log(1.0 / tail_mu[positive]), np.log(tail[positive]), 1)[0])
    report = DiagnosticReport(
        name='boundedness',
        samples=len(mus),
        witness=previous,
        worst=slope,
        tolerance=GROWTH_SLOPE_TOL,
        details={'mu': mus, 'norms': norms, 'max_norm': max(norms) if norms else 0.0},
    )
    _log(report)
    return report


def _log(report):
    if report.passed:
        logger.info('diagnostic=%s passed worst=%.3e', report.name, report.worst)
    else:
        logger.warning('diagnostic=%s failed worst=%.3e tolerance=%.1e', report.name, report.worst, report.tolerance)
