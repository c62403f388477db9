"""
Public entry points for the resolvent calculus of a single operator.
"""
import logging
import math

import numpy as np

from core.reports import DiagnosticReport
from linalg.matrices import mesh_inner
from monotone.specs import RESOLVENT_TOL

logger = logging.getLogger(__name__)

SAMPLE_SLACK = 1e-8


def _check_lambda(lam):
    if not lam > 0:
        raise ValueError(f'lambda must be positive, got {lam}')


def resolvent(spec, lam, w, tol=RESOLVENT_TOL):
    """The unique ``u`` with ``w in u + lam T(u)``"""
    _check_lambda(lam)
    return spec.resolvent(lam, np.asarray(w, dtype=float), tol)


def yosida(spec, lam, w, tol=RESOLVENT_TOL):
    """``T_lam(w) = (w - J_lam(w)) / lam``, evaluated through the most accurate branch available"""
    _check_lambda(lam)
    return spec.yosida(lam, np.asarray(w, dtype=float), tol)


def moreau_envelope(function, lam, x, tol=RESOLVENT_TOL):
    """``min_v f(v) + |x - v|^2 / (2 lam)``; finite even where ``f(x)`` is not"""
    _check_lambda(lam)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    point = function.prox(lam, x, tol)
    value = function.value(point)
    if math.isinf(value):
        # rounding can leave the prox a hair outside a closed domain
        value = function.value(np.clip(point, *_domain_of(function)))
    return value + float(np.sum((x - point) ** 2)) / (2.0 * lam)


def _domain_of(function):
    graph = function.separable_graph
    if graph is None:
        return -math.inf, math.inf
    return graph.domain


def firm_nonexpansiveness_gap(spec, lam, samples=100, seed=0, spread=3.0, weight=1.0):
    """
    Sample ``|Jw1 - Jw2|^2 - <Jw1 - Jw2, w1 - w2>`` over random pairs; the
    resolvent is firmly nonexpansive iff this never exceeds zero.
    """
    _check_lambda(lam)
    rng = np.random.default_rng(seed)
    n = spec.dimension
    worst, witness = -math.inf, None
    for _ in range(samples):
        w1 = rng.uniform(-spread, spread, n)
        w2 = rng.uniform(-spread, spread, n)
        d = spec.resolvent(lam, w1) - spec.resolvent(lam, w2)
        gap = mesh_inner(d, d, weight) - mesh_inner(d, w1 - w2, weight)
        if gap > worst:
            worst, witness = gap, np.concatenate([w1, w2])
    logger.debug('firm nonexpansiveness kind=%s lam=%g worst=%.3e', spec.kind, lam, worst)
    return DiagnosticReport(
        name='firm_nonexpansiveness',
        samples=samples,
        witness=witness,
        worst=float(worst),
        tolerance=SAMPLE_SLACK,
        details={'lambda': lam, 'kind': spec.kind},
    )
