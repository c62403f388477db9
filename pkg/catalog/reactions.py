"""
Monotone reaction terms ``F`` with ``F(0) ∋ 0`` addressable by name.
"""
import logging
import math

import numpy as np

from core.exceptions import ConfigurationError
from core.reports import DiagnosticReport
from linalg.matrices import mesh_inner
from monotone import graphs

logger = logging.getLogger(__name__)

INEQUALITY_SLACK = -1e-12


def _saturating():
    def value(u):
        return np.where(np.abs(u) <= 1.0, u - u ** 3 / 3.0, np.sign(u) * 2.0 / 3.0)

    def slope(u):
        return np.where(np.abs(u) <= 1.0, 1.0 - u ** 2, 0.0)

    return graphs.SmoothGraph('saturating', value, slope)


REACTION_PRESETS = {
    'cubic': graphs.cubic_graph,
    'linear-ramp': lambda: graphs.PiecewiseLinearGraph('linear-ramp', [(0.0, 0.0, 0.0)], 0.0, 1.0),
    'saturating': _saturating,
    'sign-graph': graphs.sign_graph,
    'normal-cone-nonneg': lambda: graphs.NormalConeGraph(0.0, math.inf, name='normal-cone-nonneg'),
}


def make_reaction_graph(name):
    try:
        graph = REACTION_PRESETS[name]()
    except KeyError:
        raise ConfigurationError(
            f'unknown reaction preset {name!r}; choose from {sorted(REACTION_PRESETS)}'
        ) from None
    if not graph.normalized:
        raise ConfigurationError(f'reaction {name!r} does not contain 0 at 0')
    return graph


def reaction_inequality_check(laplacian, graph, lambdas=(1.0, 0.1, 0.01), samples=1000, seed=0,
                              spread=3.0, weight=1.0):
    """
    Smallest sampled ``<L u, F_lam(u)>`` for a Dirichlet Laplacian ``L`` and
    the Yosida approximation of a normalized reaction; summation by parts
    makes it nonnegative.
    """
    rng = np.random.default_rng(seed)
    worst, witness = math.inf, None
    for _ in range(samples):
        u = rng.uniform(-spread, spread, laplacian.dimension)
        lu = laplacian @ u
        for lam in lambdas:
            value = mesh_inner(lu, graph.resolve(lam, u).yosida, weight)
            if value < worst:
                worst, witness = value, u
    report = DiagnosticReport(
        name='reaction_inequality',
        samples=samples * len(lambdas),
        witness=witness,
        worst=worst,
        tolerance=INEQUALITY_SLACK,
        comparison='>=',
        details={'reaction': graph.name},
    )
    if not report.passed:
        logger.warning('reaction=%s inequality failed worst=%.3e', graph.name, worst)
    return report
