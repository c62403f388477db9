"""
Ready-made evolution problems: reaction-diffusion with a monotone reaction,
and the heat flow of the singular-potential form sum.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from catalog.grids import build_laplacian
from catalog.potentials import build_form_sum
from catalog.reactions import make_reaction_graph
from core.exceptions import CapabilityError, ConfigurationError
from evolution.problems import EvolutionProblem, Forcing
from linalg.solvers import Residual, guarded_newton
from monotone.specs import LinearSpec, SeparableSpec
from sums.resolvents import solve_sum

logger = logging.getLogger(__name__)

STATIONARY_TOL = 1e-11
BUMP_WIDTH = 0.1
FORCING_PRESETS = ('zero', 'constant', 'bump')


def forcing_profile(name, grid, value=1.0, center=0.5, width=BUMP_WIDTH):
    """A spatial profile on the grid nodes"""
    if name == 'zero':
        return np.zeros(grid.unknowns)
    if name == 'constant':
        return np.full(grid.unknowns, float(value))
    if name == 'bump':
        offset = grid.nodes - np.resize(np.atleast_1d(np.asarray(center, dtype=float)), grid.dimension)
        return float(value) * np.exp(-np.sum(offset ** 2, axis=1) / (2.0 * width ** 2))
    raise ConfigurationError(f'unknown forcing preset {name!r}; choose from {FORCING_PRESETS}')


def make_forcing(preset, grid):
    """A time-constant forcing from a preset name or ``{"preset": ..., **params}``"""
    if isinstance(preset, str):
        preset = {'preset': preset}
    params = dict(preset)
    name = params.pop('preset', None)
    if name is None:
        raise ConfigurationError('forcing document needs a "preset" key')
    return Forcing.constant(forcing_profile(name, grid, **params), grid.unknowns, label=name)


def reaction_diffusion_problem(grid, reaction, forcing, horizon, strategy='algebraic'):
    """``u' - Delta u + F(u) ∋ f`` with zero initial and boundary data"""
    graph = make_reaction_graph(reaction) if isinstance(reaction, str) else reaction
    return EvolutionProblem(
        A=LinearSpec(build_laplacian(grid)),
        B=SeparableSpec(graph, grid.unknowns),
        forcing=make_forcing(forcing, grid) if not isinstance(forcing, Forcing) else forcing,
        horizon=float(horizon),
        strategy=strategy,
        label=f'reaction_diffusion[{graph.name}]',
        weight=grid.weight,
        metadata={'grid': grid.to_dict(), 'reaction': graph.name},
    )


def form_sum_problem(grid, potential, forcing, horizon):
    """``u' - Delta u + Q u = f`` through the form-sum operator"""
    operator = build_form_sum(grid, potential)
    return EvolutionProblem(
        A=operator,
        B=LinearSpec.zero(grid.unknowns),
        forcing=make_forcing(forcing, grid) if not isinstance(forcing, Forcing) else forcing,
        horizon=float(horizon),
        strategy='form_sum',
        label='form_sum',
        weight=grid.weight,
        metadata={'grid': grid.to_dict(), 'potential': potential.to_dict()},
    )


@dataclass(frozen=True)
class StationarySolution:
    state: np.ndarray
    residual: float
    mu: float


def solve_stationary(grid, reaction, profile, mu=0.0, tol=STATIONARY_TOL):
    """
    Solve ``mu u - Delta u + F(u) = f``. Smooth reactions go through Newton's
    method on the equation itself; multivalued ones need ``mu > 0`` and the
    sum solver.
    """
    if mu < 0:
        raise ValueError('mu must be nonnegative')
    graph = make_reaction_graph(reaction) if isinstance(reaction, str) else reaction
    laplacian = build_laplacian(grid)
    spec = SeparableSpec(graph, grid.unknowns)
    f = np.asarray(profile, dtype=float)

    if spec.smooth:
        csr = laplacian.csr
        shift = mu * sparse.identity(grid.unknowns, format='csr')
        residual = Residual(
            value=lambda u: mu * u + csr @ u + spec.apply(u) - f,
            jacobian=lambda u: shift + csr + spec.jacobian(u),
        )
        state = guarded_newton(residual, np.zeros_like(f), tol=tol * (1.0 + float(np.linalg.norm(f))))
        norm = float(np.linalg.norm(residual(state)))
    elif mu > 0:
        solution = solve_sum(LinearSpec(laplacian).scaled(1.0 / mu), spec.scaled(1.0 / mu), f / mu, tol=tol)
        state, norm = solution.point, solution.residual * mu * (1.0 + float(np.linalg.norm(f / mu)))
    else:
        raise CapabilityError(f'{graph.name} is multivalued; the stationary solve needs mu > 0')
    logger.info('stationary reaction=%s mu=%g residual=%.3e', graph.name, mu, norm)
    return StationarySolution(state=state, residual=norm, mu=mu)
