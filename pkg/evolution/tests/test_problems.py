import numpy as np
import pytest

from catalog.grids import GridSpec
from catalog.potentials import PotentialSpec, build_form_sum
from catalog.problems import form_sum_problem, forcing_profile
from core.exceptions import ConfigurationError
from evolution.dumps import trajectory_csv, trajectory_metadata
from evolution.integrators import implicit_euler_solve
from evolution.problems import EvolutionProblem, Forcing, trajectory_inner, trajectory_norm
from linalg.solvers import dense_eigs
from monotone.specs import LinearSpec


def test_forcing_table_is_piecewise_constant_on_cells():
    forcing = Forcing.table([0.0, 0.5, 1.0], [[1.0], [2.0], [3.0]])
    assert forcing(0.0)[0] == 1.0
    assert forcing(0.25)[0] == 2.0
    assert forcing(0.5)[0] == 2.0
    assert forcing(0.75)[0] == 3.0
    assert forcing.covers(1.0)
    assert not forcing.covers(2.0)


def test_forcing_table_validation():
    with pytest.raises(ConfigurationError):
        Forcing.table([0.0, 0.0], [[1.0], [2.0]])
    with pytest.raises(ConfigurationError):
        Forcing(2, times=[0.0], values=[[1.0, 2.0, 3.0]])


def test_function_forcing():
    forcing = Forcing(2, function=lambda t: [t, 2 * t], label='ramp')
    assert np.allclose(forcing(0.5), [0.5, 1.0])
    assert forcing.to_dict() == {'label': 'ramp'}


def test_problem_validation():
    identity = LinearSpec.identity(2)
    with pytest.raises(ConfigurationError):
        EvolutionProblem(identity, LinearSpec.zero(2), Forcing.zero(2), horizon=0.0)
    with pytest.raises(ConfigurationError):
        EvolutionProblem(identity, LinearSpec.zero(3), Forcing.zero(2), horizon=1.0)
    with pytest.raises(ConfigurationError):
        EvolutionProblem(identity, LinearSpec.zero(2), Forcing.zero(2), horizon=1.0, strategy='explicit')
    with pytest.raises(ConfigurationError):
        EvolutionProblem(identity, identity, Forcing.zero(2), horizon=1.0, strategy='form_sum')
    with pytest.raises(ConfigurationError):
        EvolutionProblem(identity, LinearSpec.zero(2), Forcing.zero(2), horizon=1.0, initial=[1.0])
    with pytest.raises(ConfigurationError):
        EvolutionProblem(identity, LinearSpec.zero(2), Forcing.table([0.0, 0.5], [[0, 0], [1, 1]]), horizon=1.0)


def test_form_sum_heat_flow_from_rest_stays_at_rest():
    problem = form_sum_problem(GridSpec(1, 16), PotentialSpec(), 'zero', 0.1)
    trajectory = implicit_euler_solve(problem, 4)
    assert np.all(trajectory.states == 0.0)


def test_form_sum_heat_flow_decays():
    problem = form_sum_problem(GridSpec(1, 16), PotentialSpec(), 'zero', 0.5).with_initial(np.ones(16))
    trajectory = implicit_euler_solve(problem, 10)
    norms = np.linalg.norm(trajectory.states, axis=1)
    assert np.all(np.diff(norms) < 0)


def test_trajectory_inner_and_norm():
    problem = EvolutionProblem(LinearSpec.identity(2), LinearSpec.zero(2), Forcing.constant(1.0, 2), horizon=1.0)
    trajectory = implicit_euler_solve(problem, 4)
    expected = sum(0.25 * float(state @ state) for state in trajectory.states[1:])
    assert trajectory_inner(trajectory, trajectory) == pytest.approx(expected)
    assert trajectory_norm(trajectory, weight=4.0) == pytest.approx(np.sqrt(4.0 * expected))
    with pytest.raises(ValueError):
        trajectory_inner(trajectory, implicit_euler_solve(problem, 8))


def test_trajectory_dumps():
    problem = EvolutionProblem(LinearSpec.identity(3), LinearSpec.zero(3), Forcing.zero(3), horizon=1.0)
    trajectory = implicit_euler_solve(problem, 2)
    lines = trajectory_csv(trajectory).splitlines()
    assert lines[0] == 't,u_1,u_2,u_3'
    assert len(lines) == 3
    metadata = trajectory_metadata(trajectory, problem)
    assert metadata['steps'] == 2
    assert metadata['tau'] == 0.5
    assert metadata['problem']['strategy'] == 'algebraic'


def test_form_sum_heat_flow_matches_the_eigen_expansion():
    grid, potential = GridSpec(1, 16), PotentialSpec()
    initial = np.random.default_rng(0).uniform(-1.0, 1.0, grid.unknowns)
    problem = form_sum_problem(grid, potential, {'preset': 'constant', 'value': 1.0}, 0.5).with_initial(initial)
    steps = 20
    trajectory = implicit_euler_solve(problem, steps)

    tau = problem.horizon / steps
    g = forcing_profile('constant', grid, value=1.0)
    pairs = dense_eigs(build_form_sum(grid, potential).matrix)
    coefficients = np.array([pair.vector @ initial for pair in pairs])
    forcing = np.array([pair.vector @ g for pair in pairs])
    values = np.array([pair.value for pair in pairs])
    for _ in range(steps):
        coefficients = (coefficients + tau * forcing) / (1.0 + tau * values)
    expected = sum(c * pair.vector for c, pair in zip(coefficients, pairs))
    assert np.allclose(trajectory.final, expected, atol=1e-8)
