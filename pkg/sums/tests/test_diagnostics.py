import numpy as np
import pytest

from catalog.grids import GridSpec, build_laplacian
from catalog.reactions import make_reaction_graph
from core.exceptions import CapabilityError, ConfigurationError
from linalg.matrices import SymSparseMatrix
from monotone.functions import convex_preset
from monotone.specs import LinearSpec, NonsymmetricLinear, SeparableSpec, SubdifferentialSpec
from sums.diagnostics import (
    GROWTH_SLOPE_TOL,
    boundedness_diagnostic,
    check_acute_angle,
    check_resolvent_commutation,
)
from sums.filters import FilterPath


@pytest.fixture
def laplacian():
    return build_laplacian(GridSpec(1, 32))


def test_cospectral_pair_commutes(laplacian):
    shifted = laplacian + SymSparseMatrix.identity(32)
    report = check_resolvent_commutation(LinearSpec(laplacian), LinearSpec(shifted + laplacian))
    assert report.passed
    assert report.worst <= 1e-9


def test_generic_diagonal_does_not_commute(laplacian):
    diagonal = SymSparseMatrix.diagonal(np.linspace(0.0, 5.0, 32))
    first = check_resolvent_commutation(LinearSpec(laplacian), LinearSpec(diagonal))
    second = check_resolvent_commutation(LinearSpec(laplacian), LinearSpec(diagonal))
    assert not first.passed
    assert np.array_equal(first.witness, second.witness)
    assert first.worst == second.worst
    assert set(first.details) == {'lambda', 'mu'}


def test_commutation_needs_linear_operators(laplacian):
    with pytest.raises(CapabilityError):
        check_resolvent_commutation(LinearSpec(laplacian), SeparableSpec(make_reaction_graph('cubic'), 32))


@pytest.mark.parametrize('reaction', ['cubic', 'sign-graph', 'saturating'])
def test_laplacian_and_reaction_are_acute(laplacian, reaction):
    report = check_acute_angle(LinearSpec(laplacian), SeparableSpec(make_reaction_graph(reaction), 32))
    assert report.passed
    assert report.comparison == '>='


def test_rotation_breaks_the_acute_angle():
    A = LinearSpec(SymSparseMatrix.diagonal([1.0, 0.0]))
    B = NonsymmetricLinear(SymSparseMatrix.zeros(2), [[0.0, 1.0], [-1.0, 0.0]])
    report = check_acute_angle(A, B, samples=50)
    assert not report.passed
    assert report.worst < 0
    assert report.witness.shape == (2,)


def test_acute_angle_is_reproducible():
    A = SubdifferentialSpec(convex_preset('abs'), 3)
    B = SubdifferentialSpec(convex_preset('half_square'), 3)
    first = check_acute_angle(A, B, samples=30, seed=7)
    second = check_acute_angle(A, B, samples=30, seed=7)
    assert first.to_dict()['worst'] == second.to_dict()['worst']
    assert np.array_equal(first.witness, second.witness)


def test_bounded_reaction_passes_boundedness(laplacian):
    w = np.linspace(-2.0, 2.0, 32)
    report = boundedness_diagnostic(LinearSpec(laplacian), SeparableSpec(make_reaction_graph('cubic'), 32), w)
    assert report.passed
    assert report.worst <= GROWTH_SLOPE_TOL
    assert len(report.details['norms']) == len(FilterPath.second_only())


def test_constraint_with_shared_domain_is_bounded():
    A = SubdifferentialSpec(convex_preset('half_square'), 2)
    B = SubdifferentialSpec(convex_preset('indicator_nonneg'), 2)
    report = boundedness_diagnostic(A, B, np.array([-1.0, 2.0]))
    assert report.passed
    # B_mu u_mu tends to the normal-cone element w - 2u = (-1, 0)
    assert report.details['norms'][-1] == pytest.approx(1.0, abs=1e-4)


def test_normal_cone_alone_is_bounded():
    A = LinearSpec.zero(1)
    B = SeparableSpec(make_reaction_graph('normal-cone-nonneg'), 1)
    report = boundedness_diagnostic(A, B, np.array([-1.0]))
    assert report.passed
    # u_mu = -mu / (1 + mu) and B_mu u_mu = -1 / (1 + mu)
    mus = np.array(report.details['mu'])
    assert np.allclose(report.details['norms'], 1.0 / (1.0 + mus), atol=1e-9)


def test_boundedness_needs_positive_mu_values():
    A, B = LinearSpec.identity(2), LinearSpec.identity(2)
    with pytest.raises(ConfigurationError):
        boundedness_diagnostic(A, B, np.ones(2), path=FilterPath.first_only())


def test_acute_angle_needs_a_selfadjoint_first_operator():
    rotation = NonsymmetricLinear(SymSparseMatrix.zeros(2), [[0.0, 1.0], [-1.0, 0.0]])
    with pytest.raises(CapabilityError):
        check_acute_angle(rotation, LinearSpec.identity(2))


def test_laplacian_and_random_potential_do_not_commute():
    laplacian = build_laplacian(GridSpec(1, 16))
    q = np.random.default_rng(0).uniform(0.5, 2.0, 16)
    report = check_resolvent_commutation(LinearSpec(laplacian), LinearSpec(SymSparseMatrix.diagonal(q)))
    assert not report.passed
    assert report.worst > 1e-9
    assert report.witness.shape == (16,)
