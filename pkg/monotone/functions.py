"""
Convex functions with proximal maps.

Values outside the effective domain are ``math.inf``; nothing uses a large
finite sentinel. Separable functions carry the scalar graph of their
subdifferential and get exact proximal maps from it; quadratic functionals
``1/2 <Mu, u>`` get theirs from conjugate gradients; sums fall back to
splitting when no exact rule applies.
"""
import logging
import math
from abc import ABC, abstractmethod

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import LinearOperator

from core.exceptions import CapabilityError, ConfigurationError
from linalg.matrices import SymSparseMatrix
from linalg.solvers import cg_solve, conjugate_gradient
from monotone import graphs
from monotone.splitting import peaceman_rachford

logger = logging.getLogger(__name__)

PROX_TOL = 1e-12


class ConvexFunctionSpec(ABC):
    name = 'function'
    dimension = None
    domain_description = 'R^n'

    @abstractmethod
    def value(self, x):
        """Function value, ``math.inf`` outside the effective domain"""

    @abstractmethod
    def prox(self, lam, x, tol=PROX_TOL):
        """``argmin_v lam * f(v) + |v - x|^2 / 2``"""

    @abstractmethod
    def to_document(self):
        pass

    @property
    def separable_graph(self):
        return None

    @property
    def smooth(self):
        return False

    @property
    def has_yosida_jacobian(self):
        return self.smooth

    def in_domain(self, x):
        return math.isfinite(self.value(x))

    def gradient(self, x):
        raise CapabilityError(f'{self.name} is not differentiable')

    def hessian(self, x):
        raise CapabilityError(f'{self.name} is not twice differentiable')

    def yosida(self, lam, x, tol=PROX_TOL):
        """Gradient of the Moreau envelope"""
        point = self.prox(lam, x, tol)
        if self.smooth:
            return self.gradient(point)
        return (np.asarray(x, dtype=float) - point) / lam

    def yosida_jacobian(self, lam, x, tol=PROX_TOL):
        if not self.smooth:
            raise CapabilityError(f'no Yosida Jacobian for {self.name}')
        hessian = self.hessian(self.prox(lam, x, tol))
        n = len(x)

        def matvec(v):
            return hessian @ conjugate_gradient(lambda y: y + lam * (hessian @ y), np.ravel(v))

        return LinearOperator((n, n), matvec=matvec, rmatvec=matvec, dtype=float)

    def __add__(self, other):
        return SumFunction(self, other)

    def __repr__(self):
        return f'{type(self).__name__}({self.name})'


class SeparableFunction(ConvexFunctionSpec):
    """``f(x) = sum_i h(x_i)`` with ``dh`` given as a scalar monotone graph"""

    def __init__(self, name, primitive, graph, domain_description='R^n', preset=None):
        self.name = name
        self.primitive = primitive
        self.graph = graph
        self.domain_description = domain_description
        self.preset = preset

    @property
    def separable_graph(self):
        return self.graph

    @property
    def smooth(self):
        a, b = self.graph.domain
        return self.graph.single_valued and math.isinf(a) and math.isinf(b)

    @property
    def has_yosida_jacobian(self):
        return True

    def value(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if not np.all(self.graph.in_domain(x)):
            return math.inf
        return float(np.sum(self.primitive(x)))

    def prox(self, lam, x, tol=PROX_TOL):
        return self.graph.resolve(lam, x, tol).point

    def yosida(self, lam, x, tol=PROX_TOL):
        return self.graph.resolve(lam, x, tol).yosida

    def yosida_jacobian(self, lam, x, tol=PROX_TOL):
        return sparse.diags(self.graph.resolve(lam, x, tol).yosida_slope, format='csr')

    def gradient(self, x):
        if not self.smooth:
            raise CapabilityError(f'{self.name} is not differentiable')
        return self.graph(np.asarray(x, dtype=float))

    def hessian(self, x):
        if not self.smooth:
            raise CapabilityError(f'{self.name} is not twice differentiable')
        return sparse.diags(self.graph.slope(np.asarray(x, dtype=float)), format='csr')

    def to_document(self):
        if self.preset is None:
            raise ConfigurationError(f'{self.name} is not a named preset')
        return {'preset': self.preset}


class QuadraticFunction(ConvexFunctionSpec):
    """``1/2 <Mu, u>`` for a PSD matrix ``M``; its subdifferential is ``M`` itself"""

    def __init__(self, matrix, name='quadratic_form'):
        if not matrix.psd:
            raise ConfigurationError('a quadratic functional needs a PSD matrix')
        self.matrix = matrix
        self.name = name
        self.dimension = matrix.dimension

    @property
    def smooth(self):
        return True

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * float(x @ (self.matrix @ x))

    def prox(self, lam, x, tol=PROX_TOL):
        x = np.asarray(x, dtype=float)
        return cg_solve(self.matrix, 1.0 / lam, x / lam, tol=tol)

    def gradient(self, x):
        return self.matrix @ np.asarray(x, dtype=float)

    def hessian(self, x):
        return self.matrix.csr

    def yosida_jacobian(self, lam, x, tol=PROX_TOL):
        n = self.dimension

        def matvec(v):
            return self.matrix @ cg_solve(self.matrix, 1.0 / lam, np.ravel(v) / lam, tol=tol)

        return LinearOperator((n, n), matvec=matvec, rmatvec=matvec, dtype=float)

    def to_document(self):
        return {'quadratic': {'dimension': self.dimension, 'entries': self.matrix.entries()}}


class SumFunction(ConvexFunctionSpec):
    """
    ``f + g``. The proximal map is exact when both parts are separable (the
    scalar graphs add); otherwise it is computed by splitting.
    """

    def __init__(self, first, second):
        if first.dimension and second.dimension and first.dimension != second.dimension:
            raise ConfigurationError(
                f'cannot add functions of dimension {first.dimension} and {second.dimension}'
            )
        self.first = first
        self.second = second
        self.name = f'{first.name}+{second.name}'
        self.dimension = first.dimension or second.dimension
        self._joined = None
        if first.separable_graph is not None and second.separable_graph is not None:
            self._joined = SeparableFunction(
                self.name,
                lambda x: first.primitive(x) + second.primitive(x),
                first.separable_graph + second.separable_graph,
            )

    @property
    def separable_graph(self):
        return self._joined.graph if self._joined else None

    @property
    def primitive(self):
        if self._joined is None:
            raise CapabilityError(f'{self.name} is not separable')
        return self._joined.primitive

    @property
    def smooth(self):
        return self.first.smooth and self.second.smooth

    @property
    def has_yosida_jacobian(self):
        return self._joined is not None or self.smooth

    def value(self, x):
        first = self.first.value(x)
        if math.isinf(first):
            return math.inf
        second = self.second.value(x)
        return first + second

    def prox(self, lam, x, tol=PROX_TOL):
        if self._joined is not None:
            return self._joined.prox(lam, x, tol)
        result = peaceman_rachford(
            lambda step, z: self.first.prox(step * lam, z, tol),
            lambda step, z: self.second.prox(step * lam, z, tol),
            np.asarray(x, dtype=float),
            tol=tol,
        )
        return result.point

    def yosida(self, lam, x, tol=PROX_TOL):
        if self._joined is not None:
            return self._joined.yosida(lam, x, tol)
        return super().yosida(lam, x, tol)

    def yosida_jacobian(self, lam, x, tol=PROX_TOL):
        if self._joined is not None:
            return self._joined.yosida_jacobian(lam, x, tol)
        return super().yosida_jacobian(lam, x, tol)

    def gradient(self, x):
        return self.first.gradient(x) + self.second.gradient(x)

    def hessian(self, x):
        return sparse.csr_matrix(self.first.hessian(x) + self.second.hessian(x))

    def to_document(self):
        return {'sum': [self.first.to_document(), self.second.to_document()]}


def _indicator(x):
    return np.zeros_like(x)


FUNCTION_PRESETS = {
    'zero': lambda: SeparableFunction('zero', _indicator, graphs.identity_graph(0.0), preset='zero'),
    'abs': lambda: SeparableFunction('abs', np.abs, graphs.sign_graph(), preset='abs'),
    'indicator_nonneg': lambda: SeparableFunction(
        'indicator_nonneg', _indicator, graphs.NormalConeGraph(0.0, math.inf), '[0, inf)^n',
        preset='indicator_nonneg',
    ),
    'indicator_box': lambda: SeparableFunction(
        'indicator_box', _indicator, graphs.NormalConeGraph(-1.0, 1.0), '[-1, 1]^n',
        preset='indicator_box',
    ),
    'power4': lambda: SeparableFunction('power4', lambda x: x ** 4 / 4.0, graphs.cubic_graph(), preset='power4'),
    'half_square': lambda: SeparableFunction(
        'half_square', lambda x: x ** 2 / 2.0, graphs.identity_graph(), preset='half_square',
    ),
}


def convex_preset(name):
    try:
        return FUNCTION_PRESETS[name]()
    except KeyError:
        raise ConfigurationError(
            f'unknown convex function preset {name!r}; choose from {sorted(FUNCTION_PRESETS)}'
        ) from None


def quadratic_functional(matrix):
    if not isinstance(matrix, SymSparseMatrix):
        matrix = SymSparseMatrix.from_dense(matrix)
    return QuadraticFunction(matrix)


def convexity_gap(function, dimension, samples=200, seed=0, spread=3.0):
    """
    Largest ``f(tx + (1-t)y) - t f(x) - (1-t) f(y)`` over random domain
    points; positive values beyond rounding witness non-convexity. Sample
    points are mapped into the domain by the unit proximal step.
    """
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(samples):
        x = function.prox(1.0, rng.uniform(-spread, spread, dimension))
        y = function.prox(1.0, rng.uniform(-spread, spread, dimension))
        t = rng.random()
        gap = function.value(t * x + (1.0 - t) * y) - t * function.value(x) - (1.0 - t) * function.value(y)
        worst = max(worst, gap)
    return worst
