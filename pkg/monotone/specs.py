"""
Declarative descriptions of maximal monotone operators.

Every spec evaluates its resolvent ``J_lam = (I + lam T)^-1`` and its Yosida
approximation ``T_lam = (I - J_lam) / lam`` for any ``lam > 0``. Specs with a
single-valued differentiable action (``smooth``) also expose ``apply`` and
``jacobian``; specs whose Yosida approximation has a symmetric generalized
Jacobian expose ``yosida_jacobian`` so regularized equations can be solved by
Newton's method.
"""
import logging
from abc import ABC, abstractmethod

import numpy as np
import scipy.linalg
from scipy import sparse
from scipy.sparse.linalg import LinearOperator

from core.exceptions import CapabilityError, ConfigurationError, MonotonicityViolation
from linalg.matrices import PSD_SLACK, SymSparseMatrix
from linalg.solvers import CG_TOL, cg_solve
from monotone.functions import PROX_TOL, QuadraticFunction

logger = logging.getLogger(__name__)

RESOLVENT_TOL = 1e-12


def _linear_yosida_operator(matrix, lam, tol):
    """``M (I + lam M)^-1`` as a matrix-free symmetric operator"""
    n = matrix.dimension

    def matvec(v):
        return matrix @ cg_solve(matrix, 1.0 / lam, np.ravel(v) / lam, tol=tol)

    return LinearOperator((n, n), matvec=matvec, rmatvec=matvec, dtype=float)


class OperatorSpec(ABC):
    kind = 'operator'
    dimension = None
    selfadjoint = False
    linear = False

    @property
    def smooth(self):
        return False

    @property
    def has_yosida_jacobian(self):
        return False

    @abstractmethod
    def resolvent(self, lam, w, tol=RESOLVENT_TOL):
        pass

    def yosida(self, lam, w, tol=RESOLVENT_TOL):
        w = np.asarray(w, dtype=float)
        return (w - self.resolvent(lam, w, tol)) / lam

    def yosida_jacobian(self, lam, w, tol=RESOLVENT_TOL):
        raise CapabilityError(f'{self.kind} spec has no Yosida Jacobian')

    def apply(self, u):
        raise CapabilityError(f'{self.kind} spec has no single-valued action')

    def jacobian(self, u):
        raise CapabilityError(f'{self.kind} spec has no Jacobian')

    def regularized(self, mu):
        """The Yosida approximation ``T_mu`` as a spec of its own"""
        return YosidaRegularized(self, mu)

    def scaled(self, factor):
        return Scaled(self, factor)

    def check_dimension(self, w):
        w = np.asarray(w, dtype=float)
        if self.dimension is not None and w.shape != (self.dimension,):
            raise ValueError(f'vector has shape {w.shape}, operator dimension is {self.dimension}')
        return w

    def to_document(self):
        raise ConfigurationError(f'{self.kind} spec cannot be written as a document')


class LinearSpec(OperatorSpec):
    """A symmetric PSD matrix"""
    kind = 'linear'
    selfadjoint = True
    linear = True

    def __init__(self, matrix):
        if not matrix.psd:
            raise MonotonicityViolation('a linear monotone operator needs a PSD matrix')
        self.matrix = matrix
        self.dimension = matrix.dimension

    @classmethod
    def zero(cls, dimension):
        return cls(SymSparseMatrix.zeros(dimension))

    @classmethod
    def identity(cls, dimension, scale=1.0):
        return cls(SymSparseMatrix.identity(dimension, scale))

    @property
    def smooth(self):
        return True

    @property
    def has_yosida_jacobian(self):
        return True

    @property
    def is_zero(self):
        return self.matrix.csr.nnz == 0 or self.matrix.max_abs == 0.0

    def resolvent(self, lam, w, tol=RESOLVENT_TOL):
        w = self.check_dimension(w)
        if self.is_zero:
            return w.copy()
        return cg_solve(self.matrix, 1.0 / lam, w / lam, tol=min(tol, CG_TOL))

    def yosida(self, lam, w, tol=RESOLVENT_TOL):
        return self.matrix @ self.resolvent(lam, w, tol)

    def yosida_jacobian(self, lam, w, tol=RESOLVENT_TOL):
        return _linear_yosida_operator(self.matrix, lam, min(tol, CG_TOL))

    def apply(self, u):
        return self.matrix @ np.asarray(u, dtype=float)

    def jacobian(self, u):
        return self.matrix.csr

    def to_document(self):
        return {'kind': 'linear', 'dimension': self.dimension, 'entries': self.matrix.entries()}

    def __repr__(self):
        return f'LinearSpec({self.matrix!r})'


class SeparableSpec(OperatorSpec):
    """A scalar monotone graph applied to every coordinate"""
    kind = 'separable'
    selfadjoint = True

    def __init__(self, graph, dimension):
        if dimension < 1:
            raise ConfigurationError('dimension must be positive')
        self.graph = graph
        self.dimension = int(dimension)

    @property
    def smooth(self):
        a, b = self.graph.domain
        return self.graph.single_valued and np.isinf(a) and np.isinf(b)

    @property
    def has_yosida_jacobian(self):
        return True

    def resolution(self, lam, w, tol=RESOLVENT_TOL):
        return self.graph.resolve(lam, self.check_dimension(w), tol)

    def resolvent(self, lam, w, tol=RESOLVENT_TOL):
        return self.resolution(lam, w, tol).point

    def yosida(self, lam, w, tol=RESOLVENT_TOL):
        return self.resolution(lam, w, tol).yosida

    def yosida_jacobian(self, lam, w, tol=RESOLVENT_TOL):
        return sparse.diags(self.resolution(lam, w, tol).yosida_slope, format='csr')

    def apply(self, u):
        if not self.smooth:
            raise CapabilityError(f'{self.graph.name} is not single-valued everywhere')
        return self.graph(np.asarray(u, dtype=float))

    def jacobian(self, u):
        if not self.smooth:
            raise CapabilityError(f'{self.graph.name} is not differentiable everywhere')
        return sparse.diags(self.graph.slope(np.asarray(u, dtype=float)), format='csr')

    def to_document(self):
        from catalog.documents import graph_document
        return {'kind': 'separable', 'dimension': self.dimension, 'graph': graph_document(self.graph)}

    def __repr__(self):
        return f'SeparableSpec({self.graph.name}, dimension={self.dimension})'


class SubdifferentialSpec(OperatorSpec):
    """``df`` for a convex function; the resolvent is the proximal map"""
    kind = 'subdifferential'
    selfadjoint = True

    def __init__(self, function, dimension=None):
        self.function = function
        self.dimension = function.dimension or dimension
        if self.dimension is None:
            raise ConfigurationError(f'{function.name} needs an explicit dimension')
        self.linear = isinstance(function, QuadraticFunction)

    @property
    def smooth(self):
        return self.function.smooth

    @property
    def has_yosida_jacobian(self):
        return self.function.has_yosida_jacobian

    def resolvent(self, lam, w, tol=RESOLVENT_TOL):
        return self.function.prox(lam, self.check_dimension(w), min(tol, PROX_TOL))

    def yosida(self, lam, w, tol=RESOLVENT_TOL):
        return self.function.yosida(lam, self.check_dimension(w), min(tol, PROX_TOL))

    def yosida_jacobian(self, lam, w, tol=RESOLVENT_TOL):
        return self.function.yosida_jacobian(lam, self.check_dimension(w), min(tol, PROX_TOL))

    def apply(self, u):
        return self.function.gradient(u)

    def jacobian(self, u):
        return self.function.hessian(u)

    def to_document(self):
        return {'kind': 'subdifferential', 'dimension': self.dimension, 'function': self.function.to_document()}

    def __repr__(self):
        return f'SubdifferentialSpec({self.function.name}, dimension={self.dimension})'


class FormSumSchrodinger(LinearSpec):
    """
    The operator of the form ``<grad u, grad v> + <Q u, v>``: on the grid its
    action is ``L + diag(Q)`` for a Dirichlet Laplacian ``L`` and a positive
    potential ``Q``.
    """
    kind = 'form_sum'

    def __init__(self, laplacian, potential):
        potential = np.asarray(potential, dtype=float)
        if potential.shape != (laplacian.dimension,):
            raise ConfigurationError(
                f'potential has shape {potential.shape}, Laplacian dimension is {laplacian.dimension}'
            )
        if np.any(potential < 0):
            raise MonotonicityViolation('form-sum potential must be nonnegative')
        self.laplacian = laplacian
        self.potential = potential
        super().__init__(laplacian + sparse.diags(potential))

    def quadratic_form(self, u, weight=1.0):
        u = np.asarray(u, dtype=float)
        return weight * float(u @ (self.matrix @ u))

    def to_document(self):
        return {
            'kind': 'form_sum',
            'dimension': self.dimension,
            'laplacian': self.laplacian.entries(),
            'potential': self.potential,
        }


class YosidaRegularized(OperatorSpec):
    """
    ``T_mu`` as an operator. Its resolvent has the closed form
    ``mu/(mu+g) I + g/(mu+g) J_(mu+g)`` and its own Yosida approximation is
    ``T_(mu+g)``.
    """
    kind = 'yosida'

    def __init__(self, base, mu):
        if mu <= 0:
            raise ValueError('mu must be positive')
        self.base = base
        self.mu = float(mu)
        self.dimension = base.dimension
        self.selfadjoint = base.selfadjoint
        self.linear = base.linear

    @property
    def smooth(self):
        return self.base.has_yosida_jacobian

    @property
    def has_yosida_jacobian(self):
        return self.base.has_yosida_jacobian

    def resolvent(self, lam, w, tol=RESOLVENT_TOL):
        w = self.check_dimension(w)
        total = self.mu + lam
        return (self.mu / total) * w + (lam / total) * self.base.resolvent(total, w, tol)

    def yosida(self, lam, w, tol=RESOLVENT_TOL):
        return self.base.yosida(self.mu + lam, w, tol)

    def yosida_jacobian(self, lam, w, tol=RESOLVENT_TOL):
        return self.base.yosida_jacobian(self.mu + lam, w, tol)

    def apply(self, u):
        return self.base.yosida(self.mu, u)

    def jacobian(self, u):
        return self.base.yosida_jacobian(self.mu, u)

    def __repr__(self):
        return f'YosidaRegularized({self.base!r}, mu={self.mu})'


class Scaled(OperatorSpec):
    """``c T`` for ``c >= 0``; ``J^(cT)_lam = J^T_(c lam)``"""
    kind = 'scaled'

    def __init__(self, base, factor):
        if factor <= 0:
            raise ValueError('scale factor must be positive')
        self.base = base
        self.factor = float(factor)
        self.dimension = base.dimension
        self.selfadjoint = base.selfadjoint
        self.linear = base.linear

    @property
    def smooth(self):
        return self.base.smooth

    @property
    def has_yosida_jacobian(self):
        return self.base.has_yosida_jacobian

    def resolvent(self, lam, w, tol=RESOLVENT_TOL):
        return self.base.resolvent(self.factor * lam, w, tol)

    def yosida(self, lam, w, tol=RESOLVENT_TOL):
        return self.factor * self.base.yosida(self.factor * lam, w, tol)

    def yosida_jacobian(self, lam, w, tol=RESOLVENT_TOL):
        return self.factor * self.base.yosida_jacobian(self.factor * lam, w, tol)

    def apply(self, u):
        return self.factor * self.base.apply(u)

    def jacobian(self, u):
        return self.factor * self.base.jacobian(u)


class NonsymmetricLinear(OperatorSpec):
    """
    ``S + K`` with ``S`` symmetric PSD and ``K`` antisymmetric: monotone but
    not selfadjoint. Only used as the second operator of diagnostics.
    """
    kind = 'nonsymmetric_linear'
    linear = True

    def __init__(self, symmetric, skew):
        skew = np.atleast_2d(np.asarray(skew, dtype=float))
        if skew.shape != (symmetric.dimension, symmetric.dimension):
            raise ConfigurationError('skew part must match the symmetric part')
        if not np.allclose(skew, -skew.T, rtol=0.0, atol=PSD_SLACK):
            raise ConfigurationError('skew part must be antisymmetric')
        self.symmetric = symmetric
        self.skew = skew
        self.dimension = symmetric.dimension
        self.dense = symmetric.toarray() + skew

    def resolvent(self, lam, w, tol=RESOLVENT_TOL):
        w = self.check_dimension(w)
        return scipy.linalg.solve(np.eye(self.dimension) + lam * self.dense, w)

    def yosida(self, lam, w, tol=RESOLVENT_TOL):
        return self.dense @ self.resolvent(lam, w, tol)

    def apply(self, u):
        return self.dense @ np.asarray(u, dtype=float)

    def to_document(self):
        return {
            'kind': 'nonsymmetric_linear',
            'dimension': self.dimension,
            'entries': self.symmetric.entries(),
            'skew': self.skew,
        }
