"""
Core Exceptions - error hierarchy shared by every app
"""


class VarsumError(Exception):
    """Base class for operational errors raised by the library"""


class CapabilityError(VarsumError):
    """The operation is not supported for the given input"""


class ConfigurationError(VarsumError):
    """Unknown preset, malformed document or inconsistent parameters"""


class DomainError(VarsumError):
    """A point lies outside the domain of a graph or function"""


class GraphDomainError(DomainError):
    """The scalar root-finder could not bracket a resolvent"""


class SymmetryError(VarsumError):
    """Coordinate entries contradict symmetric closure"""


class MonotonicityViolation(VarsumError):
    """A Jacobian or curvature that should be positive was not"""


class ConvergenceError(VarsumError):
    """An iteration stopped without meeting its tolerance"""

    def __init__(self, message, residual=None, iterations=None, best=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
        self.best = best


class IterationLimitError(ConvergenceError):
    """Conjugate gradients hit the iteration cap"""


class NonConvergenceError(ConvergenceError):
    """Newton or splitting iteration exhausted its budget"""


class ToleranceError(ConvergenceError):
    """An inner solve (prox, regularized equation) missed its tolerance"""


class EvolutionStepError(VarsumError):
    """A time step failed; carries what was computed so far"""

    def __init__(self, message, step_index, partial=None):
        super().__init__(message)
        self.step_index = step_index
        self.partial = partial
