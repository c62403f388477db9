"""
Evolution problems ``u' + Au + Bu ∋ f``, ``u(0) = u0`` (zero by default), and
the trajectories that solve them.
"""
from dataclasses import dataclass, field, replace

import numpy as np

from core.exceptions import ConfigurationError
from linalg.matrices import mesh_inner
from monotone.specs import FormSumSchrodinger, LinearSpec

STRATEGIES = ('algebraic', 'variational', 'form_sum')


class Forcing:
    """
    A state-valued forcing term. Tables are piecewise constant over cells:
    ``f(t) = values[j]`` for ``t`` in ``(times[j-1], times[j]]``.
    """

    def __init__(self, dimension, times=None, values=None, function=None, label='forcing'):
        self.dimension = int(dimension)
        self.label = label
        self._function = function
        self.times = None if times is None else np.asarray(times, dtype=float)
        self.values = None if values is None else np.atleast_2d(np.asarray(values, dtype=float))
        if function is None:
            if self.times is None or self.values is None:
                raise ConfigurationError('a forcing needs a function or a table')
            if self.values.shape != (len(self.times), self.dimension):
                raise ConfigurationError(
                    f'forcing table has shape {self.values.shape}, expected ({len(self.times)}, {self.dimension})'
                )
            if np.any(np.diff(self.times) <= 0):
                raise ConfigurationError('forcing times must increase strictly')

    @classmethod
    def constant(cls, value, dimension, label='constant'):
        value = np.broadcast_to(np.asarray(value, dtype=float), (dimension,)).copy()
        return cls(dimension, times=[0.0], values=[value], label=label)

    @classmethod
    def zero(cls, dimension):
        return cls.constant(0.0, dimension, label='zero')

    @classmethod
    def table(cls, times, values, label='table'):
        values = np.atleast_2d(np.asarray(values, dtype=float))
        return cls(values.shape[1], times=times, values=values, label=label)

    @property
    def is_zero(self):
        return self._function is None and not np.any(self.values)

    def covers(self, horizon):
        """Tables must reach ``horizon``; a single-row table is constant in time"""
        if self._function is not None or len(self.times) == 1:
            return True
        return self.times[0] <= 0.0 and self.times[-1] >= horizon

    def __call__(self, t):
        if self._function is not None:
            return np.broadcast_to(np.asarray(self._function(t), dtype=float), (self.dimension,)).copy()
        if len(self.times) == 1:
            return self.values[0].copy()
        index = int(np.clip(np.searchsorted(self.times, t, side='left'), 0, len(self.times) - 1))
        return self.values[index].copy()

    def to_dict(self):
        if self._function is not None:
            return {'label': self.label}
        return {'label': self.label, 'times': self.times, 'values': self.values}


@dataclass(frozen=True)
class EvolutionProblem:
    A: object
    B: object
    forcing: Forcing
    horizon: float
    initial: np.ndarray = None
    strategy: str = 'algebraic'
    label: str = 'evolution'
    weight: float = 1.0
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ConfigurationError(f'unknown strategy {self.strategy!r}; choose from {STRATEGIES}')
        if self.horizon <= 0:
            raise ConfigurationError('horizon must be positive')
        if self.A.dimension != self.B.dimension or self.forcing.dimension != self.A.dimension:
            raise ConfigurationError('operators and forcing must share one dimension')
        if not self.forcing.covers(self.horizon):
            raise ConfigurationError(f'forcing samples do not cover [0, {self.horizon}]')
        if self.strategy == 'form_sum':
            if not isinstance(self.A, (FormSumSchrodinger, LinearSpec)):
                raise ConfigurationError('the form_sum strategy needs a linear first operator')
            if not (isinstance(self.B, LinearSpec) and self.B.is_zero):
                raise ConfigurationError('the form_sum strategy carries the whole operator in A')
        initial = np.zeros(self.A.dimension) if self.initial is None else np.asarray(self.initial, dtype=float)
        if initial.shape != (self.A.dimension,):
            raise ConfigurationError(f'initial state has shape {initial.shape}, expected ({self.A.dimension},)')
        object.__setattr__(self, 'initial', initial)

    @property
    def dimension(self):
        return self.A.dimension

    def with_initial(self, initial):
        return replace(self, initial=np.asarray(initial, dtype=float))

    def with_strategy(self, strategy):
        return replace(self, strategy=strategy)

    def to_dict(self):
        return {
            'label': self.label,
            'strategy': self.strategy,
            'horizon': self.horizon,
            'dimension': self.dimension,
            'A': self.A.kind,
            'B': self.B.kind,
            'forcing': self.forcing.label,
            'metadata': self.metadata,
        }


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    residuals: np.ndarray
    step: float
    strategy: str
    tolerance: float

    @property
    def final(self):
        return self.states[-1]

    @property
    def steps(self):
        return len(self.times) - 1

    def to_dict(self):
        return {
            'step': self.step,
            'steps': self.steps,
            'strategy': self.strategy,
            'tolerance': self.tolerance,
            'max_residual': float(np.max(self.residuals)) if len(self.residuals) else 0.0,
            'final': self.final,
        }


def trajectory_inner(first, second, weight=1.0):
    """``sum_i tau <u_i, v_i>_h`` over the nodes after the initial one"""
    if first.steps != second.steps or first.step != second.step:
        raise ValueError('trajectories live on different time grids')
    return sum(
        first.step * mesh_inner(u, v, weight) for u, v in zip(first.states[1:], second.states[1:])
    )


def trajectory_norm(trajectory, weight=1.0):
    return float(np.sqrt(max(trajectory_inner(trajectory, trajectory, weight), 0.0)))
