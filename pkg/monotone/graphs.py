"""
Scalar monotone graphs applied coordinate-wise.

A graph is described by its value interval ``[lower(x), upper(x)]`` at every
point of a closed domain ``[a, b]``. Single-valued points have
``lower == upper``; vertical segments and normal-cone ends have
``lower < upper`` (possibly infinite). Everything is vectorized over numpy
arrays.
"""
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from core.exceptions import ConfigurationError, DomainError, GraphDomainError

logger = logging.getLogger(__name__)

ROOT_TOL = 1e-12
ROOT_MAX_ITER = 200
POLISH_STEPS = 2


@dataclass(frozen=True)
class ScalarResolution:
    """Coordinate-wise resolvent data at a right-hand side ``w``"""
    point: np.ndarray
    derivative: np.ndarray
    yosida: np.ndarray
    yosida_slope: np.ndarray


class ScalarMonotoneGraph(ABC):
    name = 'graph'
    domain = (-math.inf, math.inf)
    breakpoints = ()

    @abstractmethod
    def bounds(self, x):
        """Return ``(lower, upper)`` arrays; NaN outside the domain"""

    @abstractmethod
    def slope(self, x):
        """Derivative of the single-valued branch (right derivative at kinks)"""

    @property
    def single_valued(self):
        return False

    @property
    def normalized(self):
        """Whether 0 belongs to g(0)"""
        lower, upper = self.bounds(np.zeros(1))
        return bool(lower[0] <= 0.0 <= upper[0])

    def in_domain(self, x):
        a, b = self.domain
        x = np.asarray(x, dtype=float)
        return (x >= a) & (x <= b)

    def __call__(self, x):
        lower, upper = self.bounds(x)
        if not np.allclose(lower, upper, rtol=0.0, atol=0.0, equal_nan=True):
            raise DomainError(f'{self.name} is multivalued at some of the requested points')
        return lower

    def __add__(self, other):
        return SumGraph(self, other)

    def resolve(self, lam, w, tol=ROOT_TOL):
        """
        Solve ``w in u + lam * g(u)`` for every coordinate of ``w``.

        Breakpoints are tested first so that vertical segments resolve
        exactly; other coordinates are bracketed from the graph value at
        ``clip(w, domain)`` and bisected, then polished by Newton steps on
        the single-valued branch.
        """
        if lam <= 0:
            raise ValueError('lambda must be positive')
        w = np.atleast_1d(np.asarray(w, dtype=float))
        a, b = self.domain
        point = np.full_like(w, np.nan)
        done = np.zeros(w.shape, dtype=bool)

        for x in self.breakpoints:
            lower, upper = self.bounds(np.full_like(w, x))
            hit = ~done & (x + lam * lower <= w) & (w <= x + lam * upper)
            point[hit] = x
            done |= hit

        c = np.clip(w, a, b)
        lower_c, upper_c = self.bounds(c)
        at_c = ~done & (c + lam * lower_c <= w) & (w <= c + lam * upper_c)
        point[at_c] = c[at_c]
        done |= at_c

        left = np.where(upper_c < 0, c, np.maximum(w - lam * lower_c, a))
        right = np.where(upper_c < 0, np.minimum(w - lam * upper_c, b), c)
        active = ~done
        if np.any(active & ~(np.isfinite(left) & np.isfinite(right))):
            raise GraphDomainError(f'cannot bracket the resolvent of {self.name} at lambda={lam}')
        left = np.where(active, left, 0.0)
        right = np.where(active, right, 0.0)

        scale = np.maximum(1.0, np.abs(w))
        for _ in range(ROOT_MAX_ITER):
            active &= (right - left) > tol * scale
            if not np.any(active):
                break
            mid = 0.5 * (left + right)
            lower_m, upper_m = self.bounds(mid)
            above = active & (mid + lam * lower_m > w)
            below = active & (mid + lam * upper_m < w)
            exact = active & ~above & ~below
            right = np.where(above, mid, right)
            left = np.where(below, mid, left)
            point[exact] = mid[exact]
            done |= exact
            active &= ~exact

        pending = ~done
        point[pending] = 0.5 * (left[pending] + right[pending])
        for _ in range(POLISH_STEPS):
            if not np.any(pending):
                break
            lower_p, upper_p = self.bounds(point)
            smooth = pending & (lower_p == upper_p)
            excess = point + lam * lower_p - w
            candidate = point - excess / (1.0 + lam * self.slope(point))
            inside = smooth & (candidate >= left) & (candidate <= right)
            point = np.where(inside, candidate, point)

        lower_u, upper_u = self.bounds(point)
        vertical = (lower_u < upper_u) & (point + lam * lower_u < w) & (w < point + lam * upper_u)
        slope = np.where(vertical, 0.0, self.slope(point))
        derivative = np.where(vertical, 0.0, 1.0 / (1.0 + lam * slope))
        yosida_slope = np.where(vertical, 1.0 / lam, slope / (1.0 + lam * slope))
        yosida = np.where(lower_u == upper_u, lower_u, (w - point) / lam)
        return ScalarResolution(point=point, derivative=derivative, yosida=yosida, yosida_slope=yosida_slope)


class SmoothGraph(ScalarMonotoneGraph):
    """An everywhere-defined nondecreasing C1 function"""

    def __init__(self, name, function, derivative):
        self.name = name
        self._function = function
        self._derivative = derivative

    @property
    def single_valued(self):
        return True

    def bounds(self, x):
        value = self._function(np.asarray(x, dtype=float))
        return value, value

    def slope(self, x):
        return self._derivative(np.asarray(x, dtype=float))


class PiecewiseLinearGraph(ScalarMonotoneGraph):
    """
    Monotone piecewise-linear graph through breakpoints ``(x, y_minus, y_plus)``.
    Between consecutive breakpoints the graph joins ``y_plus`` of the left
    point to ``y_minus`` of the right one; outside it continues with the
    given end slopes.
    """

    def __init__(self, name, points, left_slope=0.0, right_slope=0.0):
        points = sorted((float(x), float(lo), float(hi)) for x, lo, hi in points)
        if not points:
            raise ConfigurationError('a piecewise graph needs at least one breakpoint')
        self.name = name
        self._x = np.array([p[0] for p in points])
        self._lower = np.array([p[1] for p in points])
        self._upper = np.array([p[2] for p in points])
        self.left_slope = float(left_slope)
        self.right_slope = float(right_slope)
        self.breakpoints = tuple(self._x)
        self._validate()

    def _validate(self):
        if np.any(np.diff(self._x) <= 0):
            raise ConfigurationError(f'{self.name}: breakpoints must be distinct')
        if np.any(self._lower > self._upper):
            raise ConfigurationError(f'{self.name}: vertical segments need y- <= y+')
        if np.any(self._upper[:-1] > self._lower[1:]):
            raise ConfigurationError(f'{self.name}: graph is not monotone between breakpoints')
        if self.left_slope < 0 or self.right_slope < 0:
            raise ConfigurationError(f'{self.name}: end slopes must be nonnegative')

    @property
    def single_valued(self):
        return bool(np.all(self._lower == self._upper))

    def points(self):
        return [(float(x), float(lo), float(hi)) for x, lo, hi in zip(self._x, self._lower, self._upper)]

    def _segments(self, x):
        x = np.asarray(x, dtype=float)
        index = np.searchsorted(self._x, x, side='right') - 1
        return x, index

    def bounds(self, x):
        x, index = self._segments(x)
        last = len(self._x) - 1
        safe = np.clip(index, 0, last)
        following = np.clip(index + 1, 0, last)

        span = self._x[following] - self._x[safe]
        with np.errstate(divide='ignore', invalid='ignore'):
            t = np.where(span > 0, (x - self._x[safe]) / np.where(span > 0, span, 1.0), 0.0)
        interior = self._upper[safe] + t * (self._lower[following] - self._upper[safe])

        value = np.where(index < 0, self._lower[0] + self.left_slope * (x - self._x[0]), interior)
        value = np.where(index >= last, self._upper[last] + self.right_slope * (x - self._x[last]), value)

        hit = (index >= 0) & (x == self._x[safe])
        lower = np.where(hit, self._lower[safe], value)
        upper = np.where(hit, self._upper[safe], value)
        return lower, upper

    def slope(self, x):
        x, index = self._segments(x)
        last = len(self._x) - 1
        safe = np.clip(index, 0, last)
        following = np.clip(index + 1, 0, last)
        span = self._x[following] - self._x[safe]
        rise = self._lower[following] - self._upper[safe]
        with np.errstate(divide='ignore', invalid='ignore'):
            interior = np.where(span > 0, rise / np.where(span > 0, span, 1.0), 0.0)
        slope = np.where(index < 0, self.left_slope, interior)
        return np.where(index >= last, self.right_slope, slope)


class NormalConeGraph(ScalarMonotoneGraph):
    """Normal cone of the interval ``[a, b]``: zero inside, vertical rays at the ends"""

    def __init__(self, a=0.0, b=math.inf, name=None):
        if a > b:
            raise ConfigurationError('normal cone interval must satisfy a <= b')
        self.domain = (float(a), float(b))
        self.breakpoints = tuple(v for v in self.domain if math.isfinite(v))
        self.name = name or f'normal_cone[{a}, {b}]'

    def bounds(self, x):
        x = np.asarray(x, dtype=float)
        a, b = self.domain
        lower = np.where(x == a, -math.inf, 0.0)
        upper = np.where(x == b, math.inf, 0.0)
        outside = (x < a) | (x > b)
        return np.where(outside, np.nan, lower), np.where(outside, np.nan, upper)

    def slope(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))


class SumGraph(ScalarMonotoneGraph):
    """Pointwise sum of two graphs on the intersection of their domains"""

    def __init__(self, first, second):
        self.first = first
        self.second = second
        self.name = f'{first.name}+{second.name}'
        a = max(first.domain[0], second.domain[0])
        b = min(first.domain[1], second.domain[1])
        if a > b:
            raise DomainError(f'{self.name}: domains do not intersect')
        self.domain = (a, b)
        self.breakpoints = tuple(sorted(
            {x for x in first.breakpoints + second.breakpoints if a <= x <= b}
        ))

    @property
    def single_valued(self):
        return self.first.single_valued and self.second.single_valued

    def bounds(self, x):
        lower_1, upper_1 = self.first.bounds(x)
        lower_2, upper_2 = self.second.bounds(x)
        return lower_1 + lower_2, upper_1 + upper_2

    def slope(self, x):
        return self.first.slope(x) + self.second.slope(x)


def minimal_section_norm(graph, x):
    """Smallest ``|y|`` over ``y in g(x)``"""
    lower, upper = graph.bounds(np.array([float(x)]))
    lower, upper = float(lower[0]), float(upper[0])
    if math.isnan(lower) or math.isnan(upper):
        raise DomainError(f'{x} is outside the domain of {graph.name}')
    if lower <= 0.0 <= upper:
        return 0.0
    return min(abs(lower), abs(upper))


def monotonicity_gap(graph, samples=1000, seed=0, spread=3.0):
    """
    Smallest ``(x1 - x2)(y1 - y2)`` over random graph pairs; a negative
    value witnesses a monotonicity violation.
    """
    rng = np.random.default_rng(seed)
    a, b = graph.domain
    low = a if math.isfinite(a) else -spread
    high = b if math.isfinite(b) else spread
    if low > high:
        raise DomainError(f'{graph.name} has an empty domain')
    candidates = list(graph.breakpoints)

    def draw(size):
        x = rng.uniform(low, high, size)
        if candidates:
            snap = rng.random(size) < 0.2
            x[snap] = rng.choice(candidates, snap.sum())
        lower, upper = graph.bounds(x)
        lower = np.where(np.isfinite(lower), lower, np.minimum(upper, 0.0) - spread)
        upper = np.where(np.isfinite(upper), upper, np.maximum(lower, 0.0) + spread)
        return x, lower + rng.random(size) * (upper - lower)

    x1, y1 = draw(samples)
    x2, y2 = draw(samples)
    return float(np.min((x1 - x2) * (y1 - y2)))


def identity_graph(scale=1.0):
    return SmoothGraph(
        'identity' if scale == 1.0 else f'identity*{scale}',
        lambda x: scale * x,
        lambda x: np.full_like(x, scale),
    )


def cubic_graph():
    return SmoothGraph('cubic', lambda x: x ** 3, lambda x: 3.0 * x ** 2)


def sign_graph():
    """Subdifferential of ``|x|``: -1 left of zero, [-1, 1] at zero, +1 right of it"""
    return PiecewiseLinearGraph('sign-graph', [(0.0, -1.0, 1.0)])
