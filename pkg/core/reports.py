"""
Core Reports - uniform evidence objects returned by limit-taking operations
and diagnostics
"""
import math
from dataclasses import dataclass, field

import numpy as np

from core import serialization


@dataclass(frozen=True)
class ConvergenceRecord:
    """
    One point of a limit process. ``parameter`` is the scale the process
    tends along (a path point max(lam, mu) or a step size); filter paths
    also record the pair itself.
    """
    parameter: float
    norm: float
    difference: float
    lam: float | None = None
    mu: float | None = None

    def to_dict(self):
        data = {'parameter': self.parameter, 'norm': self.norm, 'difference': self.difference}
        if self.lam is not None:
            data['lambda'] = self.lam
        if self.mu is not None:
            data['mu'] = self.mu
        return data


@dataclass(frozen=True)
class ConvergenceReport:
    label: str
    records: tuple
    converged: bool
    limit: np.ndarray
    tolerance: float
    rate: float | None
    verdict: str
    sustain: int = 1
    extrapolated: np.ndarray | None = None
    converged_at: int | None = None

    @classmethod
    def from_records(cls, label, records, limit, tolerance, sustain=1, iterates=None):
        """
        Assemble a report. ``converged`` holds iff the last ``sustain``
        differences are all within ``tolerance * (1 + |limit|)``; with
        ``sustain=1`` this is the final-difference criterion.
        """
        records = tuple(records)
        limit = np.asarray(limit, dtype=float)
        threshold = tolerance * (1.0 + float(np.linalg.norm(limit)))
        differences = [r.difference for r in records[1:]] if len(records) > 1 else []
        if len(records) == 1:
            differences = [records[0].difference]
        tail = differences[-sustain:] if differences else []
        converged = len(tail) >= sustain and all(d <= threshold for d in tail)

        rate = _estimate_rate(records)
        extrapolated = None
        if iterates is not None and len(iterates) >= 2 and rate and rate > 0:
            ratio = records[-2].parameter / records[-1].parameter if records[-1].parameter > 0 else None
            if ratio and ratio > 1:
                correction = (iterates[-1] - iterates[-2]) / (ratio ** rate - 1.0)
                extrapolated = np.asarray(iterates[-1] + correction, dtype=float)

        converged_at = None
        if converged:
            converged_at = len(records) - 1
            while converged_at > 1 and records[converged_at - 1].difference <= threshold:
                converged_at -= 1

        if converged:
            verdict = f'converged: last {sustain} difference(s) <= {threshold:.3e}'
        else:
            final = differences[-1] if differences else math.nan
            verdict = f'not converged: final difference {final:.3e} > {threshold:.3e}'
        return cls(
            label=label,
            records=records,
            converged=converged,
            limit=limit,
            tolerance=tolerance,
            rate=rate,
            verdict=verdict,
            sustain=sustain,
            extrapolated=extrapolated,
            converged_at=converged_at,
        )

    @property
    def final_difference(self):
        return self.records[-1].difference if self.records else math.nan

    def to_dict(self):
        return {
            'kind': 'convergence',
            'label': self.label,
            'converged': self.converged,
            'tolerance': self.tolerance,
            'sustain': self.sustain,
            'rate': self.rate,
            'verdict': self.verdict,
            'limit': self.limit,
            'extrapolated': self.extrapolated,
            'converged_at': self.converged_at,
            'records': [record.to_dict() for record in self.records],
        }

    def to_csv(self):
        rows = [
            (
                r.lam if r.lam is not None else r.parameter,
                r.mu if r.mu is not None else r.parameter,
                r.norm,
                r.difference,
            )
            for r in self.records
        ]
        return serialization.rows_to_csv(('lambda', 'mu', 'norm', 'diff'), rows)


def _estimate_rate(records):
    """Median log-ratio of successive differences against the parameter ratio"""
    rates = []
    for previous, current in zip(records, records[1:]):
        if (math.isfinite(previous.difference) and math.isfinite(current.difference)
                and previous.difference > 0 and current.difference > 0
                and previous.parameter > 0 and current.parameter > 0
                and previous.parameter != current.parameter):
            rates.append(
                math.log(previous.difference / current.difference)
                / math.log(previous.parameter / current.parameter)
            )
    if not rates:
        return None
    return float(np.median(rates[-5:]))


@dataclass(frozen=True)
class DiagnosticReport:
    """
    Outcome of a sampled diagnostic. ``comparison`` says how the worst value
    is judged against the tolerance: ``'<='`` (worst must not exceed it) or
    ``'>='`` (worst must not fall below it).
    """
    name: str
    samples: int
    witness: np.ndarray | None
    worst: float
    tolerance: float
    comparison: str = '<='
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        if math.isnan(self.worst):
            return False
        if self.comparison == '<=':
            return self.worst <= self.tolerance
        return self.worst >= self.tolerance

    def to_dict(self):
        return {
            'kind': 'diagnostic',
            'name': self.name,
            'samples': self.samples,
            'passed': self.passed,
            'worst': self.worst,
            'tolerance': self.tolerance,
            'comparison': self.comparison,
            'witness': self.witness,
            'details': self.details,
        }

    def to_csv(self):
        rows = [(self.name, self.samples, self.worst, self.tolerance, int(self.passed))]
        return serialization.rows_to_csv(('name', 'samples', 'worst', 'tolerance', 'passed'), rows)
