import math

import numpy as np

from core import serialization
from core.exceptions import ConvergenceError, ToleranceError, VarsumError
from core.reports import ConvergenceRecord, ConvergenceReport, DiagnosticReport


def _records(differences, start=1.0):
    return [
        ConvergenceRecord(parameter=start * 2.0 ** -k, norm=1.0, difference=d, lam=start * 2.0 ** -k, mu=0.0)
        for k, d in enumerate(differences)
    ]


def test_report_converges_when_tail_is_small():
    records = _records([math.inf, 1e-1, 1e-3, 1e-6, 1e-7, 1e-8])
    report = ConvergenceReport.from_records('demo', records, limit=np.zeros(2), tolerance=1e-4, sustain=3)
    assert report.converged
    assert report.converged_at == 3
    assert report.verdict.startswith('converged')


def test_report_needs_the_whole_sustained_tail():
    records = _records([math.inf, 1e-6, 1e-6, 1e-1])
    report = ConvergenceReport.from_records('demo', records, limit=np.zeros(1), tolerance=1e-4, sustain=3)
    assert not report.converged
    assert report.converged_at is None
    assert report.verdict.startswith('not converged')


def test_threshold_scales_with_the_limit():
    records = _records([math.inf, 5e-4])
    assert not ConvergenceReport.from_records('a', records, limit=np.zeros(1), tolerance=1e-4).converged
    assert ConvergenceReport.from_records('b', records, limit=np.full(1, 10.0), tolerance=1e-4).converged


def test_rate_is_estimated_from_geometric_differences():
    records = _records([math.inf, 1e-1, 5e-2, 2.5e-2, 1.25e-2])
    report = ConvergenceReport.from_records('linear', records, limit=np.zeros(1), tolerance=1e-8)
    assert abs(report.rate - 1.0) < 1e-12


def test_csv_has_lambda_mu_columns():
    report = ConvergenceReport.from_records('demo', _records([math.inf, 1e-3]), limit=np.zeros(1), tolerance=1e-2)
    lines = report.to_csv().strip().split('\n')
    assert lines[0] == 'lambda,mu,norm,diff'
    assert len(lines) == 3


def test_report_serializes_deterministically():
    report = ConvergenceReport.from_records('demo', _records([math.inf, 1e-3]), limit=np.ones(2), tolerance=1e-2)
    assert serialization.dumps(report) == serialization.dumps(report.to_dict())
    assert serialization.loads(serialization.dumps(report))['records'][0]['difference'] == math.inf


def test_diagnostic_comparisons():
    upper = DiagnosticReport('upper', 10, None, worst=1e-12, tolerance=1e-9)
    lower = DiagnosticReport('lower', 10, None, worst=-1.0, tolerance=-1e-10, comparison='>=')
    assert upper.passed
    assert not lower.passed
    assert not DiagnosticReport('nan', 1, None, worst=math.nan, tolerance=1.0).passed


def test_convergence_errors_carry_their_state():
    exc = ToleranceError('missed', residual=1e-3, iterations=7, best=np.ones(2))
    assert isinstance(exc, ConvergenceError)
    assert isinstance(exc, VarsumError)
    assert exc.residual == 1e-3
    assert exc.iterations == 7
    assert np.array_equal(exc.best, np.ones(2))
