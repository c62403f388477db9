"""
Experiment runner: turns a validated :class:`ExperimentConfig` into library
calls and report files.

Each report is a JSON document ``{"payload": ..., "sidecar": ...}``. The
payload is a pure function of config and seed; the wall-clock timestamp is
kept in ``sidecar.non_deterministic``. With ``--format csv`` a plot-ready
CSV is written next to it.

Status codes: 0 success, 2 finding (diagnostic failure, path divergence),
1 operational error (raised as :class:`VarsumError`, never returned).
"""
import hashlib
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from django.conf import settings
from django.utils import timezone

from catalog.documents import parse_graph, parse_grid, resolve_spec
from catalog.potentials import PotentialSpec
from catalog.problems import form_sum_problem, reaction_diffusion_problem
from core import serialization
from core.exceptions import ConfigurationError, ConvergenceError, EvolutionStepError
from evolution.dumps import trajectory_csv, trajectory_metadata
from evolution.integrators import flow_nonexpansiveness_check, implicit_euler_solve
from evolution.problems import EvolutionProblem, Forcing
from evolution.studies import REFERENCE_FACTOR
from experiments.config import set_dotted
from monotone.resolvents import firm_nonexpansiveness_gap, moreau_envelope, resolvent, yosida
from monotone.specs import RESOLVENT_TOL, LinearSpec
from sums import diagnostics
from sums.filters import FilterPath
from sums.resolvents import INNER_TOL, algebraic_sum_resolvent, variational_sum_resolvent

logger = logging.getLogger(__name__)

STATUS_SUCCESS = 0
STATUS_ERROR = 1
STATUS_FINDING = 2

VALIDATION_SAMPLES = 20
RANDOM_SPREAD = 3.0


@dataclass
class Outcome:
    """What one library call produced, before anything is written"""
    payload: dict
    finding: bool = False
    summary: np.ndarray | None = None
    csv: str | None = None
    states: np.ndarray | None = None


@dataclass
class RunResult:
    status: int
    payload: dict
    digest: str
    paths: list = field(default_factory=list)


def payload_digest(payload):
    return hashlib.sha256(serialization.dumps(payload).encode('utf-8')).hexdigest()


def report_document(payload):
    return {
        'payload': payload,
        'sidecar': {'non_deterministic': {'generated_at': timezone.now().isoformat()}},
    }


def write_report(out, name, outcome, fmt):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f'{name}.json'
    path.write_text(serialization.dumps(report_document(outcome.payload)))
    paths = [str(path)]
    if fmt == 'csv' and outcome.csv is not None:
        csv_path = out / f'{name}.csv'
        csv_path.write_text(outcome.csv)
        paths.append(str(csv_path))
    logger.debug('wrote report name=%s files=%d', name, len(paths))
    return paths


def error_payload(exc):
    payload = {'error': type(exc).__name__, 'message': str(exc)}
    if isinstance(exc, ConvergenceError):
        payload.update(residual=exc.residual, iterations=exc.iterations)
    if isinstance(exc, EvolutionStepError):
        payload['step_index'] = exc.step_index
        if exc.partial is not None:
            payload['partial'] = {
                **exc.partial.to_dict(),
                'times': exc.partial.times,
                'states': exc.partial.states,
            }
    return payload


def write_error_report(config, exc):
    """The error report of an operational failure; returns its path"""
    name = report_name(config.command, config.subkind)
    return write_report(config.out, f'{name}-error', Outcome(error_payload(exc)), 'json')


def report_name(command, subkind=''):
    return f'{command}-{subkind}' if subkind else command


# -- document readers -------------------------------------------------------

def _positive(document, key, default):
    value = float(document.get(key, default))
    if not value > 0:
        raise ConfigurationError(f'{key} must be positive, got {value}')
    return value


def _tol(document, key, default):
    value = document.get(key)
    return default if value is None else float(value)


def read_vector(value, dimension, rng):
    """A list, a scalar broadcast to ``dimension``, or ``{"random": spread}``"""
    if isinstance(value, dict):
        if 'random' not in value:
            raise ConfigurationError(f'cannot read vector document {value!r}')
        if rng is None:
            raise ConfigurationError('random vectors are only drawn for right-hand sides')
        spread = float(value['random'] or RANDOM_SPREAD)
        return rng.uniform(-spread, spread, dimension)
    if value is None:
        raise ConfigurationError('a right-hand side "w" is required')
    vector = np.asarray(value, dtype=float)
    if vector.ndim == 0:
        return np.full(dimension, float(vector))
    if vector.shape != (dimension,):
        raise ConfigurationError(f'vector has shape {vector.shape}, expected ({dimension},)')
    return vector


def read_path(value, depth=None):
    depth = depth or settings.VARSUM['PATH_DEPTH']
    if value is None:
        return FilterPath.diagonal(depth)
    if isinstance(value, str):
        return FilterPath.named(value, depth)
    if 'pairs' in value:
        return FilterPath(value['pairs'], label=value.get('label', 'custom'))
    return FilterPath.named(value.get('label', 'diagonal'), int(value.get('depth', depth)))


def read_forcing(value, dimension):
    if isinstance(value, Forcing):
        return value
    if isinstance(value, dict):
        if 'times' in value and 'values' in value:
            return Forcing.table(value['times'], value['values'], label=value.get('label', 'table'))
        raise ConfigurationError(f'cannot read forcing document {value!r}')
    return Forcing.constant(value, dimension)


def build_problem(document, base_dir=None):
    """An :class:`EvolutionProblem` from a preset or an explicit ``A``/``B`` pair"""
    preset = document.get('preset')
    horizon = _positive(document, 'horizon', 1.0)
    forcing = document.get('forcing', 'zero' if preset else 0.0)
    if preset == 'reaction_diffusion':
        problem = reaction_diffusion_problem(
            parse_grid(document.get('grid', {})),
            parse_graph(document.get('reaction', 'cubic')),
            forcing,
            horizon,
            strategy=document.get('strategy', 'algebraic'),
        )
    elif preset == 'form_sum':
        try:
            potential = PotentialSpec(**document.get('potential', {}))
        except TypeError as exc:
            raise ConfigurationError(f'bad potential document: {exc}') from None
        problem = form_sum_problem(parse_grid(document.get('grid', {})), potential, forcing, horizon)
    elif preset is not None:
        raise ConfigurationError(f'unknown problem preset {preset!r}; choose reaction_diffusion or form_sum')
    else:
        if 'A' not in document:
            raise ConfigurationError('an explicit problem needs an operator "A"')
        A = resolve_spec(document['A'], base_dir)
        B = resolve_spec(document['B'], base_dir) if 'B' in document else LinearSpec.zero(A.dimension)
        problem = EvolutionProblem(
            A=A,
            B=B,
            forcing=read_forcing(forcing, A.dimension),
            horizon=horizon,
            strategy=document.get('strategy', 'algebraic'),
            label=document.get('label', 'evolution'),
            weight=float(document.get('weight', 1.0)),
        )
    if document.get('initial') is not None:
        problem = problem.with_initial(read_vector(document['initial'], problem.dimension, None))
    return problem


def _validate_specs(specs, seed, samples):
    return [firm_nonexpansiveness_gap(spec, 1.0, samples=samples, seed=seed) for spec in specs]


# -- commands ---------------------------------------------------------------

def run_resolvent(document, seed=0, base_dir=None, **_):
    spec = resolve_spec(document['A'], base_dir)
    lam = _positive(document, 'lambda', 1.0)
    tol = _tol(document, 'tol', RESOLVENT_TOL)
    rng = np.random.default_rng(seed)
    w = read_vector(document.get('w'), spec.dimension, rng)

    point = resolvent(spec, lam, w, tol)
    check = firm_nonexpansiveness_gap(
        spec, lam, samples=int(document.get('check_samples', VALIDATION_SAMPLES)), seed=seed,
    )
    payload = {
        'command': 'resolvent',
        'kind': spec.kind,
        'lambda': lam,
        'w': w,
        'resolvent': point,
        'yosida': yosida(spec, lam, w, tol),
        'firm_nonexpansiveness': check.to_dict(),
    }
    if spec.kind == 'subdifferential':
        payload['moreau_envelope'] = moreau_envelope(spec.function, lam, w, tol)
    csv = serialization.rows_to_csv(
        ('index', 'w', 'resolvent', 'yosida'),
        [(i, float(a), float(b), float(c)) for i, (a, b, c) in enumerate(zip(w, point, payload['yosida']))],
    )
    return Outcome(payload, finding=not check.passed, summary=point, csv=csv)


def run_vsum(document, seed=0, base_dir=None, **_):
    A = resolve_spec(document['A'], base_dir)
    B = resolve_spec(document['B'], base_dir)
    rng = np.random.default_rng(seed)
    w = read_vector(document.get('w'), A.dimension, rng)
    path = read_path(document.get('path'), document.get('depth'))
    tol = _tol(document, 'tol', settings.VARSUM['DEFAULT_TOL'])
    inner_tol = _tol(document, 'inner_tol', INNER_TOL)

    limit, report = variational_sum_resolvent(
        A, B, w, path=path, tol=tol, inner_tol=inner_tol, sustain=int(document.get('sustain', 3)),
    )
    payload = {'command': 'vsum', 'w': w, 'path': path.to_dict(), 'report': report.to_dict()}
    if document.get('compare_algebraic'):
        algebraic = algebraic_sum_resolvent(A, B, w, tol=inner_tol)
        payload['algebraic'] = algebraic
        payload['algebraic_difference'] = float(np.max(np.abs(limit - algebraic)))
    return Outcome(payload, finding=not report.converged, summary=limit, csv=report.to_csv())


def run_evolve(document, seed=0, base_dir=None, **_):
    problem = build_problem(document.get('problem', document), base_dir)
    steps = int(document.get('steps', 100))
    tol = document.get('tol')
    path = read_path(document['path'], document.get('depth')) if document.get('path') else None

    trajectory = implicit_euler_solve(problem, steps, tol=tol, path=path)
    payload = {
        'command': 'evolve',
        'trajectory': trajectory_metadata(trajectory, problem),
        'times': trajectory.times,
        'states': trajectory.states,
    }
    finding = False
    if document.get('exact') is not None:
        exact = read_vector(document['exact'], problem.dimension, None)
        payload['error'] = float(np.max(np.abs(trajectory.final - exact)))
    if document.get('flow_check') is not None:
        other = read_vector(document['flow_check'], problem.dimension, np.random.default_rng(seed))
        check = flow_nonexpansiveness_check(problem, problem.initial, other, steps, tol=tol)
        payload['flow_nonexpansiveness'] = check.to_dict()
        finding = not check.passed
    return Outcome(
        payload, finding=finding, summary=trajectory.final, csv=trajectory_csv(trajectory), states=trajectory.states,
    )


def run_diagnose(document, seed=0, base_dir=None, subkind='', **_):
    A = resolve_spec(document['A'], base_dir)
    B = resolve_spec(document['B'], base_dir)
    lambdas = tuple(document.get('lambdas', diagnostics.DEFAULT_LAMBDAS))
    mus = tuple(document.get('mus', diagnostics.DEFAULT_LAMBDAS))
    spread = float(document.get('spread', RANDOM_SPREAD))

    if subkind == 'commutation':
        report = diagnostics.check_resolvent_commutation(
            A, B, lambdas, mus,
            samples=int(document.get('samples', 20)),
            tol=_tol(document, 'tol', diagnostics.COMMUTATION_TOL),
            seed=seed,
            spread=spread,
        )
    elif subkind == 'acute-angle':
        report = diagnostics.check_acute_angle(
            A, B, lambdas, mus,
            samples=int(document.get('samples', 200)),
            seed=seed,
            spread=spread,
            weight=float(document.get('weight', 1.0)),
            tolerance=float(document.get('floor', diagnostics.ACUTE_ANGLE_TOL)),
        )
    elif subkind == 'boundedness':
        rng = np.random.default_rng(seed)
        report = diagnostics.boundedness_diagnostic(
            A, B, read_vector(document.get('w'), A.dimension, rng),
            path=read_path(document['path'], document.get('depth')) if document.get('path') else None,
            tol=_tol(document, 'inner_tol', INNER_TOL),
        )
    else:
        raise ConfigurationError(f'unknown diagnostic {subkind!r}')

    validation = _validate_specs(
        (A, B), seed, int(document.get('check_samples', VALIDATION_SAMPLES)),
    )
    payload = {
        'command': 'diagnose',
        'subkind': subkind,
        'report': report.to_dict(),
        'validation': [check.to_dict() for check in validation],
    }
    finding = not report.passed or not all(check.passed for check in validation)
    return Outcome(payload, finding=finding, summary=np.atleast_1d(report.worst), csv=report.to_csv())


RUNNERS = {
    'resolvent': run_resolvent,
    'vsum': run_vsum,
    'evolve': run_evolve,
    'diagnose': run_diagnose,
}


def execute(command, document, seed=0, base_dir=None, subkind=''):
    try:
        runner = RUNNERS[command]
    except KeyError:
        raise ConfigurationError(f'{command!r} is not a runnable command') from None
    try:
        return runner(document, seed=seed, base_dir=base_dir, subkind=subkind)
    except KeyError as exc:
        raise ConfigurationError(f'{command} config is missing {exc}') from None


def run(config):
    """Execute one command and write its report"""
    if config.command == 'sweep':
        return sweep(config)
    outcome = execute(config.command, config.document, config.seed, config.base_dir, config.subkind)
    paths = write_report(config.out, report_name(config.command, config.subkind), outcome, config.format)
    status = STATUS_FINDING if outcome.finding else STATUS_SUCCESS
    digest = payload_digest(outcome.payload)
    logger.info('run command=%s status=%d digest=%s', config.command, status, digest[:12])
    return RunResult(status=status, payload=outcome.payload, digest=digest, paths=paths)


# -- sweeps -----------------------------------------------------------------

def _sweep_reference(base, key, values, outcomes, seed, base_dir):
    """Error reference: exact or refined solution for step axes, the first point otherwise"""
    if base['command'] == 'evolve' and key == 'steps':
        if base.get('exact') is not None:
            return read_vector(base['exact'], len(outcomes[0].summary), None)
        refined = set_dotted(base, 'steps', REFERENCE_FACTOR * max(int(v) for v in values))
        return execute('evolve', refined, seed, base_dir).summary
    return _compared(outcomes[0], outcomes)


def _compared(outcome, outcomes):
    """Whole trajectories when every point shares the time grid, else the summary"""
    shapes = {None if o.states is None else o.states.shape for o in outcomes}
    if len(shapes) == 1 and None not in shapes:
        return outcome.states
    return outcome.summary


def aggregate(base, axis, outcomes, seed=0, base_dir=None):
    key, values = axis['key'], list(axis['values'])
    reference = _sweep_reference(base, key, values, outcomes, seed, base_dir)
    steps_axis = base['command'] == 'evolve' and key == 'steps'

    rows, orders = [], []
    previous = None
    for index, (value, outcome) in enumerate(zip(values, outcomes)):
        compared = outcome.summary if steps_axis else _compared(outcome, outcomes)
        difference = float(np.max(np.abs(compared - reference)))
        order = None
        if steps_axis and previous is not None and previous[1] > 0 and difference > 0:
            order = math.log(previous[1] / difference) / math.log(float(value) / float(previous[0]))
            orders.append(order)
        rows.append({
            'index': index,
            'value': value,
            'status': STATUS_FINDING if outcome.finding else STATUS_SUCCESS,
            'norm': float(np.linalg.norm(outcome.summary)),
            'difference': difference,
            'order': order,
        })
        previous = (value, difference)

    measured = rows if steps_axis else rows[1:]
    payload = {
        'command': 'sweep',
        'base_command': base['command'],
        'axis': {'key': key, 'values': values},
        'points': rows,
        'max_disagreement': max((row['difference'] for row in measured), default=0.0),
        'order': float(np.median(orders)) if orders else None,
    }
    csv = serialization.rows_to_csv(
        ('index', key, 'status', 'norm', 'difference', 'order'),
        [
            (row['index'], row['value'], row['status'], row['norm'], row['difference'],
             '' if row['order'] is None else row['order'])
            for row in rows
        ],
    )
    return Outcome(payload, finding=any(o.finding for o in outcomes), csv=csv)


def sweep(config):
    """
    Run the base config once per axis value, in parallel up to
    ``config.workers``; reports are assembled in axis order.
    """
    document = config.document
    base, axis = document.get('base'), document.get('axis') or {}
    if not isinstance(base, dict) or not axis.get('key') or not axis.get('values'):
        raise ConfigurationError('a sweep needs a base config and an axis with at least one value')
    command = base.get('command')
    subkind = base.get('subkind', '')

    points = [set_dotted(base, axis['key'], value) for value in axis['values']]

    def _run_point(point):
        return execute(command, point, config.seed, config.base_dir, subkind)

    with ThreadPoolExecutor(max_workers=max(1, int(config.workers))) as pool:
        outcomes = list(pool.map(_run_point, points))

    paths = []
    for index, outcome in enumerate(outcomes):
        paths += write_report(config.out, f'sweep-{index:03d}', outcome, config.format)
    summary = aggregate(base, axis, outcomes, config.seed, config.base_dir)
    paths += write_report(config.out, 'aggregate', summary, 'csv')

    status = STATUS_FINDING if summary.finding else STATUS_SUCCESS
    digest = payload_digest(summary.payload)
    logger.info('sweep command=%s points=%d status=%d digest=%s', command, len(points), status, digest[:12])
    return RunResult(status=status, payload=summary.payload, digest=digest, paths=paths)
