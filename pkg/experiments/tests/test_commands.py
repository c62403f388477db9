import json
import math

import numpy as np
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from experiments.models import ExperimentRun, FailedRun, FindingRun

pytestmark = pytest.mark.django_db

HALF_SQUARE = {'kind': 'subdifferential', 'dimension': 1, 'function': 'half_square'}
NONNEG = {'kind': 'subdifferential', 'dimension': 1, 'function': 'indicator_nonneg'}
LAPLACIAN = {'kind': 'linear', 'grid': {'dimension': 1, 'points': 16}}
CUBIC = {'kind': 'separable', 'dimension': 16, 'graph': 'cubic'}


def test_vsum_of_identity_and_normal_cone(write_config, out_dir, read_report, capsys):
    config = write_config({'A': 'A.json', 'B': 'B.json', 'w': [-3.0]}, A=HALF_SQUARE, B=NONNEG)
    call_command('vsum', config=config, out=str(out_dir))

    report = read_report('vsum')
    assert set(report) == {'payload', 'sidecar'}
    assert 'generated_at' in report['sidecar']['non_deterministic']
    payload = report['payload']
    assert payload['report']['converged']
    assert abs(payload['report']['limit'][0]) < 1e-5
    run = ExperimentRun.objects.get()
    assert run.status == ExperimentRun.STATUS_SUCCESS
    assert run.command == 'vsum'
    assert 'Completed vsum' in capsys.readouterr().out


def test_vsum_override_and_algebraic_comparison(write_config, out_dir, read_report):
    config = write_config({'A': HALF_SQUARE, 'B': NONNEG, 'w': [-3.0], 'compare_algebraic': True})
    call_command('vsum', config=config, out=str(out_dir), set=['w=[2.0]'], format='csv')
    payload = read_report('vsum')['payload']
    assert payload['w'] == [2.0]
    assert payload['report']['limit'][0] == pytest.approx(1.0, abs=1e-5)
    assert payload['algebraic_difference'] <= 1e-5
    assert (out_dir / 'vsum.csv').read_text().startswith('lambda,mu,norm,diff')


def test_resolvent_with_a_random_right_hand_side(write_config, out_dir, read_report):
    config = write_config({'A': {'kind': 'subdifferential', 'dimension': 4, 'function': 'abs'},
                           'lambda': 0.5, 'w': {'random': 2.0}})
    call_command('resolvent', config=config, out=str(out_dir), seed=3, format='csv')
    payload = read_report('resolvent')['payload']
    w = np.array(payload['w'])
    expected = np.sign(w) * np.maximum(np.abs(w) - 0.5, 0.0)
    assert np.allclose(payload['resolvent'], expected, atol=1e-10)
    assert payload['firm_nonexpansiveness']['passed']
    assert 'moreau_envelope' in payload
    assert (out_dir / 'resolvent.csv').read_text().splitlines()[0] == 'index,w,resolvent,yosida'


def test_reports_are_deterministic(write_config, tmp_path):
    config = write_config({'A': HALF_SQUARE | {'dimension': 3}, 'B': NONNEG | {'dimension': 3},
                           'w': {'random': 3.0}})
    for name in ('first', 'second'):
        call_command('vsum', config=config, out=str(tmp_path / name), seed=11)
    first, second = ExperimentRun.objects.order_by('created_at')
    assert first.payload_digest == second.payload_digest
    payloads = [json.loads((tmp_path / name / 'vsum.json').read_text())['payload'] for name in ('first', 'second')]
    assert payloads[0] == payloads[1]


def test_acute_angle_of_laplacian_and_cubic_passes(write_config, out_dir, read_report):
    config = write_config({'A': LAPLACIAN, 'B': CUBIC, 'samples': 50})
    call_command('diagnose', 'acute-angle', config=config, out=str(out_dir))
    payload = read_report('diagnose-acute-angle')['payload']
    assert payload['report']['passed']
    assert all(check['passed'] for check in payload['validation'])


def test_failing_acute_angle_is_a_finding(write_config, out_dir, read_report):
    config = write_config({
        'A': {'kind': 'linear', 'dimension': 2, 'entries': [[0, 0, 1.0]]},
        'B': {'kind': 'nonsymmetric_linear', 'dimension': 2, 'matrix': 'zero', 'skew': [[0, 1], [-1, 0]]},
        'samples': 50,
    })
    with pytest.raises(SystemExit) as excinfo:
        call_command('diagnose', 'acute-angle', config=config, out=str(out_dir))
    assert excinfo.value.code == 2
    assert not read_report('diagnose-acute-angle')['payload']['report']['passed']
    assert FindingRun.objects.count() == 1
    assert FindingRun.objects.get().is_finding


def test_commutation_of_a_nonlinear_pair_is_an_operational_error(write_config, out_dir, read_report):
    config = write_config({'A': LAPLACIAN, 'B': CUBIC})
    with pytest.raises(CommandError) as excinfo:
        call_command('diagnose', 'commutation', config=config, out=str(out_dir))
    assert excinfo.value.returncode == 1
    assert read_report('diagnose-commutation-error')['payload']['error'] == 'CapabilityError'
    assert FailedRun.objects.count() == 1


def test_boundedness_of_a_shared_domain(write_config, out_dir, read_report):
    config = write_config({'A': HALF_SQUARE, 'B': NONNEG, 'w': [-1.0]})
    call_command('diagnose', 'boundedness', config=config, out=str(out_dir))
    report = read_report('diagnose-boundedness')['payload']['report']
    assert report['passed']
    assert report['details']['max_norm'] == pytest.approx(1.0, abs=1e-4)


def test_evolve_from_rest_without_forcing(write_config, out_dir, read_report):
    config = write_config({
        'problem': {'preset': 'reaction_diffusion', 'grid': {'points': 8}, 'reaction': 'cubic',
                    'forcing': 'zero', 'horizon': 0.5},
        'steps': 10,
    })
    call_command('evolve', config=config, out=str(out_dir), format='csv')
    payload = read_report('evolve')['payload']
    assert np.all(np.array(payload['states']) == 0.0)
    assert payload['trajectory']['steps'] == 10
    header = (out_dir / 'evolve.csv').read_text().splitlines()[0]
    assert header == 't,' + ','.join(f'u_{i}' for i in range(1, 9))


def test_failed_evolution_keeps_the_partial_trajectory(write_config, out_dir, read_report):
    config = write_config({
        'problem': {'preset': 'reaction_diffusion', 'grid': {'points': 8}, 'reaction': 'cubic',
                    'forcing': 'constant', 'horizon': 0.1, 'strategy': 'variational'},
        'steps': 5,
        'tol': 1e-30,
    })
    with pytest.raises(CommandError):
        call_command('evolve', config=config, out=str(out_dir))
    payload = read_report('evolve-error')['payload']
    assert payload['error'] == 'EvolutionStepError'
    assert payload['step_index'] == 1
    assert payload['partial']['states'] == [[0.0] * 8]


def test_missing_spec_file_is_rejected(write_config, out_dir):
    config = write_config({'A': 'nowhere.json', 'B': NONNEG, 'w': [1.0]})
    with pytest.raises(CommandError) as excinfo:
        call_command('vsum', config=config, out=str(out_dir))
    assert 'nowhere.json' in str(excinfo.value)
    assert FailedRun.objects.count() == 1
    assert not out_dir.exists()


def test_nonpositive_tolerance_is_rejected(write_config, out_dir):
    config = write_config({'A': HALF_SQUARE, 'B': NONNEG, 'w': [1.0], 'tol': 0})
    with pytest.raises(CommandError):
        call_command('vsum', config=config, out=str(out_dir))


def test_sweep_needs_axis_values(write_config, out_dir):
    config = write_config({'base': {'command': 'vsum', 'A': HALF_SQUARE, 'B': NONNEG, 'w': [1.0]},
                           'axis': {'key': 'w', 'values': []}})
    with pytest.raises(CommandError):
        call_command('sweep', config=config, out=str(out_dir))


def test_step_sweep_reports_first_order(write_config, out_dir, read_report):
    relaxed = 1.0 - math.exp(-1.0)
    config = write_config({
        'base': {
            'command': 'evolve',
            'problem': {'A': {'kind': 'linear', 'dimension': 1, 'matrix': 'identity'}, 'forcing': 1.0},
            'exact': [relaxed],
        },
        'axis': {'key': 'steps', 'values': [100, 200, 400]},
    })
    call_command('sweep', config=config, out=str(out_dir), workers=2, format='csv')
    payload = read_report('aggregate')['payload']
    assert [row['value'] for row in payload['points']] == [100, 200, 400]
    assert 0.9 <= payload['order'] <= 1.1
    assert payload['points'][0]['order'] is None
    for index in range(3):
        assert (out_dir / f'sweep-{index:03d}.json').exists()
    assert (out_dir / 'aggregate.csv').read_text().startswith('index,steps,status,norm,difference,order')


def test_strategy_sweep_agrees(write_config, out_dir, read_report):
    config = write_config({
        'base': {
            'command': 'evolve',
            'problem': {'preset': 'reaction_diffusion', 'grid': {'points': 8}, 'forcing': 'constant',
                        'horizon': 0.1},
            'steps': 10,
        },
        'axis': {'key': 'problem.strategy', 'values': ['algebraic', 'variational']},
    })
    call_command('sweep', config=config, out=str(out_dir))
    payload = read_report('aggregate')['payload']
    assert payload['max_disagreement'] <= 1e-5
    assert payload['order'] is None
