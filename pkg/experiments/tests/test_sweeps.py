import numpy as np
import pytest

from experiments.runner import Outcome, aggregate

BASE = {'command': 'evolve'}
AXIS = {'key': 'problem.strategy', 'values': ['algebraic', 'variational']}


def _outcome(states):
    states = np.asarray(states, dtype=float)
    return Outcome({}, summary=states[-1], states=states)


def test_strategy_sweep_compares_every_time_node():
    # same final state, different path to it
    first = _outcome([[0.0], [0.5], [1.0]])
    second = _outcome([[0.0], [0.2], [1.0]])
    payload = aggregate(BASE, AXIS, [first, second]).payload
    assert payload['points'][1]['difference'] == pytest.approx(0.3)
    assert payload['max_disagreement'] == pytest.approx(0.3)


def test_mismatched_time_grids_fall_back_to_final_states():
    first = _outcome([[0.0], [0.5], [1.0]])
    second = _outcome([[0.0], [0.75]])
    payload = aggregate(BASE, AXIS, [first, second]).payload
    assert payload['max_disagreement'] == pytest.approx(0.25)


def test_step_axis_compares_final_states_against_the_exact_value():
    base = {'command': 'evolve', 'exact': [1.0]}
    axis = {'key': 'steps', 'values': [2, 4]}
    outcomes = [_outcome([[0.0], [0.5], [0.8]]), _outcome([[0.0], [0.3], [0.6], [0.8], [0.9]])]
    payload = aggregate(base, axis, outcomes).payload
    assert [row['difference'] for row in payload['points']] == pytest.approx([0.2, 0.1])
    assert payload['order'] is not None
