"""
Trajectory dumps: CSV with one row per time node, and the metadata that the
evolve report embeds beside it.
"""
from core import serialization


def trajectory_csv(trajectory):
    header = ['t'] + [f'u_{i}' for i in range(1, trajectory.states.shape[1] + 1)]
    rows = [[float(t), *map(float, state)] for t, state in zip(trajectory.times, trajectory.states)]
    return serialization.rows_to_csv(header, rows)


def trajectory_metadata(trajectory, problem=None):
    data = {
        'tau': trajectory.step,
        'steps': trajectory.steps,
        'strategy': trajectory.strategy,
        'tolerance': trajectory.tolerance,
        'max_residual': float(trajectory.residuals.max()) if len(trajectory.residuals) else 0.0,
        'final': trajectory.final,
    }
    if problem is not None:
        data['problem'] = problem.to_dict()
    return data

