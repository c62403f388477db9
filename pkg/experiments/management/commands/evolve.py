"""
Implicit Euler solve of u' + Au + Bu = f.

Usage:
    python manage.py evolve --config experiments/evolve.json --set steps=400
"""
from experiments.management.base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Integrate an evolution problem and dump the trajectory'
    command_name = 'evolve'
