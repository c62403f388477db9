"""
Batch driver: one run per axis value plus an aggregate CSV.

Usage:
    python manage.py sweep --config experiments/steps_sweep.json --workers 4
"""
from experiments.management.base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Sweep a base experiment over a parameter axis'
    command_name = 'sweep'
