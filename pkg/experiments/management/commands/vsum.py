"""
Variational-sum resolvent along a filter path.

Usage:
    python manage.py vsum --config experiments/vsum.json --format csv
"""
from experiments.management.base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Solve the regularized sum equations along a filter path and report the limit'
    command_name = 'vsum'
