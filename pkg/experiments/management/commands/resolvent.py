"""
Resolvent, Yosida approximation and (for subdifferentials) Moreau envelope
of one operator at one point.

Usage:
    python manage.py resolvent --config experiments/resolvent.json
    python manage.py resolvent --config cfg.json --set lambda=0.5 --set w=[1,2]
"""
from experiments.management.base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Evaluate J_lambda and T_lambda of an operator spec'
    command_name = 'resolvent'
