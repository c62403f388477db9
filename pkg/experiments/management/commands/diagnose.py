"""
Sampled diagnostics on an operator pair.

Usage:
    python manage.py diagnose commutation --config pair.json
    python manage.py diagnose acute-angle --config pair.json --seed 3
    python manage.py diagnose boundedness --config pair.json
"""
from experiments.forms import DIAGNOSE_SUBKINDS
from experiments.management.base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Run the commutation, acute-angle or boundedness diagnostic'
    command_name = 'diagnose'

    def add_arguments(self, parser):
        parser.add_argument('subkind', choices=DIAGNOSE_SUBKINDS)
        super().add_arguments(parser)

    def get_subkind(self, options):
        return options['subkind']
