"""
Shared plumbing of the experiment commands: config loading, validation,
the run ledger and exit statuses.
"""
import logging
import sys
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from core.exceptions import VarsumError
from experiments import runner
from experiments.config import apply_overrides, load_config
from experiments.forms import FORMATS, ExperimentConfigForm
from experiments.models import ExperimentRun

logger = logging.getLogger(__name__)


class ExperimentCommand(BaseCommand):
    command_name = None

    def add_arguments(self, parser):
        parser.add_argument('--config', help='Experiment config (JSON file)')
        parser.add_argument('--out', help='Report directory (default: VARSUM_OUTPUT_DIR)')
        parser.add_argument('--format', choices=FORMATS, help='Report format (default: json)')
        parser.add_argument('--seed', type=int, help='Random seed (default: 0)')
        parser.add_argument('--workers', type=int, help='Parallel sweep points')
        parser.add_argument(
            '--set',
            action='append',
            default=[],
            metavar='KEY=VALUE',
            help='Override a config leaf by dotted path; may be repeated',
        )

    def get_subkind(self, options):
        return ''

    def build_config(self, options):
        config_path = options.get('config')
        document = load_config(config_path) if config_path else {}
        document = apply_overrides(document, options.get('set'))
        base_dir = Path(config_path).resolve().parent if config_path else Path.cwd()

        seed = options.get('seed')
        form = ExperimentConfigForm(
            data={
                'command': self.command_name,
                'subkind': self.get_subkind(options),
                'seed': document.get('seed') if seed is None else seed,
                'out': options.get('out') or '',
                'format': options.get('format') or document.get('format') or '',
                'workers': options.get('workers') or document.get('workers'),
                'document': document,
            },
            base_dir=base_dir,
        )
        if not form.is_valid():
            errors = '; '.join(
                f'{name}: {" ".join(messages)}' for name, messages in form.errors.items()
            )
            self._record(self.command_name, options, document, runner.STATUS_ERROR, message=errors)
            raise CommandError(f'Invalid experiment config: {errors}', returncode=1)
        return form.to_config(options.get('set'))

    def handle(self, *args, **options):
        try:
            config = self.build_config(options)
        except VarsumError as exc:
            self._record(self.command_name, options, {}, runner.STATUS_ERROR, message=str(exc))
            raise CommandError(f'{type(exc).__name__}: {exc}', returncode=1) from exc
        try:
            result = runner.run(config)
        except VarsumError as exc:
            paths = runner.write_error_report(config, exc)
            self._record(
                config.command, options, config.document, runner.STATUS_ERROR,
                seed=config.seed, paths=paths, message=str(exc),
            )
            logger.error('command=%s failed: %s', config.command, exc)
            raise CommandError(f'{type(exc).__name__}: {exc}', returncode=1) from exc

        self._record(
            config.command, options, config.document, result.status,
            seed=config.seed, paths=result.paths, digest=result.digest,
        )
        for path in result.paths:
            self.stdout.write(f'  - {path}')
        if result.status == runner.STATUS_FINDING:
            self.stdout.write(self.style.WARNING(f'Finding reported (digest {result.digest[:12]}).'))
            sys.exit(runner.STATUS_FINDING)
        self.stdout.write(self.style.SUCCESS(f'Completed {config.command} (digest {result.digest[:12]}).'))

    def _record(self, command, options, document, status, seed=None, paths=(), digest='', message=''):
        if not settings.VARSUM['RECORD_RUNS']:
            return None
        return ExperimentRun.objects.create(
            command=command,
            subkind=self.get_subkind(options),
            seed=seed if seed is not None else (options.get('seed') or 0),
            status=status,
            payload_digest=digest,
            report_paths=list(paths),
            config=document,
            message=message,
        )
