from dataclasses import dataclass, field
from pathlib import Path

from django import forms
from django.conf import settings

from experiments.config import spec_references, tolerances

COMMANDS = ['resolvent', 'vsum', 'evolve', 'diagnose', 'sweep']
DIAGNOSE_SUBKINDS = ['commutation', 'acute-angle', 'boundedness']
FORMATS = ['csv', 'json']


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    document: dict
    subkind: str = ''
    seed: int = 0
    out: Path = Path('reports')
    format: str = 'json'
    workers: int = 1
    base_dir: Path = Path('.')
    overrides: tuple = field(default_factory=tuple)

    def to_dict(self):
        return {
            'command': self.command,
            'subkind': self.subkind,
            'seed': self.seed,
            'format': self.format,
            'document': self.document,
        }


class ExperimentConfigForm(forms.Form):
    command = forms.ChoiceField(choices=[(c, c) for c in COMMANDS])
    subkind = forms.CharField(required=False)
    seed = forms.IntegerField(required=False)
    out = forms.CharField(required=False)
    format = forms.ChoiceField(choices=[(f, f) for f in FORMATS], required=False)
    workers = forms.IntegerField(required=False, min_value=1)
    document = forms.JSONField()

    def __init__(self, *args, **kwargs):
        self.base_dir = Path(kwargs.pop('base_dir', '.'))
        super().__init__(*args, **kwargs)

    def clean_document(self):
        document = self.cleaned_data['document']
        if not isinstance(document, dict):
            raise forms.ValidationError('The experiment config must be a JSON object.')
        return document

    def clean_seed(self):
        seed = self.cleaned_data.get('seed')
        return 0 if seed is None else seed

    def clean(self):
        cleaned_data = super().clean()
        command = cleaned_data.get('command')
        document = cleaned_data.get('document')
        if command is None or document is None:
            return cleaned_data

        subkind = cleaned_data.get('subkind') or ''
        if command == 'diagnose' and subkind not in DIAGNOSE_SUBKINDS:
            self.add_error('subkind', f'Choose one of {", ".join(DIAGNOSE_SUBKINDS)}.')

        for reference in spec_references(document):
            path = Path(reference)
            if not path.is_absolute():
                path = self.base_dir / path
            if not path.exists():
                self.add_error('document', f'Referenced spec file {reference} does not exist.')

        for key, value in tolerances(document):
            if value is None:
                continue
            if not isinstance(value, (int, float)) or isinstance(value, bool) or value <= 0:
                self.add_error('document', f'Tolerance {key} must be a positive number, got {value!r}.')

        if command == 'sweep':
            axis = document.get('axis') or {}
            if not axis.get('key') or not axis.get('values'):
                self.add_error('document', 'A sweep needs an axis with a key and at least one value.')
            base = document.get('base') or {}
            if base.get('command') not in ('resolvent', 'vsum', 'evolve', 'diagnose'):
                self.add_error('document', 'A sweep needs a base config with a runnable command.')
        return cleaned_data

    def to_config(self, overrides=()):
        data = self.cleaned_data
        out = data.get('out') or settings.VARSUM['OUTPUT_DIR']
        return ExperimentConfig(
            command=data['command'],
            document=data['document'],
            subkind=data.get('subkind') or '',
            seed=data['seed'],
            out=Path(out),
            format=data.get('format') or 'json',
            workers=data.get('workers') or settings.VARSUM['WORKERS'],
            base_dir=self.base_dir,
            overrides=tuple(overrides),
        )
