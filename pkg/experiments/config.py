"""
Experiment configuration documents: one JSON object per experiment, with
``--set a.b.c=value`` overrides applied by dotted path.
"""
import copy
import json
import logging
from pathlib import Path

from core import serialization
from core.exceptions import ConfigurationError

logger = logging.getLogger(__name__)


def load_config(path):
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f'config file {path} does not exist')
    try:
        document = serialization.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f'config file {path} is not valid JSON: {exc}') from None
    if not isinstance(document, dict):
        raise ConfigurationError(f'config file {path} must hold a JSON object')
    logger.debug('loaded config file=%s keys=%s', path, sorted(document))
    return document


def parse_value(text):
    """JSON when it parses, otherwise the raw string"""
    try:
        return serialization.loads(text)
    except json.JSONDecodeError:
        return text


def set_dotted(document, dotted, value):
    """Return a copy of ``document`` with the leaf at ``dotted`` replaced"""
    keys = dotted.split('.')
    if not all(keys):
        raise ConfigurationError(f'bad override path {dotted!r}')
    updated = copy.deepcopy(document)
    node = updated
    for key in keys[:-1]:
        child = node.get(key)
        if child is None:
            child = node[key] = {}
        if not isinstance(child, dict):
            raise ConfigurationError(f'cannot override {dotted!r}: {key!r} is not an object')
        node = child
    node[keys[-1]] = value
    return updated


def apply_overrides(document, overrides):
    """Apply ``key=value`` strings in order"""
    for item in overrides or ():
        if '=' not in item:
            raise ConfigurationError(f'override {item!r} must look like a.b.c=value')
        dotted, text = item.split('=', 1)
        document = set_dotted(document, dotted.strip(), parse_value(text))
    return document


def get_dotted(document, dotted, default=None):
    node = document
    for key in dotted.split('.'):
        if not isinstance(node, dict) or key not in node:
            return default
        node = node[key]
    return node


SPEC_KEYS = ('A', 'B')
NESTED_KEYS = ('problem', 'base')


def spec_references(document):
    """Operator-spec file references (string values of ``A``/``B``) anywhere a run reads them"""
    for key in SPEC_KEYS:
        if isinstance(document.get(key), str):
            yield document[key]
    for key in NESTED_KEYS:
        if isinstance(document.get(key), dict):
            yield from spec_references(document[key])


def tolerances(document, prefix=''):
    """``(dotted key, value)`` for every ``tol``-like leaf"""
    for key, value in document.items():
        dotted = f'{prefix}{key}'
        if isinstance(value, dict):
            yield from tolerances(value, f'{dotted}.')
        elif key == 'tol' or key.endswith('_tol'):
            yield dotted, value
