import json

import pytest


@pytest.fixture
def write_config(tmp_path):
    """Write a config document (and any extra files) into a scratch directory"""
    def _write(document, name='config.json', **extra):
        for filename, content in extra.items():
            (tmp_path / f'{filename}.json').write_text(json.dumps(content))
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return str(path)
    return _write


@pytest.fixture
def out_dir(tmp_path):
    return tmp_path / 'reports'


@pytest.fixture
def read_report(out_dir):
    def _read(name):
        return json.loads((out_dir / f'{name}.json').read_text())
    return _read
