import pytest

from core.exceptions import ConfigurationError
from experiments.config import (
    apply_overrides,
    get_dotted,
    load_config,
    parse_value,
    set_dotted,
    spec_references,
    tolerances,
)


def test_parse_value_prefers_json():
    assert parse_value('3') == 3
    assert parse_value('[1.0, 2.0]') == [1.0, 2.0]
    assert parse_value('inf') == 'inf'
    assert parse_value('cubic') == 'cubic'


def test_set_dotted_copies_and_creates():
    document = {'problem': {'grid': {'points': 8}}}
    updated = set_dotted(document, 'problem.grid.points', 16)
    assert document['problem']['grid']['points'] == 8
    assert updated['problem']['grid']['points'] == 16
    assert set_dotted({}, 'a.b', 1) == {'a': {'b': 1}}
    with pytest.raises(ConfigurationError):
        set_dotted({'a': 1}, 'a.b', 2)
    with pytest.raises(ConfigurationError):
        set_dotted({}, 'a..b', 2)


def test_overrides_apply_in_order():
    document = apply_overrides({'w': 1}, ['w=2', 'path.label=alternate', 'w=[3.0]'])
    assert document == {'w': [3.0], 'path': {'label': 'alternate'}}
    assert get_dotted(document, 'path.label') == 'alternate'
    assert get_dotted(document, 'path.depth', 20) == 20
    with pytest.raises(ConfigurationError):
        apply_overrides({}, ['steps'])


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigurationError):
        load_config(tmp_path / 'missing.json')
    broken = tmp_path / 'broken.json'
    broken.write_text('{"A": ')
    with pytest.raises(ConfigurationError):
        load_config(broken)
    listed = tmp_path / 'list.json'
    listed.write_text('[1, 2]')
    with pytest.raises(ConfigurationError):
        load_config(listed)


def test_spec_references_and_tolerances():
    document = {
        'A': 'a.json',
        'B': {'kind': 'linear'},
        'tol': 1e-6,
        'base': {'command': 'vsum', 'A': 'b.json', 'inner_tol': 1e-9},
    }
    assert list(spec_references(document)) == ['a.json', 'b.json']
    assert dict(tolerances(document)) == {'tol': 1e-6, 'base.inner_tol': 1e-9}
