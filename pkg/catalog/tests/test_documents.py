import json

import numpy as np
import pytest

from catalog.documents import dump_spec, load_spec, load_spec_file, resolve_spec
from core import serialization
from core.exceptions import ConfigurationError
from monotone.specs import FormSumSchrodinger, LinearSpec, NonsymmetricLinear, SeparableSpec, SubdifferentialSpec

DOCUMENTS = [
    {'kind': 'linear', 'dimension': 2, 'entries': [[0, 0, 1.0], [1, 1, 3.0]]},
    {'kind': 'linear', 'grid': {'dimension': 1, 'points': 6}},
    {'kind': 'linear', 'dimension': 3, 'matrix': 'identity', 'scale': 2.0},
    {'kind': 'separable', 'dimension': 4, 'graph': 'cubic'},
    {'kind': 'separable', 'dimension': 2,
     'graph': {'piecewise': [[0.0, -1.0, 1.0]], 'left_slope': 0.0, 'right_slope': 0.0}},
    {'kind': 'separable', 'dimension': 3, 'graph': {'normal_cone': [0.0, 'inf']}},
    {'kind': 'subdifferential', 'dimension': 2, 'function': 'abs'},
    {'kind': 'subdifferential', 'dimension': 2, 'function': {'sum': ['half_square', 'indicator_nonneg']}},
    {'kind': 'subdifferential', 'function': {'quadratic': {'grid': {'points': 4}}}},
    {'kind': 'form_sum', 'grid': {'dimension': 1, 'points': 8}, 'potential': {'exponent': 0.7}},
    {'kind': 'nonsymmetric_linear', 'dimension': 2, 'matrix': 'zero', 'skew': [[0, 1], [-1, 0]]},
]

KINDS = [LinearSpec, LinearSpec, LinearSpec, SeparableSpec, SeparableSpec, SeparableSpec,
         SubdifferentialSpec, SubdifferentialSpec, SubdifferentialSpec, FormSumSchrodinger, NonsymmetricLinear]


@pytest.mark.parametrize('document, kind', zip(DOCUMENTS, KINDS), ids=lambda value: getattr(value, '__name__', None))
def test_documents_load(document, kind):
    spec = load_spec(document)
    assert isinstance(spec, kind)
    w = np.linspace(-2.0, 2.0, spec.dimension)
    assert np.all(np.isfinite(spec.resolvent(0.5, w)))


@pytest.mark.parametrize('document', DOCUMENTS[:10])
def test_dumped_documents_load_to_the_same_operator(document):
    spec = load_spec(document)
    again = load_spec(serialization.loads(dump_spec(spec)))
    w = np.linspace(-2.0, 2.0, spec.dimension)
    assert np.allclose(spec.resolvent(0.5, w), again.resolvent(0.5, w), atol=1e-12)


@pytest.mark.parametrize('document', [
    [1, 2],
    {'kind': 'quadratic'},
    {'kind': 'linear'},
    {'kind': 'linear', 'dimension': 2, 'matrix': 'hilbert'},
    {'kind': 'separable', 'dimension': 2},
    {'kind': 'separable', 'dimension': 2, 'graph': 'quintic'},
    {'kind': 'subdifferential', 'dimension': 1, 'function': {'sum': ['abs']}},
    {'kind': 'form_sum', 'grid': {'dimension': 1, 'points': 8, 'spacing': 0.1}},
])
def test_malformed_documents(document):
    with pytest.raises(ConfigurationError):
        load_spec(document)


def test_spec_files_resolve_against_a_base_directory(tmp_path):
    (tmp_path / 'A.json').write_text(json.dumps(DOCUMENTS[3]))
    spec = resolve_spec('A.json', base_dir=tmp_path)
    assert isinstance(spec, SeparableSpec)
    assert isinstance(resolve_spec(DOCUMENTS[0]), LinearSpec)
    with pytest.raises(ConfigurationError):
        load_spec_file(tmp_path / 'missing.json')
