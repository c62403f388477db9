"""
Operator-spec documents.

A document is a JSON object with a ``kind`` and a variant payload::

    {"kind": "linear", "dimension": 2, "entries": [[0, 0, 1.0], [1, 1, 3.0]]}
    {"kind": "linear", "grid": {"dimension": 1, "points": 16}}          # Dirichlet Laplacian
    {"kind": "linear", "dimension": 3, "matrix": "identity", "scale": 2.0}
    {"kind": "separable", "dimension": 16, "graph": "cubic"}
    {"kind": "separable", "dimension": 1,
     "graph": {"piecewise": [[0.0, -1.0, 1.0]], "left_slope": 0.0, "right_slope": 0.0}}
    {"kind": "separable", "dimension": 4, "graph": {"normal_cone": [0.0, "inf"]}}
    {"kind": "subdifferential", "dimension": 1, "function": "abs"}
    {"kind": "subdifferential", "dimension": 1,
     "function": {"sum": ["half_square", "indicator_nonneg"]}}
    {"kind": "subdifferential", "function": {"quadratic": {"grid": {"points": 8}}}}
    {"kind": "form_sum", "grid": {"dimension": 1, "points": 32}, "potential": {"exponent": 0.7}}
    {"kind": "nonsymmetric_linear", "dimension": 2, "entries": [...], "skew": [[0, 1], [-1, 0]]}

Graph names are the reaction presets plus ``identity``; function names are
the convex presets. A ``"grid"`` key may replace ``"dimension"`` anywhere.
"""
import logging
from pathlib import Path

import numpy as np

from catalog.grids import GridSpec, build_laplacian
from catalog.potentials import PotentialSpec, build_form_sum
from catalog.reactions import REACTION_PRESETS, make_reaction_graph
from core import serialization
from core.exceptions import ConfigurationError
from linalg.matrices import SymSparseMatrix
from monotone import graphs
from monotone.functions import FUNCTION_PRESETS, QuadraticFunction, SumFunction, convex_preset
from monotone.specs import FormSumSchrodinger, LinearSpec, NonsymmetricLinear, SeparableSpec, SubdifferentialSpec

logger = logging.getLogger(__name__)

SPEC_KINDS = ('linear', 'separable', 'subdifferential', 'form_sum', 'nonsymmetric_linear')


def parse_grid(document):
    if isinstance(document, GridSpec):
        return document
    try:
        return GridSpec(**document)
    except TypeError as exc:
        raise ConfigurationError(f'bad grid document {document!r}: {exc}') from None


def _dimension(document):
    if 'grid' in document:
        return parse_grid(document['grid']).unknowns
    if 'dimension' not in document:
        raise ConfigurationError(f'{document.get("kind", "spec")} document needs "dimension" or "grid"')
    return int(document['dimension'])


def _matrix(document, dimension=None):
    if 'grid' in document:
        return build_laplacian(parse_grid(document['grid']))
    dimension = dimension or _dimension(document)
    named = document.get('matrix')
    if named == 'identity':
        return SymSparseMatrix.identity(dimension, float(document.get('scale', 1.0)))
    if named == 'zero':
        return SymSparseMatrix.zeros(dimension)
    if named is not None:
        raise ConfigurationError(f'unknown matrix name {named!r}')
    if 'entries' not in document:
        raise ConfigurationError('linear document needs "entries", "matrix" or "grid"')
    return SymSparseMatrix(dimension, document['entries'])


def parse_graph(document):
    if isinstance(document, str):
        if document == 'identity':
            return graphs.identity_graph()
        return make_reaction_graph(document)
    if 'piecewise' in document:
        return graphs.PiecewiseLinearGraph(
            document.get('name', 'piecewise'),
            document['piecewise'],
            float(document.get('left_slope', 0.0)),
            float(document.get('right_slope', 0.0)),
        )
    if 'normal_cone' in document:
        a, b = (float(v) for v in document['normal_cone'])
        return graphs.NormalConeGraph(a, b)
    raise ConfigurationError(f'cannot read graph document {document!r}')


def graph_document(graph):
    if graph.name in REACTION_PRESETS or graph.name == 'identity':
        return graph.name
    if isinstance(graph, graphs.PiecewiseLinearGraph):
        return {
            'name': graph.name,
            'piecewise': [list(point) for point in graph.points()],
            'left_slope': graph.left_slope,
            'right_slope': graph.right_slope,
        }
    if isinstance(graph, graphs.NormalConeGraph):
        return {'normal_cone': list(graph.domain)}
    raise ConfigurationError(f'graph {graph.name} has no document form')


def parse_function(document):
    if isinstance(document, str):
        return convex_preset(document)
    if 'preset' in document:
        return convex_preset(document['preset'])
    if 'sum' in document:
        parts = [parse_function(part) for part in document['sum']]
        if len(parts) < 2:
            raise ConfigurationError('a function sum needs at least two parts')
        total = parts[0]
        for part in parts[1:]:
            total = SumFunction(total, part)
        return total
    if 'quadratic' in document:
        return QuadraticFunction(_matrix(document['quadratic']))
    raise ConfigurationError(
        f'cannot read function document {document!r}; presets are {sorted(FUNCTION_PRESETS)}'
    )


def load_spec(document):
    """Build an operator spec from a parsed document"""
    if not isinstance(document, dict):
        raise ConfigurationError('an operator spec document must be a JSON object')
    try:
        return _load(document)
    except (KeyError, TypeError) as exc:
        raise ConfigurationError(f'malformed {document.get("kind")} document: {exc!r}') from None


def _load(document):
    kind = document.get('kind')
    if kind == 'linear':
        return LinearSpec(_matrix(document))
    if kind == 'separable':
        return SeparableSpec(parse_graph(document['graph']), _dimension(document))
    if kind == 'subdifferential':
        function = parse_function(document['function'])
        dimension = function.dimension or _dimension(document)
        return SubdifferentialSpec(function, dimension)
    if kind == 'form_sum':
        if 'grid' in document:
            return build_form_sum(parse_grid(document['grid']), PotentialSpec(**document.get('potential', {})))
        dimension = _dimension(document)
        laplacian = SymSparseMatrix(dimension, document['laplacian'])
        return FormSumSchrodinger(laplacian, np.asarray(document['potential'], dtype=float))
    if kind == 'nonsymmetric_linear':
        return NonsymmetricLinear(_matrix(document), np.asarray(document['skew'], dtype=float))
    raise ConfigurationError(f'unknown spec kind {kind!r}; choose from {SPEC_KINDS}')


def dump_spec(spec):
    return serialization.dumps(spec.to_document())


def load_spec_file(path):
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f'spec file {path} does not exist')
    document = serialization.loads(path.read_text())
    logger.debug('loaded spec file=%s kind=%s', path, document.get('kind'))
    return load_spec(document)


def resolve_spec(reference, base_dir=None):
    """An inline document, or a path (relative to ``base_dir``) to one"""
    if isinstance(reference, str):
        path = Path(reference)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        return load_spec_file(path)
    return load_spec(reference)

