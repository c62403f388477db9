"""
Deterministic report serialization.

Floats are written with 17 significant digits so that every value read back
is bit-identical to the one written. Keys are sorted; no timestamps are ever
produced here.
"""
import csv
import io
import json
import math

import numpy as np


def format_float(value):
    value = float(value)
    if math.isnan(value):
        return '"nan"'
    if math.isinf(value):
        return '"inf"' if value > 0 else '"-inf"'
    text = format(value, '.17g')
    if text.lstrip('-').isdigit():
        text += '.0'
    return text


def _encode(obj, indent, level):
    pad = ' ' * (indent * (level + 1))
    close = ' ' * (indent * level)

    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return '{}'
        items = [
            f'{pad}{json.dumps(str(key))}: {_encode(obj[key], indent, level + 1)}'
            for key in sorted(obj, key=str)
        ]
        return '{\n' + ',\n'.join(items) + '\n' + close + '}'
    if isinstance(obj, (list, tuple)):
        if not obj:
            return '[]'
        if all(isinstance(item, (int, float, np.integer, np.floating)) for item in obj):
            return '[' + ', '.join(_encode(item, indent, level + 1) for item in obj) + ']'
        items = [f'{pad}{_encode(item, indent, level + 1)}' for item in obj]
        return '[\n' + ',\n'.join(items) + '\n' + close + ']'
    if hasattr(obj, 'to_dict'):
        return _encode(obj.to_dict(), indent, level)
    raise TypeError(f'Cannot serialize {type(obj).__name__}')


def dumps(obj, indent=2):
    """Serialize ``obj`` to JSON text with exact floats and sorted keys"""
    return _encode(obj, indent, 0) + '\n'


def loads(text):
    def _restore(value):
        if isinstance(value, str) and value in ('nan', 'inf', '-inf'):
            return float(value)
        if isinstance(value, list):
            return [_restore(item) for item in value]
        if isinstance(value, dict):
            return {key: _restore(item) for key, item in value.items()}
        return value
    return _restore(json.loads(text))


def rows_to_csv(header, rows):
    """Render rows as CSV text; floats use 17 significant digits"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([
            format(float(cell), '.17g') if isinstance(cell, (float, np.floating)) else cell
            for cell in row
        ])
    return buffer.getvalue()
