"""
Algebra documents: JSON objects with fields `size` and `ops`, where every op is
{"name", "arity", "table"} and `table` lists size**arity entries in TupleCode order.
"""
import json
from pathlib import Path
from typing import Union

from algebra.finite_algebra import FiniteAlgebra, Operation
from algebra.function_table import FunctionTable
from utils.errors import AlgebraFormatError


def load_algebra(text: str) -> FiniteAlgebra:
    """
    Parse and validate an algebra document.

    Args:
        text: the document

    Returns:
        the algebra it describes
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraFormatError(f'malformed algebra document: {e}')
    if not isinstance(document, dict):
        raise AlgebraFormatError('malformed algebra document: expected an object')

    size = document.get('size')
    if not isinstance(size, int) or isinstance(size, bool) or size < 1:
        raise AlgebraFormatError(f'malformed algebra document: size must be a positive integer, got {size!r}')
    ops = document.get('ops')
    if not isinstance(ops, list):
        raise AlgebraFormatError('malformed algebra document: ops must be a list')

    operations = []
    for index, op in enumerate(ops):
        if not isinstance(op, dict) or not {'name', 'arity', 'table'} <= set(op):
            raise AlgebraFormatError(f'operation at index {index} needs name, arity and table')
        name, arity, table = op['name'], op['arity'], op['table']
        if not isinstance(arity, int) or isinstance(arity, bool):
            raise AlgebraFormatError(f'operation {name!r} (index {index}) has a non-integer arity')
        if arity < 1:
            raise AlgebraFormatError(f'operation {name!r} (index {index}) is nullary')
        if not isinstance(table, list):
            raise AlgebraFormatError(f'operation {name!r} (index {index}) has no table list')
        if len(table) != size ** arity:
            raise AlgebraFormatError(f'operation {name!r} (index {index}): table length mismatch, '
                                     f'expected {size ** arity}, got {len(table)}')
        for position, entry in enumerate(table):
            if not isinstance(entry, int) or isinstance(entry, bool) or not 0 <= entry < size:
                raise AlgebraFormatError(f'operation {name!r} (index {index}): entry {entry!r} '
                                         f'at position {position} is out of range')
        operations.append(Operation(str(name), arity, FunctionTable(size, arity, table)))

    return FiniteAlgebra(size, operations, name=str(document.get('name', '')))


def load_algebra_file(path: Union[str, Path]) -> FiniteAlgebra:
    return load_algebra(Path(path).read_text())


def dump_algebra(alg: FiniteAlgebra) -> str:
    document = {
        'name': alg.name,
        'size': alg.size,
        'ops': [{'name': op.name, 'arity': op.arity, 'table': op.table.to_list()} for op in alg.ops],
    }
    return json.dumps(document, indent=2) + '\n'
