from typing import List, NamedTuple, Sequence, Tuple

from algebra.function_table import FunctionTable
from utils.errors import AlgebraFormatError


class Operation(NamedTuple):
    name: str
    arity: int
    table: FunctionTable


class FiniteAlgebra:
    def __init__(self, size: int, ops: Sequence[Operation], name: str = ''):
        """
        A finite algebra given by operation tables over {0, …, size-1}.
        Constants are modelled as constant unary operations.

        Args:
            size: the universe size
            ops: the fundamental operations, in signature order
            name: an optional label used in reports
        """
        if size < 1:
            raise AlgebraFormatError(f'universe size must be positive, got {size}')
        names = set()
        for index, op in enumerate(ops):
            if op.arity < 1:
                raise AlgebraFormatError(f'operation {op.name!r} (index {index}) is nullary')
            if op.table.arity != op.arity or op.table.size != size:
                raise AlgebraFormatError(f'operation {op.name!r} (index {index}) has a table of the wrong shape')
            if op.name in names:
                raise AlgebraFormatError(f'operation {op.name!r} (index {index}) is declared twice')
            names.add(op.name)

        self.size = size
        self.ops: Tuple[Operation, ...] = tuple(ops)
        self.name = name
        self._key = (size, tuple((op.name, op.table) for op in self.ops))

    @property
    def signature(self) -> List[Tuple[str, int]]:
        return [(op.name, op.arity) for op in self.ops]

    @property
    def max_arity(self) -> int:
        return max((op.arity for op in self.ops), default=0)

    def op(self, name: str) -> FunctionTable:
        for op in self.ops:
            if op.name == name:
                return op.table
        raise KeyError(name)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteAlgebra) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        label = self.name or 'FiniteAlgebra'
        return f'{label}(size={self.size}, signature={self.signature})'
