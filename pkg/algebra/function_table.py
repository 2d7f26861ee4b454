from typing import Callable, Sequence, Tuple

import numpy as np

from utils.encoding import decode_all, encode
from utils.errors import ArityError, ValidationError


class FunctionTable:
    def __init__(self, size: int, arity: int, values: Sequence[int]):
        """
        A total operation on {0, …, size-1} stored as a flat value array indexed
        by the TupleCode of its argument tuple.

        Args:
            size: the universe size
            arity: the number of arguments, may be 0
            values: size**arity universe elements
        """
        values = np.array(values, dtype=np.int64).reshape(-1)
        if arity < 0:
            raise ArityError(f'negative arity {arity}')
        if len(values) != size ** arity:
            raise ValidationError(f'table length mismatch: expected {size ** arity}, got {len(values)}')
        if len(values) and (values.min() < 0 or values.max() >= size):
            raise ValidationError(f'table entry out of range [0, {size})')

        self.size = size
        self.arity = arity
        self.values = values.astype(np.uint8)
        self.values.setflags(write=False)
        self._key = (size, arity, self.values.tobytes())

    @classmethod
    def projection(cls, size: int, arity: int, index: int) -> 'FunctionTable':
        """The projection onto coordinate index (0-based)."""
        if not 0 <= index < arity:
            raise ArityError(f'no coordinate {index} in arity {arity}')
        return cls(size, arity, decode_all(arity, size)[index])

    @classmethod
    def constant(cls, size: int, arity: int, value: int) -> 'FunctionTable':
        return cls(size, arity, np.full(size ** arity, value))

    @classmethod
    def from_function(cls, size: int, arity: int, function: Callable[..., int]) -> 'FunctionTable':
        """
        Tabulate a Python callable.

        Args:
            size: the universe size
            arity: the number of arguments
            function: called with arity integers, must return a universe element
        """
        coords = decode_all(arity, size)
        values = [function(*(int(c) for c in coords[:, code])) for code in range(size ** arity)]
        return cls(size, arity, values)

    def __call__(self, *args: int) -> int:
        if len(args) != self.arity:
            raise ArityError(f'expected {self.arity} arguments, got {len(args)}')
        return int(self.values[encode(args, self.size)])

    def __eq__(self, other) -> bool:
        return isinstance(other, FunctionTable) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f'FunctionTable(size={self.size}, arity={self.arity}, values={self.values.tolist()})'

    def grid(self) -> np.ndarray:
        """The table as an arity-dimensional array whose axis i is argument i."""
        return self.values.reshape((self.size,) * self.arity, order='F')

    def evaluate(self, columns: np.ndarray) -> np.ndarray:
        """
        Evaluate the operation on a batch of argument tuples.

        Args:
            columns: array of shape (arity, ...) where columns[i] holds argument i

        Returns:
            an array with the trailing shape of columns
        """
        columns = np.asarray(columns)
        if columns.shape[0] != self.arity:
            raise ArityError(f'expected {self.arity} argument arrays, got {columns.shape[0]}')
        codes = np.zeros(columns.shape[1:], dtype=np.int64)
        for i in range(self.arity - 1, -1, -1):
            codes = codes * self.size + columns[i]
        return self.values[codes]

    def compose(self, inner: Sequence['FunctionTable']) -> 'FunctionTable':
        """
        The composition self(inner[0], …, inner[arity-1]); all inner tables share one arity.
        """
        if len(inner) != self.arity:
            raise ArityError(f'expected {self.arity} inner operations, got {len(inner)}')
        arities = {g.arity for g in inner}
        if len(arities) != 1:
            raise ArityError('inner operations differ in arity')
        return FunctionTable(self.size, arities.pop(), self.evaluate(np.stack([g.values for g in inner])))

    def permute(self, order: Sequence[int]) -> 'FunctionTable':
        """
        Reorder the arguments: the result maps x to self(x[order[0]], …, x[order[-1]]).
        """
        coords = decode_all(self.arity, self.size)
        return FunctionTable(self.size, self.arity, self.evaluate(coords[list(order)]))

    def to_list(self) -> list:
        return self.values.tolist()


def apply_pointwise(f: FunctionTable, args: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """
    Evaluate f coordinatewise on f.arity tuples of a common length n.

    Returns:
        the n-tuple whose coordinate j is f(args[0][j], …, args[-1][j])
    """
    if len(args) != f.arity:
        raise ArityError(f'expected {f.arity} tuples, got {len(args)}')
    lengths = {len(t) for t in args}
    if len(lengths) > 1:
        raise ArityError(f'argument tuples differ in length: {sorted(lengths)}')
    if not args:
        raise ArityError('nullary evaluation has no coordinates')
    return tuple(int(v) for v in f.evaluate(np.array(args, dtype=np.int64)))
