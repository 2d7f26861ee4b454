from typing import Iterable, Iterator, Sequence, Tuple

import numpy as np

from utils.encoding import decode_codes, encode, encode_rows
from utils.errors import ArityError, PreconditionError, ValidationError


class RelationSet:
    def __init__(self, size: int, n: int, codes: Iterable[int], subuniverse: bool = False):
        """
        A set of n-tuples over {0, …, size-1}, stored as sorted TupleCodes.

        Args:
            size: the universe size
            n: the arity of every member
            codes: the member codes
            subuniverse: whether the set is known to be closed under the fundamental operations
        """
        codes = np.unique(np.fromiter((int(c) for c in codes), dtype=np.int64))
        if len(codes) and (codes[0] < 0 or codes[-1] >= size ** n):
            raise ValidationError(f'tuple code out of range for arity {n}')
        self.size = size
        self.n = n
        self.codes = codes
        self.codes.setflags(write=False)
        self.subuniverse = subuniverse

    @classmethod
    def from_tuples(cls, size: int, tuples: Iterable[Sequence[int]], n: int = None,
                    subuniverse: bool = False) -> 'RelationSet':
        tuples = [tuple(t) for t in tuples]
        if n is None:
            if not tuples:
                raise ArityError('cannot infer the arity of an empty relation')
            n = len(tuples[0])
        for t in tuples:
            if len(t) != n:
                raise ArityError(f'tuple {t} does not have arity {n}')
            if any(not 0 <= v < size for v in t):
                raise ValidationError(f'tuple {t} leaves the universe')
        return cls(size, n, (encode(t, size) for t in tuples), subuniverse)

    @classmethod
    def from_rows(cls, size: int, rows: np.ndarray, subuniverse: bool = False) -> 'RelationSet':
        rows = np.asarray(rows)
        return cls(size, rows.shape[1], encode_rows(rows, size), subuniverse)

    def rows(self) -> np.ndarray:
        """The members as an array of shape (len(self), n)."""
        return decode_codes(self.codes, self.n, self.size)

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        for row in self.rows():
            yield tuple(int(v) for v in row)

    def __contains__(self, t: Sequence[int]) -> bool:
        if len(t) != self.n:
            return False
        code = encode(t, self.size)
        index = np.searchsorted(self.codes, code)
        return bool(index < len(self.codes) and self.codes[index] == code)

    def contains_codes(self, codes: np.ndarray) -> np.ndarray:
        index = np.searchsorted(self.codes, codes)
        index = np.minimum(index, max(len(self.codes) - 1, 0))
        if not len(self.codes):
            return np.zeros(np.shape(codes), dtype=bool)
        return self.codes[index] == codes

    def __eq__(self, other) -> bool:
        return (isinstance(other, RelationSet) and (self.size, self.n) == (other.size, other.n)
                and np.array_equal(self.codes, other.codes))

    def __hash__(self) -> int:
        return hash((self.size, self.n, self.codes.tobytes()))

    def __repr__(self) -> str:
        return f'RelationSet(n={self.n}, members={list(self)})'

    def intersection(self, other: 'RelationSet') -> 'RelationSet':
        if (self.size, self.n) != (other.size, other.n):
            raise ArityError('relations differ in arity')
        return RelationSet(self.size, self.n, np.intersect1d(self.codes, other.codes),
                           self.subuniverse and other.subuniverse)

    def issubset(self, other: 'RelationSet') -> bool:
        return (self.size, self.n) == (other.size, other.n) and bool(np.all(other.contains_codes(self.codes)))


class PartialFunction:
    def __init__(self, domain: RelationSet, values: Sequence[int]):
        """
        A partial operation on a non-empty domain of k-tuples.

        Args:
            domain: the domain, of arity k
            values: the value at each domain member, in TupleCode order
        """
        values = np.asarray(values, dtype=np.int64).reshape(-1)
        if not len(domain):
            raise PreconditionError('partial function domains must be non-empty')
        if len(values) != len(domain):
            raise ValidationError(f'{len(values)} values for a domain of {len(domain)} points')
        if values.min() < 0 or values.max() >= domain.size:
            raise ValidationError(f'partial function value out of range [0, {domain.size})')
        self.domain = domain
        self.values = values.astype(np.uint8)
        self.values.setflags(write=False)

    @property
    def arity(self) -> int:
        return self.domain.n

    @property
    def size(self) -> int:
        return self.domain.size

    @classmethod
    def restriction(cls, table, domain: RelationSet) -> 'PartialFunction':
        """The restriction of a FunctionTable to domain."""
        if table.arity != domain.n:
            raise ArityError(f'table arity {table.arity} differs from domain arity {domain.n}')
        return cls(domain, table.values[domain.codes])

    def __call__(self, *args: int) -> int:
        code = encode(args, self.size)
        index = np.searchsorted(self.domain.codes, code)
        if index >= len(self.domain) or self.domain.codes[index] != code:
            raise KeyError(args)
        return int(self.values[index])

    def lookup(self) -> np.ndarray:
        """A dense array over all size**arity codes holding the value, or -1 outside the domain."""
        dense = np.full(self.size ** self.arity, -1, dtype=np.int64)
        dense[self.domain.codes] = self.values
        return dense

    def agrees_with(self, table) -> bool:
        return table.arity == self.arity and np.array_equal(table.values[self.domain.codes], self.values)

    def restrict(self, domain: RelationSet) -> 'PartialFunction':
        if not domain.issubset(self.domain):
            raise ValidationError('restriction domain is not a subset of the domain')
        index = np.searchsorted(self.domain.codes, domain.codes)
        return PartialFunction(domain, self.values[index])

    def items(self) -> Iterator[Tuple[Tuple[int, ...], int]]:
        for t, v in zip(self.domain, self.values):
            yield t, int(v)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PartialFunction) and self.domain == other.domain
                and np.array_equal(self.values, other.values))

    def __hash__(self) -> int:
        return hash((self.domain, self.values.tobytes()))

    def __repr__(self) -> str:
        return f'PartialFunction({dict(self.items())})'
