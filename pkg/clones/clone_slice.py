import logging
from functools import lru_cache
from typing import Dict, List, Optional

import numpy as np

from algebra.finite_algebra import FiniteAlgebra
from algebra.function_table import FunctionTable
from utils.closure import close_rows
from utils.encoding import decode_all
from utils.errors import ValidationError

logger = logging.getLogger(__name__)

TERM = 'term'
POLYNOMIAL = 'polynomial'
KINDS = (TERM, POLYNOMIAL)


class CloneSlice:
    def __init__(self, size: int, arity: int, kind: str, tables: np.ndarray):
        """
        The k-ary part of the term or polynomial clone of an algebra.

        Args:
            size: the universe size
            arity: k
            kind: TERM or POLYNOMIAL
            tables: the member value arrays, one per row, sorted lexicographically
        """
        self.size = size
        self.arity = arity
        self.kind = kind
        self.tables = tables
        self.tables.setflags(write=False)
        self._index: Optional[Dict[bytes, int]] = None

    def __len__(self) -> int:
        return len(self.tables)

    def __getitem__(self, index: int) -> FunctionTable:
        return FunctionTable(self.size, self.arity, self.tables[index])

    @property
    def members(self) -> List[FunctionTable]:
        return [self[i] for i in range(len(self))]

    def index_of(self, f: FunctionTable) -> Optional[int]:
        if self._index is None:
            self._index = {row.tobytes(): i for i, row in enumerate(self.tables)}
        if f.arity != self.arity or f.size != self.size:
            return None
        return self._index.get(f.values.tobytes())

    def __contains__(self, f: FunctionTable) -> bool:
        return self.index_of(f) is not None

    def export(self) -> dict:
        """The canonical dump: arity header and sorted flat tables."""
        return {'arity': self.arity, 'kind': self.kind, 'size': self.size,
                'count': len(self), 'tables': self.tables.tolist()}


def clone_generators(size: int, arity: int, kind: str) -> np.ndarray:
    """The projections, plus every constant for the polynomial clone."""
    gens = decode_all(arity, size)
    if kind == POLYNOMIAL:
        constants = np.repeat(np.arange(size, dtype=np.uint8)[:, None], size ** arity, axis=1)
        gens = np.concatenate([gens, constants])
    return gens


@lru_cache(maxsize=32)
def clone_upto(alg: FiniteAlgebra, k: int, kind: str = TERM, budget: Optional[int] = None) -> CloneSlice:
    """
    Generate Clo_k or Pol_k as the subuniverse of A^(A^k) generated by the
    projections (and the constants).

    Args:
        alg: the algebra
        k: the arity, at least 1
        kind: TERM or POLYNOMIAL
        budget: largest number of tables before BudgetExceededError

    Returns:
        the exact clone slice
    """
    if k < 1:
        raise ValidationError(f'clone arity must be at least 1, got {k}')
    if kind not in KINDS:
        raise ValidationError(f'unknown clone kind {kind!r}')
    closure = close_rows(alg, clone_generators(alg.size, k, kind), budget=budget)
    logger.info('%s clone of %r at arity %d: %d tables in %d rounds', kind, alg, k,
                len(closure.rows), closure.depth)
    return CloneSlice(alg.size, k, kind, closure.rows)
