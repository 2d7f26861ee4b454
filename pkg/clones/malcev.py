import logging
from functools import lru_cache
from typing import Optional

import numpy as np

from algebra.finite_algebra import FiniteAlgebra
from algebra.function_table import FunctionTable
from clones.clone_slice import TERM, clone_upto
from utils.encoding import decode_all
from utils.errors import ArityError, NotFoundError, VerificationError

logger = logging.getLogger(__name__)


def _codes(size: int, x, y, z) -> np.ndarray:
    return np.asarray(x) + size * np.asarray(y) + size * size * np.asarray(z)


def is_malcev(m: FunctionTable) -> bool:
    size = m.size
    x, y, _ = decode_all(3, size)
    return (m.arity == 3 and bool(np.all(m.values[_codes(size, x, y, y)] == x))
            and bool(np.all(m.values[_codes(size, y, y, x)] == x)))


@lru_cache(maxsize=32)
def find_malcev(alg: FiniteAlgebra, budget: Optional[int] = None) -> Optional[FunctionTable]:
    """
    The first ternary term operation, in canonical table order, satisfying
    m(x,y,y) = x = m(y,y,x).

    Returns:
        the table, or None when the algebra has no Mal'cev term
    """
    clone = clone_upto(alg, 3, TERM, budget)
    size = alg.size
    x, y = decode_all(2, size)
    tables = clone.tables
    hits = (np.all(tables[:, _codes(size, x, y, y)] == x, axis=1)
            & np.all(tables[:, _codes(size, y, y, x)] == x, axis=1))
    if not hits.any():
        logger.info('no Mal\'cev term among %d ternary terms of %r', len(clone), alg)
        return None
    return clone[int(np.argmax(hits))]


def translation_inverse(alg: FiniteAlgebra, m: FunctionTable, budget: Optional[int] = None) -> FunctionTable:
    """
    Search Clo_3 for f with m(f(x,b,c),b,c) = x and f(m(x,b,c),b,c) = x.

    Args:
        alg: a nilpotent algebra
        m: a Mal'cev operation of alg

    Returns:
        the first such term table in canonical order
    """
    if m.arity != 3 or not is_malcev(m):
        raise ArityError('translation_inverse needs a Mal\'cev table')
    clone = clone_upto(alg, 3, TERM, budget)
    size = alg.size
    x, b, c = decode_all(3, size)
    tables = clone.tables.astype(np.int64)
    # m(f(x,b,c),b,c) for every candidate f at once
    left = m.values[_codes(size, tables, b, c)]
    right = tables[:, m.values[_codes(size, x, b, c)].astype(np.int64) + size * b + size * size * c]
    hits = np.all(left == x, axis=1) & np.all(right == x, axis=1)
    if not hits.any():
        raise NotFoundError(f'no translation inverse of the Mal\'cev term among {len(clone)} ternary terms')
    f = clone[int(np.argmax(hits))]
    if not np.array_equal(m.values[_codes(size, f.values, b, c)], x):
        raise VerificationError('translation inverse failed its identity check')
    return f
