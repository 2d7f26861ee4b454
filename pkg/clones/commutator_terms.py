from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

from algebra.function_table import FunctionTable
from utils.encoding import decode, decode_all
from utils.errors import ArityError


class CommutatorWitness(NamedTuple):
    f: FunctionTable
    rank_args: Optional[Tuple[int, ...]]

    @property
    def is_trivial(self) -> bool:
        return self.rank_args is None

    @property
    def rank(self) -> int:
        """k for a non-trivial commutator of arity k+1, 0 for a trivial one."""
        return 0 if self.rank_args is None else self.f.arity - 1


def absorption_mask(size: int, arity: int) -> np.ndarray:
    """Codes of the (k+1)-tuples whose last entry z occurs among the first k."""
    coords = decode_all(arity, size)
    return np.any(coords[:-1] == coords[-1], axis=0)


def commutator_mask(tables: np.ndarray, size: int, arity: int) -> np.ndarray:
    """For a batch of tables, which ones return z whenever z is among x_1, …, x_k."""
    coords = decode_all(arity, size)
    mask = absorption_mask(size, arity)
    return np.all(tables[:, mask] == coords[-1][mask], axis=1)


def commutator_classify(f: FunctionTable) -> Optional[CommutatorWitness]:
    """
    Check c(x_1, …, x_k, z) = z whenever z is one of the x_i, and look for a
    rank witness (a_1, …, a_k, o) with c(a, o) != o.

    Returns:
        the witness record, or None when f is not a commutator
    """
    if f.arity < 2:
        raise ArityError(f'commutators have arity at least 2, got {f.arity}')
    if not commutator_mask(f.values[None], f.size, f.arity)[0]:
        return None
    z = decode_all(f.arity, f.size)[-1]
    moved = np.flatnonzero(f.values != z)
    if not len(moved):
        return CommutatorWitness(f, None)
    return CommutatorWitness(f, decode(int(moved[0]), f.arity, f.size))


def is_absorbing(f: FunctionTable, base: Sequence[int]) -> bool:
    """f(x) = f(base) whenever x_i = base_i for some i."""
    coords = decode_all(f.arity, f.size)
    mask = np.any(coords == np.asarray(base)[:, None], axis=0)
    return bool(np.all(f.values[mask] == f(*base)))
