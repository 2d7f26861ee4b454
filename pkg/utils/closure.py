"""
Subuniverse generation in powers of a finite algebra.

Members are rows of universe elements; an operation acts on rows
coordinatewise. The fixpoint is computed semi-naively: every round only
evaluates argument combinations that involve at least one row produced in
the previous round.
"""
import logging
from itertools import product
from typing import TYPE_CHECKING, Dict, Iterator, List, NamedTuple, Optional, Sequence

import numpy as np
from tqdm import tqdm

from utils.errors import BudgetExceededError

if TYPE_CHECKING:
    from algebra.finite_algebra import FiniteAlgebra
    from algebra.function_table import FunctionTable

logger = logging.getLogger(__name__)

# Rows evaluated between two deduplication passes
BATCH_ROWS = 1 << 16


class Closure(NamedTuple):
    rows: np.ndarray
    complete: bool
    depth: int


def position_quotient(table: 'FunctionTable', position: int) -> np.ndarray:
    """
    The coarsest partition of the universe on which table is invariant in the
    given argument position: rep[a] == rep[b] iff replacing a by b there never
    changes the value. rep[a] is the least member of the class of a.
    """
    slices = np.moveaxis(table.grid(), position, 0).reshape(table.size, -1)
    _, first, inverse = np.unique(slices, axis=0, return_index=True, return_inverse=True)
    return first[inverse.reshape(-1)].astype(np.uint8)


class _ImagePool:
    def __init__(self, rep: np.ndarray):
        """
        The distinct images of the members under one argument quotient,
        split into the images known before the current round and the new ones.
        """
        self.rep = rep
        self.seen = set()
        self.old = None
        self.new = None
        self._all: List[np.ndarray] = []

    def advance(self, fresh: np.ndarray) -> None:
        self.old = np.concatenate(self._all) if self._all else fresh[:0]
        images = np.unique(self.rep[fresh], axis=0)
        keep = []
        for i, image in enumerate(images):
            key = image.tobytes()
            if key not in self.seen:
                self.seen.add(key)
                keep.append(i)
        self.new = images[keep]
        if len(self.new):
            self._all.append(self.new)

    @property
    def all(self) -> np.ndarray:
        return np.concatenate([self.old, self.new])


def _evaluate(table: 'FunctionTable', pools: Sequence[np.ndarray]) -> Iterator[np.ndarray]:
    """
    Apply table to every combination of one row from each pool, in batches.
    The last argument position is vectorized.
    """
    size, arity = table.size, table.arity
    values = table.values
    last = pools[-1].astype(np.int64) * size ** (arity - 1)
    batch = []
    batch_rows = 0
    for choice in product(*(range(len(pool)) for pool in pools[:-1])):
        partial = np.zeros(pools[-1].shape[1], dtype=np.int64)
        for position, index in enumerate(choice):
            partial += pools[position][index].astype(np.int64) * size ** position
        batch.append(values[last + partial])
        batch_rows += len(last)
        if batch_rows >= BATCH_ROWS:
            yield np.concatenate(batch)
            batch, batch_rows = [], 0
    if batch:
        yield np.concatenate(batch)


def close_rows(alg: 'FiniteAlgebra', rows: np.ndarray, budget: Optional[int] = None,
               max_rounds: Optional[int] = None, strict: bool = True) -> Closure:
    """
    Close a set of rows under the fundamental operations of alg.

    Args:
        alg: the algebra acting coordinatewise
        rows: generators, an array of shape (m, n)
        budget: largest number of members allowed
        max_rounds: stop after this many rounds (members of term depth at most max_rounds)
        strict: raise BudgetExceededError on overflow instead of returning a partial closure

    Returns:
        the members sorted lexicographically, whether the fixpoint was reached
        and the number of completed rounds
    """
    rows = np.asarray(rows, dtype=np.uint8)
    if rows.ndim != 2 or not len(rows):
        raise ValueError(f'expected a non-empty 2D array of generators, got shape {rows.shape}')
    rows = np.unique(rows, axis=0)
    seen = {row.tobytes() for row in rows}
    members = [rows]

    def finish(complete: bool, depth: int) -> Closure:
        closed = np.concatenate(members)
        order = np.lexsort(closed.T[::-1]) if closed.shape[1] else np.arange(len(closed))
        return Closure(closed[order], complete, depth)

    def overflow(depth: int) -> Closure:
        if strict:
            raise BudgetExceededError(f'{len(seen)} members exceed the budget of {budget}', reached=len(seen))
        logger.info('closure stopped at %d members in round %d', len(seen), depth + 1)
        return finish(False, depth)

    if budget is not None and len(seen) > budget:
        return overflow(0)

    pools: Dict[bytes, _ImagePool] = {}
    plans = []
    for op in alg.ops:
        quotients = []
        for position in range(op.arity):
            rep = position_quotient(op.table, position)
            quotients.append(pools.setdefault(rep.tobytes(), _ImagePool(rep)))
        plans.append((op, quotients))

    fresh = rows
    depth = 0
    while len(fresh):
        if max_rounds is not None and depth >= max_rounds:
            return finish(False, depth)
        for pool in pools.values():
            pool.advance(fresh)

        jobs = []
        for op, quotients in plans:
            for first_new in range(op.arity):
                args = ([quotients[q].old for q in range(first_new)] + [quotients[first_new].new]
                        + [quotients[q].all for q in range(first_new + 1, op.arity)])
                if all(len(arg) for arg in args):
                    jobs.append((op, args))
        n_combs = sum(int(np.prod([len(arg) for arg in args], dtype=np.float64)) for _, args in jobs)
        logger.debug('round %d: %d members, %d new, %d combinations', depth + 1, len(seen), len(fresh), n_combs)

        produced = []
        t = tqdm(total=n_combs, unit=' combinations', disable=n_combs < 1e5, position=0, leave=False,
                 unit_scale=True)
        for op, args in jobs:
            for batch in _evaluate(op.table, args):
                t.update(len(batch))
                for row in np.unique(batch, axis=0):
                    key = row.tobytes()
                    if key in seen:
                        continue
                    seen.add(key)
                    produced.append(row)
                if budget is not None and len(seen) > budget:
                    t.close()
                    if produced:
                        members.append(np.stack(produced))
                    return overflow(depth)
        t.close()

        fresh = np.stack(produced) if produced else rows[:0]
        if len(fresh):
            members.append(fresh)
        depth += 1

    return finish(True, depth)
