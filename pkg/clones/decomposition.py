"""
Writing a term as its value at (z, …, z) plus a sum of commutators, where the
sum is a +_z b := m(a, z, b) for a Mal'cev operation m.
"""
import logging
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from algebra.finite_algebra import FiniteAlgebra
from algebra.function_table import FunctionTable
from clones.commutator_terms import commutator_classify
from clones.malcev import find_malcev
from utils.encoding import decode_all
from utils.errors import ArityError, NotNilpotentError, VerificationError

logger = logging.getLogger(__name__)

Subset = FrozenSet[int]


def default_order(k: int) -> List[Subset]:
    """Non-empty subsets of {1, …, k} by cardinality, then lexicographically."""
    return [frozenset(s) for r in range(1, k + 1) for s in combinations(range(1, k + 1), r)]


class _SumAlgebra:
    def __init__(self, m: FunctionTable, k: int):
        """
        Pointwise arithmetic on (k+1)-ary value arrays in the loops (A, +_z),
        where z is the last argument.
        """
        self.m = m
        self.size = m.size
        self.k = k
        self.coords = decode_all(k + 1, self.size)
        self.z = self.coords[k]
        self.zero = self.z.copy()
        # inverse of y -> m(a, b, y) for every (a, b)
        grid = m.grid()
        self.solve = np.full((self.size, self.size, self.size), -1, dtype=np.int64)
        for a in range(self.size):
            for b in range(self.size):
                image = grid[a, b]
                if len(set(image.tolist())) != self.size:
                    raise NotNilpotentError(f'y -> m({a},{b},y) is not a permutation; the algebra is not nilpotent')
                self.solve[a, b, image] = np.arange(self.size)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.m.values[a + self.size * self.z + self.size ** 2 * b].astype(np.int64)

    def neg(self, a: np.ndarray) -> np.ndarray:
        return self.m.values[self.z + self.size * a + self.size ** 2 * self.z].astype(np.int64)

    def residual(self, s: np.ndarray, f: np.ndarray) -> np.ndarray:
        """The e with s +_z e = f."""
        return self.solve[s, self.z, f]

    def substitute(self, values: np.ndarray, positions: Sequence[int]) -> np.ndarray:
        """values with every x_i, i in positions (0-based), replaced by z."""
        coords = self.coords.copy()
        for i in positions:
            coords[i] = self.z
        codes = np.zeros(coords.shape[1], dtype=np.int64)
        for i in range(self.k, -1, -1):
            codes = codes * self.size + coords[i]
        return values[codes]


def _split(arith: _SumAlgebra, e: np.ndarray, support: Tuple[int, ...], sign: int,
           out: List[Tuple[Tuple[int, ...], np.ndarray, int]]) -> None:
    """
    Split e, which only depends on x_i for i in support and equals z when all of
    them are z, into commutators with supports inside support.
    """
    d = e
    for j in support:
        # after this step d(x, z) = z whenever x_j = z
        d = arith.m.values[d + arith.size * arith.substitute(d, [j]) + arith.size ** 2 * arith.z].astype(np.int64)
    out.append((support, d, sign))
    for r in range(len(support) - 1, 0, -1):
        for subset in combinations(support, r):
            removed = [i for i in support if i not in subset]
            term_sign = -1 if (len(support) + 1 - len(subset)) % 2 else 1
            _split(arith, arith.substitute(e, removed), subset, sign * term_sign, out)


def decompose_commutator_sum(alg: FiniteAlgebra, f: FunctionTable, order: Optional[Sequence[Subset]] = None,
                             malcev: Optional[FunctionTable] = None,
                             max_rounds: Optional[int] = None) -> Dict[Subset, FunctionTable]:
    """
    Find commutators c_S, one for every non-empty S ⊆ {1, …, k}, with

        f(x, z) = f(z, …, z) +_z c_S1(x_S1, z) +_z … (left to right in order)

    Args:
        alg: a nilpotent algebra with a Mal'cev term
        f: a (k+1)-ary operation, z its last argument
        order: the summation order, every non-empty subset exactly once
        malcev: the Mal'cev operation; searched in Clo_3 when omitted
        max_rounds: refinement rounds, one per step of the lower central series

    Returns:
        c_S as a table of arity |S|+1 over (x_S in increasing order, z)
    """
    if f.arity < 2:
        raise ArityError(f'decomposition needs arity k+1 with k >= 1, got {f.arity}')
    k = f.arity - 1
    order = list(order) if order is not None else default_order(k)
    if sorted(map(sorted, order)) != sorted(map(sorted, default_order(k))):
        raise ArityError(f'order must list every non-empty subset of 1..{k} once')
    m = malcev if malcev is not None else find_malcev(alg)
    if m is None:
        raise NotNilpotentError(f'{alg!r} has no Mal\'cev term')
    max_rounds = max_rounds if max_rounds is not None else alg.size + 1

    arith = _SumAlgebra(m, k)
    target = f.values.astype(np.int64)
    base = arith.substitute(target, range(k))
    parts: Dict[Subset, np.ndarray] = {s: arith.zero.copy() for s in order}

    def total() -> np.ndarray:
        s = base
        for subset in order:
            s = arith.add(s, parts[subset])
        return s

    for round_ in range(max_rounds):
        e = arith.residual(total(), target)
        if np.array_equal(e, arith.zero):
            break
        logger.debug('decomposition round %d: residual differs from z at %d inputs',
                     round_ + 1, int(np.count_nonzero(e != arith.zero)))
        pieces = []
        _split(arith, e, tuple(range(k)), 1, pieces)
        for support, d, sign in pieces:
            subset = frozenset(i + 1 for i in support)
            parts[subset] = arith.add(parts[subset], d if sign > 0 else arith.neg(d))

    if not np.array_equal(total(), target):
        raise VerificationError(f'commutator sum does not reproduce f after {max_rounds} rounds; '
                                f'the algebra is not nilpotent')

    result = {}
    for subset in order:
        table = _compact(arith, parts[subset], subset)
        if commutator_classify(table) is None:
            raise VerificationError(f'summand for {sorted(subset)} is not a commutator: {table.to_list()}')
        result[subset] = table
    return result


def _compact(arith: _SumAlgebra, values: np.ndarray, subset: Subset) -> FunctionTable:
    """Restrict a (k+1)-ary array that only depends on x_S and z to a table over (x_S, z)."""
    size, k = arith.size, arith.k
    positions = sorted(i - 1 for i in subset) + [k]
    local = decode_all(len(positions), size)
    full = np.repeat(local[-1][None], k + 1, axis=0)
    for j, position in enumerate(positions):
        full[position] = local[j]
    codes = np.zeros(full.shape[1], dtype=np.int64)
    for i in range(k, -1, -1):
        codes = codes * size + full[i]
    return FunctionTable(size, len(positions), values[codes])


def sum_of_commutators(m: FunctionTable, f: FunctionTable,
                       parts: Dict[Subset, FunctionTable], order: Sequence[Subset]) -> np.ndarray:
    """Evaluate f(z, …, z) +_z Σ c_S(x_S, z) over all inputs, for checking a decomposition."""
    k = f.arity - 1
    arith = _SumAlgebra(m, k)
    s = arith.substitute(f.values.astype(np.int64), range(k))
    for subset in order:
        columns = [arith.coords[i - 1] for i in sorted(subset)] + [arith.z]
        s = arith.add(s, parts[subset].evaluate(np.stack(columns)).astype(np.int64))
    return s
