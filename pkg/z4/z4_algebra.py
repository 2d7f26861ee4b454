"""
The algebra (Z_4, +, 1, 2x_1…x_k) and the normal form of its term operations:
every k-ary term is x -> c + Σ λ_i x_i + 2q(x mod 2) for a Boolean q.
"""
import logging
from functools import lru_cache, reduce
from itertools import combinations
from typing import FrozenSet, List, NamedTuple, Optional, Tuple

import numpy as np

from algebra.finite_algebra import FiniteAlgebra, Operation
from algebra.function_table import FunctionTable
from clones.clone_slice import TERM, CloneSlice
from utils.encoding import decode_all
from utils.errors import PreconditionError, ValidationError

logger = logging.getLogger(__name__)

SIZE = 4


def z4_algebra(m: int) -> FiniteAlgebra:
    """
    The finite-type truncation with +, the constant 1 and 2x_1…x_j for 2 <= j <= m.

    Args:
        m: the arity cap, at least 2
    """
    if m < 2:
        raise PreconditionError(f'the truncation needs arity cap m >= 2, got {m}')
    ops = [Operation('plus', 2, FunctionTable.from_function(SIZE, 2, lambda x, y: (x + y) % SIZE)),
           Operation('one', 1, FunctionTable.constant(SIZE, 1, 1))]
    for j in range(2, m + 1):
        table = FunctionTable(SIZE, j, 2 * np.prod(decode_all(j, SIZE), axis=0) % SIZE)
        ops.append(Operation(f'dbl{j}', j, table))
    return FiniteAlgebra(SIZE, ops, name=f'Z4[{m}]')


def _parity_codes(k: int) -> np.ndarray:
    """For every x in Z_4^k, the binary code of x mod 2 (bit i for coordinate i)."""
    coords = decode_all(k, SIZE)
    return ((coords % 2) * (1 << np.arange(k))[:, None]).sum(axis=0)


def _anf_degree(truth: np.ndarray, k: int) -> int:
    """Degree of the algebraic normal form of a Boolean function given by its 2^k truth table."""
    anf = truth.astype(np.uint8).copy()
    for i in range(k):
        step = 1 << i
        for start in range(0, 1 << k, step << 1):
            anf[start + step:start + 2 * step] ^= anf[start:start + step]
    monomials = np.flatnonzero(anf)
    return max((bin(int(m)).count('1') for m in monomials), default=0)


class Z4NormalForm(NamedTuple):
    constant: int
    lambdas: Tuple[int, ...]
    cosets: FrozenSet[Tuple[int, ...]]

    @property
    def arity(self) -> int:
        return len(self.lambdas)

    def table(self) -> FunctionTable:
        k = self.arity
        coords = decode_all(k, SIZE)
        values = self.constant + np.asarray(self.lambdas, dtype=np.int64) @ coords
        parity = _parity_codes(k)
        for v in self.cosets:
            values = values + 2 * (parity == sum(b << i for i, b in enumerate(v)))
        return FunctionTable(SIZE, k, values % SIZE)

    def degree(self) -> int:
        """The number of factors 2x_1…x_j needs to realize the coset part (at least 1)."""
        truth = np.zeros(1 << self.arity, dtype=np.uint8)
        for v in self.cosets:
            truth[sum(b << i for i, b in enumerate(v))] = 1
        return max(1, _anf_degree(truth, self.arity))


def z4_term_normal_form(f: FunctionTable) -> Optional[Z4NormalForm]:
    """
    Decide whether f is a term operation of (Z_4, +, 1, {2x_1…x_k : k >= 2}).

    The constant is f(0), λ_i = f(e_i) - f(0), and what remains must take
    values in {0, 2} and depend on x mod 2 only.

    Returns:
        the canonical normal form, or None
    """
    if f.size != SIZE:
        raise ValidationError(f'normal forms live over Z_4, got universe size {f.size}')
    k = f.arity
    values = f.values.astype(np.int64)
    constant = int(values[0])
    lambdas = tuple(int(values[SIZE ** i] - constant) % SIZE for i in range(k))
    residual = (values - constant - np.asarray(lambdas, dtype=np.int64) @ decode_all(k, SIZE)) % SIZE
    if np.any(residual % 2):
        return None
    parity = _parity_codes(k)
    on_class = np.zeros(1 << k, dtype=np.int64)
    on_class[parity] = residual
    if not np.array_equal(on_class[parity], residual):
        return None
    cosets = frozenset(tuple((c >> i) & 1 for i in range(k)) for c in np.flatnonzero(on_class).tolist())
    return Z4NormalForm(constant, lambdas, cosets)


def _boolean_parts(k: int, degree_cap: Optional[int]) -> np.ndarray:
    """
    The truth tables of Boolean q with q(0) = q(e_i) = 0 and ANF degree at
    most degree_cap, as an array of shape (count, 2^k).
    """
    cap = k if degree_cap is None else degree_cap
    points = np.arange(1 << k)
    monomials = [sum(1 << i for i in s) for r in range(2, min(cap, k) + 1) for s in combinations(range(k), r)]
    indicators = [((points & mono) == mono).astype(np.uint8) for mono in monomials]
    parts = []
    for chosen in range(1 << len(monomials)):
        terms = [indicators[j] for j in range(len(monomials)) if (chosen >> j) & 1]
        parts.append(reduce(np.bitwise_xor, terms, np.zeros(1 << k, dtype=np.uint8)))
    return np.array(parts, dtype=np.int64)


def z4_normal_forms(k: int, degree_cap: Optional[int] = None) -> List[Z4NormalForm]:
    """
    Every k-ary term of the full algebra (degree_cap None) or of the
    truncation z4_algebra(degree_cap), in canonical form.
    """
    forms = []
    for part in _boolean_parts(k, degree_cap):
        cosets = frozenset(tuple((c >> i) & 1 for i in range(k)) for c in np.flatnonzero(part).tolist())
        for code in range(SIZE ** (k + 1)):
            digits = [(code // SIZE ** i) % SIZE for i in range(k + 1)]
            forms.append(Z4NormalForm(digits[0], tuple(digits[1:]), cosets))
    return forms


@lru_cache(maxsize=16)
def normal_form_slice(k: int, degree_cap: Optional[int] = None) -> CloneSlice:
    """The k-ary term clone slice built from normal forms, sorted like clone_upto's slices."""
    if k < 1:
        raise ValidationError(f'clone arity must be at least 1, got {k}')
    coords = decode_all(k, SIZE)
    linear = decode_all(k + 1, SIZE)
    affine = linear[0][:, None] + linear[1:].T @ coords
    coset_part = 2 * _boolean_parts(k, degree_cap)[:, _parity_codes(k)]
    tables = (affine[:, None, :] + coset_part[None, :, :]) % SIZE
    tables = np.unique(tables.reshape(-1, SIZE ** k), axis=0).astype(np.uint8)
    logger.debug('%d normal-form terms at arity %d (degree cap %s)', len(tables), k, degree_cap)
    return CloneSlice(SIZE, k, TERM, tables)
