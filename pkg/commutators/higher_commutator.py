import logging
from abc import ABC, abstractmethod
from functools import lru_cache
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from algebra.congruence import congruence_generate
from algebra.finite_algebra import FiniteAlgebra
from algebra.partition import Partition
from clones.clone_slice import POLYNOMIAL, clone_upto
from clones.commutator_terms import commutator_mask
from utils.closure import close_rows
from utils.encoding import decode_all
from utils.errors import ValidationError

logger = logging.getLogger(__name__)

ABSORBING_GENERATION = 'absorbing-generation'
NILPOTENT_T = 'nilpotent-T'
TERM_CONDITION = 'term-condition'

LIFTED = 'lifted'
LITERAL = 'literal'


class CommutatorQuery(NamedTuple):
    args: Tuple[Partition, ...]
    method: str

    def validate(self, alg: FiniteAlgebra) -> None:
        if len(self.args) < 2:
            raise ValidationError(f'a commutator needs at least 2 congruences, got {len(self.args)}')
        if self.method not in METHODS:
            raise ValidationError(f'unknown commutator method {self.method!r}')
        for i, alpha in enumerate(self.args):
            if alpha.size != alg.size or not alpha.is_congruence(alg):
                raise ValidationError(f'argument {i + 1} is not a congruence of {alg!r}: {alpha}')


class CommutatorMethod(ABC):
    def __init__(self, budget: Optional[int] = None):
        """
        A way of computing the higher commutator [α_1, …, α_k].

        Args:
            budget: largest clone slice or subpower the method may generate
        """
        self.budget = budget

    @abstractmethod
    def compute(self, alg: FiniteAlgebra, congruences: Sequence[Partition]) -> Partition:
        raise NotImplementedError


class GeneratedCommutator(CommutatorMethod, ABC):
    """A method that lists pairs and returns the congruence they generate."""

    @abstractmethod
    def generating_pairs(self, alg: FiniteAlgebra, congruences: Sequence[Partition]) -> np.ndarray:
        """
        Returns:
            an array of shape (m, 2)
        """
        raise NotImplementedError

    def compute(self, alg: FiniteAlgebra, congruences: Sequence[Partition]) -> Partition:
        pairs = self.generating_pairs(alg, congruences)
        return congruence_generate(alg, pairs.tolist())


@lru_cache(maxsize=16)
def _absorbing_tables(alg: FiniteAlgebra, k: int, budget: Optional[int]) -> Tuple[np.ndarray, ...]:
    """
    For every base point o in A^k (by TupleCode), the polynomials of Pol_k
    that are absorbing at o: p(x) = p(o) whenever x_i = o_i for some i.
    """
    tables = clone_upto(alg, k, POLYNOMIAL, budget).tables
    coords = decode_all(k, alg.size)
    absorbing = []
    for code in range(alg.size ** k):
        touched = np.any(coords == coords[:, [code]], axis=0)
        keep = np.all(tables[:, touched] == tables[:, [code]], axis=1)
        absorbing.append(tables[keep])
    logger.debug('absorbing polynomials of arity %d on %r: %d in total', k, alg,
                 sum(len(t) for t in absorbing))
    return tuple(absorbing)


def _class_box(congruences: Sequence[Partition], base: np.ndarray) -> np.ndarray:
    """Codes of all b with (b_i, base_i) in α_i for every i."""
    size = congruences[0].size
    coords = decode_all(len(congruences), size)
    inside = np.ones(coords.shape[1], dtype=bool)
    for i, alpha in enumerate(congruences):
        inside &= alpha.rep[coords[i]] == alpha.rep[base[i]]
    return np.flatnonzero(inside)


def _pairs(values: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Unique non-diagonal pairs (values[r, j], targets[r]) as an (m, 2) array."""
    if not values.size:
        return np.zeros((0, 2), dtype=np.int64)
    pairs = np.stack([values.reshape(-1), np.repeat(targets, values.shape[1])], axis=1).astype(np.int64)
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    return np.unique(pairs, axis=0) if len(pairs) else pairs


class AbsorbingGeneration(GeneratedCommutator):
    """
    Generate the commutator from {(p(b), p(o))}: p in Pol_k absorbing at o,
    (b_i, o_i) in α_i, over all base points o.
    """

    def generating_pairs(self, alg: FiniteAlgebra, congruences: Sequence[Partition]) -> np.ndarray:
        k = len(congruences)
        coords = decode_all(k, alg.size)
        found = [np.zeros((0, 2), dtype=np.int64)]
        for code, tables in enumerate(_absorbing_tables(alg, k, self.budget)):
            box = _class_box(congruences, coords[:, code])
            found.append(_pairs(tables[:, box], tables[:, code]))
        return np.unique(np.concatenate(found), axis=0)


class NilpotentT(GeneratedCommutator):
    def __init__(self, budget: Optional[int] = None, source: str = LIFTED):
        """
        Generate the commutator from the values c(a_1, …, a_k, o) of commutator
        polynomials c in Pol_{k+1} at arguments with (a_i, o) in α_i.

        Args:
            budget: largest polynomial clone slice
            source: LIFTED evaluates the Pol_k polynomials absorbing at (o, …, o)
                with value o, which are exactly the commutators of Pol_{k+1} at z = o;
                LITERAL enumerates Pol_{k+1}
        """
        super().__init__(budget)
        if source not in (LIFTED, LITERAL):
            raise ValidationError(f'unknown T-set source {source!r}')
        self.source = source

    def generating_pairs(self, alg: FiniteAlgebra, congruences: Sequence[Partition]) -> np.ndarray:
        k = len(congruences)
        size = alg.size
        found = [np.zeros((0, 2), dtype=np.int64)]
        if self.source == LIFTED:
            absorbing = _absorbing_tables(alg, k, self.budget)
            for o in range(size):
                code = o * sum(size ** i for i in range(k))
                tables = absorbing[code]
                tables = tables[tables[:, code] == o]
                box = _class_box(congruences, np.full(k, o))
                found.append(_pairs(tables[:, box], np.full(len(tables), o)))
        else:
            tables = clone_upto(alg, k + 1, POLYNOMIAL, self.budget).tables
            tables = tables[commutator_mask(tables, size, k + 1)]
            coords = decode_all(k + 1, size)
            inside = np.ones(coords.shape[1], dtype=bool)
            for i, alpha in enumerate(congruences):
                inside &= alpha.rep[coords[i]] == alpha.rep[coords[k]]
            for code in np.flatnonzero(inside):
                o = int(coords[k, code])
                found.append(_pairs(tables[:, [code]], np.full(len(tables), o)))
        return np.unique(np.concatenate(found), axis=0)


class TermCondition(CommutatorMethod):
    """
    The least ν for which α_1, …, α_{k-1} centralize α_k modulo ν, decided on
    the subuniverse M(α_1, …, α_k) of A^(2^k) generated by the α_i-cubes.
    Coordinate s of a cube carries bit i-1 of s for α_i.
    """

    def cube_generators(self, size: int, congruences: Sequence[Partition]) -> np.ndarray:
        k = len(congruences)
        bits = (np.arange(2 ** k)[None, :] >> np.arange(k)[:, None]) & 1
        gens = []
        for i, alpha in enumerate(congruences):
            for a, b in alpha.pairs():
                gens.append(np.where(bits[i] == 0, a, b))
        return np.array(gens, dtype=np.uint8)

    def compute(self, alg: FiniteAlgebra, congruences: Sequence[Partition]) -> Partition:
        k = len(congruences)
        cubes = close_rows(alg, self.cube_generators(alg.size, congruences), budget=self.budget).rows
        half = 2 ** (k - 1)
        pivot = half - 1
        premise_cols = [s for s in range(half) if s != pivot]
        logger.debug('term condition on %d cubes of dimension %d', len(cubes), k)

        nu = Partition.equality(alg.size)
        while True:
            classes = nu.rep[cubes]
            premise = np.ones(len(cubes), dtype=bool)
            for s in premise_cols:
                premise &= classes[:, s] == classes[:, s + half]
            violated = premise & (classes[:, pivot] != classes[:, pivot + half])
            if not violated.any():
                return nu
            forced = np.unique(cubes[violated][:, [pivot, pivot + half]], axis=0).tolist()
            nu = congruence_generate(alg, nu.spanning_pairs() + [tuple(p) for p in forced])


METHODS = {
    ABSORBING_GENERATION: AbsorbingGeneration,
    NILPOTENT_T: NilpotentT,
    TERM_CONDITION: TermCondition,
}


def higher_commutator(alg: FiniteAlgebra, congruences: Sequence[Partition], method: str = ABSORBING_GENERATION,
                      budget: Optional[int] = None, source: str = LIFTED) -> Partition:
    """
    The k-ary commutator [α_1, …, α_k].

    Args:
        alg: the algebra
        congruences: α_1, …, α_k with k >= 2
        method: ABSORBING_GENERATION, NILPOTENT_T or TERM_CONDITION
        budget: largest clone slice or subpower generated
        source: T-set source for NILPOTENT_T

    Returns:
        the commutator congruence
    """
    query = CommutatorQuery(tuple(congruences), method)
    query.validate(alg)
    if method == NILPOTENT_T:
        from commutators.nilpotence import require_nilpotent
        require_nilpotent(alg, budget)
        worker = NilpotentT(budget, source)
    else:
        worker = METHODS[method](budget)
    result = worker.compute(alg, query.args)
    logger.debug('[%s] by %s = %s', ', '.join(map(str, query.args)), method, result)
    return result


def commutator_power(alg: FiniteAlgebra, alpha: Partition, k: int, method: str = TERM_CONDITION,
                     budget: Optional[int] = None) -> Partition:
    """[α, …, α] with k arguments."""
    return higher_commutator(alg, [alpha] * k, method, budget)


def method_names() -> List[str]:
    return list(METHODS)
