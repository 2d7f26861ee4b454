import logging
from functools import lru_cache
from typing import Iterable, Tuple

import numpy as np

from algebra.finite_algebra import FiniteAlgebra
from algebra.partition import Partition

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def basic_translations(alg: FiniteAlgebra) -> np.ndarray:
    """
    All unary maps x -> g(c_1, …, x, …, c_r) for a fundamental operation g and
    constants c_i, deduplicated.

    Returns:
        an array of shape (m, size), one map per row
    """
    size = alg.size
    maps = [np.arange(size)[None]]
    for op in alg.ops:
        grid = op.table.grid()
        for position in range(op.arity):
            # one row per choice of the remaining arguments
            maps.append(np.moveaxis(grid, position, -1).reshape(-1, size))
    maps = np.unique(np.concatenate(maps).astype(np.int64), axis=0)
    logger.debug('%d basic translations on %r', len(maps), alg)
    return maps


def congruence_generate(alg: FiniteAlgebra, pairs: Iterable[Tuple[int, int]]) -> Partition:
    """
    The least congruence containing pairs, by closing the generated
    equivalence under the basic translations (Mal'cev's pair closure).

    Args:
        alg: the algebra
        pairs: pairs of universe elements

    Returns:
        the generated congruence
    """
    translations = basic_translations(alg)
    parent = list(range(alg.size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b) -> bool:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[max(ra, rb)] = min(ra, rb)
        return True

    pending = []
    for a, b in pairs:
        if union(int(a), int(b)):
            pending.append((int(a), int(b)))

    while pending:
        a, b = pending.pop()
        images = translations[:, [a, b]]
        images = images[images[:, 0] != images[:, 1]]
        for x, y in np.unique(images, axis=0).tolist():
            if union(x, y):
                pending.append((x, y))

    return Partition([find(a) for a in range(alg.size)])


def principal_congruence(alg: FiniteAlgebra, a: int, b: int) -> Partition:
    return congruence_generate(alg, [(a, b)])
