"""
Small algebras used as fixtures and reference inputs.
"""
from itertools import permutations
from typing import List, Tuple

from algebra.finite_algebra import FiniteAlgebra, Operation
from algebra.function_table import FunctionTable


def cyclic_group(n: int) -> FiniteAlgebra:
    """(Z_n, +) with addition as the only operation."""
    plus = FunctionTable.from_function(n, 2, lambda x, y: (x + y) % n)
    return FiniteAlgebra(n, [Operation('plus', 2, plus)], name=f'Z{n}')


def klein_group() -> FiniteAlgebra:
    """Z_2 x Z_2, elements encoded as x = x_1 + 2 x_2 and addition by xor."""
    plus = FunctionTable.from_function(4, 2, lambda x, y: x ^ y)
    return FiniteAlgebra(4, [Operation('plus', 2, plus)], name='Z2xZ2')


def symmetric_group_s3() -> FiniteAlgebra:
    """S_3 as a group: multiplication and inverse, elements in lexicographic permutation order."""
    elements: List[Tuple[int, ...]] = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(elements)}

    def compose(x, y):
        p, q = elements[x], elements[y]
        return index[tuple(p[q[i]] for i in range(3))]

    def inverse(x):
        p = elements[x]
        return index[tuple(sorted(range(3), key=lambda i: p[i]))]

    ops = [Operation('mul', 2, FunctionTable.from_function(6, 2, compose)),
           Operation('inv', 1, FunctionTable.from_function(6, 1, inverse))]
    return FiniteAlgebra(6, ops, name='S3')


def meet_semilattice() -> FiniteAlgebra:
    """({0, 1}, min)."""
    meet = FunctionTable.from_function(2, 2, min)
    return FiniteAlgebra(2, [Operation('meet', 2, meet)], name='meet-semilattice')
