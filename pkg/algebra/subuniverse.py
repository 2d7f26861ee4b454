from typing import Optional

from algebra.finite_algebra import FiniteAlgebra
from algebra.relations import RelationSet
from utils.closure import close_rows
from utils.errors import ArityError, PreconditionError


def subuniverse_generate(alg: FiniteAlgebra, n: int, gens: RelationSet,
                         budget: Optional[int] = None) -> RelationSet:
    """
    The subuniverse of alg^n generated by gens.

    Args:
        alg: the algebra
        n: the power
        gens: non-empty set of n-tuples
        budget: largest subuniverse size accepted before BudgetExceededError

    Returns:
        the generated subuniverse, flagged as such
    """
    if gens.n != n or gens.size != alg.size:
        raise ArityError(f'generators of arity {gens.n} over size {gens.size} do not live in A^{n}')
    if not len(gens):
        raise PreconditionError('at least one generator is required')
    closure = close_rows(alg, gens.rows(), budget=budget)
    return RelationSet.from_rows(alg.size, closure.rows, subuniverse=True)


def is_subuniverse(alg: FiniteAlgebra, relation: RelationSet) -> bool:
    """Whether relation is closed under every fundamental operation, by exhaustive application."""
    if not len(relation):
        return True
    closure = close_rows(alg, relation.rows(), budget=len(relation), strict=False)
    return closure.complete and len(closure.rows) == len(relation)
