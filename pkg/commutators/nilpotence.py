import logging
from itertools import combinations
from typing import List, NamedTuple, Optional

from algebra.congruence import principal_congruence
from algebra.finite_algebra import FiniteAlgebra
from algebra.partition import Partition
from commutators.higher_commutator import (ABSORBING_GENERATION, TERM_CONDITION, commutator_power,
                                           higher_commutator)
from utils.config import DEFAULT_SUPERNILPOTENCE_CAP
from utils.errors import NotNilpotentError, SupernilpotenceCapError, ValidationError

logger = logging.getLogger(__name__)


class NilpotenceReport(NamedTuple):
    series: List[Partition]
    nilpotency_class: Optional[int]
    supernilpotence_degree: Optional[int]
    supernilpotence_cap: int

    @property
    def is_nilpotent(self) -> bool:
        return self.nilpotency_class is not None

    @property
    def is_abelian(self) -> bool:
        return self.nilpotency_class is not None and self.nilpotency_class <= 1


class NonabelianWitness(NamedTuple):
    alpha: Partition
    gamma: Partition
    degree: int


def lower_central_series(alg: FiniteAlgebra, cap: int = DEFAULT_SUPERNILPOTENCE_CAP,
                         method: str = TERM_CONDITION, budget: Optional[int] = None) -> NilpotenceReport:
    """
    Iterate (1,1]^(n+1) = [1, (1,1]^n] from the total congruence until it
    reaches equality or stops decreasing, then look for the least k <= cap
    with [1, …, 1] (k+1 arguments) equal to equality.

    Args:
        alg: the algebra
        cap: largest supernilpotence degree tested
        method: the commutator method for every step
        budget: clone or subpower budget passed to the method

    Returns:
        the series, the nilpotency class (None if not nilpotent) and the
        supernilpotence degree (None if not nilpotent or above cap)
    """
    top = Partition.total(alg.size)
    series = [top]
    while not series[-1].is_equality():
        following = higher_commutator(alg, [top, series[-1]], method, budget)
        if following == series[-1]:
            break
        series.append(following)
    nilpotency_class = len(series) - 1 if series[-1].is_equality() else None
    logger.info('lower central series of %r has %d terms, nilpotent: %s', alg, len(series),
                nilpotency_class is not None)

    degree = None
    if nilpotency_class is not None:
        degree = supernilpotence_degree(alg, top, cap, method, budget)
    return NilpotenceReport(series, nilpotency_class, degree, cap)


def supernilpotence_degree(alg: FiniteAlgebra, alpha: Partition, cap: int,
                           method: str = TERM_CONDITION, budget: Optional[int] = None) -> Optional[int]:
    """The least k <= cap with [α, …, α] (k+1 arguments) = 0, or None."""
    if alpha.is_equality():
        return 0
    for k in range(1, cap + 1):
        if commutator_power(alg, alpha, k + 1, method, budget).is_equality():
            return k
    return None


def require_nilpotent(alg: FiniteAlgebra, budget: Optional[int] = None) -> None:
    report = lower_central_series(alg, cap=0, budget=budget)
    if not report.is_nilpotent:
        raise NotNilpotentError(f'{alg!r} is not nilpotent')


def congruence_lattice(alg: FiniteAlgebra, below: Optional[Partition] = None) -> List[Partition]:
    """
    All congruences below `below` (default: all), as joins of principal
    congruences, ordered by relation size and then representative array.
    """
    below = below if below is not None else Partition.total(alg.size)
    principal = set()
    for a, b in combinations(range(alg.size), 2):
        if below.related(a, b):
            principal.add(principal_congruence(alg, a, b))

    lattice = {Partition.equality(alg.size)} | principal
    frontier = set(principal)
    while frontier:
        found = set()
        for theta in frontier:
            for generator in principal:
                joined = theta.join(generator)
                if joined not in lattice:
                    found.add(joined)
        lattice |= found
        frontier = found
    return sorted(lattice, key=lambda theta: (theta.relation_size(), theta.rep.tolist()))


def is_abelian(alg: FiniteAlgebra, alpha: Partition, method: str = TERM_CONDITION,
               budget: Optional[int] = None) -> bool:
    return higher_commutator(alg, [alpha, alpha], method, budget).is_equality()


def minimal_nonabelian_below(alg: FiniteAlgebra, beta: Partition, cap: int = DEFAULT_SUPERNILPOTENCE_CAP,
                             method: str = TERM_CONDITION,
                             budget: Optional[int] = None) -> Optional[NonabelianWitness]:
    """
    A minimal non-abelian congruence α <= β with γ = [α, α] and the least k
    such that [α, …, α] with k+1 arguments is equality.

    Returns:
        the witness, or None when every congruence below β is abelian
    """
    if not beta.is_congruence(alg):
        raise ValidationError(f'{beta} is not a congruence of {alg!r}')
    for alpha in congruence_lattice(alg, beta):
        gamma = higher_commutator(alg, [alpha, alpha], method, budget)
        if gamma.is_equality():
            continue
        degree = supernilpotence_degree(alg, alpha, cap, method, budget)
        if degree is None:
            raise SupernilpotenceCapError(f'{alpha} is not k-supernilpotent for any k <= {cap}')
        return NonabelianWitness(alpha, gamma, degree)
    return None


def centrality_check(alg: FiniteAlgebra, alpha: Partition, budget: Optional[int] = None) -> bool:
    """Whether [α, 1] = 0, computed by absorbing-polynomial generation."""
    top = Partition.total(alg.size)
    return higher_commutator(alg, [alpha, top], ABSORBING_GENERATION, budget).is_equality()
