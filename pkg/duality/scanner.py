"""
Search for partial operations on c.a.d. domains that preserve a set of
relations without being restrictions of term operations.
"""
import logging
from dataclasses import asdict, dataclass
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from algebra.finite_algebra import FiniteAlgebra
from algebra.relations import PartialFunction, RelationSet
from clones.clone_slice import TERM, CloneSlice, clone_upto
from duality.cad import CadDomain, cad_enumerate, extends_to_term
from duality.preservation import PreservationOracle
from utils.config import Caps
from utils.errors import BudgetExceededError, VerificationError

logger = logging.getLogger(__name__)

CERTIFIED = 'certified'
COUNTEREXAMPLE = 'counterexample'
INCONCLUSIVE = 'inconclusive'


@dataclass
class ScanStats:
    arity: int
    domains: int = 0
    assignments: int = 0
    pruned: int = 0
    preserving: int = 0
    extendable: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


class PartialFunctionScanner:
    def __init__(self, size: int, oracle: PreservationOracle, budget: Optional[int] = None):
        """
        Backtracking enumeration of the preserving partial functions on a
        domain. Points are assigned in TupleCode order, values ascending. A
        partial assignment is checked against the oracle only once it stops
        agreeing with every term table; restrictions of terms always preserve.

        Args:
            size: the universe size
            oracle: the relations to preserve
            budget: largest number of assignments over the scanner's lifetime
        """
        self.size = size
        self.oracle = oracle
        self.budget = budget
        self.assignments = 0
        self.pruned = 0

    def preserving_functions(self, domain: RelationSet,
                             tables: np.ndarray) -> Iterator[Tuple[np.ndarray, Optional[int]]]:
        """
        Args:
            domain: the domain
            tables: the term tables at the domain's arity

        Yields:
            the values of every preserving partial function, and the index of
            the first term table extending it or None
        """
        constraints = self.oracle.prepare(domain)
        columns = tables[:, domain.codes]
        values = np.zeros(len(domain), dtype=np.int64)

        def assign(point: int, candidates: np.ndarray) -> Iterator[Tuple[np.ndarray, Optional[int]]]:
            for value in range(self.size):
                self.assignments += 1
                if self.budget is not None and self.assignments > self.budget:
                    raise BudgetExceededError(f'scan exceeded {self.budget} assignments',
                                              reached=self.assignments)
                values[point] = value
                narrowed = candidates[columns[candidates, point] == value]
                if not len(narrowed) and not constraints.check(values, point):
                    self.pruned += 1
                    continue
                if point + 1 == len(values):
                    yield values.copy(), (int(narrowed[0]) if len(narrowed) else None)
                else:
                    yield from assign(point + 1, narrowed)

        yield from assign(0, np.arange(len(tables)))


class RelatednessVerdict(NamedTuple):
    status: str
    scanned_arity: int
    counterexample: Optional[PartialFunction]
    evidence: Optional[dict]
    stats: List[ScanStats]
    oracle: dict

    @property
    def label(self) -> str:
        if self.status == CERTIFIED:
            return f'certified up to arity {self.scanned_arity}'
        if self.status == COUNTEREXAMPLE:
            return f'counterexample at arity {self.scanned_arity}'
        return f'inconclusive at arity {self.scanned_arity}'


def shrink_counterexample(f: PartialFunction, domains: Sequence[CadDomain], oracle: PreservationOracle,
                          clone_slice: CloneSlice) -> PartialFunction:
    """
    Greedily move a counterexample to the smallest c.a.d. subdomain on which
    its restriction still preserves the oracle and still does not extend.
    """
    current = f
    for domain in sorted(domains, key=lambda d: len(d.members)):
        if len(domain.members) >= len(current.domain) or not domain.members.issubset(current.domain):
            continue
        candidate = current.restrict(domain.members)
        if oracle.verify(candidate) and extends_to_term(candidate, clone_slice) is None:
            logger.debug('counterexample shrunk from %d to %d points', len(current.domain), len(domain.members))
            current = candidate
    return current


def _evidence(f: PartialFunction, domain: CadDomain) -> dict:
    return {
        'domain': [list(t) for t in f.domain],
        'values': f.values.tolist(),
        'witness': [[g.to_list(), h.to_list()] for g, h in domain.witness],
        'preserves': True,
        'extends_to_term': False,
    }


def finite_relatedness_scan(alg: FiniteAlgebra, oracle: PreservationOracle, max_arity: int,
                            caps: Optional[Caps] = None, shrink: bool = False) -> RelatednessVerdict:
    """
    For every arity k <= max_arity and every c.a.d. domain at arity k, look
    for a partial function that preserves the oracle's relations but is not
    the restriction of a term.

    Args:
        alg: the algebra
        oracle: the candidate relations
        max_arity: K
        caps: clone budget, c.a.d. cap and scan budget
        shrink: move a counterexample to a smaller domain of the family when possible

    Returns:
        certified (up to arity K), the first counterexample in canonical
        order, or inconclusive at the arity where a budget overflowed
    """
    caps = caps or Caps()
    stats: List[ScanStats] = []
    for k in range(1, max_arity + 1):
        arity_stats = ScanStats(k)
        stats.append(arity_stats)
        try:
            clone_slice = clone_upto(alg, k, TERM, caps.clone_budget)
            domains = cad_enumerate(alg, k, clone_slice, caps.cad_cap)
            scanner = PartialFunctionScanner(alg.size, oracle, caps.scan_budget)
            for domain in tqdm(domains, unit=' domains', disable=len(domains) < 1e5, leave=False):
                arity_stats.domains += 1
                for values, extension in scanner.preserving_functions(domain.members, clone_slice.tables):
                    arity_stats.preserving += 1
                    if extension is not None:
                        arity_stats.extendable += 1
                        continue
                    f = PartialFunction(domain.members, values)
                    if not oracle.verify(f) or extends_to_term(f, clone_slice) is not None:
                        raise VerificationError(f'counterexample failed re-verification: {f}')
                    if shrink:
                        f = shrink_counterexample(f, domains, oracle, clone_slice)
                    arity_stats.assignments, arity_stats.pruned = scanner.assignments, scanner.pruned
                    logger.info('counterexample at arity %d: %s', k, f)
                    owner = next(d for d in domains if d.members == f.domain)
                    return RelatednessVerdict(COUNTEREXAMPLE, k, f, _evidence(f, owner), stats, oracle.describe())
            arity_stats.assignments, arity_stats.pruned = scanner.assignments, scanner.pruned
        except BudgetExceededError as e:
            logger.warning('scan inconclusive at arity %d: %s', k, e.message)
            return RelatednessVerdict(INCONCLUSIVE, k, None, {'reason': e.message}, stats, oracle.describe())
        logger.info('arity %d: %d domains, %d preserving partial functions, all extend', k,
                    arity_stats.domains, arity_stats.preserving)
    return RelatednessVerdict(CERTIFIED, max_arity, None, None, stats, oracle.describe())
