import logging
from typing import NamedTuple, Optional, Tuple

import numpy as np

from algebra.finite_algebra import FiniteAlgebra
from algebra.function_table import FunctionTable
from algebra.partition import Partition
from clones.clone_slice import POLYNOMIAL, clone_upto
from clones.commutator_terms import commutator_mask
from clones.malcev import find_malcev
from commutators.higher_commutator import TERM_CONDITION
from commutators.nilpotence import minimal_nonabelian_below
from utils.config import Caps
from utils.encoding import decode_all
from utils.errors import NotFoundError, NotNilpotentError, PreconditionError, ValidationError

logger = logging.getLogger(__name__)

CASE_1 = 1
CASE_2 = 2


class WitnessSetup(NamedTuple):
    alg: FiniteAlgebra
    superalgebra: FiniteAlgebra
    alpha: Partition
    gamma: Partition
    k: int
    f: FunctionTable
    a: Tuple[int, ...]
    o: int
    case: int
    t: int
    window: Tuple[int, int]
    malcev: FunctionTable

    @property
    def length(self) -> int:
        return self.window[1] - self.window[0] + 1

    @property
    def value(self) -> int:
        """f(a_1, …, a_k, o)."""
        return self.f(*self.a, self.o)

    def describe(self) -> dict:
        return {
            'algebra': self.alg.name or repr(self.alg),
            'superalgebra_size': self.superalgebra.size,
            'alpha': self.alpha.blocks(),
            'gamma': self.gamma.blocks(),
            'k': self.k,
            'f': self.f.to_list(),
            'a': list(self.a),
            'o': self.o,
            'case': self.case,
            't': self.t,
            'window': list(self.window),
        }


def minimum_window(t: int) -> int:
    return 2 * (t + 3) + 2


def check_superalgebra(alg: FiniteAlgebra, superalgebra: FiniteAlgebra) -> None:
    """B must share the signature of A and contain A as the subalgebra on {0, …, |A|-1}."""
    if superalgebra.signature != alg.signature:
        raise ValidationError(f'superalgebra signature {superalgebra.signature} differs from {alg.signature}')
    if superalgebra.size < alg.size:
        raise ValidationError(f'superalgebra of size {superalgebra.size} cannot contain A of size {alg.size}')
    for op, big in zip(alg.ops, superalgebra.ops):
        coords = decode_all(op.arity, alg.size)
        if not np.array_equal(big.table.evaluate(coords), op.table.values):
            raise ValidationError(f'operation {op.name!r} of the superalgebra does not extend that of A')


def _witnesses(tables: np.ndarray, alpha: Partition, k: int, repeated: bool) -> Optional[Tuple[int, int]]:
    """
    The first (table index, argument code) with (a_i, o) in α for every i,
    f(a, o) != o and, when repeated, a_i = a_j for some i < j.
    """
    coords = decode_all(k + 1, alpha.size)
    inside = np.ones(coords.shape[1], dtype=bool)
    for i in range(k):
        inside &= alpha.rep[coords[i]] == alpha.rep[coords[k]]
    if repeated:
        collision = np.zeros(coords.shape[1], dtype=bool)
        for i in range(k):
            for j in range(i + 1, k):
                collision |= coords[i] == coords[j]
        inside &= collision
    hits = (tables[:, inside] != coords[k, inside]) if inside.any() else np.zeros((len(tables), 0), dtype=bool)
    rows = np.flatnonzero(hits.any(axis=1))
    if not len(rows):
        return None
    row = int(rows[0])
    return row, int(np.flatnonzero(inside)[np.argmax(hits[row])])


def setup_witness(alg: FiniteAlgebra, beta: Partition, window: Tuple[int, int], caps: Optional[Caps] = None,
                  superalgebra: Optional[FiniteAlgebra] = None, case_override: Optional[int] = None) -> WitnessSetup:
    """
    Fix the data of the ghost-element construction below β: a minimal
    non-abelian α <= β, γ = [α, α], the supernilpotence degree k of α, a
    commutator f of Pol_{k+1} with f(a_1, …, a_k, o) != o for a_i α o, and
    t = 2|B|+1.

    Args:
        alg: the nilpotent algebra A
        beta: the congruence to search below
        window: the index interval standing in for Z
        caps: clone budget and supernilpotence cap
        superalgebra: B, defaults to A
        case_override: CASE_1 or CASE_2; rejected when the algebra does not admit that case

    Returns:
        the setup, Case 2 whenever some witness has a repeated argument
    """
    caps = caps or Caps()
    superalgebra = superalgebra if superalgebra is not None else alg
    if superalgebra is not alg:
        check_superalgebra(alg, superalgebra)
    if case_override not in (None, CASE_1, CASE_2):
        raise ValidationError(f'unknown case {case_override!r}')

    found = minimal_nonabelian_below(alg, beta, caps.supernilpotence_cap, TERM_CONDITION, caps.clone_budget)
    if found is None:
        raise PreconditionError(f'every congruence below {beta} is abelian')
    k = found.degree
    malcev = find_malcev(alg, caps.clone_budget)
    if malcev is None:
        raise NotNilpotentError(f'{alg!r} has no Mal\'cev term')

    tables = clone_upto(alg, k + 1, POLYNOMIAL, caps.clone_budget).tables
    commutators = tables[commutator_mask(tables, alg.size, k + 1)]
    logger.debug('%d commutators in Pol_%d', len(commutators), k + 1)

    repeated = _witnesses(commutators, found.alpha, k, repeated=True)
    if case_override == CASE_1 and repeated is not None:
        raise PreconditionError('Case 1 needs every commutator to return z on repeated arguments')
    if case_override == CASE_2 and repeated is None:
        raise PreconditionError('no commutator is non-trivial on repeated arguments')
    case = CASE_2 if repeated is not None else CASE_1
    hit = repeated if repeated is not None else _witnesses(commutators, found.alpha, k, repeated=False)
    if hit is None:
        raise NotFoundError(f'no commutator of rank {k} in Pol_{k + 1} is non-trivial inside {found.alpha}')

    row, code = hit
    f = FunctionTable(alg.size, k + 1, commutators[row])
    args = decode_all(k + 1, alg.size)[:, code]
    a, o = [int(x) for x in args[:k]], int(args[k])
    if case == CASE_2:
        i, j = next((i, j) for i in range(k) for j in range(i + 1, k) if a[i] == a[j])
        order = [i, j] + [p for p in range(k) if p not in (i, j)] + [k]
        f = f.permute([order.index(p) for p in range(k + 1)])
        a = [a[p] for p in order[:k]]

    t = 2 * superalgebra.size + 1
    lo, hi = window
    if hi - lo + 1 < minimum_window(t):
        raise PreconditionError(f'window [{lo}, {hi}] is shorter than {minimum_window(t)} for t = {t}')
    setup = WitnessSetup(alg, superalgebra, found.alpha, found.gamma, k, f, tuple(a), o, case, t, (lo, hi), malcev)
    if setup.value == o:
        raise ValidationError(f'f{tuple(a) + (o,)} = o after reordering the arguments')
    logger.info('witness setup: k=%d, case %d, a=%s, o=%d, t=%d', k, case, a, o, t)
    return setup
