import logging
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from algebra.finite_algebra import FiniteAlgebra
from algebra.function_table import FunctionTable
from algebra.relations import PartialFunction, RelationSet
from clones.clone_slice import CloneSlice
from duality.preservation import relation_constraints
from utils.config import DEFAULT_CAD_CAP
from utils.errors import BudgetExceededError, ValidationError

logger = logging.getLogger(__name__)


class CadDomain(NamedTuple):
    arity: int
    members: RelationSet
    witness: Tuple[Tuple[FunctionTable, FunctionTable], ...]

    def check_witness(self) -> bool:
        """Whether the witness equations have exactly the members as common solutions."""
        solutions = np.ones(self.members.size ** self.arity, dtype=bool)
        for f, g in self.witness:
            solutions &= f.values == g.values
        return np.array_equal(np.flatnonzero(solutions), self.members.codes)


def cad_enumerate(alg: FiniteAlgebra, k: int, clone_slice: CloneSlice,
                  cap: int = DEFAULT_CAD_CAP) -> List[CadDomain]:
    """
    All non-empty solution sets of conjunctions of equations f(x) = g(x)
    between k-ary terms.

    Args:
        alg: the algebra
        k: the arity
        clone_slice: the term clone slice of alg at arity k
        cap: largest number of distinct sets before BudgetExceededError

    Returns:
        the domains ordered by size and then by member codes
    """
    if clone_slice.arity != k or clone_slice.size != alg.size:
        raise ValidationError(f'clone slice of arity {clone_slice.arity} does not match arity {k}')
    tables = clone_slice.tables
    n_points = alg.size ** k

    # single equations, keyed by the packed solution mask
    found: Dict[bytes, Tuple[np.ndarray, Tuple[Tuple[int, int], ...]]] = {}
    full = np.ones(n_points, dtype=bool)
    found[np.packbits(full).tobytes()] = (full, ((0, 0),))
    for i in range(len(tables) - 1):
        masks = tables[i + 1:] == tables[i]
        packed = np.packbits(masks, axis=1)
        _, first = np.unique(packed, axis=0, return_index=True)
        for j in sorted(first.tolist()):
            mask = masks[j]
            if not mask.any():
                continue
            key = packed[j].tobytes()
            if key not in found:
                found[key] = (mask, ((i, i + 1 + j),))
                if len(found) > cap:
                    raise BudgetExceededError(f'more than {cap} c.a.d. sets at arity {k}', reached=len(found))
    logger.debug('%d single-equation solution sets at arity %d', len(found), k)

    # conjunctions
    frontier = list(found)
    singles = list(found)
    while frontier:
        added = []
        for key in frontier:
            mask, witness = found[key]
            for other in singles:
                other_mask, other_witness = found[other]
                meet = mask & other_mask
                if not meet.any():
                    continue
                meet_key = np.packbits(meet).tobytes()
                if meet_key in found:
                    continue
                found[meet_key] = (meet, witness + other_witness)
                added.append(meet_key)
                if len(found) > cap:
                    raise BudgetExceededError(f'more than {cap} c.a.d. sets at arity {k}', reached=len(found))
        frontier = added

    domains = []
    for mask, witness in found.values():
        members = RelationSet(alg.size, k, np.flatnonzero(mask))
        pairs = tuple((clone_slice[i], clone_slice[j]) for i, j in witness)
        domains.append(CadDomain(k, members, pairs))
    domains.sort(key=lambda d: (len(d.members), d.members.codes.tolist()))
    logger.info('%d c.a.d. domains at arity %d', len(domains), k)
    return domains


def preserves(alg: FiniteAlgebra, f: PartialFunction, relation: RelationSet) -> bool:
    """
    Whether f maps every choice of f.arity members of relation, whose
    coordinatewise columns all lie in the domain, back into relation.
    """
    if not relation.subuniverse:
        raise ValidationError('preservation is only decided for relations flagged as subuniverses')
    if relation.size != alg.size or f.size != alg.size:
        raise ValidationError('relation, partial function and algebra differ in universe size')
    points = relation_constraints(relation, f.domain)
    if not len(points):
        return True
    values = f.values[points].astype(np.int64)
    weights = alg.size ** np.arange(relation.n, dtype=np.int64)
    return bool(np.all(relation.contains_codes(values @ weights)))


def extends_to_term(f: PartialFunction, clone_slice: CloneSlice) -> Optional[FunctionTable]:
    """The first term table, in canonical order, agreeing with f on its domain, or None."""
    if clone_slice.arity != f.arity:
        raise ValidationError(f'clone slice arity {clone_slice.arity} differs from arity {f.arity}')
    hits = np.all(clone_slice.tables[:, f.domain.codes] == f.values, axis=1)
    if not hits.any():
        return None
    return clone_slice[int(np.argmax(hits))]
