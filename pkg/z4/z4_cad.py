"""
Conjunct-atomic definable subsets of Z_4^k: translates of unions of cosets
v + U with U a subgroup of 2Z_4^k and 2v in U.
"""
import logging
from typing import FrozenSet, List, NamedTuple, Optional, Set, Tuple

import numpy as np

from algebra.relations import PartialFunction, RelationSet
from duality.preservation import SubpowerOracle
from utils.encoding import decode_all
from utils.errors import PreconditionError, ValidationError
from z4.z4_algebra import SIZE, normal_form_slice

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]

# Largest arity for which every subgroup of 2Z_4^k is enumerated
MAX_ENUMERATED_ARITY = 3


class Z4CadForm(NamedTuple):
    U: Tuple[Vector, ...]
    reps: Tuple[Vector, ...]
    shift: Vector

    @property
    def arity(self) -> int:
        return len(self.shift)

    def members(self) -> RelationSet:
        """shift + (v_1 + U ∪ … ∪ v_l + U)."""
        k = self.arity
        u = np.array(self.U, dtype=np.int64).reshape(-1, k)
        v = np.array(self.reps, dtype=np.int64).reshape(-1, k)
        rows = (np.asarray(self.shift, dtype=np.int64) + v[:, None, :] + u[None, :, :]).reshape(-1, k) % SIZE
        return RelationSet.from_rows(SIZE, rows)

    def is_valid(self) -> bool:
        """Distinct residues mod 2Z_4^k, 2v_i in U, U a subgroup of 2Z_4^k."""
        subgroup = set(self.U)
        if any(x % 2 for u in self.U for x in u) or (0,) * self.arity not in subgroup:
            return False
        if any(tuple((a + b) % SIZE for a, b in zip(u, w)) not in subgroup for u in self.U for w in self.U):
            return False
        residues = [tuple(x % 2 for x in v) for v in self.reps]
        if len(set(residues)) != len(residues):
            return False
        return all(tuple(2 * x % SIZE for x in v) in subgroup for v in self.reps)


def _rows_to_set(rows: np.ndarray) -> Set[Vector]:
    return {tuple(int(x) for x in row) for row in rows}


def z4_cad_classify(domain: RelationSet) -> Optional[Z4CadForm]:
    """
    Decide whether a non-empty subset of Z_4^k is c.a.d. over the Z_4
    algebra. The set is first translated by its least member so that it
    contains 0.

    Returns:
        the coset form, or None when the set is not c.a.d.
    """
    if domain.size != SIZE:
        raise ValidationError(f'expected a subset of Z_4^k, got universe size {domain.size}')
    if not len(domain):
        raise PreconditionError('c.a.d. classification needs a non-empty set')
    k = domain.n
    rows = domain.rows()
    shift = rows[0]
    translated = (rows - shift) % SIZE
    members = _rows_to_set(translated)

    U = sorted(row for row in members if all(x % 2 == 0 for x in row))
    subgroup = set(U)
    for u in U:
        for w in U:
            if tuple((a + b) % SIZE for a, b in zip(u, w)) not in subgroup:
                return None

    classes = {}
    for row in sorted(members):
        classes.setdefault(tuple(x % 2 for x in row), []).append(row)
    reps = []
    for residue in sorted(classes):
        v = classes[residue][0]
        if tuple(2 * x % SIZE for x in v) not in subgroup:
            return None
        coset = {tuple((a + b) % SIZE for a, b in zip(v, u)) for u in U}
        if coset != set(classes[residue]):
            return None
        reps.append(v)
    return Z4CadForm(tuple(U), tuple(reps), tuple(int(x) for x in shift))


def _subspaces(k: int) -> List[FrozenSet[int]]:
    """The subspaces of GF(2)^k, vectors as bit masks."""
    found = set()
    for chosen in range(1 << (1 << k)):
        vectors = frozenset(w for w in range(1 << k) if (chosen >> w) & 1)
        if 0 in vectors and all(a ^ b in vectors for a in vectors for b in vectors):
            found.add(vectors)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _bits(w: int, k: int) -> np.ndarray:
    return np.array([(w >> i) & 1 for i in range(k)], dtype=np.int64)


def z4_cad_domains(k: int) -> List[RelationSet]:
    """
    Every non-empty c.a.d. subset of Z_4^k, built from its coset form: a
    subspace S of GF(2)^k gives U = 2S, the residues of the reps range over
    subsets of S containing 0, every residue is lifted modulo U, and the
    result is translated by every element of Z_4^k.

    Returns:
        the sets ordered by size and then by member codes
    """
    if not 1 <= k <= MAX_ENUMERATED_ARITY:
        raise PreconditionError(f'c.a.d. enumeration supports arities 1..{MAX_ENUMERATED_ARITY}, got {k}')
    weights = SIZE ** np.arange(k, dtype=np.int64)
    translations = decode_all(k, SIZE).T
    found: Set[FrozenSet[int]] = set()
    for space in _subspaces(k):
        U = np.array([2 * _bits(w, k) for w in sorted(space)])
        # coset representatives of S in GF(2)^k, for lifting residues modulo U
        lifts, covered = [], set()
        for s in range(1 << k):
            if s not in covered:
                lifts.append(s)
                covered |= {s ^ w for w in space}
        nonzero = sorted(space - {0})
        for chosen in range(1 << len(nonzero)):
            residues = [w for j, w in enumerate(nonzero) if (chosen >> j) & 1]
            for lift_choice in range(len(lifts) ** len(residues)):
                cosets = [U]
                for w in residues:
                    lift_choice, index = divmod(lift_choice, len(lifts))
                    v = _bits(w, k) + 2 * _bits(lifts[index], k)
                    cosets.append((v + U) % SIZE)
                base = np.concatenate(cosets)
                for t in translations:
                    codes = ((base + t) % SIZE) @ weights
                    found.add(frozenset(codes.tolist()))
    domains = [RelationSet(SIZE, k, codes) for codes in found]
    domains.sort(key=lambda d: (len(d), d.codes.tolist()))
    logger.info('%d c.a.d. subsets of Z_4^%d', len(domains), k)
    return domains


def z4_subpower_oracle(power: int = 4, degree_cap: Optional[int] = None) -> SubpowerOracle:
    """Preservation of every subuniverse of A^power, with Sg computed from normal-form terms."""
    return SubpowerOracle(SIZE, power, lambda k: normal_form_slice(k, degree_cap).tables)


def z4_preserves_all_sub_A4(f: PartialFunction) -> bool:
    """
    Whether f preserves every subuniverse of A^4, decided by interpolating
    each restriction of f to at most four domain points by a term.
    """
    if z4_cad_classify(f.domain) is None:
        raise PreconditionError(f'domain {list(f.domain)} is not c.a.d.')
    return z4_subpower_oracle().verify(f)
