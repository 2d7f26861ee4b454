import logging
from itertools import product
from typing import Dict, List, NamedTuple, Optional, Sequence

import numpy as np
from tqdm import tqdm

from algebra.finite_algebra import FiniteAlgebra
from utils.closure import close_rows
from utils.config import Caps
from utils.errors import PreconditionError
from witness.elements import build_generators, build_v, ghost, parity_values, v_range
from witness.setup import WitnessSetup

logger = logging.getLogger(__name__)


class GhostReport(NamedTuple):
    requested_depth: Optional[int]
    depth: int
    complete: bool
    elements: int
    applicable: int
    violations: int
    ghost_absent: bool
    ghost_parity: Optional[int]
    homomorphisms: Optional[dict]

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.ghost_absent and self.ghost_parity is not None

    @property
    def label(self) -> str:
        if not self.passed:
            return 'check failed: ghost present or parity invariant violated'
        if self.complete:
            return 'ghost absent from the full closure; parity invariant unviolated'
        claim = f'ghost absent from the depth-{self.depth} closure; parity invariant unviolated'
        return claim if self.depth == self.requested_depth else f'partial (budget reached): {claim}'

    def as_dict(self) -> dict:
        report = self._asdict()
        report['label'] = self.label
        return report


def flatten(elements: Sequence[np.ndarray]) -> np.ndarray:
    return np.stack([np.asarray(x).reshape(-1) for x in elements]).astype(np.uint8)


def enumerate_homomorphisms(alg: FiniteAlgebra, rows: np.ndarray, threshold: int) -> List[np.ndarray]:
    """
    Every homomorphism from the subpower on rows to alg, by brute force.

    Args:
        alg: the target algebra, acting coordinatewise on rows
        rows: a complete subuniverse of a power, shape (n, width)
        threshold: largest n accepted

    Returns:
        each homomorphism as the array of images of rows
    """
    n = len(rows)
    if n > threshold:
        raise PreconditionError(f'{n} elements exceed the homomorphism threshold {threshold}')
    index = {row.tobytes(): r for r, row in enumerate(rows)}
    tables = []
    for op in alg.ops:
        arguments = list(product(range(n), repeat=op.arity))
        results = []
        for args in arguments:
            image = op.table.evaluate(np.stack([rows[a] for a in args]).astype(np.int64)).astype(np.uint8)
            if image.tobytes() not in index:
                raise PreconditionError('rows are not closed under the operations')
            results.append(index[image.tobytes()])
        tables.append((op, np.array(arguments, dtype=np.int64).reshape(len(arguments), op.arity),
                       np.array(results, dtype=np.int64)))

    homomorphisms = []
    candidates = product(range(alg.size), repeat=n)
    for images in tqdm(candidates, total=alg.size ** n, disable=alg.size ** n < 1e5, leave=False):
        h = np.array(images, dtype=np.int64)
        if all(np.array_equal(h[results], op.table.evaluate(h[arguments].T)) for op, arguments, results in tables):
            homomorphisms.append(h)
    logger.debug('%d homomorphisms from %d elements', len(homomorphisms), n)
    return homomorphisms


def kernel_blocks(homomorphisms: Sequence[np.ndarray], members: Sequence[int]) -> List[List[int]]:
    """For every homomorphism, the sorted block sizes of its kernel on the given member indices."""
    blocks = []
    for h in homomorphisms:
        _, counts = np.unique(h[list(members)], return_counts=True)
        blocks.append(sorted(counts.tolist(), reverse=True))
    return blocks


def _homomorphism_summary(setup: WitnessSetup, rows: np.ndarray, threshold: int) -> Dict:
    homs = enumerate_homomorphisms(setup.superalgebra, rows, threshold)
    index = {row.tobytes(): r for r, row in enumerate(rows)}
    steps = v_range(setup)
    members = []
    if 0 in steps:
        for j in range(1, steps.stop + 1):
            key = flatten([build_v(setup, 0, j)[0]])[0].tobytes()
            if key in index:
                members.append(index[key])
    return {'count': len(homs), 'kernel_blocks': kernel_blocks(homs, members) if members else []}


def verify_ghost_absent(setup: WitnessSetup, depth: Optional[int] = None, caps: Optional[Caps] = None,
                        homomorphisms: bool = False) -> GhostReport:
    """
    Close the generators under the operations of B for depth rounds (to the
    fixpoint when depth is None), then check that the ghost is not among
    the members, that every member the parity functional applies to has
    parity o, and that the ghost does not.

    Args:
        setup: the witness setup
        depth: the term depth bound
        caps: closure budget and homomorphism threshold
        homomorphisms: enumerate homomorphisms into B when the closure is
            complete and small enough

    Returns:
        the counts; a budget overflow gives a partial report at the depth reached
    """
    caps = caps or Caps()
    generators = flatten([element for _, element in build_generators(setup)])
    closure = close_rows(setup.superalgebra, generators, budget=caps.closure_budget, max_rounds=depth, strict=False)
    shape = (-1, setup.length + 1, 1 << setup.k)
    members = closure.rows.reshape(shape)
    g = ghost(setup)

    applicable, value = parity_values(setup, members)
    violations = int(np.count_nonzero(applicable & (value != setup.o)))
    present = bool(np.any(np.all(closure.rows == flatten([g])[0], axis=1)))
    ghost_ok, ghost_value = parity_values(setup, g[None])
    ghost_parity = int(ghost_value[0]) if ghost_ok[0] and ghost_value[0] != setup.o else None
    logger.info('%d elements after %d rounds (complete: %s), %d applicable, %d violations', len(members),
                closure.depth, closure.complete, int(applicable.sum()), violations)

    summary = None
    if homomorphisms and closure.complete and len(closure.rows) <= caps.hom_threshold:
        summary = _homomorphism_summary(setup, closure.rows, caps.hom_threshold)
    return GhostReport(depth, closure.depth, closure.complete, len(members), int(applicable.sum()), violations,
                       not present, ghost_parity, summary)
