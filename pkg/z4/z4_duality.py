import logging
import random
from itertools import product
from typing import NamedTuple, Optional

import numpy as np

from algebra.relations import PartialFunction
from duality.cad import extends_to_term
from duality.scanner import PartialFunctionScanner
from utils.config import Caps
from utils.errors import VerificationError
from z4.z4_algebra import SIZE, normal_form_slice
from z4.z4_cad import Z4CadForm, z4_cad_classify, z4_cad_domains, z4_subpower_oracle

logger = logging.getLogger(__name__)

EXHAUSTIVE = 'exhaustive'
SAMPLED = 'sampled'


class Z4DualityReport(NamedTuple):
    arity: int
    truncation: Optional[int]
    mode: str
    domains: int
    preserving: int
    extendable: int
    counterexamples: int
    hom_checks: int
    dichotomy_checks: int
    assignments: int
    pruned: int

    def as_dict(self) -> dict:
        return self._asdict()

    @property
    def verdict(self) -> str:
        scope = 'sampled domains' if self.mode == SAMPLED else 'every c.a.d. domain'
        return (f'zero counterexamples at arity {self.arity} over {scope}: '
                f'all {self.preserving} preserving partial functions extend to terms')


def _normalized(f: PartialFunction, shift: np.ndarray) -> np.ndarray:
    """g(x) = f(x + shift) - f(shift) over all of Z_4^k, -1 outside the translated domain."""
    k = f.arity
    weights = SIZE ** np.arange(k, dtype=np.int64)
    rows = (f.domain.rows() - shift) % SIZE
    dense = np.full(SIZE ** k, -1, dtype=np.int64)
    dense[rows @ weights] = (f.values.astype(np.int64) - f(*shift)) % SIZE
    return dense


def check_hom_identity(f: PartialFunction, form: Optional[Z4CadForm] = None) -> int:
    """
    Check g(x + u) = g(x) + g(u) for every x in the translated domain and u in U.

    Returns:
        the number of pairs checked
    """
    form = form or z4_cad_classify(f.domain)
    k = f.arity
    weights = SIZE ** np.arange(k, dtype=np.int64)
    g = _normalized(f, np.asarray(form.shift))
    xs = (f.domain.rows() - np.asarray(form.shift)) % SIZE
    us = np.array(form.U, dtype=np.int64).reshape(-1, k)
    sums = (xs[:, None, :] + us[None, :, :]) % SIZE
    left = g[sums @ weights]
    right = (g[xs @ weights][:, None] + g[us @ weights][None, :]) % SIZE
    if np.any(left < 0) or not np.array_equal(left, right):
        raise VerificationError(f'additivity fails on U-cosets for {f}')
    return left.size


def check_dichotomy(f: PartialFunction, form: Optional[Z4CadForm] = None) -> int:
    """
    For every rep v of the domain's coset form, with t linear and t = g on U,
    check that x -> g(xv) - t(xv) is identically 0 or equal to 2x.

    Returns:
        the number of reps checked
    """
    form = form or z4_cad_classify(f.domain)
    k = f.arity
    weights = SIZE ** np.arange(k, dtype=np.int64)
    g = _normalized(f, np.asarray(form.shift))
    us = np.array(form.U, dtype=np.int64).reshape(-1, k)
    target = g[us @ weights]
    linear = None
    for lambdas in product(range(2), repeat=k):
        if np.array_equal((us @ np.asarray(lambdas, dtype=np.int64)) % SIZE, target):
            linear = np.asarray(lambdas, dtype=np.int64)
            break
    if linear is None:
        raise VerificationError(f'g restricted to U is not linear for {f}')

    scalars = np.arange(SIZE)
    for v in form.reps:
        multiples = (scalars[:, None] * np.asarray(v, dtype=np.int64)[None, :]) % SIZE
        h = (g[multiples @ weights] - multiples @ linear) % SIZE
        if not (np.all(h == 0) or np.array_equal(h, 2 * scalars % SIZE)):
            raise VerificationError(f'h for rep {v} is {h.tolist()}, neither 0 nor 2x, for {f}')
    return len(form.reps)


def z4_verify_duality(k: int, truncation: Optional[int] = None, sample: Optional[int] = None,
                      seed: int = 0, caps: Optional[Caps] = None) -> Z4DualityReport:
    """
    Check that every partial operation on a c.a.d. subset of Z_4^k that
    preserves all subuniverses of A^4 is the restriction of a term, along
    with the additivity and dichotomy properties of such operations.

    Args:
        k: the arity
        truncation: verify z4_algebra(truncation) instead of the full algebra
        sample: check only this many randomly chosen domains
        seed: seed for the domain sample
        caps: scan budget

    Returns:
        the counts; any failure raises VerificationError
    """
    caps = caps or Caps()
    domains = z4_cad_domains(k)
    mode = EXHAUSTIVE
    if sample is not None and sample < len(domains):
        chosen = sorted(random.Random(seed).sample(range(len(domains)), sample))
        domains = [domains[i] for i in chosen]
        mode = SAMPLED

    clone_slice = normal_form_slice(k, truncation)
    oracle = z4_subpower_oracle(4, truncation)
    scanner = PartialFunctionScanner(SIZE, oracle, caps.scan_budget)
    preserving = extendable = hom_checks = dichotomy_checks = 0
    for domain in domains:
        form = z4_cad_classify(domain)
        if form is None:
            raise VerificationError(f'enumerated domain {list(domain)} is rejected by the classifier')
        for values, extension in scanner.preserving_functions(domain, clone_slice.tables):
            preserving += 1
            f = PartialFunction(domain, values)
            if extension is None:
                if oracle.verify(f) and extends_to_term(f, clone_slice) is None:
                    raise VerificationError(f'{f} preserves every subuniverse of A^4 but is not a term restriction')
                raise VerificationError(f'scanner and oracle disagree on {f}')
            extendable += 1
            hom_checks += check_hom_identity(f, form)
            dichotomy_checks += check_dichotomy(f, form)
        logger.debug('domain of %d points done, %d preserving so far', len(domain), preserving)

    logger.info('arity %d: %d domains, %d preserving partial functions, no counterexample', k,
                len(domains), preserving)
    return Z4DualityReport(k, truncation, mode, len(domains), preserving, extendable, 0, hom_checks,
                           dichotomy_checks, scanner.assignments, scanner.pruned)

