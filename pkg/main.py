import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from algebra.finite_algebra import FiniteAlgebra
from algebra.io import load_algebra_file
from algebra.partition import Partition
from algebra.relations import RelationSet
from algebra.subuniverse import is_subuniverse
from clones.clone_slice import KINDS, TERM, clone_upto
from commutators.higher_commutator import TERM_CONDITION, higher_commutator, method_names
from commutators.nilpotence import centrality_check, congruence_lattice, lower_central_series
from duality.preservation import RelationsOracle, SubpowerOracle
from duality.scanner import CERTIFIED, COUNTEREXAMPLE, finite_relatedness_scan
from reports.report import build_report, dump_report, write_report
from utils.config import Caps
from utils.errors import (BudgetExceededError, NotFoundError, SupernilpotenceCapError, ValidationError,
                          VerificationError)
from witness.elements import build_generators, e, ghost, parity_functional
from witness.ghost import verify_ghost_absent
from witness.setup import setup_witness
from z4.z4_algebra import normal_form_slice, z4_algebra
from z4.z4_duality import z4_verify_duality

logger = logging.getLogger(__name__)

CLONE = 'clone'
COMMUTATORS = 'commutators'
DUALIZE_SCAN = 'dualize-scan'
Z4_VERIFY = 'z4-verify'
WITNESS = 'witness'
SUBCOMMANDS = (CLONE, COMMUTATORS, DUALIZE_SCAN, Z4_VERIFY, WITNESS)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


@dataclass
class RunConfig:
    subcommand: str
    algebra_path: Optional[str] = None
    z4_truncation: Optional[int] = None
    caps: Caps = field(default_factory=Caps)
    output_path: Optional[str] = None
    options: Dict[str, Any] = field(default_factory=dict)

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise ValidationError(f'unknown subcommand {self.subcommand!r}')
        self.caps.validate()
        if self.subcommand != Z4_VERIFY and (self.algebra_path is None) == (self.z4_truncation is None):
            raise ValidationError('give exactly one of --algebra and --z4')

    def inputs(self) -> dict:
        return {'algebra': self.algebra_path, 'z4': self.z4_truncation, 'options': self.options}


def load_input(config: RunConfig) -> FiniteAlgebra:
    if config.algebra_path is not None:
        return load_algebra_file(config.algebra_path)
    return z4_algebra(config.z4_truncation)


def run_clone(config: RunConfig) -> Tuple[int, dict, str]:
    alg = load_input(config)
    k = config.options.get('arity') or config.caps.max_arity
    kind = config.options.get('kind', TERM)
    clone_slice = clone_upto(alg, k, kind, config.caps.clone_budget)
    results = {'algebra': repr(alg), 'arity': k, 'kind': kind, 'count': len(clone_slice)}
    if config.options.get('emit'):
        results['clone'] = clone_slice.export()
    return EXIT_OK, results, f'{kind} clone slice of arity {k} has {len(clone_slice)} members'


def run_commutators(config: RunConfig) -> Tuple[int, dict, str]:
    alg = load_input(config)
    method = config.options.get('method', TERM_CONDITION)
    budget = config.caps.clone_budget
    report = lower_central_series(alg, config.caps.supernilpotence_cap, method, budget)
    top = Partition.total(alg.size)
    lattice = congruence_lattice(alg)
    results = {
        'algebra': repr(alg),
        'method': method,
        'label': 'term-condition' if method == TERM_CONDITION else f'per {method}',
        'congruences': lattice,
        'congruence_count': len(lattice),
        'series': report.series,
        'nilpotent': report.is_nilpotent,
        'nilpotency_class': report.nilpotency_class,
        'supernilpotence_degree': report.supernilpotence_degree,
        'binary_commutator': higher_commutator(alg, [top, top], method, budget),
    }
    if config.options.get('center'):
        results['center'] = [theta for theta in lattice if centrality_check(alg, theta, budget)]
    if not report.is_nilpotent:
        verdict = 'not nilpotent'
    elif report.is_abelian:
        verdict = 'abelian'
    elif report.supernilpotence_degree is None:
        verdict = (f'nilpotent of class {report.nilpotency_class}, '
                   f'not k-supernilpotent for k <= {report.supernilpotence_cap}')
    else:
        verdict = (f'nilpotent of class {report.nilpotency_class}, '
                   f'{report.supernilpotence_degree}-supernilpotent')
    return EXIT_OK, results, verdict


def _load_relation(path: str, alg: FiniteAlgebra) -> RelationSet:
    with open(path, encoding='utf-8') as f:
        try:
            document = json.load(f)
        except json.JSONDecodeError as exc:
            raise ValidationError(f'relation file {path} is not valid JSON: {exc}')
    if not isinstance(document, dict) or 'tuples' not in document:
        raise ValidationError(f'relation file {path} must be an object with a "tuples" list')
    if document.get('size', alg.size) != alg.size:
        raise ValidationError(f'relation in {path} has size {document["size"]}, the algebra has size {alg.size}')
    try:
        relation = RelationSet.from_tuples(alg.size, document['tuples'], document.get('n'))
    except (TypeError, ValueError) as exc:
        raise ValidationError(f'relation file {path} has malformed tuples: {exc}')
    if not is_subuniverse(alg, relation):
        raise ValidationError(f'relation in {path} is not a subuniverse of a power of {alg!r}')
    return RelationSet(relation.size, relation.n, relation.codes, subuniverse=True)


def run_dualize_scan(config: RunConfig) -> Tuple[int, dict, str]:
    alg = load_input(config)
    relation_paths = config.options.get('relations')
    if relation_paths is not None:
        oracle = RelationsOracle(alg, [_load_relation(path, alg) for path in relation_paths])
    else:
        budget = config.caps.clone_budget
        oracle = SubpowerOracle(alg.size, config.options.get('power', 4),
                                lambda k: clone_upto(alg, k, TERM, budget).tables)
    k = config.options.get('arity') or config.caps.max_arity
    verdict = finite_relatedness_scan(alg, oracle, k, config.caps, shrink=config.options.get('shrink', False))
    results = {
        'algebra': repr(alg),
        'status': verdict.status,
        'oracle': verdict.oracle,
        'stats': [stats.as_dict() for stats in verdict.stats],
        'counterexample': verdict.evidence if verdict.status == COUNTEREXAMPLE else None,
    }
    if verdict.status == CERTIFIED:
        return EXIT_OK, results, verdict.label
    if verdict.status == COUNTEREXAMPLE:
        return EXIT_FAILED, results, verdict.label
    results['reason'] = verdict.evidence['reason']
    return EXIT_INCONCLUSIVE, results, verdict.label


def run_z4_verify(config: RunConfig) -> Tuple[int, dict, str]:
    k = config.options.get('arity') or config.caps.max_arity
    truncation = config.options.get('truncation')
    report = z4_verify_duality(k, truncation, config.options.get('sample'), config.options.get('seed', 0),
                               config.caps)
    results = report.as_dict()
    if config.options.get('emit_clone'):
        results['clone'] = normal_form_slice(k, truncation).export()
    return EXIT_OK, results, report.verdict


def _parse_beta(blocks: Optional[str], size: int) -> Partition:
    if blocks is None:
        return Partition.total(size)
    try:
        return Partition.from_blocks(size, json.loads(blocks))
    except (json.JSONDecodeError, TypeError, IndexError, ValueError) as exc:
        raise ValidationError(f'--beta must be a JSON list of blocks of elements below {size}: {exc}')


def run_witness(config: RunConfig) -> Tuple[int, dict, str]:
    alg = load_input(config)
    superalgebra = None
    if config.options.get('superalgebra'):
        superalgebra = load_algebra_file(config.options['superalgebra'])
    beta = _parse_beta(config.options.get('beta'), alg.size)
    setup = setup_witness(alg, beta, config.caps.window, config.caps, superalgebra,
                          config.options.get('case_override'))
    report = verify_ghost_absent(setup, config.caps.depth, config.caps, config.options.get('homomorphisms', False))
    results = {
        'setup': setup.describe(),
        'e': e(setup),
        'ghost_parity': parity_functional(setup, ghost(setup)),
        'report': report.as_dict(),
    }
    if config.options.get('dump_generators'):
        results['generators'] = {name: element for name, element in build_generators(setup)}
    return (EXIT_OK if report.passed else EXIT_FAILED), results, report.label


HANDLERS: Dict[str, Callable[[RunConfig], Tuple[int, dict, str]]] = {
    CLONE: run_clone,
    COMMUTATORS: run_commutators,
    DUALIZE_SCAN: run_dualize_scan,
    Z4_VERIFY: run_z4_verify,
    WITNESS: run_witness,
}


def run(config: RunConfig) -> Tuple[int, dict]:
    """
    Run one subcommand.

    Returns:
        the exit status and the report document
    """
    try:
        config.validate()
        status, results, verdict = HANDLERS[config.subcommand](config)
    except (VerificationError, NotFoundError) as exc:
        status, results, verdict = EXIT_FAILED, _error(exc), f'check failed: {exc.message}'
    except (BudgetExceededError, SupernilpotenceCapError) as exc:
        status, results, verdict = EXIT_INCONCLUSIVE, _error(exc), f'inconclusive: {exc.message}'
    except ValidationError as exc:
        status, results, verdict = EXIT_INPUT, _error(exc), f'input error: {exc.message}'
    except OSError as exc:
        status, results, verdict = EXIT_INPUT, {'error': str(exc), 'error_type': type(exc).__name__}, \
            f'input error: {exc.strerror or exc}'
    logger.info('%s finished with status %d', config.subcommand, status)
    return status, build_report(config.subcommand, config.inputs(), config.caps, results, verdict, status)


def _error(exc) -> dict:
    return {'error': exc.message, 'error_type': type(exc).__name__}


def _window(text: str) -> Tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f'window must be "lo,hi", got {text!r}')
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='nildual',
                                     description='Commutators, supernilpotence and duality checks for finite algebras.')
    parser.add_argument('--verbose', action='store_true', help='Log progress at DEBUG level.')
    parser.add_argument('--output', help='Write the report here instead of standard output.')
    parser.add_argument('--clone-budget', type=int, help='Largest clone slice or subpower generated.')
    parser.add_argument('--supernilpotence-cap', type=int, help='Largest supernilpotence degree tested.')
    parser.add_argument('--closure-budget', type=int, help='Largest witness closure.')
    parser.add_argument('--cad-cap', type=int, help='Largest number of c.a.d. domains per arity.')
    parser.add_argument('--scan-budget', type=int, help='Largest number of scanner assignments.')
    subparsers = parser.add_subparsers(dest='subcommand', required=True)

    def with_algebra(sub):
        source = sub.add_mutually_exclusive_group()
        source.add_argument('--algebra', help='Path of a JSON algebra document.')
        source.add_argument('--z4', type=int, metavar='M', help='Use the built-in Z_4 algebra truncated at arity M.')
        return sub

    clone = with_algebra(subparsers.add_parser(CLONE, help='Generate a clone slice.'))
    clone.add_argument('--arity', type=int)
    clone.add_argument('--kind', choices=KINDS, default=TERM)
    clone.add_argument('--emit', action='store_true', help='Include the sorted tables.')

    commutators = with_algebra(subparsers.add_parser(COMMUTATORS, help='Nilpotence and supernilpotence report.'))
    commutators.add_argument('--method', choices=method_names(), default=TERM_CONDITION)
    commutators.add_argument('--center', action='store_true', help='Also test every congruence for centrality.')

    scan = with_algebra(subparsers.add_parser(DUALIZE_SCAN, help='Finite relatedness scan on c.a.d. domains.'))
    scan.add_argument('--arity', type=int, help='Largest arity K scanned.')
    scan.add_argument('--relations', nargs='+', help='JSON relation files; default is every subuniverse of A^n.')
    scan.add_argument('--power', type=int, default=4, help='n for the all-subuniverses source.')
    scan.add_argument('--shrink', action='store_true', help='Shrink a counterexample to a smaller domain.')

    z4 = subparsers.add_parser(Z4_VERIFY, help='Verify the Z_4 duality at one arity.')
    z4.add_argument('--arity', type=int)
    z4.add_argument('--truncation', type=int, help='Verify z4_algebra(M) instead of the full algebra.')
    z4.add_argument('--sample', type=int, help='Check this many random c.a.d. domains.')
    z4.add_argument('--seed', type=int, default=0)
    z4.add_argument('--emit-clone', action='store_true')

    witness = with_algebra(subparsers.add_parser(WITNESS, help='Ghost-element witness construction.'))
    witness.add_argument('--beta', help='JSON list of blocks; default is the total congruence.')
    witness.add_argument('--window', type=_window, help='Index window "lo,hi".')
    witness.add_argument('--depth', type=int, help='Term depth of the closure.')
    witness.add_argument('--case-override', type=int, choices=(1, 2))
    witness.add_argument('--superalgebra', help='JSON document of B, with A as the subalgebra on 0..|A|-1.')
    witness.add_argument('--homomorphisms', action='store_true', help='Enumerate homomorphisms of small closures.')
    witness.add_argument('--dump-generators', action='store_true')
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    caps = Caps.from_env().override(
        clone_budget=args.clone_budget,
        supernilpotence_cap=args.supernilpotence_cap,
        closure_budget=args.closure_budget,
        cad_cap=args.cad_cap,
        scan_budget=args.scan_budget,
        window=getattr(args, 'window', None),
        depth=getattr(args, 'depth', None),
    )
    common = {'verbose', 'output', 'clone_budget', 'supernilpotence_cap', 'closure_budget', 'cad_cap',
              'scan_budget', 'subcommand', 'algebra', 'z4', 'window', 'depth'}
    options = {k: v for k, v in vars(args).items() if k not in common and v is not None}
    return RunConfig(args.subcommand, getattr(args, 'algebra', None), getattr(args, 'z4', None), caps,
                     args.output, options)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        config = config_from_args(args)
    except ValidationError as exc:
        print(f'input error: {exc.message}', file=sys.stderr)
        return EXIT_INPUT
    status, report = run(config)
    if config.output_path:
        write_report(report, config.output_path)
    else:
        sys.stdout.write(dump_report(report))
    return status


if __name__ == '__main__':
    sys.exit(main())
