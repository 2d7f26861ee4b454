import json

import pytest

from algebra.io import dump_algebra
from algebra.standard import cyclic_group, symmetric_group_s3
from main import EXIT_FAILED, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_OK, RunConfig, main, run


@pytest.fixture
def z4_group_file(tmp_path):
    path = tmp_path / 'z4.json'
    path.write_text(dump_algebra(cyclic_group(4)))
    return str(path)


@pytest.fixture
def s3_file(tmp_path):
    path = tmp_path / 's3.json'
    path.write_text(dump_algebra(symmetric_group_s3()))
    return str(path)


@pytest.fixture
def coset_relation_file(tmp_path):
    path = tmp_path / 'coset.json'
    tuples = [[a, b, (a + 2 * c) % 4, (b + 2 * c) % 4] for a in range(4) for b in range(4) for c in range(2)]
    path.write_text(json.dumps({'size': 4, 'tuples': tuples}))
    return str(path)


def invoke(tmp_path, *argv):
    output = tmp_path / 'report.json'
    status = main(['--output', str(output)] + list(argv))
    return status, json.loads(output.read_text()), output.read_bytes()


def test_clone(tmp_path):
    status, report, _ = invoke(tmp_path, 'clone', '--z4', '2', '--arity', '2', '--emit')
    assert status == EXIT_OK
    assert report['exit_status'] == EXIT_OK
    assert report['results']['count'] == 128
    assert len(report['results']['clone']['tables']) == 128


def test_commutators(tmp_path):
    status, report, _ = invoke(tmp_path, 'commutators', '--z4', '2', '--center')
    assert status == EXIT_OK
    assert report['verdict'] == 'nilpotent of class 2, 2-supernilpotent'
    assert report['results']['binary_commutator'] == [[0, 2], [1, 3]]
    assert report['results']['center'] == [[[0], [1], [2], [3]], [[0, 2], [1, 3]]]
    assert report['results']['congruence_count'] == 3
    assert sorted(report['results']['congruences']) == [[[0], [1], [2], [3]], [[0, 1, 2, 3]], [[0, 2], [1, 3]]]


def test_commutators_on_a_non_nilpotent_group(tmp_path, s3_file):
    status, report, _ = invoke(tmp_path, 'commutators', '--algebra', s3_file)
    assert status == EXIT_OK
    assert report['verdict'] == 'not nilpotent'
    assert report['results']['nilpotent'] is False


def test_scan_certifies(tmp_path, z4_group_file):
    status, report, _ = invoke(tmp_path, 'dualize-scan', '--algebra', z4_group_file, '--arity', '1')
    assert status == EXIT_OK
    assert report['verdict'] == 'certified up to arity 1'


def test_scan_counterexample(tmp_path, coset_relation_file):
    status, report, _ = invoke(tmp_path, 'dualize-scan', '--z4', '2', '--arity', '1',
                               '--relations', coset_relation_file)
    assert status == EXIT_FAILED
    assert report['verdict'] == 'counterexample at arity 1'
    assert report['results']['counterexample']['values'] == [0, 0, 2, 2]


def test_scan_budget(tmp_path, z4_group_file):
    status, report, _ = invoke(tmp_path, '--scan-budget', '1', 'dualize-scan', '--algebra', z4_group_file,
                               '--arity', '1')
    assert status == EXIT_INCONCLUSIVE
    assert report['verdict'] == 'inconclusive at arity 1'


def test_relation_must_be_a_subuniverse(tmp_path):
    path = tmp_path / 'bad.json'
    path.write_text(json.dumps({'size': 4, 'tuples': [[1]]}))
    status, report, _ = invoke(tmp_path, 'dualize-scan', '--z4', '2', '--relations', str(path))
    assert status == EXIT_INPUT
    assert report['results']['error_type'] == 'ValidationError'


@pytest.mark.parametrize('content', ['{"size": 4, ', '{"size": 4}', '[[0, 0]]', '{"size": 4, "tuples": 7}'])
def test_malformed_relation_files(tmp_path, content):
    path = tmp_path / 'malformed.json'
    path.write_text(content)
    status, report, _ = invoke(tmp_path, 'dualize-scan', '--z4', '2', '--relations', str(path))
    assert status == EXIT_INPUT
    assert report['results']['error_type'] == 'ValidationError'
    assert str(path) in report['verdict']


def test_z4_verify(tmp_path):
    status, report, _ = invoke(tmp_path, 'z4-verify', '--arity', '1')
    assert status == EXIT_OK
    assert report['results']['preserving'] == 48
    assert report['results']['counterexamples'] == 0


def test_witness(tmp_path):
    status, report, _ = invoke(tmp_path, 'witness', '--z4', '2', '--depth', '1')
    assert status == EXIT_OK
    assert report['results']['setup']['case'] == 2
    assert report['results']['e'] == [0, 0, 0, 2]
    assert report['results']['ghost_parity'] == 2
    assert report['caps']['depth'] == 1


def test_witness_on_an_abelian_algebra(tmp_path, z4_group_file):
    status, report, _ = invoke(tmp_path, 'witness', '--algebra', z4_group_file, '--depth', '0')
    assert status == EXIT_INPUT
    assert report['results']['error_type'] == 'PreconditionError'


@pytest.mark.parametrize('beta', ['[[0, 7]]', '[[0, -1]]', 'not json', '7'])
def test_malformed_beta(tmp_path, beta):
    status, report, _ = invoke(tmp_path, 'witness', '--z4', '2', '--beta', beta)
    assert status == EXIT_INPUT
    assert report['results']['error_type'] == 'ValidationError'


def test_missing_file(tmp_path):
    status, report, _ = invoke(tmp_path, 'clone', '--algebra', str(tmp_path / 'missing.json'))
    assert status == EXIT_INPUT
    assert report['verdict'].startswith('input error')


def test_algebra_source_is_required():
    status, report = run(RunConfig('clone'))
    assert status == EXIT_INPUT
    assert report['results']['error_type'] == 'ValidationError'


@pytest.mark.parametrize('argv', [
    ['clone', '--z4', '2', '--arity', '1'],
    ['commutators', '--z4', '2'],
    ['z4-verify', '--arity', '1'],
    ['witness', '--z4', '2', '--depth', '0'],
])
def test_reports_are_deterministic(tmp_path, argv):
    _, _, first = invoke(tmp_path, *argv)
    _, _, second = invoke(tmp_path, *argv)
    assert first == second


def test_certified_reports_are_deterministic(tmp_path, z4_group_file):
    _, report, first = invoke(tmp_path, 'dualize-scan', '--algebra', z4_group_file, '--arity', '1')
    _, _, second = invoke(tmp_path, 'dualize-scan', '--algebra', z4_group_file, '--arity', '1')
    assert report['results']['status'] == 'certified'
    assert first == second


def test_stdout(capsys):
    assert main(['clone', '--z4', '2', '--arity', '1']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['results']['count'] == 16
