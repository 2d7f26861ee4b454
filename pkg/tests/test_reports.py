import json

import numpy as np
import pytest

from algebra.function_table import FunctionTable
from algebra.partition import Partition
from reports.report import TOOL, build_report, dump_report, load_schema, to_jsonable, write_report
from utils.config import CLONE_BUDGET_ENV, DEFAULT_CLONE_BUDGET, Caps
from utils.errors import ValidationError


class TestCaps:
    def test_environment_sets_the_clone_budget(self, monkeypatch):
        monkeypatch.setenv(CLONE_BUDGET_ENV, '1234')
        assert Caps.from_env().clone_budget == 1234
        monkeypatch.delenv(CLONE_BUDGET_ENV)
        assert Caps.from_env().clone_budget == DEFAULT_CLONE_BUDGET

    def test_bad_environment(self, monkeypatch):
        monkeypatch.setenv(CLONE_BUDGET_ENV, 'lots')
        with pytest.raises(ValidationError):
            Caps.from_env()

    def test_override_ignores_missing_values(self):
        caps = Caps().override(depth=1, window=None)
        assert caps.depth == 1
        assert caps.window == Caps().window

    @pytest.mark.parametrize('values', [{'clone_budget': 0}, {'depth': -1}, {'window': (3, 2)}])
    def test_validate(self, values):
        with pytest.raises(ValidationError):
            Caps(**values).validate()
        Caps(depth=0).validate()


class TestReport:
    def test_jsonable_values(self):
        assert to_jsonable(Partition.from_blocks(3, [[0, 2]])) == [[0, 2], [1]]
        assert to_jsonable({np.int64(3): {frozenset({2, 1})}}) == {'3': [[1, 2]]}
        assert to_jsonable(FunctionTable.projection(2, 1, 0)) == {'arity': 1, 'values': [0, 1]}
        assert to_jsonable((np.bool_(True), np.arange(2))) == [True, [0, 1]]

    def test_report_has_the_schema_fields(self):
        report = build_report('clone', {'z4': 2}, Caps(), {'count': np.int64(16)}, 'done', 0)
        assert set(load_schema()['required']) == set(report)
        assert report['tool'] == TOOL
        assert report['caps']['window'] == list(Caps().window)
        assert report['results'] == {'count': 16}

    def test_dump_is_canonical(self, tmp_path):
        report = build_report('clone', {'b': 1, 'a': 2}, Caps(), {}, 'done', 0)
        text = dump_report(report)
        assert text.endswith('\n')
        assert text == dump_report(json.loads(text))
        assert text.index('"caps"') < text.index('"verdict"')
        write_report(report, tmp_path / 'report.json')
        assert (tmp_path / 'report.json').read_text() == text
