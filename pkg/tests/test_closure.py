import numpy as np
import pytest

from utils.closure import close_rows, position_quotient
from utils.errors import BudgetExceededError


def test_cyclic_group_generated_by_one(z4_group):
    closure = close_rows(z4_group, np.array([[1]]))
    assert closure.complete
    assert closure.rows.ravel().tolist() == [0, 1, 2, 3]


def test_rows_are_sorted_lexicographically(z4_group):
    closure = close_rows(z4_group, np.array([[1, 2]]))
    assert closure.rows.tolist() == [[0, 0], [1, 2], [2, 0], [3, 2]]


def test_round_limit(z4_group):
    closure = close_rows(z4_group, np.array([[1]]), max_rounds=0)
    assert not closure.complete
    assert closure.depth == 0
    assert closure.rows.tolist() == [[1]]

    closure = close_rows(z4_group, np.array([[1]]), max_rounds=1)
    assert closure.depth == 1
    assert closure.rows.ravel().tolist() == [1, 2]


def test_budget(z4_group):
    with pytest.raises(BudgetExceededError, match='incomplete closure') as info:
        close_rows(z4_group, np.array([[1, 1]]), budget=2)
    assert info.value.reached > 2

    partial = close_rows(z4_group, np.array([[1, 1]]), budget=2, strict=False)
    assert not partial.complete
    assert len(partial.rows) >= 2


def test_constant_operation_has_a_single_quotient_class(z4_2):
    assert position_quotient(z4_2.op('one'), 0).tolist() == [0, 0, 0, 0]
    # 2xy only sees x mod 2
    assert position_quotient(z4_2.op('dbl2'), 0).tolist() == [0, 1, 0, 1]


def test_empty_generators(z4_group):
    with pytest.raises(ValueError):
        close_rows(z4_group, np.zeros((0, 2)))
