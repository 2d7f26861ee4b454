import random

import numpy as np
import pytest

from algebra.function_table import FunctionTable
from clones.clone_slice import POLYNOMIAL, TERM, clone_upto
from clones.commutator_terms import commutator_classify, is_absorbing
from clones.decomposition import decompose_commutator_sum, default_order, sum_of_commutators
from clones.malcev import find_malcev, is_malcev, translation_inverse
from utils.errors import ArityError, BudgetExceededError, ValidationError
from z4.z4_algebra import normal_form_slice


def z4_malcev():
    return FunctionTable.from_function(4, 3, lambda x, y, z: (x - y + z) % 4)


class TestCloneSlice:
    @pytest.mark.parametrize('k, count', [(1, 4), (2, 16)])
    def test_cyclic_group_terms(self, z4_group, k, count):
        assert len(clone_upto(z4_group, k)) == count

    def test_small_clones(self, klein, semilattice):
        assert len(clone_upto(klein, 1)) == 2
        assert len(clone_upto(semilattice, 2)) == 3
        assert len(clone_upto(semilattice, 3)) == 7

    def test_polynomials_add_constants(self, z4_group):
        assert len(clone_upto(z4_group, 1, POLYNOMIAL)) == 16

    def test_membership_and_export(self, z4_group):
        clone = clone_upto(z4_group, 1)
        assert FunctionTable.from_function(4, 1, lambda x: 3 * x % 4) in clone
        assert FunctionTable.constant(4, 1, 1) not in clone
        exported = clone.export()
        assert exported['count'] == 4
        assert exported['tables'] == sorted(exported['tables'])

    def test_invalid_requests(self, z4_group):
        with pytest.raises(ValidationError):
            clone_upto(z4_group, 0)
        with pytest.raises(ValidationError):
            clone_upto(z4_group, 1, 'derived')
        with pytest.raises(BudgetExceededError):
            clone_upto(z4_group, 2, TERM, 5)

    @pytest.mark.parametrize('k', [1, 2])
    def test_truncated_z4_matches_the_normal_forms(self, z4_2, k):
        assert np.array_equal(clone_upto(z4_2, k).tables, normal_form_slice(k, 2).tables)

    def test_truncated_z4_binary_count(self, z4_2):
        assert len(clone_upto(z4_2, 2)) == 128


class TestMalcev:
    def test_group_has_a_malcev_term(self, z4_group):
        m = find_malcev(z4_group)
        assert m is not None and is_malcev(m)
        assert m == z4_malcev()

    def test_semilattice_has_none(self, semilattice):
        assert find_malcev(semilattice) is None

    def test_translation_inverse(self, z4_group):
        f = translation_inverse(z4_group, z4_malcev())
        assert f == FunctionTable.from_function(4, 3, lambda x, b, c: (x + b - c) % 4)

    def test_translation_inverse_needs_malcev(self, z4_group):
        with pytest.raises(ArityError):
            translation_inverse(z4_group, FunctionTable.projection(4, 3, 0))


class TestCommutatorTerms:
    def test_nontrivial_commutator(self):
        f = FunctionTable.from_function(4, 3, lambda x, y, z: (z + 2 * (x - z) * (y - z)) % 4)
        witness = commutator_classify(f)
        assert witness is not None and not witness.is_trivial
        assert witness.rank == 2
        assert f(*witness.rank_args) != witness.rank_args[-1]

    def test_trivial_and_non_commutators(self):
        z = FunctionTable.projection(4, 2, 1)
        assert commutator_classify(z).is_trivial
        assert commutator_classify(z).rank == 0
        assert commutator_classify(FunctionTable.from_function(4, 2, lambda x, z: (x + z) % 4)) is None
        with pytest.raises(ArityError):
            commutator_classify(FunctionTable.projection(4, 1, 0))

    def test_absorbing(self):
        product = FunctionTable.from_function(4, 2, lambda x, y: 2 * x * y % 4)
        assert is_absorbing(product, (0, 0))
        assert not is_absorbing(product, (1, 1))


class TestDecomposition:
    def test_default_order(self):
        assert default_order(2) == [frozenset({1}), frozenset({2}), frozenset({1, 2})]

    def test_order_must_cover_every_subset(self, z4_2):
        f = FunctionTable.projection(4, 3, 0)
        with pytest.raises(ArityError):
            decompose_commutator_sum(z4_2, f, [frozenset({1})], malcev=z4_malcev())

    def test_sum_identity_on_random_terms(self, z4_2):
        rng = random.Random(7)
        m = z4_malcev()
        slices = {2: clone_upto(z4_2, 2), 3: normal_form_slice(3, 2)}
        for _ in range(25):
            arity = rng.choice([2, 3])
            clone = slices[arity]
            f = clone[rng.randrange(len(clone))]
            parts = decompose_commutator_sum(z4_2, f, malcev=m)
            order = default_order(arity - 1)
            assert np.array_equal(sum_of_commutators(m, f, parts, order), f.values)
            for subset, c in parts.items():
                assert c.arity == len(subset) + 1
                assert commutator_classify(c) is not None

    def test_reversed_order(self, z4_2):
        f = FunctionTable.from_function(4, 3, lambda x, y, z: (x + 3 * y + 2 * x * y + 1) % 4)
        order = default_order(2)[::-1]
        parts = decompose_commutator_sum(z4_2, f, order, malcev=z4_malcev())
        assert np.array_equal(sum_of_commutators(z4_malcev(), f, parts, order), f.values)
