import numpy as np
import pytest

from algebra.function_table import FunctionTable
from algebra.relations import PartialFunction, RelationSet
from clones.clone_slice import clone_upto
from utils.errors import PreconditionError, ValidationError, VerificationError
from z4.z4_algebra import normal_form_slice, z4_algebra, z4_normal_forms, z4_term_normal_form
from z4.z4_cad import Z4CadForm, z4_cad_classify, z4_cad_domains, z4_preserves_all_sub_A4
from z4.z4_duality import EXHAUSTIVE, SAMPLED, check_dichotomy, check_hom_identity, z4_verify_duality


def triple_product():
    return FunctionTable.from_function(4, 3, lambda x, y, z: 2 * x * y * z % 4)


def domain(*points):
    return RelationSet.from_tuples(4, [(p,) for p in points])


class TestAlgebra:
    def test_operations(self):
        alg = z4_algebra(3)
        assert alg.signature == [('plus', 2), ('one', 1), ('dbl2', 2), ('dbl3', 3)]
        assert alg.op('dbl3')(1, 1, 1) == 2
        assert alg.op('dbl3')(1, 2, 1) == 0

    def test_truncation_needs_a_product(self):
        with pytest.raises(PreconditionError):
            z4_algebra(1)


class TestNormalForms:
    @pytest.mark.parametrize('k, cap, count', [(1, None, 16), (2, None, 128), (3, None, 4096), (3, 2, 2048)])
    def test_counts(self, k, cap, count):
        assert len(normal_form_slice(k, cap)) == count

    def test_forms_and_slice_agree(self):
        tables = {form.table() for form in z4_normal_forms(2)}
        assert len(tables) == 128
        assert tables == set(normal_form_slice(2).members)

    def test_recognizes_terms(self):
        form = z4_term_normal_form(triple_product())
        assert form.constant == 0 and form.lambdas == (0, 0, 0)
        assert form.cosets == frozenset({(1, 1, 1)})
        assert form.degree() == 3
        assert form.table() == triple_product()
        assert triple_product() in normal_form_slice(3)
        assert triple_product() not in normal_form_slice(3, 2)

    def test_affine_terms(self):
        f = FunctionTable.from_function(4, 2, lambda x, y: (1 + 3 * x + 2 * y) % 4)
        form = z4_term_normal_form(f)
        assert (form.constant, form.lambdas, form.cosets) == (1, (3, 2), frozenset())
        assert form.degree() == 1

    def test_rejects_non_terms(self):
        assert z4_term_normal_form(FunctionTable.from_function(4, 1, lambda x: x * x % 4)) is None
        assert z4_term_normal_form(FunctionTable.from_function(4, 1, lambda x: 1 if x == 3 else 0)) is None
        with pytest.raises(ValidationError):
            z4_term_normal_form(FunctionTable.projection(2, 1, 0))

    @pytest.mark.slow
    def test_truncations_differ_at_arity_three(self):
        small = clone_upto(z4_algebra(2), 3)
        large = clone_upto(z4_algebra(3), 3)
        assert len(small) == 2048
        assert len(large) == 4096
        assert np.array_equal(small.tables, normal_form_slice(3, 2).tables)
        assert np.array_equal(large.tables, normal_form_slice(3).tables)


class TestCad:
    def test_unary_family(self):
        assert [list(d) for d in z4_cad_domains(1)] == [
            [(0,)], [(1,)], [(2,)], [(3,)], [(0,), (2,)], [(1,), (3,)], [(0,), (1,), (2,), (3,)]]

    def test_every_enumerated_set_classifies(self):
        for d in z4_cad_domains(2):
            form = z4_cad_classify(d)
            assert form is not None and form.is_valid()
            assert form.members() == d

    def test_shifted_coset(self):
        form = z4_cad_classify(domain(1, 3))
        assert form == Z4CadForm(((0,), (2,)), ((0,),), (1,))
        assert list(form.members()) == [(1,), (3,)]

    def test_rejected_sets(self):
        assert z4_cad_classify(domain(0, 1)) is None
        assert z4_cad_classify(RelationSet.from_tuples(4, [(0, 0), (2, 0), (0, 2)])) is None
        with pytest.raises(PreconditionError):
            z4_cad_classify(RelationSet(4, 1, []))
        with pytest.raises(PreconditionError):
            z4_cad_domains(4)

    @pytest.mark.parametrize('k', [1, pytest.param(2, marks=pytest.mark.slow)])
    def test_classifier_accepts_exactly_the_enumerated_sets(self, k):
        family = set(z4_cad_domains(k))
        points = 4 ** k
        for mask in range(1, 2 ** points):
            subset = RelationSet(4, k, [code for code in range(points) if mask >> code & 1])
            assert (z4_cad_classify(subset) is not None) == (subset in family)

    def test_invalid_forms(self):
        assert not Z4CadForm(((0,), (2,)), ((0,), (2,)), (0,)).is_valid()
        assert not Z4CadForm(((0,),), ((1,),), (0,)).is_valid()
        assert not Z4CadForm(((0,), (1,)), ((0,),), (0,)).is_valid()

    def test_preservation_of_all_subuniverses(self):
        assert not z4_preserves_all_sub_A4(PartialFunction(domain(0, 2), [0, 1]))
        twice = FunctionTable.from_function(4, 1, lambda x: 2 * x % 4)
        assert z4_preserves_all_sub_A4(PartialFunction.restriction(twice, domain(1, 3)))
        with pytest.raises(PreconditionError):
            z4_preserves_all_sub_A4(PartialFunction(domain(0, 1), [0, 1]))


class TestDuality:
    def test_unary(self):
        report = z4_verify_duality(1)
        assert report.mode == EXHAUSTIVE
        assert report.domains == 7
        assert report.counterexamples == 0
        assert report.preserving == report.extendable == 4 * 4 + 8 + 8 + 16
        assert report.hom_checks > 0 and report.dichotomy_checks > 0
        assert report.verdict.startswith('zero counterexamples at arity 1')

    def test_sampled_binary(self):
        report = z4_verify_duality(2, sample=4, seed=1)
        assert report.mode == SAMPLED
        assert report.domains == 4
        assert report.counterexamples == 0
        assert report.preserving == report.extendable

    @pytest.mark.slow
    def test_binary(self):
        report = z4_verify_duality(2)
        assert report.mode == EXHAUSTIVE
        assert report.domains == len(z4_cad_domains(2))
        assert report.counterexamples == 0
        assert report.preserving == report.extendable

    def test_sub_properties_of_term_restrictions(self):
        f = FunctionTable.from_function(4, 2, lambda x, y: (1 + x + 2 * x * y) % 4)
        d = RelationSet.from_tuples(4, [(x, y) for x in range(4) for y in (0, 2)])
        restricted = PartialFunction.restriction(f, d)
        assert check_hom_identity(restricted) == len(d) * len(z4_cad_classify(d).U)
        assert check_dichotomy(restricted) == len(z4_cad_classify(d).reps)

    def test_dichotomy_catches_a_non_term(self):
        f = PartialFunction(domain(0, 1, 2, 3), [0, 0, 2, 2])
        assert check_hom_identity(f) == 8
        with pytest.raises(VerificationError):
            check_dichotomy(f)
