from itertools import product

import pytest

from algebra.partition import Partition
from commutators.higher_commutator import (ABSORBING_GENERATION, LITERAL, NILPOTENT_T, TERM_CONDITION,
                                           commutator_power, higher_commutator, method_names)
from commutators.nilpotence import (centrality_check, congruence_lattice, is_abelian, lower_central_series,
                                    minimal_nonabelian_below, supernilpotence_degree)
from utils.errors import NotNilpotentError, SupernilpotenceCapError, ValidationError

MOD2 = Partition.from_blocks(4, [[0, 2], [1, 3]])


def total(alg):
    return Partition.total(alg.size)


class TestHigherCommutator:
    def test_truncated_z4(self, z4_2):
        top = total(z4_2)
        for method in method_names():
            assert higher_commutator(z4_2, [top, top], method) == MOD2
            assert higher_commutator(z4_2, [top, top, top], method).is_equality()

    def test_abelian_group(self, z4_group):
        top = total(z4_group)
        assert higher_commutator(z4_group, [top, top], ABSORBING_GENERATION).is_equality()
        assert higher_commutator(z4_group, [top, top], TERM_CONDITION).is_equality()

    def test_s3_derived_congruence(self, s3):
        top = total(s3)
        assert higher_commutator(s3, [top, top], TERM_CONDITION).blocks() == [[0, 3, 4], [1, 2, 5]]

    def test_nilpotent_t_rejects_non_nilpotent_algebras(self, s3):
        top = total(s3)
        with pytest.raises(NotNilpotentError):
            higher_commutator(s3, [top, top], NILPOTENT_T)

    def test_literal_t_set_source(self, z4_2):
        top = total(z4_2)
        assert higher_commutator(z4_2, [top, top], NILPOTENT_T, source=LITERAL) == MOD2

    def test_invalid_queries(self, z4_group):
        top = total(z4_group)
        with pytest.raises(ValidationError):
            higher_commutator(z4_group, [top])
        with pytest.raises(ValidationError):
            higher_commutator(z4_group, [top, top], 'centralizer')
        with pytest.raises(ValidationError):
            higher_commutator(z4_group, [top, Partition.from_blocks(4, [[0, 1]])])

    @pytest.mark.parametrize('name', ['z4_group', 'klein', 'z6_group', 'z4_2'])
    def test_methods_agree_on_binary_commutators(self, request, name):
        alg = request.getfixturevalue(name)
        lattice = congruence_lattice(alg)
        for alpha, beta in product(lattice, repeat=2):
            reference = higher_commutator(alg, [alpha, beta], ABSORBING_GENERATION)
            assert higher_commutator(alg, [alpha, beta], NILPOTENT_T) == reference
            assert higher_commutator(alg, [alpha, beta], TERM_CONDITION) == reference

    @pytest.mark.parametrize('name', ['z4_group', 'klein'])
    def test_methods_agree_on_ternary_commutators(self, request, name):
        alg = request.getfixturevalue(name)
        lattice = congruence_lattice(alg)
        for args in product(lattice, repeat=3):
            reference = higher_commutator(alg, list(args), ABSORBING_GENERATION)
            assert higher_commutator(alg, list(args), NILPOTENT_T) == reference

    @pytest.mark.slow
    def test_methods_agree_on_ternary_commutators_of_z6(self, z6_group):
        lattice = congruence_lattice(z6_group)
        for args in product(lattice, repeat=3):
            reference = higher_commutator(z6_group, list(args), ABSORBING_GENERATION)
            assert higher_commutator(z6_group, list(args), NILPOTENT_T) == reference

    @pytest.mark.slow
    def test_methods_agree_on_ternary_commutators_of_truncated_z4(self, z4_2):
        lattice = congruence_lattice(z4_2)
        for args in product(lattice, repeat=3):
            reference = higher_commutator(z4_2, list(args), ABSORBING_GENERATION)
            assert higher_commutator(z4_2, list(args), NILPOTENT_T) == reference
            assert higher_commutator(z4_2, list(args), TERM_CONDITION) == reference

    def test_commutators_decrease_with_more_arguments(self, z4_2):
        top = total(z4_2)
        assert commutator_power(z4_2, top, 3) <= commutator_power(z4_2, top, 2)
        assert commutator_power(z4_2, MOD2, 3) <= commutator_power(z4_2, MOD2, 2)


class TestNilpotence:
    def test_truncated_z4_is_two_supernilpotent(self, z4_2):
        report = lower_central_series(z4_2)
        assert report.series == [total(z4_2), MOD2, Partition.equality(4)]
        assert report.nilpotency_class == 2
        assert report.supernilpotence_degree == 2
        assert report.is_nilpotent and not report.is_abelian

    def test_abelian_group(self, z4_group):
        report = lower_central_series(z4_group)
        assert report.is_abelian
        assert report.supernilpotence_degree == 1

    @pytest.mark.parametrize('name', ['s3', 'semilattice'])
    def test_not_nilpotent(self, request, name):
        report = lower_central_series(request.getfixturevalue(name))
        assert not report.is_nilpotent
        assert report.supernilpotence_degree is None

    def test_degree_cap(self, z4_2):
        assert supernilpotence_degree(z4_2, total(z4_2), cap=1) is None
        assert supernilpotence_degree(z4_2, Partition.equality(4), cap=1) == 0

    def test_congruence_lattices(self, z4_2, klein, z6_group, s3, semilattice):
        assert congruence_lattice(z4_2) == [Partition.equality(4), MOD2, Partition.total(4)]
        assert len(congruence_lattice(klein)) == 5
        assert len(congruence_lattice(z6_group)) == 4
        assert len(congruence_lattice(s3)) == 3
        assert len(congruence_lattice(semilattice)) == 2
        assert congruence_lattice(z4_2, MOD2) == [Partition.equality(4), MOD2]

    def test_abelian_and_central_congruences(self, z4_2):
        assert is_abelian(z4_2, MOD2)
        assert not is_abelian(z4_2, total(z4_2))
        assert centrality_check(z4_2, MOD2)
        assert not centrality_check(z4_2, total(z4_2))

    def test_minimal_nonabelian(self, z4_2, z4_group):
        found = minimal_nonabelian_below(z4_2, total(z4_2))
        assert found.alpha == total(z4_2)
        assert found.gamma == MOD2
        assert found.degree == 2
        assert minimal_nonabelian_below(z4_2, MOD2) is None
        assert minimal_nonabelian_below(z4_group, total(z4_group)) is None

    def test_minimal_nonabelian_cap(self, z4_2):
        with pytest.raises(SupernilpotenceCapError):
            minimal_nonabelian_below(z4_2, total(z4_2), cap=1)

    def test_beta_must_be_a_congruence(self, z4_group):
        with pytest.raises(ValidationError):
            minimal_nonabelian_below(z4_group, Partition.from_blocks(4, [[0, 1]]))
