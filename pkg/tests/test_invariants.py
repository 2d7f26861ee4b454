import itertools
import random

import pytest

from algebra.function_table import FunctionTable
from algebra.partition import Partition
from clones.clone_slice import clone_upto
from clones.commutator_terms import commutator_mask
from clones.malcev import find_malcev, is_malcev, translation_inverse
from commutators.higher_commutator import higher_commutator
from commutators.nilpotence import centrality_check, congruence_lattice
from z4.z4_algebra import normal_form_slice

MOD2 = Partition([0, 1, 0, 1])
TOTAL = Partition.total(4)


@pytest.fixture(scope='module')
def malcev(z4_2):
    return find_malcev(z4_2)


@pytest.fixture(scope='module')
def ternary_commutators():
    forms = normal_form_slice(3, 2)
    mask = commutator_mask(forms.tables, 4, 3)
    return [FunctionTable(4, 3, row) for row in forms.tables[mask]]


def test_truncated_algebra_has_a_malcev_term(malcev):
    assert malcev is not None and is_malcev(malcev)


def test_translation_inverse_undoes_translations(z4_2, malcev):
    inverse = translation_inverse(z4_2, malcev)
    for x, b, c in itertools.product(range(4), repeat=3):
        assert malcev(inverse(x, b, c), b, c) == x
        assert inverse(malcev(x, b, c), b, c) == x


def test_clone_is_closed_under_composition(z4_2):
    clone = clone_upto(z4_2, 2)
    rng = random.Random(5)
    members = clone.members
    for _ in range(30):
        f, g = rng.choice(members), rng.choice(members)
        for op in (z4_2.op('plus'), z4_2.op('dbl2')):
            assert op.compose([f, g]) in clone
        assert z4_2.op('one').compose([f]) in clone


def test_commutator_sums_on_central_classes(z4_2, malcev):
    m = malcev
    central = [alpha for alpha in congruence_lattice(z4_2) if centrality_check(z4_2, alpha)]
    assert MOD2 in central
    for alpha in central:
        for a, b, c, o in itertools.product(range(4), repeat=4):
            if not alpha.related(c, o):
                continue
            assert m(m(a, o, b), o, c) == m(a, o, m(b, o, c)) == m(m(a, o, c), o, b)
            assert m(a, c, o) == m(a, o, m(o, c, o))


def test_only_two_ternary_commutators(ternary_commutators):
    z = FunctionTable.projection(4, 3, 2)
    bilinear = FunctionTable.from_function(4, 3, lambda x, y, z: (z + 2 * (x - z) * (y - z)) % 4)
    assert sorted(ternary_commutators, key=lambda f: f.to_list()) == sorted([z, bilinear], key=lambda f: f.to_list())


@pytest.mark.parametrize('alpha', [TOTAL, MOD2], ids=['total', 'mod2'])
def test_commutators_are_multilinear(malcev, ternary_commutators, alpha):
    m = malcev
    for c in ternary_commutators:
        for x1, x2, y, z in itertools.product(range(4), repeat=4):
            if not (alpha.related(x1, z) and alpha.related(x2, z) and alpha.related(y, z)):
                continue
            assert c(m(x1, z, y), x2, z) == m(c(x1, x2, z), z, c(y, x2, z))
            assert c(x1, m(x2, z, y), z) == m(c(x1, x2, z), z, c(x1, y, z))


def test_commutators_alternate_inside_mod2(malcev, ternary_commutators):
    m = malcev
    for c in ternary_commutators:
        for x1, x2, z in itertools.product(range(4), repeat=3):
            if MOD2.related(x1, z) and MOD2.related(x2, z):
                assert c(x1, x1, z) == z
                assert m(c(x1, x2, z), z, c(x2, x1, z)) == z


@pytest.mark.parametrize('alpha, beta', [(TOTAL, TOTAL), (MOD2, TOTAL), (TOTAL, MOD2)],
                         ids=['total-total', 'mod2-total', 'total-mod2'])
def test_commutator_values_fall_in_the_commutator(z4_2, ternary_commutators, alpha, beta):
    bracket = higher_commutator(z4_2, [alpha, beta])
    for c in ternary_commutators:
        for a1, a2, o in itertools.product(range(4), repeat=3):
            if alpha.related(a1, o) and beta.related(a2, o):
                assert bracket.related(c(a1, a2, o), o)
