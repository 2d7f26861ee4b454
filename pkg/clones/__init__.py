from .clone_slice import CloneSlice, clone_upto, TERM, POLYNOMIAL
from .malcev import find_malcev, is_malcev, translation_inverse
from .commutator_terms import CommutatorWitness, commutator_classify, is_absorbing
from .decomposition import decompose_commutator_sum, default_order, sum_of_commutators
