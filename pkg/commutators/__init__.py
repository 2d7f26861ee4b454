from .higher_commutator import (CommutatorQuery, CommutatorMethod, AbsorbingGeneration, NilpotentT,
                                TermCondition, higher_commutator, commutator_power, METHODS,
                                ABSORBING_GENERATION, NILPOTENT_T, TERM_CONDITION, LIFTED, LITERAL)
from .nilpotence import (NilpotenceReport, NonabelianWitness, lower_central_series, supernilpotence_degree,
                         congruence_lattice, minimal_nonabelian_below, centrality_check, is_abelian,
                         require_nilpotent)
