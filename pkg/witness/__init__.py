from .setup import CASE_1, CASE_2, WitnessSetup, check_superalgebra, minimum_window, setup_witness
from .elements import (build_generators, build_v, d, e, ghost, o_bar, parity_functional, parity_values, u,
                       v_range)
from .ghost import GhostReport, enumerate_homomorphisms, kernel_blocks, verify_ghost_absent
