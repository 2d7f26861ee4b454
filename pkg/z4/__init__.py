from .z4_algebra import SIZE, Z4NormalForm, normal_form_slice, z4_algebra, z4_normal_forms, z4_term_normal_form
from .z4_cad import Z4CadForm, z4_cad_classify, z4_cad_domains, z4_preserves_all_sub_A4, z4_subpower_oracle
from .z4_duality import (EXHAUSTIVE, SAMPLED, Z4DualityReport, check_dichotomy, check_hom_identity,
                         z4_verify_duality)
