from .preservation import (DomainConstraints, PreservationOracle, RelationsOracle, SubpowerOracle,
                           relation_constraints)
from .cad import CadDomain, cad_enumerate, extends_to_term, preserves
from .scanner import (CERTIFIED, COUNTEREXAMPLE, INCONCLUSIVE, PartialFunctionScanner, RelatednessVerdict,
                      ScanStats, finite_relatedness_scan, shrink_counterexample)
