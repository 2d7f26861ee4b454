from .function_table import FunctionTable, apply_pointwise
from .finite_algebra import FiniteAlgebra, Operation
from .relations import RelationSet, PartialFunction
from .partition import Partition
from .congruence import congruence_generate, principal_congruence
from .io import load_algebra, load_algebra_file, dump_algebra
from .subuniverse import subuniverse_generate
