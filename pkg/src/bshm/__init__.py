"""Balanced splittable Hadamard matrices: verification, constructions and parameter feasibility."""
from .core import (BshmCertificate, SrgParams, add_allones_row, associated_graph, extract_pbd, extract_unbiased_mate,
                   remove_allones_row, srg_params, structure_decompose, switch, to_regular_form, verify_bshm)
from .errors import BshmError, BudgetExceeded, FormatError, NotAPacking, NotAPds, NotHadamard, TooManyValues
from .params import (HadamardPolicy, Infeasible, ParamClass, classify_params, enumerate_equiangular,
                     enumerate_imprimitive, enumerate_type1, enumerate_type2, equiangular_integrality,
                     imprimitive_existence, srg_feasible)
from .pds import verify_packing, verify_pds_char, verify_pds_definition
from .pm_matrix import PmMatrix, RowSubset, parse_matrix, read_matrix, write_matrix
from .z2 import Z2Subset, character_table, spread_lines, walsh_spectrum

__version__ = "0.1.0"
