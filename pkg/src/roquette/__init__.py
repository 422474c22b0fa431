"""Roquette edge decompositions of finite p-groups.

A p-group decomposes, in the category of rational p-biset functors, as a
sum of edges ∂R of Roquette groups R, one per class of a genetic basis.
This package computes those decompositions symbolically for the common
families and their products, and by brute force from multiplication tables.
"""

from .decompose import GroupSymbol, decompose, faithful_part, symbol
from .edges import (ClosedForm, EdgeSum, canonical_form, diamond,
                    dihedral_power_closed_form, direct_sum, edge_tensor,
                    iso_equal, nu, power, tensor)
from .errors import (CentralProductUndefined, GroupTooLarge, InvalidParameter,
                     NoCentralSubgroup, NotNormal, NotRoquetteError,
                     OddPrimeRequired, ParseError, PrimeMismatch, RoquetteError,
                     SemanticError, UnknownFunctor)
from .expr import GroupExpr, build, parse_expr
from .functors import (AbelianSignature, FunctorTable, Partial,
                       burnside_units_rank, center_signature, dade_torsion,
                       faithful_count, register_table, rq_rank)
from .genetic import (GeneticBasis, GeneticRecord, centrally_diagonal_genetics,
                      edge_decomposition_bruteforce, faithful_edges_bruteforce,
                      genetic_basis, is_expansive, is_genetic,
                      product_genetic_basis)
from .groups import (FiniteGroup, Subgroup, cyclic_subgroup_classes,
                     direct_product, make_family, roquette_group, roquette_type)
from .rtype import RoquetteType

__version__ = "0.1.0"
