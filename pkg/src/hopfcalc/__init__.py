"""Exact computations with finite-dimensional Hopf algebras, their doubles,
R-matrices, transmutation and (co)factorisation."""

from .scalars import QQ, Field, FieldError, Mod, PrimeField, parse_field
from .linalg import (
    DimensionError, InvertibilityError, LinMap, Space, SparseTensor, apply, compose,
    identity, inverse, product_space, rank, solve, swap, tensor,
)
from .hopf import (
    HopfData, HopfError, NotInvertibleError, Report, co_opposite, convolution,
    convolution_inverse_map, dual_hopf, make_duality, opposite, tensor_hopf, verify_hopf,
    verify_bialgebra_morphism,
)
from .catalog import (
    AxiomError, SchemaError, catalog_entry, dump_json, from_tables, group_algebra_c2,
    load_json, parse_document, sweedler4, sweedler4_r,
)
from .cross import (
    AssembledBialgebra, CrossStructure, canonical_element, double_bicrossproduct,
    double_cross_coproduct, double_cross_product, drinfeld_double, verify_module_coalgebra,
    weak_r_double,
)
from .qt import (
    BraidedHopfData, MorphismError, ModuleError, QTElement, braided_analogue, check_qt,
    check_weak_r, compose_rd, is_triangular, module_braiding, transmute, verify_braided,
)
from .factor import (
    FactorisationError, FactorisationResult, cofactorise, factorise, phi_psi_prime,
    projections, inclusions, xi_explicit,
)
from .expr import Environment, ExprEvalError, ExprSyntaxError, evaluate, parse, to_text

__version__ = "0.1.0"
