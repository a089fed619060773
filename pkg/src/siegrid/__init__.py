"""Exact verification of scalar circuit identities on polynomial grids.

The Laguerre, Legendre-Gegenbauer and binomial families sit at the vertices
of grid quivers whose arrows are Weyl or h-Weyl algebra operators.  This
package builds those algebras, their concrete representations and a
verifier that checks every circuit acts as the expected scalar.
"""

from .cofactors import check_all_cofactors, check_cofactor, cofactor_identities
from .exact import ParamPoly, sym
from .families import (
    binomial_closed,
    gegenbauer_closed,
    grid_table,
    laguerre_closed,
    verify_identity,
    verify_normalized_arrows,
)
from .grids import (
    Circuit,
    VerificationReport,
    builtin_grid,
    check_arrow_well_defined,
    check_circuit_scalar,
    check_ladder_commutator,
    check_narrow_scalars_equal,
    check_wide_lemma,
    random_circuit_scan,
)
from .hweyl import HWeylElement
from .parser import parse, parse_vector
from .reps import Subspace, apply, kernel_space, nullspace, operator_matrix
from .weyl import WeylElement

__all__ = [
    "Circuit",
    "HWeylElement",
    "ParamPoly",
    "Subspace",
    "VerificationReport",
    "WeylElement",
    "apply",
    "binomial_closed",
    "builtin_grid",
    "check_all_cofactors",
    "check_arrow_well_defined",
    "check_circuit_scalar",
    "check_cofactor",
    "check_ladder_commutator",
    "check_narrow_scalars_equal",
    "check_wide_lemma",
    "cofactor_identities",
    "gegenbauer_closed",
    "grid_table",
    "kernel_space",
    "laguerre_closed",
    "nullspace",
    "operator_matrix",
    "parse",
    "parse_vector",
    "random_circuit_scan",
    "sym",
    "verify_identity",
    "verify_normalized_arrows",
]
