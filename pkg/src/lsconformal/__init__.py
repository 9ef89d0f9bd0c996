"""Exact verification engine for left-symmetric and Lie conformal algebras."""

from .algebra import (
    LieConformalAlgebra,
    LscAlgebra,
    check_homomorphism,
    check_lie_axioms,
    check_lsc_axioms,
    current_algebra,
    sub_adjacent,
)
from .cohomology import (
    Cochain,
    coboundary,
    coboundary_solve,
    d_lie,
    delta_lsc,
    h_dim_bounded,
    is_cocycle,
    phi,
    phi_inv,
)
from .core import FreeModule, LambdaMap, ModuleMap, StructureError
from .deformation import (
    check_linear_deformation,
    equiv_check,
    formal_check,
    formal_normalize,
    lie_nijenhuis_check,
    nijenhuis_check,
    nijenhuis_deformed,
    tilde_omega,
    trivial_equiv_check,
)
from .parser import DefinitionError, parse_definition, parse_file, render
from .polyring import Poly, parse_poly
from .report import CheckFailed, Report
from .representations import HomSpace, RepPair, adjoint_rep, check_module, coadjoint_rep, dual_left_rep, semidirect
from .tstar import ConformalBilinearForm, check_bilinear, check_isometry, tstar_equiv, tstar_extend

__all__ = [
    "CheckFailed",
    "Cochain",
    "ConformalBilinearForm",
    "DefinitionError",
    "FreeModule",
    "HomSpace",
    "LambdaMap",
    "LieConformalAlgebra",
    "LscAlgebra",
    "ModuleMap",
    "Poly",
    "RepPair",
    "Report",
    "StructureError",
    "adjoint_rep",
    "check_bilinear",
    "check_homomorphism",
    "check_isometry",
    "check_lie_axioms",
    "check_linear_deformation",
    "check_lsc_axioms",
    "check_module",
    "coadjoint_rep",
    "coboundary",
    "coboundary_solve",
    "current_algebra",
    "d_lie",
    "delta_lsc",
    "dual_left_rep",
    "equiv_check",
    "formal_check",
    "formal_normalize",
    "h_dim_bounded",
    "is_cocycle",
    "lie_nijenhuis_check",
    "nijenhuis_check",
    "nijenhuis_deformed",
    "parse_definition",
    "parse_file",
    "parse_poly",
    "phi",
    "phi_inv",
    "render",
    "semidirect",
    "sub_adjacent",
    "tilde_omega",
    "trivial_equiv_check",
    "tstar_equiv",
    "tstar_extend",
]
