"""
qdesign

Subspace designs over finite fields, the matrix groups whose orbits build them,
and the linear codes (cyclic, Reed-Solomon, Goppa) read off from both.
"""

from .codes import (
    LinearCode,
    cyclic_code,
    dual_code,
    goppa_code,
    min_distance,
    quasi_cyclic_index,
    rs_code,
)
from .design import (
    DesignInstance,
    SetSystem,
    incidence_matrix,
    km_solve,
    verify_design,
    verify_gdd,
)
from .field import FieldCtx, FieldElem, field_create, field_from_order
from .groups import GLElem, GroupSpec, group_closure, orbit_subspaces, singer_cycle
from .handler import handle
from .models import DesignMode, DesignReport, TableRowKind
from .poly import Poly, factor_xn_minus_1, is_irreducible
from .subspace import MatQ, Subspace, enumerate_subspaces, gaussian_binomial

__all__ = [
    "FieldCtx",
    "FieldElem",
    "field_create",
    "field_from_order",
    "Poly",
    "is_irreducible",
    "factor_xn_minus_1",
    "MatQ",
    "Subspace",
    "gaussian_binomial",
    "enumerate_subspaces",
    "GLElem",
    "GroupSpec",
    "group_closure",
    "orbit_subspaces",
    "singer_cycle",
    "DesignMode",
    "DesignReport",
    "TableRowKind",
    "DesignInstance",
    "SetSystem",
    "verify_design",
    "verify_gdd",
    "incidence_matrix",
    "km_solve",
    "LinearCode",
    "dual_code",
    "min_distance",
    "rs_code",
    "cyclic_code",
    "goppa_code",
    "quasi_cyclic_index",
    "handle",
]
