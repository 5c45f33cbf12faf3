"""bggpoly: exact polynomial solution systems of first BGG equations on the
flat projective and conformal model geometries, with independent
differential-operator verification."""

from .exactmath import Fraction, MultiPoly, PolyMatrix, RatMatrix
from .liemodel import (
    Conformal,
    GeometryKind,
    GradedLieModel,
    Projective,
    build_conformal,
    build_model,
    build_projective,
    parse_geometry,
    rho_symbolic,
)
from .repforge import (
    Representation,
    build_representation,
    cartan_kernel_s2lambda2,
    dual_rep,
    exterior_power,
    invariant_subrep,
    quotient_projection,
    standard_rep,
    symmetric_power,
    tensor_product,
)
from .bggsolve import (
    HomogCoords,
    SolutionSystem,
    exp_neg_action,
    g_type_invariant,
    homog_coords,
    nilpotency_check,
    solution_basis,
    solution_from_tractor,
    span_dimension,
    spans_equal,
)
from .catalogs import CatalogEntry, catalog

__version__ = "0.1.0"
