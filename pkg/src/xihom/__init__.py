"""Relative, Gorenstein and complete cohomology for modules over quiver algebras over F_p."""

from .algebra import Algebra, QuiverPresentation, enumerate_basis, path_algebra_A, truncated_polynomial
from .cohomology import (
    build_complete_resolution,
    complete_ext,
    complete_ext_colimit_oracle,
    complete_ext_stable_oracle,
    gpd,
    gprojective_test,
    vanishing_report,
    xi_ext,
    xi_ext_injective_side,
    xi_ext_two_resolutions,
)
from .instance import Instance, load_catalog, load_instance
from .modcat import Conflation, Module, ModuleMap, hom_basis, hom_dim
from .propclass import ProperClass, audit_axioms, xi_cover, xi_projective
from .resolution import build_coresolution, build_resolution, cosyzygy, homotopy_between, lift_morphism, xi_pd

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "Conflation",
    "Instance",
    "Module",
    "ModuleMap",
    "ProperClass",
    "QuiverPresentation",
    "audit_axioms",
    "build_complete_resolution",
    "build_coresolution",
    "build_resolution",
    "complete_ext",
    "complete_ext_colimit_oracle",
    "complete_ext_stable_oracle",
    "cosyzygy",
    "enumerate_basis",
    "gpd",
    "gprojective_test",
    "hom_basis",
    "hom_dim",
    "homotopy_between",
    "lift_morphism",
    "load_catalog",
    "load_instance",
    "path_algebra_A",
    "truncated_polynomial",
    "vanishing_report",
    "xi_cover",
    "xi_ext",
    "xi_ext_injective_side",
    "xi_ext_two_resolutions",
    "xi_pd",
    "xi_projective",
]
