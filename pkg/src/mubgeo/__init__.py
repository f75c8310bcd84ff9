"""Complete sets of mutually unbiased bases: four constructions, exact
integer verification, and module/projective-geometry structure audits."""

from .audit import (AuditReport, DerivedSets, audit_family, derive_sets,
                    free_check, hat_product, module_axioms_check, rank_mod_p,
                    z4_invariant_counts)
from .constructions import (ExponentVector, MubFamily, build_alltop,
                            build_family, build_galois_ring, build_planar,
                            build_symplectic, validate_symplectic_params)
from .finite_field import Field, planar_check, smallest_irreducible
from .galois_ring import GaloisRing, graeffe_lift, trace_kernel_check
from .geometry import (ProjectivePoint, canonicalize, neighbourhood_class,
                       pg_count_identity, phg_count_identity,
                       representative_count, subspace_points)
from .verify import (InnerProductValue, inner_product_sq,
                     inner_product_sq_float, verify_family,
                     verify_orthonormal, verify_unbiased)

__version__ = "0.1.0"

__all__ = [
    "AuditReport", "DerivedSets", "ExponentVector", "Field", "GaloisRing",
    "InnerProductValue", "MubFamily", "ProjectivePoint", "audit_family",
    "build_alltop", "build_family", "build_galois_ring", "build_planar",
    "build_symplectic", "canonicalize", "derive_sets", "free_check",
    "graeffe_lift", "hat_product", "inner_product_sq",
    "inner_product_sq_float", "module_axioms_check", "neighbourhood_class",
    "pg_count_identity", "phg_count_identity", "planar_check", "rank_mod_p",
    "representative_count", "smallest_irreducible", "subspace_points",
    "trace_kernel_check", "validate_symplectic_params", "verify_family",
    "verify_orthonormal", "verify_unbiased", "z4_invariant_counts",
]
