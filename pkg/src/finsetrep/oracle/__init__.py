"""Brute-force verification engine: explicit functors on small finite
sets, exact linear algebra, natural-transformation solving, and the
structural checks built on them."""

from .functors import (
    OracleError,
    SpMat,
    TruncatedFunctor,
    build_const_k,
    build_k0,
    build_kbar,
    build_kfi,
    build_lambda_pbar,
    build_lambda_pfin,
    build_pbar_tensor,
    build_pfin,
    build_proj_cover,
    fb_module_data,
    inner_character,
    inner_class,
    kernel_functor,
    map_matrix,
    quotient_functor,
    isotypic_subfunctor,
    sgn_coinvariant_dim,
)
from .linalg import RationalMatrix
from .nathom import NatHomResult, build_span, nat_hom, nat_hom_dense_dim
from .checks import (
    Report,
    hom_from_lambda_bar,
    oracle_multiplicities,
    pi_element,
    pi_idempotent_check,
    sigma_matrix,
    surjection_count,
    verify_almost_surjectivity,
    verify_lambda_complex,
    verify_norm_map,
    verify_refine_surjection,
    verify_right_aug,
)

__all__ = [
    "OracleError",
    "SpMat",
    "TruncatedFunctor",
    "RationalMatrix",
    "NatHomResult",
    "Report",
    "build_const_k",
    "build_k0",
    "build_kbar",
    "build_kfi",
    "build_lambda_pbar",
    "build_lambda_pfin",
    "build_pbar_tensor",
    "build_pfin",
    "build_proj_cover",
    "build_span",
    "fb_module_data",
    "hom_from_lambda_bar",
    "inner_character",
    "inner_class",
    "isotypic_subfunctor",
    "kernel_functor",
    "map_matrix",
    "nat_hom",
    "nat_hom_dense_dim",
    "oracle_multiplicities",
    "pi_element",
    "pi_idempotent_check",
    "quotient_functor",
    "sgn_coinvariant_dim",
    "sigma_matrix",
    "surjection_count",
    "verify_almost_surjectivity",
    "verify_lambda_complex",
    "verify_norm_map",
    "verify_refine_surjection",
    "verify_right_aug",
]
