"""Homogeneous cones through clans, with exact orbit classification of quadratic maps."""

from .builtins import build_dual_vinberg_clan, build_rank1_clan, build_sym_clan, builtin_clan
from .clan import (
    Algebra,
    Clan,
    dual_algebra,
    dual_product,
    left_mult,
    normal_decomposition,
    product,
    validate_axioms,
)
from .group import GroupElement, act, act_dual, orbit_point, peel_membership
from .orbit import classify, epsilon_by_dimension, reconstruct, verify_image
from .quadratic import QuadraticRep, build_W, q_bilinear, split, validate_rep

__all__ = [
    "Algebra",
    "Clan",
    "GroupElement",
    "QuadraticRep",
    "act",
    "act_dual",
    "build_W",
    "build_dual_vinberg_clan",
    "build_rank1_clan",
    "build_sym_clan",
    "builtin_clan",
    "classify",
    "dual_algebra",
    "dual_product",
    "epsilon_by_dimension",
    "left_mult",
    "normal_decomposition",
    "orbit_point",
    "peel_membership",
    "product",
    "q_bilinear",
    "reconstruct",
    "split",
    "validate_axioms",
    "validate_rep",
    "verify_image",
]
