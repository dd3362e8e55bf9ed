"""Reduction-based summation and creative telescoping for hypergeometric terms."""

from .exact_core import (
    Poly, RatFunc, ratfunc, shift, shift_n, dispersion, is_shift_free,
    is_shift_reduced, is_shift_coprime, integer_linear_decompose, NotIntegerLinear,
    poly_text, ratfunc_text,
)
from .hyperterm import (
    HyperTerm, BiHyperTerm, rational_normal_form, is_rnf, strongly_coprime,
    numeric_eval, POLE,
)
from .reduction import (
    polynomial_reduction, shell_reduction, modified_ap_reduction, is_summable,
    kernel_reduction, congruent_mod_VK, translate_residual_form, ResidualForm,
    ReductionResult, residual_violations, PolyReducer, DegreeLimitExceeded,
)
from .telescoping import (
    reduction_ct, bound_reduction_ct, bounds, verify_rct, existence_criterion,
    shift_homogeneous_decomposition, common_multiple_B, NoTelescoper, Telescoper,
    Certificate, NONE, NORMALIZED, UNNORMALIZED, SYMBOLIC, NUMERIC,
)
from .termexpr import parse, to_text, compile_quotients, to_bihyper, to_hyperterm, NotHypergeometric
from .cli import run, RunReport

__all__ = [
    "Poly", "RatFunc", "ratfunc", "shift", "shift_n", "dispersion", "is_shift_free",
    "is_shift_reduced", "is_shift_coprime", "integer_linear_decompose", "NotIntegerLinear",
    "poly_text", "ratfunc_text", "HyperTerm", "BiHyperTerm", "rational_normal_form",
    "is_rnf", "strongly_coprime", "numeric_eval", "POLE", "polynomial_reduction",
    "shell_reduction", "modified_ap_reduction", "is_summable", "kernel_reduction",
    "congruent_mod_VK", "translate_residual_form", "ResidualForm", "ReductionResult",
    "residual_violations", "PolyReducer", "DegreeLimitExceeded", "reduction_ct",
    "bound_reduction_ct", "bounds", "verify_rct", "existence_criterion",
    "shift_homogeneous_decomposition", "common_multiple_B", "NoTelescoper", "Telescoper",
    "Certificate", "NONE", "NORMALIZED", "UNNORMALIZED", "SYMBOLIC", "NUMERIC",
    "parse", "to_text", "compile_quotients", "to_bihyper", "to_hyperterm",
    "NotHypergeometric", "run", "RunReport",
]
