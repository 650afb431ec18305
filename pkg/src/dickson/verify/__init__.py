"""Exhaustive checks of the Dickson-polynomial results, one Verdict per (check, q)."""

from ..verdict import FAIL, PASS, SKIPPED, VACUOUS, Verdict
from .chebyshev import v_chebyshev_suite
from .core import KRange
from .even import v_even_char_suite, v_sqrtc
from .general import (
    v_characters,
    v_dickson_image_and_permutation,
    v_fq_decomposition,
    v_functional_oracle,
    v_golden_f29,
    v_power_and_delta_maps,
)
from .odd import (
    v_Aij_suite,
    v_D2_inverse_suite,
    v_Dm_product_cases,
    v_factorization_suite,
    v_fSfN_values,
    v_odd_SNZ_suite,
    v_sigma_closed_forms,
    v_wilson_like,
)
from .runner import CHECK_NAMES, CHECKS, verify_all, verify_field
from .section10 import v_section10

__all__ = [
    "CHECKS",
    "CHECK_NAMES",
    "FAIL",
    "KRange",
    "PASS",
    "SKIPPED",
    "VACUOUS",
    "Verdict",
    "v_Aij_suite",
    "v_D2_inverse_suite",
    "v_Dm_product_cases",
    "v_characters",
    "v_chebyshev_suite",
    "v_dickson_image_and_permutation",
    "v_even_char_suite",
    "v_factorization_suite",
    "v_fSfN_values",
    "v_fq_decomposition",
    "v_functional_oracle",
    "v_golden_f29",
    "v_odd_SNZ_suite",
    "v_power_and_delta_maps",
    "v_section10",
    "v_sigma_closed_forms",
    "v_sqrtc",
    "v_wilson_like",
    "verify_all",
    "verify_field",
]
