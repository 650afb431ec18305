"""Run every check over a list of prime powers."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable

from ..ffield import field_of_order
from ..numtheory import prime_power
from ..verdict import Verdict
from .chebyshev import v_chebyshev_suite
from .core import Ctx, KRange
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
from .section10 import v_section10

CheckFn = Callable[..., Verdict]

CHECKS: dict[str, CheckFn] = {
    "fq_decomposition": v_fq_decomposition,
    "power_and_delta_maps": v_power_and_delta_maps,
    "dickson_image_and_permutation": v_dickson_image_and_permutation,
    "functional_oracle": v_functional_oracle,
    "characters": v_characters,
    "golden_f29": v_golden_f29,
    "even_char_suite": v_even_char_suite,
    "sqrtc": v_sqrtc,
    "odd_SNZ_suite": v_odd_SNZ_suite,
    "Aij_suite": v_Aij_suite,
    "factorization_suite": v_factorization_suite,
    "wilson_like": v_wilson_like,
    "D2_inverse_suite": v_D2_inverse_suite,
    "Dm_product_cases": v_Dm_product_cases,
    "fSfN_values": v_fSfN_values,
    "sigma_closed_forms": v_sigma_closed_forms,
    "chebyshev_suite": v_chebyshev_suite,
    "section10": v_section10,
}
CHECK_NAMES = tuple(sorted(CHECKS))


def _select(check_filter: Iterable[str] | None) -> list[str]:
    if not check_filter:
        return list(CHECK_NAMES)
    names = list(dict.fromkeys(check_filter))
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown check(s): {', '.join(unknown)}")
    return sorted(names)


def validate_q(q: int) -> None:
    if not isinstance(q, int) or prime_power(q) is None:
        raise ValueError(f"{q!r} is not a prime power")


def verify_field(q: int, kr: KRange, names: list[str], timings: bool = False) -> list[Verdict]:
    F = field_of_order(q)
    ctx = Ctx(F)
    out = []
    for name in names:
        v = CHECKS[name](F, kr, ctx)
        if not timings:
            v.millis = None
        out.append(v)
    return out


def _job(args) -> list[Verdict]:
    return verify_field(*args)


def verify_all(
    q_list: Iterable[int],
    kr: KRange | None = None,
    check_filter: Iterable[str] | None = None,
    workers: int = 1,
    timings: bool = False,
) -> list[Verdict]:
    """Verdicts for every (q, check), ordered by (q, check_name).

    Checks that do not apply to q's parity come back ``skipped``.  Timings are
    left out unless asked for, so equal inputs give equal output.
    """
    kr = kr or KRange()
    qs = sorted(set(q_list))
    for q in qs:
        validate_q(q)
    names = _select(check_filter)
    jobs = [(q, kr, names, timings) for q in qs]
    if workers > 1 and len(jobs) > 1:
        # biggest fields first keeps the pool busy to the end
        order = sorted(range(len(jobs)), key=lambda i: -qs[i])
        with ProcessPoolExecutor(max_workers=workers) as pool:
            done = dict(zip(order, pool.map(_job, [jobs[i] for i in order])))
        results = [done[i] for i in range(len(jobs))]
    else:
        results = [_job(j) for j in jobs]
    verdicts = [v for batch in results for v in batch]
    verdicts.sort(key=lambda v: (v.q, v.check_name))
    return verdicts
