"""Chebyshev T_k, U_k over odd F_q, checked against the A_1 and B_1 sets."""

from __future__ import annotations

import numpy as np

from ..ffield import FieldCtx
from ..polyfam import FqPoly
from ..subsets import SubsetId
from ..verdict import Tally, Verdict, skipped
from .core import Ctx, KRange, claim_rows, cycle_profile, iff_rows, rows_permute, rows_within
from .odd import ODD_ONLY, _fq_families, _poly_pow


def cheb_T_values(F: FieldCtx, ks, chi: np.ndarray) -> np.ndarray:
    """Rows T_k(F_q), from the three-term recurrence run once over all points.

    T_k(a) has period q-1 in k when a^2-1 is a square (or zero) and q+1 otherwise,
    so one pass up to k = q+1 covers every k.
    """
    q = F.q
    x = F.elements()
    two_x = F.vmul(np.int64(F.const(2)), x)
    R = np.empty((q + 2, q), dtype=np.int64)
    R[0] = 1
    R[1] = x
    for k in range(2, q + 2):
        R[k] = F.vsub(F.vmul(two_x, R[k - 1]), R[k - 2])
    split = chi[F.vsub(F.vmul(x, x), np.int64(1))] >= 0
    ks = [int(k) for k in np.asarray(ks, dtype=object).reshape(-1)]
    lo = np.array([k % (q - 1) for k in ks], dtype=np.int64)
    hi = np.array([k % (q + 1) for k in ks], dtype=np.int64)
    cols = np.arange(q)
    return np.where(split[None, :], R[lo][:, cols], R[hi][:, cols])


def _positions(values: np.ndarray, elems: np.ndarray, q: int) -> np.ndarray:
    pos = np.full(q, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    return pos[values]


def v_chebyshev_suite(F: FieldCtx, kr: KRange, ctx: Ctx | None = None) -> Verdict:
    if F.p == 2:
        return skipped("chebyshev_suite", F.q, ODD_ONLY)
    c = ctx or Ctx(F)
    q, eps, m = F.q, F.epsilon, F.m
    t = Tally("chebyshev_suite", q)
    nu = c.two_char
    x, chi = c.x, c.chi
    one, mone = 1, F.neg(1)
    ks = kr.ks(q)
    TV = cheb_T_values(F, ks, chi)
    V = c.table.values(ks)

    # T_k = M_2^{-1} D_k M_2, pointwise
    x2 = F.vmul(np.int64(c.c(2)), x)
    half = np.int64(F.inv(c.c(2)))
    claim_rows(t, np.all(TV == F.vmul(half, V[:, x2]), axis=1), "T_k(a) = D_k(2a)/2", ks)

    odd = ks % 2 == 1
    claim_rows(t, TV[:, one] == one, "T_k(1) = 1", ks)
    claim_rows(t, TV[:, mone] == np.where(odd, mone, one), "T_k(-1) = (-1)^k", ks)

    A1 = {(e1, e2): c.A(1, e1, e2) for e1 in (1, -1) for e2 in (1, -1)}
    Am = {key: c.mask(s.encs) for key, s in A1.items()}

    def pts(*encs) -> np.ndarray:
        return c.mask([F.const(e) for e in encs])

    def within(key, target, cond, clause):
        ok = rows_within(TV[:, A1[key].array], target)
        claim_rows(t, ~cond | ok, clause, ks)

    always = np.ones(len(ks), dtype=bool)
    even = ~odd
    within((nu, nu), Am[nu, nu] | pts(1, -eps), always, "(i) T_k(A1^{nu,nu}) in A1^{nu,nu} u {1,-eps}")
    within((-nu, nu), Am[-nu, nu] | pts(1, eps), always, "(i) T_k(A1^{-nu,nu}) in A1^{-nu,nu} u {1,eps}")
    within((eps * nu, -nu), Am[eps * nu, -nu] | pts(-1), odd, "(ii) k odd: T_k(A1^{eps nu,-nu}) in itself u {-1}")
    within((-eps * nu, -nu), Am[-eps * nu, -nu], odd, "(ii) k odd: T_k(A1^{-eps nu,-nu}) in itself")
    within((-nu, -nu), Am[nu, nu] | pts(1, -eps), even, "(iii) k even: T_k(A1^{-nu,-nu}) in A1^{nu,nu} u {1,-eps}")
    within((nu, -nu), Am[-nu, nu] | pts(1, eps), even, "(iii) k even: T_k(A1^{nu,-nu}) in A1^{-nu,nu} u {1,eps}")

    pm1 = pts(1, -1)
    d2 = chi[F.vsub(F.vmul(x, x), np.int64(1))]
    t.claim(np.array_equal(Am[1, -1] | Am[-1, 1], d2 == -1), "(iv) A1+- u A1-+ = {a : a^2-1 nonsquare}")
    union_v = Am[1, 1] | Am[-1, -1] | pm1
    zero_square = np.array_equal(union_v, d2 >= 0)
    nonzero_square = np.array_equal(union_v, d2 == 1)
    t.claim(zero_square, "(v) A1++ u A1-- u {1,-1} = {a : a^2-1 a square, 0 included}")
    t.note(
        "(v) set equality holds reading 'square' as including 0"
        + ("" if not nonzero_square else "; also as nonzero square")
        + ("" if nonzero_square else "; fails reading it as nonzero square")
    )
    for d, main, even_target, tag in (
        ((q - 1) // 2, Am[1, -1] | Am[-1, 1] | pm1, Am[-nu, nu] | pm1, "(iv)"),
        ((q + 1) // 2, union_v, Am[nu, nu] | pm1, "(v)"),
    ):
        div = ks % d == 0
        if not div.any():
            t.vacuous(f"{tag} {d} | k")
        claim_rows(t, ~div | rows_within(TV, main), f"{tag} {d} | k: T_k(F_q) in the stated union", ks)
        claim_rows(t, ~(div & even) | rows_within(TV, even_target), f"{tag} {d} | k, k even: smaller union", ks)

    dmap = {(1, 1): (q - 1) // 2, (1, -1): q + 1, (-1, 1): (q + 1) // 2, (-1, -1): q - 1}
    for (e1, e2), s in A1.items():
        if not len(s):
            t.vacuous(f"(vi) T_k permutes A1^{e1, e2}")
            continue
        d = dmap[nu * e1, nu * e2]
        perm = rows_permute(TV[:, s.array], s.array, q)
        iff_rows(t, perm, np.gcd(ks, d) == 1, f"(vi) T_k permutes A1^{(e1, e2)} iff gcd(k,{d})=1", ks)

    # cycle structures of D_k and T_k agree wherever both permute
    full = np.gcd(ks, q * q - 1) == 1
    if full.any():
        same = np.all(cycle_profile(V[full]) == cycle_profile(TV[full]), axis=1)
        claim_rows(t, same, "(conj i) D_k and T_k have the same cycle type on F_q", ks[full])
    two = c.c(2)
    for (e1, e2), d in dmap.items():
        A2 = c.A(two, e1, e2).array
        B1 = A1[nu * e1, nu * e2].array
        sel = np.gcd(ks, d) == 1
        if not len(A2) or not sel.any():
            t.vacuous(f"(conj ii) {(e1, e2)}")
            continue
        pd = _positions(V[sel][:, A2], A2, q)
        pt = _positions(TV[sel][:, B1], B1, q)
        ok = np.all(pd >= 0, axis=1) & np.all(pt >= 0, axis=1)
        claim_rows(t, ok, "(conj ii) both maps are permutations", ks[sel], signs=[e1, e2])
        if ok.all():
            same = np.all(cycle_profile(pd) == cycle_profile(pt), axis=1)
            claim_rows(t, same, "(conj ii) same cycle type on A2 and A1", ks[sel], signs=[e1, e2])

    _gij_tu(c, t, nu, m)
    return t.verdict()


def _gij_tu(c: Ctx, t: Tally, nu: int, m: int) -> None:
    F, q = c.F, c.q
    d2 = c.chi[F.vsub(F.vmul(c.x, c.x), np.int64(1))]
    two = c.c(2)
    T = _fq_families(F, "T", [m])
    U = _fq_families(F, "U", [m - 1, (q - 3) // 2, (q - 1) // 2])

    def scaled(e: int, roots) -> FqPoly:
        return FqPoly.vanishing(F, list(roots)).scale(F.pow(two, e))

    B1 = lambda e1, e2: c.set(SubsetId.B(1, e1, e2)).encs  # noqa: E731
    t.claim(T[m] == scaled(m - 1, B1(-nu, -nu)), "T_m = 2^{m-1} prod over B1^{-nu,-nu}", m=m)
    t.claim(U[m - 1] == scaled(m - 1, B1(nu, nu)), "U_{m-1} = 2^{m-1} prod over B1^{nu,nu}", m=m)
    sq = np.nonzero(d2 == 1)[0].tolist()
    nsq = np.nonzero(d2 == -1)[0].tolist()
    t.claim(U[(q - 3) // 2] == scaled((q - 3) // 2, sq), "U_{(q-3)/2} = 2^{(q-3)/2} prod{b^2-1 square}")
    half_reading = U[(q - 1) // 2] == scaled((q - 1) // 2, nsq)
    literal = U[(q - 1) // 2] == scaled(2 * (q - 1), nsq)
    t.claim(half_reading, "U_{(q-1)/2} = 2^{(q-1)/2} prod{b^2-1 nonsquare}")
    t.note(
        "U_{(q-1)/2} leading factor read as 2^{(q-1)/2}"
        + ("; the 2^{2(q-1)} reading also holds" if literal else "; the 2^{2(q-1)} reading fails here")
    )
    lhs = U[(q - 1) // 2] + U[(q - 3) // 2]
    rhs = _poly_pow(FqPoly(F, [F.neg(1), 1]), (q - 1) // 2).scale(c.c(nu))
    t.claim(lhs == rhs, "U_{(q-1)/2} + U_{(q-3)/2} = (2|q)(x-1)^{(q-1)/2}")
