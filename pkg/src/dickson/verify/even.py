"""Checks for q = 2^n."""

from __future__ import annotations

from math import gcd

import numpy as np

from ..ffield import FieldCtx
from ..polyfam import FqPoly, reverse
from ..subsets import SubsetId, card_formula, shifted_products, vanishing_poly
from ..verdict import Tally, Verdict, skipped
from .core import E_RANGE, Ctx, KRange, claim_rows, iff_rows, rows_permute, rows_within

EVEN_ONLY = "requires even q"


def v_even_char_suite(F: FieldCtx, kr: KRange, ctx: Ctx | None = None) -> Verdict:
    if F.p != 2:
        return skipped("even_char_suite", F.q, EVEN_ONLY)
    c = ctx or Ctx(F)
    q, n = F.q, F.n
    t = Tally("even_char_suite", q)
    T0, T1 = c.set(SubsetId.T01(0)), c.set(SubsetId.T01(1))
    t.claim(T0.encs == c.delta_star(q - 1).encs, "T_0 = delta*_{q-1}")
    t.claim(T1.encs == c.delta_star(q + 1).encs, "T_1 = delta*_{q+1}")
    for s in (T0, T1):
        t.claim(len(s) == card_formula(F, s.id), "|T_j| formula", set=s.id.label(), actual=len(s))

    ks = kr.ks(q)
    V = c.table.values(ks)
    m0, m1 = c.mask(T0.encs), c.mask(T1.encs)
    zero = c.mask([0])
    V0, V1 = V[:, T0.array], V[:, T1.array]
    claim_rows(t, rows_within(V0, m0 | zero), "D_k(T_0) in T_0 u {0}", ks)
    claim_rows(t, rows_within(V1, m1 | zero), "D_k(T_1) in T_1 u {0}", ks)
    iff_rows(t, rows_permute(V1, T1.array, q), np.gcd(ks, q + 1) == 1, "D_k permutes T_1 iff gcd(k,q+1)=1", ks)
    if len(T0):
        iff_rows(t, rows_permute(V0, T0.array, q), np.gcd(ks, q - 1) == 1, "D_k permutes T_0 iff gcd(k,q-1)=1", ks)
    else:
        t.vacuous("D_k permutes T_0 (T_0 empty)")

    iff_rows(t, np.all(V1 == 0, axis=1), ks % (q + 1) == 0, "D_k(T_1) = {0} iff (q+1) | k", ks)
    sq1 = F.vmul(T1.array, T1.array)
    r1 = ks % (q + 1)
    iff_rows(t, np.all(V1 == sq1[None, :], axis=1), (r1 == 2) | (r1 == q - 1), "D_k = b^2 on T_1 iff k = +-2 mod q+1", ks)
    if q > 2:
        iff_rows(t, np.all(V0 == 0, axis=1), ks % (q - 1) == 0, "D_k(T_0) = {0} iff (q-1) | k", ks)
        sq0 = F.vmul(T0.array, T0.array)
        r0 = ks % (q - 1)
        iff_rows(t, np.all(V0 == sq0[None, :], axis=1), (r0 == 2 % (q - 1)) | (r0 == (q - 3) % (q - 1)), "D_k = b^2 on T_0 iff k = +-2 mod q-1", ks)
    else:
        t.note("T_0 clauses guarded by q > 2 skipped")

    x = c.x
    sq = F.vmul(x, x)
    zeros = np.zeros(q, dtype=np.int64)
    for e in E_RANGE:
        lo, hi = c.table.row(q**e - 1), c.table.row(q**e + 1)
        if e % 2 == 0:
            want_lo, want_hi = zeros, sq
        else:
            want_lo = np.where(m1, sq, 0)
            want_hi = np.where(m1, 0, sq)
        t.claim(np.array_equal(lo, want_lo), "D_{q^e-1} closed form", e=e, count=q)
        t.claim(np.array_equal(hi, want_hi), "D_{q^e+1} closed form", e=e, count=q)

    # D_{2^e+-1}: the hypothesis is gcd(e, n) = 1; under gcd(k, n) = 1 alone the
    # image claim breaks (q = 4, k = 5), and those exceptions go into the note.
    img3 = set(c.table.row(3).tolist())
    everything = set(range(q))
    k_reading: list[int] = []
    for e in range(0, 2 * n + 1):
        for k in sorted({2**e - 1, 2**e + 1}):
            if k < 1 or k > q * q:
                continue
            img = set(c.table.row(k).tolist())
            holds = img == everything if gcd(k, q * q - 1) == 1 else img == img3
            if gcd(k, n) == 1 and not holds:
                k_reading.append(k)
            if gcd(e, n) != 1:
                continue
            clause = "D_{2^e+-1} permutes F_q" if gcd(k, q * q - 1) == 1 else "D_{2^e+-1}(F_q) = D_3(F_q)"
            t.claim(holds, clause + " (gcd(e,n)=1)", k=k, e=e)
    if k_reading:
        t.note(f"gcd(k,n)=1 without gcd(e,n)=1 gives {len(k_reading)} exception(s), first k={k_reading[0]}")
    return t.verdict()


def v_sqrtc(F: FieldCtx, kr: KRange | None = None, ctx: Ctx | None = None) -> Verdict:
    if F.p != 2:
        return skipped("sqrtc", F.q, EVEN_ONLY)
    c = ctx or Ctx(F)
    q = F.q
    t = Tally("sqrtc", q)
    x = c.x
    T0, T1 = c.set(SubsetId.T01(0)), c.set(SubsetId.T01(1))
    root = F.vpow(x, q // 2)
    t.claim(np.array_equal(F.vmul(root, root), x), "c^{q/2} squares to c", count=q)
    lhs = F.vadd(shifted_products(F, T0.array, x), shifted_products(F, T1.array, x))
    bad = np.nonzero(lhs != root)[0]
    t.claim(not len(bad), "prod_{T_0}(c+a) + prod_{T_1}(c+b) = c^{1/2}", count=q, **({"c": int(bad[0])} if len(bad) else {}))
    # the same identity with the sets described through Tr(a) directly
    nz = x[1:]
    tr = F.vtrace(nz)
    inv_nz = F.vinv(nz)
    lhs = F.vadd(shifted_products(F, inv_nz[tr == 0], x), shifted_products(F, inv_nz[tr == 1], x))
    t.claim(np.array_equal(lhs, root), "prod{c + 1/a : Tr a = 0} + prod{c + 1/b : Tr b = 1} = c^{1/2}", count=q)

    f0, f1 = vanishing_poly(T0), vanishing_poly(T1)
    t.claim(f0 + f1 == FqPoly.monomial(F, q // 2), "T_0(x) + T_1(x) = x^{q/2}")
    coeffs = np.zeros(q // 2 + 1, dtype=np.int64)
    e = 1
    while e <= q // 2:
        coeffs[e] = 1
        e *= 2
    s1 = FqPoly(F, coeffs) + FqPoly(F, [1])
    t.claim(reverse(FqPoly(F, coeffs[1:])) == f0, "T_0(x) = reverse(S_0(x)/x)")
    t.claim(reverse(s1) == f1, "T_1(x) = reverse(S_1(x))")
    return t.verdict()
