"""Checks that apply in every characteristic."""

from __future__ import annotations

from math import gcd

import numpy as np

from ..ffield import FieldCtx, mu_root
from ..numtheory import divisors
from ..polyfam import Fe, dickson_D, eval as horner, eval_via_functional, family_fq, recurrence_eval
from ..subsets import SubsetId, elem_sym, image_and_cycles, vanishing_poly
from ..verdict import Tally, Verdict, skipped
from .core import Ctx, KRange, claim_rows, iff_rows, row_counts, rows_permute


def v_fq_decomposition(F: FieldCtx, kr: KRange | None = None, ctx: Ctx | None = None) -> Verdict:
    c = ctx or Ctx(F)
    q = F.q
    t = Tally("fq_decomposition", q)
    lo, hi = c.delta(q - 1), c.delta(q + 1)
    union = set(lo) | set(hi)
    t.claim(union == set(range(q)), "F_q = delta_{q-1} u delta_{q+1}", missing=sorted(set(range(q)) - union))
    inter = sorted(set(lo) & set(hi))
    z = list(c.set(SubsetId("Z")).encs)
    t.claim(inter == z, "delta_{q-1} n delta_{q+1} = Z", expected=z, actual=inter)
    s_lo, s_hi = c.delta_star(q - 1), c.delta_star(q + 1)
    parts = sorted(list(s_lo) + list(s_hi) + z)
    t.claim(parts == list(range(q)), "F_q = delta*_{q-1} + delta*_{q+1} + Z disjointly")
    for d in (q - 1, q + 1):
        t.claim(len(c.delta_star(d)) == (d - 1) // 2, "|delta*_d| = floor((d-1)/2)", d=d, actual=len(c.delta_star(d)))
    return t.verdict()


def _power_map_claims(t: Tally, F: FieldCtx, d: int, ks: list[int]) -> None:
    r = mu_root(F, d).value
    for k in ks:
        g = gcd(d, k)
        rk = F.epow(r, k)
        t.claim(F.ext_order(rk) == d // g, "a -> a^k maps mu_d onto mu_{d/g}", d=d, k=k)
        z = mu_root(F, g).value
        # the kernel mu_g has exactly g elements inside mu_d
        ok = F.epow(z, d) == 1 and F.epow(z, k) == 1 and F.ext_order(z) == g
        t.claim(ok, "kernel of a -> a^k on mu_d is mu_g", d=d, k=k)


def v_power_and_delta_maps(F: FieldCtx, kr: KRange, ctx: Ctx | None = None) -> Verdict:
    c = ctx or Ctx(F)
    q = F.q
    t = Tally("power_and_delta_maps", q)
    ks = kr.ks(q)
    ds = sorted(set(divisors(q - 1)) | set(divisors(q + 1)))
    probe = sorted(set(ks[:6].tolist()) | set(kr.rng(q, "power").sample(ks.tolist(), min(2, len(ks)))))
    for d in ds:
        _power_map_claims(t, F, d, probe)
        E = c.delta(d).array
        Es = c.delta_star(d).array
        g = np.gcd(ks, d)
        V = c.table.values(ks, E)
        counts = row_counts(V, q)
        gs = sorted(set(g.tolist()))
        img_mask = {x: c.mask(c.delta(d // x).encs) for x in gs}
        star_mask = {x: c.mask(c.delta_star(d // x).encs) for x in gs}
        expect = np.stack([img_mask[x] for x in g.tolist()])
        target = np.stack([star_mask[x] for x in g.tolist()])
        claim_rows(t, np.all((counts > 0) == expect, axis=1), "D_k(delta_d) = delta_{d/g}", ks, d=d)
        in_star = np.isin(E, Es)
        counts_star = row_counts(V[:, in_star], q)
        mult_ok = np.all((counts == g[:, None]) | ~target, axis=1)
        claim_rows(t, mult_ok, "each y in delta*_{d/g} has g preimages in delta_d", ks, d=d)
        star_ok = np.all((counts_star == g[:, None]) | ~target, axis=1)
        claim_rows(t, star_ok, "those preimages lie in delta*_d", ks, d=d)
        iff_rows(t, rows_permute(V, E, q), g == 1, f"D_k permutes delta_{d} iff gcd(d,k)=1", ks)
        if len(Es) == 0:
            t.vacuous(f"permutes delta*_{d}")
        else:
            iff_rows(t, rows_permute(V[:, in_star], Es, q), g == 1, f"D_k permutes delta*_{d} iff gcd(d,k)=1", ks)
    return t.verdict()


def v_dickson_image_and_permutation(F: FieldCtx, kr: KRange, ctx: Ctx | None = None) -> Verdict:
    c = ctx or Ctx(F)
    q = F.q
    t = Tally("dickson_image_and_permutation", q)
    ks = kr.ks(q)
    V = c.table.values(ks)
    counts = row_counts(V, q)
    r = np.gcd(ks, q - 1)
    s = np.gcd(ks, q + 1)
    cache: dict[tuple[int, int], np.ndarray] = {}
    rows = []
    for ri, si in zip(r.tolist(), s.tolist()):
        key = (ri, si)
        if key not in cache:
            cache[key] = c.mask(c.delta((q - 1) // ri).encs) | c.mask(c.delta((q + 1) // si).encs)
        rows.append(cache[key])
    expect = np.stack(rows)
    ok = np.all((counts > 0) == expect, axis=1)
    claim_rows(t, ok, "D_k(F_q) = delta_{(q-1)/r} u delta_{(q+1)/s}", ks)
    bij = np.all(counts == 1, axis=1)
    iff_rows(t, bij, np.gcd(ks, q * q - 1) == 1, "D_k permutes F_q iff gcd(k,q^2-1)=1", ks)
    return t.verdict()


def v_functional_oracle(F: FieldCtx, kr: KRange, ctx: Ctx | None = None) -> Verdict:
    """Three independent evaluations of D_k must agree."""
    c = ctx or Ctx(F)
    q = F.q
    t = Tally("functional_oracle", q)
    rng = kr.rng(q, "oracle")
    ks = [1, 2, 3, q - 1, q, q + 1, q * q - 1, q * q, 2**63 - 1]
    ks += [rng.randint(1, 2**63) for _ in range(6)]
    pts = F.elements()
    for k in ks:
        tab = c.table.row(k)
        mat = recurrence_eval(F, "D", k, pts)
        t.claim(np.array_equal(tab, mat), "<u^k> table = companion-matrix power", k=k, count=q)
        for a in sorted({0, 1, rng.randrange(q), rng.randrange(q)}):
            v = eval_via_functional(F, k, Fe(F, a)).value
            t.claim(v == int(tab[a]), "eval_via_functional = table", k=k, a=a, expected=int(tab[a]), actual=v)
    for k in range(0, 25):
        poly = dickson_D(k)
        a = rng.randrange(q)
        v = horner(poly, F, Fe(F, a)).value
        t.claim(v == int(c.table.row(k)[a]), "Horner on the recursion = table", k=k, a=a)
    return t.verdict()


def v_characters(F: FieldCtx, kr: KRange | None = None, ctx: Ctx | None = None) -> Verdict:
    """Sanity of the character, square-root and trace primitives everything else uses."""
    c = ctx or Ctx(F)
    q = F.q
    t = Tally("characters", q)
    x = c.x
    if F.p == 2:
        tr = F.vtrace(x)
        t.claim(set(tr.tolist()) <= {0, 1}, "trace lands in GF(2)", count=q)
        t.claim(int(np.sum(tr == 0)) == q // 2, "trace kernel has q/2 elements")
        pairs = [(a, b) for a in range(min(q, 16)) for b in range(min(q, 16))]
        ok = all(F.abs_trace_int(F.add(a, b)) == F.abs_trace_int(a) ^ F.abs_trace_int(b) for a, b in pairs)
        t.claim(ok, "trace is additive", count=len(pairs))
        roots = [F.sqrt_int(a) for a in range(q)]
        t.claim(all(F.mul(r, r) == a for a, r in enumerate(roots)), "a^(q/2) squares to a", count=q)
        return t.verdict()
    euler = np.array([F.pow(int(a), (q - 1) // 2) for a in x], dtype=np.int64)
    expect = np.where(euler == 1, 1, np.where(euler == 0, 0, -1))
    t.claim(np.array_equal(expect, c.chi), "chi agrees with Euler's criterion", count=q)
    nz = x[1:]
    prod_chi = F.vlegendre(F.vmul(nz[:, None], nz[None, :min(len(nz), 32)]))
    t.claim(
        np.array_equal(prod_chi, c.chi[nz][:, None] * c.chi[nz][None, : min(len(nz), 32)]),
        "chi is multiplicative",
        count=int(prod_chi.size),
    )
    for a in range(q):
        r = F.sqrt_int(a)
        if c.chi[a] == -1:
            t.claim(r is None, "nonsquares have no root", a=a)
        else:
            ok = r is not None and F.mul(r, r) == a and r <= F.neg(r)
            t.claim(ok, "canonical root squares back and is the smaller of +-r", a=a, root=r)
    t.claim(q % 4 == F.epsilon % 4, "q = epsilon mod 4")
    t.claim(int(c.chi[F.neg(1)]) == F.epsilon, "(-1|q) = epsilon")
    t.claim(c.two_char == (-1) ** F.m, "(2|q) = (-1)^m", expected=(-1) ** F.m, actual=c.two_char)
    return t.verdict()


F29_A = {
    (1, 1): [3, 7, 11, 18, 22, 26],
    (1, -1): [1, 6, 8, 9, 15, 24, 25],
    (-1, 1): [4, 5, 14, 20, 21, 23, 28],
    (-1, -1): [0, 10, 12, 13, 16, 17, 19],
}
F29_SQUARES = [1, 4, 5, 6, 7, 9, 13, 16, 20, 22, 23, 24, 25, 28]


def v_golden_f29(F: FieldCtx, kr: KRange | None = None, ctx: Ctx | None = None) -> Verdict:
    if F.q != 29:
        return skipped("golden_f29", F.q, "fixtures exist for q = 29 only")
    c = ctx or Ctx(F)
    t = Tally("golden_f29", 29)
    for (e1, e2), want in F29_A.items():
        got = list(c.A(2, e1, e2).encs)
        t.claim(got == want, "A_2 fixture", signs=[e1, e2], expected=want, actual=got)
    sq = [a for a in range(1, 29) if c.chi[a] == 1]
    t.claim(sq == F29_SQUARES, "nonzero squares", expected=F29_SQUARES, actual=sq)
    rep = image_and_cycles(F, 5, c.A(2, -1, -1))
    want_cycles = [(0,), (10, 17, 13, 19, 12, 16)]
    t.claim(rep.is_permutation and rep.cycles == want_cycles, "D_5 cycles on A_2^{--}", actual=[list(x) for x in rep.cycles])
    rep = image_and_cycles(F, 7, c.A(2, -1, -1))
    t.claim(not rep.is_permutation and rep.image == [0], "D_7 sends A_2^{--} to {0}", actual=rep.image)
    t.claim(family_fq(F, "D", 7) == vanishing_poly(c.A(2, -1, -1)), "D_7 = prod over A_2^{--}")
    bpp, bmm = c.B(2, 1, 1), c.B(2, -1, -1)
    sig = [int(elem_sym(bpp, 2)), int(elem_sym(bpp, 4)), int(elem_sym(bmm, 2)), int(elem_sym(bmm, 4))]
    t.claim(sig == [24, 6, 22, 14], "sigma_2^+, sigma_4^+, sigma_2^-, sigma_4^-", actual=sig)
    return t.verdict()
