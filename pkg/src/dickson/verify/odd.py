"""Checks for odd q: S/N/Z, the A_2 and B_2 sets, factorizations and products."""

from __future__ import annotations

from math import comb

import numpy as np

from ..ffield import FieldCtx, mu_root
from ..polyfam import FqPoly, family_mod_p
from ..subsets import N_ID, S_ID, Z_ID, SubsetId, card_formula, elem_syms, shifted_products, vanishing_poly
from ..verdict import Tally, Verdict, skipped
from .core import E_RANGE, Ctx, KRange, claim_rows, iff_rows, rows_permute, rows_within, vsqrt

ODD_ONLY = "requires odd q"


def _enc_set(S) -> set[int]:
    return set(S.encs)


def _const_poly(F: FieldCtx, k: int, deg: int = 0) -> FqPoly:
    return FqPoly.monomial(F, deg, F.const(k))


def _poly_pow(f: FqPoly, e: int) -> FqPoly:
    out = _const_poly(f.field, 1)
    base = f
    while e:
        if e & 1:
            out = out * base
        base = base * base
        e >>= 1
    return out


def _fq_families(F: FieldCtx, name: str, ks) -> dict[int, FqPoly]:
    return {k: FqPoly.from_mod_p(F, a) for k, a in family_mod_p(name, ks, F.p).items()}


def _e_rows(c: Ctx) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    """{e: (D_{q^e-1} row, D_{q^e+1} row)} over all of F_q."""
    q = c.q
    out = {}
    for e in E_RANGE:
        out[e] = (c.table.row(q**e - 1), c.table.row(q**e + 1))
    return out


# -- S, N, Z --------------------------------------------------------------------------


def _same_classes(labels: np.ndarray, keys: np.ndarray) -> tuple[int, int] | None:
    """First (k, l) where equal labels and equal keys disagree, or None."""
    first_by_label: dict[int, int] = {}
    first_by_key: dict[int, int] = {}
    for k, (lab, key) in enumerate(zip(labels.tolist(), keys.tolist())):
        a = first_by_label.setdefault(lab, k)
        b = first_by_key.setdefault(key, k)
        if a != b:
            return min(a, b), k
    return None


def v_odd_SNZ_suite(F: FieldCtx, kr: KRange, ctx: Ctx | None = None) -> Verdict:
    if F.p == 2:
        return skipped("odd_SNZ_suite", F.q, ODD_ONLY)
    c = ctx or Ctx(F)
    q = F.q
    t = Tally("odd_SNZ_suite", q)
    S, N, Z = c.set(S_ID), c.set(N_ID), c.set(Z_ID)
    t.claim(S.encs == c.delta_star(q - 1).encs, "S = delta*_{q-1}")
    t.claim(N.encs == c.delta_star(q + 1).encs, "N = delta*_{q+1}")
    t.claim(len(S) == (q - 3) // 2 and len(N) == (q - 1) // 2, "|S| = (q-3)/2, |N| = (q-1)/2", sizes=[len(S), len(N)])

    ks = kr.ks(q)
    V = c.table.values(ks)
    zm, sm, nm = c.mask(Z.encs), c.mask(S.encs), c.mask(N.encs)
    VZ, VS, VN = V[:, Z.array], V[:, S.array], V[:, N.array]
    claim_rows(t, rows_within(VZ, zm), "D_k(Z) in Z", ks)
    claim_rows(t, rows_within(VS, sm | zm), "D_k(S) in S u Z", ks)
    claim_rows(t, rows_within(VN, nm | zm), "D_k(N) in N u Z", ks)
    iff_rows(t, rows_permute(VZ, Z.array, q), ks % 2 == 1, "D_k permutes Z iff k odd", ks)
    iff_rows(t, rows_permute(VN, N.array, q), np.gcd(ks, q + 1) == 1, "D_k permutes N iff gcd(k,q+1)=1", ks)
    if len(S):
        iff_rows(t, rows_permute(VS, S.array, q), np.gcd(ks, q - 1) == 1, "D_k permutes S iff gcd(k,q-1)=1", ks)
    else:
        t.vacuous("D_k permutes S (S empty)")
    for d, target, name in (((q - 1) // 2, nm | zm, "N u Z"), ((q + 1) // 2, sm | zm, "S u Z")):
        hit = ks % d == 0
        if not hit.any():
            t.vacuous(f"{d} | k")
        claim_rows(t, ~hit | rows_within(V, target), f"{d} | k implies D_k(F_q) in {name}", ks)

    # D_k = D_l on S (on N) iff k = +-l mod q-1 (mod q+1)
    top = min(2 * (q + 1), kr.upper(q))
    kk = np.arange(0, top + 1, dtype=np.int64)
    pairs = len(kk) * (len(kk) + 1) // 2
    for sub, d, name in ((S, q - 1, "S"), (N, q + 1, "N")):
        if not len(sub):
            t.vacuous(f"D_k = D_l on {name}")
            continue
        R = c.table.values(kk, sub.array)
        _, labels = np.unique(R, axis=0, return_inverse=True)
        keys = np.minimum(kk % d, (-kk) % d)
        bad = _same_classes(labels.reshape(-1), keys)
        rec = {"k": bad[1], "l": bad[0]} if bad else {}
        t.claim(bad is None, f"D_k = D_l on {name} iff k = +-l mod {d}", count=pairs, **rec)

    x2m2 = F.vsub(F.vmul(c.x, c.x), np.int64(c.c(2)))
    two = np.full(q, c.c(2), dtype=np.int64)
    for e, (lo, hi) in _e_rows(c).items():
        if e % 2 == 0:
            want_lo, want_hi = two, x2m2
        else:
            want_lo = np.where(nm, x2m2, two)
            want_hi = np.where(nm, two, x2m2)
        t.claim(np.array_equal(lo, want_lo), "D_{q^e-1} closed form", e=e, count=q)
        t.claim(np.array_equal(hi, want_hi), "D_{q^e+1} closed form", e=e, count=q)
    return t.verdict()


# -- A_2 / B_2 sets and Theorem-1.1-type clauses ---------------------------------------


def _characterized(F: FieldCtx, e1: int, e2: int) -> list[int]:
    """{<v^2> : v^{q - e1 e2} = e2, v^4 != 1}, by walking mu_{2(q - e1 e2)}."""
    q = F.q
    c = e1 * e2
    d = 2 * (q - c)
    r = mu_root(F, d).value
    target = 1 if e2 == 1 else F.neg(1)
    out, v = set(), 1
    for _ in range(d):
        vq = F.emul(F.frob(v), F.einv(v)) if c == 1 else F.norm(v)
        if vq == target:
            w = F.emul(v, v)
            if F.emul(w, w) != 1:
                out.add(F.eadd(w, F.einv(w)))
        v = F.emul(v, r)
    return sorted(out)


def _a_sets(c: Ctx) -> dict[tuple[int, int], object]:
    two = c.c(2)
    return {(e1, e2): c.A(two, e1, e2) for e1 in (1, -1) for e2 in (1, -1)}


def v_Aij_suite(F: FieldCtx, kr: KRange, ctx: Ctx | None = None) -> Verdict:
    if F.p == 2:
        return skipped("Aij_suite", F.q, ODD_ONLY)
    c = ctx or Ctx(F)
    q, eps, m = F.q, F.epsilon, F.m
    t = Tally("Aij_suite", q)
    t.claim(c.two_char == (-1) ** m, "(2|q) = (-1)^m")
    A = _a_sets(c)
    ds = c.delta_star
    t.claim(A[1, 1].encs == ds((q - 1) // 2).encs, "A++ = delta*_{(q-1)/2}")
    t.claim(A[-1, 1].encs == ds((q + 1) // 2).encs, "A-+ = delta*_{(q+1)/2}")
    t.claim(_enc_set(A[-1, -1]) == _enc_set(ds(q - 1)) - _enc_set(ds((q - 1) // 2)), "A-- = delta*_{q-1} - delta*_{(q-1)/2}")
    t.claim(_enc_set(A[1, -1]) == _enc_set(ds(q + 1)) - _enc_set(ds((q + 1) // 2)), "A+- = delta*_{q+1} - delta*_{(q+1)/2}")
    for (e1, e2), s in A.items():
        want = card_formula(F, s.id)
        t.claim(len(s) == want, "|A_2^{e1 e2}| formula", signs=[e1, e2], expected=want, actual=len(s))
        got = _characterized(F, e1, e2)
        t.claim(got == list(s.encs), "A_2^{e1 e2} = {<v^2> : v^{q-e1e2} = e2, v^4 != 1}", signs=[e1, e2], actual=got)

    two, mtwo = c.c(2), c.c(-2)
    z_lo = sorted(set(c.delta((q - 1) // 2)) & {two, mtwo})
    z_hi = sorted(set(c.delta((q + 1) // 2)) & {two, mtwo})
    t.claim(z_lo == sorted({two, c.c(-2 * eps)}), "Z n delta_{(q-1)/2} = {2, -2 eps}", actual=z_lo)
    t.claim(z_hi == sorted({two, c.c(2 * eps)}), "Z n delta_{(q+1)/2} = {2, 2 eps}", actual=z_hi)

    B = {(e1, e2): c.B(two, e1, e2) for e1 in (1, -1) for e2 in (1, -1)}
    t.claim(B[1, 1].encs == ds(2 * m).encs, "B++ = delta*_{2m}")
    t.claim(_enc_set(B[-1, -1]) == _enc_set(ds(4 * m)) - _enc_set(ds(2 * m)), "B-- = delta*_{4m} - delta*_{2m}")
    t.claim(B[-1, 1].encs == ds(2 * m + eps).encs, "B-+ = delta*_{2m+eps}")
    t.claim(
        _enc_set(B[1, -1]) == _enc_set(ds(4 * m + 2 * eps)) - _enc_set(ds(2 * m + eps)),
        "B+- = delta*_{4m+2eps} - delta*_{2m+eps}",
    )
    for (e1, e2), s in B.items():
        neg = {F.neg(a) for a in s.encs}
        t.claim(neg == _enc_set(B[e2, e1]), "-B^{e1 e2} = B^{e2 e1}", signs=[e1, e2])

    ks = kr.ks(q)
    V = c.table.values(ks)
    signs = (-1) ** (ks % 2)
    claim_rows(t, V[:, two] == two, "D_k(2) = 2", ks)
    claim_rows(t, V[:, mtwo] == np.where(signs == 1, two, mtwo), "D_k(-2) = (-1)^k 2", ks)

    def m_(*parts) -> np.ndarray:
        out = np.zeros(q, dtype=bool)
        for p_ in parts:
            out |= c.mask(p_) if not isinstance(p_, np.ndarray) else p_
        return out

    lo_z = [two, c.c(-2 * eps)]
    hi_z = [two, c.c(2 * eps)]
    Am = {key: c.mask(s.encs) for key, s in A.items()}
    cols = {key: s.array for key, s in A.items()}
    odd, even = ks % 2 == 1, ks % 2 == 0

    def within(key, target, cond, clause):
        ok = rows_within(V[:, cols[key]], target)
        claim_rows(t, ~cond | ok, clause, ks)

    always = np.ones(len(ks), dtype=bool)
    within((1, 1), Am[1, 1] | m_(lo_z), always, "(i) D_k(A++) in A++ u {2,-2eps}")
    within((-1, 1), Am[-1, 1] | m_(hi_z), always, "(i) D_k(A-+) in A-+ u {2,2eps}")
    within((eps, -1), Am[eps, -1] | m_([mtwo]), odd, "(ii) k odd: D_k(A^{eps,-}) in A^{eps,-} u {-2}")
    within((-eps, -1), Am[-eps, -1], odd, "(ii) k odd: D_k(A^{-eps,-}) in A^{-eps,-}")
    within((-1, -1), Am[1, 1] | m_(lo_z), even, "(iii) k even: D_k(A--) in A++ u {2,-2eps}")
    within((1, -1), Am[-1, 1] | m_(hi_z), even, "(iii) k even: D_k(A+-) in A-+ u {2,2eps}")
    zm = m_([two, mtwo])
    for d, main, even_target, tag in (
        ((q - 1) // 2, Am[1, -1] | Am[-1, 1] | zm, Am[-1, 1] | zm, "(iv)"),
        ((q + 1) // 2, Am[1, 1] | Am[-1, -1] | zm, Am[1, 1] | zm, "(v)"),
    ):
        div = ks % d == 0
        if not div.any():
            t.vacuous(f"{tag} {d} | k")
        claim_rows(t, ~div | rows_within(V, main), f"{tag} {d} | k: image in the stated union", ks)
        claim_rows(t, ~(div & even) | rows_within(V, even_target), f"{tag} {d} | k, k even: image in the smaller union", ks)
    dmap = {(1, 1): (q - 1) // 2, (1, -1): q + 1, (-1, 1): (q + 1) // 2, (-1, -1): q - 1}
    for key, d in dmap.items():
        if len(A[key]) == 0:
            t.vacuous(f"(vi) permutes A^{key}")
            continue
        perm = rows_permute(V[:, cols[key]], cols[key], q)
        iff_rows(t, perm, np.gcd(ks, d) == 1, f"(vi) D_k permutes A^{key} iff gcd(k,{d})=1", ks)
    return t.verdict()


# -- factorization formulas ---------------------------------------------------------


def _factorization_even(c: Ctx, t: Tally) -> None:
    F, q = c.F, c.q
    from ..numtheory import divisors

    T0 = c.set(SubsetId.T01(0))
    T1 = c.set(SubsetId.T01(1))
    xpoly = FqPoly.monomial(F, 1)
    ks = sorted(set(divisors(q - 1)) | set(divisors(q + 1)))
    D = _fq_families(F, "D", ks)
    for k in ks:
        f = FqPoly.vanishing(F, c.delta_star(k).encs)
        t.claim(D[k] == xpoly * f * f, "D_k = x f^2, f vanishing on delta*_k", k=k)
    f0, f1 = vanishing_poly(T0), vanishing_poly(T1)
    t.claim(D[q - 1] == xpoly * f0 * f0, "D_{q-1} = x f_0^2")
    t.claim(D[q + 1] == xpoly * f1 * f1, "D_{q+1} = x f_1^2")


def v_factorization_suite(F: FieldCtx, kr: KRange | None = None, ctx: Ctx | None = None) -> Verdict:
    c = ctx or Ctx(F)
    q = F.q
    t = Tally("factorization_suite", q)
    if F.p == 2:
        _factorization_even(c, t)
        t.note("(i)-(iv) apply to odd q only")
        return t.verdict()
    m = F.m
    ks_i = sorted({k for d in (q - 1, q + 1) for k in range(2, d // 2 + 1) if d % (2 * k) == 0})
    ks_ii = sorted({k for d in (q - 1, q + 1) for k in range(1, d // 4 + 1) if d % (4 * k) == 0})
    E = _fq_families(F, "E", [k - 1 for k in ks_i] + [(q - 3) // 2, (q - 1) // 2, m - 1])
    D = _fq_families(F, "D", ks_ii + [m])
    for k in ks_i:
        t.claim(E[k - 1] == FqPoly.vanishing(F, c.delta_star(2 * k).encs), "(i) E_{k-1} = prod over delta*_{2k}", k=k)
    for k in ks_ii:
        roots = sorted(_enc_set(c.delta_star(4 * k)) - _enc_set(c.delta_star(2 * k)))
        t.claim(D[k] == FqPoly.vanishing(F, roots), "(ii) D_k = prod over delta*_{4k} - delta*_{2k}", k=k)
    if not ks_i:
        t.vacuous("(i) no k > 1 with 2k | q+-1")
    two = c.c(2)
    fS, fN = vanishing_poly(c.set(S_ID)), vanishing_poly(c.set(N_ID))
    fZ = vanishing_poly(c.set(Z_ID))
    t.claim(fS == E[(q - 3) // 2], "(iii) f_S = E_{(q-3)/2}")
    t.claim(fN == E[(q - 1) // 2], "(iii) f_N = E_{(q-1)/2}")
    xq_x = FqPoly.monomial(F, q) - FqPoly.monomial(F, 1)
    t.claim(fS * fN * fZ == xq_x, "f_S f_N f_Z = x^q - x")
    A = {key: vanishing_poly(s) for key, s in _a_sets(c).items()}
    t.claim(fS == A[1, 1] * A[-1, -1], "f_S = f++ f--")
    t.claim(fN == A[1, -1] * A[-1, 1], "f_N = f+- f-+")
    gmm = vanishing_poly(c.B(two, -1, -1))
    gpp = vanishing_poly(c.B(two, 1, 1))
    t.claim(D[m] == gmm, "(iv) D_m = g--", m=m)
    t.claim(E[m - 1] == gpp, "(iv) E_{m-1} = g++", m=m)
    return t.verdict()


# -- products ----------------------------------------------------------------------------


def v_wilson_like(F: FieldCtx, kr: KRange | None = None, ctx: Ctx | None = None) -> Verdict:
    if F.p == 2:
        return skipped("wilson_like", F.q, ODD_ONLY)
    c = ctx or Ctx(F)
    q = F.q
    t = Tally("wilson_like", q)
    four = c.c(4)
    p1 = int(F.vprod(c.set(SubsetId.TJL(four, 0, -1, -1)).array))
    t.claim(p1 == c.c(2), "prod T_{4,0}^{--} = 2", expected=c.c(2), actual=p1)
    p2 = int(F.vprod(c.set(SubsetId.TJL(0, four, -1, -1)).array))
    t.claim(p2 == c.c(2 * c.two_char), "prod T_{0,4}^{--} = (2|q) 2", actual=p2)
    plus = q % 8 in (1, 7)
    t.claim((p2 == c.c(2)) == plus, "prod T_{0,4}^{--} = +2 iff q = +-1 mod 8", q_mod_8=q % 8, actual=p2)
    return t.verdict()


def _root_with(F: FieldCtx, chi: np.ndarray, vals: np.ndarray, shift: int, want: int):
    """For each v, the square roots r of v with chi(r + shift) = want: (count, root)."""
    ok, r = vsqrt(F, vals)
    r = np.where(ok, r, 0)
    cand = np.stack([r, F.vneg(r)])
    hit = (chi[F.vadd(cand, np.int64(shift))] == want) & ok[None, :]
    distinct = cand[0] != cand[1]
    count = hit[0].astype(int) + (hit[1] & distinct).astype(int)
    root = np.where(hit[0], cand[0], cand[1])
    return count, root


def v_D2_inverse_suite(F: FieldCtx, kr: KRange | None = None, ctx: Ctx | None = None) -> Verdict:
    if F.p == 2:
        return skipped("D2_inverse_suite", F.q, ODD_ONLY)
    c = ctx or Ctx(F)
    kr = kr or KRange()
    q, m = F.q, F.m
    t = Tally("D2_inverse_suite", q)
    chi = c.chi
    two_q = c.two_char
    lams = kr.lambdas(F)
    if q > 256:
        t.note(f"lambda sampled: {len(lams)} values")
    for lam in lams:
        nu = int(chi[F.mul(c.c(2), lam)])
        coef = F.div(c.c(2 * nu), lam)
        nl = F.mul(c.c(nu), lam)
        Bmp = c.B(lam, -1, 1).array
        Bpm = c.B(lam, 1, -1).array
        Bnn = c.B(lam, -nu, -nu).array
        scale = F.pow(coef, m - 1)

        def prod_inv(b):
            return F.vmul(np.int64(scale), shifted_products(F, Bnn, b))

        sq = F.vmul(np.int64(coef), F.vmul(Bmp, Bmp))
        pi = F.vsub(sq, np.int64(nl))
        t.claim(rows_permute(pi[None, :], Bmp, q)[0], "pi_lambda permutes B^{-+}", lam=lam)
        back = prod_inv(pi)
        t.claim(np.array_equal(back, Bmp), "product formula inverts pi_lambda", lam=lam, count=max(1, len(Bmp)))
        # sqrt form: pi^{-1}(b) = sqrt((lam nu b + lam^2)/2) with root + lam a square
        inv = prod_inv(Bmp)
        rad = F.vmul(F.vadd(F.vmul(np.int64(nl), Bmp), np.int64(F.mul(lam, lam))), np.int64(F.inv(c.c(2))))
        cnt, root = _root_with(F, chi, rad, lam, 1)
        t.claim(bool(np.all(cnt == 1)) and np.array_equal(root, inv), "pi_lambda^{-1} square-root form", lam=lam)

        sq = F.vmul(np.int64(coef), F.vmul(Bpm, Bpm))
        sigma = F.vadd(F.vneg(sq), np.int64(nl))
        t.claim(rows_permute(sigma[None, :], Bpm, q)[0], "sigma_lambda permutes B^{+-}", lam=lam)

        def sig_inv(b):
            return F.vmul(np.int64(c.c(-two_q)), prod_inv(b))

        t.claim(np.array_equal(sig_inv(sigma), Bpm), "product formula inverts sigma_lambda", lam=lam, count=max(1, len(Bpm)))
        inv = sig_inv(Bpm)
        rad = F.vmul(F.vadd(F.vneg(F.vmul(np.int64(nl), Bpm)), np.int64(F.mul(lam, lam))), np.int64(F.inv(c.c(2))))
        cnt, root = _root_with(F, chi, rad, lam, -1)
        t.claim(bool(np.all(cnt == 1)) and np.array_equal(root, inv), "sigma_lambda^{-1} square-root form", lam=lam)

    two = c.c(2)
    dom = np.array(sorted((_enc_set(c.B(two, 1, 1)) | _enc_set(c.B(two, -1, -1))) - {0}), dtype=np.int64)
    img = F.vsub(F.vmul(dom, dom), np.int64(two))
    pp = c.B(two, 1, 1).array
    counts = np.bincount(img, minlength=q)
    ok = bool(np.all(np.isin(img, pp))) and bool(np.all(counts[pp] == 2))
    t.claim(ok, "b -> b^2-2 is two-to-one from (B++ u B--) - {0} onto B++", count=max(1, len(dom)))
    return t.verdict()


def v_Dm_product_cases(F: FieldCtx, kr: KRange | None = None, ctx: Ctx | None = None) -> Verdict:
    if F.p == 2:
        return skipped("Dm_product_cases", F.q, ODD_ONLY)
    c = ctx or Ctx(F)
    q = F.q
    t = Tally("Dm_product_cases", q)
    chi, x, two = c.chi, c.x, c.c(2)
    B = {(e1, e2): c.B(two, e1, e2) for e1 in (1, -1) for e2 in (1, -1)}
    P = shifted_products(F, B[-1, -1].array, x)
    t2 = c.two_char

    def check(cs: np.ndarray, want: np.ndarray, clause: str) -> None:
        bad = np.nonzero(P[cs] != want)[0]
        rec = {"c": int(cs[bad[0]]), "expected": int(want[bad[0]]), "actual": int(P[cs[bad[0]]])} if len(bad) else {}
        t.claim(not len(bad), clause, count=max(1, len(cs)), **rec)

    covered = np.zeros(q, dtype=bool)
    for cv, want, clause in ((two, two, "c = 2"), (c.c(-2), c.c(2 * t2), "c = -2")):
        covered[cv] = True
        check(np.array([cv]), np.array([want]), clause)

    cs = B[-1, 1].array
    covered[cs] = True
    cnt, root = _root_with(F, chi, F.vadd(cs, np.int64(two)), two, 1)
    t.claim(bool(np.all(cnt == 1)), "c in B-+: exactly one sqrt(c+2) with sqrt(c+2)+2 a square", count=max(1, len(cs)))
    check(cs, root, "c in B-+: sqrt(c+2)")

    cs = B[1, -1].array
    covered[cs] = True
    cnt, root = _root_with(F, chi, F.vsub(np.int64(two), cs), two, -1)
    t.claim(bool(np.all(cnt == 1)), "c in B+-: exactly one sqrt(2-c) with sqrt(2-c)+2 a nonsquare", count=max(1, len(cs)))
    check(cs, F.vmul(np.int64(c.c(-t2)), root), "c in B+-: -(2|q) sqrt(2-c)")

    cs = B[1, 1].array
    covered[cs] = True
    if len(cs):
        ok, r = vsqrt(F, F.vadd(cs, np.int64(two)))
        bpp, bmm = c.mask(B[1, 1].encs), c.mask(B[-1, -1].encs)
        r = np.where(ok, r, 0)
        both = ok & ((bpp[r] & bpp[F.vneg(r)]) | (bmm[r] & bmm[F.vneg(r)]))
        t.claim(bool(np.all(both)), "c in B++: +-sqrt(c+2) both in B++ or both in B--", count=len(cs))
        check(cs, np.where(bpp[r], two, c.c(-2)), "c in B++: 2 or -2")
    cs = B[-1, -1].array
    covered[cs] = True
    check(cs, np.zeros(len(cs), dtype=np.int64), "c in B--: 0")
    t.claim(bool(covered.all()), "the cases cover F_q")
    return t.verdict()


def v_fSfN_values(F: FieldCtx, kr: KRange | None = None, ctx: Ctx | None = None) -> Verdict:
    if F.p == 2:
        return skipped("fSfN_values", F.q, ODD_ONLY)
    c = ctx or Ctx(F)
    q, eps = F.q, F.epsilon
    t = Tally("fSfN_values", q)
    x, chi = c.x, c.chi
    two, mtwo = c.c(2), c.c(-2)
    half = F.inv(two)
    PS = shifted_products(F, c.set(S_ID).array, x)
    PN = shifted_products(F, c.set(N_ID).array, x)
    disc = chi[F.vsub(F.vmul(x, x), np.int64(c.c(4)))]
    chi_cm2 = np.array([F.const(int(v)) for v in chi[F.vsub(x, np.int64(two))]], dtype=np.int64)
    zero = np.zeros(q, dtype=np.int64)
    wantS = np.where(disc == 1, zero, chi_cm2)
    wantN = np.where(disc == 1, chi_cm2, zero)
    wantS[two], wantS[mtwo] = F.neg(half), F.mul(c.c(eps), half)
    wantN[two], wantN[mtwo] = half, F.mul(c.c(eps), half)
    for P, want, name in ((PS, wantS, "S"), (PN, wantN, "N")):
        bad = np.nonzero(P != want)[0]
        rec = {"c": int(bad[0]), "expected": int(want[bad[0]]), "actual": int(P[bad[0]])} if len(bad) else {}
        t.claim(not len(bad), f"prod over {name} of (c - a) case table", count=q, **rec)

    a4 = chi[F.vmul(x, F.vadd(x, np.int64(c.c(4))))]
    P1 = shifted_products(F, x[a4 == 1], x)
    P2 = shifted_products(F, x[a4 == -1], x)
    chi_c = np.array([F.const(int(v)) for v in chi], dtype=np.int64)
    lhs = F.vadd(P1, P2)
    bad = np.nonzero(lhs != chi_c)[0]
    t.claim(not len(bad), "prod{chi(a(a+4))=1} + prod{chi(b(b+4))=-1} = chi(c)", count=q, **({"c": int(bad[0])} if len(bad) else {}))

    E = _fq_families(F, "E", [(q - 3) // 2, (q - 1) // 2])
    rhs = _poly_pow(FqPoly(F, [mtwo, 1]), (q - 1) // 2)
    t.claim(E[(q - 3) // 2] + E[(q - 1) // 2] == rhs, "E_{(q-3)/2} + E_{(q-1)/2} = (x-2)^{(q-1)/2}")
    return t.verdict()


def _signed_comb(F: FieldCtx, num: int, den: int = 1) -> int:
    if num % den:
        raise ArithmeticError("closed form is not an integer")
    return F.const(num // den)


def v_sigma_closed_forms(F: FieldCtx, kr: KRange | None = None, ctx: Ctx | None = None) -> Verdict:
    if F.p == 2:
        return skipped("sigma_closed_forms", F.q, ODD_ONLY)
    c = ctx or Ctx(F)
    q, eps, m = F.q, F.epsilon, F.m
    t = Tally("sigma_closed_forms", q)
    two = c.c(2)
    sets = {
        "-": c.B(two, -1, -1),
        "+": c.B(two, 1, 1),
        "S": c.set(S_ID),
        "N": c.set(N_ID),
    }
    sig = {name: elem_syms(s) for name, s in sets.items()}
    for name, vals in sig.items():
        odd_ok = all(v == 0 for j, v in enumerate(vals) if j % 2)
        t.claim(odd_ok, f"odd sigma_j vanish on {name}", count=max(1, len(vals) // 2))

    def check(name: str, i: int, want: int, clause: str) -> None:
        vals = sig[name]
        got = vals[2 * i] if 2 * i < len(vals) else None
        t.claim(got == want, clause, i=i, expected=want, actual=got)

    i = 0
    while 8 * i <= q + 1:
        check("-", i, _signed_comb(F, (-1) ** i * m * comb(m - i, i), m - i), "sigma_{2i}^- closed form")
        i += 1
    i = 0
    while 8 * i <= q - 3:
        check("+", i, F.const((-1) ** i * comb(m - 1 - i, i)), "sigma_{2i}^+ closed form")
        i += 1
    i = 0
    while q >= 4 * i + 3:
        check("S", i, F.const((-1) ** i * comb((q - 3) // 2 - i, i)), "sigma_{2i}(S) closed form")
        i += 1
    i = 0
    while q >= 4 * i + 1:
        check("N", i, F.const((-1) ** i * comb((q - 1) // 2 - i, i)), "sigma_{2i}(N) closed form")
        i += 1

    inv = F.inv
    if q >= 7:
        check("-", 1, F.mul(c.c(eps), inv(c.c(4))), "sigma_2^- = eps/4")
    if q >= 17:
        check("-", 2, F.mul(c.c(eps * (eps + 12)), inv(c.c(32))), "sigma_4^- = eps(eps+12)/32")
    if q >= 11:
        check("+", 1, F.add(F.mul(c.c(eps), inv(c.c(4))), two), "sigma_2^+ = eps/4 + 2")
    if q >= 19:
        check("+", 2, F.mul(c.c((eps + 12) * (eps + 16)), inv(c.c(32))), "sigma_4^+ = (eps+12)(eps+16)/32")
    return t.verdict()
