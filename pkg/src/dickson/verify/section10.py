"""Products over T_{A,0}^{e1,e2} = {a != 0 : chi(A-a) = e1, chi(a) = e2}, odd q."""

from __future__ import annotations

import numpy as np

from ..ffield import FieldCtx
from ..subsets import SubsetId
from ..verdict import Tally, Verdict, skipped
from .core import Ctx, KRange
from .odd import ODD_ONLY

SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def _gamma(nu: int, eps: int, e1: int, e2: int) -> int:
    return 1 if (nu == eps * e1 == e2) or (-eps == nu * e1 == 1) else 0


def v_section10(F: FieldCtx, kr: KRange | None = None, ctx: Ctx | None = None) -> Verdict:
    if F.p == 2:
        return skipped("section10", F.q, ODD_ONLY)
    c = ctx or Ctx(F)
    kr = kr or KRange()
    q, eps, m = F.q, F.epsilon, F.m
    t = Tally("section10", q)
    chi = c.chi
    two_q = c.two_char
    mtwo_q = int(chi[c.c(-2)])
    pw, mul, cc = F.pow, F.mul, c.c

    def T(j: int, e1: int, e2: int):
        return c.set(SubsetId.TJL(j, 0, e1, e2))

    def prod(j: int, e1: int, e2: int) -> int:
        return int(F.vprod(T(j, e1, e2).array))

    four = cc(4)
    base = {s: prod(four, *s) for s in SIGNS}
    half = F.inv(cc(2))
    t.claim(base[-1, -1] == cc(2), "N = prod T_{4,0}^{--} = 2", actual=base[-1, -1])
    t.claim(base[1, 1] == F.div(cc(-eps), four), "Q = prod T_{4,0}^{++} = -eps/4", actual=base[1, 1])
    t.claim(base[1, 1] == mul(half, mul(base[1, 1], base[-1, -1])), "Q = QN/2")
    t.claim(base[1, -1] == mul(cc(eps), half), "prod T_{4,0}^{+-} = eps/2", actual=base[1, -1])
    t.claim(base[-1, 1] == 1, "prod T_{4,0}^{-+} = 1", actual=base[-1, 1])
    # the Stong rewriting: product over c != 0 with chi(c) = chi(4-c) equals QN
    x = c.x[1:]
    agree = x[chi[x] == chi[F.vsub(np.int64(four), x)]]
    t.claim(int(F.vprod(agree)) == mul(base[1, 1], base[-1, -1]), "prod{c : chi(c) = chi(4-c)} = QN")

    pow2_half = {1: 1, -1: half}  # 2^{(eps-1)/2}
    pow2_plus = {1: cc(2), -1: 1}  # 2^{(eps+1)/2}
    t.claim(pw(four, m) == mul(cc(two_q), pw(cc(2), (1 - eps) // 2)), "4^m = (2|q) 2^{(1-eps)/2}")

    lams = kr.lambdas(F)
    if q > 256:
        t.note(f"lambda sampled: {len(lams)} values")
    for lam in lams:
        nu = int(chi[lam])
        A = mul(four, lam)
        for e1, e2 in SIGNS:
            g = _gamma(nu, eps, e1, e2)
            got = prod(A, e1, e2)
            ref = base[nu * e1, nu * e2]
            want = mul(pw(lam, m - g), ref)
            t.claim(got == want, "prod T_{4 lam,0} = lam^{m-gamma} prod T_{4,0}^{nu e1, nu e2}", lam=lam, signs=[e1, e2], expected=want, actual=got)
            alt = mul(mul(cc(two_q), pw(A, m - g)), mul(pw(four, g), mul(pow2_half[eps], ref)))
            t.claim(got == alt, "A-form with (2|q) A^{m-gamma} 4^gamma 2^{(eps-1)/2}", lam=lam, signs=[e1, e2])
        for mu in (1, -1):
            got = prod(A, mu, mu)
            if mu == nu:
                want = mul(cc(-eps * two_q), mul(pw(A, m - 1), pow2_half[eps]))
            else:
                want = mul(cc(two_q), mul(pw(A, m), pow2_plus[eps]))
            t.claim(got == want, "diagonal case table", lam=lam, mu=mu, expected=want, actual=got)

        # Brock: the eps nu diagonal
        Tb = T(A, eps * nu, eps * nu)
        tt = len(Tb)
        t.claim(tt == m - (eps + 1) // 2, "t = |T_{A,0}^{eps nu, eps nu}| = m - (eps+1)/2", lam=lam, actual=tt)
        want = mul(cc(-mtwo_q), pw(A, m - (eps + 1) // 2))
        got = int(F.vprod(Tb.array))
        t.claim(got == want, "prod T_{A,0}^{eps nu, eps nu} = -(-2|q) A^{m-(eps+1)/2}", lam=lam, expected=want, actual=got)
        t.claim(got == mul(cc(-mtwo_q), pw(A, tt)), "prod = -(-2|q) A^t", lam=lam)
        members = set(Tb.encs)
        a2 = mul(A, A)
        mirrored = F.vmul(np.int64(a2), F.vinv(x))
        inside = np.isin(x, Tb.array)
        t.claim(np.array_equal(inside, np.isin(mirrored, Tb.array)), "b in T iff A^2/b in T", lam=lam, count=len(x))
        t.claim((F.neg(A) in members) == (mtwo_q == 1), "-A in T iff (-2|q) = 1", lam=lam)
    return t.verdict()
