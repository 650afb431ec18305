"""Dickson, second-kind Dickson, Chebyshev and Schur polynomial families.

Integer polynomials (:class:`ZPoly`) are exact and built by their
three-term recursions; :class:`FqPoly` holds coefficients in a finite field.
"""

from __future__ import annotations

import threading
import weakref
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .ffield import Fe, FieldCtx, FieldError
from .verdict import Tally, Verdict


class ZPoly:
    """Dense polynomial over the integers, low degree first, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def x(cls) -> ZPoly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = ZPoly((other,))
        return isinstance(other, ZPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> ZPoly:
        if isinstance(other, int):
            other = ZPoly((other,))
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return ZPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> ZPoly:
        return ZPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> ZPoly:
        if isinstance(other, int):
            other = ZPoly((other,))
        return self + (-other)

    def __rsub__(self, other) -> ZPoly:
        return (-self) + other

    def __mul__(self, other) -> ZPoly:
        if isinstance(other, int):
            return ZPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return ZPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> ZPoly:
        r, b = ZPoly((1,)), self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def divmod(self, other: ZPoly) -> tuple[ZPoly, ZPoly]:
        """Long division; the divisor's leading coefficient must divide each step."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        d, lead = other.degree, other.lead()
        quot = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c, r = divmod(rem[i], lead)
            if r:
                raise ArithmeticError("quotient is not integral")
            quot[i - d] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i - d + j] -= c * b
        return ZPoly(quot), ZPoly(rem)

    def scale_x(self, s: int) -> ZPoly:
        """p(s*x)."""
        return ZPoly(c * s**i for i, c in enumerate(self.coeffs))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def descending(self) -> list[int]:
        return list(reversed(self.coeffs)) if self.coeffs else [0]

    def __repr__(self) -> str:
        return f"ZPoly({list(self.coeffs)})"


# -- recursion-built families ---------------------------------------------------

# name -> (F_0, F_1, x-multiplier) for F_{k+2} = mult*x*F_{k+1} - F_k
_RECURSIONS: dict[str, tuple[tuple[int, ...], tuple[int, ...], int]] = {
    "D": ((2,), (0, 1), 1),
    "E": ((1,), (0, 1), 1),
    "T": ((1,), (0, 1), 2),
    "U": ((1,), (0, 2), 2),
    "A": ((1,), (1, 1), 1),
    "B": ((1,), (-1, 1), 1),
    "J": ((), (1,), 1),
}
FAMILIES = ("D", "E", "T", "U")

_tables: dict[str, list[ZPoly]] = {}
_lock = threading.Lock()


def family(name: str, k: int) -> ZPoly:
    if name not in _RECURSIONS:
        raise ValueError(f"unknown polynomial family {name!r}")
    if k < 0:
        raise ValueError("index must be >= 0")
    table = _tables.get(name)
    if table is not None and k < len(table):
        return table[k]
    with _lock:
        f0, f1, mult = _RECURSIONS[name]
        table = _tables.setdefault(name, [ZPoly(f0), ZPoly(f1)])
        step = ZPoly((0, mult))
        while len(table) <= k:
            table.append(step * table[-1] - table[-2])
        return table[k]


def dickson_D(k: int) -> ZPoly:
    return family("D", k)


def dickson_E(k: int) -> ZPoly:
    return family("E", k)


def cheb_T(k: int) -> ZPoly:
    return family("T", k)


def cheb_U(k: int) -> ZPoly:
    return family("U", k)


def schur_seq(which: str, k: int) -> ZPoly:
    if which not in ("A", "B", "J"):
        raise ValueError(f"unknown Schur family {which!r}")
    return family(which, k)


def closed_form_D(k: int) -> ZPoly:
    if k < 1:
        raise ValueError("closed form needs k >= 1")
    c = [0] * (k + 1)
    for i in range(k // 2 + 1):
        num = k * comb(k - i, i)
        if num % (k - i):
            raise ArithmeticError(f"non-integral coefficient at i={i}")
        c[k - 2 * i] = (-1) ** i * (num // (k - i))
    return ZPoly(c)


def closed_form_E(k: int) -> ZPoly:
    if k < 0:
        raise ValueError("closed form needs k >= 0")
    c = [0] * (k + 1)
    for i in range(k // 2 + 1):
        c[k - 2 * i] = (-1) ** i * comb(k - i, i)
    return ZPoly(c)


def family_mod_p(name: str, ks: Iterable[int], p: int) -> dict[int, np.ndarray]:
    """Coefficient arrays (low degree first, entries in [0, p)) by recursion mod p."""
    wanted = sorted(set(ks))
    if not wanted:
        return {}
    f0, f1, mult = _RECURSIONS[name]
    top = wanted[-1]
    prev = np.zeros(top + 2, dtype=np.int64)
    cur = np.zeros(top + 2, dtype=np.int64)
    prev[: len(f0)] = f0
    cur[: len(f1)] = f1
    prev %= p
    cur %= p
    out: dict[int, np.ndarray] = {}
    want = set(wanted)

    def emit(k, arr):
        if k in want:
            out[k] = _trim_np(arr[: k + 1].copy())

    emit(0, prev)
    for k in range(1, top + 1):
        emit(k, cur)
        if k == top:
            break
        nxt = np.empty_like(cur)
        nxt[0] = -prev[0] % p
        nxt[1:] = (mult * cur[:-1] - prev[1:]) % p
        prev, cur = cur, nxt
    return out


def _trim_np(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if len(nz) else a[:0]


# -- polynomials over F_q --------------------------------------------------------


class FqPoly:
    """Dense polynomial with coefficients (encodings) in a base field, low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, F: FieldCtx, coeffs):
        self.field = F
        arr = np.asarray(coeffs, dtype=np.int64).reshape(-1)
        self.coeffs = _trim_np(arr)

    @classmethod
    def from_zpoly(cls, F: FieldCtx, zp: ZPoly) -> FqPoly:
        return cls(F, [c % F.p for c in zp.coeffs])

    @classmethod
    def from_mod_p(cls, F: FieldCtx, arr: np.ndarray) -> FqPoly:
        # prime-subfield residues keep their value as encodings
        return cls(F, arr)

    @classmethod
    def monomial(cls, F: FieldCtx, deg: int, c: int = 1) -> FqPoly:
        a = np.zeros(deg + 1, dtype=np.int64)
        a[deg] = c
        return cls(F, a)

    @classmethod
    def vanishing(cls, F: FieldCtx, roots: Sequence[int]) -> FqPoly:
        """prod (x - r); the empty product is 1."""
        c = np.zeros(len(roots) + 1, dtype=np.int64)
        c[0] = 1
        for i, r in enumerate(roots):
            # c currently has degree i
            shifted = c[: i + 1].copy()
            c[1 : i + 2] = shifted
            c[0] = 0
            c[: i + 1] = F.vsub(c[: i + 1], F.vmul(np.int64(r), shifted))
        return cls(F, c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _check(self, other: FqPoly) -> None:
        if other.field is not self.field:
            raise FieldError("polynomials over different fields")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FqPoly)
            and other.field is self.field
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __add__(self, other: FqPoly) -> FqPoly:
        self._check(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, dtype=np.int64)
        b = np.zeros(n, dtype=np.int64)
        a[: len(self.coeffs)] = self.coeffs
        b[: len(other.coeffs)] = other.coeffs
        return FqPoly(F, F.vadd(a, b))

    def __neg__(self) -> FqPoly:
        return FqPoly(self.field, self.field.vneg(self.coeffs))

    def __sub__(self, other: FqPoly) -> FqPoly:
        return self + (-other)

    def scale(self, c: int) -> FqPoly:
        return FqPoly(self.field, self.field.vmul(self.coeffs, np.int64(c)))

    def __mul__(self, other: FqPoly) -> FqPoly:
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) == 0 or len(b) == 0:
            return FqPoly(F, [])
        if len(a) > len(b):
            a, b = b, a
        out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
        for i, c in enumerate(a.tolist()):
            if c:
                seg = slice(i, i + len(b))
                out[seg] = F.vadd(out[seg], F.vmul(np.int64(c), b))
        return FqPoly(F, out)

    def __call__(self, points):
        """Horner evaluation at base-field points (array in, array out)."""
        F = self.field
        x = np.asarray(points, dtype=np.int64)
        acc = np.zeros_like(x)
        for c in self.coeffs[::-1].tolist():
            acc = F.vadd(F.vmul(acc, x), np.int64(c))
        return acc

    def reverse(self) -> FqPoly:
        return reverse(self)

    def __repr__(self) -> str:
        return f"FqPoly({self.coeffs.tolist()} over {self.field})"


def reverse(poly: FqPoly) -> FqPoly:
    """x^deg(f) * f(1/x)."""
    if len(poly.coeffs) == 0:
        raise ValueError("the zero polynomial has no reverse")
    return FqPoly(poly.field, poly.coeffs[::-1])


def family_fq(F: FieldCtx, name: str, k: int) -> FqPoly:
    return FqPoly.from_mod_p(F, family_mod_p(name, [k], F.p)[k])


# -- evaluation ---------------------------------------------------------------------


def eval(poly: ZPoly | FqPoly, F: FieldCtx, a: Fe) -> Fe:  # noqa: A001
    """Horner evaluation at a (base or extension element)."""
    if a.field is not F:
        raise FieldError("point belongs to a different field")
    if isinstance(poly, FqPoly):
        if poly.field is not F:
            raise FieldError("polynomial belongs to a different field")
        coeffs = poly.coeffs.tolist()
    else:
        coeffs = [c % F.p for c in poly.coeffs]
    if a.ext:
        acc = 0
        for c in reversed(coeffs):
            acc = F.eadd(F.emul(acc, a.value), c)
        return Fe(F, acc, True)
    acc = 0
    add, mul, x = F.add, F.mul, a.value
    for c in reversed(coeffs):
        acc = add(mul(acc, x), c)
    return Fe(F, acc)


def horner_mod_p(coeffs: Sequence[int], F: FieldCtx, x: int) -> int:
    acc = 0
    add, mul = F.add, F.mul
    for c in reversed(coeffs):
        acc = add(mul(acc, x), c)
    return acc


def solve_ang(F: FieldCtx, a: int) -> int:
    """A root u in GF(q^2) of u^2 - a*u + 1, so that <u> = a."""
    if F.p != 2:
        r = F.esqrt(F.sub(F.mul(a, a), F.const(4)))
        half = F.inv(F.const(2))
        u = F.eadd(a, r)
        u0, u1 = F.split(u)
        u = F.join(F.mul(u0, half), F.mul(u1, half))
    elif a == 0:
        u = 1
    else:
        # u = a*z with z^2 + z = 1/a^2
        c = F.inv(F.mul(a, a))
        z = artin_schreier(F, c)
        z0, z1 = F.split(z)
        u = F.join(F.mul(a, z0), F.mul(a, z1))
    check = F.eadd(F.esub(F.emul(u, u), F.emul(a, u)), 1)
    if check != 0:  # pragma: no cover
        raise AssertionError("quadratic solve failed")
    return u


_as_tables: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def artin_schreier(F: FieldCtx, c: int) -> int:
    """A root z in GF(q^2) of z^2 + z = c for c in GF(q), q even."""
    table = _as_tables.get(F)
    if table is None:
        table = {}
        for z in range(F.q):
            table.setdefault(F.add(F.mul(z, z), z), z)
        _as_tables[F] = table
    if c in table:
        return table[c]
    # Tr(c) = 1: shift by the extension generator y, which has y^2 + y = t
    z0 = table[F.add(c, F.ext_t)]
    return F.join(z0, 1)


def eval_via_functional(F: FieldCtx, k: int, a: Fe) -> Fe:
    """D_k(a) computed as <u^k> where <u> = a."""
    if k < 0:
        raise ValueError("k must be >= 0")
    u = solve_ang(F, a.value if not a.ext else _to_base(a))
    w = F.epow(u, k)
    v = F.eadd(w, F.einv(w))
    if v >= F.q:  # pragma: no cover
        raise AssertionError("<u^k> left the base field")
    return Fe(F, v)


def _to_base(a: Fe) -> int:
    if not a.in_base():
        raise FieldError("argument must lie in the base field")
    return a.value


# -- vectorised evaluation over a whole field ---------------------------------------


class DicksonTable:
    """D_k on all of F_q at once, through D_k(<u>) = <u^k>.

    Each a in F_q is <h^j> with h generating mu_{q-1}, or <w^j> with w
    generating mu_{q+1}; then D_k(a) is a table lookup at index j*k.
    """

    def __init__(self, F: FieldCtx):
        q = F.q
        self.field = F
        h = F.epow(F.generator2, q + 1)
        w = F.epow(F.generator2, q - 1)
        tab_s, x = [], 1
        for _ in range(q - 1):
            tab_s.append(F.add(x, F.inv(x)))
            x = F.mul(x, h)
        tab_n, x = [], 1
        for _ in range(q + 1):
            v = F.eadd(x, F.einv(x))
            if v >= q:  # pragma: no cover
                raise AssertionError("<w^j> left the base field")
            tab_n.append(v)
            x = F.emul(x, w)
        self.tab_s = np.array(tab_s, dtype=np.int64)
        self.tab_n = np.array(tab_n, dtype=np.int64)
        kind = np.full(q, -1, dtype=np.int64)
        idx = np.zeros(q, dtype=np.int64)
        for j, a in enumerate(tab_s):
            if kind[a] < 0:
                kind[a], idx[a] = 0, j
        for j, a in enumerate(tab_n):
            if kind[a] < 0:
                kind[a], idx[a] = 1, j
        if np.any(kind < 0):  # pragma: no cover
            raise AssertionError("some element is not of the form <u>")
        self.in_n = kind == 1
        self.idx = idx

    def values(self, ks, points=None) -> np.ndarray:
        """Matrix with rows D_k(points) for k in ks (points default to all of F_q)."""
        F = self.field
        ks = np.asarray(ks, dtype=object).reshape(-1)
        pts = F.elements() if points is None else np.asarray(points, dtype=np.int64)
        ks_s = np.array([int(k) % (F.q - 1) for k in ks], dtype=np.int64)
        ks_n = np.array([int(k) % (F.q + 1) for k in ks], dtype=np.int64)
        j = self.idx[pts]
        out_s = self.tab_s[(ks_s[:, None] * j[None, :]) % (F.q - 1)]
        out_n = self.tab_n[(ks_n[:, None] * j[None, :]) % (F.q + 1)]
        return np.where(self.in_n[pts][None, :], out_n, out_s)

    def row(self, k: int, points=None) -> np.ndarray:
        return self.values([k], points)[0]


_dtables: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def dickson_table(F: FieldCtx) -> DicksonTable:
    t = _dtables.get(F)
    if t is None:
        with _lock:
            t = _dtables.get(F)
            if t is None:
                t = _dtables[F] = DicksonTable(F)
    return t


def recurrence_eval(F: FieldCtx, name: str, k: int, points) -> np.ndarray:
    """F_k(points) for a recursion family by powering its 2x2 companion matrix.

    Independent of both the coefficient recursion and the <u> tables, so it
    serves as a cross-check for them.
    """
    f0, f1, mult = _RECURSIONS[name]
    x = np.asarray(points, dtype=np.int64)
    c0 = FqPoly.from_zpoly(F, ZPoly(f0))(x)
    c1 = FqPoly.from_zpoly(F, ZPoly(f1))(x)
    if k == 0:
        return c0
    one = np.ones_like(x)
    zero = np.zeros_like(x)
    sx = F.vmul(np.int64(F.const(mult)), x)

    def mm(a, b):
        return tuple(
            F.vadd(F.vmul(a[r][0], b[0][c]), F.vmul(a[r][1], b[1][c]))
            for r in range(2)
            for c in range(2)
        )

    def pack(t):
        return ((t[0], t[1]), (t[2], t[3]))

    base = ((sx, F.vneg(one)), (one, zero))
    acc = ((one, zero), (zero, one))
    e = k - 1
    while e:
        if e & 1:
            acc = pack(mm(acc, base))
        base = pack(mm(base, base))
        e >>= 1
    # (F_k, F_{k-1}) = M^(k-1) (F_1, F_0)
    return F.vadd(F.vmul(acc[0][0], c1), F.vmul(acc[0][1], c0))


# -- identity battery over Z[x] --------------------------------------------------------

_X = ZPoly.x()


def _exact_div(tally: Tally, clause: str, num: ZPoly, den: ZPoly, k: int) -> ZPoly | None:
    try:
        quot, rem = num.divmod(den)
    except ArithmeticError:
        tally.claim(False, clause, k=k, note="non-integral quotient")
        return None
    if not tally.claim(rem.is_zero(), clause + " divisibility", k=k, remainder=list(rem.coeffs)):
        return None
    return quot


def check_schur_identities(k_max: int) -> Verdict:
    t = Tally("schur_identities", 0)
    x2m4 = _X * _X - 4
    for k in range(k_max + 1):
        Dk, D2k, D2k1 = dickson_D(k), dickson_D(2 * k), dickson_D(2 * k + 1)
        t.claim(D2k + 2 == Dk * Dk, "D_2k + 2 = D_k^2", k=k)
        J = schur_seq("J", k)
        for label, num in (("(D_k^2-4)/(x^2-4)", Dk * Dk - 4), ("(D_2k-2)/(x^2-4)", D2k - 2)):
            quot = _exact_div(t, label, num, x2m4, k)
            if quot is not None:
                t.claim(quot == J * J, label + " = J_k^2", k=k)
        A = schur_seq("A", k)
        quot = _exact_div(t, "(D_2k+1 - 2)/(x-2)", D2k1 - 2, _X - 2, k)
        if quot is not None:
            t.claim(quot == A * A, "(D_2k+1 - 2)/(x-2) = A_k^2", k=k)
        B = schur_seq("B", k)
        quot = _exact_div(t, "(D_2k+1 + 2)/(x+2)", D2k1 + 2, _X + 2, k)
        if quot is not None:
            t.claim(quot == B * B, "(D_2k+1 + 2)/(x+2) = B_k^2", k=k)
        if k >= 1:
            t.claim(J == dickson_E(k - 1), "J_k = E_{k-1}", k=k)
    return t.verdict()


def _t_sequences(n: int) -> dict[str, list[ZPoly]]:
    seqs: dict[str, list[ZPoly]] = {"D_2k+2": [], "(D_k^2-4)/(x^2-4)": [], "(D_2k+1-2)/(x-2)": [], "(D_2k+1+2)/(x+2)": []}
    x2m4 = _X * _X - 4
    for k in range(n):
        Dk = dickson_D(k)
        seqs["D_2k+2"].append(dickson_D(2 * k) + 2)
        seqs["(D_k^2-4)/(x^2-4)"].append((Dk * Dk - 4).divmod(x2m4)[0])
        seqs["(D_2k+1-2)/(x-2)"].append((dickson_D(2 * k + 1) - 2).divmod(_X - 2)[0])
        seqs["(D_2k+1+2)/(x+2)"].append((dickson_D(2 * k + 1) + 2).divmod(_X + 2)[0])
    return seqs


def check_T_recursion(k_max: int) -> Verdict:
    """Each sequence obeys s_{k+3} = (x^2-1)(s_{k+2} - s_{k+1}) + s_k."""
    t = Tally("T_recursion", 0)
    x2m1 = _X * _X - 1
    x2m4 = _X * _X - 4
    for k in range(k_max + 4):
        Dk = dickson_D(k)
        _exact_div(t, "(D_k^2-4)/(x^2-4)", Dk * Dk - 4, x2m4, k)
        _exact_div(t, "(D_2k+1-2)/(x-2)", dickson_D(2 * k + 1) - 2, _X - 2, k)
        _exact_div(t, "(D_2k+1+2)/(x+2)", dickson_D(2 * k + 1) + 2, _X + 2, k)
    if t.counterexample is not None:
        return t.verdict()
    for name, s in _t_sequences(k_max + 4).items():
        for k in range(k_max + 1):
            rhs = x2m1 * (s[k + 2] - s[k + 1]) + s[k]
            t.claim(s[k + 3] == rhs, name, k=k)
    return t.verdict()


def check_DkDl(k_max: int) -> Verdict:
    t = Tally("DkDl", 0)
    for k in range(1, k_max + 1):
        for l in range(0, k + 1):
            lhs = dickson_D(k) * dickson_D(l)
            rhs = dickson_D(k + l) + dickson_D(k - l)
            t.claim(lhs == rhs, "D_k D_l = D_{k+l} + D_{k-l}", k=k, l=l)
    return t.verdict()
