"""Finite fields GF(p^n) and their quadratic extension GF(p^2n).

Elements are integers under the encoding ``enc(a) = sum(a_i * p**i)`` of
their coefficient vector in the polynomial basis.  The quadratic extension
is a tower over GF(q): ``a0 + a1*y`` is encoded as ``enc(a0) + q*enc(a1)``,
so a base element keeps its encoding when embedded.

:class:`FieldCtx` carries log/antilog tables for the base field and exposes
three layers of arithmetic: scalar methods on ints (``mul``, ``emul``...),
vectorised methods on numpy arrays (``vmul``...), and the :class:`Fe`
wrapper with operator overloading for interactive use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .numtheory import factorint, is_prime, order_mod_group

DEFAULT_SIZE_BOUND = 1 << 26


class FieldError(ValueError):
    pass


# -- polynomials over GF(p) as coefficient lists, low degree first ----------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df])


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmulmod(a, b, f, p):
    return _pmod(_pmul(a, b, p), f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic ``f`` over GF(p)."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**n, f, p), x, p):
        return False
    for r, _ in factorint(n):
        h = _psub(_ppowmod(x, p ** (n // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree n (c0 compared first)."""
    for tail in itertools.product(range(p), repeat=n):
        f = list(tail) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible of degree {n} over GF({p})")  # pragma: no cover


def _digits(a: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _undigits(d, p: int) -> int:
    v = 0
    for c in reversed(d):
        v = v * p + c
    return v


# -- the field ---------------------------------------------------------------


class FieldCtx:
    """GF(p^n) with its tower extension GF(p^2n); immutable after construction."""

    def __init__(self, p: int, n: int = 1, size_bound: int = DEFAULT_SIZE_BOUND):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if n < 1:
            raise FieldError("extension degree must be >= 1")
        q = p**n
        if q * q > size_bound:
            raise FieldError(f"q^2 = {q * q} exceeds the size bound {size_bound}")
        self.p, self.n, self.q = p, n, q
        self.modulus = least_irreducible(p, n)
        self.order2 = q * q - 1
        self._build_tables()
        self._build_extension()

    # construction ------------------------------------------------------------

    def _build_tables(self) -> None:
        p, n, q = self.p, self.n, self.q
        f = list(self.modulus)
        if n == 1:
            mul = lambda a, b: a * b % p  # noqa: E731
        elif p == 2:
            red = _undigits(f, 2)

            def mul(a, b):
                r = 0
                while b:
                    if b & 1:
                        r ^= a
                    b >>= 1
                    a <<= 1
                    if a >> n:
                        a ^= red
                return r

        else:

            def mul(a, b):
                return _undigits(_pmulmod(_digits(a, p, n), _digits(b, p, n), f, p), p)

        # enc-least primitive element of GF(q)^x drives the log tables
        if q == 2:
            gen = 1
        else:
            for gen in range(2, q):
                if order_mod_group(lambda e: self._slow_pow(mul, gen, e), 1, q - 1) == q - 1:
                    break
        exp = [1] * (2 * (q - 1))
        x = 1
        for i in range(q - 1):
            exp[i] = exp[i + q - 1] = x
            x = mul(x, gen)
        log = [0] * q
        for i in range(q - 1):
            log[exp[i]] = i
        self._exp, self._log = exp, log
        self._np_exp = np.array(exp + [0], dtype=np.int64)
        self._np_log = np.array(log, dtype=np.int64)

        if p == 2:
            self._addtab = None
            self._negtab = None
        elif n == 1:
            self._addtab = None
            self._negtab = None
        else:
            dig = np.array([_digits(a, p, n) for a in range(q)], dtype=np.int64)
            weights = p ** np.arange(n, dtype=np.int64)
            s = (dig[:, None, :] + dig[None, :, :]) % p
            self._addtab = (s @ weights).astype(np.int64)
            self._negtab = ((-dig) % p) @ weights
        if self._addtab is not None:
            self._addlist = self._addtab.tolist()
            self._neglist = self._negtab.tolist()

    @staticmethod
    def _slow_pow(mul, a, e):
        r = 1
        while e:
            if e & 1:
                r = mul(r, a)
            a = mul(a, a)
            e >>= 1
        return r

    def _build_extension(self) -> None:
        q = self.q
        if self.p == 2:
            # y^2 + y + t with Tr(t) = 1, so y^2 = y + t
            self.ext_t = next(t for t in range(q) if self.abs_trace_int(t) == 1)
            self.ext_modulus = (self.ext_t, 1, 1)
            self.epsilon = None
            self.m = None
        else:
            # y^2 - t with t the least nonsquare
            self.ext_t = next(t for t in range(1, q) if self._log[t] % 2 == 1)
            self.ext_modulus = (self.neg(self.ext_t), 0, 1)
            self.epsilon = 1 if (q - 1) // 2 % 2 == 0 else -1
            self.m = (q - self.epsilon) // 4
        for cand in range(q, q * q):
            if self._ext_order(cand) == self.order2:
                self.generator2 = cand
                break

    def _ext_order(self, a: int) -> int:
        return order_mod_group(lambda e: self.epow(a, e), 1, self.order2)

    # scalar base-field arithmetic on encodings -------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        return self._addlist[a][b]

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.n == 1:
            return -a % self.p
        return self._neglist[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        if a == 0:
            return 1 if k == 0 else 0
        return self._exp[self._log[a] * k % (self.q - 1)]

    def const(self, k: int) -> int:
        """The image of the integer k in the prime subfield."""
        return k % self.p

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("log of zero")
        return self._log[a]

    def legendre_int(self, a: int) -> int:
        if self.p == 2:
            raise FieldError("Legendre symbol needs odd q")
        if a == 0:
            return 0
        return 1 if self.pow(a, (self.q - 1) // 2) == 1 else -1

    def sqrt_int(self, a: int) -> int | None:
        """Tonelli-Shanks for odd q (canonical root: smaller encoding); a^(q/2) for even q."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        if self.legendre_int(a) != 1:
            return None
        q = self.q
        s, odd = 0, q - 1
        while odd % 2 == 0:
            odd //= 2
            s += 1
        z = self.ext_t  # least nonsquare
        c = self.pow(z, odd)
        x = self.pow(a, (odd + 1) // 2)
        t = self.pow(a, odd)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = self.mul(t2, t2)
                i += 1
            b = c
            for _ in range(s - i - 1):
                b = self.mul(b, b)
            x = self.mul(x, b)
            c = self.mul(b, b)
            t = self.mul(t, c)
            s = i
        other = self.neg(x)
        return min(x, other)

    def abs_trace_int(self, a: int) -> int:
        if self.p != 2:
            raise FieldError("absolute trace here is defined for p = 2")
        t, x = 0, a
        for _ in range(self.n):
            t ^= x
            x = self.mul(x, x)
        if t not in (0, 1):  # pragma: no cover - would mean broken tables
            raise AssertionError("trace left the prime field")
        return t

    # scalar extension arithmetic --------------------------------------------

    def split(self, a: int) -> tuple[int, int]:
        a1, a0 = divmod(a, self.q)
        return a0, a1

    def join(self, a0: int, a1: int) -> int:
        return a0 + self.q * a1

    def eadd(self, a: int, b: int) -> int:
        a0, a1 = self.split(a)
        b0, b1 = self.split(b)
        return self.join(self.add(a0, b0), self.add(a1, b1))

    def eneg(self, a: int) -> int:
        a0, a1 = self.split(a)
        return self.join(self.neg(a0), self.neg(a1))

    def esub(self, a: int, b: int) -> int:
        return self.eadd(a, self.eneg(b))

    def emul(self, a: int, b: int) -> int:
        q = self.q
        if a < q and b < q:
            return self.mul(a, b)
        a0, a1 = self.split(a)
        b0, b1 = self.split(b)
        mul, add = self.mul, self.add
        hi = mul(a1, b1)
        lo = add(mul(a0, b0), mul(hi, self.ext_t))
        mid = add(mul(a0, b1), mul(a1, b0))
        if self.p == 2:
            mid = add(mid, hi)
        return lo + q * mid

    def frob(self, a: int) -> int:
        """a -> a^q, the conjugation of the tower."""
        a0, a1 = self.split(a)
        if self.p == 2:
            return self.join(self.add(a0, a1), a1)
        return self.join(a0, self.neg(a1))

    def norm(self, a: int) -> int:
        n = self.emul(a, self.frob(a))
        if n >= self.q:  # pragma: no cover
            raise AssertionError("norm left the base field")
        return n

    def einv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if a < self.q:
            return self.inv(a)
        c = self.frob(a)
        ninv = self.inv(self.norm(a))
        c0, c1 = self.split(c)
        return self.join(self.mul(c0, ninv), self.mul(c1, ninv))

    def epow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.einv(a), -k
        if a < self.q:
            return self.pow(a, k)
        k %= self.order2
        r = 1
        while k:
            if k & 1:
                r = self.emul(r, a)
            a = self.emul(a, a)
            k >>= 1
        return r

    def esqrt(self, d: int) -> int:
        """A square root in GF(q^2) of a base-field element d (odd q)."""
        if self.p == 2:
            return self.pow(d, self.q // 2)
        r = self.sqrt_int(d)
        if r is not None:
            return r
        s = self.sqrt_int(self.div(d, self.ext_t))
        return self.join(0, s)

    def ext_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        if a < self.q:
            return order_mod_group(lambda e: self.pow(a, e), 1, self.q - 1)
        return self._ext_order(a)

    # vectorised base-field arithmetic ---------------------------------------

    def vadd(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.n == 1:
            return (np.asarray(a) + b) % self.p
        return self._addtab[a, b]

    def vneg(self, a):
        if self.p == 2:
            return np.asarray(a)
        if self.n == 1:
            return (-np.asarray(a)) % self.p
        return self._negtab[a]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        s = self._np_log[a] + self._np_log[b]
        out = self._np_exp[s]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._np_exp[(self.q - 1 - self._np_log[a]) % (self.q - 1)]

    def vpow(self, a, k: int):
        a = np.asarray(a)
        out = self._np_exp[(self._np_log[a] * (k % (self.q - 1))) % (self.q - 1)]
        if k == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def vprod(self, a, axis=-1):
        """Product along an axis; empty products are 1."""
        a = np.asarray(a)
        zero = np.any(a == 0, axis=axis)
        s = np.sum(self._np_log[a], axis=axis) % (self.q - 1)
        return np.where(zero, 0, self._np_exp[s])

    def vlegendre(self, a):
        a = np.asarray(a)
        chi = np.where(self._np_log[a] % 2 == 0, 1, -1)
        return np.where(a == 0, 0, chi)

    def vtrace(self, a):
        a = np.asarray(a)
        t = np.zeros_like(a)
        x = a
        for _ in range(self.n):
            t = np.bitwise_xor(t, x)
            x = self.vmul(x, x)
        return t

    # conveniences -------------------------------------------------------------

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def elem(self, enc: int, ext: bool = False) -> Fe:
        limit = self.q * self.q if ext else self.q
        if not 0 <= enc < limit:
            raise FieldError(f"encoding {enc} out of range for {self}")
        return Fe(self, enc, ext)

    def __call__(self, k: int) -> Fe:
        """The integer k as a field element (reduced into the prime subfield)."""
        return Fe(self, self.const(k))

    def coeffs(self, a: int, ext: bool = False) -> list[int]:
        return _digits(a, self.p, 2 * self.n if ext else self.n)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"


@lru_cache(maxsize=64)
def make_field(p: int, n: int = 1, size_bound: int = DEFAULT_SIZE_BOUND) -> FieldCtx:
    return FieldCtx(p, n, size_bound)


def field_of_order(q: int, size_bound: int = DEFAULT_SIZE_BOUND) -> FieldCtx:
    from .numtheory import prime_power

    pn = prime_power(q)
    if pn is None:
        raise FieldError(f"{q} is not a prime power")
    return make_field(pn[0], pn[1], size_bound)


# -- element wrapper -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Fe:
    field: FieldCtx
    value: int
    ext: bool = False

    def _other(self, other) -> tuple[int, bool]:
        if isinstance(other, Fe):
            if other.field is not self.field:
                raise FieldError("operands belong to different fields")
            return other.value, other.ext
        if isinstance(other, int):
            return self.field.const(other), False
        return NotImplemented  # type: ignore[return-value]

    def _wrap(self, v: int, ext: bool) -> Fe:
        return Fe(self.field, v, ext)

    def __add__(self, other):
        b, bext = self._other(other)
        F = self.field
        if self.ext or bext:
            return self._wrap(F.eadd(self.value, b), True)
        return self._wrap(F.add(self.value, b), False)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return self._wrap(F.eneg(self.value) if self.ext else F.neg(self.value), self.ext)

    def __sub__(self, other):
        b, bext = self._other(other)
        return self + (-self._wrap(b, bext))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b, bext = self._other(other)
        F = self.field
        if self.ext or bext:
            return self._wrap(F.emul(self.value, b), True)
        return self._wrap(F.mul(self.value, b), False)

    __rmul__ = __mul__

    def inverse(self) -> Fe:
        F = self.field
        return self._wrap(F.einv(self.value) if self.ext else F.inv(self.value), self.ext)

    def __truediv__(self, other):
        b, bext = self._other(other)
        return self * self._wrap(b, bext).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        F = self.field
        return self._wrap(F.epow(self.value, k) if self.ext else F.pow(self.value, k), self.ext)

    def __eq__(self, other) -> bool:
        if isinstance(other, Fe):
            return other.field is self.field and other.value == self.value
        if isinstance(other, int):
            return self.value == self.field.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Fe({self.value}{'*' if self.ext else ''} in {self.field})"

    def in_base(self) -> bool:
        return self.value < self.field.q

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.value, self.ext)


# -- module-level operations ---------------------------------------------------


def _base(a: Fe) -> int:
    if a.ext and not a.in_base():
        raise FieldError("element is not in the base field")
    return a.value


def legendre(a: Fe) -> int:
    return a.field.legendre_int(_base(a))


def sqrt(a: Fe) -> Fe | None:
    r = a.field.sqrt_int(_base(a))
    return None if r is None else Fe(a.field, r)


def abs_trace(a: Fe) -> int:
    return a.field.abs_trace_int(_base(a))


def element_order(a: Fe) -> int:
    return a.field.ext_order(a.value)


def mu_root(F: FieldCtx, d: int) -> Fe:
    """An element of exact order d in GF(q^2): generator2^((q^2-1)/d)."""
    if d < 1 or F.order2 % d:
        raise FieldError(f"{d} does not divide q^2 - 1 = {F.order2}")
    return Fe(F, F.epow(F.generator2, F.order2 // d), True)


def ang(u: Fe) -> Fe:
    """u + 1/u."""
    if u.value == 0:
        raise ZeroDivisionError("<0> is undefined")
    return u + u.inverse()


def generator2(F: FieldCtx) -> Fe:
    return Fe(F, F.generator2, True)

