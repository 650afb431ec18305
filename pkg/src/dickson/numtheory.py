"""Small integer helpers: primality, factoring, prime powers, divisors."""

from __future__ import annotations

import math
from functools import lru_cache

_TRIAL_LIMIT = 1 << 13


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i, f in enumerate(flags) if f]


SMALL_PRIMES = _sieve(_TRIAL_LIMIT)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, trial division below that."""
    if n < 2:
        return False
    for p in SMALL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, r, g, m = 2, 1, 1, 128
        ys = x = y
        qprod = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    qprod = qprod * abs(x - y) % n
                g = math.gcd(qprod, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1


@lru_cache(maxsize=4096)
def factorint(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` as sorted ``((prime, exponent), ...)``.

    Trial division by the primes below 2**13 handles everything up to 2**26
    completely; larger cofactors go to Pollard-Brent.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack.extend((d, m // d))
    return tuple(sorted(out.items()))


def prime_factors(n: int) -> list[int]:
    return [p for p, _ in factorint(n)]


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorint(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, n)`` with ``q == p**n``, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorint(q)
    if len(f) != 1:
        return None
    return f[0]


def prime_powers_between(lo: int, hi: int) -> list[int]:
    return [q for q in range(max(lo, 2), hi + 1) if prime_power(q) is not None]


def order_mod_group(pow_fn, one, group_order: int) -> int:
    """Order of an element in a cyclic group, given ``pow_fn(e)`` for its powers."""
    d = group_order
    for p, e in factorint(group_order):
        for _ in range(e):
            if pow_fn(d // p) == one:
                d //= p
            else:
                break
    return d
