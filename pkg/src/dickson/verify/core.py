from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from ..ffield import FieldCtx
from ..numtheory import divisors
from ..polyfam import dickson_table
from ..subsets import SubsetId, Subset, materialize

EXHAUSTIVE_MAX_Q = 64
LAMBDA_EXHAUSTIVE_MAX_Q = 256
LAMBDA_SAMPLES = 32
E_RANGE = range(0, 5)


@dataclass(frozen=True)
class KRange:
    """Which exponents k a check quantifies over.

    ``exhaustive`` covers k = 1 .. q^2-1 (one full period).  ``sampled``
    takes every boundary residue plus ``sample_count`` seeded random k in
    [1, bound].  ``auto`` is exhaustive up to ``exhaustive_max_q``.
    ``bound = 0`` means q^2 - 1.
    """

    mode: str = "auto"
    bound: int = 0
    sample_count: int = 64
    seed: int = 0
    exhaustive_max_q: int = EXHAUSTIVE_MAX_Q

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "sampled", "auto"):
            raise ValueError(f"unknown k mode {self.mode!r}")
        if self.bound < 0 or self.sample_count < 0:
            raise ValueError("bound and sample_count must be >= 0")

    def resolved_mode(self, q: int) -> str:
        if self.mode == "auto":
            return "exhaustive" if q <= self.exhaustive_max_q else "sampled"
        return self.mode

    def upper(self, q: int) -> int:
        return self.bound if self.bound else q * q - 1

    def rng(self, q: int, salt: str = "") -> random.Random:
        return random.Random(f"{self.seed}:{q}:{salt}")

    def ks(self, q: int) -> np.ndarray:
        top = self.upper(q)
        if self.resolved_mode(q) == "exhaustive":
            return np.arange(1, q * q, dtype=np.int64)
        ks: set[int] = set(range(1, 33))
        for d in (q - 1, q + 1):
            ks.update(divisors(d))
            halves = [d, d // 2] if d % 2 == 0 else [d]
            for h in halves:
                ks.update(h + off for off in (-2, -1, 0, 1, 2))
                ks.update(j * h for j in range(1, 7))
        rng = self.rng(q, "k")
        ks.update(rng.randint(1, top) for _ in range(self.sample_count))
        return np.array(sorted(k for k in ks if k >= 1), dtype=np.int64)

    def lambdas(self, F: FieldCtx) -> list[int]:
        if F.q <= LAMBDA_EXHAUSTIVE_MAX_Q:
            return list(range(1, F.q))
        rng = self.rng(F.q, "lambda")
        picks = {F.const(2), 1}
        while len(picks) < LAMBDA_SAMPLES + 2:
            picks.add(rng.randrange(1, F.q))
        return sorted(picks)


class Ctx:
    """Per-field cache of element vectors, characters and subsets."""

    def __init__(self, F: FieldCtx):
        self.F = F
        self.q = F.q
        self.x = F.elements()
        self._sets: dict[SubsetId, Subset] = {}

    @cached_property
    def table(self):
        return dickson_table(self.F)

    @cached_property
    def chi(self) -> np.ndarray:
        return self.F.vlegendre(self.x)

    def c(self, k: int) -> int:
        return self.F.const(k)

    def set(self, sid: SubsetId) -> Subset:
        s = self._sets.get(sid)
        if s is None:
            s = self._sets[sid] = materialize(self.F, sid)
        return s

    def mask(self, encs) -> np.ndarray:
        m = np.zeros(self.q, dtype=bool)
        m[np.asarray(list(encs), dtype=np.int64)] = True
        return m

    def set_mask(self, sid: SubsetId) -> np.ndarray:
        return self.mask(self.set(sid).encs)

    def delta(self, d: int) -> Subset:
        return self.set(SubsetId.delta(d))

    def delta_star(self, d: int) -> Subset:
        return self.set(SubsetId.delta_star(d))

    def A(self, lam: int, e1: int, e2: int) -> Subset:
        return self.set(SubsetId.A(lam, e1, e2))

    def B(self, lam: int, e1: int, e2: int) -> Subset:
        return self.set(SubsetId.B(lam, e1, e2))

    @cached_property
    def two_char(self) -> int:
        """(2|q) for odd q."""
        return int(self.chi[self.c(2)])


def row_counts(values: np.ndarray, q: int) -> np.ndarray:
    """counts[i, y] = #{j : values[i, j] == y}."""
    K = values.shape[0]
    if values.size == 0:
        return np.zeros((K, q), dtype=np.int64)
    flat = values + (np.arange(K, dtype=np.int64) * q)[:, None]
    return np.bincount(flat.ravel(), minlength=K * q).reshape(K, q)


def rows_within(values: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Per row: every value lies in mask."""
    if values.shape[1] == 0:
        return np.ones(values.shape[0], dtype=bool)
    return mask[values].all(axis=1)


def rows_permute(values: np.ndarray, elems: np.ndarray, q: int) -> np.ndarray:
    """Per row: values (indexed like elems) is a permutation of elems."""
    if len(elems) == 0:
        return np.ones(values.shape[0], dtype=bool)
    mask = np.zeros(q, dtype=bool)
    mask[elems] = True
    inside = mask[values].all(axis=1)
    srt = np.sort(values, axis=1)
    distinct = np.all(srt[:, 1:] != srt[:, :-1], axis=1) if values.shape[1] > 1 else np.ones(values.shape[0], bool)
    return inside & distinct


def vsqrt(F: FieldCtx, a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(is_square_or_zero, one root) elementwise, odd q."""
    a = np.asarray(a, dtype=np.int64)
    lg = F._np_log[a]
    ok = (a == 0) | (lg % 2 == 0)
    root = np.where(a == 0, 0, F._np_exp[lg // 2])
    return ok, np.where(ok, root, -1)


def gcds(ks: np.ndarray, d: int) -> np.ndarray:
    return np.gcd(ks, d)


def first_bad(ok: np.ndarray) -> int | None:
    bad = np.nonzero(~np.asarray(ok))[0]
    return int(bad[0]) if len(bad) else None


def claim_rows(t, ok: np.ndarray, clause: str, ks: np.ndarray, **extra) -> None:
    """Record one claim per row of a k-indexed boolean vector."""
    i = first_bad(ok)
    rec = {"k": int(ks[i])} if i is not None else {}
    for key, val in extra.items():
        rec[key] = val(i) if callable(val) and i is not None else val
    t.claim(i is None, clause, count=int(len(ok)), **rec)


def iff_rows(t, lhs: np.ndarray, rhs: np.ndarray, clause: str, ks: np.ndarray) -> None:
    """Both directions of an iff over rows; counterexample names the failing side."""
    fwd = ~lhs | rhs
    back = ~rhs | lhs
    i = first_bad(fwd)
    t.claim(i is None, clause + " (=>)", count=int(len(lhs)), **({"k": int(ks[i])} if i is not None else {}))
    i = first_bad(back)
    t.claim(i is None, clause + " (<=)", count=int(len(lhs)), **({"k": int(ks[i])} if i is not None else {}))


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1


def cycle_profile(perm: np.ndarray) -> np.ndarray:
    """Per row, the sorted cycle length of every point of an index permutation.

    Two permutations have the same cycle type iff their profiles match.  Cycle
    labels (least index on the cycle) come from pointer doubling.
    """
    K, n = perm.shape
    if n == 0:
        return perm.copy()
    rows = np.arange(K)[:, None]
    label = np.broadcast_to(np.arange(n), (K, n)).copy()
    step = perm.copy()
    span = 1
    while span < n:
        label = np.minimum(label, label[rows, step])
        step = step[rows, step]
        span *= 2
    counts = row_counts(label, n)
    return np.sort(counts[rows, label], axis=1)
