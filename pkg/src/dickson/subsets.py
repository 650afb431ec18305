"""Canonical subsets of F_q: roots of unity, their <.> images, character sets.

Every subset is sorted by encoding.  Tags:

* ``MU d``          roots of unity of order dividing d (inside GF(q^2))
* ``DELTA d``       {<u> : u in MU d}, for d dividing q-1 or q+1
* ``DELTA_STAR d``  DELTA d minus {2, -2} (minus {0} in characteristic 2)
* ``A lam e1 e2``   {u : chi(u-lam) = e1, chi(u+lam) = e2}
* ``B lam e1 e2``   {u : chi(lam-u) = e1, chi(u+lam) = e2}
* ``S``, ``N``      u with u^2-4 a nonzero square / a nonsquare
* ``Z``             {2, -2}, or {0} in characteristic 2
* ``T01 j``         nonzero a with Tr(1/a) = j (even q)
* ``TJL j l e1 e2`` nonzero a with chi(j-a) = e1, chi(l+a) = e2

Parameters lam, j, l are field encodings; use ``F.const`` for integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .ffield import Fe, FieldCtx, FieldError, mu_root
from .polyfam import FqPoly, dickson_table

TAGS = ("MU", "DELTA", "DELTA_STAR", "A", "B", "S", "N", "Z", "T01", "TJL")


@dataclass(frozen=True)
class SubsetId:
    tag: str
    d: int = 0
    lam: int = 0
    e1: int = 1
    e2: int = 1
    j: int = 0
    l: int = 0  # noqa: E741

    def __post_init__(self) -> None:
        if self.tag not in TAGS:
            raise ValueError(f"unknown subset tag {self.tag!r}")
        if self.e1 not in (1, -1) or self.e2 not in (1, -1):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def mu(cls, d: int) -> SubsetId:
        return cls("MU", d=d)

    @classmethod
    def delta(cls, d: int) -> SubsetId:
        return cls("DELTA", d=d)

    @classmethod
    def delta_star(cls, d: int) -> SubsetId:
        return cls("DELTA_STAR", d=d)

    @classmethod
    def A(cls, lam: int, e1: int, e2: int) -> SubsetId:
        return cls("A", lam=lam, e1=e1, e2=e2)

    @classmethod
    def B(cls, lam: int, e1: int, e2: int) -> SubsetId:
        return cls("B", lam=lam, e1=e1, e2=e2)

    @classmethod
    def T01(cls, j: int) -> SubsetId:
        return cls("T01", j=j)

    @classmethod
    def TJL(cls, j: int, l: int, e1: int, e2: int) -> SubsetId:  # noqa: E741
        return cls("TJL", j=j, l=l, e1=e1, e2=e2)

    def label(self) -> str:
        s = lambda e: "+" if e > 0 else "-"  # noqa: E731
        if self.tag in ("MU", "DELTA", "DELTA_STAR"):
            return f"{self.tag} {self.d}"
        if self.tag in ("A", "B"):
            return f"{self.tag}[{self.lam}]{s(self.e1)}{s(self.e2)}"
        if self.tag == "T01":
            return f"T{self.j}"
        if self.tag == "TJL":
            return f"T[{self.j},{self.l}]{s(self.e1)}{s(self.e2)}"
        return self.tag


S_ID = SubsetId("S")
N_ID = SubsetId("N")
Z_ID = SubsetId("Z")


@dataclass(frozen=True)
class Subset:
    id: SubsetId
    field: FieldCtx
    encs: tuple[int, ...]
    ext: bool = False

    @property
    def elems(self) -> list[Fe]:
        return [Fe(self.field, a, self.ext) for a in self.encs]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.encs, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.encs)

    def __iter__(self):
        return iter(self.encs)

    def __contains__(self, a) -> bool:
        return int(a) in set(self.encs)


def _need_odd(F: FieldCtx, tag: str) -> None:
    if F.p == 2:
        raise FieldError(f"{tag} sets need odd q")


def _check_base(F: FieldCtx, *encs: int) -> None:
    for a in encs:
        if not 0 <= a < F.q:
            raise FieldError(f"parameter {a} is not an element of {F}")


def _mu_encs(F: FieldCtx, d: int) -> list[int]:
    r = mu_root(F, d).value
    out, x = [], 1
    for _ in range(d):
        out.append(x)
        x = F.emul(x, r)
    return out


def _z_encs(F: FieldCtx) -> list[int]:
    return [0] if F.p == 2 else sorted({F.const(2), F.const(-2)})


def _delta_encs(F: FieldCtx, d: int) -> list[int]:
    if d < 1 or ((F.q - 1) % d and (F.q + 1) % d):
        raise FieldError(f"DELTA {d} needs d to divide q-1 or q+1 (q={F.q})")
    vals = {F.eadd(u, F.einv(u)) for u in _mu_encs(F, d)}
    if max(vals) >= F.q:  # pragma: no cover
        raise AssertionError("<u> left the base field")
    return sorted(vals)


def membership(F: FieldCtx, sid: SubsetId) -> np.ndarray:
    """Boolean mask over F_q for the character- and trace-defined tags."""
    x = F.elements()
    tag = sid.tag
    if tag in ("A", "B", "S", "N", "TJL"):
        _need_odd(F, tag)
        chi = F.vlegendre
    if tag in ("A", "B"):
        _check_base(F, sid.lam)
        if sid.lam == 0:
            raise FieldError("lambda must be nonzero")
        lam = np.int64(sid.lam)
        first = F.vsub(x, lam) if tag == "A" else F.vsub(lam, x)
        return (chi(first) == sid.e1) & (chi(F.vadd(x, lam)) == sid.e2)
    if tag in ("S", "N"):
        disc = chi(F.vsub(F.vmul(x, x), np.int64(F.const(4))))
        return disc == (1 if tag == "S" else -1)
    if tag == "T01":
        if F.p != 2:
            raise FieldError("T0/T1 need even q")
        if sid.j not in (0, 1):
            raise FieldError("T01 index must be 0 or 1")
        mask = np.zeros(F.q, dtype=bool)
        nz = x[1:]
        mask[1:] = F.vtrace(F.vinv(nz)) == sid.j
        return mask
    if tag == "TJL":
        _check_base(F, sid.j, sid.l)
        j, l = np.int64(sid.j), np.int64(sid.l)  # noqa: E741
        return (x != 0) & (chi(F.vsub(j, x)) == sid.e1) & (chi(F.vadd(l, x)) == sid.e2)
    raise ValueError(f"{tag} is not a membership-defined tag")


def materialize(F: FieldCtx, sid: SubsetId) -> Subset:
    tag = sid.tag
    if tag == "MU":
        if sid.d < 1 or F.order2 % sid.d:
            raise FieldError(f"MU {sid.d} needs d to divide q^2-1 = {F.order2}")
        return Subset(sid, F, tuple(sorted(_mu_encs(F, sid.d))), ext=True)
    if tag == "DELTA":
        return Subset(sid, F, tuple(_delta_encs(F, sid.d)))
    if tag == "DELTA_STAR":
        z = set(_z_encs(F))
        return Subset(sid, F, tuple(a for a in _delta_encs(F, sid.d) if a not in z))
    if tag == "Z":
        return Subset(sid, F, tuple(_z_encs(F)))
    mask = membership(F, sid)
    return Subset(sid, F, tuple(np.nonzero(mask)[0].tolist()))


def card_formula(F: FieldCtx, sid: SubsetId) -> int:
    q, tag = F.q, sid.tag
    if tag == "DELTA_STAR":
        _delta_encs(F, sid.d)  # validates d
        return (sid.d - 1) // 2
    if tag == "Z":
        return 1 if F.p == 2 else 2
    if tag in ("S", "N"):
        _need_odd(F, tag)
        return (q - 3) // 2 if tag == "S" else (q - 1) // 2
    if tag == "T01":
        if F.p != 2:
            raise FieldError("T0/T1 need even q")
        return q // 2 - 1 if sid.j == 0 else q // 2
    if tag in ("A", "B") and sid.lam == F.const(2):
        _need_odd(F, tag)
        e1 = sid.e1 if tag == "A" else F.epsilon * sid.e1
        return {
            (1, 1): (q - 3) // 4,
            (1, -1): (q + 1) // 4,
            (-1, 1): (q - 1) // 4,
            (-1, -1): (q - 1) // 4,
        }[(e1, sid.e2)]
    raise ValueError(f"no closed cardinality formula for {sid.label()}")


def set_product(S: Subset) -> Fe:
    F = S.field
    if S.ext:
        acc = 1
        for a in S.encs:
            acc = F.emul(acc, a)
        return Fe(F, acc, True)
    return Fe(F, int(F.vprod(S.array)))


def shifted_products(F: FieldCtx, elems, cs) -> np.ndarray:
    """prod_{a in elems} (c - a) for every c in cs."""
    elems = np.asarray(elems, dtype=np.int64)
    cs = np.asarray(cs, dtype=np.int64)
    if len(elems) == 0:
        return np.ones(len(cs), dtype=np.int64)
    out = np.empty(len(cs), dtype=np.int64)
    step = max(1, (1 << 20) // len(elems))
    for i in range(0, len(cs), step):
        block = cs[i : i + step]
        out[i : i + step] = F.vprod(F.vsub(block[:, None], elems[None, :]), axis=1)
    return out


def vanishing_poly(S: Subset) -> FqPoly:
    if S.ext:
        raise FieldError("vanishing polynomials are built over the base field")
    return FqPoly.vanishing(S.field, S.encs)


def elem_syms(S: Subset) -> list[int]:
    """[sigma_0, ..., sigma_n] as encodings, from one expansion of prod (x - a)."""
    F, n = S.field, len(S)
    c = vanishing_poly(S).coeffs.tolist()
    return [c[n - j] if j % 2 == 0 else F.neg(c[n - j]) for j in range(n + 1)]


def elem_sym(S: Subset, j: int) -> Fe:
    n = len(S)
    if not 0 <= j <= n:
        raise ValueError(f"sigma_{j} undefined for a set of size {n}")
    F = S.field
    c = int(vanishing_poly(S).coeffs[n - j])
    return Fe(F, c if j % 2 == 0 else F.neg(c))


class CycleReport(NamedTuple):
    image: list[int]
    is_permutation: bool
    cycles: list[tuple[int, ...]]


def cycles_of(mapping: dict[int, int]) -> list[tuple[int, ...]]:
    """Cycles of a permutation, each led by its least element, sorted by leader."""
    seen: set[int] = set()
    out = []
    for start in sorted(mapping):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = mapping[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = mapping[x]
        out.append(tuple(cyc))
    return out


def image_and_cycles(F: FieldCtx, k: int, S: Subset) -> CycleReport:
    if k < 1:
        raise ValueError("k must be >= 1")
    if S.ext:
        raise FieldError("cycle reports are over base-field subsets")
    vals = dickson_table(F).row(k, S.array).tolist() if len(S) else []
    image = sorted(set(vals))
    if image != list(S.encs):
        return CycleReport(image, False, [])
    return CycleReport(image, True, cycles_of(dict(zip(S.encs, vals))))
