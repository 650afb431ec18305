from __future__ import annotations

from itertools import combinations
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dickson.ffield import FieldError, field_of_order
from dickson.subsets import (
    N_ID,
    S_ID,
    Z_ID,
    Subset,
    SubsetId,
    card_formula,
    cycles_of,
    elem_sym,
    elem_syms,
    image_and_cycles,
    materialize,
    membership,
    set_product,
    shifted_products,
    vanishing_poly,
)

from .conftest import EVEN_Q, ODD_Q

F29_A2 = {
    (1, 1): (3, 7, 11, 18, 22, 26),
    (1, -1): (1, 6, 8, 9, 15, 24, 25),
    (-1, 1): (4, 5, 14, 20, 21, 23, 28),
    (-1, -1): (0, 10, 12, 13, 16, 17, 19),
}
F29_SQUARES = (1, 4, 5, 6, 7, 9, 13, 16, 20, 22, 23, 24, 25, 28)
SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def _chi(F, a: int) -> int:
    """Legendre symbol straight from the list of squares."""
    if a == 0:
        return 0
    return 1 if any(F.mul(b, b) == a for b in range(1, F.q)) else -1


@pytest.fixture(scope="module")
def f29():
    return field_of_order(29)


def test_f29_a_sets(f29):
    for (e1, e2), want in F29_A2.items():
        assert materialize(f29, SubsetId.A(2, e1, e2)).encs == want
    assert tuple(a for a in range(1, 29) if f29.legendre_int(a) == 1) == F29_SQUARES


def test_f29_b_sets(f29):
    assert materialize(f29, SubsetId.B(2, 1, 1)).encs == (3, 7, 11, 18, 22, 26)
    assert materialize(f29, SubsetId.B(2, -1, -1)).encs == (0, 10, 12, 13, 16, 17, 19)


def test_f29_symmetric_functions(f29):
    bpp = materialize(f29, SubsetId.B(2, 1, 1))
    bmm = materialize(f29, SubsetId.B(2, -1, -1))
    assert [elem_sym(bpp, 2).value, elem_sym(bpp, 4).value] == [24, 6]
    assert [elem_sym(bmm, 2).value, elem_sym(bmm, 4).value] == [22, 14]
    # closed under negation, so the odd ones vanish
    assert all(elem_sym(bmm, j).value == 0 for j in (1, 3, 5, 7))


def test_f29_cycles(f29):
    amm = materialize(f29, SubsetId.A(2, -1, -1))
    rep = image_and_cycles(f29, 5, amm)
    assert rep.is_permutation and rep.cycles == [(0,), (10, 17, 13, 19, 12, 16)]
    rep = image_and_cycles(f29, 7, amm)
    assert not rep.is_permutation and rep.image == [0] and rep.cycles == []


def test_gf7_b_minus_minus():
    F = field_of_order(7)
    assert materialize(F, SubsetId.B(2, -1, -1)).encs == (3, 4)


@given(st.sampled_from(ODD_Q), st.data())
def test_a_and_b_sets_match_definition(q, data):
    F = field_of_order(q)
    lam = data.draw(st.integers(1, q - 1))
    e1, e2 = data.draw(st.sampled_from(SIGNS))
    a_set = tuple(u for u in range(q) if _chi(F, F.sub(u, lam)) == e1 and _chi(F, F.add(u, lam)) == e2)
    b_set = tuple(u for u in range(q) if _chi(F, F.sub(lam, u)) == e1 and _chi(F, F.add(u, lam)) == e2)
    assert materialize(F, SubsetId.A(lam, e1, e2)).encs == a_set
    assert materialize(F, SubsetId.B(lam, e1, e2)).encs == b_set
    j, l = data.draw(st.integers(0, q - 1)), data.draw(st.integers(0, q - 1))  # noqa: E741
    t_set = tuple(
        u for u in range(1, q) if _chi(F, F.sub(j, u)) == e1 and _chi(F, F.add(l, u)) == e2
    )
    assert materialize(F, SubsetId.TJL(j, l, e1, e2)).encs == t_set


@pytest.mark.parametrize("q", ODD_Q)
def test_s_n_z_partition(q):
    F = field_of_order(q)
    four = F.const(4)
    S = materialize(F, S_ID).encs
    N = materialize(F, N_ID).encs
    Z = materialize(F, Z_ID).encs
    assert S == tuple(a for a in range(q) if _chi(F, F.sub(F.mul(a, a), four)) == 1)
    assert N == tuple(a for a in range(q) if _chi(F, F.sub(F.mul(a, a), four)) == -1)
    assert sorted(Z) == sorted({F.const(2), F.const(-2)})
    assert sorted(S + N + Z) == list(range(q))
    assert len(S) == card_formula(F, S_ID) == (q - 3) // 2
    assert len(N) == card_formula(F, N_ID) == (q - 1) // 2
    assert card_formula(F, Z_ID) == 2


@pytest.mark.parametrize("q", ODD_Q)
def test_a2_cardinalities(q):
    F = field_of_order(q)
    for e1, e2 in SIGNS:
        for tag in ("A", "B"):
            sid = SubsetId(tag, lam=F.const(2), e1=e1, e2=e2)
            assert len(materialize(F, sid)) == card_formula(F, sid)


@pytest.mark.parametrize("q", EVEN_Q)
def test_trace_sets(q):
    F = field_of_order(q)
    T0 = materialize(F, SubsetId.T01(0)).encs
    T1 = materialize(F, SubsetId.T01(1)).encs
    assert T0 == tuple(a for a in range(1, q) if F.abs_trace_int(F.inv(a)) == 0)
    assert sorted(T0 + T1 + (0,)) == list(range(q))
    assert len(T0) == card_formula(F, SubsetId.T01(0)) == q // 2 - 1
    assert len(T1) == card_formula(F, SubsetId.T01(1)) == q // 2
    assert materialize(F, Z_ID).encs == (0,)
    assert card_formula(F, Z_ID) == 1


def test_gf16_t1_has_eight_elements():
    assert len(materialize(field_of_order(16), SubsetId.T01(1))) == 8


@pytest.mark.parametrize("q", [5, 8, 9, 13, 16])
def test_mu_and_delta(q):
    F = field_of_order(q)
    for d in sorted({d for d in range(1, q + 2) if F.order2 % d == 0}):
        mu = materialize(F, SubsetId.mu(d))
        assert mu.ext and len(mu) == d
        assert all(F.epow(u, d) == 1 for u in mu)
        if (q - 1) % d and (q + 1) % d:
            with pytest.raises(FieldError):
                materialize(F, SubsetId.delta(d))
            continue
        delta = materialize(F, SubsetId.delta(d)).encs
        assert delta == tuple(sorted({F.eadd(u, F.einv(u)) for u in mu}))
        star = materialize(F, SubsetId.delta_star(d)).encs
        assert star == tuple(a for a in delta if a not in materialize(F, Z_ID).encs)
        if d % 2:
            assert len(star) == card_formula(F, SubsetId.delta_star(d)) == (d - 1) // 2


def test_errors():
    F7, F8 = field_of_order(7), field_of_order(8)
    with pytest.raises(FieldError):
        materialize(F8, S_ID)
    with pytest.raises(FieldError):
        materialize(F8, SubsetId.A(1, 1, 1))
    with pytest.raises(FieldError):
        materialize(F7, SubsetId.A(0, 1, 1))
    with pytest.raises(FieldError):
        materialize(F7, SubsetId.T01(0))
    with pytest.raises(FieldError):
        materialize(F7, SubsetId.mu(5))
    with pytest.raises(ValueError):
        SubsetId("X")
    with pytest.raises(ValueError):
        SubsetId.A(1, 0, 1)
    with pytest.raises(ValueError):
        card_formula(F7, SubsetId.A(1, 1, 1))
    with pytest.raises(ValueError):
        membership(F7, SubsetId.mu(2))
    with pytest.raises(ValueError):
        image_and_cycles(F7, 0, materialize(F7, S_ID))
    with pytest.raises(ValueError):
        elem_sym(materialize(F7, S_ID), 9)
    with pytest.raises(FieldError):
        vanishing_poly(materialize(F7, SubsetId.mu(8)))


@given(st.sampled_from(ODD_Q + EVEN_Q), st.data())
def test_products_and_symmetric_functions(q, data):
    F = field_of_order(q)
    encs = sorted(data.draw(st.sets(st.integers(0, q - 1), max_size=7)))
    S = Subset(SubsetId.delta(1), F, tuple(encs))  # the id is only a label here
    prod_direct = 1
    for a in encs:
        prod_direct = F.mul(prod_direct, a)
    assert set_product(S).value == prod_direct
    cs = list(range(q))
    want = []
    for c in cs:
        acc = 1
        for a in encs:
            acc = F.mul(acc, F.sub(c, a))
        want.append(acc)
    assert shifted_products(F, encs, cs).tolist() == want
    syms = elem_syms(S)
    for j in range(len(encs) + 1):
        direct = 0
        for combo in combinations(encs, j):
            term = 1
            for a in combo:
                term = F.mul(term, a)
            direct = F.add(direct, term)
        assert syms[j] == direct == elem_sym(S, j).value
    assert vanishing_poly(S)(cs).tolist() == want


def test_product_over_mu_is_sign():
    F = field_of_order(9)
    # product of all d-th roots of unity is (-1)^(d+1)
    for d in (2, 5, 8, 10):
        assert set_product(materialize(F, SubsetId.mu(d))).value == (1 if d % 2 else F.neg(1))


def test_cycles_of():
    assert cycles_of({1: 2, 2: 3, 3: 1, 4: 4}) == [(1, 2, 3), (4,)]
    assert cycles_of({}) == []
    assert prod(len(c) for c in cycles_of({5: 7, 7: 5})) == 2


def test_labels():
    assert SubsetId.A(2, 1, -1).label() == "A[2]+-"
    assert SubsetId.TJL(4, 0, -1, -1).label() == "T[4,0]--"
    assert SubsetId.delta_star(5).label() == "DELTA_STAR 5"
    assert S_ID.label() == "S"
