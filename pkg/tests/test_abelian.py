import itertools

import pytest
from hypothesis import given, strategies as st

from supergrading.abelian import (
    Bicharacter,
    FinAbGroup,
    FiniteSubgroup,
    GroupError,
    ParityMap,
    duality_decomposition,
    parse_group,
    parity_elements,
    radical,
    solve_double,
)
from supergrading.cyclo import root_of_unity

from conftest import alternating_bicharacter

small_groups = st.lists(st.sampled_from([1, 2, 3, 4, 6]), min_size=1, max_size=3).map(tuple)


def test_compose_examples():
    Z4, Z, V = FinAbGroup((4,)), FinAbGroup((0,)), FinAbGroup((2, 2))
    assert Z4.element(3) + Z4.element(2) == Z4.element(1)
    assert (Z.element(5) + Z.element(-5)).is_identity
    assert V.element(1, 1) + V.element(1, 0) == V.element(0, 1)
    with pytest.raises(GroupError):
        Z4.element(1) + Z.element(1)


def test_solve_double_examples():
    Z4, Z, Z2 = FinAbGroup((4,)), FinAbGroup((0,)), FinAbGroup((2,))
    assert solve_double(Z4, Z4.element(2)) == {Z4.element(1), Z4.element(3)}
    assert solve_double(Z, Z.element(3)) == set()
    assert solve_double(Z, Z.element(-6)) == {Z.element(-3)}
    assert solve_double(Z2, Z2.identity) == {Z2.element(0), Z2.element(1)}


@given(small_groups, st.data())
def test_solve_double_matches_scan(orders, data):
    G = FinAbGroup(orders)
    m = data.draw(st.sampled_from(G.elements()))
    assert solve_double(G, m) == {g for g in G.elements() if g + g == m}


@pytest.mark.parametrize("text,orders", [
    ("Z2 x Z4", (2, 4)), ("Z2xZ4", (2, 4)), ("Z", (0,)), ("1", ()), ("Z_3 x Z", (3, 0)),
])
def test_parse_group(text, orders):
    G = parse_group(text)
    assert G.cyclic_orders == orders
    assert parse_group(str(G)) == G


@pytest.mark.parametrize("bad", ["Z0", "Q2", "Z2 x", "x"])
def test_parse_group_rejects(bad):
    with pytest.raises(GroupError):
        parse_group(bad)


def test_radical_examples():
    V = FinAbGroup((2, 2))
    T = FiniteSubgroup(V, V.generators())
    pauli = Bicharacter.from_generator_values(T, V.generators(), [[1, -1], [-1, 1]])
    assert radical(pauli).order == 1
    assert radical(Bicharacter.trivial(T)) == T
    Z4 = FinAbGroup((4,))
    T4 = FiniteSubgroup(Z4, [Z4.element(1)])
    bt = Bicharacter.from_function(T4, lambda a, b: (a.coords[0] * b.coords[0]) % 2, 2)
    assert set(radical(bt)) == {Z4.element(0), Z4.element(2)}


def test_parity_elements_examples():
    S = FinAbGroup((4,)).sharp
    T = FiniteSubgroup(S, [S.element(1, 1)])
    bt = Bicharacter.from_function(T, lambda a, b: (a.g.coords[0] * b.g.coords[0]) % 2, 2)
    assert parity_elements(T, bt, ParityMap(T)) == {S.element(1, 1), S.element(3, 1)}

    V = FinAbGroup((2, 2))
    TV = FiniteSubgroup(V, V.generators())
    p = ParityMap(TV, {t: t.coords[1] for t in TV})
    bt2 = Bicharacter.from_function(
        TV, lambda x, y: (x.coords[0] * y.coords[1] + x.coords[1] * y.coords[0] + x.coords[1] * y.coords[1]) % 2, 2)
    assert parity_elements(TV, bt2, p) == {V.element(1, 0)}
    T1 = FiniteSubgroup.trivial(V)
    assert parity_elements(T1, Bicharacter.trivial(T1), ParityMap(T1)) == {V.identity}


@given(small_groups, st.data())
def test_bicharacter_laws_and_radical(orders, data):
    G = FinAbGroup(orders)
    gens = G.generators()
    T = FiniteSubgroup(G, gens)
    pairs = [(i, j) for i in range(len(gens)) for j in range(i + 1, len(gens))]
    exps = {ij: data.draw(st.integers(0, 11)) for ij in pairs}
    b = alternating_bicharacter(T, gens, exps)
    els = list(T)
    for t, s, u in itertools.product(els[:6], els[:6], els[:6]):
        assert b(t + s, u) == b(t, u) * b(s, u)
    assert b.is_alternating() and b.is_skew_symmetric()
    rad = radical(b)
    assert rad.is_subgroup_of(T)
    assert set(rad) == {t for t in els if all(b(t, s) == 1 for s in els)}
    assert b.is_nondegenerate() == (rad.order == 1)


@given(st.data())
def test_parity_elements_form_a_radical_coset(data):
    orders = data.draw(st.sampled_from([(2, 2), (4,), (2, 4), (2, 2, 2)]))
    G = FinAbGroup(orders)
    S = G.sharp
    gens = [S.element(g, data.draw(st.integers(0, 1))) for g in G.generators()]
    T = FiniteSubgroup(S, gens)
    pairs = [(i, j) for i in range(len(gens)) for j in range(i + 1, len(gens))]
    b = alternating_bicharacter(T, gens, {ij: data.draw(st.integers(0, 3)) for ij in pairs})
    p = ParityMap(T)
    tps = parity_elements(T, b, p)
    brute = {tp for tp in T if all(b(tp, t) == (-1) ** p(t) for t in T)}
    assert tps == brute
    if tps:
        rad = set(radical(b))
        t0 = min(tps)
        assert tps == {t0 + r for r in rad}


@pytest.mark.parametrize("orders,n", [((2, 2), 2), ((3, 3), 3), ((2, 2, 2, 2), 2), ((4, 4), 4)])
def test_duality_decomposition(orders, n):
    G = FinAbGroup(orders)
    gens = G.generators()
    T = FiniteSubgroup(G, gens)
    exps = {(2 * i, 2 * i + 1): 1 for i in range(len(gens) // 2)}
    beta = alternating_bicharacter(T, gens, exps)
    A, B, ag, bg = duality_decomposition(T, beta)
    assert A.order * B.order == T.order and A.order == B.order
    assert all(beta(a, c) == 1 for a in A for c in A)
    assert all(beta(a, c) == 1 for a in B for c in B)
    # a -> beta(a, .) is injective on A, so A is dual to B
    chars = {tuple(beta(a, c) for c in B) for a in A}
    assert len(chars) == A.order
    if orders == (3, 3):
        assert beta(ag[0], bg[0]) == root_of_unity(3, 1)


def test_duality_decomposition_rejects_degenerate():
    G = FinAbGroup((2, 2))
    T = FiniteSubgroup(G, G.generators())
    with pytest.raises(GroupError):
        duality_decomposition(T, Bicharacter.trivial(T))
