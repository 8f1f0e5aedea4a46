import random
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from supergrading.abelian import Bicharacter, FinAbGroup, FiniteSubgroup, GSharpElement, parse_group
from supergrading.classify import (
    MEven,
    MexEven,
    MexOdd,
    MOdd,
    MStar,
    Qgr,
    QexPlus,
    TypeIPair,
    act_T_Gsharp,
    canonicalize,
    enumerate_census,
    enumerate_raw,
    is_isomorphic,
    iso_Mex_even,
    iso_typeI,
)
from supergrading.division import DivisionError, EtaMap
from supergrading.forms import InertiaQuadruple
from supergrading.graded_matrix import KappaMap

from conftest import alternating_bicharacter

# Small cells: |G| <= 8 and associative dimension <= 16.
CELLS = [
    ("m-even", "Z2", 4, None),
    ("m-even", "Z2xZ2", 4, None),
    ("m-even", "Z4", 9, None),
    ("m-odd", "Z2xZ2", 4, None),
    ("q", "Z2", 2, None),
    ("q", "Z4", 8, None),
    ("m-star", "Z2", 9, None),
    ("m-star", "Z4", 16, None),
    ("mex-even", "Z4", 8, None),
    ("mex-odd", "Z2xZ4", 8, None),
    ("qex", "Z4", 4, None),
    ("type-i", "Z2", 8, None),
]

_RAW = {}


def raw(cell):
    if cell not in _RAW:
        fam, g, dim, shape = cell
        _RAW[cell] = enumerate_raw(fam, parse_group(g), dim, shape)
    return _RAW[cell]


# -- an orbit oracle written straight from the action, independent of transform() --


def _shift(k, g):
    return KappaMap(k.H, [(rep + g, m) for rep, m in k.items()])


def _star(k):
    return KappaMap(k.H, [(-rep, m) for rep, m in k.items()])


def _moves(p):
    """Images of p under every generator of the acting group."""
    G = p.group
    out = []
    for g in G.elements():
        if isinstance(p, MEven):
            out.append(replace(p, kappa0=_shift(p.kappa0, g), kappa1=_shift(p.kappa1, g)))
            out.append(replace(p, kappa0=_shift(p.kappa1, g), kappa1=_shift(p.kappa0, g)))
        elif isinstance(p, (MOdd, Qgr)):
            out.append(replace(p, kappa=_shift(p.kappa, g)))
        elif isinstance(p, MStar):
            out.append(replace(p, kappa0=_shift(p.kappa0, g), kappa1=_shift(p.kappa1, g),
                               g0=GSharpElement(p.g0.g - g - g, p.g0.parity)))
        elif isinstance(p, MexEven):
            out.append(replace(p, kappa0=_shift(p.kappa0, g), kappa1=_shift(p.kappa1, g),
                               g0=GSharpElement(p.g0.g - g - g, p.g0.parity)))
            out.append(replace(p, kappa0=_shift(p.kappa1, g), kappa1=_shift(p.kappa0, g),
                               g0=GSharpElement(p.f + p.g0.g - g - g, p.g0.parity)))
        elif isinstance(p, (MexOdd, QexPlus)):
            out.append(replace(p, kappa=_shift(p.kappa, g), g0=p.g0 - g - g))
    if isinstance(p, TypeIPair):
        inner = p.inner
        out.extend(TypeIPair(q) for q in _moves(inner))
        if isinstance(inner, MEven):
            inv = replace(inner, beta=inner.beta.inverse(), kappa0=_star(inner.kappa0), kappa1=_star(inner.kappa1))
        elif isinstance(inner, MOdd):
            inv = replace(inner, beta_tilde=inner.beta_tilde.inverse(), kappa=_star(inner.kappa))
        else:
            inv = replace(inner, beta_plus=inner.beta_plus.inverse(), kappa=_star(inner.kappa))
        out.append(TypeIPair(inv))
    return out


def orbit_keys(p):
    seen = {p.key()}
    frontier = [p]
    while frontier:
        nxt = []
        for x in frontier:
            for y in _moves(x):
                if y.key() not in seen:
                    seen.add(y.key())
                    nxt.append(y)
        frontier = nxt
    return seen


def _algebra(p):
    built = p.build()
    if isinstance(built, tuple):
        return built[0]
    return getattr(built, "algebra", built)


def _dims(A):
    return sorted(d for _, d in A.fingerprint())


# -- decisions --------------------------------------------------------------------


@pytest.mark.parametrize("cell", CELLS, ids=lambda c: f"{c[0]}-{c[1]}-{c[2]}")
def test_reflexive_with_identity_witness(cell):
    for p in raw(cell):
        res = is_isomorphic(p, p)
        assert res.isomorphic
        assert p.transform(res.witness, res.branch).key() == p.key()


@pytest.mark.parametrize("cell", CELLS, ids=lambda c: f"{c[0]}-{c[1]}-{c[2]}")
def test_transport_is_detected_and_witness_is_sound(cell):
    rng = random.Random(7)
    for p in raw(cell):
        G = p.group
        for _ in range(3):
            q = rng.choice(_moves(p))
            res = is_isomorphic(p, q)
            assert res.isomorphic, (p.key(), q.key())
            assert p.transform(res.witness, res.branch).key() == q.key()
            assert res.witness in G.elements()


@pytest.mark.parametrize("cell", CELLS, ids=lambda c: f"{c[0]}-{c[1]}-{c[2]}")
def test_agrees_with_orbit_oracle(cell):
    ps = raw(cell)
    orbits = [orbit_keys(p) for p in ps]
    for i, p in enumerate(ps):
        for j, q in enumerate(ps):
            assert bool(is_isomorphic(p, q)) == (q.key() in orbits[i])


@pytest.mark.parametrize("cell", CELLS, ids=lambda c: f"{c[0]}-{c[1]}-{c[2]}")
def test_isomorphic_tuples_have_equal_fingerprints(cell):
    ps = raw(cell)[:12]
    dims = [_dims(_algebra(p)) for p in ps]
    for i, p in enumerate(ps):
        for j, q in enumerate(ps):
            if is_isomorphic(p, q):
                assert dims[i] == dims[j]


@given(st.sampled_from(CELLS), st.randoms(use_true_random=False))
def test_equivalence_relation_on_random_triples(cell, rnd):
    ps = raw(cell)
    a, b, c = (rnd.choice(ps) for _ in range(3))
    assert is_isomorphic(a, a)
    assert bool(is_isomorphic(a, b)) == bool(is_isomorphic(b, a))
    if is_isomorphic(a, b) and is_isomorphic(b, c):
        assert is_isomorphic(a, c)


@given(st.sampled_from(CELLS), st.randoms(use_true_random=False))
def test_canonicalize_idempotent_and_orbit_invariant(cell, rnd):
    p = rnd.choice(raw(cell))
    c = canonicalize(p)
    assert canonicalize(c).key() == c.key()
    assert is_isomorphic(p, c)
    q = rnd.choice(_moves(p))
    assert canonicalize(q).key() == c.key()


def test_singleton_orbit_is_fixed():
    G = FinAbGroup(())
    T = FiniteSubgroup.trivial(G)
    p = MEven(T, Bicharacter.trivial(T), KappaMap(T, [(G.identity, 2)]), KappaMap(T, [(G.identity, 2)]))
    assert orbit_keys(p) == {p.key()}
    assert canonicalize(p).key() == p.key()


# -- hand-built examples ----------------------------------------------------------


def _z2_meven(m, n, shift=0):
    G = FinAbGroup((2,))
    T = FiniteSubgroup.trivial(G)
    k0 = KappaMap(T, [(G.element(shift), m)])
    k1 = KappaMap(T, [(G.element(shift), n)])
    return MEven(T, Bicharacter.trivial(T), k0, k1)


def test_meven_cardinality_obstruction():
    assert not is_isomorphic(_z2_meven(1, 2), _z2_meven(3, 1))
    res = is_isomorphic(_z2_meven(1, 2), _z2_meven(2, 1))
    assert res.isomorphic and res.branch == "swap"
    res = is_isomorphic(_z2_meven(1, 2), _z2_meven(1, 2, shift=1))
    assert res.isomorphic and res.witness == FinAbGroup((2,)).element(1)


def test_q_needs_equal_h():
    G = FinAbGroup((2,))
    T = FiniteSubgroup.trivial(G)
    k = KappaMap(T, [(G.identity, 1)])
    p = Qgr(T, Bicharacter.trivial(T), G.identity, k)
    q = Qgr(T, Bicharacter.trivial(T), G.element(1), k)
    assert is_isomorphic(p, p) and not is_isomorphic(p, q)


def test_q_h_must_square_to_identity():
    G = FinAbGroup((4,))
    T = FiniteSubgroup.trivial(G)
    p = Qgr(T, Bicharacter.trivial(T), G.element(1), KappaMap(T, [(G.identity, 1)]))
    with pytest.raises((ValueError, DivisionError)):
        p.validate()


def _pauli(orders=(2, 2)):
    G = FinAbGroup(orders)
    T = FiniteSubgroup(G, G.generators())
    return G, T, alternating_bicharacter(T, G.generators(), {(0, 1): 1})


def test_mstar_transport_and_beta_mismatch():
    G = FinAbGroup((4, 2))
    gens = G.generators()
    T = FiniteSubgroup(G, [2 * gens[0], gens[1]])
    beta = alternating_bicharacter(T, [2 * gens[0], gens[1]], {(0, 1): 1})
    p = MStar(T, beta, KappaMap(T, [(G.identity, 1)]), KappaMap(T), G.sharp.identity)
    p.validate()
    g = gens[0]
    q = MStar(T, beta, _shift(p.kappa0, g), _shift(p.kappa1, g), GSharpElement(-2 * g, 0))
    res = is_isomorphic(p, q)
    assert res.isomorphic and p.transform(res.witness).key() == q.key()
    other = MStar(T, Bicharacter.trivial(T), p.kappa0, p.kappa1, p.g0)
    assert not is_isomorphic(p, other)


def test_mex_even_second_branch():
    found = 0
    for p in raw(("mex-even", "Z4", 8, None)):
        if p.kappa0 == p.kappa1:
            continue
        G = p.group
        for g in G.elements():
            q = replace(p, kappa0=_shift(p.kappa1, g), kappa1=_shift(p.kappa0, g),
                        g0=GSharpElement(p.f + p.g0.g - 2 * g, p.g0.parity))
            res = iso_Mex_even(p, q)
            assert res.isomorphic
            if res.branch == "ii":
                found += 1
                assert p.transform(res.witness, "ii").key() == q.key()
    assert found


def test_mex_odd_distinct_tp_never_isomorphic():
    ps = raw(("mex-odd", "Z2xZ4", 8, None))
    tps = {p.t_p for p in ps}
    assert len(tps) >= 2
    for p in ps:
        for q in ps:
            if p.t_p != q.t_p:
                assert not is_isomorphic(p, q)


def test_type_i_inverse_star_transport():
    G = FinAbGroup((3, 3))
    gens = G.generators()
    T = FiniteSubgroup(G, gens)
    beta = alternating_bicharacter(T, gens, {(0, 1): 1})
    k0 = KappaMap(T, [(G.identity, 1)])
    k1 = KappaMap(T, [(G.identity, 2)])
    inner = MEven(T, beta, k0, k1)
    g = gens[0]
    moved = MEven(T, beta.inverse(), _shift(_star(k0), g), _shift(_star(k1), g))
    res = iso_typeI(TypeIPair(inner), TypeIPair(moved))
    assert res.isomorphic and res.branch.startswith("inv-")
    assert TypeIPair(inner).transform(res.witness, res.branch).key() == TypeIPair(moved).key()
    # Without the type I pairing, beta^{-1} is a different grading.
    assert not is_isomorphic(inner, moved)
    # Multiplicity mismatch and inner family mismatch.
    bigger = MEven(T, beta, k0, KappaMap(T, [(G.identity, 3)]))
    assert not iso_typeI(TypeIPair(inner), TypeIPair(bigger))
    q = Qgr(FiniteSubgroup.trivial(G), Bicharacter.trivial(FiniteSubgroup.trivial(G)), G.identity,
            KappaMap(FiniteSubgroup.trivial(G), [(G.identity, 1)]))
    assert not iso_typeI(TypeIPair(inner), TypeIPair(q))


def test_act_T_Gsharp_examples():
    G = FinAbGroup((2,))
    S = G.sharp
    T = FiniteSubgroup.trivial(S)
    H = FiniteSubgroup.trivial(G)
    eta = EtaMap(T, {T.identity: 1})
    beta = Bicharacter.trivial(T)
    q = InertiaQuadruple(eta, KappaMap(H, [(G.identity, 1)]), KappaMap(H, [(G.element(1), 2)]), S.identity, 1)
    same = act_T_Gsharp(T.identity, S.identity, q, beta)
    assert (same.kappa0, same.kappa1, same.g0, same.delta) == (q.kappa0, q.kappa1, q.g0, q.delta)
    flipped = act_T_Gsharp(T.identity, S.odd_unit, q, beta)
    assert flipped.delta == -1
    assert flipped.kappa0 == q.kappa1 and flipped.kappa1 == q.kappa0
    assert flipped.g0 == S.identity


def test_act_by_f_in_z4_exchange_case():
    # T = Z4 = <w> with w odd; f = w^2 spans the radical and eta(f) = -1.
    from supergrading.division import ExchangeDivisionSpec, build_exchange_division

    G = FinAbGroup((4,))
    S = G.sharp
    T = FiniteSubgroup(S, [S.element(1, 1)])
    bt = Bicharacter.from_function(T, lambda x, y: (x.g.coords[0] * y.g.coords[0]) % 2, 2)
    D = build_exchange_division(ExchangeDivisionSpec(T, bt, S.element(1, 1)))
    f = D.meta["f"]
    assert D.eta(f) == -1
    H = T.even_part().project_to_base()
    q = InertiaQuadruple(D.eta, KappaMap(H, [(G.identity, 1)]), None, S.identity, 1)
    out = act_T_Gsharp(f, S.identity, q, D.beta_tilde())
    assert all(out.eta(t) == D.eta(t) for t in T.elements)
    assert out.g0 == f + q.g0 and out.delta == -q.delta


# -- census ------------------------------------------------------------------------


def test_census_trivial_group_single_class():
    G = FinAbGroup(())
    for shape in [(1, 1), (2, 1), (3, 0)]:
        dim = (shape[0] + shape[1]) ** 2
        assert len(enumerate_census("m-even", G, dim, shape)) == 1


@pytest.mark.parametrize("cell", CELLS, ids=lambda c: f"{c[0]}-{c[1]}-{c[2]}")
def test_census_matches_orbit_count(cell):
    fam, g, dim, shape = cell
    ps = raw(cell)
    orbits = {frozenset(orbit_keys(p)) for p in ps}
    reps = enumerate_census(fam, parse_group(g), dim, shape)
    assert len(reps) == len(orbits)
    assert [r.key() for r in reps] == sorted(r.key() for r in reps)
    assert reps[0].key() == enumerate_census(fam, parse_group(g), dim, shape)[0].key()


def test_census_q_z2_classes_by_h():
    G = parse_group("Z2")
    reps = enumerate_census("q", G, 2)
    assert len(reps) == 2
    assert {r.h for r in reps} == {G.identity, G.element(1)}


def test_census_meven_z2_pauli_shape():
    reps = enumerate_census("m-even", parse_group("Z2"), 4, (1, 1))
    assert len(reps) == 2
