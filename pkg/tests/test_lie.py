import random

import pytest

from supergrading.abelian import Bicharacter, FinAbGroup, FiniteSubgroup, parse_group
from supergrading.classify import MEven, MStar, Qgr, enumerate_raw, is_isomorphic
from supergrading.cyclo import ONE, ZERO
from supergrading.forms import SuperinvolutionRep, build_exchange_pair
from supergrading.graded_matrix import KappaMap, MatrixModel, trivial_division
from supergrading.lie import (
    LieError,
    bracket_profile,
    build_osp,
    build_P,
    center_lie,
    derived,
    is_graded_simple_lie,
    lie_from_params,
    minus_algebra,
    quotient_center,
    skew,
    supertrace,
    transfer_check,
    verify_lie_axioms,
)
from supergrading.superalgebra import GradedAlgebra


def trivial(G=None):
    G = G if G is not None else FinAbGroup(())
    T = FiniteSubgroup.trivial(G)
    return G, T, Bicharacter.trivial(T)


def kap(T, *pairs):
    return KappaMap(T, [(T.parent.element(g) if isinstance(g, int) else g, m) for g, m in pairs])


def gl_model(m, n, G=None):
    G = G if G is not None else FinAbGroup(())
    gamma = [G.sharp.element(G.identity, 0)] * m + [G.sharp.element(G.identity, 1)] * n
    return MatrixModel(trivial_division(G), gamma)


def meven(m, n):
    G, T, b = trivial()
    return MEven(T, b, kap(T, (G.identity, m)), kap(T, (G.identity, n)))


# -- minus algebra and skew ---------------------------------------------------------


def test_minus_algebra_examples():
    F = gl_model(1, 0).algebra
    assert not minus_algebra(F).struct
    M = gl_model(1, 1)
    L = minus_algebra(M.algebra)
    e = M.tels[0]
    e12, e21 = M.index(0, 1, e), M.index(1, 0, e)
    assert L.mul({e12: ONE}, {e21: ONE}) == {M.index(0, 0, e): ONE, M.index(1, 1, e): ONE}
    # even-even brackets are ordinary commutators
    M2 = gl_model(2, 0)
    L2 = minus_algebra(M2.algebra)
    a, b = M2.index(0, 1, e), M2.index(1, 0, e)
    assert L2.mul({a: ONE}, {b: ONE}) == {M2.index(0, 0, e): ONE, M2.index(1, 1, e): -ONE}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_transpose_gives_so_n(n):
    M = gl_model(n, 0)
    e = M.tels[0]
    images = [None] * M.algebra.dim
    for i in range(n):
        for j in range(n):
            images[M.index(i, j, e)] = {M.index(j, i, e): ONE}
    phi = SuperinvolutionRep(M.algebra, images, "transpose")
    assert all(c.ok for c in phi.checks())
    L = skew(M.algebra, phi)
    assert L.dim == n * (n - 1) // 2
    assert verify_lie_axioms(L).ok


def test_skew_rejects_non_involution():
    M = gl_model(2, 0)
    images = [{i: ONE + ONE} for i in range(M.algebra.dim)]
    with pytest.raises(LieError):
        skew(M.algebra, SuperinvolutionRep(M.algebra, images, "bad"))


@pytest.mark.parametrize("shape", [(1, 0), (1, 1), (2, 1)])
def test_exchange_pair_skew_has_dim_of_S(shape):
    S = gl_model(*shape).algebra
    R, phi = build_exchange_pair(S)
    L = skew(R, phi)
    assert L.dim == S.dim
    assert bracket_profile(L)[0] == bracket_profile(minus_algebra(S))[0]


# -- derived, center, supertrace --------------------------------------------------------


def test_derived_of_abelian_is_zero():
    L = minus_algebra(gl_model(1, 0).algebra)
    assert derived(L).dim == 0


def test_supertrace_examples():
    assert supertrace([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 1]) == 1
    assert supertrace([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 1, 1]) == -1
    assert supertrace([[0, 1], [1, 0]], [0, 1]) == 0
    assert supertrace([[1, 0], [0, 0]], [0, 1]) == 1
    with pytest.raises(ValueError):
        supertrace([[1, 2]], [0])


@pytest.mark.parametrize("shape", [(1, 1), (2, 1), (2, 2)])
def test_supertrace_vanishes_on_brackets(shape):
    M = gl_model(*shape)
    L = minus_algebra(M.algebra)
    par = [M.row_parity(i) for i in range(M.k)]
    for a in range(L.dim):
        for b in range(L.dim):
            X = M.from_vector(L.basis_product(a, b))
            mat = [[X.get((i, j), {}).get(M.tels[0], ZERO) for j in range(M.k)] for i in range(M.k)]
            assert supertrace(mat, par) == 0


def test_center_of_sl22_is_identity():
    M = gl_model(2, 2)
    sl = derived(minus_algebra(M.algebra))
    Z = center_lie(sl)
    assert len(Z) == 1
    assert is_graded_simple_lie(sl) == "false"
    assert quotient_center(sl).dim == 14


# -- families ----------------------------------------------------------------------


def test_osp12_over_Z():
    G = FinAbGroup((0,))
    _, T, b = trivial(G)
    L = build_osp(T, b, kap(T, (0, 1)), kap(T, (1, 1), (-1, 1)), G.sharp.identity)
    assert L.dim == 5
    degs = sorted(d.g.coords[0] for d in L.degrees)
    assert degs == [-2, -1, 0, 1, 2]
    assert all(dim == 1 for _, dim in L.fingerprint())
    assert L.even_odd_dims() == (3, 2)
    assert verify_lie_axioms(L).ok
    assert is_graded_simple_lie(L) == "true"


def test_osp22_dimension():
    G, T, b = trivial()
    L = build_osp(T, b, kap(T, (G.identity, 2)), kap(T, (G.identity, 2)), G.sharp.identity)
    assert L.dim == 8 and L.even_odd_dims() == (4, 4)
    assert verify_lie_axioms(L).ok


def test_osp_rejects_odd_g0():
    G, T, b = trivial()
    with pytest.raises(LieError):
        build_osp(T, b, kap(T, (G.identity, 1)), kap(T, (G.identity, 1)), G.sharp.odd_unit)


@pytest.mark.parametrize("n1", [2, 3, 4])
def test_periplectic_dimensions(n1):
    G, T, b = trivial()
    L = build_P(T, b, kap(T, (G.identity, n1)), G.identity)
    assert L.dim == 2 * n1 * n1 - 1
    assert verify_lie_axioms(L).ok


def test_p3_and_its_derived_algebra():
    G, T, b = trivial()
    p = MStar(T, b, kap(T, (G.identity, 3)), kap(T, (G.identity, 3)), G.sharp.odd_unit)
    M = p.build()
    full = skew(M.algebra, M.phi)
    assert full.dim == 18
    assert derived(full).dim == full.dim - 1
    assert is_graded_simple_lie(full) == "false"
    P2 = lie_from_params(p)
    assert P2.dim == 17 and P2.meta["family"] == "p"
    assert is_graded_simple_lie(P2) in ("true", "probably_true")


def test_series_Q_dimensions():
    G, T, b = trivial()
    p = Qgr(T, b, G.identity, kap(T, (G.identity, 3)))
    L = lie_from_params(p)
    assert L.dim == 16 and L.even_odd_dims() == (8, 8)
    assert L.meta["family"] == "q-lie-1"
    assert verify_lie_axioms(L).ok
    with pytest.raises(LieError):
        lie_from_params(Qgr(T, b, G.identity, kap(T, (G.identity, 2))))


def test_series_Q_types_are_disjoint():
    G = parse_group("Z4")
    one = {lie_from_params(p).fingerprint() for p in enumerate_raw("q", G, 18)}
    two = {lie_from_params(p).fingerprint() for p in enumerate_raw("qex", G, 36)}
    assert one and two and not one & two


def test_series_A_dimensions_and_tags():
    L = lie_from_params(meven(2, 1))
    assert L.dim == 8 and L.meta["subtype"] == "I_M"
    L = lie_from_params(meven(3, 3))
    assert L.dim == 34 and L.meta["shape"] == [3, 3]
    assert verify_lie_axioms(L).ok
    for p in enumerate_raw("mex-even", parse_group("Z2"), 72, (3, 3)):
        L = lie_from_params(p)
        assert L.dim == 34
        assert L.meta["subtype"] == ("II_P" if p.g0.parity else "II_osp")


@pytest.mark.parametrize("shape", [(1, 1), (2, 2), (1, 0)])
def test_series_A_rejects_small_cases(shape):
    with pytest.raises(LieError):
        lie_from_params(meven(*shape))


# -- verification ------------------------------------------------------------------


def test_corrupted_table_fails_and_zero_algebra_passes():
    L = lie_from_params(meven(2, 1))
    struct = dict(L.struct)
    key = sorted(struct)[0]
    k, c = next(iter(struct[key].items()))
    struct[key] = dict(struct[key])
    struct[key][k] = c + ONE
    bad = GradedAlgebra(L.group, L.labels, L.degrees, struct, None, "lie", {})
    rep = verify_lie_axioms(bad)
    assert not rep.ok and rep.failures()
    zero = GradedAlgebra(FinAbGroup(()), [], [], {}, None, "lie", {})
    assert verify_lie_axioms(zero).ok


def test_python_and_compiled_jacobi_agree():
    L = lie_from_params(meven(2, 1))
    assert verify_lie_axioms(L).ok == verify_lie_axioms(L, force_python=True).ok


# -- transfer --------------------------------------------------------------------------


TRANSFER_CELLS = [
    ("m-star", "Z2", 9, None),
    ("m-star", "Z2", 16, None),
    ("q", "Z4", 18, None),
    ("m-even", "Z2", 9, (2, 1)),
    ("qex", "Z4", 36, None),
]


@pytest.mark.parametrize("cell", TRANSFER_CELLS, ids=lambda c: f"{c[0]}-{c[1]}-{c[2]}")
def test_transfer_agrees_with_associative_decision(cell):
    fam, g, dim, shape = cell
    ps = enumerate_raw(fam, parse_group(g), dim, shape)
    rng = random.Random(3)
    pairs = [(rng.choice(ps), rng.choice(ps)) for _ in range(6)]
    for p in ps[:4]:
        G = p.group
        h = rng.choice(G.elements())
        pairs.append((p, p.transform(h, rng.choice(p.branches()))))
    for p, q in pairs:
        rep = transfer_check(p, q)
        assert rep.agree, (p.key(), q.key(), rep.detail)


@pytest.mark.parametrize("cell", TRANSFER_CELLS[:3], ids=lambda c: f"{c[0]}-{c[1]}-{c[2]}")
def test_isomorphic_params_give_equal_lie_fingerprints(cell):
    fam, g, dim, shape = cell
    ps = enumerate_raw(fam, parse_group(g), dim, shape)[:8]
    Ls = [lie_from_params(p) for p in ps]
    for i, p in enumerate(ps):
        for j, q in enumerate(ps):
            if is_isomorphic(p, q):
                assert sorted(d for _, d in Ls[i].fingerprint()) == sorted(d for _, d in Ls[j].fingerprint())
