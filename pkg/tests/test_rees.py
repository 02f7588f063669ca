import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_mul
from rees_ed import library as L
from rees_ed.errors import CapExceeded, DimensionMismatch, NotASubsemigroup, NotClosed, NotInGamma, NotNormalized
from rees_ed.groups import is_group_ed
from rees_ed.rees import (
    RElement,
    SandwichMatrix,
    decide_ed,
    decide_ed_rel,
    gamma,
    gamma_embed,
    gamma_project,
    normalize_matrix,
    rees_new,
    rees_structure_of,
    singular_witness,
    subsemigroup_closure,
)

E = RElement


def test_construction():
    Z2 = L.cyclic(2)
    S = rees_new(Z2, [[0, 0], [0, 1]])
    assert S.normalized and S.order == 8
    with pytest.raises(NotNormalized) as exc:
        rees_new(Z2, [[1, 0], [0, 1]])
    assert exc.value.witness == (1, 1)
    loose = rees_new(Z2, [[1, 0], [0, 1]], strict=False)
    assert not loose.normalized
    with pytest.raises(DimensionMismatch):
        rees_new(Z2, [[0, 0], [0]])
    with pytest.raises(CapExceeded):
        rees_new(L.a5(), [[0] * 10] * 10)


def test_a5_1x1_is_a5():
    S = L.rees_a5_1x1()
    G = S.group
    assert S.order == 60
    assert all(S.multiply(E(1, a, 1), E(1, b, 1)) == E(1, G.op(a, b), 1) for a in range(60) for b in range(60))


def test_multiply_examples():
    S = L.s_z2()
    assert S.multiply(E(2, 0, 2), E(2, 0, 2)) == E(2, 1, 2)
    assert S.invert(E(2, 0, 2)) == E(2, 0, 2)
    assert S.idempotent(1, 1) == S.one == E(1, 0, 1)
    assert S.idempotent(2, 2) == E(2, 1, 2)
    B = L.rectangular_band()
    for l1, i1, l2, i2 in itertools.product((1, 2), repeat=4):
        assert B.multiply(E(l1, 0, i1), E(l2, 0, i2)) == E(l1, 0, i2)
    G = L.s3()
    T = L.rees_s3_2x2()
    for g in range(6):
        assert T.invert(E(1, g, 1)) == E(1, G.inv(g), 1)


@pytest.mark.parametrize("name", list(L.SUITE))
def test_semigroup_laws(name):
    S = L.SUITE[name]()
    if S.order > 64:
        pytest.skip("exhaustive laws only up to order 64")
    els = list(S.elements())
    for s, t in itertools.product(els, repeat=2):
        assert S.multiply(s, t) == naive_mul(S, s, t)
        st_ = S.multiply(s, t)
        assert st_.lam == s.lam and st_.i == t.i
    for s, t, u in itertools.product(els, repeat=3):
        assert S.multiply(S.multiply(s, t), u) == S.multiply(s, S.multiply(t, u))
    for s in els:
        si = S.invert(s)
        assert (si.lam, si.i) == (s.lam, s.i)
        assert S.multiply(S.multiply(s, si), s) == s
        assert S.multiply(s, si) == S.multiply(si, s)
        assert S.invert(si) == s
    for lam, i in itertools.product(range(1, S.lambda_count + 1), range(1, S.i_count + 1)):
        e = S.idempotent(lam, i)
        assert S.multiply(e, e) == e and S.invert(e) == e


def test_large_laws_sampled():
    rng = random.Random(5)
    S = L.rees_a5_2x2()
    els = list(S.elements())
    for _ in range(20000):
        s, t, u = rng.choice(els), rng.choice(els), rng.choice(els)
        assert S.multiply(S.multiply(s, t), u) == S.multiply(s, S.multiply(t, u))


def test_tables_match_scalar():
    S = L.rees_s3_2x2()
    mul, inv = S.tables()
    for a, b in itertools.product(range(S.order), repeat=2):
        assert S.element(int(mul[a, b])) == S.multiply(S.element(a), S.element(b))
    assert all(S.element(int(inv[a])) == S.invert(S.element(a)) for a in range(S.order))
    assert [S.code(s) for s in S.elements()] == list(range(S.order))
    assert list(S.elements()) == sorted(S.elements())


def test_singular_witness():
    assert singular_witness(L.s_z2().matrix) is None
    assert singular_witness(SandwichMatrix.from_rows([[0, 0], [0, 0]])) == ("rows", 1, 2)
    assert singular_witness(SandwichMatrix.from_rows([[0, 0], [0, 0], [0, 1]])) == ("rows", 1, 2)
    assert singular_witness(L.s3_equal_columns().matrix) == ("cols", 1, 2)
    for f in L.NONSINGULAR.values():
        assert singular_witness(f().matrix) is None


def _iso_ok(S, norm):
    T = norm.semigroup
    for s, t in itertools.product(S.elements(), repeat=2):
        if norm(S.multiply(s, t)) != T.multiply(norm(s), norm(t)):
            return False
    return len({norm(s) for s in S.elements()}) == S.order


def test_normalize_examples():
    S = L.s_z2()
    n = normalize_matrix(S)
    assert n.matrix == S.matrix and all(n(s) == s for s in S.elements())
    Z3 = L.cyclic(3)
    one = normalize_matrix(rees_new(Z3, [[2]], strict=False))
    assert one.matrix.entries.tolist() == [[0]]


def test_normalize_random_s3():
    rng = random.Random(11)
    G = L.s3()
    for _ in range(20):
        P = [[rng.randrange(6) for _ in range(2)] for _ in range(2)]
        S = rees_new(G, P, strict=False)
        n = normalize_matrix(S)
        assert n.matrix.is_normalized()
        assert _iso_ok(S, n)
        assert all(n.inverse(n(s)) == s for s in S.elements())


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_normalize_property(rows, cols, data):
    G = L.cyclic(3) if data.draw(st.booleans()) else L.s3()
    P = data.draw(st.lists(st.lists(st.integers(0, G.order - 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    S = rees_new(G, P, strict=False)
    n = normalize_matrix(S)
    assert n.matrix.is_normalized() and _iso_ok(S, n)


def test_gamma():
    S = L.rees_s3_2x2()
    G = S.group
    assert gamma_embed(S, 0) == S.one
    for g, h in itertools.product(range(6), repeat=2):
        assert S.multiply(gamma_embed(S, g), gamma_embed(S, h)) == gamma_embed(S, G.op(g, h))
        assert gamma_project(S, gamma_embed(S, g)) == g
    with pytest.raises(NotInGamma):
        gamma_project(S, E(2, 0, 1))
    Gam = set(gamma(S))
    assert all(S.multiply(a, b) in Gam and S.invert(a) in Gam for a in Gam for b in Gam)


def test_subsemigroups():
    S = L.s_z2()
    T = subsemigroup_closure(S, [S.one])
    assert T == {S.one}
    st_ = rees_structure_of(S, T)
    assert st_.H.members == {0} and st_.lambdas == (1,) and st_.indices == (1,)
    G = rees_structure_of(S, gamma(S))
    assert G.H.order == 2
    T2 = subsemigroup_closure(S, [E(1, 0, 1), E(2, 1, 2)])
    # brute-force closure: iterate products and inverses until stable
    cur = {E(1, 0, 1), E(2, 1, 2)}
    while True:
        nxt = cur | {S.multiply(a, b) for a in cur for b in cur} | {S.invert(a) for a in cur}
        if nxt == cur:
            break
        cur = nxt
    assert T2 == cur
    assert rees_structure_of(S, T2).H.order == 2
    with pytest.raises(NotClosed):
        rees_structure_of(S, [E(1, 1, 2)])


def test_decide_ed_examples():
    v = decide_ed(L.s_z2())
    assert v.holds is False and v.certificate == ("zero-divisor", 1, 1)
    assert decide_ed(L.rees_a5_2x2()).holds is True
    assert decide_ed(L.rectangular_band()).certificate == ("singular", "rows", 1, 2)
    for f in L.SINGULAR.values():
        assert decide_ed(f()).holds is False


def test_decide_ed_unnormalized():
    A5 = L.a5()
    S = rees_new(A5, [[5, 7], [3, 3]], strict=False)
    assert decide_ed(S).holds is True
    S = rees_new(A5, [[5, 5], [3, 3]], strict=False)
    assert decide_ed(S).certificate == ("singular", "rows", 1, 2)


def test_decide_ed_rel():
    S = L.rees_a5_1x1()
    assert decide_ed_rel(S, gamma(S)).holds is True
    v = decide_ed_rel(S, [S.one])
    assert v.holds is False and v.certificate[0] == "H-zero-divisor"
    _, x, y = v.certificate
    assert x == 1 and S.group.commutator(x, y) == 0
    with pytest.raises(NotASubsemigroup):
        decide_ed_rel(S, [E(1, 1, 1)])
    for f in (L.s_z2, L.rees_s3_2x2, L.rectangular_band):
        T = f()
        assert decide_ed_rel(T, list(T.elements())).holds == decide_ed(T).holds


def test_rel_verdict_independent_of_base_cell():
    """The embedded copy of H depends on the chosen cell; the verdict should not."""
    rng = random.Random(3)
    for f in (L.s_z2, L.rees_s3_2x2, L.rees_z3_2x3, L.rees_z2_3x3):
        S = f()
        els = list(S.elements())
        for _ in range(8):
            T = subsemigroup_closure(S, rng.sample(els, 2))
            lams = sorted({s.lam for s in T})
            ids = sorted({s.i for s in T})
            verdicts = {decide_ed_rel(S, T, base=(lam, i)).holds for lam in lams for i in ids}
            assert len(verdicts) == 1
            Hs = {rees_structure_of(S, T, base=(lam, i)).H.order for lam in lams for i in ids}
            assert len(Hs) == 1


def test_relative_matches_group_check():
    S = L.rees_s3_2x2()
    G = S.group
    for gens in ([E(1, 2, 1)], [E(1, 1, 1)], [E(1, 1, 1), E(1, 2, 1)]):
        T = subsemigroup_closure(S, gens)
        H = rees_structure_of(S, T).H
        assert decide_ed_rel(S, T).holds == is_group_ed(G, H).holds


def test_vectorized_arithmetic():
    S = L.rees_z2_3x3()
    codes = np.arange(S.order)
    a = S.decode(codes)
    for c in range(S.order):
        prod = S.multiply_arrays(S.decode(np.full(S.order, c)), a)
        got = S.encode(*prod)
        want = [S.code(S.multiply(S.element(c), S.element(k))) for k in codes]
        assert got.tolist() == want
    inv = S.encode(*S.invert_arrays(a))
    assert inv.tolist() == [S.code(S.invert(S.element(k))) for k in codes]
