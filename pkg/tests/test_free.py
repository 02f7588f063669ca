import random

from hypothesis import given, settings, strategies as st

from rees_ed import library as L
from rees_ed.free import (
    WordGroup,
    embed_factor,
    free_css,
    free_product,
    identity_violations,
    random_element,
    sym_decide_ed,
    sym_invert,
    sym_multiply,
    sym_singular_witness,
)


def test_free_css_shape():
    S = free_css(2)
    assert len(S.group.letters) == 6
    assert S.i_count == S.lambda_count == 2
    assert S.generators == ((1, (("f", "x1", 1),), 1), (2, (("f", "x2", 2 - 1),), 2))
    one = free_css(1)
    assert one.matrix == (((("f", "y1_1", 1),),),)
    assert len(one.group.letters) == 2


def test_free_css_product_example():
    S = free_css(2)
    a, b = S.generators
    lam, w, i = sym_multiply(S, a, b)
    assert (lam, i) == (1, 2)
    assert w == (("f", "x1", 1), ("f", "y1_2", 1), ("f", "x2", 1))


def test_word_inverse_cancels():
    S = free_css(3)
    rng = random.Random(0)
    for _ in range(200):
        w = S.group.random_word(rng, 8)
        assert S.group.mul(w, S.group.inv(w)) == ()
        assert S.group.is_reduced(w)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_reduction_confluent(seed):
    rng = random.Random(seed)
    W = WordGroup(["a", "b"], [L.cyclic(3), L.s3()])
    pool = [("f", "a", 1), ("f", "a", -1), ("f", "b", 1), ("f", "b", -1)]
    pool += [("g", 0, g) for g in range(3)] + [("g", 1, g) for g in range(6)]
    w, v, u = ([rng.choice(pool) for _ in range(rng.randint(0, 7))] for _ in range(3))
    left = W.reduce(list(W.reduce(w + v)) + u)
    right = W.reduce(w + list(W.reduce(v + u)))
    assert left == right == W.reduce(w + v + u)
    r = W.reduce(w)
    for s, t in zip(r, r[1:]):
        assert not (s[0] == t[0] == "g" and s[1] == t[1])
        assert not (s[0] == t[0] == "f" and s[1] == t[1] and s[2] == -t[2])
    assert all(s[2] != 0 for s in r if s[0] == "g")


def test_identities_free_css():
    for n in (1, 2, 3):
        assert identity_violations(free_css(n), 300, seed=n) == []


def test_free_product_structure():
    S1, S2 = L.s_z2(), L.rees_s3_1x1()
    F = free_product(S1, S2)
    assert F.lambda_count == S1.lambda_count + S2.lambda_count
    assert F.i_count == S1.i_count + S2.i_count
    for i in range(1, 3):
        for lam in range(1, 3):
            assert F.p(i, lam) == F.group.embed(0, S1.matrix(i, lam))
    assert F.p(3, 3) == ()
    assert F.p(1, 3) == (("f", "y1_3", 1),)
    entries = [F.p(i, lam) for i in range(1, 4) for lam in range(1, 4)]
    cross = [F.p(i, lam) for i in range(1, 4) for lam in range(1, 4) if (i <= 2) != (lam <= 2)]
    for c in cross:
        assert entries.count(c) == 1
    assert sym_singular_witness(F) is None
    assert identity_violations(F, 300, seed=4) == []


def test_free_product_embeds_factors():
    S1, S2 = L.rees_s3_2x2(), L.s_z2()
    F = free_product(S1, S2)
    rng = random.Random(1)
    for k, T in ((0, S1), (1, S2)):
        els = list(T.elements())
        for _ in range(100):
            a, b = rng.choice(els), rng.choice(els)
            assert sym_multiply(F, embed_factor(F, k, T, a), embed_factor(F, k, T, b)) == embed_factor(F, k, T, T.multiply(a, b))
            assert sym_invert(F, embed_factor(F, k, T, a)) == embed_factor(F, k, T, T.invert(a))


def test_free_product_of_1x1_nonsingular():
    F = free_product(L.rees_z2_1x1(), L.rees_a5_1x1())
    assert F.matrix[0][1] != F.matrix[1][0]
    assert sym_singular_witness(F) is None


def test_verdicts_cite_corollaries():
    v = sym_decide_ed(free_css(2))
    assert v.holds is True and "rank n >= 2" in v.reason
    v = sym_decide_ed(free_product(L.s_z2(), L.rectangular_band()))
    assert v.holds is True and "free products of c.s. semigroups" in v.reason
    v = sym_decide_ed(free_css(1))
    assert v.holds is None and "rank 1" in v.reason


def test_random_elements_are_reduced():
    S = free_css(2)
    rng = random.Random(2)
    for _ in range(100):
        lam, w, i = random_element(S, rng)
        assert S.group.is_reduced(w) and 1 <= lam <= 2 and 1 <= i <= 2
