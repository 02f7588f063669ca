import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_zero_divisors
from rees_ed import library as L
from rees_ed.errors import CapExceeded, EmptyGeneratorSet, NoIdentity, NoInverse, NotASubgroup, NotAssociative
from rees_ed.groups import (
    Subgroup,
    commutator_conjugate,
    h_zero_divisors,
    is_group_ed,
    make_group,
    make_group_from_permutations,
    subgroup_closure,
    whole_group,
    zero_divisors,
)

GROUPS = [L.trivial(), L.cyclic(2), L.cyclic(3), L.cyclic(4), L.s3(), L.symmetric(4), L.a5()]


def test_z2_table():
    G = make_group([[0, 1], [1, 0]])
    assert G.order == 2 and G.labels == ("e", "a")


def test_no_inverse_witness():
    with pytest.raises(NoInverse) as exc:
        make_group([[0, 1], [1, 1]])
    assert exc.value.witness == 1


def test_no_identity():
    with pytest.raises(NoIdentity):
        make_group([[1, 0], [0, 0]])


def test_not_associative():
    # Latin square with identity 0 that is not a group table
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative) as exc:
        make_group(t)
    a, b, c = exc.value.witness
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_reindexes_identity():
    # Z2 with the identity stored as element 1
    G = make_group([[1, 0], [0, 1]], labels=["a", "e"])
    assert G.labels == ("e", "a")
    assert G.op(1, 1) == 0


def test_order_cap():
    t = [[(a + b) % 5 for b in range(5)] for a in range(5)]
    with pytest.raises(CapExceeded):
        make_group(t, max_order=4)


def test_permutation_groups():
    assert make_group_from_permutations([]).order == 1
    with pytest.raises(EmptyGeneratorSet):
        make_group_from_permutations([], allow_empty=False)
    assert make_group_from_permutations([(1, 0)]).order == 2
    assert L.s3().order == 6
    assert L.a5().order == 60
    assert L.symmetric(4).order == 24
    assert L.s3().labels == ("e", "(12)", "(123)", "(23)", "(13)", "(132)")


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_group_laws(G):
    T, n = G.table, G.order
    assert np.array_equal(T[T, :], T[:, T])
    assert np.array_equal(T[0], np.arange(n)) and np.array_equal(T[:, 0], np.arange(n))
    assert all(G.op(a, G.inv(a)) == 0 == G.op(G.inv(a), a) for a in range(n))


def test_commutator_conjugate():
    Z = L.cyclic(4)
    assert all(commutator_conjugate(Z, x, y, g) == 0 for x, y, g in itertools.product(range(4), repeat=3))
    S3 = L.s3()
    assert all(commutator_conjugate(S3, x, x, 0) == 0 for x in range(6))
    t, c = S3.index_of("(12)"), S3.index_of("(123)")
    assert commutator_conjugate(S3, t, c, 0) != 0
    # definition x^-1 (g y g^-1)^-1 x (g y g^-1), spelled out
    for x, y, g in itertools.product(range(6), repeat=3):
        yg = S3.op(S3.op(g, y), S3.inv(g))
        want = S3.op(S3.op(S3.op(S3.inv(x), S3.inv(yg)), x), yg)
        assert commutator_conjugate(S3, x, y, g) == want


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_zero_divisors_match_brute_force(G):
    assert zero_divisors(G) == brute_zero_divisors(G)


def test_zero_divisor_examples():
    Z2 = L.cyclic(2)
    assert zero_divisors(Z2) == [(1, 1)]
    S3 = L.s3()
    lab = [(S3.label(x), S3.label(y)) for x, y in zero_divisors(S3)]
    assert ("(123)", "(123)") in lab
    assert not any(x in ("(12)", "(13)", "(23)") for x, _ in lab)
    assert zero_divisors(L.a5()) == []


def test_h_zero_divisors():
    A5 = L.a5()
    assert h_zero_divisors(A5, whole_group(A5)) == []
    one = Subgroup(A5, frozenset({0}))
    listed = h_zero_divisors(A5, one)
    assert [x for x, _ in listed] == list(range(1, 60))
    # with H trivial y=x is always a witness, so the least one is at most x
    assert all(y <= x and A5.commutator(x, y) == 0 for x, y in listed)
    assert listed == brute_zero_divisors(A5, [0])
    for G in GROUPS:
        assert h_zero_divisors(G, whole_group(G)) == zero_divisors(G)


def test_h_zero_divisors_rejects_non_subgroup():
    S3 = L.s3()
    with pytest.raises(NotASubgroup):
        h_zero_divisors(S3, Subgroup(S3, frozenset({0, 1, 2})))


def test_is_group_ed():
    v = is_group_ed(L.cyclic(2))
    assert v.holds is False and v.certificate == ("zero-divisor", 1, 1)
    assert is_group_ed(L.a5()).holds is True
    S3 = L.s3()
    c = S3.index_of("(123)")
    assert is_group_ed(S3).certificate == ("zero-divisor", c, c)


def test_subgroup_closure():
    S3 = L.s3()
    assert subgroup_closure(S3, []).members == {0}
    assert subgroup_closure(S3, [S3.index_of("(123)")]).order == 3
    assert subgroup_closure(S3, range(6)).order == 6


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 59), max_size=3), st.lists(st.integers(0, 59), max_size=3))
def test_ed_monotone_in_h(g1, g2):
    A5 = L.a5()
    H1 = subgroup_closure(A5, g1)
    H2 = subgroup_closure(A5, g1 + g2)
    assert H1.members <= H2.members
    if is_group_ed(A5, H1).holds:
        assert is_group_ed(A5, H2).holds
    assert h_zero_divisors(A5, H1) == brute_zero_divisors(A5, H1.members)


def test_abelian_groups_have_zero_divisors():
    for n in range(2, 9):
        Z = L.cyclic(n)
        assert [x for x, _ in zero_divisors(Z)] == list(range(1, n))
