import itertools
import random

import numpy as np
import pytest

from rees_ed import library as L
from rees_ed.clone import (
    Budget,
    algebraic_closure,
    equalizer,
    generate_clone,
    is_algebraic,
    m_set,
    msem_set,
    oracle_decide_ed,
)
from rees_ed.constructions import diagonal_system
from rees_ed.errors import CapExceeded, Incomplete
from rees_ed.rees import decide_ed
from rees_ed.solver import SolutionSet, full_set, solve
from rees_ed.terms import EquationSystem, PointBatch, evaluate_batch, random_equation, random_term


def naive_clone(S, n):
    """Closure of projections and constants under pointwise product and inverse, as tuples."""
    pts = list(itertools.product(range(S.order), repeat=n))
    mul, inv = S.tables(force=True)
    gens = [tuple(p[k] for p in pts) for k in range(n)] + [tuple([c] * len(pts)) for c in range(S.order)]
    funcs = set(gens)
    frontier = set(gens)
    while frontier:
        new = set()
        for f in frontier:
            for g in list(funcs):
                for h in (tuple(mul[a, b] for a, b in zip(f, g)), tuple(mul[a, b] for a, b in zip(g, f))):
                    if h not in funcs:
                        new.add(h)
            h = tuple(inv[a] for a in f)
            if h not in funcs:
                new.add(h)
        funcs |= new
        frontier = new
    return funcs


def test_z2_unary_clone():
    S = L.rees_z2_1x1()
    T = generate_clone(S, 1)
    assert T.complete and len(T) == 4
    assert {tuple(r) for r in T.functions.tolist()} == {(0, 1), (1, 0), (0, 0), (1, 1)}


@pytest.mark.parametrize("make,n", [(L.rees_z2_1x1, 2), (L.rectangular_band, 2), (L.left_zero_band, 2), (L.rees_s3_1x1, 1), (L.s_z2, 1)])
def test_clone_matches_naive(make, n):
    S = make()
    T = generate_clone(S, n)
    assert T.complete
    assert {tuple(r) for r in T.functions.tolist()} == naive_clone(S, n)


def test_projections_constants_and_budget():
    S = L.s_z2()
    T = generate_clone(S, 2)
    size = S.order ** 2
    dom = np.indices((S.order,) * 2).reshape(2, -1)
    assert T.contains(dom[0]) and T.contains(dom[1])
    assert all(T.contains(np.full(size, c)) for c in range(S.order))
    with pytest.raises(CapExceeded):
        generate_clone(S, 2, Budget(max_functions=0))
    with pytest.raises(CapExceeded):
        generate_clone(L.rees_a5_2x2(), 3)


def test_term_functions_are_in_clone():
    S = L.s_z2()
    T = generate_clone(S, 2)
    codes = np.indices((S.order,) * 2).reshape(2, -1).T
    batch = PointBatch(S, codes)
    rng = random.Random(0)
    for _ in range(200):
        t = random_term(rng, S, 2, 5)
        lam, g, i = (np.broadcast_to(a, (batch.size,)) for a in evaluate_batch(S, t, batch))
        assert T.contains(S.encode(lam, g, i))


def test_closure_basics():
    S = L.s_z2()
    T = generate_clone(S, 2)
    full = full_set(S, 2)
    assert algebraic_closure(S, full, table=T).points.members == full.members
    diag = SolutionSet(2, {(s, s) for s in S.elements()})
    assert is_algebraic(S, diag, table=T).answer == "yes"
    M = m_set(S)
    cl = algebraic_closure(S, M, table=T).points
    assert M.members < cl.members
    v = is_algebraic(S, M, table=T)
    assert v.answer == "no" and all(s != S.one for s in v.witness)


def test_msem_z2():
    S = L.rees_z2_1x1()
    assert is_algebraic(S, msem_set(S), 4).answer == "no"


def test_closure_properties_random():
    S = L.rees_z2_1x1()
    T = generate_clone(S, 2)
    rng = random.Random(2)
    pts = list(full_set(S, 2))
    for _ in range(40):
        A = SolutionSet(2, set(rng.sample(pts, rng.randint(0, 4))))
        B = SolutionSet(2, A.members | set(rng.sample(pts, 1)))
        cA = algebraic_closure(S, A, table=T).points
        cB = algebraic_closure(S, B, table=T).points
        assert A.members <= cA.members
        assert cA.members <= cB.members
        assert algebraic_closure(S, cA, table=T).points.members == cA.members


def test_equalizers_are_algebraic():
    S = L.rectangular_band()
    T = generate_clone(S, 2)
    rng = random.Random(3)
    for _ in range(30):
        f, g = rng.randrange(len(T)), rng.randrange(len(T))
        assert is_algebraic(S, equalizer(T, f, g), table=T).answer == "yes"


def test_solution_sets_are_algebraic():
    S = L.s_z2()
    T = generate_clone(S, 2)
    rng = random.Random(4)
    for _ in range(20):
        sys_ = EquationSystem(2, [random_equation(rng, S, 2, 3) for _ in range(2)])
        assert is_algebraic(S, solve(S, sys_), table=T).answer == "yes"


def test_partial_clone():
    S = L.rees_s3_1x1()
    T = generate_clone(S, 2, Budget(max_functions=500))
    assert not T.complete
    with pytest.raises(Incomplete):
        algebraic_closure(S, m_set(S), table=T)
    # a set everything agrees on is still trustworthy
    assert is_algebraic(S, full_set(S, 2), table=T).answer == "yes"


def test_oracle_verdicts():
    v = oracle_decide_ed(L.rees_z2_1x1())
    assert v.holds is False and "definition" in v.reason
    v = oracle_decide_ed(L.rectangular_band(), route="m")
    assert v.holds is False and "M" in v.reason
    for make in (L.s_z2, L.left_zero_band, L.rectangular_band):
        S = make()
        v = oracle_decide_ed(S, route="m")
        assert v.holds is decide_ed(S).holds is False


def test_oracle_route_labels():
    S = L.s_z2()
    v = oracle_decide_ed(S, route="m")
    assert v.certificate[0] == "m-closure"
    with pytest.raises(ValueError):
        oracle_decide_ed(S, route="nope")
