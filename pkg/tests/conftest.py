import itertools

import pytest

from rees_ed import library as L


def brute_zero_divisors(G, over=None):
    """Triple loop straight from the definition, no vectorization."""
    over = list(G.elements()) if over is None else sorted(over)
    out = []
    for x in range(1, G.order):
        for y in range(1, G.order):
            if all(G.commutator(x, G.op(G.op(g, y), G.inv(g))) == 0 for g in over):
                out.append((x, y))
                break
    return out


def naive_mul(S, a, b):
    (lam, g, i), (mu, h, j) = a, b
    G = S.group
    return (lam, G.op(G.op(g, S.matrix(i, mu)), h), j)


@pytest.fixture(scope="session")
def suite_small():
    return L.suite(max_order=64)


@pytest.fixture(scope="session")
def a5():
    return L.a5()


def pairs(xs):
    return itertools.product(xs, repeat=2)
