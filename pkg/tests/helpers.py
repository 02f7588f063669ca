"""Oracles shared by the unit tests and the acceptance suite."""
import itertools

from rees_ed.rees import RElement
from rees_ed.terms import Variable, boundary_symbol, evaluate, random_term

E = RElement
X1 = Variable(1)

# (text, error position) for term parsing over S_z2
MALFORMED = [
    ("x1 . . x2", 5),
    ("", 0),
    ("x", 1),
    ("x0", 0),
    ("(x1 . x2", 8),
    ("c[1,e,1", 7),
    ("c(1,e,1)", 1),
    ("x1 ^2", 3),
    ("x1 x2", 3),
    ("c[1,,1]", 4),
    ("c[,e,1]", 2),
    ("c[1,zz,1]", 4),
    ("c[3,e,1]", 0),
    ("x1 . )", 5),
]


def seven_identity_violations(S):
    """Direct check of the seven Gamma identities over all x, y in Gamma and s in S."""
    G, P = S.group, S.matrix
    m, inv = S.multiply, S.invert
    Gam = [E(1, g, 1) for g in G.elements()]
    bad = []
    for xa, ya in itertools.product(Gam, repeat=2):
        for s in S.elements():
            l, g, i = s
            checks = {
                "right factor": m(s, xa) == m(E(l, g, 1), xa) == m(m(E(l, g, 1), xa), S.one),
                "left factor": m(xa, s) == m(xa, E(1, g, i)) == m(m(S.one, xa), E(1, g, i)),
                "inverse right": inv(m(s, xa)) == m(m(E(l, 0, 1), inv(xa)), E(1, G.inv(g), 1)),
                "inverse left": inv(m(xa, s)) == m(m(E(1, G.inv(g), 1), inv(xa)), E(1, 0, i)),
                "sandwich": m(m(xa, s), ya) == m(m(xa, E(1, g, 1)), ya),
                "inverse sandwich": inv(m(m(xa, s), ya)) == m(m(inv(ya), E(1, G.inv(g), 1)), inv(xa)),
            }
            for h in G.elements():
                for j in range(1, S.i_count + 1):
                    pinv = G.inv(P(j, l))
                    lhs = inv(m(m(E(l, g, 1), xa), E(1, h, j)))
                    rhs = m(m(E(l, G.op(pinv, G.inv(h)), 1), inv(xa)), E(1, G.op(G.inv(g), pinv), j))
                    if lhs != rhs:
                        bad.append(("inverse triple", xa, s, h, j))
            bad += [(k, xa, ya, s) for k, ok in checks.items() if not ok]
    return bad


def dichotomy_violations(S, s1, s2, end, rng, count):
    """Random unary terms that break the singular-matrix dichotomy for s1, s2."""
    bad = 0
    for _ in range(count):
        t = random_term(rng, S, 1, rng.randint(0, 6))
        a, b = evaluate(S, t, (s1,)), evaluate(S, t, (s2,))
        if a == b:
            continue
        sym = boundary_symbol(t, end)
        if end == "first":
            ok = (a.g, a.i) == (b.g, b.i) and (a.lam, b.lam) == (s1.lam, s2.lam) and sym == X1
        else:
            ok = (a.lam, a.g) == (b.lam, b.g) and (a.i, b.i) == (s1.i, s2.i) and sym == X1
        bad += not ok
    return bad
