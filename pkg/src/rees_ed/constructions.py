"""Explicit equation systems over a normalized Rees matrix semigroup.

* ``diagonal_system``: equations ``r(x1, x2) = 1`` whose solutions are ``x1 = x2``;
* ``disjunction_system``: solutions ``x1 = 1 or x2 = 1`` when the structural group is an e.d.;
* ``msem_system``: four variables, solutions ``x1 = x2 or x3 = x4``;
* ``to_one_form``: any equation rewritten as a family ``r_j(X) = 1``.

The families can be very large (millions to 10^16 equations) and are
generated on demand from a flat index.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

from .errors import ArityMismatch, EqualElements, NoSeparator, SingularMatrix
from .rees import ReesSemigroup, RElement, singular_witness
from .terms import (
    Constant,
    Equation,
    EquationSystem,
    Inverse,
    Product,
    Term,
    Variable,
    evaluate,
    max_variable,
    product,
    substitute_term,
)

X1, X2, X3, X4 = (Variable(k) for k in range(1, 5))


@dataclass(frozen=True)
class SeparatorChoice:
    i: int
    lam: int
    term: Term  # (1,1,i) . x1 . (lam,1,1)


def separator_term(i: int, lam: int, x: Term = X1) -> Term:
    return Product(Product(Constant(RElement(1, 0, i)), x), Constant(RElement(lam, 0, 1)))


def separator_value(S: ReesSemigroup, i: int, lam: int, s: RElement) -> int:
    """Group part of ``(1,1,i) s (lam,1,1)``, i.e. ``p[i, lam(s)] g(s) p[i(s), lam]``."""
    G, P = S.group, S.matrix
    return G.op(G.op(P(i, s.lam), s.g), P(s.i, lam))


def separating_term(S: ReesSemigroup, s1: RElement, s2: RElement) -> SeparatorChoice:
    """Least ``(i, lam)`` (``i`` first) such that ``(1,1,i) x (lam,1,1)`` separates ``s1, s2``."""
    S.require_normalized()
    s1, s2 = S.check(s1), S.check(s2)
    if s1 == s2:
        raise EqualElements(f"{tuple(s1)} equals {tuple(s2)}")
    for i in range(1, S.i_count + 1):
        for lam in range(1, S.lambda_count + 1):
            if separator_value(S, i, lam, s1) != separator_value(S, i, lam, s2):
                return SeparatorChoice(i, lam, separator_term(i, lam))
    raise NoSeparator(s1, s2, singular_witness(S.matrix))


def _require_nonsingular(S: ReesSemigroup) -> None:
    S.require_normalized()
    w = singular_witness(S.matrix)
    if w is not None:
        raise SingularMatrix(w)


class LazyFamily(Sequence):
    """Equations generated from a flat index ``0 <= k < size``.

    ``describe(k)`` gives the structured index, ``hint(point)`` the flat index
    of an equation expected to fail at a point outside the intended solution set.
    """

    def __init__(
        self,
        name: str,
        arity: int,
        size: int,
        build: Callable[[int], Equation],
        describe: Callable[[int], tuple],
        hint: Callable[[tuple], int | None] | None = None,
        descriptor: str = "",
    ):
        self.name = name
        self.arity = arity
        self.size = size
        self._build = build
        self._describe = describe
        self._hint = hint
        self.descriptor = descriptor

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[j] for j in range(*k.indices(self.size))]
        if not 0 <= k < self.size:
            raise IndexError(k)
        return self._build(k)

    def __iter__(self) -> Iterator[Equation]:
        for k in range(self.size):
            yield self._build(k)

    def describe(self, k: int) -> tuple:
        return self._describe(k)

    def hint(self, point) -> int | None:
        return None if self._hint is None else self._hint(tuple(RElement(*s) for s in point))

    def system(self) -> EquationSystem:
        return EquationSystem(self.arity, self)

    def __repr__(self) -> str:
        return f"LazyFamily({self.name!r}, size={self.size}, index={self.descriptor})"


class _Pairs:
    """Ordered pairs of distinct codes ``0..n-1`` in lexicographic order."""

    def __init__(self, n: int):
        self.n = n

    def __len__(self):
        return self.n * (self.n - 1)

    def index(self, a: int, b: int) -> int:
        return a * (self.n - 1) + (b if b < a else b - 1)

    def pair(self, k: int) -> tuple[int, int]:
        a, r = divmod(k, self.n - 1)
        return a, (r if r < a else r + 1)


class _SeparatorCache:
    def __init__(self, S: ReesSemigroup):
        self.S = S
        self._pair = lru_cache(maxsize=1 << 16)(self._compute)
        self._terms = {}

    def _compute(self, a: int, b: int) -> tuple[int, int]:
        c = separating_term(self.S, self.S.element(a), self.S.element(b))
        return c.i, c.lam

    def pair(self, s1: RElement, s2: RElement) -> tuple[int, int]:
        return self._pair(self.S.code(s1), self.S.code(s2))

    def term(self, i: int, lam: int, x: Term) -> Term:
        key = (i, lam, id(x))
        t = self._terms.get(key)
        if t is None:
            t = self._terms[key] = (separator_term(i, lam, x), x)
        return t[0]


def _one(S: ReesSemigroup) -> Constant:
    return Constant(S.one)


def diagonal_system(S: ReesSemigroup) -> LazyFamily:
    """``1 x1 (1 x2 1)^-1 = 1`` plus ``t(x1) t(x2)^-1 = 1`` for every ordered pair ``s != s'``.

    ``t`` is the separator of the pair; equation ``k >= 1`` belongs to the
    ``(k-1)``-th pair in lexicographic order, which is also its hint.
    """
    _require_nonsingular(S)
    one = _one(S)
    pairs = _Pairs(S.order)
    seps = _SeparatorCache(S)
    base = Equation(Product(Product(one, X1), Inverse(Product(Product(one, X2), one))), one)
    eq_cache: dict = {}

    def build(k: int) -> Equation:
        if k == 0:
            return base
        a, b = pairs.pair(k - 1)
        i, lam = seps._pair(a, b)
        eq = eq_cache.get((i, lam))
        if eq is None:
            lhs = Product(seps.term(i, lam, X1), Inverse(seps.term(i, lam, X2)))
            eq = eq_cache[(i, lam)] = Equation(lhs, one)
        return eq

    def describe(k: int) -> tuple:
        if k == 0:
            return ("base",)
        a, b = pairs.pair(k - 1)
        return ("pair", S.element(a), S.element(b))

    def hint(point) -> int | None:
        s, t = point
        if s == t:
            return None
        return 1 + pairs.index(S.code(s), S.code(t))

    fam = LazyFamily("diag", 2, 1 + len(pairs), build, describe, hint, descriptor="{base} + ordered pairs s != s'")
    fam.separators = seps
    return fam


def disjunction_terms(S: ReesSemigroup, g: int, tx: Term, ty: Term) -> Term:
    """``tx (1,g^-1,1) ty (1,g,1) tx^-1 (1,g^-1,1) ty^-1 (1,g,1)``."""
    G = S.group
    cg = Constant(RElement(1, g, 1))
    cgi = Constant(RElement(1, G.inv(g), 1))
    return product([tx, cgi, ty, cg, Inverse(tx), cgi, Inverse(ty), cg])


def disjunction_system(S: ReesSemigroup) -> LazyFamily:
    """Family indexed by ``G`` (first group) then by ``((s, s'), g)`` with ``s, s' != 1``.

    Its solution set contains ``M = {x1 = 1 or x2 = 1}`` always, and equals it
    exactly when the structural group has no zero-divisors.
    """
    _require_nonsingular(S)
    G = S.group
    one = _one(S)
    n = G.order
    others = [s for s in S.elements() if s != S.one]
    pos = {s: k for k, s in enumerate(others)}
    m = len(others)
    seps = _SeparatorCache(S)
    onecode = S.code(S.one)
    bx = Product(Product(one, X1), one)
    by = Product(Product(one, X2), one)
    head_x = Product(one, X1)

    def first_group(g: int) -> Equation:
        cg = Constant(RElement(1, g, 1))
        cgi = Constant(RElement(1, G.inv(g), 1))
        return Equation(product([head_x, cgi, X2, cg, Inverse(bx), cgi, Inverse(by), cg]), one)

    def sep_of(s: RElement) -> tuple[int, int]:
        return seps._pair(onecode, S.code(s))

    def build(k: int) -> Equation:
        if k < n:
            return first_group(k)
        a_b, g = divmod(k - n, n)
        a, b = divmod(a_b, m)
        i1, l1 = sep_of(others[a])
        i2, l2 = sep_of(others[b])
        return Equation(disjunction_terms(S, g, seps.term(i1, l1, X1), seps.term(i2, l2, X2)), one)

    def describe(k: int) -> tuple:
        if k < n:
            return ("g", k)
        a_b, g = divmod(k - n, n)
        a, b = divmod(a_b, m)
        return ("pair", others[a], others[b], g)

    def commutator_word(f: int, f2: int, g: int) -> int:
        gi = G.inv(g)
        w = 0
        for x in (f, gi, f2, g, G.inv(f), gi, G.inv(f2), g):
            w = G.op(w, x)
        return w

    def hint(point) -> int | None:
        s, t = point
        if s == S.one or t == S.one:
            return None
        i1, l1 = sep_of(s)
        i2, l2 = sep_of(t)
        f = separator_value(S, i1, l1, s)
        f2 = separator_value(S, i2, l2, t)
        g = next((g for g in G.elements() if commutator_word(f, f2, g) != 0), 0)
        return n + (pos[s] * m + pos[t]) * n + g

    return LazyFamily("disj", 2, n + m * m * n, build, describe, hint, descriptor="G + ((S-1) x (S-1)) x G")


def substitute(system: EquationSystem, bindings: dict[int, Term], arity: int | None = None) -> EquationSystem:
    """Replace variables by terms in every equation (lazily for lazy families)."""
    if arity is None:
        unbound = max((k for k in range(1, system.arity + 1) if k not in bindings), default=0)
        arity = max([unbound] + [max_variable(t) for t in bindings.values()])
    for k, t in bindings.items():
        if max_variable(t) > arity:
            raise ArityMismatch(f"binding for x{k} uses x{max_variable(t)} beyond arity {arity}")
    for k in range(1, system.arity + 1):
        if k not in bindings and k > arity:
            raise ArityMismatch(f"unbound x{k} exceeds new arity {arity}")

    def sub(eq: Equation) -> Equation:
        memo: dict = {}
        return Equation(substitute_term(eq.lhs, bindings, memo), substitute_term(eq.rhs, bindings, memo))

    eqs = system.equations
    if isinstance(eqs, LazyFamily):
        fam = LazyFamily(
            eqs.name + "[subst]", arity, len(eqs), lambda k: sub(eqs[k]), eqs.describe, None, eqs.descriptor
        )
        return EquationSystem(arity, fam)
    return EquationSystem(arity, [sub(e) for e in eqs])


def in_msem(point) -> bool:
    x1, x2, x3, x4 = point
    return x1 == x2 or x3 == x4


def msem_system(S: ReesSemigroup) -> LazyFamily:
    """Union over ``(i, j, k)`` of disjunction equation ``k`` with
    ``x1 -> r_i(x1, x2)`` and ``x2 -> r_j(x3, x4)``, where ``r_i = 1`` are the
    diagonal equations."""
    diag = diagonal_system(S)
    disj = disjunction_system(S)
    nd, nj = len(diag), len(disj)
    rename = {1: X3, 2: X4}

    @lru_cache(maxsize=8192)
    def left(i: int) -> Term:
        return diag[i].lhs

    @lru_cache(maxsize=8192)
    def right(j: int) -> Term:
        return substitute_term(diag[j].lhs, rename)

    def build(k: int) -> Equation:
        ij, e = divmod(k, nj)
        i, j = divmod(ij, nd)
        eq = disj[e]
        memo: dict = {}
        b = {1: left(i), 2: right(j)}
        return Equation(substitute_term(eq.lhs, b, memo), substitute_term(eq.rhs, b, memo))

    def describe(k: int) -> tuple:
        ij, e = divmod(k, nj)
        i, j = divmod(ij, nd)
        return (i, j, e)

    def hint(point) -> int | None:
        if in_msem(point):
            return None
        x1, x2, x3, x4 = point
        i = diag.hint((x1, x2))
        j = diag.hint((x3, x4))
        u = evaluate(S, left(i), (x1, x2))
        v = evaluate(S, diag[j].lhs, (x3, x4))
        e = disj.hint((u, v))
        if e is None:
            return None
        return (i * nd + j) * nj + e

    fam = LazyFamily("msem", 4, nd * nd * nj, build, describe, hint, descriptor="I x J x index(disj)")
    fam.diag, fam.disj = diag, disj
    return fam


def to_one_form(S: ReesSemigroup, eq: Equation, arity: int | None = None) -> LazyFamily:
    """The diagonal family with ``x1 -> lhs`` and ``x2 -> rhs``: equations ``r_j(lhs, rhs) = 1``."""
    diag = diagonal_system(S)
    n = eq.arity() if arity is None else arity
    if eq.arity() > n:
        raise ArityMismatch(f"equation uses x{eq.arity()} beyond arity {n}")
    b = {1: eq.lhs, 2: eq.rhs}

    def build(k: int) -> Equation:
        d = diag[k]
        memo: dict = {}
        return Equation(substitute_term(d.lhs, b, memo), substitute_term(d.rhs, b, memo))

    return LazyFamily("one-form", n, len(diag), build, diag.describe, None, descriptor=diag.descriptor)
