"""Symbolic free completely simple semigroups and free products.

Structural-group elements are reduced words. A syllable is either a free
letter ``("f", name, +1 | -1)`` or a nonidentity element of an embedded finite
group ``("g", k, element)``. Reduction cancels ``a a^-1`` and merges adjacent
syllables of the same embedded group through its Cayley table, so equality of
normal forms is equality in the group.

Symbolic matrices are never normalized; they only feed ``sym_decide_ed``.
The rank-1 free object is given by one generator and a 1x1 matrix; the
criterion corollary covers rank at least 2 only, so no verdict is issued there.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .groups import FiniteGroup, Verdict
from .rees import ReesSemigroup

Syllable = tuple
Word = tuple  # tuple of syllables in normal form


class WordGroup:
    """Free product of embedded finite groups with a free group on named letters."""

    def __init__(self, letters: Sequence[str], groups: Sequence[FiniteGroup] = ()):
        self.letters = tuple(letters)
        self.groups = tuple(groups)

    identity: Word = ()

    def push(self, stack: list, syl: Syllable) -> None:
        if stack:
            top = stack[-1]
            if syl[0] == "f" and top[0] == "f" and top[1] == syl[1] and top[2] == -syl[2]:
                stack.pop()
                return
            if syl[0] == "g" and top[0] == "g" and top[1] == syl[1]:
                stack.pop()
                c = self.groups[syl[1]].op(top[2], syl[2])
                if c != 0:
                    stack.append(("g", syl[1], c))
                return
        if syl[0] == "g" and syl[2] == 0:
            return
        stack.append(syl)

    def reduce(self, syllables) -> Word:
        stack: list = []
        for s in syllables:
            self.push(stack, s)
        return tuple(stack)

    def mul(self, *words: Word) -> Word:
        stack = list(words[0]) if words else []
        for w in words[1:]:
            for s in w:
                self.push(stack, s)
        return tuple(stack)

    def inv(self, w: Word) -> Word:
        out = []
        for s in reversed(w):
            if s[0] == "f":
                out.append(("f", s[1], -s[2]))
            else:
                out.append(("g", s[1], self.groups[s[1]].inv(s[2])))
        return tuple(out)

    def is_reduced(self, w: Word) -> bool:
        return self.reduce(w) == tuple(w)

    def letter(self, name: str) -> Word:
        return (("f", name, 1),)

    def embed(self, k: int, g: int) -> Word:
        return (("g", k, g),) if g else ()

    def random_word(self, rng: random.Random, length: int) -> Word:
        pool: list = [("f", a, e) for a in self.letters for e in (1, -1)]
        for k, G in enumerate(self.groups):
            pool += [("g", k, g) for g in range(1, G.order)]
        return self.reduce(rng.choice(pool) for _ in range(length))

    def render(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        for s in w:
            if s[0] == "f":
                parts.append(s[1] if s[2] == 1 else f"{s[1]}^-1")
            else:
                parts.append(f"{self.groups[s[1]].label(s[2])}[{s[1] + 1}]")
        return ".".join(parts)


SymElement = tuple  # (lam, word, i)


@dataclass(frozen=True)
class SymbolicCSS:
    kind: str  # "free" | "free-product"
    group: WordGroup
    matrix: tuple  # rows indexed by i, columns by lam, entries are words
    descriptor: str
    generators: tuple = ()
    rank: int | None = None

    @property
    def i_count(self) -> int:
        return len(self.matrix)

    @property
    def lambda_count(self) -> int:
        return len(self.matrix[0])

    def p(self, i: int, lam: int) -> Word:
        return self.matrix[i - 1][lam - 1]

    def render_matrix(self) -> list[str]:
        return [" ".join(self.group.render(e) for e in row) for row in self.matrix]


def sym_multiply(S: SymbolicCSS, a: SymElement, b: SymElement) -> SymElement:
    (lam, g, i), (mu, h, j) = a, b
    return (lam, S.group.mul(g, S.p(i, mu), h), j)


def sym_invert(S: SymbolicCSS, a: SymElement) -> SymElement:
    lam, w, i = a
    pinv = S.group.inv(S.p(i, lam))
    return (lam, S.group.mul(pinv, S.group.inv(w), pinv), i)


def free_css(n: int) -> SymbolicCSS:
    if n < 1:
        raise ValueError("rank must be at least 1")
    xs = [f"x{i}" for i in range(1, n + 1)]
    ys = [f"y{i}_{lam}" for i in range(1, n + 1) for lam in range(1, n + 1)]
    W = WordGroup(xs + ys)
    matrix = tuple(tuple(W.letter(f"y{i}_{lam}") for lam in range(1, n + 1)) for i in range(1, n + 1))
    gens = tuple((i, W.letter(f"x{i}"), i) for i in range(1, n + 1))
    return SymbolicCSS("free", W, matrix, f"free group of rank {n + n * n} on X u Y", gens, n)


def free_product(S1: ReesSemigroup, S2: ReesSemigroup) -> SymbolicCSS:
    """Lambda and I are disjoint unions; S1 indices come first."""
    l1, l2 = S1.lambda_count, S2.lambda_count
    i1, i2 = S1.i_count, S2.i_count
    ys = []
    rows = []
    for i in range(1, i1 + i2 + 1):
        row = []
        for lam in range(1, l1 + l2 + 1):
            if i <= i1 and lam <= l1:
                row.append(("g", 0, S1.matrix(i, lam)))
            elif i > i1 and lam > l1:
                row.append(("g", 1, S2.matrix(i - i1, lam - l1)))
            else:
                name = f"y{i}_{lam}"
                ys.append(name)
                row.append(("f", name, 1))
        rows.append(row)
    W = WordGroup(ys, (S1.group, S2.group))
    matrix = tuple(tuple(W.reduce([e]) for e in row) for row in rows)
    desc = f"{S1.group.name} * {S2.group.name} * F({len(ys)})"
    return SymbolicCSS("free-product", W, matrix, desc)


def embed_factor(S: SymbolicCSS, k: int, T: ReesSemigroup, s) -> SymElement:
    """Image of ``s`` in T = S1 (k=0) or S2 (k=1) inside the free product."""
    lam_off = 0 if k == 0 else S.lambda_count - T.lambda_count
    i_off = 0 if k == 0 else S.i_count - T.i_count
    return (s[0] + lam_off, S.group.embed(k, s[1]), s[2] + i_off)


def sym_singular_witness(S: SymbolicCSS) -> tuple[str, int, int] | None:
    rows = S.matrix
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            if rows[a] == rows[b]:
                return ("rows", a + 1, b + 1)
    cols = list(zip(*rows))
    for a in range(len(cols)):
        for b in range(a + 1, len(cols)):
            if cols[a] == cols[b]:
                return ("cols", a + 1, b + 1)
    return None


CITE_FREE_GROUP = "every non-abelian free group is an e.d."
CITE_FREE_RANK = "free c.s. semigroups of rank n >= 2 are e.d."
CITE_FREE_PRODUCT = "free products of c.s. semigroups are e.d."
CITE_GROUP_PRODUCT = "free products of groups other than Z2 * Z2 are e.d."
RANK_ONE_NOTE = "rank 1: the rank >= 2 corollary does not apply; the rank-1 free object is cyclic"


def sym_decide_ed(S: SymbolicCSS) -> Verdict:
    w = sym_singular_witness(S)
    if w is not None:
        return Verdict(False, ("singular",) + w, "sandwich matrix is singular")
    if S.kind == "free":
        if S.rank == 1:
            return Verdict(None, None, RANK_ONE_NOTE)
        return Verdict(True, None, f"{CITE_FREE_RANK} (structural group non-abelian free; {CITE_FREE_GROUP})")
    return Verdict(True, None, f"{CITE_FREE_PRODUCT} (structural group {S.descriptor} with F(Y) nontrivial; {CITE_GROUP_PRODUCT})")


def random_element(S: SymbolicCSS, rng: random.Random, max_length: int = 6) -> SymElement:
    return (
        rng.randint(1, S.lambda_count),
        S.group.random_word(rng, rng.randint(0, max_length)),
        rng.randint(1, S.i_count),
    )


def identity_violations(S: SymbolicCSS, samples: int, seed: int = 0, max_length: int = 6) -> list[tuple[str, tuple]]:
    """Randomized check of the four defining identities of the c.s. variety."""
    rng = random.Random(seed)
    mul = lambda a, b: sym_multiply(S, a, b)  # noqa: E731
    inv = lambda a: sym_invert(S, a)  # noqa: E731
    bad = []
    for _ in range(samples):
        x = random_element(S, rng, max_length)
        y = random_element(S, rng, max_length)
        z = random_element(S, rng, max_length)
        xi = inv(x)
        if mul(mul(x, xi), x) != x:
            bad.append(("x x' x = x", (x,)))
        if mul(x, xi) != mul(xi, x):
            bad.append(("x x' = x' x", (x,)))
        if inv(xi) != x:
            bad.append(("(x')' = x", (x,)))
        xyx = mul(mul(x, y), x)
        if mul(inv(xyx), xyx) != mul(xi, x):
            bad.append(("(xyx)'(xyx) = x'x", (x, y)))
        if mul(mul(x, y), z) != mul(x, mul(y, z)):
            bad.append(("associativity", (x, y, z)))
    return bad
