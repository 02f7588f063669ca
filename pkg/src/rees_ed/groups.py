"""Finite groups given by Cayley tables, and the group-side equational-domain tests.

Elements are the integers ``0..order-1`` and ``0`` is always the identity.
A group is an e.d. exactly when it has no zero-divisors: elements ``x != 1``
for which some ``y != 1`` makes ``[x, y^g] = 1`` for every ``g``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    EmptyGeneratorSet,
    GroupError,
    NoIdentity,
    NoInverse,
    NotASubgroup,
    NotAssociative,
)

DEFAULT_MAX_ORDER = 120


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    inverse: np.ndarray
    labels: tuple[str, ...]
    name: str = "G"

    @property
    def order(self) -> int:
        return len(self.labels)

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def elements(self) -> range:
        return range(self.order)

    def label(self, a: int) -> str:
        return self.labels[a]

    def index_of(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            if label.isdigit() and int(label) < self.order:
                return int(label)
            raise GroupError(f"unknown element label {label!r} in group {self.name}") from None

    @property
    def _label_index(self) -> dict[str, int]:
        cache = self.__dict__.get("_labels_cache")
        if cache is None:
            cache = {lab: k for k, lab in enumerate(self.labels)}
            object.__setattr__(self, "_labels_cache", cache)
        return cache

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def conjugate(self, y: int, g: int) -> int:
        """``y^g = g y g^-1``."""
        return self.op(self.op(g, y), self.inv(g))

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a^-1 b^-1 a b``."""
        t = self.table
        return int(t[t[t[self.inverse[a], self.inverse[b]], a], b])

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False)
    members: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self.members


def make_group(
    table: Sequence[Sequence[int]],
    labels: Sequence[str] | None = None,
    name: str = "G",
    max_order: int = DEFAULT_MAX_ORDER,
) -> FiniteGroup:
    """Validate a Cayley table and return the group it defines.

    If the identity is not element 0 the elements are swapped so that it is;
    labels follow their elements.
    """
    arr = np.asarray(table, dtype=np.intp)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise GroupError("Cayley table must be a non-empty square array")
    n = arr.shape[0]
    if n > max_order:
        raise CapExceeded(f"group order {n} exceeds cap {max_order}", hint="raise max_order")
    if arr.min() < 0 or arr.max() >= n:
        raise GroupError(f"Cayley table entries must lie in 0..{n - 1}")
    if labels is not None and len(labels) != n:
        raise GroupError(f"expected {n} labels, got {len(labels)}")

    idx = np.arange(n)
    identity = None
    for e in range(n):
        if np.array_equal(arr[e], idx) and np.array_equal(arr[:, e], idx):
            identity = e
            break
    if identity is None:
        raise NoIdentity()

    lhs = arr[arr, :]  # [a, b, c] -> (ab)c
    rhs = arr[:, arr]  # [a, b, c] -> a(bc)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        raise NotAssociative(tuple(int(v) for v in bad[0]))

    inverse = np.empty(n, dtype=np.intp)
    for a in range(n):
        cands = np.flatnonzero((arr[a] == identity) & (arr[:, a] == identity))
        if len(cands) == 0:
            raise NoInverse(a)
        inverse[a] = cands[0]

    if labels is None:
        labels = default_labels(n)
    labels = list(labels)
    if identity != 0:
        perm = np.arange(n)
        perm[0], perm[identity] = identity, 0  # new index k holds old element perm[k]
        pos = np.argsort(perm)  # old -> new
        arr = pos[arr[np.ix_(perm, perm)]]
        inverse = pos[inverse[perm]]
        labels = [labels[p] for p in perm]
    if len(set(labels)) != n:
        raise GroupError("element labels must be distinct")
    arr.setflags(write=False)
    inverse.setflags(write=False)
    return FiniteGroup(arr, inverse, tuple(labels), name)


def default_labels(n: int) -> list[str]:
    if n == 2:
        return ["e", "a"]
    return ["e"] + [f"g{k}" for k in range(1, n)]


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p*q)(x) = p(q(x))
    return tuple(p[x] for x in q)


def cycle_label(perm: Sequence[int]) -> str:
    """Compact cycle notation with 1-based points, ``e`` for the identity."""
    seen = set()
    parts = []
    sep = "" if len(perm) <= 9 else "."
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        parts.append("(" + sep.join(cyc) + ")")
    return "".join(parts) or "e"


def make_group_from_permutations(
    generators: Iterable[Sequence[int]],
    degree: int | None = None,
    name: str = "G",
    allow_empty: bool = True,
    max_order: int = DEFAULT_MAX_ORDER,
) -> FiniteGroup:
    """Close a set of permutations (0-based image tuples) under composition.

    Elements are numbered in breadth-first discovery order starting from the
    identity, so generators receive the smallest indices.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        if not allow_empty:
            raise EmptyGeneratorSet("no generators given")
        return make_group([[0]], labels=["e"], name=name)
    d = degree if degree is not None else max(len(g) for g in gens)
    gens = [g + tuple(range(len(g), d)) for g in gens]
    for g in gens:
        if sorted(g) != list(range(d)):
            raise GroupError(f"{g} is not a permutation of 0..{d - 1}")

    ident = tuple(range(d))
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _compose(p, g)
                if q not in index:
                    if len(elements) >= max_order:
                        raise CapExceeded(f"permutation group exceeds order cap {max_order}")
                    index[q] = len(elements)
                    elements.append(q)
                    nxt.append(q)
        frontier = nxt
    # BFS from the identity lists the generators right after it
    n = len(elements)
    table = [[index[_compose(p, q)] for q in elements] for p in elements]
    return make_group(table, labels=[cycle_label(p) for p in elements], name=name, max_order=max_order)


def commutator_conjugate(G: FiniteGroup, x: int, y: int, g: int) -> int:
    """Return ``[x, y^g] = x^-1 (y^g)^-1 x y^g``."""
    return G.commutator(x, G.conjugate(y, g))


def _annihilation_matrix(G: FiniteGroup, over: Sequence[int]) -> np.ndarray:
    """Boolean matrix ``A[x, y] = all(g in over: [x, y^g] == 1)``."""
    t, inv = G.table, G.inverse
    xs = np.arange(G.order)
    comm = t[t[t[inv[xs][:, None], inv[xs][None, :]], xs[:, None]], xs[None, :]]
    gs = np.asarray(list(over), dtype=np.intp)
    conj = t[t[gs[None, :], xs[:, None]], inv[gs][None, :]]  # [y, k] -> y^{g_k}
    return (comm[:, conj] == 0).all(axis=2)


def _divisor_pairs(G: FiniteGroup, over: Sequence[int]) -> list[tuple[int, int]]:
    if G.order == 1:
        return []
    ann = _annihilation_matrix(G, over)
    ann[0, :] = False
    ann[:, 0] = False
    pairs = []
    for x in range(1, G.order):
        ys = np.flatnonzero(ann[x])
        if len(ys):
            pairs.append((x, int(ys[0])))
    return pairs


def zero_divisors(G: FiniteGroup) -> list[tuple[int, int]]:
    """Every zero-divisor ``x`` paired with its least witness ``y``."""
    return _divisor_pairs(G, G.elements())


def validate_subgroup(G: FiniteGroup, H: Subgroup) -> None:
    if H.parent is not G and H.parent.order != G.order:
        raise NotASubgroup("subgroup belongs to a different group")
    if 0 not in H.members:
        raise NotASubgroup("subset does not contain the identity")
    for a in H.members:
        if not 0 <= a < G.order:
            raise NotASubgroup(f"element {a} out of range", witness=a)
        if G.inv(a) not in H.members:
            raise NotASubgroup(f"not closed under inversion at {a}", witness=a)
        for b in H.members:
            if G.op(a, b) not in H.members:
                raise NotASubgroup(f"not closed under product at ({a}, {b})", witness=(a, b))


def h_zero_divisors(G: FiniteGroup, H: Subgroup) -> list[tuple[int, int]]:
    """Zero-divisors relative to ``H``: conjugation ranges over ``H`` only."""
    validate_subgroup(G, H)
    return _divisor_pairs(G, H.sorted_members())


def subgroup_closure(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    members = {0}
    frontier = [0]
    gens = sorted(set(gens))
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = G.op(a, g)
                if b not in members:
                    members.add(b)
                    nxt.append(b)
        frontier = nxt
    return Subgroup(G, frozenset(members))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset(G.elements()))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure.

    ``holds`` is ``None`` when the procedure could not decide. ``certificate``
    is a small machine-checkable witness for negative verdicts.
    """

    holds: bool | None
    certificate: tuple | None = None
    reason: str = ""


def is_group_ed(G: FiniteGroup, H: Subgroup | None = None) -> Verdict:
    if H is None:
        pairs = zero_divisors(G)
        kind = "zero-divisor"
    else:
        pairs = h_zero_divisors(G, H)
        kind = "H-zero-divisor"
    if not pairs:
        return Verdict(True, None, f"no {kind}s in {G.name}")
    x, y = pairs[0]
    return Verdict(False, (kind, x, y), f"{kind} ({G.label(x)},{G.label(y)}) in {G.name}")
