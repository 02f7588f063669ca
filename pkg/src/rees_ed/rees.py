"""Rees matrix semigroups ``S = (G, P, Lambda, I)`` over finite groups.

Elements are triples ``(lam, g, i)`` with 1-based ``lam`` and ``i``::

    (lam, g, i)(mu, h, j) = (lam, g * P[i, mu] * h, j)

``P`` has ``|I|`` rows and ``|Lambda|`` columns. It is normalized when its
first row and first column consist of the identity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    DimensionMismatch,
    IsomorphismCheckFailed,
    NotASubsemigroup,
    NotClosed,
    NotInGamma,
    NotNormalized,
    SemigroupError,
)
from .groups import FiniteGroup, Subgroup, Verdict, is_group_ed, validate_subgroup

SOFT_CAP = 256
HARD_CAP = 4096


class RElement(NamedTuple):
    lam: int
    g: int
    i: int


@dataclass(frozen=True, eq=False)
class SandwichMatrix:
    """Entries ``p[i, lam]`` stored 0-based in ``entries``; accessed 1-based."""

    entries: np.ndarray

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "SandwichMatrix":
        arr = np.asarray(rows, dtype=np.intp)
        if arr.ndim != 2 or 0 in arr.shape:
            raise DimensionMismatch("sandwich matrix must be a non-empty rectangle")
        arr.setflags(write=False)
        return cls(arr)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __call__(self, i: int, lam: int) -> int:
        return int(self.entries[i - 1, lam - 1])

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.entries[i - 1])

    def col(self, lam: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.entries[:, lam - 1])

    def first_unnormalized_cell(self) -> tuple[int, int] | None:
        for lam in range(1, self.cols + 1):
            if self(1, lam) != 0:
                return (1, lam)
        for i in range(2, self.rows + 1):
            if self(i, 1) != 0:
                return (i, 1)
        return None

    def is_normalized(self) -> bool:
        return self.first_unnormalized_cell() is None

    def __eq__(self, other) -> bool:
        return isinstance(other, SandwichMatrix) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.entries.shape, self.entries.tobytes()))


class ReesSemigroup:
    def __init__(self, group: FiniteGroup, matrix: SandwichMatrix, name: str = "S"):
        self.group = group
        self.matrix = matrix
        self.name = name
        self.normalized = matrix.is_normalized()
        # padded copy so 1-based index arrays can address it directly
        padded = np.zeros((matrix.rows + 1, matrix.cols + 1), dtype=np.intp)
        padded[1:, 1:] = matrix.entries
        padded.setflags(write=False)
        self.P1 = padded
        self._table = None
        self._inv_codes = None

    @property
    def lambda_count(self) -> int:
        return self.matrix.cols

    @property
    def i_count(self) -> int:
        return self.matrix.rows

    @property
    def order(self) -> int:
        return self.lambda_count * self.group.order * self.i_count

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return (
            f"ReesSemigroup({self.name!r}, G={self.group.name}, "
            f"|Lambda|={self.lambda_count}, |I|={self.i_count}, |S|={self.order})"
        )

    # element coding: lexicographic order of (lam, g, i) is code order
    def code(self, s: RElement) -> int:
        return ((s.lam - 1) * self.group.order + s.g) * self.i_count + (s.i - 1)

    def element(self, code: int) -> RElement:
        rest, i0 = divmod(int(code), self.i_count)
        lam0, g = divmod(rest, self.group.order)
        return RElement(lam0 + 1, g, i0 + 1)

    def elements(self) -> Iterator[RElement]:
        for lam in range(1, self.lambda_count + 1):
            for g in range(self.group.order):
                for i in range(1, self.i_count + 1):
                    yield RElement(lam, g, i)

    def contains(self, s) -> bool:
        return (
            1 <= s[0] <= self.lambda_count
            and 0 <= s[1] < self.group.order
            and 1 <= s[2] <= self.i_count
        )

    def check(self, s) -> RElement:
        if not self.contains(s):
            raise SemigroupError(f"{tuple(s)} is not an element of {self.name}")
        return RElement(*s)

    @property
    def one(self) -> RElement:
        """The identity ``(1,1,1)`` of Gamma; only meaningful for normalized S."""
        return RElement(1, 0, 1)

    def label(self, s: RElement) -> str:
        return f"({s.lam},{self.group.label(s.g)},{s.i})"

    def multiply(self, s: RElement, t: RElement) -> RElement:
        G = self.group
        return RElement(s.lam, G.op(G.op(s.g, self.matrix(s.i, t.lam)), t.g), t.i)

    def invert(self, s: RElement) -> RElement:
        G = self.group
        pinv = G.inv(self.matrix(s.i, s.lam))
        return RElement(s.lam, G.op(G.op(pinv, G.inv(s.g)), pinv), s.i)

    def idempotent(self, lam: int, i: int) -> RElement:
        return RElement(lam, self.group.inv(self.matrix(i, lam)), i)

    def require_normalized(self) -> None:
        cell = self.matrix.first_unnormalized_cell()
        if cell is not None:
            raise NotNormalized(cell)

    def tables(self, force: bool = False) -> tuple[np.ndarray, np.ndarray]:
        """Multiplication and inversion tables on element codes."""
        if self._table is None:
            if self.order > SOFT_CAP and not force:
                raise CapExceeded(f"|S|={self.order} exceeds dense cap {SOFT_CAP}", hint="pass force=True")
            codes = np.arange(self.order)
            lam, g, i = self.decode(codes)
            T, Gi = self.group.table, self.group.inverse
            mg = T[T[g[:, None], self.P1[i[:, None], lam[None, :]]], g[None, :]]
            ml = np.broadcast_to(lam[:, None], mg.shape)
            mi = np.broadcast_to(i[None, :], mg.shape)
            table = self.encode(ml, mg, mi)
            pinv = Gi[self.P1[i, lam]]
            inv = self.encode(lam, T[T[pinv, Gi[g]], pinv], i)
            table.setflags(write=False)
            inv.setflags(write=False)
            self._table, self._inv_codes = table, inv
        return self._table, self._inv_codes

    def decode(self, codes):
        codes = np.asarray(codes)
        rest, i0 = np.divmod(codes, self.i_count)
        lam0, g = np.divmod(rest, self.group.order)
        return lam0 + 1, g, i0 + 1

    def encode(self, lam, g, i):
        return ((np.asarray(lam) - 1) * self.group.order + g) * self.i_count + (np.asarray(i) - 1)

    # vectorised arithmetic on (lam, g, i) array triples
    def multiply_arrays(self, a, b):
        T = self.group.table
        return a[0], T[T[a[1], self.P1[a[2], b[0]]], b[1]], b[2]

    def invert_arrays(self, a):
        T, Gi = self.group.table, self.group.inverse
        pinv = Gi[self.P1[a[2], a[0]]]
        return a[0], T[T[pinv, Gi[a[1]]], pinv], a[2]


def rees_new(
    G: FiniteGroup,
    P: SandwichMatrix | Sequence[Sequence[int]],
    strict: bool = True,
    name: str = "S",
    allow_large: bool = False,
) -> ReesSemigroup:
    """Build ``(G, P, Lambda, I)``; ``strict`` rejects non-normalized matrices."""
    if not isinstance(P, SandwichMatrix):
        try:
            P = SandwichMatrix.from_rows(P)
        except ValueError as exc:
            raise DimensionMismatch(f"ragged sandwich matrix: {exc}") from None
    if P.entries.min() < 0 or P.entries.max() >= G.order:
        raise SemigroupError("sandwich matrix entries must be elements of the structural group")
    size = P.rows * P.cols * G.order
    if size > HARD_CAP and not allow_large:
        raise CapExceeded(f"|S|={size} exceeds hard cap {HARD_CAP}", hint="pass allow_large=True")
    if strict:
        cell = P.first_unnormalized_cell()
        if cell is not None:
            raise NotNormalized(cell)
    return ReesSemigroup(G, P, name)


def singular_witness(P: SandwichMatrix) -> tuple[str, int, int] | None:
    """Least pair of equal rows, else least pair of equal columns, else ``None``."""
    for a, b in itertools.combinations(range(1, P.rows + 1), 2):
        if P.row(a) == P.row(b):
            return ("rows", a, b)
    for a, b in itertools.combinations(range(1, P.cols + 1), 2):
        if P.col(a) == P.col(b):
            return ("cols", a, b)
    return None


@dataclass(frozen=True)
class Normalization:
    matrix: SandwichMatrix
    semigroup: ReesSemigroup
    left: tuple[int, ...]  # a_lam, indexed by lam-1
    right: tuple[int, ...]  # b_i, indexed by i-1

    def __call__(self, s: RElement) -> RElement:
        """Image of an element of the original semigroup."""
        G = self.semigroup.group
        return RElement(s.lam, G.op(G.op(self.left[s.lam - 1], s.g), self.right[s.i - 1]), s.i)

    def inverse(self, s: RElement) -> RElement:
        G = self.semigroup.group
        a = G.inv(self.left[s.lam - 1])
        b = G.inv(self.right[s.i - 1])
        return RElement(s.lam, G.op(G.op(a, s.g), b), s.i)


def normalize_matrix(S: ReesSemigroup, verify: bool = True) -> Normalization:
    """Isomorphic copy of ``S`` with a normalized sandwich matrix.

    ``q[i, lam] = p[1,1] p[i,1]^-1 p[i,lam] p[1,lam]^-1`` and the isomorphism is
    ``(lam, g, i) -> (lam, p[1,lam] g p[i,1] p[1,1]^-1, i)``.
    """
    G, P = S.group, S.matrix
    p11 = P(1, 1)
    left = tuple(P(1, lam) for lam in range(1, P.cols + 1))
    right = tuple(G.op(P(i, 1), G.inv(p11)) for i in range(1, P.rows + 1))
    rows = [
        [
            G.op(G.op(G.op(p11, G.inv(P(i, 1))), P(i, lam)), G.inv(P(1, lam)))
            for lam in range(1, P.cols + 1)
        ]
        for i in range(1, P.rows + 1)
    ]
    Q = SandwichMatrix.from_rows(rows)
    T = ReesSemigroup(G, Q, name=S.name + "'")
    norm = Normalization(Q, T, left, right)
    if verify:
        if not Q.is_normalized():
            raise IsomorphismCheckFailed("normalized matrix has a non-identity border entry")
        _verify_isomorphism(S, T, norm)
    return norm


def _verify_isomorphism(S: ReesSemigroup, T: ReesSemigroup, phi: Normalization) -> None:
    codes = np.arange(S.order)
    lam, g, i = S.decode(codes)
    Gt = S.group.table
    img = (lam, Gt[Gt[np.asarray(phi.left)[lam - 1], g], np.asarray(phi.right)[i - 1]], i)
    img_code = T.encode(*img)
    if len(np.unique(img_code)) != S.order:
        raise IsomorphismCheckFailed("normalization map is not injective")
    for c in range(S.order):
        prod = S.multiply_arrays((lam[c], g[c], i[c]), (lam, g, i))
        lhs = img_code[S.encode(*(np.broadcast_to(x, codes.shape) for x in prod))]
        rhs = T.encode(*(np.broadcast_to(x, codes.shape) for x in T.multiply_arrays((img[0][c], img[1][c], img[2][c]), img)))
        if not np.array_equal(lhs, rhs):
            raise IsomorphismCheckFailed(f"product not preserved for left factor {S.element(c)}")


def gamma_embed(S: ReesSemigroup, g: int) -> RElement:
    S.require_normalized()
    return RElement(1, g, 1)


def gamma_project(S: ReesSemigroup, s: RElement) -> int:
    S.require_normalized()
    if s.lam != 1 or s.i != 1:
        raise NotInGamma(f"{tuple(s)} does not lie in Gamma")
    return s.g


def gamma(S: ReesSemigroup) -> list[RElement]:
    return [gamma_embed(S, g) for g in S.group.elements()]


def subsemigroup_closure(S: ReesSemigroup, gens: Iterable[RElement]) -> frozenset[RElement]:
    gens = sorted({S.check(s) for s in gens})
    if not gens:
        raise NotASubsemigroup("generating set must be nonempty")
    members = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for s in frontier:
            cands = [S.invert(s)]
            for t in list(members):
                cands.append(S.multiply(s, t))
                cands.append(S.multiply(t, s))
            for c in cands:
                if c not in members:
                    members.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(members)


def check_closed(S: ReesSemigroup, T: Iterable[RElement]) -> frozenset[RElement]:
    T = frozenset(S.check(s) for s in T)
    if not T:
        raise NotClosed("empty set is not a subsemigroup")
    for s in sorted(T):
        if S.invert(s) not in T:
            raise NotClosed(f"not closed under inversion at {tuple(s)}", witness=(s,))
        for t in sorted(T):
            if S.multiply(s, t) not in T:
                raise NotClosed(f"not closed under product at ({tuple(s)}, {tuple(t)})", witness=(s, t))
    return T


@dataclass(frozen=True)
class SubsemigroupStructure:
    H: Subgroup
    lambdas: tuple[int, ...]
    indices: tuple[int, ...]
    matrix: SandwichMatrix
    base: tuple[int, int]  # (lam0, i0) used to identify H


def rees_structure_of(
    S: ReesSemigroup, T: Iterable[RElement], base: tuple[int, int] | None = None
) -> SubsemigroupStructure:
    """Recover ``T = (H, P', Lambda', I')`` for a closed subset ``T``.

    ``H`` is read off the cell ``(lam0, i0)`` (least by default) through the
    group isomorphism ``(lam0, g, i0) -> p[i0, lam0] * g``.
    """
    T = check_closed(S, T)
    lambdas = tuple(sorted({s.lam for s in T}))
    indices = tuple(sorted({s.i for s in T}))
    lam0, i0 = base if base is not None else (lambdas[0], indices[0])
    if lam0 not in lambdas or i0 not in indices:
        raise SemigroupError(f"base cell {(lam0, i0)} is not occupied by T")
    G = S.group
    p = S.matrix(i0, lam0)
    H = Subgroup(G, frozenset(G.op(p, s.g) for s in T if s.lam == lam0 and s.i == i0))
    validate_subgroup(G, H)
    sub = SandwichMatrix.from_rows([[S.matrix(i, lam) for lam in lambdas] for i in indices])
    return SubsemigroupStructure(H, lambdas, indices, sub, (lam0, i0))


def _normalized(S: ReesSemigroup) -> tuple[ReesSemigroup, str]:
    if S.normalized:
        return S, ""
    return normalize_matrix(S).semigroup, " (after normalization)"


def decide_ed(S: ReesSemigroup) -> Verdict:
    """Equational-domain verdict: non-singular sandwich matrix and e.d. structural group."""
    N, note = _normalized(S)
    w = singular_witness(N.matrix)
    if w is not None:
        kind, a, b = w
        return Verdict(False, ("singular", kind, a, b), f"equal {kind} {a} and {b} in sandwich matrix{note}")
    gv = is_group_ed(N.group)
    if not gv.holds:
        _, x, y = gv.certificate
        return Verdict(False, ("zero-divisor", x, y), gv.reason + " (structural group)")
    return Verdict(True, None, f"non-singular sandwich matrix{note} and {gv.reason}")


def decide_ed_rel(S: ReesSemigroup, T: Iterable[RElement], base: tuple[int, int] | None = None) -> Verdict:
    """E.d. verdict in the language whose constants come from the subsemigroup ``T``."""
    T = frozenset(T)
    try:
        st = rees_structure_of(S, T, base=base)
    except NotClosed as exc:
        raise NotASubsemigroup(str(exc), witness=exc.witness) from None
    w = singular_witness(S.matrix if S.normalized else normalize_matrix(S).matrix)
    if w is not None:
        kind, a, b = w
        return Verdict(False, ("singular", kind, a, b), f"equal {kind} {a} and {b} in sandwich matrix")
    gv = is_group_ed(S.group, st.H)
    if not gv.holds:
        _, x, y = gv.certificate
        return Verdict(False, ("H-zero-divisor", x, y), gv.reason + f" with |H|={st.H.order}")
    return Verdict(True, None, f"non-singular sandwich matrix and {gv.reason} relative to |H|={st.H.order}")
