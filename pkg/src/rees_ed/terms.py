"""Terms, equations and systems over a Rees matrix semigroup with constants.

Concrete syntax::

    system   = { equation NEWLINE }
    equation = term "=" term
    term     = factor { "." factor }
    factor   = atom [ "'" | "^-1" ]
    atom     = var | const | "(" term ")"
    var      = "x" digits
    const    = "c[" index "," label "," index "]"

Products are binary trees, but equality and hashing treat them as words:
``(a.b).c == a.(b.c)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import ArityMismatch, ParseError
from .rees import ReesSemigroup, RElement

_MOD = (1 << 61) - 1
_BASE = 1_000_003


class Term:
    """Base class. Subclasses are immutable and cache an associativity-invariant hash."""

    __slots__ = ("_h", "_pw", "_size")

    def __hash__(self) -> int:
        return self._h

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term) or self._h != other._h or self._size != other._size:
            return False
        a, b = factors(self), factors(other)
        return len(a) == len(b) and all(x.atom_eq(y) for x, y in zip(a, b))

    def atom_eq(self, other: "Term") -> bool:
        raise NotImplementedError

    def __mul__(self, other: "Term") -> "Product":
        return Product(self, other)

    def inv(self) -> "Inverse":
        return Inverse(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}<{render(self)}>"


def _atom_init(obj: Term, key: tuple) -> None:
    obj._h = hash(key) % _MOD
    obj._pw = _BASE
    obj._size = 1


class Variable(Term):
    __slots__ = ("k",)

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("variable indices are 1-based")
        self.k = k
        _atom_init(self, (1, k))

    def atom_eq(self, other):
        return isinstance(other, Variable) and other.k == self.k


class Constant(Term):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = RElement(*value)
        _atom_init(self, (2,) + tuple(self.value))

    def atom_eq(self, other):
        return isinstance(other, Constant) and other.value == self.value


class Inverse(Term):
    __slots__ = ("arg",)

    def __init__(self, arg: Term):
        self.arg = arg
        _atom_init(self, (3, arg._h, arg._size))

    def atom_eq(self, other):
        return isinstance(other, Inverse) and other.arg == self.arg


class Product(Term):
    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term):
        self.left = left
        self.right = right
        self._h = (left._h * right._pw + right._h) % _MOD
        self._pw = (left._pw * right._pw) % _MOD
        self._size = left._size + right._size


def factors(t: Term) -> list[Term]:
    """Maximal non-product subterms, left to right."""
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Product):
            stack.append(u.right)
            stack.append(u.left)
        else:
            out.append(u)
    return out


def product(parts: Sequence[Term]) -> Term:
    """Left-associated product of a nonempty sequence."""
    it = iter(parts)
    acc = next(it)
    for p in it:
        acc = Product(acc, p)
    return acc


def var(k: int) -> Variable:
    return Variable(k)


def const(lam: int, g: int, i: int) -> Constant:
    return Constant(RElement(lam, g, i))


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def arity(self) -> int:
        return max(max_variable(self.lhs), max_variable(self.rhs))


@dataclass(frozen=True)
class EquationSystem:
    """A system in ``arity`` variables; ``equations`` may be a list or a lazy family."""

    arity: int
    equations: Sequence[Equation]

    def __post_init__(self):
        if isinstance(self.equations, list):
            object.__setattr__(self, "equations", tuple(self.equations))
            for k, eq in enumerate(self.equations):
                if eq.arity() > self.arity:
                    raise ArityMismatch(f"equation {k} uses x{eq.arity()} but arity is {self.arity}")

    def __len__(self) -> int:
        return len(self.equations)

    def __iter__(self) -> Iterator[Equation]:
        return iter(self.equations)

    def union(self, other: "EquationSystem") -> "EquationSystem":
        return EquationSystem(max(self.arity, other.arity), list(self.equations) + list(other.equations))


def max_variable(t: Term) -> int:
    best = 0
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Variable):
            best = max(best, u.k)
        elif isinstance(u, Product):
            stack.extend((u.left, u.right))
        elif isinstance(u, Inverse):
            stack.append(u.arg)
    return best


def constants_of(t: Term) -> Iterator[RElement]:
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Constant):
            yield u.value
        elif isinstance(u, Product):
            stack.extend((u.right, u.left))
        elif isinstance(u, Inverse):
            stack.append(u.arg)


# rendering ---------------------------------------------------------------

def _label(S: ReesSemigroup | None, g: int) -> str:
    return S.group.label(g) if S is not None else str(g)


def render(t: Term, S: ReesSemigroup | None = None) -> str:
    return " . ".join(_render_factor(f, S) for f in factors(t))


def _render_factor(t: Term, S) -> str:
    if isinstance(t, Variable):
        return f"x{t.k}"
    if isinstance(t, Constant):
        v = t.value
        return f"c[{v.lam},{_label(S, v.g)},{v.i}]"
    if isinstance(t, Inverse):
        a = t.arg
        if isinstance(a, (Variable, Constant)):
            return _render_factor(a, S) + "'"
        return "(" + render(a, S) + ")'"
    raise TypeError(t)


def render_equation(eq: Equation, S: ReesSemigroup | None = None) -> str:
    return f"{render(eq.lhs, S)} = {render(eq.rhs, S)}"


# parsing -----------------------------------------------------------------

_ATOM_START = frozenset({"variable", "constant", "("})


class _Parser:
    def __init__(self, text: str, S: ReesSemigroup | None, line: int | None):
        self.text = text
        self.pos = 0
        self.S = S
        self.line = line

    def error(self, message, expected=(), pos=None):
        raise ParseError(message, self.pos if pos is None else pos, expected, self.line)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def term(self) -> Term:
        acc = self.factor()
        while self.peek() == ".":
            self.pos += 1
            acc = Product(acc, self.factor())
        return acc

    def factor(self) -> Term:
        a = self.atom()
        c = self.peek()
        if c == "'":
            self.pos += 1
            return Inverse(a)
        if c == "^":
            if self.text.startswith("^-1", self.pos):
                self.pos += 3
                return Inverse(a)
            self.error("malformed inversion", {"^-1"})
        return a

    def atom(self) -> Term:
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            t = self.term()
            if self.peek() != ")":
                self.error("unclosed parenthesis", {")", "."})
            self.pos += 1
            return t
        if c == "x":
            self.pos += 1
            digits = self._digits()
            if not digits:
                self.error("variable needs an index", {"digits"})
            k = int(digits)
            if k < 1:
                self.error("variable indices start at 1", pos=start)
            return Variable(k)
        if c == "c":
            return self.constant()
        self.error("expected a term", _ATOM_START)

    def _digits(self) -> str:
        st = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.text[st:self.pos]

    def _expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}", {ch})
        self.pos += 1

    def constant(self) -> Constant:
        start = self.pos
        self.pos += 1
        if self.pos >= len(self.text) or self.text[self.pos] != "[":
            self.error("expected '[' after 'c'", {"["})
        self.pos += 1
        self.skip()
        lam = self._digits()
        if not lam:
            self.error("expected first index", {"digits"})
        self._expect(",")
        self.skip()
        lab_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ",] \t\n":
            self.pos += 1
        label = self.text[lab_start:self.pos]
        if not label:
            self.error("expected group element label", {"label"})
        self._expect(",")
        self.skip()
        i = self._digits()
        if not i:
            self.error("expected second index", {"digits"})
        self._expect("]")
        g = self._resolve(label, lab_start)
        value = RElement(int(lam), g, int(i))
        if self.S is not None and not self.S.contains(value):
            self.error(f"constant c[{lam},{label},{i}] is not an element of {self.S.name}", pos=start)
        return Constant(value)

    def _resolve(self, label: str, pos: int) -> int:
        if self.S is None:
            if label.isdigit():
                return int(label)
            self.error(f"label {label!r} needs a semigroup to resolve", pos=pos)
        try:
            return self.S.group.index_of(label)
        except Exception:
            self.error(f"unknown group element {label!r}", pos=pos)


def parse_term(text: str, S: ReesSemigroup | None = None, line: int | None = None) -> Term:
    p = _Parser(text, S, line)
    t = p.term()
    if not p.at_end():
        p.error("unexpected trailing input", {".", "end of input"})
    return t


def parse_equation(text: str, S: ReesSemigroup | None = None, line: int | None = None) -> Equation:
    p = _Parser(text, S, line)
    lhs = p.term()
    if p.peek() != "=":
        p.error("expected '='", {"=", "."})
    p.pos += 1
    rhs = p.term()
    if not p.at_end():
        p.error("unexpected trailing input", {".", "end of input"})
    return Equation(lhs, rhs)


def parse_system(text: str, S: ReesSemigroup | None = None, arity: int | None = None) -> EquationSystem:
    eqs = []
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        eqs.append(parse_equation(body, S, line=n))
    if arity is None:
        arity = max((e.arity() for e in eqs), default=0)
    return EquationSystem(arity, eqs)


# evaluation --------------------------------------------------------------

def evaluate(S: ReesSemigroup, t: Term, point: Sequence[RElement]) -> RElement:
    """Value of ``t`` at ``point`` using the semigroup's own multiply and invert."""
    if isinstance(t, Variable):
        if t.k > len(point):
            raise ArityMismatch(f"x{t.k} evaluated at a point of length {len(point)}")
        return RElement(*point[t.k - 1])
    if isinstance(t, Constant):
        return t.value
    if isinstance(t, Inverse):
        return S.invert(evaluate(S, t.arg, point))
    acc = None
    for f in factors(t):
        v = evaluate(S, f, point)
        acc = v if acc is None else S.multiply(acc, v)
    return acc


def satisfies(S: ReesSemigroup, point: Sequence[RElement], eq: Equation) -> bool:
    return evaluate(S, eq.lhs, point) == evaluate(S, eq.rhs, point)


class PointBatch:
    """Columns of ``(lam, g, i)`` arrays, one triple per variable."""

    def __init__(self, S: ReesSemigroup, codes: np.ndarray):
        codes = np.atleast_2d(np.asarray(codes, dtype=np.intp))
        self.S = S
        self.codes = codes
        self.size = codes.shape[0]
        self.columns = [S.decode(codes[:, k]) for k in range(codes.shape[1])]

    @classmethod
    def from_points(cls, S: ReesSemigroup, points: Sequence[Sequence[RElement]], arity: int) -> "PointBatch":
        codes = np.array([[S.code(RElement(*p)) for p in pt] for pt in points], dtype=np.intp).reshape(len(points), arity)
        return cls(S, codes)

    @property
    def arity(self) -> int:
        return self.codes.shape[1]


def evaluate_batch(S: ReesSemigroup, t: Term, batch: PointBatch, memo: dict | None = None):
    """Vectorised value of ``t`` over every point of ``batch`` as ``(lam, g, i)`` arrays.

    ``memo`` caches values of compound subterms; terms equal as words share entries.
    """
    if memo is None:
        memo = {}
    return _eval_arrays(S, t, batch, memo)


def _eval_arrays(S, t, batch, memo):
    if isinstance(t, Variable):
        if t.k > batch.arity:
            raise ArityMismatch(f"x{t.k} evaluated on points of arity {batch.arity}")
        return batch.columns[t.k - 1]
    if isinstance(t, Constant):
        return t.value
    hit = memo.get(t)
    if hit is not None:
        return hit
    if isinstance(t, Inverse):
        val = S.invert_arrays(_eval_arrays(S, t.arg, batch, memo))
    else:
        val = S.multiply_arrays(_eval_arrays(S, t.left, batch, memo), _eval_arrays(S, t.right, batch, memo))
    memo[t] = val
    return val


def holds_batch(S: ReesSemigroup, eq: Equation, batch: PointBatch, memo: dict | None = None) -> np.ndarray:
    """Boolean mask of the points of ``batch`` satisfying ``eq``."""
    if memo is None:
        memo = {}
    a = _eval_arrays(S, eq.lhs, batch, memo)
    b = _eval_arrays(S, eq.rhs, batch, memo)
    m = (np.asarray(a[0]) == b[0]) & (np.asarray(a[1]) == b[1]) & (np.asarray(a[2]) == b[2])
    return np.broadcast_to(m, (batch.size,))


# inversion erasure and boundary symbols ---------------------------------

def erase_inversions(t: Term) -> Term:
    """The word obtained by deleting every inversion, factor order kept."""
    return product([f if not isinstance(f, Inverse) else erase_inversions(f.arg) for f in factors(t)])


def boundary_symbol(t: Term, end: str = "first") -> Term:
    if end not in ("first", "last"):
        raise ValueError("end must be 'first' or 'last'")
    fs = factors(erase_inversions(t))
    return fs[0] if end == "first" else fs[-1]


# substitution -------------------------------------------------------------

def substitute_term(t: Term, bindings: dict[int, Term], memo: dict | None = None) -> Term:
    """Replace each ``Variable(k)`` in ``bindings`` by its term; shared subterms stay shared."""
    if memo is None:
        memo = {}
    key = id(t)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(t, Variable):
        out = bindings.get(t.k, t)
    elif isinstance(t, Constant):
        out = t
    elif isinstance(t, Inverse):
        a = substitute_term(t.arg, bindings, memo)
        out = t if a is t.arg else Inverse(a)
    else:
        left = substitute_term(t.left, bindings, memo)
        right = substitute_term(t.right, bindings, memo)
        out = t if (left is t.left and right is t.right) else Product(left, right)
    memo[key] = (t, out)
    return out


# random terms --------------------------------------------------------------

def random_term(
    rng: random.Random,
    S: ReesSemigroup | None,
    arity: int,
    depth: int,
    const_pool: Sequence[RElement] | None = None,
) -> Term:
    """Random term of depth at most ``depth`` (atoms have depth 0)."""
    if const_pool is None:
        const_pool = list(S.elements()) if S is not None else [RElement(1, 0, 1)]

    def atom():
        if rng.random() < 0.6:
            return Variable(rng.randint(1, arity))
        return Constant(rng.choice(const_pool))

    def go(d):
        if d == 0 or rng.random() < 0.25:
            return atom()
        if rng.random() < 0.3:
            return Inverse(go(d - 1))
        return Product(go(d - 1), go(d - 1))

    return go(depth)


def random_equation(rng, S, arity, depth, const_pool=None) -> Equation:
    return Equation(random_term(rng, S, arity, depth, const_pool), random_term(rng, S, arity, depth, const_pool))


def map_constants(t: Term, fn: Callable[[RElement], RElement]) -> Term:
    if isinstance(t, Constant):
        return Constant(fn(t.value))
    if isinstance(t, Variable):
        return t
    if isinstance(t, Inverse):
        return Inverse(map_constants(t.arg, fn))
    return Product(map_constants(t.left, fn), map_constants(t.right, fn))
