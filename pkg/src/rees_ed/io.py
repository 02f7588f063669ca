"""Line-oriented text formats for groups, semigroups, systems, subsets and point sets.

Group file::

    group <name> order <n>
    table                 # followed by n rows of n indices
    perms                 # or: one cycle-notation permutation per line
    label <index> <string>

Semigroup file::

    semigroup <name>
    group <file-or-builtin>
    lambda <n>
    i <m>
    matrix                # followed by m rows of n element labels

``group`` accepts a path (relative to the semigroup file) or a builtin name
such as ``Z2``, ``S3``, ``A5`` or ``trivial``. Blank lines and ``#`` comments
are ignored everywhere.
"""
from __future__ import annotations

import re
from pathlib import Path

from .errors import DimensionMismatch, ParseError
from .groups import FiniteGroup, make_group, make_group_from_permutations
from .library import builtin_group
from .rees import ReesSemigroup, RElement, rees_new
from .solver import SolutionSet
from .terms import EquationSystem, parse_system

_ELEMENT = re.compile(r"\(\s*(\d+)\s*,\s*([^,\s]+?)\s*,\s*(\d+)\s*\)")


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield n, body


def parse_cycles(text: str, degree: int | None = None, line: int | None = None) -> tuple[int, ...]:
    """``(1 2 3)(4 5)`` or compact ``(123)(45)`` to a 0-based image tuple."""
    s = text.strip()
    cycles = []
    if s not in ("e", "()", "id"):
        if not re.fullmatch(r"(\s*\([^()]*\)\s*)+", s):
            raise ParseError(f"malformed permutation {text!r}", 0, frozenset({"("}), line)
        for body in re.findall(r"\(([^()]*)\)", s):
            body = body.strip()
            toks = re.split(r"[\s.,]+", body) if re.search(r"[\s.,]", body) else list(body)
            if not toks or not all(t.isdigit() and int(t) >= 1 for t in toks):
                raise ParseError(f"bad cycle ({body})", 0, frozenset({"point"}), line)
            pts = [int(t) - 1 for t in toks]
            if len(set(pts)) != len(pts):
                raise ParseError(f"repeated point in cycle ({body})", 0, frozenset({"point"}), line)
            cycles.append(pts)
    d = max([degree or 0] + [p + 1 for c in cycles for p in c])
    img = list(range(d))
    seen = set()
    for c in cycles:
        if seen & set(c):
            raise ParseError("cycles must be disjoint", 0, frozenset(), line)
        seen |= set(c)
        for a, b in zip(c, c[1:] + c[:1]):
            img[a] = b
    return tuple(img)


def parse_group(text: str) -> FiniteGroup:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty group file", 0, frozenset({"group"}), 1)
    n0, head = lines[0]
    m = re.fullmatch(r"group\s+(\S+)\s+order\s+(\d+)", head)
    if not m:
        raise ParseError("expected header 'group <name> order <n>'", 0, frozenset({"group"}), n0)
    name, order = m.group(1), int(m.group(2))
    mode = None
    rows: list[list[int]] = []
    perms: list[str] = []
    labels: dict[int, str] = {}
    degree = None
    for n, body in lines[1:]:
        word = body.split()[0]
        if word in ("table", "perms") and len(body.split()) == 1:
            mode = word
        elif word == "label":
            parts = body.split(None, 2)
            if len(parts) != 3 or not parts[1].isdigit():
                raise ParseError("expected 'label <index> <string>'", 0, frozenset({"label"}), n)
            labels[int(parts[1])] = parts[2]
        elif word == "degree" and mode == "perms":
            degree = int(body.split()[1])
        elif mode == "table":
            try:
                rows.append([int(t) for t in body.split()])
            except ValueError:
                raise ParseError("table rows hold element indices", 0, frozenset({"index"}), n) from None
        elif mode == "perms":
            perms.append((n, body))
        else:
            raise ParseError(f"unexpected line {body!r}", 0, frozenset({"table", "perms", "label"}), n)
    if mode == "table":
        if len(rows) != order or any(len(r) != order for r in rows):
            raise DimensionMismatch(f"table must be {order}x{order}")
        lab = None
        if labels:
            lab = [labels.get(k, "e" if k == 0 else f"g{k}") for k in range(order)]
        return make_group(rows, labels=lab, name=name)
    if mode == "perms":
        imgs = [parse_cycles(p, degree, n) for n, p in perms]
        d = max([degree or 0] + [len(g) for g in imgs])
        G = make_group_from_permutations([g + tuple(range(len(g), d)) for g in imgs], degree=d, name=name)
        if G.order != order:
            raise DimensionMismatch(f"permutations generate a group of order {G.order}, header says {order}")
        if labels:
            G = make_group(G.table, labels=[labels.get(k, G.label(k)) for k in range(order)], name=name)
        return G
    raise ParseError("group file needs a 'table' or 'perms' section", 0, frozenset({"table", "perms"}), n0)


def load_group(path: str | Path) -> FiniteGroup:
    return parse_group(Path(path).read_text())


def parse_semigroup(text: str, base: Path | None = None, strict: bool = True) -> ReesSemigroup:
    name = "S"
    G = None
    lam = ii = None
    rows: list[tuple[int, list[str]]] = []
    in_matrix = False
    for n, body in _lines(text):
        word, _, rest = body.partition(" ")
        rest = rest.strip()
        if word == "semigroup" and not in_matrix:
            name = rest or name
        elif word == "group" and not in_matrix:
            G = builtin_group(rest)
            if G is None:
                p = Path(rest) if base is None else base / rest
                if not p.exists():
                    raise ParseError(f"unknown group {rest!r}", 0, frozenset({"file", "builtin"}), n)
                G = load_group(p)
        elif word == "lambda" and not in_matrix:
            lam = _int(rest, n)
        elif word == "i" and not in_matrix:
            ii = _int(rest, n)
        elif word == "matrix" and not rest:
            in_matrix = True
        elif in_matrix:
            rows.append((n, body.split()))
        else:
            raise ParseError(f"unexpected line {body!r}", 0, frozenset({"semigroup", "group", "lambda", "i", "matrix"}), n)
    if G is None or lam is None or ii is None or not in_matrix:
        raise ParseError("semigroup file needs group, lambda, i and matrix", 0, frozenset({"group", "lambda", "i", "matrix"}), None)
    if len(rows) != ii:
        raise DimensionMismatch(f"matrix has {len(rows)} rows, expected |I| = {ii}")
    entries = []
    for n, labs in rows:
        if len(labs) != lam:
            raise DimensionMismatch(f"matrix row on line {n} has {len(labs)} entries, expected |Lambda| = {lam}")
        entries.append([G.index_of(x) for x in labs])
    return rees_new(G, entries, strict=strict, name=name)


def _int(s: str, line: int) -> int:
    if not s.isdigit() or int(s) < 1:
        raise ParseError(f"expected a positive integer, got {s!r}", 0, frozenset({"integer"}), line)
    return int(s)


def load_semigroup(path: str | Path, strict: bool = True) -> ReesSemigroup:
    p = Path(path)
    return parse_semigroup(p.read_text(), base=p.parent, strict=strict)


def load_system(path: str | Path, S: ReesSemigroup, arity: int | None = None) -> EquationSystem:
    return parse_system(Path(path).read_text(), S, arity)


def parse_element(S: ReesSemigroup, text: str, line: int | None = None) -> RElement:
    m = _ELEMENT.fullmatch(text.strip())
    if not m:
        raise ParseError(f"expected (lambda,label,i), got {text!r}", 0, frozenset({"("}), line)
    try:
        g = S.group.index_of(m.group(2))
    except Exception:
        raise ParseError(f"unknown group element {m.group(2)!r}", m.start(2), frozenset({"label"}), line) from None
    return S.check(RElement(int(m.group(1)), g, int(m.group(3))))


def parse_points(S: ReesSemigroup, text: str, arity: int | None = None) -> SolutionSet:
    """One tuple per line, e.g. ``((1,e,1), (2,a,1))``; the solver export format."""
    pts = []
    for n, body in _lines(text):
        found = [parse_element(S, m.group(0), n) for m in _ELEMENT.finditer(body)]
        if not found:
            raise ParseError("expected a tuple of elements", 0, frozenset({"("}), n)
        pts.append(tuple(found))
    if arity is None:
        arity = len(pts[0]) if pts else 0
    return SolutionSet(arity, frozenset(pts))


def parse_subset(S: ReesSemigroup, text: str) -> frozenset[RElement]:
    """T-file: elements, one per line or several per line."""
    out = []
    for n, body in _lines(text):
        found = list(_ELEMENT.finditer(body))
        if not found:
            raise ParseError("expected an element (lambda,label,i)", 0, frozenset({"("}), n)
        out += [parse_element(S, m.group(0), n) for m in found]
    return frozenset(out)


def render_semigroup(S: ReesSemigroup, group_ref: str) -> str:
    P = S.matrix
    rows = [" ".join(S.group.label(P(i, lam)) for lam in range(1, P.cols + 1)) for i in range(1, P.rows + 1)]
    return "\n".join([f"semigroup {S.name}", f"group {group_ref}", f"lambda {P.cols}", f"i {P.rows}", "matrix"] + rows) + "\n"


def render_group(G: FiniteGroup) -> str:
    out = [f"group {G.name} order {G.order}", "table"]
    out += [" ".join(str(int(x)) for x in row) for row in G.table]
    out += [f"label {k} {G.label(k)}" for k in G.elements()]
    return "\n".join(out) + "\n"
