"""Solution sets by enumeration, and verification of claimed solution sets.

Points of ``S^n`` are enumerated in lexicographic order of their triples, so
every reported counterexample is the least one.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ArityMismatch, CapExceeded
from .rees import ReesSemigroup, RElement
from .terms import Equation, EquationSystem, PointBatch, holds_batch, satisfies

DENSE_POINT_CAP = 1 << 20
FALLBACK_BUDGET = 10_000
_CHUNK = 4096

Point = tuple[RElement, ...]


@dataclass(frozen=True)
class SolutionSet:
    arity: int
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(tuple(RElement(*s) for s in p) for p in self.members))
        for p in self.members:
            if len(p) != self.arity:
                raise ArityMismatch(f"point {p} does not have arity {self.arity}")

    def __contains__(self, p) -> bool:
        return tuple(RElement(*s) for s in p) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def export(self, S: ReesSemigroup) -> str:
        return "".join("(" + ", ".join(S.label(s) for s in p) + ")\n" for p in sorted(self.members))


def all_points(S: ReesSemigroup, n: int):
    return itertools.product(list(S.elements()), repeat=n)


def full_set(S: ReesSemigroup, n: int) -> SolutionSet:
    return SolutionSet(n, frozenset(all_points(S, n)))


def _grid(S: ReesSemigroup, n: int, cap: int) -> PointBatch:
    total = S.order ** n
    if total > cap:
        raise CapExceeded(
            f"|S|^{n} = {total} points exceeds dense cap {cap}",
            hint="use verify_equals with strategy='targeted' and a hint",
        )
    codes = np.indices((S.order,) * n).reshape(n, -1).T if n else np.zeros((1, 0), dtype=np.intp)
    return PointBatch(S, codes)


def _points_of(S: ReesSemigroup, batch: PointBatch, mask: np.ndarray) -> frozenset:
    return frozenset(tuple(S.element(c) for c in row) for row in batch.codes[mask])


def solve(S: ReesSemigroup, system: EquationSystem, n: int | None = None, cap: int = DENSE_POINT_CAP) -> SolutionSet:
    """Exact solution set by enumerating every point of ``S^n``."""
    n = system.arity if n is None else n
    if n < system.arity:
        raise ArityMismatch(f"system needs arity {system.arity}, got {n}")
    batch = _grid(S, n, cap)
    mask = np.ones(batch.size, dtype=bool)
    memo: dict = {}
    seen: set = set()
    for eq in system.equations:
        if eq in seen:
            continue
        seen.add(eq)
        mask &= holds_batch(S, eq, batch, memo)
        if not mask.any():
            break
    return SolutionSet(n, _points_of(S, batch, mask))


class Status(str, Enum):
    CONFIRMED = "confirmed"
    PROPER_SUPERSET = "V strictly contains claimed set"
    CLAIMED_POINT_FAILS = "claimed point is not a solution"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class VerifyVerdict:
    status: Status
    counterexample: Point | None = None
    equation_index: int | None = None
    checked_equations: int = 0
    checked_points: int = 0

    @property
    def confirmed(self) -> bool:
        return self.status is Status.CONFIRMED


def _check_claimed(S, equations: Sequence[Equation], batch: PointBatch, start: int, stop: int):
    """First (equation index, point row) in ``[start, stop)`` that some claimed point fails."""
    memo: dict = {}
    seen: dict = {}
    for k in range(start, stop):
        eq = equations[k]
        if eq in seen:
            continue
        seen[eq] = k
        ok = holds_batch(S, eq, batch, memo)
        if not ok.all():
            return k, int(np.flatnonzero(~ok)[0])
        if len(memo) > 50_000:
            memo.clear()
    return None


def verify_equals(
    S: ReesSemigroup,
    system: EquationSystem,
    claimed: SolutionSet,
    strategy: str = "dense",
    hint: Callable[[Point], int | None] | None = None,
    fallback_budget: int = FALLBACK_BUDGET,
    threads: int = 1,
    cap: int = DENSE_POINT_CAP,
) -> VerifyVerdict:
    """Check ``V_S(system) == claimed``.

    ``dense`` solves the system outright. ``targeted`` checks every claimed
    point against every equation, then each other point against the equation
    index ``hint(point)`` (or ``system.equations.hint`` when present); when the
    hinted equation holds, the first ``fallback_budget`` equations are scanned
    before giving up as undetermined.
    """
    n = claimed.arity
    eqs = system.equations
    if strategy == "dense":
        V = solve(S, system, n, cap=cap)
        missing = sorted(claimed.members - V.members)
        if missing:
            p = missing[0]
            k = next(k for k, eq in enumerate(eqs) if not satisfies(S, p, eq))
            return VerifyVerdict(Status.CLAIMED_POINT_FAILS, p, k, len(eqs), S.order ** n)
        extra = sorted(V.members - claimed.members)
        if extra:
            return VerifyVerdict(Status.PROPER_SUPERSET, extra[0], None, len(eqs), S.order ** n)
        return VerifyVerdict(Status.CONFIRMED, None, None, len(eqs), S.order ** n)
    if strategy != "targeted":
        raise ValueError(f"unknown strategy {strategy!r}")

    if hint is None:
        hint = getattr(eqs, "hint", None)
        if hint is None:
            raise ValueError("targeted verification needs a hint")

    size = len(eqs)
    pts = sorted(claimed.members)
    if pts:
        batch = PointBatch.from_points(S, pts, n)
        bounds = np.linspace(0, size, max(threads, 1) + 1, dtype=np.int64)
        ranges = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        if threads > 1:
            with ThreadPoolExecutor(threads) as ex:
                found = list(ex.map(lambda r: _check_claimed(S, eqs, batch, *r), ranges))
        else:
            found = [_check_claimed(S, eqs, batch, *r) for r in ranges]
        fails = [f for f in found if f is not None]
        if fails:
            k, row = min(fails)
            # least failing point for the least failing equation
            mask = holds_batch(S, eqs[k], batch)
            row = int(np.flatnonzero(~mask)[0])
            return VerifyVerdict(Status.CLAIMED_POINT_FAILS, pts[row], k, size, len(pts))

    undetermined = None
    checked = 0
    for p in all_points(S, n):
        if p in claimed.members:
            continue
        checked += 1
        k = hint(p)
        if k is not None and not satisfies(S, p, eqs[k]):
            continue
        budget = min(size, fallback_budget)
        if any(not satisfies(S, p, eqs[j]) for j in range(budget)):
            continue
        if budget == size:
            return VerifyVerdict(Status.PROPER_SUPERSET, p, None, size, len(pts) + checked)
        if undetermined is None:
            undetermined = p
    if undetermined is not None:
        return VerifyVerdict(Status.UNDETERMINED, undetermined, None, size, len(pts) + checked)
    return VerifyVerdict(Status.CONFIRMED, None, None, size, len(pts) + checked)


def check_points_sampled(
    S: ReesSemigroup,
    equations: Sequence[Equation],
    points: Sequence[Point],
    indices: Iterable[int],
) -> list[tuple[int, Point]]:
    """Violations ``(equation index, point)`` over a sample of equations and points."""
    if not points:
        return []
    batch = PointBatch.from_points(S, points, len(points[0]))
    bad = []
    for k in indices:
        ok = holds_batch(S, equations[k], batch)
        for row in np.flatnonzero(~ok):
            bad.append((k, points[row]))
    return bad


def check_hinted_failures(
    S: ReesSemigroup,
    equations: Sequence[Equation],
    points: Sequence[Point],
    hint: Callable[[Point], int | None],
) -> list[Point]:
    """Points that do NOT fail their hinted equation."""
    return [p for p in points if (k := hint(p)) is None or satisfies(S, p, equations[k])]
