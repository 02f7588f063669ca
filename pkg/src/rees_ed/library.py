"""Small groups and the Rees matrix semigroups used throughout the tests."""
from __future__ import annotations

from functools import lru_cache

from .groups import FiniteGroup, make_group, make_group_from_permutations
from .rees import ReesSemigroup, rees_new


def cyclic(n: int, name: str | None = None) -> FiniteGroup:
    labels = ["e", "a"] + [f"a{k}" for k in range(2, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return make_group(table, labels=labels[:n], name=name or f"Z{n}")


def trivial() -> FiniteGroup:
    return make_group([[0]], labels=["e"], name="1")


@lru_cache(maxsize=None)
def s3() -> FiniteGroup:
    return make_group_from_permutations([(1, 0, 2), (1, 2, 0)], name="S3")


@lru_cache(maxsize=None)
def a5() -> FiniteGroup:
    return make_group_from_permutations([(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)], name="A5")


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return trivial()
    cyc = tuple(list(range(1, n)) + [0])
    swap = (1, 0) + tuple(range(2, n))
    return make_group_from_permutations([swap, cyc], degree=n, name=f"S{n}")


BUILTIN_GROUPS = {
    "trivial": trivial,
    "1": trivial,
    "S3": s3,
    "A5": a5,
}


def builtin_group(name: str) -> FiniteGroup | None:
    if name in BUILTIN_GROUPS:
        return BUILTIN_GROUPS[name]()
    if name[:1] == "Z" and name[1:].isdigit() and int(name[1:]) >= 1:
        return cyclic(int(name[1:]))
    if name[:1] == "S" and name[1:].isdigit() and 1 <= int(name[1:]) <= 5:
        return symmetric(int(name[1:]))
    return None


def _rees(G: FiniteGroup, rows: list[list[str]], name: str) -> ReesSemigroup:
    return rees_new(G, [[G.index_of(x) for x in row] for row in rows], name=name)


def s_z2() -> ReesSemigroup:
    return _rees(cyclic(2), [["e", "e"], ["e", "a"]], "S_z2")


def rees_z2_1x1() -> ReesSemigroup:
    return _rees(cyclic(2), [["e"]], "Rees(Z2,1x1)")


def rees_s3_1x1() -> ReesSemigroup:
    return _rees(s3(), [["e"]], "Rees(S3,1x1)")


def rees_s3_2x2() -> ReesSemigroup:
    return _rees(s3(), [["e", "e"], ["e", "(123)"]], "Rees(S3,2x2)")


def rees_z3_2x3() -> ReesSemigroup:
    """Non-singular with three columns: over Z2 a normalized 2x3 matrix always repeats a column."""
    return _rees(cyclic(3), [["e", "e", "e"], ["e", "a", "a2"]], "Rees(Z3,2x3)")


def rees_z2_3x3() -> ReesSemigroup:
    return _rees(cyclic(2), [["e", "e", "e"], ["e", "e", "a"], ["e", "a", "e"]], "Rees(Z2,3x3)")


def rees_a5_1x1() -> ReesSemigroup:
    return _rees(a5(), [["e"]], "Rees(A5,1x1)")


def rees_a5_2x2() -> ReesSemigroup:
    return _rees(a5(), [["e", "e"], ["e", "(123)"]], "Rees(A5,2x2)")


def s3_equal_columns() -> ReesSemigroup:
    return _rees(s3(), [["e", "e", "e"], ["e", "e", "(123)"]], "S3 equal columns")


def s3_equal_rows() -> ReesSemigroup:
    return _rees(s3(), [["e", "e"], ["e", "e"], ["e", "(123)"]], "S3 equal rows")


def rectangular_band(rows: int = 2, cols: int = 2) -> ReesSemigroup:
    return _rees(trivial(), [["e"] * cols for _ in range(rows)], f"rectangular band {rows}x{cols}")


def left_zero_band() -> ReesSemigroup:
    """Lambda = {1, 2}, I = {1}: every product keeps the left factor."""
    return _rees(trivial(), [["e", "e"]], "left-zero band 2")


NONSINGULAR = {
    "S_z2": s_z2,
    "Rees(Z2,1x1)": rees_z2_1x1,
    "Rees(S3,1x1)": rees_s3_1x1,
    "Rees(S3,2x2)": rees_s3_2x2,
    "Rees(Z3,2x3)": rees_z3_2x3,
    "Rees(Z2,3x3)": rees_z2_3x3,
    "Rees(A5,1x1)": rees_a5_1x1,
    "Rees(A5,2x2)": rees_a5_2x2,
}

SINGULAR = {
    "S3 equal columns": s3_equal_columns,
    "S3 equal rows": s3_equal_rows,
    "rectangular band 2x2": rectangular_band,
    "left-zero band 2": left_zero_band,
}

SUITE = {**NONSINGULAR, **SINGULAR}


def suite(max_order: int | None = None) -> list[ReesSemigroup]:
    out = [f() for f in SUITE.values()]
    return [S for S in out if max_order is None or S.order <= max_order]
