"""Command-line interface. Reports are ``key: value`` lines on stdout.

Exit codes: 0 success or true verdict, 1 false verdict with certificate,
2 input error, 3 cap or budget exceeded.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import __version__
from .clone import Budget, generate_clone, is_algebraic, m_set, msem_set, oracle_decide_ed
from .constructions import diagonal_system, disjunction_system, msem_system, separating_term
from .errors import CapExceeded, Incomplete, NoSeparator, ReesEdError
from .free import free_css, free_product, identity_violations, sym_decide_ed, sym_singular_witness
from .groups import FiniteGroup, zero_divisors
from .io import load_semigroup, load_system, parse_element, parse_group, parse_points, parse_subset
from .library import builtin_group
from .rees import ReesSemigroup, decide_ed, decide_ed_rel, normalize_matrix, singular_witness
from .solver import DENSE_POINT_CAP, solve
from .terms import render, render_equation

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _out(key: str, value) -> None:
    print(f"{key}: {value}")


def _bool(v: bool | None) -> str:
    return {True: "true", False: "false", None: "undetermined"}[v]


def _load(args) -> ReesSemigroup:
    return load_semigroup(args.semigroup, strict=not args.lenient)


def format_certificate(S: ReesSemigroup, cert: tuple) -> str:
    kind = cert[0]
    lab = S.group.label
    if kind in ("zero-divisor", "H-zero-divisor"):
        return f"{kind} ({lab(cert[1])},{lab(cert[2])}) in structural group"
    if kind == "singular":
        return f"singular: equal {cert[1]} {cert[2]} and {cert[3]}"
    if kind == "m-closure":
        return f"closure of M_c for c={S.label(cert[1])} contains ({', '.join(S.label(s) for s in cert[2])})"
    if kind == "msem-closure":
        return f"closure of M_sem contains ({', '.join(S.label(s) for s in cert[1])})"
    return " ".join(map(str, cert))


def cmd_validate(args) -> int:
    S = _load(args)
    _out("semigroup", S.name)
    _out("group", f"{S.group.name} order {S.group.order}")
    _out("lambda", S.lambda_count)
    _out("i", S.i_count)
    _out("order", S.order)
    _out("normalized", _bool(S.normalized))
    N = S if S.normalized else normalize_matrix(S).semigroup
    w = singular_witness(N.matrix)
    _out("singular", "none" if w is None else f"equal {w[0]} {w[1]} and {w[2]}")
    return EXIT_OK


def cmd_mul(args) -> int:
    S = _load(args)
    a, b = parse_element(S, args.a), parse_element(S, args.b)
    _out("product", S.label(S.multiply(a, b)))
    return EXIT_OK


def cmd_inv(args) -> int:
    S = _load(args)
    _out("inverse", S.label(S.invert(parse_element(S, args.a))))
    return EXIT_OK


def cmd_solve(args) -> int:
    S = _load(args)
    system = load_system(args.system, S, args.arity)
    V = solve(S, system, args.arity, cap=args.cap)
    _out("arity", V.arity)
    _out("size", len(V))
    sys.stdout.write(V.export(S))
    return EXIT_OK


def cmd_decide_ed(args) -> int:
    S = _load(args)
    if args.relative:
        T = parse_subset(S, Path(args.relative).read_text())
        v = decide_ed_rel(S, T)
        _out("language", f"relative, |T|={len(T)}")
    else:
        v = decide_ed(S)
    _out("verdict", "e.d." if v.holds else "not e.d.")
    _out("reason", v.reason)
    if v.certificate is not None:
        _out("certificate", format_certificate(S, v.certificate))
    return EXIT_OK if v.holds else EXIT_FALSE


def cmd_separate(args) -> int:
    S = _load(args)
    s1, s2 = parse_element(S, args.a), parse_element(S, args.b)
    try:
        choice = separating_term(S, s1, s2)
    except NoSeparator as exc:
        _out("separator", "none")
        if exc.dichotomy is not None:
            _out("certificate", format_certificate(S, ("singular",) + tuple(exc.dichotomy)))
        return EXIT_FALSE
    _out("term", render(choice.term, S))
    _out("i", choice.i)
    _out("lambda", choice.lam)
    return EXIT_OK


BUILDERS = {"diag": diagonal_system, "disj": disjunction_system, "msem": msem_system}


def cmd_build(args) -> int:
    S = _load(args)
    fam = BUILDERS[args.family](S)
    if args.count_only:
        _out("family", args.family)
        _out("arity", fam.arity)
        _out("count", len(fam))
        return EXIT_OK
    stop = len(fam) if args.limit is None else min(len(fam), args.limit)
    w = sys.stdout.write
    for k in range(stop):
        w(f"# {k}\n{render_equation(fam[k], S)}\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    S = _load(args)
    budget = Budget(max_functions=args.budget) if args.budget is not None else Budget()
    if args.decide_ed:
        v = oracle_decide_ed(S, budget, route=args.route)
        _out("verdict", {True: "e.d.", False: "not e.d.", None: "undetermined"}[v.holds])
        _out("reason", v.reason)
        if v.certificate is not None:
            _out("certificate", format_certificate(S, v.certificate))
        return {True: EXIT_OK, False: EXIT_FALSE, None: EXIT_CAP}[v.holds]
    if args.set is None:
        raise ReesEdError("oracle needs --set or --decide-ed")
    if args.set == "M":
        Y, n = m_set(S), 2
    elif args.set == "Msem":
        Y, n = msem_set(S), 4
    elif args.set.startswith("@"):
        Y = parse_points(S, Path(args.set[1:]).read_text(), args.arity)
        n = Y.arity
    else:
        raise ReesEdError(f"unknown set {args.set!r}; use M, Msem or @file")
    if args.arity is not None and args.arity != n:
        raise ReesEdError(f"set {args.set} has arity {n}, not {args.arity}")
    table = generate_clone(S, n, budget)
    _out("clone", f"{len(table)} functions, complete={_bool(table.complete)}")
    v = is_algebraic(S, Y, n, table=table)
    _out("algebraic", v.answer)
    if v.witness is not None:
        _out("witness", "(" + ", ".join(S.label(s) for s in v.witness) + ")")
    return {"yes": EXIT_OK, "no": EXIT_FALSE, "undetermined": EXIT_CAP}[v.answer]


def _group_arg(ref: str) -> tuple[FiniteGroup, ReesSemigroup | None]:
    G = builtin_group(ref)
    if G is not None:
        return G, None
    text = Path(ref).read_text()
    first = next((ln.split("#", 1)[0].strip() for ln in text.splitlines() if ln.split("#", 1)[0].strip()), "")
    if first.startswith("group") and " order " in first:
        return parse_group(text), None
    S = load_semigroup(ref, strict=False)
    return S.group, S


def cmd_zero_divisors(args) -> int:
    G, _ = _group_arg(args.group)
    pairs = zero_divisors(G)
    _out("group", f"{G.name} order {G.order}")
    _out("count", len(pairs))
    for x, y in pairs[: args.limit]:
        _out("zero-divisor", f"({G.label(x)},{G.label(y)})")
    return EXIT_OK if not pairs else EXIT_FALSE


def _report_symbolic(S, args) -> int:
    _out("structural group", S.descriptor)
    _out("lambda", S.lambda_count)
    _out("i", S.i_count)
    for k, row in enumerate(S.render_matrix(), start=1):
        _out(f"row {k}", row)
    w = sym_singular_witness(S)
    _out("singular", "none" if w is None else f"equal {w[0]} {w[1]} and {w[2]}")
    if args.check:
        if args.seed is None:
            raise ReesEdError("--check needs --seed")
        bad = identity_violations(S, args.check, seed=args.seed)
        _out("identity checks", f"{args.check} samples, {len(bad)} violations")
    v = sym_decide_ed(S)
    _out("verdict", {True: "e.d.", False: "not e.d.", None: "undetermined"}[v.holds])
    _out("justification", v.reason)
    return {True: EXIT_OK, False: EXIT_FALSE, None: EXIT_OK}[v.holds]


def cmd_free_css(args) -> int:
    if args.n < 1:
        raise ReesEdError("rank must be at least 1")
    S = free_css(args.n)
    _out("generators", " ".join(f"({i},{S.group.render(w)},{i})" for i, w, _ in S.generators))
    return _report_symbolic(S, args)


def cmd_free_product(args) -> int:
    S1 = load_semigroup(args.first, strict=False)
    S2 = load_semigroup(args.second, strict=False)
    return _report_symbolic(free_product(S1, S2), args)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget", type=int, default=None, help="clone function budget")
    common.add_argument("--cap", type=int, default=DENSE_POINT_CAP, help="dense point cap")
    common.add_argument("--lenient", action="store_true", help="accept non-normalized matrices")

    p = argparse.ArgumentParser(prog="rees-ed", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional):
        sp = sub.add_parser(name, parents=[common])
        for pos in positional:
            sp.add_argument(pos)
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "semigroup")
    add("mul", cmd_mul, "semigroup", "a", "b")
    add("inv", cmd_inv, "semigroup", "a")
    sp = add("solve", cmd_solve, "semigroup", "system")
    sp.add_argument("--arity", type=int, default=None)
    sp = add("decide-ed", cmd_decide_ed, "semigroup")
    sp.add_argument("--relative", metavar="T-FILE", default=None)
    add("separate", cmd_separate, "semigroup", "a", "b")
    sp = sub.add_parser("build", parents=[common])
    sp.add_argument("family", choices=sorted(BUILDERS))
    sp.add_argument("semigroup")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--limit", type=int, default=None)
    sp.set_defaults(func=cmd_build)
    sp = add("oracle", cmd_oracle, "semigroup")
    sp.add_argument("--set", default=None, help="M, Msem or @points-file")
    sp.add_argument("--arity", type=int, default=None)
    sp.add_argument("--decide-ed", action="store_true")
    sp.add_argument("--route", choices=["auto", "msem", "m"], default="auto")
    sp = add("zero-divisors", cmd_zero_divisors, "group")
    sp.add_argument("--limit", type=int, default=10)
    sp = sub.add_parser("free-css", parents=[common])
    sp.add_argument("n", type=int)
    sp.add_argument("--check", type=int, default=0, help="random identity checks (needs --seed)")
    sp.set_defaults(func=cmd_free_css)
    sp = add("free-product", cmd_free_product, "first", "second")
    sp.add_argument("--check", type=int, default=0, help="random identity checks (needs --seed)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.func(args)
    except (CapExceeded, Incomplete) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ReesEdError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        w = getattr(exc, "witness", None)
        if w is not None:
            print(f"witness: {w}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
