"""Rewrite a system so every constant lies in Gamma = {(1,g,1)}.

The result is only claimed to have the same solutions as the input when all
variables range over Gamma. Rewriting runs in three stages:

1. push inversions down to variables with identities (3), (4), (5), (7);
2. move interior constants into Gamma with (6), and trim endpoint
   constants with (1) and (2);
3. replace the endpoint constants ``(lam,g,1)`` / ``(1,h,j)`` of both sides
   by ``(1,g,1)`` / ``(1,h,1)``.

The identities, for ``x, y`` in Gamma::

    (1) (l,g,i)x = (l,g,1)x
    (2) x(l,g,i) = x(1,g,i)
    (3) ((l,g,1)x(1,h,j))^-1 = (l, p[j,l]^-1 h^-1, 1) x^-1 (1, g^-1 p[j,l]^-1, j)
    (4) ((l,g,i)x)^-1 = (l,1,1) x^-1 (1,g^-1,1)
    (5) (x(l,g,i))^-1 = (1,g^-1,1) x^-1 (1,1,i)
    (6) x(l,g,i)y = x(1,g,1)y
    (7) (x(l,g,i)y)^-1 = y^-1 (1,g^-1,1) x^-1
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .rees import ReesSemigroup, RElement
from .terms import (
    Constant,
    Equation,
    EquationSystem,
    Inverse,
    PointBatch,
    Product,
    Term,
    Variable,
    constants_of,
    evaluate_batch,
    factors,
    holds_batch,
    product,
)


@dataclass(frozen=True)
class TraceStep:
    equation: int
    rule: str
    before: object
    after: object


@dataclass(frozen=True)
class InconsistentEndpoints:
    """Marks an equation whose sides can never match over Gamma."""

    equation: int
    lhs_indices: tuple[int, int]
    rhs_indices: tuple[int, int]


@dataclass
class GammaNormalized:
    system: EquationSystem
    inconsistent: list[InconsistentEndpoints] = field(default_factory=list)
    trace: list[TraceStep] = field(default_factory=list)

    @property
    def satisfiable_over_gamma(self) -> bool:
        """False when some equation has mismatched endpoint indices."""
        return not self.inconsistent


def in_gamma(s: RElement) -> bool:
    return s.lam == 1 and s.i == 1


def _is_const(a: Term) -> bool:
    return isinstance(a, Constant)


class _Rewriter:
    def __init__(self, S: ReesSemigroup, eq_index: int, trace: list):
        self.S = S
        self.G = S.group
        self.k = eq_index
        self.trace = trace

    def log(self, rule, before, after):
        if rule and before is not after:
            self.trace.append(TraceStep(self.k, rule, before, after))

    def push(self, t: Term) -> list[Term]:
        """Word equal to ``t`` over Gamma whose inversions sit on variables only."""
        if isinstance(t, (Variable, Constant)):
            return [t]
        if isinstance(t, Product):
            return self.push(t.left) + self.push(t.right)
        inner = self.canon(self.push(t.arg))
        out, rule = self.invert_word(inner)
        self.log(rule, t, product(out))
        return out

    def invert_word(self, w: list[Term]) -> tuple[list[Term], str]:
        G, P = self.G, self.S.matrix
        if len(w) == 1:
            a = w[0]
            if isinstance(a, Variable):
                return [Inverse(a)], ""
            if isinstance(a, Inverse):
                return [a.arg], "involution"
            return [Constant(self.S.invert(a.value))], "fold"
        first = w[0] if _is_const(w[0]) else None
        last = w[-1] if _is_const(w[-1]) else None
        core = w[(first is not None):len(w) - (last is not None)]
        inv_core = [self._invert_gamma_atom(a) for a in reversed(core)]
        if first is not None and last is not None:
            lam, g = first.value.lam, first.value.g
            h, j = last.value.g, last.value.i
            pinv = G.inv(P(j, lam))
            return (
                [Constant(RElement(lam, G.op(pinv, G.inv(h)), 1))]
                + inv_core
                + [Constant(RElement(1, G.op(G.inv(g), pinv), j))]
            ), "(3)"
        if first is not None:
            lam, g = first.value.lam, first.value.g
            return [Constant(RElement(lam, 0, 1))] + inv_core + [Constant(RElement(1, G.inv(g), 1))], "(4)"
        if last is not None:
            g, i = last.value.g, last.value.i
            return [Constant(RElement(1, G.inv(g), 1))] + inv_core + [Constant(RElement(1, 0, i))], "(5)"
        return inv_core, "(7)"

    def _invert_gamma_atom(self, a: Term) -> Term:
        if isinstance(a, Variable):
            return Inverse(a)
        if isinstance(a, Inverse):
            return a.arg
        return Constant(RElement(1, self.G.inv(a.value.g), 1))

    def canon(self, w: list[Term]) -> list[Term]:
        """Fold adjacent constants, then apply (6) inside and (1), (2) at the ends."""
        folded: list[Term] = []
        for a in w:
            if folded and _is_const(a) and _is_const(folded[-1]):
                prev = folded.pop()
                c = Constant(self.S.multiply(prev.value, a.value))
                self.log("fold", Product(prev, a), c)
                folded.append(c)
            else:
                folded.append(a)
        n = len(folded)
        out = list(folded)
        for pos, a in enumerate(folded):
            if not _is_const(a) or n == 1:
                continue
            v = a.value
            if 0 < pos < n - 1:
                new, rule = RElement(1, v.g, 1), "(6)"
                ctx = (folded[pos - 1], folded[pos + 1])
            elif pos == 0:
                new, rule = RElement(v.lam, v.g, 1), "(1)"
                ctx = (None, folded[1])
            else:
                new, rule = RElement(1, v.g, v.i), "(2)"
                ctx = (folded[pos - 1], None)
            if new != v:
                out[pos] = Constant(new)
                before = product([x for x in (ctx[0], a, ctx[1]) if x is not None])
                after = product([x for x in (ctx[0], out[pos], ctx[1]) if x is not None])
                self.log(rule, before, after)
        return out


def _ends(w: list[Term]) -> tuple[int, int]:
    lam = w[0].value.lam if _is_const(w[0]) else 1
    i = w[-1].value.i if _is_const(w[-1]) else 1
    return lam, i


def _strip_endpoints(w: list[Term]) -> list[Term]:
    out = list(w)
    if _is_const(out[0]):
        v = out[0].value
        out[0] = Constant(RElement(1, v.g, 1 if len(out) == 1 else v.i))
    if _is_const(out[-1]):
        v = out[-1].value
        out[-1] = Constant(RElement(1 if len(out) == 1 else v.lam, v.g, 1))
    return out


def gamma_normalize(S: ReesSemigroup, system: EquationSystem, audit: bool = False) -> GammaNormalized:
    """Equivalent system over Gamma with every constant in Gamma.

    With ``audit=True`` each recorded rewrite step is re-evaluated at every
    point of Gamma^n and a mismatch raises ``AssertionError``.
    """
    S.require_normalized()
    eqs = list(system.equations)
    if all(in_gamma(c) for eq in eqs for side in (eq.lhs, eq.rhs) for c in constants_of(side)):
        return GammaNormalized(system)

    trace: list[TraceStep] = []
    out_eqs: list[Equation] = []
    bad: list[InconsistentEndpoints] = []
    for k, eq in enumerate(eqs):
        rw = _Rewriter(S, k, trace)
        sides = []
        for side in (eq.lhs, eq.rhs):
            w = rw.canon(rw.push(side))
            sides.append(w)
        L, R = sides
        eL, eR = _ends(L), _ends(R)
        if eL != eR:
            bad.append(InconsistentEndpoints(k, eL, eR))
            continue
        new = Equation(product(_strip_endpoints(L)), product(_strip_endpoints(R)))
        trace.append(TraceStep(k, "endpoint", Equation(product(L), product(R)), new))
        out_eqs.append(new)
    result = GammaNormalized(EquationSystem(system.arity, out_eqs), bad, trace)
    if audit:
        audit_trace(S, result, system.arity)
    return result


def gamma_batch(S: ReesSemigroup, arity: int) -> PointBatch:
    gam = [S.code(RElement(1, g, 1)) for g in S.group.elements()]
    codes = np.array(list(itertools.product(gam, repeat=arity)), dtype=np.intp).reshape(-1, max(arity, 0))
    return PointBatch(S, codes)


def audit_trace(S: ReesSemigroup, result: GammaNormalized, arity: int) -> None:
    batch = gamma_batch(S, max(arity, 1))
    for step in result.trace:
        if isinstance(step.before, Equation):
            ok = np.array_equal(holds_batch(S, step.before, batch), holds_batch(S, step.after, batch))
        else:
            a = evaluate_batch(S, step.before, batch)
            b = evaluate_batch(S, step.after, batch)
            ok = all(np.array_equal(np.broadcast_to(x, (batch.size,)), np.broadcast_to(y, (batch.size,))) for x, y in zip(a, b))
        if not ok:
            raise AssertionError(f"rewrite step {step.rule} on equation {step.equation} changed values over Gamma")
