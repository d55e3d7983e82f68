"""Three-valued forcing relation.

Rules A to E return ``U`` whenever a predicate or term does not belong to the
current domain of discourse; they take priority over the numbered rules::

    A  basic atom        1  basic atom          7  forall     11  implication
    B  =                 2  collective          8  exists     12  =
    C  ~=                3  attributed          9  and        13  ~=
    D  collective        4  top                10  or
    E  attributed        5  bot   6  negation

``U`` is infectious (Bochvar), implication is ``~F1 | F2`` and a quantifier
over an empty range is ``U``.  Every operand is evaluated, so diagnostics
such as MissingAssignment surface regardless of operand order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .model import (
    Structure, interp_body, interp_gterm, interp_term, normalize, proper_gterm,
    proper_object, proper_term, quantifier_context, surface_eq, update,
)
from .syntax import (
    And, Apply, Atom, Basic, Bot, Collective, Connector, Eq,
    Exists, Forall, Formula, Implies, Neg, NegAtom, Or, Plain, SurfEq, Top, render,
)

__all__ = [
    "TV", "tv_and", "tv_or", "tv_not", "tv_of", "NotWellFormed", "TraceEvent",
    "Options", "evaluate", "coheres", "satisfies",
]


class TV(enum.Enum):
    T = "T"
    F = "F"
    U = "U"

    def __str__(self) -> str:
        return self.value


def tv_of(b: bool) -> TV:
    return TV.T if b else TV.F


def tv_not(a: TV) -> TV:
    return {TV.T: TV.F, TV.F: TV.T, TV.U: TV.U}[a]


def tv_and(*vals: TV) -> TV:
    if TV.U in vals:
        return TV.U
    return TV.F if TV.F in vals else TV.T


def tv_or(*vals: TV) -> TV:
    if TV.U in vals:
        return TV.U
    return TV.T if TV.T in vals else TV.F


class NotWellFormed(ValueError):
    def __init__(self, report):
        super().__init__("formula is not well-formed: " + "; ".join(
            f"{v.rule}: {v.message}" for v in report.violations))
        self.report = report


@dataclass(frozen=True)
class TraceEvent:
    depth: int
    rule: str
    formula: str
    value: TV


@dataclass(frozen=True)
class Options:
    """Evaluation switches.

    ``strict_quantifier`` draws quantifier instances from the attribute space
    of the variable's current value.  ``strict_attribute`` makes an attributed
    predicate ``U`` whenever its attribute is not ``T``.
    """

    strict_quantifier: bool = False
    strict_attribute: bool = False


class _Evaluator:
    def __init__(self, options: Options, trace: list | None):
        self.opt = options
        self.trace = trace
        self.depth = 0

    def emit(self, rule: str, f: Formula, value: TV) -> TV:
        if self.trace is not None:
            self.trace.append(TraceEvent(self.depth, rule, render(f), value))
        return value

    def ev(self, s: Structure, ctx: tuple, f: Formula) -> TV:
        self.depth += 1
        try:
            return self._ev(s, ctx, f)
        finally:
            self.depth -= 1

    def _ev(self, s, ctx, f) -> TV:
        if isinstance(f, Top):
            return self.emit("4", f, TV.T)
        if isinstance(f, Bot):
            return self.emit("5", f, TV.F)
        if isinstance(f, Atom):
            return self.atom(s, ctx, f, f.pred.name, f.args)
        if isinstance(f, NegAtom):
            return self.emit("6", f, tv_not(self.atom(s, ctx, f.positive(), f.pred.name, f.args)))
        if isinstance(f, (Eq, SurfEq)):
            alpha, num = ("B", "12") if isinstance(f, Eq) else ("C", "13")
            if not (proper_term(s, ctx, f.left) and proper_term(s, ctx, f.right)):
                return self.emit(alpha, f, TV.U)
            a, b = interp_term(s, ctx, f.left), interp_term(s, ctx, f.right)
            return self.emit(num, f, tv_of(a == b if isinstance(f, Eq) else surface_eq(a, b)))
        if isinstance(f, Apply):
            return self.apply(s, ctx, f)
        if isinstance(f, Neg):
            return self.emit("6", f, tv_not(self.ev(s, ctx, f.body)))
        if isinstance(f, (Forall, Exists)):
            return self.quantifier(s, ctx, f)
        if isinstance(f, (And, Or)):
            left, right = self.ev(s, ctx, f.left), self.ev(s, ctx, f.right)
            if isinstance(f, And):
                return self.emit("9", f, tv_and(left, right))
            return self.emit("10", f, tv_or(left, right))
        if isinstance(f, Implies):
            left, right = self.ev(s, ctx, f.left), self.ev(s, ctx, f.right)
            return self.emit("11", f, tv_or(tv_not(left), right))
        raise TypeError(f"not a formula: {f!r}")

    def atom(self, s, ctx, f, name, gterms) -> TV:
        key = normalize(ctx)
        table = s.table(key, name)
        if name not in s.available(key) or not table:
            return self.emit("A", f, TV.U)
        if not all(proper_gterm(s, ctx, g) for g in gterms):
            return self.emit("A", f, TV.U)
        outer = ctx[1:]
        for tup in table:
            for g, o in zip(gterms, tup):
                c = outer if isinstance(g, Connector) else ctx
                if not proper_object(s, c, o):
                    return self.emit("A", f, TV.U)
        values = tuple(interp_gterm(s, ctx, g) for g in gterms)
        return self.emit("1", f, tv_of(values in table))

    def apply(self, s, ctx, f: Apply) -> TV:
        p = f.pred
        if isinstance(p, Basic):
            return self.atom(s, ctx, f, p.sym.name, tuple(Plain(t) for t in f.args))
        if isinstance(p, Collective):
            terms = list(f.args) + [t for _, ts in p.parts for t in ts]
            if not all(proper_term(s, ctx, t) for t in terms):
                return self.emit("D", f, TV.U)
            whole = interp_body(s, ctx, f.args)
            key = normalize(ctx)
            vals = []
            for part, ts in p.parts:
                vals.append(self.atom(s, ctx, Atom(part.sym, tuple(Plain(t) for t in ts)),
                                      part.sym.name, tuple(Plain(t) for t in ts)))
                vals.append(tv_of(s.member(key, interp_body(s, ctx, ts), whole)))
            return self.emit("2", f, tv_and(*vals))
        if not all(proper_term(s, ctx, t) for t in f.args):
            return self.emit("E", f, TV.U)
        inner = (interp_body(s, ctx, f.args),) + tuple(ctx)
        attr = self.ev(s, inner, p.attribute)
        if attr is TV.U or (self.opt.strict_attribute and attr is not TV.T):
            return self.emit("E", f, TV.U)
        base = self.ev(s, ctx, Apply(p.base, f.args))
        return self.emit("3", f, tv_and(base, attr))

    def quantifier(self, s, ctx, f) -> TV:
        universal = isinstance(f, Forall)
        rule = "7" if universal else "8"
        qctx = quantifier_context(s, ctx, f.var, self.opt.strict_quantifier)
        candidates = sorted(s.domain(normalize(qctx)))
        if not candidates:
            return self.emit(rule, f, TV.U)
        # Every instance is visited so that diagnostics do not depend on order.
        vals = [self.ev(update(s, ctx, f.var, d), ctx, f.body) for d in candidates]
        return self.emit(rule, f, tv_and(*vals) if universal else tv_or(*vals))


def evaluate(s: Structure, f: Formula, ctx: tuple = (), *, options: Options = Options(),
             trace: list | None = None, check: bool = True) -> TV:
    """Value of ``f`` at context ``ctx`` (the top context by default).

    Raises NotWellFormed unless ``check`` is false, and lets MissingAssignment
    or UndeclaredSymbol propagate as diagnostics.
    """
    if check:
        from .wellformed import wellformed
        report = wellformed(f)
        if not report.ok:
            raise NotWellFormed(report)
    return _Evaluator(options, trace).ev(s, tuple(ctx), f)


def coheres(s: Structure, f: Formula, options: Options = Options()) -> bool:
    return evaluate(s, f, options=options) is not TV.U


def satisfies(s: Structure, f: Formula, options: Options = Options()) -> bool:
    return evaluate(s, f, options=options) is TV.T
