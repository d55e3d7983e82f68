"""Well-formedness: term compatibility, connector compatibility, closedness, arity."""

from __future__ import annotations

from dataclasses import dataclass, field

from .binding import EPS, free
from .syntax import (
    Apply, Atom, Attr, AttributedPred, Basic, Collective, Connector, Eq,
    Formula, NegAtom, Plain, SurfEq, children, render, render_term,
)

__all__ = ["Violation", "WfReport", "subformulas", "pnode", "tcompatible", "ccompatible", "wellformed"]

RULES = ("Tcompatible", "Ccompatible", "NoFreeVars", "Arity")


@dataclass(frozen=True)
class Violation:
    rule: str
    location: str
    message: str


@dataclass(frozen=True)
class WfReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}


def subformulas(f: Formula) -> set[Formula]:
    """All subformulas, including attributes and the parts of collectives."""
    out: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        stack.extend(children(g))
        if isinstance(g, Apply) and isinstance(g.pred, Collective):
            for part, ts in g.pred.parts:
                stack.append(Atom(part.sym, tuple(Plain(t) for t in ts)))
    return out


def _is_pnode(g: Formula) -> bool:
    return isinstance(g, Apply) and isinstance(g.pred, AttributedPred)


def pnode(f1: Formula, f2: Formula) -> set[Formula]:
    """Innermost attributed-predicate applications whose attribute contains ``f2``."""
    found = set()
    for g in subformulas(f1):
        if not _is_pnode(g):
            continue
        attr_subs = subformulas(g.pred.attribute)
        if f2 not in attr_subs:
            continue
        inner = any(_is_pnode(h) and f2 in subformulas(h.pred.attribute) for h in attr_subs)
        if not inner:
            found.add(g)
    return found


def _tcompat_terms(t1, t2) -> bool:
    if not isinstance(t1, Attr):
        return not isinstance(t2, Attr)
    if not isinstance(t2, Attr) or len(t1.body) != len(t2.body):
        return False
    return _tcompat_terms(t1.head, t2.head) and all(
        _tcompat_terms(a, b) for a, b in zip(t1.body, t2.body))


def _tcompat_violations(f: Formula) -> list[Violation]:
    out = []
    for g in subformulas(f):
        if isinstance(g, (Eq, SurfEq)) and not _tcompat_terms(g.left, g.right):
            out.append(Violation("Tcompatible", render(g),
                                 f"{render_term(g.left)} and {render_term(g.right)} differ in attribution shape"))
    return out


def tcompatible(f: Formula) -> bool:
    return not _tcompat_violations(f)


def _ccompat_violations(f: Formula) -> list[Violation]:
    out = []
    for g in subformulas(f):
        if not isinstance(g, (Atom, NegAtom)):
            continue
        conns = [a.term for a in g.args if isinstance(a, Connector)]
        if not conns:
            continue
        nodes = pnode(f, g)
        if not nodes:
            out.append(Violation("Ccompatible", render(g), "connector outside any attributed predicate"))
            continue
        for t in conns:
            for node in nodes:
                if t not in node.args:
                    out.append(Violation("Ccompatible", render(g),
                                         f"^{render_term(t)} matches no argument of {render(node)}"))
    return out


def ccompatible(f: Formula) -> bool:
    return not _ccompat_violations(f)


def _arity_violations(f: Formula) -> list[Violation]:
    seen: dict[str, int] = {}
    out = []
    for g in sorted(subformulas(f), key=repr):
        syms = []
        if isinstance(g, (Atom, NegAtom)):
            syms.append(g.pred)
        elif isinstance(g, Apply):
            p = g.pred
            while isinstance(p, AttributedPred):
                p = p.base
            if isinstance(p, Basic):
                syms.append(p.sym)
            else:
                syms.extend(part.sym for part, _ in p.parts)
        for s in syms:
            prev = seen.setdefault(s.name, s.arity)
            if prev != s.arity:
                out.append(Violation("Arity", render(g), f"{s.name} used with arities {prev} and {s.arity}"))
    return out


def wellformed(f: Formula) -> WfReport:
    violations = _tcompat_violations(f) + _ccompat_violations(f) + _arity_violations(f)
    open_vars = free(EPS, f)
    if open_vars:
        names = ", ".join(sorted(render_term(v) for v in open_vars))
        violations.append(Violation("NoFreeVars", render(f), f"free variables: {names}"))
    return WfReport(tuple(violations))
