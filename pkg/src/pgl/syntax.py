"""Abstract syntax of predicate gradual logic.

Terms are basic symbols or attributed terms ``head <. body`` where the body is
a nonempty tuple of terms.  The attribution operator associates to the left,
so ``z <. y <. x`` is ``Attr(Attr(z, (y,)), (x,))``.

All nodes are frozen dataclasses and therefore hashable and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Var", "Const", "Attr", "Term", "Body", "Plain", "Connector", "GTerm",
    "PredSym", "Basic", "Collective", "AttributedPred", "Predicate",
    "Atom", "NegAtom", "Top", "Bot", "Eq", "SurfEq", "Apply", "Neg",
    "Forall", "Exists", "And", "Or", "Implies", "Formula", "TOP", "BOT",
    "leftmost", "head_chain", "subterm", "subvariable", "is_variable",
    "arity_of", "render", "render_term", "render_predicate", "children",
]


def _check_name(name: str) -> None:
    if not isinstance(name, str) or not name:
        raise ValueError("symbol names must be nonempty strings")


@dataclass(frozen=True)
class Var:
    """Basic variable."""

    name: str

    def __post_init__(self) -> None:
        _check_name(self.name)


@dataclass(frozen=True)
class Const:
    """Basic domain symbol."""

    name: str

    def __post_init__(self) -> None:
        _check_name(self.name)


@dataclass(frozen=True)
class Attr:
    """Attributed term ``head <. body``."""

    head: "Term"
    body: tuple["Term", ...]

    def __post_init__(self) -> None:
        if not isinstance(self.body, tuple) or not self.body:
            raise ValueError("an attributed term needs a nonempty body tuple")
        for t in (self.head, *self.body):
            if not isinstance(t, (Var, Const, Attr)):
                raise TypeError(f"not a term: {t!r}")


Term = Union[Var, Const, Attr]
Body = tuple  # tuple[Term, ...], nonempty


@dataclass(frozen=True)
class Plain:
    term: Term


@dataclass(frozen=True)
class Connector:
    """Back-reference ``^t`` to an argument of the enclosing attributed predicate."""

    term: Term


GTerm = Union[Plain, Connector]


@dataclass(frozen=True)
class PredSym:
    name: str
    arity: int

    def __post_init__(self) -> None:
        _check_name(self.name)
        if not isinstance(self.arity, int) or self.arity < 1:
            raise ValueError(f"predicate {self.name!r}: arity must be >= 1")


@dataclass(frozen=True)
class Basic:
    sym: PredSym


@dataclass(frozen=True)
class Collective:
    """``[p1(ts1) & ... & pk(tsk)]``; every part carries exactly n terms."""

    parts: tuple[tuple[Basic, tuple[Term, ...]], ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValueError("a collective predicate needs at least two parts")
        n = None
        for pred, args in self.parts:
            if not isinstance(pred, Basic):
                raise TypeError("collective parts must be basic predicates")
            if len(args) != pred.sym.arity:
                raise ValueError(f"part {pred.sym.name}: expected {pred.sym.arity} terms")
            if n is None:
                n = len(args)
            elif len(args) != n:
                raise ValueError("collective parts must share one arity")

    @property
    def arity(self) -> int:
        return len(self.parts[0][1])


@dataclass(frozen=True)
class AttributedPred:
    """``P :> F``: predicate P whose attribute is F."""

    base: "Predicate"
    attribute: "Formula"


Predicate = Union[Basic, Collective, AttributedPred]


def arity_of(p: Predicate) -> int:
    if isinstance(p, Basic):
        return p.sym.arity
    if isinstance(p, Collective):
        return p.arity
    return arity_of(p.base)


@dataclass(frozen=True)
class Atom:
    pred: PredSym
    args: tuple[GTerm, ...]

    def __post_init__(self) -> None:
        if len(self.args) != self.pred.arity:
            raise ValueError(f"{self.pred.name}: expected {self.pred.arity} arguments, got {len(self.args)}")
        for a in self.args:
            if not isinstance(a, (Plain, Connector)):
                raise TypeError(f"atom arguments must be g-terms, got {a!r}")


@dataclass(frozen=True)
class NegAtom:
    """Negated basic atom; evaluates exactly like ``Neg(Atom(...))``."""

    pred: PredSym
    args: tuple[GTerm, ...]

    def __post_init__(self) -> None:
        Atom.__post_init__(self)  # same arity and g-term checks

    def positive(self) -> Atom:
        return Atom(self.pred, self.args)


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


TOP = Top()
BOT = Bot()


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class SurfEq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Apply:
    pred: Predicate
    args: tuple[Term, ...]

    def __post_init__(self) -> None:
        if len(self.args) != arity_of(self.pred):
            raise ValueError(f"predicate application expects {arity_of(self.pred)} terms, got {len(self.args)}")
        for t in self.args:
            if not isinstance(t, (Var, Const, Attr)):
                raise TypeError("connectors may only appear in basic predicate arguments")


@dataclass(frozen=True)
class Neg:
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: Term
    body: "Formula"

    def __post_init__(self) -> None:
        if not is_variable(self.var):
            raise ValueError("a quantifier must bind a variable")


@dataclass(frozen=True)
class Exists:
    var: Term
    body: "Formula"

    def __post_init__(self) -> None:
        if not is_variable(self.var):
            raise ValueError("a quantifier must bind a variable")


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, NegAtom, Top, Bot, Eq, SurfEq, Apply, Neg, Forall, Exists, And, Or, Implies]


# -- structural queries on terms --------------------------------------------

def leftmost(t: Term) -> Var | Const:
    while isinstance(t, Attr):
        t = t.head
    return t


def head_chain(t: Term) -> tuple[tuple[Term, ...], ...]:
    """Split ``((w <. z) <. y) <. x`` into segments ``((w,), (z,), (y,), (x,))``."""
    segs: list[tuple[Term, ...]] = []
    while isinstance(t, Attr):
        segs.append(t.body)
        t = t.head
    segs.append((t,))
    return tuple(reversed(segs))


def is_variable(t: Term) -> bool:
    return isinstance(leftmost(t), Var)


def _as_body(ts: Term | tuple) -> tuple:
    return ts if isinstance(ts, tuple) else (ts,)


def subterm(ts: Term | tuple) -> list[Term]:
    """Ordered list of sub-terms.

    For ``t1 <. ts2`` the sub-terms of the body come first, then ``t3 <. ts2``
    for each sub-term ``t3`` of the head.  Sequences concatenate in order.
    """
    out: list[Term] = []
    for t in _as_body(ts):
        if isinstance(t, Attr):
            out.extend(subterm(t.body))
            out.extend(Attr(t3, t.body) for t3 in subterm(t.head))
        else:
            out.append(t)
    return out


def subvariable(ts: Term | tuple) -> list[Term]:
    return [t for t in subterm(ts) if is_variable(t)]


def children(f: Formula) -> Iterator[Formula]:
    """Immediate formula children, including attribute formulas."""
    if isinstance(f, (Neg,)):
        yield f.body
    elif isinstance(f, (Forall, Exists)):
        yield f.body
    elif isinstance(f, (And, Or, Implies)):
        yield f.left
        yield f.right
    elif isinstance(f, Apply) and isinstance(f.pred, AttributedPred):
        yield Apply(f.pred.base, f.args)
        yield f.pred.attribute


# -- printer ------------------------------------------------------------------

_IMPL, _QUANT, _ANDOR, _NOT = 0, 1, 2, 3


def render_term(t: Term) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    body = t.body
    if len(body) == 1 and not isinstance(body[0], Attr):
        tail = render_term(body[0])
    else:
        tail = "(" + ".".join(render_term(b) for b in body) + ")"
    return f"{render_term(t.head)}<.{tail}"


def _render_gterm(g: GTerm) -> str:
    if isinstance(g, Connector):
        return "^" + render_term(g.term)
    return render_term(g.term)


def _args(ts) -> str:
    return ", ".join(_render_gterm(g) if isinstance(g, (Plain, Connector)) else render_term(g) for g in ts)


def render_predicate(p: Predicate) -> str:
    """Bracket interior for a predicate (no surrounding brackets for basic ones)."""
    if isinstance(p, Basic):
        return p.sym.name
    if isinstance(p, Collective):
        return " & ".join(f"{q.sym.name}({_args(args)})" for q, args in p.parts)
    base = render_predicate(p.base)
    return f"{base} :> {_render(p.attribute, _ANDOR, attribute=True)}"


def _operand(g: Formula, level: int, wrap: bool) -> str:
    """Render ``g`` in a slot of ``level``, parenthesizing it when ``wrap``."""
    return f"({_render(g, _IMPL)})" if wrap else _render(g, level)


def _render(f: Formula, level: int, attribute: bool = False) -> str:
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, Atom):
        return f"{f.pred.name}({_args(f.args)})"
    if isinstance(f, NegAtom):
        return f"~{f.pred.name}({_args(f.args)})"
    if isinstance(f, Eq):
        return f"{render_term(f.left)} = {render_term(f.right)}"
    if isinstance(f, SurfEq):
        return f"{render_term(f.left)} ~= {render_term(f.right)}"
    if isinstance(f, Apply):
        return f"[{render_predicate(f.pred)}]({_args(f.args)})"
    if isinstance(f, Neg):
        needs = isinstance(f.body, (And, Or, Implies, Forall, Exists))
        return "~" + _operand(f.body, _NOT, needs)
    if isinstance(f, (Forall, Exists)):
        kw = "forall" if isinstance(f, Forall) else "exists"
        # the body of a quantifier never extends over an implication
        body = _operand(f.body, _QUANT, isinstance(f.body, Implies))
        text = f"{kw} {render_term(f.var)}. {body}"
        return f"({text})" if level > _QUANT and not attribute else text
    if isinstance(f, (And, Or)):
        op = "&" if isinstance(f, And) else "|"

        def side(g: Formula, right: bool) -> str:
            needs = isinstance(g, (Implies, Forall, Exists))
            if isinstance(g, (And, Or)):
                needs = right or type(g) is not type(f)
            return _operand(g, _ANDOR, needs)

        text = f"{side(f.left, False)} {op} {side(f.right, True)}"
        return f"({text})" if level > _ANDOR else text
    if isinstance(f, Implies):
        left = _operand(f.left, _QUANT, isinstance(f.left, Implies))
        text = f"{left} -> {_render(f.right, _IMPL)}"
        return f"({text})" if level > _IMPL or attribute else text
    raise TypeError(f"not a formula: {f!r}")


def render(f: Formula) -> str:
    """Concrete ASCII syntax; the frontend parser reads it back to an equal tree."""
    return _render(f, _IMPL)
