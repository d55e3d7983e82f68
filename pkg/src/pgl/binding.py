"""Marked term bodies and the free/bound variable calculus.

A marked term body is a tuple of term bodies.  Segment 0 carries the dagger;
later segments are the enclosing bodies, innermost first.  The empty tuple is
the bare dagger ``EPS``.  Projection folds the segments into a left-nested
attribution chain, so ``delta(((y,), (x,)))`` is ``y <. x``.
"""

from __future__ import annotations

from functools import lru_cache

from .syntax import (
    And, Apply, Atom, Attr, Basic, Bot, Collective,
    Const, Eq, Exists, Forall, Formula, Implies, Neg, NegAtom, Or, Plain,
    SurfEq, Term, Top, Var, head_chain, is_variable, leftmost, subvariable,
)

__all__ = [
    "EPS", "MarkedTermBody", "oplus", "tau_l", "tau_r", "delta", "attach",
    "match_set", "occurs", "free", "bound", "tails", "graft",
]

MarkedTermBody = tuple  # tuple[tuple[Term, ...], ...]
EPS: MarkedTermBody = ()


def oplus(ts: tuple, m: MarkedTermBody) -> MarkedTermBody:
    """Prepend ``ts`` as the new dagger segment."""
    if not ts:
        raise ValueError("cannot prepend an empty term body")
    return (tuple(ts),) + tuple(m)


def tau_l(m: MarkedTermBody) -> tuple:
    if not m:
        raise ValueError("tau_l is undefined on the bare dagger")
    return m[0]


def tau_r(m: MarkedTermBody) -> MarkedTermBody:
    if not m:
        raise ValueError("tau_r is undefined on the bare dagger")
    return m[1:]


def attach(t: Term, m: MarkedTermBody) -> Term:
    """``delta((t,) + m)`` for a single term: fold the context onto ``t``."""
    for seg in m:
        t = Attr(t, seg)
    return t


def delta(m: MarkedTermBody) -> tuple:
    """Erase the dagger.  Returns ``()`` for the bare dagger, else a term body."""
    if not m:
        return ()
    if len(m) == 1:
        return m[0]
    if len(m[0]) != 1:
        raise ValueError("a multi-term dagger segment cannot head an attribution chain")
    return (attach(m[0][0], m[1:]),)


# -- occurrences ---------------------------------------------------------------

@lru_cache(maxsize=None)
def match_set(t: Term) -> frozenset:
    """All variables ``v`` with ``match(v, t)`` for a term ``t``.

    ``x`` matches only itself; ``v1 <. s`` matches ``h <. b`` when the bodies
    have equal length, each ``s_i`` matches ``b_i`` and ``v1`` matches ``h``,
    and anything matching a body element matches the whole term.
    """
    if isinstance(t, Var):
        return frozenset({t})
    if isinstance(t, Const):
        return frozenset()
    inner = [match_set(b) for b in t.body]
    out = set().union(*inner)
    heads = match_set(t.head)
    if heads and all(inner):
        for combo in _product(inner):
            for h in heads:
                out.add(Attr(h, combo))
    return frozenset(out)


def _product(sets):
    result = [()]
    for s in sets:
        result = [r + (x,) for r in result for x in sorted(s, key=repr)]
    return result


def _match_term(v: Term, t: Term) -> bool:
    return v in match_set(t)


def occurs(v: Term, s) -> bool:
    """Whether variable ``v`` occurs in a term, term body or formula."""
    if not is_variable(v):
        raise ValueError("occurs expects a variable")
    if isinstance(s, tuple):
        return any(occurs(v, t) for t in s)
    if isinstance(s, (Var, Const, Attr)):
        return _match_term(v, s)
    if isinstance(s, (Atom, NegAtom)):
        return any(isinstance(g, Plain) and _match_term(v, g.term) for g in s.args)
    if isinstance(s, (Top, Bot)):
        return False
    if isinstance(s, (Eq, SurfEq)):
        return _match_term(v, s.left) or _match_term(v, s.right)
    if isinstance(s, Neg):
        return occurs(v, s.body)
    if isinstance(s, (Forall, Exists)):
        others = [vx for vx in subvariable(s.var) if vx != s.var]
        return any(_match_term(v, vx) for vx in others) or occurs(v, s.body)
    if isinstance(s, (And, Or, Implies)):
        return occurs(v, s.left) or occurs(v, s.right)
    if isinstance(s, Apply):
        return _occurs_apply(v, s)
    raise TypeError(f"cannot test occurrence in {s!r}")


def _occurs_apply(v: Term, f: Apply) -> bool:
    if any(_match_term(v, t) for t in f.args):
        return True
    p = f.pred
    if isinstance(p, Basic):
        return False
    if isinstance(p, Collective):
        return any(_match_term(v, t) for _, ts in p.parts for t in ts)
    # attributed predicate: the base applied to the same terms is a formula
    if occurs(v, Apply(p.base, f.args)):
        return True
    if isinstance(v, Attr) and len(v.body) == len(f.args):
        if all(_match_term(vi, ti) for vi, ti in zip(v.body, f.args)):
            return occurs(v.head, p.attribute)
    return False


# -- free and bound variables -----------------------------------------------------

def graft(vx: Term, v: Term) -> Term:
    """``vx`` with its leftmost symbol replaced by the leftmost of ``v``."""
    if isinstance(vx, Attr):
        return Attr(graft(vx.head, v), vx.body)
    return leftmost(v)


def _terms_free(ts, m: MarkedTermBody) -> frozenset:
    out = set()
    for t in ts:
        out.update(attach(x, m) for x in match_set(t))
    return frozenset(out)


def _newly_bound(v: Term, m: MarkedTermBody) -> frozenset:
    return frozenset(attach(graft(vx, v), m) for vx in subvariable(v))


@lru_cache(maxsize=None)
def free(m: MarkedTermBody, f: Formula) -> frozenset:
    """Variables occurring free in ``f`` under the marked body ``m``.

    A quantifier removes exactly the variables it binds, then adds the
    sub-variables of its binder whose leftmost symbol differs.
    """
    if isinstance(f, (Top, Bot)):
        return frozenset()
    if isinstance(f, (Eq, SurfEq)):
        return _terms_free((f.left, f.right), m)
    if isinstance(f, (Atom, NegAtom)):
        return _terms_free([g.term for g in f.args if isinstance(g, Plain)], m)
    if isinstance(f, Apply):
        return _free_apply(f.pred, f.args, m)
    if isinstance(f, Neg):
        return free(m, f.body)
    if isinstance(f, (Forall, Exists)):
        inner = free(m, f.body) - _newly_bound(f.var, m)
        lm = leftmost(f.var)
        extra = {attach(vx, m) for vx in subvariable(f.var) if leftmost(vx) != lm}
        return inner | frozenset(extra)
    if isinstance(f, (And, Or, Implies)):
        return free(m, f.left) | free(m, f.right)
    raise TypeError(f"not a formula: {f!r}")


def _free_apply(p, args, m) -> frozenset:
    if isinstance(p, Basic):
        return _terms_free(args, m)
    if isinstance(p, Collective):
        out = set(_terms_free(args, m))
        for _, ts in p.parts:
            out |= _terms_free(ts, m)
        return frozenset(out)
    return _free_apply(p.base, args, m) | free(oplus(args, m), p.attribute)


@lru_cache(maxsize=None)
def bound(m: MarkedTermBody, f: Formula) -> frozenset:
    """Variables bound by some quantifier of ``f`` under ``m``."""
    if isinstance(f, (Top, Bot, Eq, SurfEq, Atom, NegAtom)):
        return frozenset()
    if isinstance(f, Apply):
        return _bound_apply(f.pred, f.args, m)
    if isinstance(f, Neg):
        return bound(m, f.body)
    if isinstance(f, (Forall, Exists)):
        return bound(m, f.body) | _newly_bound(f.var, m)
    if isinstance(f, (And, Or, Implies)):
        return bound(m, f.left) | bound(m, f.right)
    raise TypeError(f"not a formula: {f!r}")


def _bound_apply(p, args, m) -> frozenset:
    if isinstance(p, (Basic, Collective)):
        return frozenset()
    return _bound_apply(p.base, args, m) | bound(oplus(args, m), p.attribute)


def tails(v: Term) -> list[MarkedTermBody]:
    """Successive ``tau_r`` images of the variable with its leftmost daggered.

    ``tails(w <. z <. y <. x)`` is ``[(z)(y)(x), (y)(x), (x)]`` as segment tuples.
    """
    if not is_variable(v):
        raise ValueError("tails expects a variable")
    segs = head_chain(v)
    return [segs[k:] for k in range(1, len(segs))]
