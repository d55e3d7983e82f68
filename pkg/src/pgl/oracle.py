"""Slow reference evaluator written clause by clause, independent of the kernel.

Only the syntax tree, the object data classes and the :class:`Structure`
container are shared with the main evaluator.  Marked bodies are literal
nested tuples (``("eps",)``, ``("dag", body)``, ``("lt", marked, body)``),
occurrence is a recursive predicate rather than a match set, free variables
come from enumerating candidate variables, quantifiers expand every instance,
and nothing is memoized.  Truth values are the strings ``"T"``, ``"F"``, ``"U"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .model import AttrObject, BasicObject, Structure
from .syntax import (
    And, Apply, Atom, Attr, AttributedPred, Basic, Bot, Collective, Connector,
    Const, Eq, Exists, Forall, Implies, Neg, NegAtom, Or, Plain, SurfEq, Top, Var,
)

__all__ = ["OracleError", "DepthCap", "OracleNode", "OracleResult", "oracle_eval", "oracle_free", "oracle_bound"]

EPS = ("eps",)


class OracleError(Exception):
    pass


class DepthCap(OracleError):
    pass


@dataclass(frozen=True)
class OracleNode:
    rule: str
    formula: object
    value: str
    children: tuple = ()


@dataclass(frozen=True)
class OracleResult:
    value: str
    trace: OracleNode


# -- marked bodies ----------------------------------------------------------------

def _oplus(body: tuple, m: tuple) -> tuple:
    if m[0] == "eps":
        return ("dag", body)
    if m[0] == "dag":
        return ("lt", ("dag", body), m[1])
    return ("lt", _oplus(body, m[1]), m[2])


def _tau_r(m: tuple) -> tuple:
    if m[0] == "eps":
        raise OracleError("tau_r of the bare dagger")
    if m[0] == "dag":
        return EPS
    inner = m[1]
    if inner[0] == "dag":
        return ("dag", m[2])
    return ("lt", _tau_r(inner), m[2])


def _delta_term(m: tuple):
    """Projection of a marked term body whose dagger segment is a single term."""
    if m[0] == "dag":
        return m[1]
    inner = _delta_term(m[1])
    if len(inner) != 1:
        raise OracleError("projection of a multi-term segment")
    return (Attr(inner[0], m[2]),)


def _xi0(v) -> tuple:
    """The variable with its leftmost symbol daggered."""
    if isinstance(v, Attr):
        return ("lt", _xi0(v.head), v.body)
    return ("dag", (v,))


def _key(m: tuple) -> tuple:
    """Table key for the projection of a marked object body."""
    segs = []
    while m[0] == "lt":
        segs.insert(0, m[2])
        m = m[1]
    if m[0] == "dag":
        segs.insert(0, m[1])
    while segs and len(segs[0]) == 1 and isinstance(segs[0][0], AttrObject):
        o = segs[0][0]
        segs[0:1] = [(o.head,), o.body]
    return tuple(segs)


# -- syntax helpers -------------------------------------------------------------------

def _leftmost(t):
    return _leftmost(t.head) if isinstance(t, Attr) else t


def _is_var(t) -> bool:
    return isinstance(_leftmost(t), Var)


def _subterm(ts) -> list:
    out = []
    for t in ts:
        if isinstance(t, Attr):
            out += _subterm(t.body)
            out += [Attr(t3, t.body) for t3 in _subterm((t.head,))]
        else:
            out.append(t)
    return out


def _subvariable(t) -> list:
    return [u for u in _subterm((t,)) if _is_var(u)]


def _replace_leftmost(t, new):
    if isinstance(t, Attr):
        return Attr(_replace_leftmost(t.head, new), t.body)
    return new


# -- occurrence ---------------------------------------------------------------------------

def _match(v, t) -> bool:
    """``match(v, t)`` for a variable ``v`` and a term ``t``."""
    if isinstance(v, Const):
        return False
    if isinstance(v, Var):
        if isinstance(t, Var):
            return v == t
        if isinstance(t, Attr):
            return any(_match(v, b) for b in t.body)
        return False
    if not isinstance(t, Attr):
        return False
    if any(_match(v, b) for b in t.body):
        return True
    return (len(v.body) == len(t.body)
            and all(_match(a, b) for a, b in zip(v.body, t.body))
            and _match(v.head, t.head))


def _leaves(t) -> int:
    return 1 if not isinstance(t, Attr) else _leaves(t.head) + sum(_leaves(b) for b in t.body)


def _candidates(t) -> list:
    """Every variable built from the variables of ``t`` no larger than ``t``."""
    names = sorted({u for u in _subterm((t,)) if isinstance(u, Var)}, key=lambda x: x.name)
    lengths = sorted({len(u.body) for u in _subterm((t,)) if isinstance(u, Attr)})
    limit = _leaves(t)
    by_size: dict[int, list] = {1: list(names)}
    for n in range(2, limit + 1):
        terms = []
        for k in lengths:
            for split in _splits(n, k + 1):
                for head in by_size.get(split[0], []):
                    for body in product(*(by_size.get(s, []) for s in split[1:])):
                        terms.append(Attr(head, tuple(body)))
        by_size[n] = terms
    return [u for n in range(1, limit + 1) for u in by_size.get(n, [])]


def _splits(n: int, parts: int):
    if parts == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in _splits(n - first, parts - 1):
            yield (first,) + rest


def _occurring(terms) -> set:
    out = set()
    for t in terms:
        out |= {v for v in _candidates(t) if _match(v, t)}
    return out


# -- free and bound --------------------------------------------------------------------------

def _proj(v, m) -> object:
    return _delta_term(_oplus((v,), m))[0]


def _free(m, f) -> set:
    if isinstance(f, (Top, Bot)):
        return set()
    if isinstance(f, (Eq, SurfEq)):
        return {_proj(v, m) for v in _occurring([f.left, f.right])}
    if isinstance(f, (Atom, NegAtom)):
        return {_proj(v, m) for v in _occurring([g.term for g in f.args if isinstance(g, Plain)])}
    if isinstance(f, Apply):
        p = f.pred
        if isinstance(p, Basic):
            return {_proj(v, m) for v in _occurring(f.args)}
        if isinstance(p, Collective):
            out = {_proj(v, m) for v in _occurring(f.args)}
            for part, ts in p.parts:
                out |= _free(m, Atom(part.sym, tuple(Plain(t) for t in ts)))
            return out
        return _free(m, Apply(p.base, f.args)) | _free(_oplus(f.args, m), p.attribute)
    if isinstance(f, Neg):
        return _free(m, f.body)
    if isinstance(f, (Forall, Exists)):
        v = f.var
        binds = {_proj(_replace_leftmost(vx, _leftmost(v)), m) for vx in _subvariable(v)}
        extra = {_proj(vx, m) for vx in _subvariable(v) if _leftmost(vx) != _leftmost(v)}
        return (_free(m, f.body) - binds) | extra
    if isinstance(f, (And, Or, Implies)):
        return _free(m, f.left) | _free(m, f.right)
    raise OracleError(f"not a formula: {f!r}")


def _bound(m, f) -> set:
    if isinstance(f, Apply) and isinstance(f.pred, AttributedPred):
        return _bound(m, Apply(f.pred.base, f.args)) | _bound(_oplus(f.args, m), f.pred.attribute)
    if isinstance(f, Neg):
        return _bound(m, f.body)
    if isinstance(f, (Forall, Exists)):
        v = f.var
        return _bound(m, f.body) | {_proj(_replace_leftmost(vx, _leftmost(v)), m) for vx in _subvariable(v)}
    if isinstance(f, (And, Or, Implies)):
        return _bound(m, f.left) | _bound(m, f.right)
    return set()


def oracle_free(f) -> frozenset:
    return frozenset(_free(EPS, f))


def oracle_bound(f) -> frozenset:
    return frozenset(_bound(EPS, f))


# -- semantics -------------------------------------------------------------------------------

def _and(*vals: str) -> str:
    return "U" if "U" in vals else ("T" if all(v == "T" for v in vals) else "F")


def _or(*vals: str) -> str:
    return "U" if "U" in vals else ("T" if any(v == "T" for v in vals) else "F")


def _not(a: str) -> str:
    return {"T": "F", "F": "T", "U": "U"}[a]


def _tv(b: bool) -> str:
    return "T" if b else "F"


@dataclass
class _State:
    s: Structure
    strict_quantifier: bool
    strict_attribute: bool
    cap: int
    depth: int = 0
    assignment: dict = field(default_factory=dict)


def _subobject(os) -> list:
    out = []
    for o in os:
        if isinstance(o, AttrObject):
            out += _subobject(o.body)
            out += [AttrObject(h, o.body) for h in _subobject((o.head,))]
        else:
            out.append(o)
    return out


def _obj_left(o):
    return _obj_left(o.head) if isinstance(o, AttrObject) else o


def _surface(o1, o2) -> bool:
    a, b = _subobject((o1,)), _subobject((o2,))
    if len(a) != len(b) or _obj_left(a[-1]).base != _obj_left(b[-1]).base:
        return False
    return all(a[i] == b[i] for i in range(len(a) - 1))


class _Oracle:
    def __init__(self, st: _State):
        self.st = st

    @property
    def s(self) -> Structure:
        return self.st.s

    def dom(self, m) -> frozenset:
        return self.s.domains.get(_key(m), frozenset())

    # interpretation with the current assignment
    def I(self, m, t):
        if isinstance(t, Const):
            k = _key(m)
            local = self.s.domain_symbols.get(k, {})
            if t.name in local:
                return local[t.name]
            top = self.s.domain_symbols.get((), {})
            if t.name in top:
                return top[t.name]
            raise OracleError(f"undeclared domain symbol {t.name}")
        if isinstance(t, Var):
            k = (_key(m), t.name)
            if k not in self.st.assignment:
                raise OracleError(f"no value for {t.name}")
            return self.st.assignment[k]
        if isinstance(t, Connector):
            return self.I(_tau_r(m), t.term)
        if isinstance(t, Plain):
            return self.I(m, t.term)
        b = tuple(self.I(m, u) for u in t.body)
        return AttrObject(self.I(_oplus(b, m), t.head), b)

    def properO(self, m, o) -> bool:
        if isinstance(o, BasicObject):
            return o in self.dom(m)
        return self.properO(_oplus(o.body, m), o.head) and all(self.properO(m, b) for b in o.body)

    def properT(self, m, g) -> bool:
        if isinstance(g, Connector):
            return m[0] != "eps" and self.properT(_tau_r(m), g.term)
        if isinstance(g, Plain):
            return self.properT(m, g.term)
        if isinstance(g, Attr):
            if not all(self.properT(m, u) for u in g.body):
                return False
            b = tuple(self.I(m, u) for u in g.body)
            return self.properT(_oplus(b, m), g.head)
        return self.I(m, g) in self.dom(m)

    def member(self, m, b1, b2) -> bool:
        k = _key(m)
        edges = set(self.s.inclusions.get(k, ()))
        for c, ms in self.s.collections.get(k, {}).items():
            edges |= {((x,), (c,)) for x in ms}
        seen, todo = set(), [tuple(b1)]
        while todo:
            cur = todo.pop()
            for a, b in edges:
                if a == cur and b not in seen:
                    if b == tuple(b2):
                        return True
                    seen.add(b)
                    todo.append(b)
        return False

    def update(self, m, v, d) -> dict:
        new = dict(self.st.assignment)
        name = _leftmost(v).name
        new[(_key(m), name)] = d
        xi = _xi0(v)
        while True:
            xi = _tau_r(xi)
            if xi == EPS:
                break
            obj = self.I(m, _delta_term(xi)[0])
            new[(_key(_oplus((obj,), m)), name)] = d
        return new

    def range_of(self, m, v) -> list:
        if self.st.strict_quantifier:
            c = _oplus((self.I(m, v),), m)
        else:
            xi1 = _tau_r(_xi0(v))
            c = m if xi1 == EPS else _oplus((self.I(m, _delta_term(xi1)[0]),), m)
        return sorted(self.dom(c))

    # forcing
    def sat(self, m, f) -> OracleNode:
        self.st.depth += 1
        if self.st.depth > self.st.cap:
            raise DepthCap(f"nesting deeper than {self.st.cap}")
        try:
            return self._sat(m, f)
        finally:
            self.st.depth -= 1

    def basic(self, m, f, name, gs) -> OracleNode:
        k = _key(m)
        preds = self.s.predicates.get(k, {})
        table = preds.get(name, frozenset())
        if name not in preds or not table:
            return OracleNode("A", f, "U")
        for tup in table:
            for g, o in zip(gs, tup):
                where = _tau_r(m) if isinstance(g, Connector) and m[0] != "eps" else m
                if isinstance(g, Connector) and m[0] == "eps":
                    return OracleNode("A", f, "U")
                if not self.properO(where, o):
                    return OracleNode("A", f, "U")
        if not all(self.properT(m, g) for g in gs):
            return OracleNode("A", f, "U")
        return OracleNode("1", f, _tv(tuple(self.I(m, g) for g in gs) in table))

    def _sat(self, m, f) -> OracleNode:
        if isinstance(f, Top):
            return OracleNode("4", f, "T")
        if isinstance(f, Bot):
            return OracleNode("5", f, "F")
        if isinstance(f, Atom):
            return self.basic(m, f, f.pred.name, f.args)
        if isinstance(f, NegAtom):
            inner = self.basic(m, Atom(f.pred, f.args), f.pred.name, f.args)
            return OracleNode("6", f, _not(inner.value), (inner,))
        if isinstance(f, Eq):
            if not (self.properT(m, f.left) and self.properT(m, f.right)):
                return OracleNode("B", f, "U")
            return OracleNode("12", f, _tv(self.I(m, f.left) == self.I(m, f.right)))
        if isinstance(f, SurfEq):
            if not (self.properT(m, f.left) and self.properT(m, f.right)):
                return OracleNode("C", f, "U")
            return OracleNode("13", f, _tv(_surface(self.I(m, f.left), self.I(m, f.right))))
        if isinstance(f, Apply):
            p = f.pred
            if isinstance(p, Basic):
                return self.basic(m, f, p.sym.name, tuple(Plain(t) for t in f.args))
            if isinstance(p, Collective):
                for _, ts in p.parts:
                    if not all(self.properT(m, t) for t in ts):
                        return OracleNode("D", f, "U")
                if not all(self.properT(m, t) for t in f.args):
                    return OracleNode("D", f, "U")
                whole = tuple(self.I(m, t) for t in f.args)
                kids, vals = [], []
                for part, ts in p.parts:
                    a = Atom(part.sym, tuple(Plain(t) for t in ts))
                    node = self.basic(m, a, part.sym.name, a.args)
                    kids.append(node)
                    vals.append(node.value)
                    vals.append(_tv(self.member(m, tuple(self.I(m, t) for t in ts), whole)))
                return OracleNode("2", f, _and(*vals), tuple(kids))
            if not all(self.properT(m, t) for t in f.args):
                return OracleNode("E", f, "U")
            inner = _oplus(tuple(self.I(m, t) for t in f.args), m)
            attr = self.sat(inner, p.attribute)
            base = self.sat(m, Apply(p.base, f.args))
            if attr.value == "U" or (self.st.strict_attribute and attr.value != "T"):
                return OracleNode("E", f, "U", (base, attr))
            return OracleNode("3", f, _and(base.value, attr.value), (base, attr))
        if isinstance(f, Neg):
            inner = self.sat(m, f.body)
            return OracleNode("6", f, _not(inner.value), (inner,))
        if isinstance(f, (Forall, Exists)):
            rule = "7" if isinstance(f, Forall) else "8"
            kids = []
            for d in self.range_of(m, f.var):
                saved = self.st.assignment
                self.st.assignment = self.update(m, f.var, d)
                try:
                    kids.append(self.sat(m, f.body))
                finally:
                    self.st.assignment = saved
            if not kids:
                return OracleNode(rule, f, "U")
            vals = [k.value for k in kids]
            return OracleNode(rule, f, _and(*vals) if rule == "7" else _or(*vals), tuple(kids))
        if isinstance(f, (And, Or, Implies)):
            a, b = self.sat(m, f.left), self.sat(m, f.right)
            if isinstance(f, And):
                return OracleNode("9", f, _and(a.value, b.value), (a, b))
            if isinstance(f, Or):
                return OracleNode("10", f, _or(a.value, b.value), (a, b))
            return OracleNode("11", f, _or(_not(a.value), b.value), (a, b))
        raise OracleError(f"not a formula: {f!r}")


def oracle_eval(s: Structure, f, *, strict_quantifier: bool = False, strict_attribute: bool = False,
                depth_cap: int = 200) -> OracleResult:
    """Evaluate ``f`` at the top context by exhaustive expansion."""
    st = _State(s, strict_quantifier, strict_attribute, depth_cap, assignment=dict(s.assignment))
    node = _Oracle(st).sat(EPS, f)
    return OracleResult(node.value, node)
