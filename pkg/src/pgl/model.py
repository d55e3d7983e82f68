"""Finite semantic structures and the interpretation of terms.

Evaluation contexts are marked object bodies: tuples of object bodies, the
dagger segment first.  Tables in a :class:`Structure` are indexed by *keys*,
the normalized projection of a context: while the first segment is a single
attributed object ``h <. b`` it is unfolded into ``(h,), b``.  Two contexts with
the same projection therefore share one key.  Contexts themselves stay
unnormalized so that dropping the dagger segment still works.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Union

from .binding import tails
from .syntax import Attr, Connector, Const, Plain, Term, Var, head_chain, leftmost

__all__ = [
    "BasicObject", "AttrObject", "Obj", "Key", "EPS_KEY", "ModelError", "UndeclaredSymbol",
    "MissingAssignment", "ModelIssue", "Structure", "normalize", "rho", "obj_leftmost",
    "subobject", "surface_eq", "sqsubseteq", "interp_term", "interp_body", "interp_gterm",
    "extend_context", "quantifier_context", "proper_object", "proper_objects", "proper_term",
    "proper_gterm", "update", "validate", "render_object", "render_key",
]


@dataclass(frozen=True, order=True)
class BasicObject:
    """``base^copy``."""

    base: str
    copy: int = 1

    def __post_init__(self) -> None:
        if not self.base:
            raise ValueError("object base must be nonempty")
        if not isinstance(self.copy, int) or self.copy < 1:
            raise ValueError("copy numbers are positive integers")


@dataclass(frozen=True)
class AttrObject:
    """Attributed object ``head <. body``."""

    head: "Obj"
    body: tuple["Obj", ...]

    def __post_init__(self) -> None:
        if not isinstance(self.body, tuple) or not self.body:
            raise ValueError("an attributed object needs a nonempty body")


Obj = Union[BasicObject, AttrObject]
Key = tuple  # tuple[tuple[Obj, ...], ...]
EPS_KEY: Key = ()


class ModelError(Exception):
    """Base class for structure and interpretation failures."""


class UndeclaredSymbol(ModelError):
    pass


class MissingAssignment(ModelError):
    pass


@dataclass(frozen=True)
class ModelIssue:
    rule: str
    location: str
    message: str


def render_object(o: Obj) -> str:
    if isinstance(o, BasicObject):
        return o.base if o.copy == 1 else f"{o.base}^{o.copy}"
    body = o.body
    if len(body) == 1 and isinstance(body[0], BasicObject):
        tail = render_object(body[0])
    else:
        tail = "(" + ".".join(render_object(b) for b in body) + ")"
    return f"{render_object(o.head)} < {tail}"


def render_key(key: Key) -> str:
    if not key:
        return ""
    parts = []
    for i, seg in enumerate(key):
        if len(seg) == 1 and (i == 0 or isinstance(seg[0], BasicObject)):
            text = render_object(seg[0])
            parts.append(f"({text})" if i and isinstance(seg[0], AttrObject) else text)
        else:
            parts.append("(" + ".".join(render_object(o) for o in seg) + ")")
    return " < ".join(parts)


def normalize(ctx) -> Key:
    segs = list(ctx)
    while segs and len(segs[0]) == 1 and isinstance(segs[0][0], AttrObject):
        o = segs[0][0]
        segs[0:1] = [(o.head,), o.body]
    return tuple(tuple(s) for s in segs)


def obj_leftmost(o: Obj) -> BasicObject:
    while isinstance(o, AttrObject):
        o = o.head
    return o


def rho(o: Obj) -> str:
    return obj_leftmost(o).base


def subobject(os) -> list[Obj]:
    """Object analogue of ``subterm``."""
    out: list[Obj] = []
    for o in (os if isinstance(os, tuple) else (os,)):
        if isinstance(o, AttrObject):
            out.extend(subobject(o.body))
            out.extend(AttrObject(h, o.body) for h in subobject(o.head))
        else:
            out.append(o)
    return out


def surface_eq(o1: Obj, o2: Obj) -> bool:
    """Same shape, same base at the last sub-object, equal earlier sub-objects."""
    s1, s2 = subobject(o1), subobject(o2)
    if len(s1) != len(s2):
        return False
    if rho(s1[-1]) != rho(s2[-1]):
        return False
    return all(a == b for a, b in zip(s1[:-1], s2[:-1]))


def _leaves(o: Obj):
    if isinstance(o, BasicObject):
        yield o
    else:
        yield from _leaves(o.head)
        for b in o.body:
            yield from _leaves(b)


@dataclass(frozen=True)
class Structure:
    """A finite structure with explicitly tabulated components.

    ``predicates`` maps a key to the predicates available there and their
    tables; ``signature`` gives every predicate's arity.  Missing keys mean an
    empty domain and no available predicates.
    """

    universe: frozenset
    signature: Mapping[str, int]
    domains: Mapping[Key, frozenset]
    predicates: Mapping[Key, Mapping[str, frozenset]]
    domain_symbols: Mapping[Key, Mapping[str, BasicObject]] = field(default_factory=dict)
    collections: Mapping[Key, Mapping[BasicObject, frozenset]] = field(default_factory=dict)
    inclusions: Mapping[Key, frozenset] = field(default_factory=dict)
    assignment: Mapping[tuple, BasicObject] = field(default_factory=dict)
    order: frozenset = frozenset()
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def domain(self, key: Key) -> frozenset:
        return self.domains.get(key, frozenset())

    def available(self, key: Key) -> frozenset:
        return frozenset(self.predicates.get(key, {}))

    def table(self, key: Key, name: str) -> frozenset:
        return self.predicates.get(key, {}).get(name, frozenset())

    def keys(self) -> set:
        ks = set(self.domains) | set(self.predicates) | {EPS_KEY}
        for k in list(ks):
            for i in range(1, len(k)):
                ks.add(normalize(k[i:]))
        return ks

    def member(self, key: Key, b1: tuple, b2: tuple) -> bool:
        """``b1`` is included in ``b2`` under the inclusion indexed by ``key``."""
        cache = self._cache.setdefault("member", {})
        rel = cache.get(key)
        if rel is None:
            pairs = set(self.inclusions.get(key, ()))
            for c, members in self.collections.get(key, {}).items():
                pairs.update(((m,), (c,)) for m in members)
            rel = _transitive(pairs)
            cache[key] = rel
        return (tuple(b1), tuple(b2)) in rel

    def base_leq(self, a: Obj, b: Obj) -> bool:
        return a == b or (a, b) in self.order


def _transitive(pairs: set) -> frozenset:
    closure = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(closure):
            for c, d in list(closure):
                if b == c and (a, d) not in closure:
                    closure.add((a, d))
                    changed = True
    return frozenset(closure)


# -- the order on contexts --------------------------------------------------------

def _seg_leq(s: Structure, a: tuple, b: tuple) -> bool:
    return len(a) == len(b) and all(s.base_leq(x, y) for x, y in zip(a, b))


def sqsubseteq(s: Structure, k1: Key, k2: Key) -> bool:
    """Least order generated by reflexivity, subsumption and componentwise steps.

    ``eps`` is the top element; a context lies below its own parent chain.
    """
    k1, k2 = normalize(k1), normalize(k2)
    if k1 == k2 or not k2:
        return True
    if not k1:
        return False
    r1, r2 = k1[1:], k2[1:]
    if r1 and sqsubseteq(s, r1, k2):
        return True
    if r1 and r2:
        return _seg_leq(s, k1[0], k2[0]) and sqsubseteq(s, r1, r2)
    if not r1 and not r2:
        return _seg_leq(s, k1[0], k2[0])
    return False


# -- interpretation ------------------------------------------------------------------

def _lookup_symbol(s: Structure, key: Key, name: str) -> BasicObject:
    table = s.domain_symbols.get(key)
    if table is not None and name in table:
        return table[name]
    top = s.domain_symbols.get(EPS_KEY, {})
    if name in top:
        return top[name]
    raise UndeclaredSymbol(f"domain symbol {name!r} has no interpretation")


def interp_term(s: Structure, ctx, t: Term) -> Obj:
    if isinstance(t, Const):
        return _lookup_symbol(s, normalize(ctx), t.name)
    if isinstance(t, Var):
        try:
            return s.assignment[(normalize(ctx), t.name)]
        except KeyError:
            raise MissingAssignment(
                f"no value for {t.name} at context [{render_key(normalize(ctx))}]") from None
    body = interp_body(s, ctx, t.body)
    return AttrObject(interp_term(s, (body,) + tuple(ctx), t.head), body)


def interp_body(s: Structure, ctx, ts) -> tuple:
    return tuple(interp_term(s, ctx, t) for t in ts)


def interp_gterm(s: Structure, ctx, g) -> Obj:
    if isinstance(g, Connector):
        if not ctx:
            raise ModelError("a connector has no enclosing context at the top level")
        return interp_term(s, ctx[1:], g.term)
    return interp_term(s, ctx, g.term if isinstance(g, Plain) else g)


def extend_context(s: Structure, ctx, segments) -> tuple:
    """Interpret tail segments outermost first, prepending each to ``ctx``."""
    c = tuple(ctx)
    for seg in reversed(segments):
        c = (interp_body(s, c, seg),) + c
    return c


def quantifier_context(s: Structure, ctx, v: Term, strict: bool = False) -> tuple:
    """Context whose domain a quantifier over ``v`` ranges over.

    By default the attribute chain of ``v`` is interpreted onto ``ctx``; with
    ``strict`` the current value of ``v`` itself is prepended instead.
    """
    if strict:
        return ((interp_term(s, ctx, v),),) + tuple(ctx)
    return extend_context(s, ctx, head_chain(v)[1:])


# -- properness -------------------------------------------------------------------------

def proper_object(s: Structure, ctx, o: Obj) -> bool:
    if isinstance(o, BasicObject):
        return o in s.domain(normalize(ctx))
    return proper_object(s, (o.body,) + tuple(ctx), o.head) and proper_objects(s, ctx, o.body)


def proper_objects(s: Structure, ctx, objs: Iterable[Obj]) -> bool:
    return all(proper_object(s, ctx, o) for o in objs)


def proper_term(s: Structure, ctx, t: Term) -> bool:
    if isinstance(t, Attr):
        if not all(proper_term(s, ctx, b) for b in t.body):
            return False
        inner = (interp_body(s, ctx, t.body),) + tuple(ctx)
        return proper_term(s, inner, t.head)
    return interp_term(s, ctx, t) in s.domain(normalize(ctx))


def proper_gterm(s: Structure, ctx, g) -> bool:
    if isinstance(g, Connector):
        return bool(ctx) and proper_term(s, ctx[1:], g.term)
    return proper_term(s, ctx, g.term if isinstance(g, Plain) else g)


# -- assignment update ---------------------------------------------------------------

def update(s: Structure, ctx, v: Term, d: BasicObject) -> Structure:
    """Assign ``d`` to the leftmost of ``v`` at ``ctx`` and at every tail context."""
    name = leftmost(v).name
    assignment = dict(s.assignment)
    assignment[(normalize(ctx), name)] = d
    for tail in tails(v):
        assignment[(normalize(extend_context(s, ctx, tail)), name)] = d
    return replace(s, assignment=assignment)


# -- validation --------------------------------------------------------------------------

def validate(s: Structure) -> list[ModelIssue]:
    """Check the structural laws; an empty list means the structure is usable."""
    issues: list[ModelIssue] = []

    def issue(rule: str, key, msg: str) -> None:
        issues.append(ModelIssue(rule, f"[{render_key(key)}]" if key is not None else "", msg))

    if s.domain(EPS_KEY) != s.universe:
        issue("Top", EPS_KEY, "the top domain must be the whole universe")
    missing = set(s.signature) - set(s.available(EPS_KEY))
    if missing:
        issue("Top", EPS_KEY, f"predicates not available at the top: {', '.join(sorted(missing))}")
    for key, dom in s.domains.items():
        if key != normalize(key):
            issue("Key", key, "context key is not normalized")
        stray = dom - s.universe
        if stray:
            issue("Domain", key, f"objects outside the universe: {sorted(map(render_object, stray))}")
    for key, preds in s.predicates.items():
        for name, table in preds.items():
            arity = s.signature.get(name)
            if arity is None:
                issue("Signature", key, f"predicate {name!r} has no declared arity")
                continue
            for tup in table:
                if len(tup) != arity:
                    issue("Arity", key, f"{name}: tuple of length {len(tup)}, expected {arity}")
                for o in tup:
                    if any(leaf not in s.universe for leaf in _leaves(o)):
                        issue("Domain", key, f"{name}: {render_object(o)} mentions an unknown object")
    keys = sorted(s.keys(), key=lambda k: (len(k), render_key(k)))
    for k1 in keys:
        for k2 in keys:
            if k1 == k2 or not sqsubseteq(s, k1, k2):
                continue
            if not s.domain(k1) <= s.domain(k2):
                extra = sorted(map(render_object, s.domain(k1) - s.domain(k2)))
                issue("Monotonicity", k1, f"domain objects {extra} missing from [{render_key(k2)}]")
            if not s.available(k1) <= s.available(k2):
                extra = sorted(s.available(k1) - s.available(k2))
                issue("Monotonicity", k1, f"predicates {extra} missing from [{render_key(k2)}]")
    for key, pairs in s.inclusions.items():
        pairs = set(pairs)
        if _transitive(pairs) != pairs:
            issue("Inclusion", key, "inclusions are not transitively closed")
    for key, colls in s.collections.items():
        for c, members in colls.items():
            bases = [m.base for m in members]
            if len(set(bases)) != len(bases):
                issue("Collection", key, f"{render_object(c)} comprises two copies of one base")
            if c not in s.universe or not members <= s.universe:
                issue("Collection", key, f"{render_object(c)} mentions an unknown object")
    for a, b in s.order:
        if a != b and (b, a) in s.order:
            issue("Order", None, f"{render_object(a)} and {render_object(b)} are mutually below each other")
    for key, table in s.domain_symbols.items():
        for name, o in table.items():
            if o not in s.universe:
                issue("Domain", key, f"symbol {name!r} denotes an unknown object")
    for (key, name), o in s.assignment.items():
        if o not in s.universe:
            issue("Domain", key, f"variable {name!r} is assigned an unknown object")
    return issues
