"""Loader for ``.pgls`` structure files (YAML).

Sections: ``universe``, ``domains``, ``predicates``, optional ``signature``,
``domain_symbols``, ``collections``, ``inclusions``, ``assignment`` and
``order``.  Objects are written ``d`` or ``d^2``; ``k < f`` is the attributed
object ``k <. f`` (left associative) and ``(a.b)`` is a multi-object body.
Context keys use the same syntax with ``""`` for the top context, so
``learner < PCinstructor < school`` names the context three levels down.
"""

from __future__ import annotations

import re
from pathlib import Path

import yaml

from .model import (
    AttrObject, BasicObject, EPS_KEY, ModelIssue, Obj, Structure, normalize, render_key, validate,
)

__all__ = ["StructureFormatError", "parse_object", "parse_key", "load_structure", "load_structure_file"]


class StructureFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, issues: list[ModelIssue] | None = None):
        where = f"line {line}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.issues = issues or []


_TOK = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)(?:\^(?P<copy>\d+))?|(?P<op>[<().]))")


def _tokens(text: str) -> list[tuple[str, str]]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m or m.end() == pos:
            raise StructureFormatError(f"cannot read object {text!r} at column {pos + 1}")
        if m.group("name"):
            out.append(("obj", BasicObject(m.group("name"), int(m.group("copy") or 1))))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


class _ObjParser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", None)

    def expect(self, op: str) -> None:
        if self.peek() != ("op", op):
            raise StructureFormatError(f"expected {op!r} in {self.text!r}")
        self.i += 1

    def obj(self) -> Obj:
        o = self.atom()
        while self.peek() == ("op", "<"):
            self.i += 1
            o = AttrObject(o, self.body_atom())
        return o

    def atom(self) -> Obj:
        kind, val = self.peek()
        if kind == "obj":
            self.i += 1
            return val
        if (kind, val) == ("op", "("):
            self.i += 1
            o = self.obj()
            self.expect(")")
            return o
        raise StructureFormatError(f"expected an object in {self.text!r}")

    def body_atom(self) -> tuple:
        kind, val = self.peek()
        if kind == "obj":
            self.i += 1
            return (val,)
        self.expect("(")
        items = [self.obj()]
        while self.peek() == ("op", "."):
            self.i += 1
            items.append(self.obj())
        self.expect(")")
        return tuple(items)

    def head_segment(self) -> tuple:
        if self.peek() == ("op", "("):
            save = self.i
            self.i += 1
            items = [self.obj()]
            while self.peek() == ("op", "."):
                self.i += 1
                items.append(self.obj())
            if len(items) > 1:
                self.expect(")")
                return tuple(items)
            self.i = save
        return (self.atom(),)

    def done(self) -> None:
        if self.peek()[0] != "eof":
            raise StructureFormatError(f"trailing input in {self.text!r}")


def parse_object(text) -> Obj:
    p = _ObjParser(str(text))
    o = p.obj()
    p.done()
    return o


def parse_body(text) -> tuple:
    p = _ObjParser(str(text))
    items = [p.obj()]
    while p.peek() == ("op", "."):
        p.i += 1
        items.append(p.obj())
    p.done()
    return tuple(items)


def parse_key(text) -> tuple:
    """Context key: a head segment followed by ``< body`` segments."""
    if text is None or str(text).strip() == "":
        return EPS_KEY
    p = _ObjParser(str(text))
    segs = [p.head_segment()]
    while p.peek() == ("op", "<"):
        p.i += 1
        segs.append(p.body_atom())
    p.done()
    return normalize(tuple(segs))


def _as_list(value, what: str) -> list:
    if value is None:
        return []
    if not isinstance(value, list):
        raise StructureFormatError(f"{what} must be a list")
    return value


def _as_map(value, what: str) -> dict:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise StructureFormatError(f"{what} must be a mapping")
    return value


def _tuple(entry, name: str) -> tuple:
    if isinstance(entry, list):
        return tuple(parse_object(e) for e in entry)
    return (parse_object(entry),)


def load_structure(text: str, *, check: bool = True) -> Structure:
    """Parse a structure document; with ``check`` run validation and reject issues."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise StructureFormatError(str(exc), mark.line + 1 if mark else None) from None
    if not isinstance(doc, dict):
        raise StructureFormatError("a structure file is a mapping of sections")
    unknown = set(doc) - {"universe", "signature", "domains", "predicates", "domain_symbols",
                          "collections", "inclusions", "assignment", "order"}
    if unknown:
        raise StructureFormatError(f"unknown sections: {', '.join(sorted(unknown))}", _line_of(text, sorted(unknown)[0]))
    for required in ("universe", "domains", "predicates"):
        if required not in doc:
            raise StructureFormatError(f"missing section {required!r}")

    universe = frozenset(parse_object(o) for o in _as_list(doc["universe"], "universe"))
    if any(not isinstance(o, BasicObject) for o in universe):
        raise StructureFormatError("the universe holds basic objects only", _line_of(text, "universe"))

    domains = {}
    for k, objs in _as_map(doc["domains"], "domains").items():
        domains[parse_key(k)] = frozenset(parse_object(o) for o in _as_list(objs, f"domain {k!r}"))

    signature = {str(n): int(a) for n, a in _as_map(doc.get("signature"), "signature").items()}
    predicates = {}
    for k, preds in _as_map(doc["predicates"], "predicates").items():
        key = parse_key(k)
        tables = {}
        for name, rows in _as_map(preds, f"predicates at {k!r}").items():
            table = frozenset(_tuple(r, name) for r in _as_list(rows, f"table {name!r}"))
            tables[str(name)] = table
            for tup in table:
                arity = signature.setdefault(str(name), len(tup))
                if arity != len(tup):
                    raise StructureFormatError(f"{name}: rows of different lengths", _line_of(text, name))
        predicates[key] = tables
    for key, tables in predicates.items():
        for name in tables:
            if name not in signature:
                raise StructureFormatError(f"arity of {name!r} unknown; declare it under 'signature'",
                                           _line_of(text, name))

    domain_symbols = {parse_key(k): {str(a): parse_object(o) for a, o in _as_map(m, "domain symbols").items()}
                      for k, m in _as_map(doc.get("domain_symbols"), "domain_symbols").items()}
    collections = {}
    for k, m in _as_map(doc.get("collections"), "collections").items():
        collections[parse_key(k)] = {parse_object(c): frozenset(parse_object(x) for x in _as_list(ms, "members"))
                                     for c, ms in _as_map(m, "collections").items()}
    inclusions = {}
    for k, pairs in _as_map(doc.get("inclusions"), "inclusions").items():
        rows = set()
        for pair in _as_list(pairs, "inclusions"):
            if not isinstance(pair, list) or len(pair) != 2:
                raise StructureFormatError("each inclusion is a [member, container] pair", _line_of(text, "inclusions"))
            rows.add((parse_body(pair[0]), parse_body(pair[1])))
        inclusions[parse_key(k)] = _close(rows)
    assignment = {}
    for k, m in _as_map(doc.get("assignment"), "assignment").items():
        for var, o in _as_map(m, "assignment").items():
            assignment[(parse_key(k), str(var))] = parse_object(o)
    order = set()
    for pair in _as_list(doc.get("order"), "order"):
        if not isinstance(pair, list) or len(pair) != 2:
            raise StructureFormatError("each order entry is a [lower, upper] pair", _line_of(text, "order"))
        order.add((parse_object(pair[0]), parse_object(pair[1])))

    s = Structure(universe=universe, signature=signature, domains=domains, predicates=predicates,
                  domain_symbols=domain_symbols, collections=collections, inclusions=inclusions,
                  assignment=assignment, order=_close(order))
    if check:
        issues = validate(s)
        if issues:
            msg = "; ".join(f"{i.rule} {i.location}: {i.message}" for i in issues[:5])
            raise StructureFormatError(f"structure is invalid: {msg}", issues=issues)
    return s


def _close(pairs: set) -> frozenset:
    closure = set(pairs)
    while True:
        new = {(a, d) for a, b in closure for c, d in closure if b == c} - closure
        if not new:
            return frozenset(closure)
        closure |= new


def _line_of(text: str, needle: str) -> int | None:
    for i, line in enumerate(text.splitlines(), 1):
        if str(needle) in line:
            return i
    return None


def load_structure_file(path) -> Structure:
    return load_structure(Path(path).read_text(encoding="utf-8"))


def dump_structure(s: Structure) -> str:
    """Render a structure in the file format, one context per line."""
    from .model import render_object

    def q(text: str) -> str:
        return text if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*(\^\d+)?", text) else f'"{text}"'

    def objs(items) -> str:
        return "[" + ", ".join(q(render_object(o)) for o in sorted(items, key=render_object)) + "]"

    def row(t) -> str:
        return q(render_object(t[0])) if len(t) == 1 else "[" + ", ".join(q(render_object(o)) for o in t) + "]"

    order = lambda k: (len(k), render_key(k))
    lines = [f"universe: {objs(s.universe)}",
             "signature: {" + ", ".join(f"{n}: {a}" for n, a in sorted(s.signature.items())) + "}",
             "domains:"]
    lines += [f'  "{render_key(k)}": {objs(s.domains[k])}' for k in sorted(s.domains, key=order)]
    lines.append("predicates:")
    for k in sorted(s.predicates, key=order):
        lines.append(f'  "{render_key(k)}":')
        for name, table in sorted(s.predicates[k].items()):
            rows = sorted(row(t) for t in table)
            lines.append(f"    {name}: [{', '.join(rows)}]")
    if s.domain_symbols:
        lines.append("domain_symbols:")
        for k in sorted(s.domain_symbols, key=order):
            pairs = ", ".join(f"{a}: {q(render_object(o))}" for a, o in sorted(s.domain_symbols[k].items()))
            lines.append(f'  "{render_key(k)}": {{{pairs}}}')
    return "\n".join(lines) + "\n"
