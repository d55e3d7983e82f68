"""Recursive-descent parser for the ASCII formula syntax.

Grammar, loosest binding first::

    impl    := quant ('->' impl)?                 right associative
    quant   := ('forall' | 'exists') term '.' quant | andor
    andor   := unary (('&' | '|') unary)*        one level, left associative
    unary   := '~' unary | primary
    primary := 'top' | 'bot' | '(' impl ')' | bracket args
             | NAME '(' gterms ')' | term ('=' | '~=') term
    bracket := '[' (collective | NAME | bracket) (':>' quant)* ']'

A quantifier met as an operand extends as far right as its level allows, so
``p & forall x. q & r`` reads ``p & (forall x. (q & r))``.  The attribute after
``:>`` may use ``&``, ``|``, ``~`` and quantifiers; an implication there must be
parenthesized.

``.pgl`` files may start with declaration lines::

    pred farmer/1, own/2
    var x, y
    const a

Declaring any predicate closes the predicate namespace, and likewise for
variables.  Names never declared ``const`` default to variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    Apply, And, Attr, AttributedPred, Atom, Basic, BOT, Collective, Connector,
    Const, Eq, Exists, Forall, Formula, Implies, Neg, Or, Plain, PredSym,
    SurfEq, Term, TOP, Var, arity_of, leftmost,
)

__all__ = ["SourceSpan", "ParseError", "Declarations", "parse_formula", "parse_term", "parse_file"]

KEYWORDS = {"forall", "exists", "top", "bot"}


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets into the UTF-8 encoded input."""

    begin: int
    end: int


class ParseError(Exception):
    """Syntax or kind diagnostic carrying a source span."""

    def __init__(self, message: str, span: SourceSpan, kind: str = "syntax"):
        super().__init__(f"{kind} error at {span.begin}-{span.end}: {message}")
        self.message = message
        self.span = span
        self.kind = kind


@dataclass
class Declarations:
    preds: dict[str, int]
    variables: set[str]
    consts: set[str]
    closed_preds: bool = False
    closed_vars: bool = False


_TOKEN = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>\#[^\n]*)
      | (?P<op><\.|:>|->|~=|[~&|()\[\],.^=])
      | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'op', 'name', 'eof'
    text: str
    begin: int
    end: int


class _Lexer:
    def __init__(self, text: str, base: int = 0):
        self.text = text
        self.toks: list[_Tok] = []
        pos = 0
        raw = text.encode("utf-8")
        # map char offsets to byte offsets lazily via prefix encoding
        def boff(i: int) -> int:
            return base + len(text[:i].encode("utf-8"))
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(boff(pos), boff(pos + 1)))
            if m.lastgroup in ("op", "name"):
                self.toks.append(_Tok(m.lastgroup, m.group(), boff(m.start()), boff(m.end())))
            pos = m.end()
        end = base + len(raw)
        self.toks.append(_Tok("eof", "", end, end))


class _Parser:
    def __init__(self, toks: list[_Tok], decls: Declarations):
        self.toks = toks
        self.i = 0
        self.decls = decls
        self.pred_uses: dict[str, tuple[int, SourceSpan]] = {}
        self.term_names: dict[str, SourceSpan] = {}

    # -- token helpers
    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t.kind in ("op", "name") and t.text == text

    def take(self) -> _Tok:
        t = self.peek()
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if not self.at(text):
            shown = t.text or "end of input"
            raise ParseError(f"expected {text!r}, found {shown!r}", SourceSpan(t.begin, t.end))
        return self.take()

    def error(self, msg: str, tok: _Tok | None = None, kind: str = "syntax") -> ParseError:
        tok = tok or self.peek()
        return ParseError(msg, SourceSpan(tok.begin, tok.end), kind)

    # -- symbols
    def name(self) -> _Tok:
        t = self.peek()
        if t.kind != "name" or t.text in KEYWORDS:
            raise self.error(f"expected a name, found {t.text or 'end of input'!r}")
        return self.take()

    def pred_sym(self, tok: _Tok, arity: int) -> PredSym:
        name = tok.text
        span = SourceSpan(tok.begin, tok.end)
        if name in self.term_names or name in self.decls.consts or name in self.decls.variables:
            raise ParseError(f"{name!r} is used both as a term and as a predicate", span, "kind")
        declared = self.decls.preds.get(name)
        if declared is None and self.decls.closed_preds:
            raise ParseError(f"undeclared predicate {name!r}", span, "kind")
        if declared is not None and declared != arity:
            raise ParseError(f"predicate {name!r} declared with arity {declared}, used with {arity}", span, "kind")
        prev = self.pred_uses.get(name)
        if prev is not None and prev[0] != arity:
            raise ParseError(f"predicate {name!r} used with arities {prev[0]} and {arity}", span, "kind")
        self.pred_uses.setdefault(name, (arity, span))
        if arity < 1:
            raise ParseError(f"predicate {name!r} needs at least one argument", span)
        return PredSym(name, arity)

    def basic_term(self, tok: _Tok) -> Term:
        name = tok.text
        span = SourceSpan(tok.begin, tok.end)
        if name in self.pred_uses or (name in self.decls.preds and name not in self.decls.consts):
            raise ParseError(f"{name!r} is a predicate, not a term", span, "kind")
        self.term_names.setdefault(name, span)
        if name in self.decls.consts:
            return Const(name)
        if self.decls.closed_vars and name not in self.decls.variables:
            raise ParseError(f"undeclared symbol {name!r}", span, "kind")
        return Var(name)

    # -- terms
    def term(self) -> Term:
        if self.at("("):
            self.take()
            t = self.term()
            self.expect(")")
        else:
            t = self.basic_term(self.name())
        while self.at("<."):
            self.take()
            t = Attr(t, self.body_atom())
        return t

    def body_atom(self) -> tuple[Term, ...]:
        if self.at("("):
            self.take()
            items = [self.term()]
            while self.at("."):
                self.take()
                items.append(self.term())
            self.expect(")")
            return tuple(items)
        return (self.basic_term(self.name()),)

    def gterm(self):
        if self.at("^"):
            self.take()
            return Connector(self.term())
        return Plain(self.term())

    def term_list(self, gterms: bool) -> tuple:
        self.expect("(")
        items = [self.gterm() if gterms else self.term()]
        while self.at(","):
            self.take()
            items.append(self.gterm() if gterms else self.term())
        self.expect(")")
        return tuple(items)

    # -- formulas
    def impl(self) -> Formula:
        left = self.quant()
        if self.at("->"):
            self.take()
            return Implies(left, self.impl())
        return left

    def quant(self) -> Formula:
        if self.at("forall") or self.at("exists"):
            kw = self.take()
            start = self.peek()
            var = self.term()
            if isinstance(leftmost(var), Const):
                raise ParseError("a quantifier must bind a variable, not a domain symbol",
                                 SourceSpan(start.begin, self.toks[self.i - 1].end), "kind")
            self.expect(".")
            body = self.quant()
            return Forall(var, body) if kw.text == "forall" else Exists(var, body)
        return self.andor()

    def andor(self) -> Formula:
        left = self.unary()
        while self.at("&") or self.at("|"):
            op = self.take().text
            right = self.unary()
            left = And(left, right) if op == "&" else Or(left, right)
        return left

    def unary(self) -> Formula:
        if self.at("~"):
            self.take()
            return Neg(self.unary())
        if self.at("forall") or self.at("exists"):
            return self.quant()
        return self.primary()

    def primary(self) -> Formula:
        t = self.peek()
        if self.at("top"):
            self.take()
            return TOP
        if self.at("bot"):
            self.take()
            return BOT
        if self.at("("):
            self.take()
            f = self.impl()
            self.expect(")")
            return f
        if self.at("["):
            pred, _ = self.bracket()
            args = self.term_list(gterms=False)
            pred = self.resolve(pred, args)
            if len(args) != arity_of(pred):
                raise self.error(f"bracketed predicate expects {arity_of(pred)} terms, got {len(args)}", t)
            return Apply(pred, args)
        if t.kind == "name" and t.text not in KEYWORDS and self.at("(", 1):
            self.take()
            args = self.term_list(gterms=True)
            return Atom(self.pred_sym(t, len(args)), args)
        if t.kind == "name" and t.text not in KEYWORDS:
            left = self.term()
            if self.at("="):
                self.take()
                return Eq(left, self.term())
            if self.at("~="):
                self.take()
                return SurfEq(left, self.term())
            raise self.error("expected '=' or '~=' after a term")
        raise self.error(f"unexpected {t.text or 'end of input'!r}")

    def bracket(self):
        """Parse ``[ ... ]``; returns (predicate, has_bare_parts)."""
        self.expect("[")
        bare = False
        if self.at("["):
            base, bare = self.bracket()
        else:
            base, bare = self.collective_or_basic()
        while self.at(":>"):
            self.take()
            attr = self.quant()
            if self.at("->"):
                raise self.error("parenthesize an implication used as an attribute")
            base = AttributedPred(base, attr)
        self.expect("]")
        return base, bare

    def collective_or_basic(self):
        parts = [self.part()]
        while self.at("&"):
            self.take()
            parts.append(self.part())
        if len(parts) == 1:
            tok, args = parts[0]
            if args is not None:
                raise self.error("a single basic predicate inside brackets takes no arguments", tok)
            return _PendingBasic(tok), False
        bare = [a is None for _, a in parts]
        if any(bare) and not all(bare):
            raise self.error("collective parts must all carry terms or all be bare")
        if all(bare):
            return _PendingCollective(parts), True
        built = []
        for tok, args in parts:
            built.append((Basic(self.pred_sym(tok, len(args))), args))
        return Collective(tuple(built)), False

    def resolve(self, pred, args):
        """Fix arities that are known only once the argument list is read."""
        if isinstance(pred, _PendingBasic):
            return Basic(self.pred_sym(pred.tok, len(args)))
        if isinstance(pred, _PendingCollective):
            return Collective(tuple((Basic(self.pred_sym(tok, len(args))), args) for tok, _ in pred.parts))
        if isinstance(pred, AttributedPred):
            return AttributedPred(self.resolve(pred.base, args), pred.attribute)
        return pred

    def part(self):
        tok = self.name()
        if self.at("("):
            return tok, self.term_list(gterms=False)
        return tok, None


class _PendingBasic:
    """Basic predicate whose arity is fixed once the argument list is read."""

    def __init__(self, tok: _Tok):
        self.tok = tok


class _PendingCollective:
    """Collective with bare parts: each part takes the application's terms."""

    def __init__(self, parts):
        self.parts = parts


_DECL = re.compile(r"^\s*(pred|var|const)\b(.*)$")


def _split_declarations(text: str) -> tuple[Declarations, str, int]:
    """Strip leading declaration lines; return declarations, remaining text and its byte offset."""
    decls = Declarations(preds={}, variables=set(), consts=set())
    lines = text.splitlines(keepends=True)
    consumed = 0
    for line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            consumed += len(line)
            continue
        m = _DECL.match(line)
        if not m:
            break
        kind, rest = m.group(1), m.group(2).split("#", 1)[0]
        offset = len(text[:consumed].encode("utf-8"))
        for item in filter(None, (s.strip() for s in rest.split(","))):
            if kind == "pred":
                pm = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_']*)\s*/\s*(\d+)", item)
                if not pm:
                    raise ParseError(f"bad predicate declaration {item!r} (want name/arity)",
                                     SourceSpan(offset, offset + len(line.encode("utf-8"))))
                decls.preds[pm.group(1)] = int(pm.group(2))
                decls.closed_preds = True
            else:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", item) or item in KEYWORDS:
                    raise ParseError(f"bad {kind} declaration {item!r}",
                                     SourceSpan(offset, offset + len(line.encode("utf-8"))))
                if kind == "var":
                    decls.variables.add(item)
                    decls.closed_vars = True
                else:
                    decls.consts.add(item)
        consumed += len(line)
    overlap = (decls.variables & decls.consts) | (set(decls.preds) & (decls.variables | decls.consts))
    if overlap:
        name = sorted(overlap)[0]
        raise ParseError(f"{name!r} declared with two kinds", SourceSpan(0, 0), "kind")
    rest = text[consumed:]
    return decls, rest, len(text[:consumed].encode("utf-8"))


def parse_formula(text: str, *, consts=(), preds: dict[str, int] | None = None) -> Formula:
    """Parse formula text, optionally preceded by declaration lines.

    Raises ParseError with a SourceSpan on syntax or kind errors.
    """
    decls, body, offset = _split_declarations(text)
    decls.consts |= set(consts)
    if preds:
        decls.preds.update(preds)
        decls.closed_preds = True
    lexer = _Lexer(body, base=offset)
    p = _Parser(lexer.toks, decls)
    if p.peek().kind == "eof":
        raise p.error("empty formula")
    f = p.impl()
    if p.peek().kind != "eof":
        raise p.error(f"unexpected {p.peek().text!r} after the formula")
    return f


def parse_term(text: str, *, consts=()) -> Term:
    decls = Declarations(preds={}, variables=set(), consts=set(consts))
    p = _Parser(_Lexer(text).toks, decls)
    t = p.term()
    if p.peek().kind != "eof":
        raise p.error(f"unexpected {p.peek().text!r} after the term")
    return t


def parse_file(path) -> Formula:
    with open(path, encoding="utf-8") as fh:
        return parse_formula(fh.read())
