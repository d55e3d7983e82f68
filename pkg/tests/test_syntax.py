import pytest
from hypothesis import given, settings, strategies as st

from pgl.corpus import corpus, entry, formula_text
from pgl.parser import ParseError, parse_formula, parse_term
from pgl.syntax import (
    And, Apply, Atom, Attr, AttributedPred, BOT, Connector, Const, Exists, Forall, Implies, Neg,
    NegAtom, Plain, PredSym, TOP, Var, head_chain, is_variable, leftmost, render, subterm, subvariable,
)

x, y, z, u, w = (Var(n) for n in "xyzuw")
a = Const("a")


def test_leftmost():
    assert leftmost(x) == x
    assert leftmost(Attr(y, (x,))) == y
    assert leftmost(Attr(Attr(Attr(u, (z,)), (y,)), (x,))) == u


def test_subterm_orders_body_first():
    assert subterm(x) == [x]
    assert subterm(Attr(y, (x,))) == [x, Attr(y, (x,))]
    assert subterm((Var("x1"), Var("x2"))) == [Var("x1"), Var("x2")]


def test_subvariable_skips_symbols():
    assert subvariable(Attr(y, (x,))) == [x, Attr(y, (x,))]
    assert subvariable(Attr(y, (a,))) == [Attr(y, (a,))]
    assert subvariable((Const("a1"), Const("a2"))) == []


def test_is_variable():
    assert is_variable(x)
    assert not is_variable(a)
    assert is_variable(Attr(y, (a,)))


def test_head_chain_splits_left_associative_chain():
    t = parse_term("w<.z<.y<.x")
    assert head_chain(t) == ((w,), (z,), (y,), (x,))


def test_render_simple():
    p = PredSym("p", 1)
    assert render(NegAtom(p, (Plain(x),))) == "~p(x)"
    assert render(Implies(TOP, BOT)) == "top -> bot"


def test_precedence_negation_binds_tightest():
    f = parse_formula("~p(x) & q(x)")
    assert isinstance(f, And)
    assert isinstance(f.left, (Neg, NegAtom))
    assert isinstance(f.right, Atom)


def test_implication_is_right_associative():
    f = parse_formula("top -> bot -> top")
    assert isinstance(f, Implies) and isinstance(f.right, Implies)


def test_quantifier_scope_stops_at_implication():
    f = parse_formula("forall x. p(x) -> top")
    assert isinstance(f, Implies) and isinstance(f.left, Forall)


def test_star1_shape():
    f = entry("star1").formula
    assert isinstance(f, Forall) and f.var == x
    inner = f.body
    assert isinstance(inner, Exists) and inner.var == Attr(y, (x,))
    assert isinstance(inner.body, Exists) and inner.body.var == u
    body = inner.body.body
    assert isinstance(body, Implies)
    assert isinstance(body.left, Apply) and isinstance(body.left.pred, AttributedPred)


def test_connector_parses_inside_attribute():
    f = parse_formula("forall x. [farmer :> own(^x, x)](x)")
    attr = f.body.pred.attribute
    assert attr.args[0] == Connector(x)


@pytest.mark.parametrize("e", corpus(), ids=lambda e: e.id)
def test_corpus_round_trip(e):
    assert parse_formula(render(e.formula)) == e.formula


def test_round_trip_is_textually_stable():
    text = render(entry("star6").formula)
    assert render(parse_formula(text)) == text


@pytest.mark.parametrize("text", [
    "forall x.", "p(x", "[p :> ](x)", "p(x) &", "exists <. x. p(x)", "p(x))", "~", "p(^)",
])
def test_syntax_errors_carry_spans(text):
    with pytest.raises(ParseError) as info:
        parse_formula(text)
    span = info.value.span
    assert 0 <= span.begin <= span.end <= len(text.encode())


def test_kind_error_for_undeclared_predicate():
    with pytest.raises(ParseError) as info:
        parse_formula("pred p/1\nexists x. q(x)")
    assert info.value.kind == "kind"


def test_arity_mismatch_against_declaration_is_rejected():
    with pytest.raises(ParseError):
        parse_formula("pred p/1\nexists x. p(x, x)")


def test_comments_and_declarations_are_skipped():
    text = formula_text("star12")
    assert text.startswith("#")
    assert parse_formula(text) == entry("star12").formula


_ALPHABET = st.sampled_from(list("xyzpq()[]<.:>-~&|^,= ") + ["forall ", "exists ", "top", "bot", "<.", ":>", "->"])


@settings(max_examples=400, deadline=None)
@given(st.lists(_ALPHABET, max_size=25).map("".join))
def test_parser_is_total(text):
    """Any input either parses or raises ParseError with an in-range span."""
    try:
        f = parse_formula(text)
    except ParseError as exc:
        assert 0 <= exc.span.begin <= exc.span.end <= len(text.encode())
    else:
        assert parse_formula(render(f)) == f
