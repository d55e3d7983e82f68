import pytest

from pgl.corpus import corpus, entry, negative_fixtures
from pgl.parser import parse_formula
from pgl.syntax import Apply, Atom
from pgl.wellformed import ccompatible, pnode, subformulas, tcompatible, wellformed


def _find(f, pred):
    return [g for g in subformulas(f) if pred(g)]


def test_subformulas_of_atom():
    f = parse_formula("p(x)")
    assert subformulas(f) == {f}


def test_subformulas_of_conjunction():
    f = parse_formula("top & bot")
    assert {f, f.left, f.right} <= subformulas(f)


def test_subformulas_reach_into_attributes():
    f = entry("star1").formula
    conj = _find(f, lambda g: type(g).__name__ == "And" and "own" in repr(g.right) and "donkey" in repr(g.left))
    assert conj


def test_pnode_is_innermost():
    star1 = entry("star1").formula
    own = _find(star1, lambda g: isinstance(g, Atom) and g.pred.name == "own")[0]
    (node,) = pnode(star1, own)
    assert isinstance(node, Apply) and node.pred.base.sym.name == "farmer"

    star6 = entry("star6").formula
    use = _find(star6, lambda g: isinstance(g, Atom) and g.pred.name == "use")[0]
    (node,) = pnode(star6, use)
    assert node.pred.base.sym.name == "learner"

    p = parse_formula("p(x)")
    assert pnode(p, p) == set()


@pytest.mark.parametrize("text,ok", [
    ("x = y", True),
    ("y<.x ~= u<.x", True),
    ("y<.x = z", False),
])
def test_tcompatible(text, ok):
    assert tcompatible(parse_formula(text)) is ok


def test_ccompatible():
    assert ccompatible(entry("star1").formula)
    assert not ccompatible(parse_formula("[farmer :> own(^x, y)](z)"))
    assert ccompatible(parse_formula("p(x)"))


@pytest.mark.parametrize("e", corpus(), ids=lambda e: e.id)
def test_corpus_is_wellformed(e):
    assert wellformed(e.formula).ok


@pytest.mark.parametrize("n", negative_fixtures(), ids=lambda n: n.id)
def test_negative_fixtures_report_their_rule(n):
    report = wellformed(n.formula)
    assert not report.ok
    assert report.rules == {n.rule}


def test_closed_formula_is_wellformed():
    assert wellformed(parse_formula("exists x. p(x)")).ok
    assert wellformed(parse_formula("p(x)")).rules == {"NoFreeVars"}


def test_violations_name_a_location():
    report = wellformed(parse_formula("forall x. y<.x = x"))
    assert "Tcompatible" in report.rules
    assert all(v.location for v in report.violations)
