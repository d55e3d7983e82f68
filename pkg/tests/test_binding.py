from hypothesis import given, strategies as st

from pgl.binding import EPS, bound, delta, free, oplus, occurs, tails, tau_l, tau_r
from pgl.corpus import corpus, entry
from pgl.parser import parse_formula, parse_term
from pgl.syntax import Attr, Var, subterm, subvariable

x, y, z, u = (Var(n) for n in "xyzu")


def body(*names):
    return tuple(Var(n) for n in names)


def test_oplus_builds_marked_bodies():
    ts1, ts2, ts3 = body("a1"), body("a2"), body("a3")
    assert oplus(ts1, EPS) == (ts1,)
    assert oplus(ts1, (ts2,)) == (ts1, ts2)
    assert oplus(ts1, (ts2, ts3)) == (ts1, ts2, ts3)


def test_tau_projections():
    ts1, ts2 = body("a1"), body("a2")
    assert tau_l((ts1,)) == ts1
    assert tau_l((ts1, ts2)) == ts1
    assert tau_r((ts1,)) == EPS
    assert tau_r((ts1, ts2)) == (ts2,)


def test_delta_erases_the_mark():
    ts1, ts2, ts3 = (x,), (y,), (z,)
    assert delta(EPS) == ()
    assert delta((ts1, ts2)) == (Attr(x, ts2),)
    assert delta((ts1, ts2, ts3)) == (Attr(Attr(x, ts2), ts3),)


def test_occurs_clauses():
    yx = Attr(y, (x,))
    assert occurs(x, x)
    assert occurs(x, yx)
    assert not occurs(y, yx)
    assert occurs(yx, yx)


def test_free_examples():
    assert free(EPS, parse_formula("p(x)")) == {x}
    assert free(EPS, parse_formula("exists x. p(x)")) == set()
    assert free(EPS, parse_formula("forall y<.x. top")) == {x}


def test_bound_examples():
    assert bound(EPS, parse_formula("p(x)")) == set()
    assert x in bound(EPS, parse_formula("forall x. p(x)"))


def test_star1_binds_every_quantified_chain():
    f = entry("star1").formula
    b = bound(EPS, f)
    assert {x, Attr(y, (x,)), u} <= b
    assert free(EPS, f) == set()


def test_corpus_items_are_closed():
    for e in corpus():
        assert free(EPS, e.formula) == set(), e.id


def test_tails():
    assert tails(x) == []
    assert tails(parse_term("y<.x")) == [((x,),)]
    assert len(tails(parse_term("w<.z<.y<.x"))) == 3


names = st.sampled_from(["x", "y", "z", "u"])
terms = st.recursive(names.map(Var), lambda t: st.builds(lambda h, b: Attr(h, (b,)), t, t), max_leaves=5)
bodies = st.lists(terms, min_size=1, max_size=3).map(tuple)
marked = st.lists(bodies, max_size=3).map(tuple)


@given(bodies, marked)
def test_tau_l_inverts_oplus(ts, m):
    assert tau_l(oplus(ts, m)) == ts
    assert tau_r(oplus(ts, m)) == m


@given(marked.filter(bool))
def test_oplus_of_projections_is_identity(m):
    assert oplus(tau_l(m), tau_r(m)) == m


@given(bodies)
def test_delta_of_single_segment(ts):
    assert delta(oplus(ts, EPS)) == ts


@given(terms)
def test_subvariables_are_ordered_subterms(t):
    subs = subterm(t)
    vs = subvariable(t)
    positions = [subs.index(v) for v in vs]
    assert positions == sorted(positions)


@given(terms)
def test_occurs_monotone_under_attribution(t):
    """A variable occurring in a body occurs in any term attributed with that body."""
    for v in subvariable(t):
        if occurs(v, t):
            assert occurs(v, Attr(Var("h"), (t,)))
