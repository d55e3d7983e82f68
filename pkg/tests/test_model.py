from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from pgl.corpus import structure
from pgl.model import (
    AttrObject, BasicObject, MissingAssignment, Structure, interp_body, interp_gterm, interp_term,
    proper_object, proper_objects, proper_term, sqsubseteq, surface_eq, update, validate,
)
from pgl.parser import parse_term
from pgl.syntax import Connector, Const, Var

school, pc, learner, mac = (BasicObject(n) for n in ("school", "PCinstructor", "learner", "Mac"))
x, y, u = Var("x"), Var("y"), Var("u")


def small(**extra) -> Structure:
    d1, d2 = BasicObject("d1"), BasicObject("d2")
    base = dict(universe=frozenset({d1, d2}), signature={"p": 1},
                domains={(): frozenset({d1, d2}), ((d1,),): frozenset({d2})},
                predicates={(): {"p": frozenset({(d1,)})}})
    base.update(extra)
    return Structure(**base)


def test_mac_structure_is_valid():
    assert validate(structure("mac")) == []


def test_top_violation_when_top_domain_is_partial():
    s = small(domains={(): frozenset({BasicObject("d1")})})
    assert "Top" in {i.rule for i in validate(s)}


def test_monotonicity_violation():
    d1, d2 = BasicObject("d1"), BasicObject("d2")
    s = small(domains={(): frozenset({d1, d2}), ((d1,),): frozenset({d2}), ((d2,), (d1,)): frozenset({d1})})
    assert "Monotonicity" in {i.rule for i in validate(s)}


def test_collection_requires_distinct_bases():
    d1 = BasicObject("d1")
    s = small(collections={(): {d1: frozenset({BasicObject("d2"), BasicObject("d2", 2)})}})
    assert "Collection" in {i.rule for i in validate(s)}


def test_order_examples():
    s = structure("mac")
    k = ((school,),)
    assert sqsubseteq(s, k, k)
    assert sqsubseteq(s, ((pc,), (school,)), ((school,),))
    assert not sqsubseteq(s, ((pc, learner),), ((pc,),))


def test_surface_equality():
    d1, d1b, d2 = BasicObject("d", 1), BasicObject("d", 2), BasicObject("e")
    assert surface_eq(d1, d1b)
    assert not surface_eq(d1, d2)
    f = BasicObject("f")
    assert surface_eq(AttrObject(d1, (f,)), AttrObject(d1b, (f,)))


def test_interp_domain_symbol_and_connector():
    s = structure("mac")
    s = replace(s, domain_symbols={(): {"school_sym": school}})
    assert interp_term(s, (), Const("school_sym")) == school
    s2 = update(s, (), x, school)
    ctx = ((pc,),)
    assert interp_gterm(s2, ctx, Connector(x)) == interp_term(s2, (), x)
    s3 = update(s2, (), u, pc)
    assert interp_body(s3, (), (x, u)) == (school, pc)


def test_missing_assignment_is_raised():
    with pytest.raises(MissingAssignment):
        interp_term(structure("mac"), (), x)


def test_properness_on_mac():
    s = structure("mac")
    assert proper_object(s, (), school)
    assert proper_object(s, (), mac)
    assert not proper_object(s, ((school,),), school)
    assert proper_objects(s, ((school,),), (pc, learner))
    assert not proper_objects(s, ((school,),), (pc, school))
    s2 = update(s, (), x, school)
    assert proper_term(s2, (), x)


def test_proper_attributed_term():
    s = update(structure("mac"), (), x, school)
    s = update(s, (), parse_term("y<.x"), pc)
    assert proper_term(s, (), parse_term("y<.x"))


def test_update_basic_and_attributed():
    s = structure("mac")
    s1 = update(s, (), x, school)
    assert s1.assignment == {((), "x"): school}
    s2 = update(s1, (), parse_term("y<.x"), pc)
    assert s2.assignment[((), "y")] == pc
    assert s2.assignment[(((school,),), "y")] == pc
    assert s.assignment == {}


objs = st.sampled_from([BasicObject("a"), BasicObject("a", 2), BasicObject("b"), BasicObject("c")])


@given(objs, objs, objs)
def test_update_last_write_wins(d1, d2, d3):
    s = structure("pebble")
    s = update(update(update(s, (), x, d1), (), x, d2), (), x, d3)
    assert s.assignment[((), "x")] == d3


@given(objs, objs)
def test_surface_eq_reflexive_and_symmetric(a, b):
    assert surface_eq(a, a)
    assert surface_eq(a, b) == surface_eq(b, a)


def _keys(s):
    return sorted(s.keys(), key=repr)


@pytest.mark.parametrize("name", ["mac", "two_farmer"])
def test_order_is_a_partial_order(name):
    s = structure(name)
    ks = _keys(s)
    for a in ks:
        assert sqsubseteq(s, a, a)
        assert sqsubseteq(s, a, ())
        for b in ks:
            if a != b and sqsubseteq(s, a, b):
                assert not sqsubseteq(s, b, a)
                for c in ks:
                    if sqsubseteq(s, b, c):
                        assert sqsubseteq(s, a, c)
