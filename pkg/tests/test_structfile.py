import pytest

from pgl.corpus import data_path, structure, structure_names
from pgl.model import AttrObject, BasicObject
from pgl.structfile import StructureFormatError, dump_structure, load_structure, parse_key, parse_object

MAC_TEXT = data_path("structures", "mac.pgls").read_text(encoding="utf-8")


def test_bundled_structures_load():
    assert set(structure_names()) == {"mac", "pebble", "two_farmer", "two_farmer_empty_beat"}
    for name in structure_names():
        assert structure(name).universe


def test_object_syntax():
    f, d = BasicObject("f"), BasicObject("d")
    assert parse_object("d^2") == BasicObject("d", 2)
    assert parse_object("d < f") == AttrObject(d, (f,))
    assert parse_object("d < (f.d)") == AttrObject(d, (f, d))


def test_key_syntax():
    school, pc = BasicObject("school"), BasicObject("PCinstructor")
    assert parse_key("") == ()
    assert parse_key("PCinstructor < school") == ((pc,), (school,))
    assert parse_key("(PCinstructor.school)") == ((pc, school),)


def test_mac_spine():
    s = structure("mac")
    school, pc, learner, mac = (BasicObject(n) for n in ("school", "PCinstructor", "learner", "Mac"))
    assert pc in s.domain(((school,),))
    assert learner in s.domain(((pc,), (school,)))
    assert mac in s.domain(((learner,), (pc,), (school,)))
    assert s.table(((learner,), (pc,), (school,)), "use") == {(learner, mac)}


def test_missing_universe_is_diagnosed():
    with pytest.raises(StructureFormatError, match="universe"):
        load_structure("domains: {}\npredicates: {}\n")


def test_unknown_section_reports_line():
    with pytest.raises(StructureFormatError) as info:
        load_structure("universe: [a]\ndomains: {'': [a]}\npredicates: {}\nextras: 1\n")
    assert info.value.line == 4


def test_nested_domain_outside_parent_is_a_monotonicity_violation():
    text = MAC_TEXT.replace('"PCinstructor < school": [', '"PCinstructor < school": [school, ', 1)
    assert text != MAC_TEXT
    with pytest.raises(StructureFormatError) as info:
        load_structure(text)
    assert "Monotonicity" in {i.rule for i in info.value.issues}


def test_unknown_arity_needs_signature():
    with pytest.raises(StructureFormatError, match="signature"):
        load_structure("universe: [a]\ndomains: {'': [a]}\npredicates: {'': {p: []}}\n")


@pytest.mark.parametrize("name", ["mac", "pebble", "two_farmer", "two_farmer_empty_beat"])
def test_dump_then_load_is_identity(name):
    s = structure(name)
    again = load_structure(dump_structure(s))
    assert again.domains == s.domains
    assert again.predicates == s.predicates
    assert again.signature == s.signature
