import pytest

from pgl.model import BasicObject, validate
from pgl.parser import parse_formula
from pgl.search import (
    FIGURE2_B_AS_PRINTED, SCHEMATA, BoundsTooLarge, EnumBounds, Vocabulary, classify,
    count_structures, enumerate_structures, syllogism_suite, vocabulary_of,
)

UNARY = Vocabulary({"P": 1})


def test_one_unary_predicate_one_base():
    got = list(enumerate_structures(UNARY, EnumBounds(1)))
    assert len(got) == 2
    assert {s.table((), "P") for s in got} == {frozenset(), frozenset({(BasicObject("b1"),)})}


def test_empty_vocabulary_varies_only_domains():
    got = list(enumerate_structures(Vocabulary({}), EnumBounds(3)))
    assert [len(s.universe) for s in got] == [1, 2, 3]


def test_enumeration_is_deterministic():
    b = EnumBounds(2, max_copies=2)
    first = list(enumerate_structures(Vocabulary({"P": 1, "Q": 1}), b))
    again = list(enumerate_structures(Vocabulary({"P": 1, "Q": 1}), b))
    assert first == again


@pytest.mark.parametrize("bounds", [
    EnumBounds(3),
    EnumBounds(2, max_copies=2),
    EnumBounds(2, max_context_depth=1),
    EnumBounds(2, max_context_depth=2),
    EnumBounds(2, contexts=(((BasicObject("b1"),),), ((BasicObject("b2"),), (BasicObject("b1"),)))),
])
def test_count_is_reported_before_enumeration(bounds):
    vocab = Vocabulary({"P": 1})
    assert count_structures(vocab, bounds) == sum(1 for _ in enumerate_structures(vocab, bounds))


def test_enumerated_structures_are_valid():
    for s in enumerate_structures(Vocabulary({"P": 1}), EnumBounds(2, max_context_depth=1)):
        assert validate(s) == []


def test_ceiling_guard():
    with pytest.raises(BoundsTooLarge):
        list(enumerate_structures(Vocabulary({"R": 2, "S": 2}), EnumBounds(3, ceiling=1000)))


def test_modulo_iso_keeps_one_per_class():
    vocab = Vocabulary({"P": 1, "Q": 1})
    raw = list(enumerate_structures(vocab, EnumBounds(2)))
    iso = list(enumerate_structures(vocab, EnumBounds(2), modulo_iso=True))
    assert len(iso) < len(raw)
    f = parse_formula("(forall x. (P(x) -> Q(x))) -> (exists x. Q(x) & P(x))")
    assert classify(f, EnumBounds(2)).verdict == classify(f, EnumBounds(2), modulo_iso=True).verdict


def test_vocabulary_of():
    v = vocabulary_of(parse_formula("exists x. [farmer :> own(^x, c)](x)", consts=("c",)))
    assert dict(v.predicates) == {"farmer": 1, "own": 2}
    assert v.constants == ("c",)


def test_top_is_valid_and_always_coheres():
    r = classify(parse_formula("top"), EnumBounds(3))
    assert r.verdict == "valid-at-bound" and r.noncohering == 0


def test_universal_affirmative_conversion_has_noncohering_structures():
    f = parse_formula("(forall x. (P1(x) -> P2(x))) -> (exists x. P2(x) & P1(x))")
    r = classify(f, EnumBounds(3))
    assert r.verdict == "valid-at-bound"
    assert r.refuting == 0 and r.noncohering > 0


def test_contradiction_is_refuted_by_every_cohering_structure():
    r = classify(parse_formula("exists x. P1(x) & ~P1(x)"), EnumBounds(3))
    assert r.verdict == "invalid"
    assert r.refuting == r.total - r.noncohering and r.satisfying == 0


def test_all_undefined_is_vacuous():
    r = classify(parse_formula("exists x. exists y<.x. P(y)"), EnumBounds(2))
    assert r.verdict == "vacuous"


def test_partition_and_counterexamples():
    f = parse_formula("(forall x. (Pb(x) -> Pa(x))) & (forall x. (Pc(x) -> Pa(x))) -> (forall x. (Pc(x) -> Pb(x)))")
    r = classify(f, EnumBounds(2))
    assert r.satisfying + r.refuting + r.noncohering == r.total
    assert r.verdict == "invalid"
    assert 0 < len(r.counterexamples) <= 3
    assert r.sample is not None


def test_counterexample_survives_a_larger_bound():
    f = parse_formula("forall x. P(x)")
    small = classify(f, EnumBounds(2))
    big = list(enumerate_structures(Vocabulary({"P": 1}), EnumBounds(3)))
    for c in small.counterexamples:
        assert c in big


def test_schemata_count():
    assert len(SCHEMATA) == 17


def test_second_figure_b_as_printed_is_also_valid():
    assert classify(parse_formula(FIGURE2_B_AS_PRINTED), EnumBounds(3)).verdict == "valid-at-bound"


def test_syllogism_suite_passes():
    records = syllogism_suite(EnumBounds(3))
    assert len(records) == 17
    failed = [r.name for r in records if not r.passed]
    assert failed == []
    ua = next(r for r in records if r.name == "conversion-universal-affirmative")
    assert ua.report.noncohering > 0
    assert ua.as_dict()["verdict"] == "pass"
