import ast
from pathlib import Path

import pytest

import pgl.oracle
from pgl.binding import EPS, bound, free
from pgl.corpus import corpus, entry, structure
from pgl.evaluation import Options, evaluate
from pgl.model import ModelError
from pgl.oracle import DepthCap, OracleError, oracle_bound, oracle_eval, oracle_free
from pgl.parser import parse_formula
from pgl.syntax import Neg, Var


def _kernel(s, f, strict=False):
    try:
        return str(evaluate(s, f, options=Options(strict_quantifier=strict), check=False))
    except ModelError:
        return "error"


def _oracle(s, f, strict=False):
    try:
        return oracle_eval(s, f, strict_quantifier=strict).value
    except OracleError:
        return "error"


def test_mac_sentence():
    assert oracle_eval(structure("mac"), entry("star6").formula).value == "T"


def test_free_examples():
    assert oracle_free(entry("star1").formula) == set()
    assert oracle_free(parse_formula("p(x)")) == {Var("x")}
    assert oracle_free(parse_formula("top")) == set()


def test_trace_records_every_rule():
    res = oracle_eval(structure("two_farmer"), entry("star1").formula)
    rules, stack = set(), [res.trace]
    while stack:
        node = stack.pop()
        rules.add(node.rule)
        stack.extend(node.children)
    assert {"7", "8", "11", "3", "1"} <= rules


def test_depth_cap():
    f = parse_formula("~" * 30 + "top")
    with pytest.raises(DepthCap):
        oracle_eval(structure("pebble"), f, depth_cap=10)


@pytest.mark.parametrize("e", [e for e in corpus() if e.expected], ids=lambda e: e.id)
def test_corpus_agreement(e):
    for name, want in e.expected:
        s = structure(name)
        assert oracle_eval(s, e.formula).value == str(want) == str(evaluate(s, e.formula))


@pytest.mark.parametrize("e", corpus(), ids=lambda e: e.id)
def test_corpus_free_and_bound_agree(e):
    assert oracle_free(e.formula) == free(EPS, e.formula)
    assert oracle_bound(e.formula) == bound(EPS, e.formula)


@pytest.mark.parametrize("strict", [False, True], ids=["chain", "strict"])
def test_fuzz_agreement(fuzz_cases, strict):
    bad = [c.text for c in fuzz_cases
           if _kernel(c.structure, c.formula, strict) != _oracle(c.structure, c.formula, strict)]
    assert bad == []


def test_fuzz_free_and_bound_agree(fuzz_cases):
    for c in fuzz_cases:
        assert oracle_free(c.formula) == free(EPS, c.formula), c.text
        assert oracle_bound(c.formula) == bound(EPS, c.formula), c.text


def test_double_negation(fuzz_cases):
    for c in fuzz_cases[:300]:
        v = _oracle(c.structure, c.formula)
        if v in ("T", "F"):
            assert _oracle(c.structure, Neg(Neg(c.formula))) == v


def test_oracle_shares_only_data_types():
    tree = ast.parse(Path(pgl.oracle.__file__).read_text(encoding="utf-8"))
    imported = {node.module for node in ast.walk(tree) if isinstance(node, ast.ImportFrom) and node.level}
    assert imported <= {"model", "syntax"}
    names = {a.name for node in ast.walk(tree) if isinstance(node, ast.ImportFrom) and node.module == "model"
             for a in node.names}
    assert names <= {"AttrObject", "BasicObject", "Structure"}
