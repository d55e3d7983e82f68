"""Bounded structure enumeration, validity classification and the syllogism suite.

Validity is only ever claimed *at a bound*: every structure within the bound
is enumerated, and a formula is ``valid-at-bound`` when at least one of them
satisfies it and every structure that coheres to it satisfies it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import comb
from typing import Iterator, Mapping, Sequence

from .evaluation import TV, NotWellFormed, Options, evaluate
from .model import BasicObject, Key, ModelError, Structure, normalize
from .parser import parse_formula
from .syntax import (
    Apply, Atom, Attr, AttributedPred, Basic, Const, Formula, NegAtom, render,
)
from .wellformed import subformulas, wellformed

__all__ = [
    "BoundsTooLarge", "Vocabulary", "EnumBounds", "ValidityReport", "vocabulary_of",
    "count_structures", "enumerate_structures", "classify", "SCHEMATA", "FIGURE2_B_AS_PRINTED", "SuiteRecord",
    "syllogism_suite",
]

DEFAULT_CEILING = 2_000_000


class BoundsTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Vocabulary:
    predicates: Mapping[str, int]
    constants: tuple[str, ...] = ()


@dataclass(frozen=True)
class EnumBounds:
    """Search limits.

    ``max_context_depth`` adds nested attribute spaces below every object;
    ``contexts`` instead fixes an explicit list of context keys, each of whose
    domain is drawn from its parent's.
    """

    max_bases: int
    max_copies: int = 1
    max_context_depth: int = 0
    contexts: tuple | None = None
    ceiling: int = DEFAULT_CEILING

    def __post_init__(self) -> None:
        if self.max_bases < 1 or self.max_copies < 1 or self.max_context_depth < 0:
            raise ValueError("bounds must be positive (depth non-negative)")


def vocabulary_of(f: Formula) -> Vocabulary:
    preds: dict[str, int] = {}
    consts: set[str] = set()
    for g in subformulas(f):
        if isinstance(g, (Atom, NegAtom)):
            preds[g.pred.name] = g.pred.arity
            terms = [a.term for a in g.args]
        elif isinstance(g, Apply):
            p = g.pred
            while isinstance(p, AttributedPred):
                p = p.base
            parts = [(p, ())] if isinstance(p, Basic) else list(p.parts)
            preds.update((q.sym.name, q.sym.arity) for q, _ in parts)
            terms = list(g.args) + [t for _, ts in parts for t in ts]
        else:
            terms = [getattr(g, "left", None), getattr(g, "right", None), getattr(g, "var", None)]
        for t in terms:
            consts |= _consts(t)
    return Vocabulary(dict(sorted(preds.items())), tuple(sorted(consts)))


def _consts(t) -> set[str]:
    if isinstance(t, Const):
        return {t.name}
    if isinstance(t, Attr):
        return _consts(t.head).union(*(_consts(b) for b in t.body))
    return set()


# -- enumeration ------------------------------------------------------------------------

def _universes(bounds: EnumBounds) -> Iterator[tuple[BasicObject, ...]]:
    for k in range(1, bounds.max_bases + 1):
        for copies in product(range(1, bounds.max_copies + 1), repeat=k):
            yield tuple(BasicObject(f"b{i + 1}", c)
                        for i, n in enumerate(copies) for c in range(1, n + 1))


def _subsets(items: Sequence) -> list[frozenset]:
    return [frozenset(c) for r in range(len(items) + 1) for c in combinations(items, r)]


def _table_count(vocab: Vocabulary, n: int) -> int:
    return 2 ** sum(n ** a for a in vocab.predicates.values())


def _nested_count(vocab: Vocabulary, parent: int, depth: int) -> int:
    """Number of ways to fill one context (and its descendants) below a parent of size ``parent``."""
    if depth == 0:
        return 1
    return sum(comb(parent, j) * _table_count(vocab, j) * _nested_count(vocab, j, depth - 1) ** j
               for j in range(parent + 1))


def _skeleton_for(universe, bounds) -> list[Key]:
    present = set(universe)
    keys = []
    for k in bounds.contexts or ():
        k = normalize(k)
        if all(o in present for seg in k for o in seg):
            keys.append(k)
    keys.sort(key=len)
    for k in keys:
        parent = normalize(k[1:])
        if parent and parent not in keys:
            raise ValueError(f"context {k!r} lacks its parent in the skeleton")
    return keys


def _skeleton_domains(keys, universe) -> Iterator[dict]:
    def go(i, doms):
        if i == len(keys):
            yield dict(doms)
            return
        parent = doms[normalize(keys[i][1:])]
        for d in _subsets(sorted(parent)):
            doms[keys[i]] = d
            yield from go(i + 1, doms)
        del doms[keys[i]]
    yield from go(0, {(): frozenset(universe)})


def _nested_domains(universe, depth) -> Iterator[dict]:
    def below(key, dom, level):
        if level > depth:
            yield {}
            return
        children = [((o,),) + key for o in sorted(dom)]
        yield from assign(children, 0, dom, level)

    def assign(children, i, parent_dom, level):
        if i == len(children):
            yield {}
            return
        for d in _subsets(sorted(parent_dom)):
            for sub in below(children[i], d, level + 1):
                for rest in assign(children, i + 1, parent_dom, level):
                    out = {children[i]: d}
                    out.update(sub)
                    out.update(rest)
                    yield out

    for doms in below((), frozenset(universe), 1):
        doms[()] = frozenset(universe)
        yield doms


def _domain_layouts(universe, bounds) -> Iterator[dict]:
    if bounds.contexts is not None:
        yield from _skeleton_domains(_skeleton_for(universe, bounds), universe)
    elif bounds.max_context_depth:
        yield from _nested_domains(universe, bounds.max_context_depth)
    else:
        yield {(): frozenset(universe)}


def count_structures(vocab: Vocabulary, bounds: EnumBounds) -> int:
    """Number of structures :func:`enumerate_structures` yields without ``modulo_iso``."""
    total = 0
    for universe in _universes(bounds):
        n = len(universe)
        per = _table_count(vocab, n) * n ** len(vocab.constants)
        if bounds.contexts is not None:
            per *= sum(_layout_tables(vocab, doms) for doms in _skeleton_domains(_skeleton_for(universe, bounds), universe))
        elif bounds.max_context_depth:
            per *= _nested_count(vocab, n, bounds.max_context_depth) ** n
        total += per
    return total


def _layout_tables(vocab, doms) -> int:
    out = 1
    for k, d in doms.items():
        if k:
            out *= _table_count(vocab, len(d))
    return out


def _tables_for(vocab: Vocabulary, dom) -> list[dict]:
    items = sorted(dom)
    per_pred = []
    for name, arity in vocab.predicates.items():
        rows = list(product(items, repeat=arity))
        per_pred.append([(name, s) for s in _subsets(rows)])
    return [dict(choice) for choice in product(*per_pred)]


def _canonical(s: Structure) -> str:
    def row(t):
        return tuple((o.base, o.copy) if isinstance(o, BasicObject) else repr(o) for o in t)
    parts = []
    for k in sorted(s.predicates, key=repr):
        for name in sorted(s.predicates[k]):
            parts.append((repr(k), name, tuple(sorted(row(t) for t in s.predicates[k][name]))))
    doms = tuple(sorted((repr(k), tuple(sorted(row(tuple(v))))) for k, v in s.domains.items()))
    consts = tuple(sorted((a, row((o,))) for a, o in s.domain_symbols.get((), {}).items()))
    return repr((tuple(parts), doms, consts))


def _rename(s: Structure, mapping: dict) -> Structure:
    def obj(o):
        return BasicObject(mapping[o.base], o.copy)

    def key(k):
        return tuple(tuple(obj(o) for o in seg) for seg in k)

    return Structure(
        universe=frozenset(obj(o) for o in s.universe), signature=s.signature,
        domains={key(k): frozenset(obj(o) for o in v) for k, v in s.domains.items()},
        predicates={key(k): {n: frozenset(tuple(obj(o) for o in t) for t in tbl) for n, tbl in m.items()}
                    for k, m in s.predicates.items()},
        domain_symbols={key(k): {a: obj(o) for a, o in m.items()} for k, m in s.domain_symbols.items()},
    )


def _is_canonical(s: Structure) -> bool:
    bases = sorted({o.base for o in s.universe})
    mine = _canonical(s)
    for perm in permutations(bases):
        if perm == tuple(bases):
            continue
        if _canonical(_rename(s, dict(zip(bases, perm)))) < mine:
            return False
    return True


def enumerate_structures(vocab: Vocabulary, bounds: EnumBounds, *, modulo_iso: bool = False) -> Iterator[Structure]:
    """Every structure within ``bounds``, in a fixed order.

    All predicates are available everywhere; each context's tables range over
    all relations on its own domain.  Raises BoundsTooLarge up front when the
    count exceeds ``bounds.ceiling``.
    """
    total = count_structures(vocab, bounds)
    if total > bounds.ceiling:
        raise BoundsTooLarge(f"{total} structures exceed the ceiling of {bounds.ceiling}")
    signature = dict(vocab.predicates)
    for universe in _universes(bounds):
        for doms in _domain_layouts(universe, bounds):
            keys = sorted(doms, key=lambda k: (len(k), repr(k)))
            per_key = [_tables_for(vocab, doms[k]) for k in keys]
            for tables in product(*per_key):
                preds = {k: t for k, t in zip(keys, tables)}
                for consts in product(universe, repeat=len(vocab.constants)):
                    s = Structure(
                        universe=frozenset(universe), signature=signature, domains=dict(doms),
                        predicates=preds,
                        domain_symbols={(): dict(zip(vocab.constants, consts))} if vocab.constants else {},
                    )
                    if modulo_iso and not _is_canonical(s):
                        continue
                    yield s


# -- classification ------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidityReport:
    formula: str
    total: int
    satisfying: int
    refuting: int
    noncohering: int
    sample: Structure | None = None
    counterexamples: tuple = ()
    diagnostics: tuple[str, ...] = ()

    @property
    def verdict(self) -> str:
        if self.satisfying + self.refuting == 0:
            return "vacuous"
        if self.refuting == 0:
            return "valid-at-bound"
        return "invalid"

    def counts(self) -> dict:
        return {"total": self.total, "satisfying": self.satisfying,
                "refuting": self.refuting, "noncohering": self.noncohering}


def classify(f: Formula, bounds: EnumBounds, *, vocab: Vocabulary | None = None,
             modulo_iso: bool = False, options: Options = Options(), keep: int = 3) -> ValidityReport:
    """Evaluate ``f`` on every structure within ``bounds`` and tally the outcomes."""
    report = wellformed(f)
    if not report.ok:
        raise NotWellFormed(report)
    vocab = vocab or vocabulary_of(f)
    sat = ref = non = 0
    samples: list[tuple[str, Structure]] = []
    counter: list[tuple[str, Structure]] = []
    diagnostics: list[str] = []
    for s in enumerate_structures(vocab, bounds, modulo_iso=modulo_iso):
        try:
            v = evaluate(s, f, options=options, check=False)
        except ModelError as exc:
            non += 1
            if len(diagnostics) < keep:
                diagnostics.append(f"{type(exc).__name__}: {exc}")
            continue
        if v is TV.T:
            sat += 1
            _keep_min(samples, s, 1)
        elif v is TV.F:
            ref += 1
            _keep_min(counter, s, keep)
        else:
            non += 1
    sample = samples[0][1] if samples else None
    counter_structs = tuple(c for _, c in counter)
    return ValidityReport(render(f), sat + ref + non, sat, ref, non, sample, counter_structs, tuple(diagnostics))


def _keep_min(best: list, s: Structure, n: int) -> None:
    """Retain the ``n`` canonically smallest structures, independent of visiting order."""
    best.append((_canonical(s), s))
    best.sort(key=lambda item: item[0])
    del best[n:]


# -- the syllogism suite -------------------------------------------------------------------

def _ua(b: str, a: str) -> str:
    return f"(forall x. ({b}(x) -> {a}(x)))"


def _ue(b: str, a: str) -> str:
    return f"(forall x. ({b}(x) -> ~{a}(x)))"


def _pa(b: str, a: str) -> str:
    return f"(exists x. {b}(x) & {a}(x))"


def _pn(b: str, a: str) -> str:
    return f"(exists x. {b}(x) & ~{a}(x))"


def _syl(major: str, minor: str, concl: str) -> str:
    return f"{major} & {minor} -> {concl}"


SCHEMATA: tuple[tuple[str, str], ...] = (
    ("conversion-universal-negative", f"{_ue('P1', 'P2')} -> {_ue('P2', 'P1')}"),
    ("conversion-universal-affirmative", f"{_ua('P1', 'P2')} -> {_pa('P2', 'P1')}"),
    ("conversion-particular-affirmative", f"{_pa('P1', 'P2')} -> {_pa('P2', 'P1')}"),
    ("figure1-A", _syl(_ua("Pb", "Pa"), _ua("Pc", "Pb"), _ua("Pc", "Pa"))),
    ("figure1-B", _syl(_ue("Pb", "Pa"), _ua("Pc", "Pb"), _ue("Pc", "Pa"))),
    ("figure1-C", _syl(_ua("Pb", "Pa"), _pa("Pc", "Pb"), _pa("Pc", "Pa"))),
    ("figure1-D", _syl(_ue("Pb", "Pa"), _pa("Pc", "Pb"), _pn("Pc", "Pa"))),
    ("figure2-A", _syl(_ue("Pb", "Pa"), _ua("Pc", "Pa"), _ue("Pc", "Pb"))),
    ("figure2-B", _syl(_ua("Pb", "Pa"), _ue("Pc", "Pa"), _ue("Pc", "Pb"))),
    ("figure2-C", _syl(_ue("Pb", "Pa"), _pa("Pc", "Pa"), _pn("Pc", "Pb"))),
    ("figure2-D", _syl(_ua("Pb", "Pa"), _pn("Pc", "Pa"), _pn("Pc", "Pb"))),
    ("figure3-A", _syl(_ua("Pc", "Pa"), _ua("Pc", "Pb"), _pa("Pb", "Pa"))),
    ("figure3-B", _syl(_ue("Pc", "Pa"), _ua("Pc", "Pb"), _pn("Pb", "Pa"))),
    ("figure3-C", _syl(_pa("Pc", "Pa"), _ua("Pc", "Pb"), _pa("Pb", "Pa"))),
    ("figure3-D", _syl(_ua("Pc", "Pa"), _pa("Pc", "Pb"), _pa("Pb", "Pa"))),
    ("figure3-E", _syl(_pn("Pc", "Pa"), _ua("Pc", "Pb"), _pn("Pb", "Pa"))),
    ("figure3-F", _syl(_ue("Pc", "Pa"), _pa("Pc", "Pb"), _pn("Pb", "Pa"))),
)

# Second figure B as printed concludes with its own minor premise.
FIGURE2_B_AS_PRINTED = _syl(_ua("Pb", "Pa"), _ue("Pc", "Pa"), _ue("Pc", "Pa"))


@dataclass(frozen=True)
class SuiteRecord:
    name: str
    formula: str
    report: ValidityReport
    passed: bool

    @property
    def expected(self) -> str:
        if self.name == "conversion-universal-affirmative":
            return "valid-at-bound, noncohering > 0"
        return "valid-at-bound"

    def as_dict(self) -> dict:
        return {"id": self.name, "formula": self.formula, "expected": self.expected,
                "got": self.report.verdict, "verdict": "pass" if self.passed else "fail",
                "counts": self.report.counts()}


def syllogism_suite(bounds: EnumBounds = EnumBounds(max_bases=3), *, modulo_iso: bool = False) -> list[SuiteRecord]:
    """Classify the three conversions and fourteen syllogisms.

    Each must be valid at the bound; the universal-affirmative conversion must
    in addition have non-cohering structures.
    """
    records = []
    for name, text in SCHEMATA:
        f = parse_formula(text)
        rep = classify(f, bounds, modulo_iso=modulo_iso)
        ok = rep.verdict == "valid-at-bound"
        if name == "conversion-universal-affirmative":
            ok = ok and rep.noncohering > 0
        records.append(SuiteRecord(name, text, rep, ok))
    return records
