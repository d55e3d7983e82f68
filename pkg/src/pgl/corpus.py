"""The shipped formula corpus, reference structures and their expected values."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .evaluation import TV, Options, evaluate
from .model import Structure
from .parser import parse_formula
from .structfile import load_structure
from .syntax import Formula, render
from .wellformed import wellformed

__all__ = [
    "CorpusEntry", "NegativeFixture", "data_path", "CheckRecord", "corpus", "entry", "negative_fixtures",
    "structure", "structure_names", "formula_text", "check_corpus",
]

# Donkey sentences in the weak reading (star1, star5, star12) and strong reading (star4);
# star6 is the school sentence on the Mac structure.  Star11 and star15/16 ship without values.
_EXPECTED: dict[str, tuple[tuple[str, TV], ...]] = {
    "star1": (("two_farmer", TV.T), ("pebble", TV.F), ("two_farmer_empty_beat", TV.U)),
    "star4": (("two_farmer", TV.F), ("two_farmer_empty_beat", TV.U)),
    "star5": (("two_farmer", TV.T),),
    "star12": (("two_farmer", TV.T),),
    "star6": (("mac", TV.T),),
    "star11": (),
    "star15": (),
    "star15_16": (),
}

_NEGATIVE = {"bad_connector": "Ccompatible", "bad_open": "NoFreeVars"}


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    gloss: str
    formula: Formula
    expected: tuple[tuple[str, TV], ...] = ()


@dataclass(frozen=True)
class NegativeFixture:
    id: str
    gloss: str
    formula: Formula
    rule: str


@dataclass(frozen=True)
class CheckRecord:
    """One line of the suite summary."""

    id: str
    expected: str
    got: str

    @property
    def passed(self) -> bool:
        return self.expected == self.got

    def as_dict(self) -> dict:
        return {"id": self.id, "expected": self.expected, "got": self.got,
                "verdict": "pass" if self.passed else "fail"}


def data_path(*parts: str):
    return resources.files("pgl").joinpath("data", *parts)


def formula_text(name: str) -> str:
    return data_path("corpus", f"{name}.pgl").read_text(encoding="utf-8")


def _gloss(text: str) -> str:
    lines = [ln.lstrip("#").strip() for ln in text.splitlines() if ln.startswith("#")]
    return " ".join(lines)


@lru_cache(maxsize=None)
def corpus() -> tuple[CorpusEntry, ...]:
    out = []
    for name, expected in _EXPECTED.items():
        text = formula_text(name)
        out.append(CorpusEntry(name, _gloss(text), parse_formula(text), expected))
    return tuple(out)


def entry(name: str) -> CorpusEntry:
    for e in corpus():
        if e.id == name:
            return e
    raise KeyError(name)


@lru_cache(maxsize=None)
def negative_fixtures() -> tuple[NegativeFixture, ...]:
    out = []
    for name, rule in _NEGATIVE.items():
        text = formula_text(name)
        out.append(NegativeFixture(name, _gloss(text), parse_formula(text), rule))
    return tuple(out)


def structure_names() -> list[str]:
    return sorted(p.name[:-5] for p in data_path("structures").iterdir() if p.name.endswith(".pgls"))


@lru_cache(maxsize=None)
def structure(name: str) -> Structure:
    return load_structure(data_path("structures", f"{name}.pgls").read_text(encoding="utf-8"))


def check_corpus(options: Options = Options()) -> list[CheckRecord]:
    """Well-formedness, round trip and expected values for every entry, plus the negative fixtures."""
    records = []
    for e in corpus():
        records.append(CheckRecord(f"{e.id}:wellformed", "ok", "ok" if wellformed(e.formula).ok else "violations"))
        same = parse_formula(render(e.formula)) == e.formula
        records.append(CheckRecord(f"{e.id}:roundtrip", "ok", "ok" if same else "changed"))
        for sname, want in e.expected:
            got = evaluate(structure(sname), e.formula, options=options)
            records.append(CheckRecord(f"{e.id}@{sname}", str(want), str(got)))
    for n in negative_fixtures():
        rules = ",".join(sorted(wellformed(n.formula).rules)) or "none"
        records.append(CheckRecord(f"{n.id}:rejected", n.rule, rules))
    return records
