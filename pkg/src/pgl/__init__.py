"""Predicate gradual logic: parsing, well-formedness, structures, evaluation and bounded validity."""

from .evaluation import TV, NotWellFormed, Options, coheres, evaluate, satisfies
from .model import AttrObject, BasicObject, Structure, validate
from .oracle import oracle_bound, oracle_eval, oracle_free
from .parser import ParseError, parse_formula, parse_term
from .search import EnumBounds, ValidityReport, classify, enumerate_structures, syllogism_suite
from .structfile import load_structure, load_structure_file
from .syntax import render
from .wellformed import wellformed

__version__ = "0.1.0"

__all__ = [
    "TV", "NotWellFormed", "Options", "coheres", "evaluate", "satisfies", "AttrObject", "BasicObject",
    "Structure", "validate", "oracle_bound", "oracle_eval", "oracle_free", "ParseError", "parse_formula",
    "parse_term", "EnumBounds", "ValidityReport", "classify", "enumerate_structures", "syllogism_suite",
    "load_structure", "load_structure_file", "render", "wellformed", "__version__",
]
