"""Bindings for the glpstar decision procedures and proof checker."""

from ._glpstar import (
    Formula,
    Model,
    ParseError,
    ResourceLimitExceeded,
    SortConflict,
    Verdict,
    check_proof,
    closure,
    decide,
    oracle,
    parse,
    reduce,
    run,
    sort_of,
)

__all__ = [
    "Formula",
    "Model",
    "ParseError",
    "ResourceLimitExceeded",
    "SortConflict",
    "Verdict",
    "check_proof",
    "closure",
    "decide",
    "oracle",
    "parse",
    "reduce",
    "run",
    "sort_of",
]
