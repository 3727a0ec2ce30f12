"""Deterministic word automata for linear integer arithmetic."""

from ._pdwa import (
    Automaton,
    ParseError,
    __version__,
    automaton_from_json,
    compile,
    crosscheck,
    decide,
    mult_table,
    qe,
    solve,
)

__all__ = [
    "Automaton",
    "ParseError",
    "__version__",
    "automaton_from_json",
    "compile",
    "crosscheck",
    "decide",
    "mult_table",
    "qe",
    "solve",
]
