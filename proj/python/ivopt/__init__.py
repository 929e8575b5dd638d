"""Interval-valued optimization toolkit: exact interval arithmetic with the
generalized-Hukuhara difference, interval-valued function calculus, and
optimality-condition checkers driven by a small problem language."""

from ._ivopt import (
    Interval,
    IvoptError,
    Problem,
    ProblemParseError,
    compare,
    parse_interval,
)

__all__ = [
    "Interval",
    "IvoptError",
    "Problem",
    "ProblemParseError",
    "compare",
    "parse_interval",
]
