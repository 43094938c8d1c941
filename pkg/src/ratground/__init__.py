"""Grounder and reference evaluator for logic programs with exact rationals.

The package implements an ASP-Core-2 style language whose numeric universe
is the rationals in standard form: parsing, safety checking, bottom-up
grounding, output in the solver numeric format with lcm-scaled weights, and
a brute-force reference enumeration of (optimal) answer sets.
"""

from .errors import RatGroundError
from .evaluator import answer_sets, costs, optimal_answer_sets
from .grounder import GroundProgram, ground
from .parser import check_safety, parse_files, parse_program
from .rational import Rational, from_decimal, to_decimal_string

__version__ = "0.1.0"

__all__ = [
    "GroundProgram",
    "RatGroundError",
    "Rational",
    "answer_sets",
    "check_safety",
    "costs",
    "from_decimal",
    "ground",
    "optimal_answer_sets",
    "parse_files",
    "parse_program",
    "to_decimal_string",
    "__version__",
]
