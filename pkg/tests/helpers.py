"""Shared helpers for the test suite."""

from pathlib import Path

from ratground import answer_sets, check_safety, ground, optimal_answer_sets, parse_program
from ratground.syntax import FRACTION_STYLE, render_atom

FIXTURES = Path(__file__).parent / "fixtures"


def pipeline(src, *, integer_division=False, first_id=2, decimal_digits=6):
    """parse + safety + ground; asserts the program is safe."""
    program = parse_program(src, decimal_digits=decimal_digits)
    violations = check_safety(program)
    assert not violations, [str(v) for v in violations]
    return ground(program, integer_division=integer_division, first_id=first_id)


def atom_strings(g, interp, style=FRACTION_STYLE):
    return frozenset(render_atom(g.atoms.atom_of(i), style) for i in interp)


def solve_strings(src, *, optimal=False, **kw):
    """Answer sets of a source program as a set of frozensets of atom texts."""
    g = pipeline(src, **kw)
    models = optimal_answer_sets(g) if optimal else answer_sets(g)
    return {atom_strings(g, interp) for interp in models}


def fixture_text(name):
    return (FIXTURES / name).read_text(encoding="utf-8")
