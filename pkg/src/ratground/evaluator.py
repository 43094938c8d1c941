"""Reference answer-set enumeration over ground programs.

This is the executable semantics used as the oracle for everything else:
interpretations are enumerated exhaustively, a candidate is an answer set
when it is a model of the program and no proper subset is a model of its
reduct (the reduct keeps exactly the rules whose body is true in the
candidate).  Deliberately brute force; a guard refuses programs with more
than ``MAX_OPEN_ATOMS`` non-fact atoms.
"""

from __future__ import annotations

from typing import Optional

from . import extfuncs
from .errors import InternalError, TooLargeForBruteForceError
from .grounder import GroundProgram
from .rational import Rational, ZERO
from .syntax import (AggregateAtom, BuiltinAtom, ClassicalAtom, ExternalAtom,
                     Literal, PrintStyle, FRACTION_STYLE, Rule,
                     aggregate_value, atom_sort_key, compare_with_extremes,
                     rel_holds, render_atom, render_term, term_order)

MAX_OPEN_ATOMS = 24


def satisfied(lit: Literal, interp: frozenset, atoms) -> bool:
    """Truth of a ground literal w.r.t. an interpretation (a set of atom ids)."""
    result = _atom_true(lit.atom, interp, atoms)
    return not result if lit.negated else result


def _atom_true(atom, interp, atoms) -> bool:
    if isinstance(atom, ClassicalAtom):
        ident = atoms.get(atom)
        return ident is not None and ident in interp
    if isinstance(atom, BuiltinAtom):
        return rel_holds(atom.rel, term_order(atom.left, atom.right))
    if isinstance(atom, AggregateAtom):
        value = aggregate_value(atom.fn, eval_elements(atom.elements, interp, atoms))
        return rel_holds(atom.rel, compare_with_extremes(value, atom.guard))
    if isinstance(atom, ExternalAtom):
        result = extfuncs.call(atom.name, atom.inputs)
        return result is not None and tuple(result) == tuple(atom.outputs)
    raise InternalError(f"satisfied() on unexpected atom {atom!r}")


def eval_elements(elements, interp, atoms) -> set:
    """Set of term tuples whose condition is true; duplicate tuples collapse."""
    return {e.terms for e in elements
            if all(satisfied(c, interp, atoms) for c in e.condition)}


def rule_satisfied(rule: Rule, interp: frozenset, atoms) -> bool:
    if not all(satisfied(l, interp, atoms) for l in rule.body):
        return True
    return any(atoms.get(a) in interp for a in rule.head)


def is_model(rules, interp: frozenset, atoms) -> bool:
    return all(rule_satisfied(r, interp, atoms) for r in rules)


def reduct(g: GroundProgram, interp: frozenset) -> list:
    """Rules of g whose entire body is true w.r.t. the interpretation."""
    return [r for r in g.rules
            if all(satisfied(l, interp, g.atoms) for l in r.body)]


def _inconsistent_pairs(g: GroundProgram) -> list:
    pairs = []
    for ident, atom in g.atoms:
        if atom.strong_neg:
            pos = g.atoms.get(ClassicalAtom(False, atom.pred, atom.args))
            if pos is not None:
                pairs.append((ident, pos))
    return pairs


def answer_sets(g: GroundProgram) -> list:
    """All answer sets, canonically ordered (each a frozenset of atom ids)."""
    open_ids = [ident for ident, _ in g.atoms if ident not in g.facts]
    if len(open_ids) > MAX_OPEN_ATOMS:
        raise TooLargeForBruteForceError(
            f"{len(open_ids)} non-fact atoms exceed the exhaustive-search "
            f"guard of {MAX_OPEN_ATOMS}")
    pairs = _inconsistent_pairs(g)
    base = frozenset(g.facts)
    out = []
    for mask in range(1 << len(open_ids)):
        extra = {open_ids[k] for k in range(len(open_ids)) if mask >> k & 1}
        interp = base | extra
        if any(p in interp and q in interp for p, q in pairs):
            continue
        if not is_model(g.rules, interp, g.atoms):
            continue
        if _smaller_model_exists(reduct(g, interp), interp, base, g.atoms):
            continue
        out.append(interp)
    out.sort(key=lambda s: tuple(sorted(s)))
    return out


def _smaller_model_exists(red, interp, base, atoms) -> bool:
    # Any proper-subset model of the reduct must still contain the facts
    # (their rules survive every reduct), so only the open part varies.
    extras = sorted(interp - base)
    for mask in range((1 << len(extras)) - 1):
        sub = base | {extras[k] for k in range(len(extras)) if mask >> k & 1}
        if is_model(red, sub, atoms):
            return True
    return False


def costs(g: GroundProgram, interp: frozenset) -> dict:
    """Per-level cost vector: the sum of weights of violated weak tuples.

    Violated tuples form a set, so syntactically identical specifications
    count once; only rational weights at rational levels contribute.
    """
    violated: dict = {}
    for weak in g.weaks:
        if all(satisfied(l, interp, g.atoms) for l in weak.body):
            violated[(weak.weight, weak.level, weak.terms)] = None
    vector: dict = {}
    for weight, level, _terms in violated:
        if isinstance(weight, Rational) and isinstance(level, Rational):
            vector[level] = vector.get(level, ZERO).add(weight)
    return vector


def dominates(a: dict, b: dict) -> bool:
    """True when cost vector ``a`` beats ``b``: at the highest level where
    they differ, ``a`` is cheaper."""
    levels = sorted(set(a) | set(b), reverse=True)
    for level in levels:
        ca = a.get(level, ZERO)
        cb = b.get(level, ZERO)
        if ca != cb:
            return ca < cb
    return False


def optimal_answer_sets(g: GroundProgram) -> list:
    sets_ = answer_sets(g)
    if not g.weaks:
        return sets_
    vectors = [costs(g, i) for i in sets_]
    return [i for i, v in zip(sets_, vectors)
            if not any(dominates(other, v) for other in vectors)]


def render_answer_set(g: GroundProgram, interp: frozenset,
                      style: PrintStyle = FRACTION_STYLE) -> str:
    atoms = sorted((g.atoms.atom_of(i) for i in interp), key=atom_sort_key)
    return "{" + ", ".join(render_atom(a, style) for a in atoms) + "}"


def render_costs(vector: dict, style: PrintStyle = FRACTION_STYLE) -> str:
    parts = [f"{render_term(level, style)}:{render_term(vector[level], style)}"
             for level in sorted(vector, reverse=True)]
    return "COSTS " + " ".join(parts)
