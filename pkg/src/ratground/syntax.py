"""Term/atom/rule object model, the ground-term total order, and rendering.

Terms are a sum type: ``Rational`` values double as ground numeric
constants, the remaining variants are the frozen dataclasses below.  All
syntax objects are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Iterator, Optional, Union

from .errors import InternalError, Span
from .rational import Rational
from . import rational as _rat

REL_OPS = ("<", "<=", "=", "!=", ">", ">=")
AGGREGATE_FNS = ("count", "sum", "max", "min")

# Mirror image of a comparison, for moving an aggregate guard across the atom.
MIRROR_REL = {"<": ">", "<=": ">=", ">": "<", ">=": "<=", "=": "=", "!=": "!="}


@dataclass(frozen=True)
class SymbolicConst:
    name: str


@dataclass(frozen=True)
class StringConst:
    # Text between the quotes, escapes kept verbatim.
    text: str


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class AnonymousVariable:
    """Placeholder for ``_``; the parser replaces every occurrence with a fresh Variable."""


@dataclass(frozen=True)
class Functional:
    functor: str
    args: tuple  # non-empty; arity-0 symbols are SymbolicConst

    def __post_init__(self):
        if not self.args:
            raise InternalError("functional terms need at least one argument")


@dataclass(frozen=True)
class ArithTerm:
    op: str        # 'neg', '+', '-', '*', '/', '\\', '..'
    args: tuple    # one operand for 'neg', two otherwise


Term = Union[Rational, SymbolicConst, StringConst, Variable, AnonymousVariable,
             Functional, ArithTerm]


class _Extreme:
    """Order sentinel produced by empty #max/#min aggregates; never printable."""

    __slots__ = ("_name", "sign")

    def __init__(self, name: str, sign: int):
        self._name = name
        self.sign = sign

    def __repr__(self):
        return self._name


NEG_INF = _Extreme("NEG_INF", -1)
POS_INF = _Extreme("POS_INF", 1)


@dataclass(frozen=True)
class ClassicalAtom:
    strong_neg: bool
    pred: str
    args: tuple = ()

    @property
    def key(self):
        """Predicate identity: polarity, name and arity."""
        return (self.strong_neg, self.pred, len(self.args))


@dataclass(frozen=True)
class BuiltinAtom:
    rel: str
    left: Term
    right: Term


@dataclass(frozen=True)
class AggregateElement:
    terms: tuple
    condition: tuple  # naf-literals (classical or builtin atoms)


@dataclass(frozen=True)
class AggregateAtom:
    fn: str
    elements: tuple
    rel: str
    guard: Term


@dataclass(frozen=True)
class ExternalAtom:
    name: str
    inputs: tuple
    outputs: tuple


@dataclass(frozen=True)
class Literal:
    negated: bool
    atom: Union[ClassicalAtom, BuiltinAtom, AggregateAtom, ExternalAtom]


@dataclass(frozen=True)
class Rule:
    head: tuple   # classical atoms; empty for strong constraints
    body: tuple   # literals
    span: Optional[Span] = field(default=None, compare=False)

    @property
    def is_fact(self):
        return len(self.head) == 1 and not self.body

    @property
    def is_constraint(self):
        return not self.head


@dataclass(frozen=True)
class WeakConstraint:
    body: tuple
    weight: Term
    level: Term
    terms: tuple
    span: Optional[Span] = field(default=None, compare=False)


@dataclass
class Program:
    rules: list
    weaks: list

    def statements(self):
        return list(self.rules) + list(self.weaks)


# ---------------------------------------------------------------------------
# Structural helpers


def map_terms(obj, fn):
    """Rebuild ``obj`` with ``fn`` applied to every term node, bottom-up."""
    if isinstance(obj, (Rational, SymbolicConst, StringConst, Variable, AnonymousVariable)):
        return fn(obj)
    if isinstance(obj, Functional):
        return fn(Functional(obj.functor, tuple(map_terms(a, fn) for a in obj.args)))
    if isinstance(obj, ArithTerm):
        return fn(ArithTerm(obj.op, tuple(map_terms(a, fn) for a in obj.args)))
    if isinstance(obj, ClassicalAtom):
        return ClassicalAtom(obj.strong_neg, obj.pred,
                             tuple(map_terms(a, fn) for a in obj.args))
    if isinstance(obj, BuiltinAtom):
        return BuiltinAtom(obj.rel, map_terms(obj.left, fn), map_terms(obj.right, fn))
    if isinstance(obj, AggregateElement):
        return AggregateElement(tuple(map_terms(t, fn) for t in obj.terms),
                                tuple(map_terms(c, fn) for c in obj.condition))
    if isinstance(obj, AggregateAtom):
        return AggregateAtom(obj.fn, tuple(map_terms(e, fn) for e in obj.elements),
                             obj.rel, map_terms(obj.guard, fn))
    if isinstance(obj, ExternalAtom):
        return ExternalAtom(obj.name, tuple(map_terms(t, fn) for t in obj.inputs),
                            tuple(map_terms(t, fn) for t in obj.outputs))
    if isinstance(obj, Literal):
        return Literal(obj.negated, map_terms(obj.atom, fn))
    if isinstance(obj, Rule):
        return Rule(tuple(map_terms(a, fn) for a in obj.head),
                    tuple(map_terms(l, fn) for l in obj.body), obj.span)
    if isinstance(obj, WeakConstraint):
        return WeakConstraint(tuple(map_terms(l, fn) for l in obj.body),
                              map_terms(obj.weight, fn), map_terms(obj.level, fn),
                              tuple(map_terms(t, fn) for t in obj.terms), obj.span)
    raise InternalError(f"map_terms cannot walk {type(obj).__name__}")


def walk_terms(obj) -> Iterator[Term]:
    """Yield every term node in ``obj``, outermost first."""
    if isinstance(obj, (Rational, SymbolicConst, StringConst, Variable, AnonymousVariable)):
        yield obj
    elif isinstance(obj, (Functional, ArithTerm)):
        yield obj
        for a in obj.args:
            yield from walk_terms(a)
    elif isinstance(obj, ClassicalAtom):
        for a in obj.args:
            yield from walk_terms(a)
    elif isinstance(obj, BuiltinAtom):
        yield from walk_terms(obj.left)
        yield from walk_terms(obj.right)
    elif isinstance(obj, AggregateElement):
        for t in obj.terms:
            yield from walk_terms(t)
        for c in obj.condition:
            yield from walk_terms(c)
    elif isinstance(obj, AggregateAtom):
        for e in obj.elements:
            yield from walk_terms(e)
        yield from walk_terms(obj.guard)
    elif isinstance(obj, ExternalAtom):
        for t in obj.inputs:
            yield from walk_terms(t)
        for t in obj.outputs:
            yield from walk_terms(t)
    elif isinstance(obj, Literal):
        yield from walk_terms(obj.atom)
    elif isinstance(obj, Rule):
        for a in obj.head:
            yield from walk_terms(a)
        for l in obj.body:
            yield from walk_terms(l)
    elif isinstance(obj, WeakConstraint):
        for l in obj.body:
            yield from walk_terms(l)
        yield from walk_terms(obj.weight)
        yield from walk_terms(obj.level)
        for t in obj.terms:
            yield from walk_terms(t)
    else:
        raise InternalError(f"walk_terms cannot walk {type(obj).__name__}")


def vars_of(obj) -> set:
    return {t.name for t in walk_terms(obj) if isinstance(t, Variable)}


def is_ground(obj) -> bool:
    return not any(isinstance(t, (Variable, AnonymousVariable)) for t in walk_terms(obj))


def pattern_and_arith_vars(term) -> tuple[set, set]:
    """Split the variables of a term into matchable and arithmetic-embedded.

    Variables under an arithmetic operator cannot be bound by structural
    matching (that would mean inverting the operator), so safety and the
    matching engine treat them separately.
    """
    pattern: set = set()
    arith: set = set()

    def walk(t, inside):
        if isinstance(t, Variable):
            (arith if inside else pattern).add(t.name)
        elif isinstance(t, Functional):
            for a in t.args:
                walk(a, inside)
        elif isinstance(t, ArithTerm):
            for a in t.args:
                walk(a, True)

    walk(term, False)
    return pattern, arith


def substitute(obj, binding: dict):
    """Replace every variable named in ``binding`` by its value."""
    def repl(t):
        if isinstance(t, Variable):
            return binding.get(t.name, t)
        return t
    return map_terms(obj, repl)


def standardize(obj):
    """Replace every rational constant by its standard form.

    Construction already normalizes, so this is an identity walk; it exists
    as the one place that owns the invariant and is idempotent by design.
    """
    def norm(t):
        if isinstance(t, Rational):
            return Rational(t.num, t.den)
        return t
    return map_terms(obj, norm)


def classify_variables(stmt) -> tuple[set, dict]:
    """Global variables of a rule/weak constraint and locals per aggregate element.

    Returns ``(globals, locals)`` where ``locals`` maps
    ``(body_index, element_index)`` to the element's local variable names.
    """
    glob: set = set()
    if isinstance(stmt, Rule):
        for a in stmt.head:
            glob |= vars_of(a)
        body = stmt.body
    else:
        body = stmt.body
        glob |= vars_of(stmt.weight) | vars_of(stmt.level)
        for t in stmt.terms:
            glob |= vars_of(t)
    for lit in body:
        atom = lit.atom
        if isinstance(atom, AggregateAtom):
            glob |= vars_of(atom.guard)
        else:
            glob |= vars_of(atom)
    local: dict = {}
    for li, lit in enumerate(body):
        atom = lit.atom
        if isinstance(atom, AggregateAtom):
            for ei, elem in enumerate(atom.elements):
                local[(li, ei)] = vars_of(elem) - glob
    return glob, local


# ---------------------------------------------------------------------------
# Total order on arithmetically evaluated ground terms


def _rank(t) -> int:
    if t is NEG_INF:
        return -1
    if isinstance(t, Rational):
        return 0
    if isinstance(t, SymbolicConst):
        return 1
    if isinstance(t, StringConst):
        return 2
    if isinstance(t, Functional):
        return 3
    if t is POS_INF:
        return 4
    raise InternalError(f"term_order on unevaluated term {t!r}")


def _cmp(a, b) -> int:
    return (a > b) - (a < b)


def term_order(t, u) -> int:
    """Total order on ground evaluated terms: -1, 0 or 1.

    Rationals come first (by value), then symbolic constants, string
    constants and functional terms; the extremes sort below/above
    everything.  Text comparison is by code point, which coincides with
    bytewise UTF-8 order.
    """
    rt, ru = _rank(t), _rank(u)
    if rt != ru:
        return _cmp(rt, ru)
    if isinstance(t, Rational):
        return t.compare(u)
    if isinstance(t, SymbolicConst):
        return _cmp(t.name, u.name)
    if isinstance(t, StringConst):
        return _cmp(t.text, u.text)
    if isinstance(t, Functional):
        c = _cmp(len(t.args), len(u.args))
        if c:
            return c
        c = _cmp(t.functor, u.functor)
        if c:
            return c
        for ta, ua in zip(t.args, u.args):
            c = term_order(ta, ua)
            if c:
                return c
        return 0
    return 0  # both the same extreme


term_sort_key = cmp_to_key(term_order)


def rel_holds(rel: str, order: int) -> bool:
    """Truth of ``left rel right`` given term_order(left, right)."""
    if rel == "<":
        return order < 0
    if rel == "<=":
        return order <= 0
    if rel == ">":
        return order > 0
    if rel == ">=":
        return order >= 0
    if rel == "=":
        return order == 0
    if rel == "!=":
        return order != 0
    raise InternalError(f"unknown comparison {rel!r}")


def compare_with_extremes(value, guard) -> int:
    """term_order extended to aggregate results that may be sentinels."""
    if value is NEG_INF or value is POS_INF:
        if guard is value:
            return 0
        return -1 if value is NEG_INF else 1
    if guard is NEG_INF or guard is POS_INF:
        return 1 if guard is NEG_INF else -1
    return term_order(value, guard)


def aggregate_value(fn: str, tuples) -> object:
    """Value of an aggregate function on a set of ground term tuples.

    #count is the set's cardinality, #sum adds the rational first terms,
    #max/#min pick extremes of the first terms under the total order and
    fall back to the order sentinels on the empty set.  Tuples without a
    first term only contribute to #count.
    """
    if fn == "count":
        return Rational(len(tuples))
    if fn == "sum":
        total = Rational(0)
        for t in tuples:
            if t and isinstance(t[0], Rational):
                total = total.add(t[0])
        return total
    firsts = [t[0] for t in tuples if t]
    if not firsts:
        return NEG_INF if fn == "max" else POS_INF
    best = firsts[0]
    for v in firsts[1:]:
        c = term_order(v, best)
        if (fn == "max" and c > 0) or (fn == "min" and c < 0):
            best = v
    return best


def atom_order(a: ClassicalAtom, b: ClassicalAtom) -> int:
    """Deterministic display order for ground classical atoms."""
    c = _cmp(a.pred, b.pred)
    if c:
        return c
    c = _cmp(len(a.args), len(b.args))
    if c:
        return c
    for ta, tb in zip(a.args, b.args):
        c = term_order(ta, tb)
        if c:
            return c
    return _cmp(a.strong_neg, b.strong_neg)


atom_sort_key = cmp_to_key(atom_order)


# ---------------------------------------------------------------------------
# Canonical text rendering


@dataclass(frozen=True)
class PrintStyle:
    mode: str = "fraction"   # or "decimal"
    digits: int = 6


FRACTION_STYLE = PrintStyle()

_PRECEDENCE = {"..": 0, "+": 1, "-": 1, "*": 2, "/": 2, "\\": 2, "neg": 3}


def render_term(t, style: PrintStyle = FRACTION_STYLE) -> str:
    if isinstance(t, Rational):
        return _rat.render(t, style.mode, style.digits)
    if isinstance(t, SymbolicConst):
        return t.name
    if isinstance(t, StringConst):
        return f'"{t.text}"'
    if isinstance(t, Variable):
        return t.name
    if isinstance(t, AnonymousVariable):
        return "_"
    if isinstance(t, Functional):
        args = ",".join(render_term(a, style) for a in t.args)
        return f"{t.functor}({args})"
    if isinstance(t, ArithTerm):
        return _render_arith(t, style)
    raise InternalError(f"render_term cannot render {t!r}")


def _wrap(child, parent_prec: int, right_side: bool, style: PrintStyle) -> str:
    text = render_term(child, style)
    if isinstance(child, ArithTerm):
        prec = _PRECEDENCE[child.op]
        if prec < parent_prec or (right_side and prec == parent_prec):
            return f"({text})"
    return text


def _render_arith(t: ArithTerm, style: PrintStyle) -> str:
    if t.op == "neg":
        inner = render_term(t.args[0], style)
        # Parenthesize whenever the operand renders with a leading sign or
        # operator, so the output re-parses to the same tree.
        if isinstance(t.args[0], ArithTerm) or inner.startswith("-"):
            return f"-({inner})"
        return f"-{inner}"
    prec = _PRECEDENCE[t.op]
    left = _wrap(t.args[0], prec, False, style)
    right = _wrap(t.args[1], prec, True, style)
    if t.op == "..":
        return f"{left}..{right}"
    return f"{left}{t.op}{right}"


def render_atom(atom, style: PrintStyle = FRACTION_STYLE) -> str:
    if isinstance(atom, ClassicalAtom):
        sign = "-" if atom.strong_neg else ""
        if not atom.args:
            return f"{sign}{atom.pred}"
        args = ",".join(render_term(a, style) for a in atom.args)
        return f"{sign}{atom.pred}({args})"
    if isinstance(atom, BuiltinAtom):
        return (f"{render_term(atom.left, style)} {atom.rel} "
                f"{render_term(atom.right, style)}")
    if isinstance(atom, AggregateAtom):
        elems = "; ".join(_render_element(e, style) for e in atom.elements)
        return (f"#{atom.fn}{{{elems}}} {atom.rel} "
                f"{render_term(atom.guard, style)}")
    if isinstance(atom, ExternalAtom):
        ins = ",".join(render_term(t, style) for t in atom.inputs)
        outs = ",".join(render_term(t, style) for t in atom.outputs)
        return f"&{atom.name}({ins};{outs})"
    raise InternalError(f"render_atom cannot render {atom!r}")


def _render_element(e: AggregateElement, style: PrintStyle) -> str:
    terms = ",".join(render_term(t, style) for t in e.terms)
    if not e.condition:
        return terms
    conds = ", ".join(render_literal(c, style) for c in e.condition)
    return f"{terms} : {conds}" if terms else f": {conds}"


def render_literal(lit: Literal, style: PrintStyle = FRACTION_STYLE) -> str:
    text = render_atom(lit.atom, style)
    return f"not {text}" if lit.negated else text


def render_statement(stmt, style: PrintStyle = FRACTION_STYLE) -> str:
    if isinstance(stmt, Rule):
        head = " | ".join(render_atom(a, style) for a in stmt.head)
        body = ", ".join(render_literal(l, style) for l in stmt.body)
        if not stmt.body:
            return f"{head}." if head else ":- ."
        if not stmt.head:
            return f":- {body}."
        return f"{head} :- {body}."
    if isinstance(stmt, WeakConstraint):
        body = ", ".join(render_literal(l, style) for l in stmt.body)
        spec = f"{render_term(stmt.weight, style)}@{render_term(stmt.level, style)}"
        if stmt.terms:
            spec += ", " + ", ".join(render_term(t, style) for t in stmt.terms)
        return f":~ {body}. [{spec}]"
    raise InternalError(f"render_statement cannot render {stmt!r}")


def render_program(program: Program, style: PrintStyle = FRACTION_STYLE) -> str:
    lines = [render_statement(s, style) for s in program.rules]
    lines += [render_statement(s, style) for s in program.weaks]
    return "\n".join(lines) + ("\n" if lines else "")
