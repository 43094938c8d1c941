"""Numeric intermediate-format output with LCM-scaled rational weights.

Statement kinds: basic rules (1), count rules (2), weight rules (5),
minimize statements (6) and disjunctive rules (8).  Sum aggregates become
weight rules whose rational weights and bound are multiplied by the least
common multiple of their denominators, which preserves the inequality and
yields plain integers; weak constraints become one minimize statement per
level (emitted in decreasing level order, earlier means higher priority),
each level scaled by its own lcm.  Aggregate atoms are mapped onto fresh
auxiliary atom ids placed after all source atoms; auxiliaries stay out of
the symbol table.

Output layout: rule statements, "0", symbol table, "0", "B+" with the fact
ids, "0", "B-" with the always-false anchor 1, "0", and the models line
"1".  Everything is ASCII, space-separated and newline-terminated; golden
tests pin the bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import InternalError
from .grounder import GroundProgram
from .rational import Rational, ZERO, lcm_denominators
from .syntax import (AggregateAtom, ClassicalAtom, Literal, PrintStyle,
                     FRACTION_STYLE, render_atom, term_order)


@dataclass(frozen=True)
class NumericRule:
    kind: int
    heads: tuple = ()
    bound: int = 0
    neg: tuple = ()
    pos: tuple = ()
    weights: tuple = ()  # aligned with neg + pos

    def render(self) -> str:
        lits = [len(self.neg) + len(self.pos), len(self.neg),
                *self.neg, *self.pos]
        if self.kind == 1:
            parts = [1, self.heads[0], *lits]
        elif self.kind == 2:
            parts = [2, self.heads[0], lits[0], lits[1], self.bound,
                     *self.neg, *self.pos]
        elif self.kind == 5:
            parts = [5, self.heads[0], self.bound, *lits, *self.weights]
        elif self.kind == 6:
            parts = [6, 0, *lits, *self.weights]
        elif self.kind == 8:
            parts = [8, len(self.heads), *self.heads, *lits]
        else:
            raise InternalError(f"unknown rule kind {self.kind}")
        return " ".join(str(p) for p in parts)


@dataclass
class EmitResult:
    statements: list
    symbols: list           # (id, text) pairs
    facts: list             # B+ section ids
    false_anchor: int = 1   # B- section id
    models: int = 1

    def render(self) -> str:
        lines = [s.render() for s in self.statements]
        lines.append("0")
        lines.extend(f"{ident} {text}" for ident, text in self.symbols)
        lines.append("0")
        lines.append("B+")
        lines.extend(str(i) for i in self.facts)
        lines.append("0")
        lines.append("B-")
        lines.append(str(self.false_anchor))
        lines.append("0")
        lines.append(str(self.models))
        return "\n".join(lines) + "\n"


def scale(entries: list, bound: Rational) -> tuple[list, int]:
    """Multiply rational weights and bound by the lcm of their denominators.

    Returns ``([(literal, int_weight), ...], int_bound)``; the scaled
    integer inequality holds exactly when the rational one does.
    """
    factor = Rational(lcm_denominators([w for _, w in entries] + [bound]))
    scaled = [(lit, w.mul(factor).num) for lit, w in entries]
    return scaled, bound.mul(factor).num


# Constant-or-literal values used while composing aggregate translations.
_TRUE = ("const", True)
_FALSE = ("const", False)


def _lit(ident: int, negated: bool = False):
    return ("lit", ident, negated)


def _negate(value):
    if value[0] == "const":
        return ("const", not value[1])
    return ("lit", value[1], not value[2])


def _floor(r: Rational) -> int:
    return r.num // r.den


def _ceil(r: Rational) -> int:
    return -(-r.num // r.den)


class _Translator:
    def __init__(self, g: GroundProgram, style: PrintStyle):
        self.g = g
        self.style = style
        self.statements: list = []
        self._next_aux = g.atoms.first_id + len(g.atoms)

    def fresh_aux(self) -> int:
        ident = self._next_aux
        self._next_aux += 1
        return ident

    # -- generic building blocks

    def basic(self, head: int, pos=(), neg=()) -> NumericRule:
        return NumericRule(1, heads=(head,), neg=tuple(neg), pos=tuple(pos))

    def value_to_id(self, value, out: list) -> int:
        """Materialize a composed value as an atom id."""
        if value[0] == "lit" and not value[2]:
            return value[1]
        aux = self.fresh_aux()
        if value == _TRUE:
            out.append(self.basic(aux))
        elif value[0] == "lit":
            out.append(self.basic(aux, neg=(value[1],)))
        # const False: an atom without rules stays false.
        return aux

    def conj(self, a, b, out: list):
        if a[0] == "const":
            return b if a[1] else _FALSE
        if b[0] == "const":
            return a if b[1] else _FALSE
        aux = self.fresh_aux()
        pos = [i for i in (a, b) if not i[2]]
        neg = [i for i in (a, b) if i[2]]
        out.append(self.basic(aux, pos=[i[1] for i in pos],
                              neg=[i[1] for i in neg]))
        return _lit(aux)

    def disj(self, a, b, out: list):
        if a[0] == "const":
            return _TRUE if a[1] else b
        if b[0] == "const":
            return _TRUE if b[1] else a
        aux = self.fresh_aux()
        for v in (a, b):
            if v[2]:
                out.append(self.basic(aux, neg=(v[1],)))
            else:
                out.append(self.basic(aux, pos=(v[1],)))
        return _lit(aux)

    # -- aggregate translation

    def translate_aggregate(self, atom: AggregateAtom) -> tuple[int, list]:
        out: list = []
        value = self._aggregate_value(atom, out)
        return self.value_to_id(value, out), out

    def _tuple_literals(self, atom: AggregateAtom, out: list) -> list:
        """One (terms, value) entry per distinct element tuple.

        A tuple whose every instance shares one single-literal condition maps
        onto that literal directly; otherwise an auxiliary atom defined by
        one basic rule per condition conjunction.  Condition-free instances
        make the tuple constantly true.
        """
        grouped: dict = {}
        for elem in atom.elements:
            grouped.setdefault(elem.terms, {}).setdefault(elem.condition, None)
        entries = []
        for terms, bodies in grouped.items():
            if () in bodies:
                entries.append((terms, _TRUE))
                continue
            conds = list(bodies)
            if len(conds) == 1 and len(conds[0]) == 1:
                lit = conds[0][0]
                entries.append((terms, _lit(self.g.atoms.get(lit.atom),
                                            lit.negated)))
                continue
            aux = self.fresh_aux()
            for cond in conds:
                pos = [self.g.atoms.get(c.atom) for c in cond if not c.negated]
                neg = [self.g.atoms.get(c.atom) for c in cond if c.negated]
                out.append(self.basic(aux, pos=pos, neg=neg))
            entries.append((terms, _lit(aux)))
        return entries

    def _count_ge(self, entries: list, bound: int, out: list):
        """count of true entry literals >= bound, as a value."""
        const = sum(1 for _, v in entries if v[0] == "const" and v[1])
        lits = [v for _, v in entries if v[0] == "lit"]
        bound -= const
        if bound <= 0:
            return _TRUE
        if len(lits) < bound:
            return _FALSE
        aux = self.fresh_aux()
        pos = [v[1] for v in lits if not v[2]]
        neg = [v[1] for v in lits if v[2]]
        out.append(NumericRule(2, heads=(aux,), bound=bound,
                               neg=tuple(neg), pos=tuple(pos)))
        return _lit(aux)

    def _sum_ge(self, entries: list, bound: int, out: list):
        """lcm-scaled weighted sum of entry literals >= bound, as a value.

        ``entries`` holds (value, int_weight) pairs; negative weights are
        shifted onto the complemented literal, raising the bound.
        """
        shifted = []
        for value, weight in entries:
            if weight == 0:
                continue
            if value[0] == "const":
                if value[1]:
                    bound -= weight
                continue
            if weight < 0:
                shifted.append((_negate(value), -weight))
                bound += -weight
            else:
                shifted.append((value, weight))
        if bound <= 0:
            return _TRUE
        if sum(w for _, w in shifted) < bound:
            return _FALSE
        aux = self.fresh_aux()
        neg = [(v[1], w) for v, w in shifted if v[2]]
        pos = [(v[1], w) for v, w in shifted if not v[2]]
        out.append(NumericRule(
            5, heads=(aux,), bound=bound,
            neg=tuple(i for i, _ in neg), pos=tuple(i for i, _ in pos),
            weights=tuple(w for _, w in neg) + tuple(w for _, w in pos)))
        return _lit(aux)

    def _aggregate_value(self, atom: AggregateAtom, out: list):
        entries = self._tuple_literals(atom, out)
        if atom.fn in ("count", "sum"):
            if not isinstance(atom.guard, Rational):
                # count/sum results are rationals, which sort below every
                # other term type, so the comparison is decided by the rank.
                from .syntax import rel_holds
                return _TRUE if rel_holds(atom.rel, -1) else _FALSE
            if atom.fn == "count":
                return self._count_value(entries, atom.rel, atom.guard, out)
            return self._sum_value(entries, atom.rel, atom.guard, out)
        return self._minmax_value(entries, atom, out)

    def _count_value(self, entries, rel, guard: Rational, out):
        def ge(bound: int):
            return self._count_ge(entries, bound, out)
        if rel == ">=":
            return ge(_ceil(guard))
        if rel == ">":
            return ge(_floor(guard) + 1)
        if rel == "<=":
            return _negate(ge(_floor(guard) + 1))
        if rel == "<":
            return _negate(ge(_ceil(guard)))
        integral = guard.den == 1
        if rel == "=":
            if not integral:
                return _FALSE
            return self.conj(ge(guard.num), _negate(ge(guard.num + 1)), out)
        if not integral:
            return _TRUE
        return self.disj(ge(guard.num + 1), _negate(ge(guard.num)), out)

    def _sum_value(self, entries, rel, guard: Rational, out):
        weighted = [(value, terms[0]) for terms, value in entries
                    if terms and isinstance(terms[0], Rational)]
        scaled, bound = scale(weighted, guard)

        def ge(b: int):
            return self._sum_ge(list(scaled), b, out)
        if rel == ">=":
            return ge(bound)
        if rel == ">":
            return ge(bound + 1)
        if rel == "<=":
            return _negate(ge(bound + 1))
        if rel == "<":
            return _negate(ge(bound))
        if rel == "=":
            return self.conj(ge(bound), _negate(ge(bound + 1)), out)
        return self.disj(ge(bound + 1), _negate(ge(bound)), out)

    def _minmax_value(self, entries, atom: AggregateAtom, out):
        def has(pred):
            chosen = [(t, v) for t, v in entries
                      if t and pred(term_order(t[0], atom.guard))]
            return self._count_ge(chosen, 1, out)

        rel = atom.rel
        if atom.fn == "max":
            if rel == ">=":
                return has(lambda o: o >= 0)
            if rel == ">":
                return has(lambda o: o > 0)
            if rel == "<=":
                return _negate(has(lambda o: o > 0))
            if rel == "<":
                return _negate(has(lambda o: o >= 0))
            if rel == "=":
                return self.conj(has(lambda o: o >= 0),
                                 _negate(has(lambda o: o > 0)), out)
            return self.disj(has(lambda o: o > 0),
                             _negate(has(lambda o: o >= 0)), out)
        if rel == "<=":
            return has(lambda o: o <= 0)
        if rel == "<":
            return has(lambda o: o < 0)
        if rel == ">=":
            return _negate(has(lambda o: o < 0))
        if rel == ">":
            return _negate(has(lambda o: o <= 0))
        if rel == "=":
            return self.conj(has(lambda o: o <= 0),
                             _negate(has(lambda o: o < 0)), out)
        return self.disj(has(lambda o: o < 0),
                         _negate(has(lambda o: o <= 0)), out)

    # -- rules and weak constraints

    def translate_rule(self, rule):
        pos: list = []
        neg: list = []
        extra: list = []
        for lit in rule.body:
            if isinstance(lit.atom, ClassicalAtom):
                ident = self.g.atoms.get(lit.atom)
                (neg if lit.negated else pos).append(ident)
            elif isinstance(lit.atom, AggregateAtom):
                ident, stmts = self.translate_aggregate(lit.atom)
                (neg if lit.negated else pos).append(ident)
                extra.extend(stmts)
            else:
                raise InternalError(
                    f"ground rules cannot contain {type(lit.atom).__name__}")
        if not rule.head:
            main = self.basic(1, pos=pos, neg=neg)
        elif len(rule.head) == 1:
            main = self.basic(self.g.atoms.get(rule.head[0]), pos=pos, neg=neg)
        else:
            main = NumericRule(8, heads=tuple(self.g.atoms.get(a)
                                              for a in rule.head),
                               neg=tuple(neg), pos=tuple(pos))
        self.statements.append(main)
        self.statements.extend(extra)

    def translate_weaks(self):
        # Distinct (weight, level, tuple) specifications incur their cost
        # once, so bodies of equal specifications feed one shared literal.
        grouped: dict = {}
        for weak in self.g.weaks:
            if not isinstance(weak.weight, Rational) or weak.weight == ZERO:
                continue
            if not isinstance(weak.level, Rational):
                continue
            key = (weak.weight, weak.level, weak.terms)
            grouped.setdefault(key, {}).setdefault(weak.body, None)
        by_level: dict = {}
        for (weight, level, _terms), bodies in grouped.items():
            by_level.setdefault(level, []).append((weight, list(bodies)))
        for level in sorted(by_level, reverse=True):
            entries = []
            extra: list = []
            for weight, bodies in by_level[level]:
                value = self._body_literal(bodies, extra)
                entries.append((value, weight))
            scaled, _ = scale(entries, Rational(0))
            # Negative weights move to the complemented literal; the constant
            # offset only shifts reported costs, not the optimum.
            neg: list = []
            pos: list = []
            weights_neg: list = []
            weights_pos: list = []
            for value, weight in scaled:
                if weight == 0:
                    continue
                if weight < 0:
                    value, weight = _negate(value), -weight
                if value[0] == "const":
                    if not value[1]:
                        continue
                    ident = self.fresh_aux()
                    extra.append(self.basic(ident))
                    pos.append(ident)
                    weights_pos.append(weight)
                elif value[2]:
                    neg.append(value[1])
                    weights_neg.append(weight)
                else:
                    pos.append(value[1])
                    weights_pos.append(weight)
            self.statements.extend(extra)
            self.statements.append(NumericRule(
                6, neg=tuple(neg), pos=tuple(pos),
                weights=tuple(weights_neg) + tuple(weights_pos)))

    def _body_literal(self, bodies: list, out: list):
        """Value that is true when any of the weak-constraint bodies holds."""
        if any(not body for body in bodies):
            return _TRUE
        if len(bodies) == 1 and len(bodies[0]) == 1 and isinstance(
                bodies[0][0].atom, ClassicalAtom):
            lit = bodies[0][0]
            return _lit(self.g.atoms.get(lit.atom), lit.negated)
        aux = self.fresh_aux()
        for body in bodies:
            pos: list = []
            neg: list = []
            for lit in body:
                if isinstance(lit.atom, ClassicalAtom):
                    (neg if lit.negated else pos).append(
                        self.g.atoms.get(lit.atom))
                else:
                    ident, stmts = self.translate_aggregate(lit.atom)
                    out.extend(stmts)
                    (neg if lit.negated else pos).append(ident)
            out.append(self.basic(aux, pos=pos, neg=neg))
        return _lit(aux)


def translate(g: GroundProgram, style: PrintStyle = FRACTION_STYLE) -> EmitResult:
    translator = _Translator(g, style)
    for rule in g.rules:
        translator.translate_rule(rule)
    translator.translate_weaks()
    symbols = [(ident, render_atom(atom, style)) for ident, atom in g.atoms]
    return EmitResult(translator.statements, symbols, sorted(g.facts))


def emit(g: GroundProgram, sink, style: PrintStyle = FRACTION_STYLE) -> None:
    """Write the numeric format to a text sink."""
    sink.write(translate(g, style).render())
