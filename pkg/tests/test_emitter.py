"""Numeric format: scaling, aggregate normalization, sections, round trip."""

import io
import random
from fractions import Fraction

from helpers import fixture_text, pipeline
from ratground.emitter import NumericRule, emit, scale, translate
from ratground.evaluator import satisfied
from ratground.grounder import AtomTable, GroundProgram, ground
from ratground.parser import parse_program
from ratground.rational import Rational
from ratground.syntax import (AggregateAtom, AggregateElement, ClassicalAtom,
                              Literal)
from smodels_reader import parse_numeric


def test_scale_examples():
    entries = [("a", Rational(3, 4)), ("b", Rational(3))]
    scaled, bound = scale(entries, Rational(2))
    assert scaled == [("a", 3), ("b", 12)]
    assert bound == 8

    entries = [("a", Rational(1)), ("b", Rational(3))]
    scaled, bound = scale(entries, Rational(2))
    assert scaled == [("a", 1), ("b", 3)]
    assert bound == 2

    entries = [("a", Rational(1, 6)), ("b", Rational(1, 4))]
    scaled, bound = scale(entries, Rational(1, 2))
    assert scaled == [("a", 2), ("b", 3)]
    assert bound == 6


def test_paper_id_assignment_r1_lines():
    g = pipeline(fixture_text("r1_weight.lp"), first_id=1)
    lines = translate(g).render().splitlines()
    assert lines[1] == "1 3 1 0 4"
    assert lines[2] == "5 4 2 2 0 1 2 1 3"


def test_paper_id_assignment_r2_lines():
    g = pipeline(fixture_text("r2_weight.lp"), first_id=1)
    lines = translate(g).render().splitlines()
    assert lines[1] == "1 3 1 0 4"
    assert lines[2] == "5 4 8 2 0 1 2 3 12"


def test_full_numeric_golden():
    g = pipeline(fixture_text("r1_weight.lp"))
    buf = io.StringIO()
    emit(g, buf)
    assert buf.getvalue() == fixture_text("golden_r1_numeric.txt")


def test_empty_program_layout():
    g = pipeline("")
    assert translate(g).render() == "0\n0\nB+\n0\nB-\n1\n0\n1\n"


def test_facts_become_rules_and_bplus_entries():
    g = pipeline("a. b.")
    result = translate(g)
    assert [s.render() for s in result.statements] == ["1 2 0 0", "1 3 0 0"]
    assert result.facts == [2, 3]


def test_minimize_statement_example():
    g = pipeline("a | b. :~ a. [1/2@0, t]")
    lines = [s.render() for s in translate(g).statements]
    assert lines == ["8 2 2 3 0 0", "6 0 1 0 2 1"]


def test_minimize_levels_emitted_in_decreasing_order():
    src = ("a | b. "
           ":~ a. [1/3@1, x] "
           ":~ b. [2@5, y] "
           ":~ a. [1@0, z]")
    g = pipeline(src)
    minimized = [s for s in translate(g).statements if s.kind == 6]
    # level 5 first (weight 2), then level 1 (1/3 scaled by 3), then level 0
    assert [s.render() for s in minimized] == [
        "6 0 1 0 3 2",
        "6 0 1 0 2 1",
        "6 0 1 0 2 1",
    ]


def test_minimize_shared_tuple_uses_one_literal():
    # same (w@l, t) tuple from two bodies: one auxiliary, two defining rules
    g = pipeline("a | b. :~ a. [1@1, t]\n:~ b. [1@1, t]")
    stmts = translate(g).statements
    minimize = [s for s in stmts if s.kind == 6]
    assert len(minimize) == 1
    assert len(minimize[0].pos) == 1
    aux = minimize[0].pos[0]
    defs = [s for s in stmts if s.kind == 1 and s.heads == (aux,)]
    assert len(defs) == 2


def test_count_aggregate_zero_bound_unconditionally_true():
    g = pipeline("a | b. ok :- #count{X : p(X)} >= 0.")
    stmts = translate(g).statements
    ok_id = dict((name, ident) for ident, name in translate(g).symbols)["ok"]
    # ok is defined via an auxiliary that is a fact
    (ok_rule,) = [s for s in stmts if s.kind == 1 and s.heads == (ok_id,)]
    (aux,) = ok_rule.pos
    assert any(s.kind == 1 and s.heads == (aux,) and not s.pos and not s.neg
               for s in stmts)


def test_strong_constraint_uses_false_anchor():
    g = pipeline("a | b. :- a, b.")
    stmts = translate(g).statements
    assert any(s.kind == 1 and s.heads == (1,) and len(s.pos) == 2
               for s in stmts)


def test_negated_aggregate_goes_to_neg_section():
    g = pipeline("a | b. ok :- not #sum{1 : a; 1 : b} >= 2.")
    stmts = translate(g).statements
    symbols = dict((name, ident) for ident, name in translate(g).symbols)
    (ok_rule,) = [s for s in stmts if s.kind == 1
                  and s.heads == (symbols["ok"],)]
    assert len(ok_rule.neg) == 1 and not ok_rule.pos


def test_round_trip_reader():
    for name in ("r1_weight.lp", "r2_weight.lp", "q3_citybench.lp"):
        g = pipeline(fixture_text(name))
        result = translate(g)
        statements, symbols, bplus, bminus, models = parse_numeric(
            result.render())
        assert statements == result.statements
        assert symbols == result.symbols
        assert bplus == result.facts
        assert bminus == [1]
        assert models == 1


def _interp_satisfies_weight_rule(rule: NumericRule, true_ids) -> bool:
    total = 0
    ids = list(rule.neg) + list(rule.pos)
    for pos_index, (ident, weight) in enumerate(zip(ids, rule.weights)):
        negated = pos_index < len(rule.neg)
        holds = (ident not in true_ids) if negated else (ident in true_ids)
        if holds:
            total += weight
    return total >= rule.bound


def test_weight_rule_agrees_with_aggregate_semantics():
    rng = random.Random(19)
    for _ in range(100):
        n = rng.randint(1, 6)
        atoms = [ClassicalAtom(False, f"p{i}") for i in range(n)]
        elements = tuple(
            AggregateElement((Rational(rng.randint(-6, 6), rng.randint(1, 6)),
                              Rational(i)),
                             (Literal(False, atoms[i]),))
            for i in range(n))
        guard = Rational(rng.randint(-8, 8), rng.randint(1, 4))
        agg = AggregateAtom("sum", elements, ">=", guard)
        table = AtomTable()
        for a in atoms:
            table.intern(a)
        g = GroundProgram([], [], table, frozenset())
        translator_result = translate(g)  # unrelated; just to assert emptiness
        assert translator_result.statements == []
        from ratground.emitter import _Translator
        from ratground.syntax import FRACTION_STYLE
        tr = _Translator(g, FRACTION_STYLE)
        aux, stmts = tr.translate_aggregate(agg)
        weight_rules = [s for s in stmts if s.kind == 5]
        for mask in range(1 << n):
            interp = frozenset(table.get(atoms[i])
                               for i in range(n) if mask >> i & 1)
            expected = satisfied(Literal(False, agg), interp, table)
            if weight_rules:
                assert len(weight_rules) == 1 and aux == weight_rules[0].heads[0]
                got = _interp_satisfies_weight_rule(weight_rules[0], interp)
            else:
                # folded to a constant: aux is either a fact or undefined
                got = any(s.kind == 1 and s.heads == (aux,) for s in stmts)
            assert got == expected, (mask, agg)


def test_scale_proportionality_spot():
    rng = random.Random(23)
    for _ in range(200):
        n = rng.randint(1, 5)
        weights = [Rational(rng.randint(-9, 9), rng.randint(1, 9))
                   for _ in range(n)]
        bound = Rational(rng.randint(-9, 9), rng.randint(1, 9))
        scaled, int_bound = scale([(i, w) for i, w in enumerate(weights)], bound)
        for _ in range(8):
            chosen = [rng.random() < 0.5 for _ in range(n)]
            exact = sum((Fraction(w.num, w.den) for w, c in zip(weights, chosen)
                         if c), Fraction(0))
            lhs = sum(w for (_, w), c in zip(scaled, chosen) if c)
            assert (exact >= Fraction(bound.num, bound.den)) \
                == (lhs >= int_bound)
