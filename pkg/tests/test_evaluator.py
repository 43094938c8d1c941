"""Reference semantics: satisfaction, reduct, answer sets, costs, domination."""

import pytest

from helpers import atom_strings, pipeline, solve_strings
from ratground.errors import TooLargeForBruteForceError
from ratground.evaluator import (answer_sets, costs, dominates, is_model,
                                 optimal_answer_sets, reduct,
                                 render_answer_set, render_costs, satisfied)
from ratground.grounder import AtomTable, GroundProgram
from ratground.rational import Rational
from ratground.syntax import (AggregateAtom, AggregateElement, BuiltinAtom,
                              ClassicalAtom, Literal, Rule, StringConst,
                              SymbolicConst)


def _atom(name, *args):
    return ClassicalAtom(False, name, tuple(args))


def _simple_program(rules, atoms, facts=()):
    table = AtomTable()
    for a in atoms:
        table.intern(a)
    return GroundProgram(list(rules), [], table,
                         frozenset(table.intern(f) for f in facts))


def test_satisfied_aggregate_sum():
    a1, a3 = _atom("a", Rational(1)), _atom("a", Rational(3))
    agg = AggregateAtom("sum", (
        AggregateElement((Rational(1),), (Literal(False, a1),)),
        AggregateElement((Rational(3),), (Literal(False, a3),)),
    ), ">=", Rational(2))
    g = _simple_program([], [a1, a3])
    both = frozenset({g.atoms.get(a1), g.atoms.get(a3)})
    assert satisfied(Literal(False, agg), both, g.atoms)
    only1 = frozenset({g.atoms.get(a1)})
    assert not satisfied(Literal(False, agg), only1, g.atoms)
    assert satisfied(Literal(True, agg), only1, g.atoms)


def test_satisfied_empty_min_is_positive_infinity():
    agg = AggregateAtom("min", (
        AggregateElement((SymbolicConst("x"),),
                         (Literal(False, _atom("p", SymbolicConst("x"))),)),
    ), ">=", Rational(5))
    g = _simple_program([], [_atom("p", SymbolicConst("x"))])
    assert satisfied(Literal(False, agg), frozenset(), g.atoms)


def test_satisfied_duplicate_tuples_collapse():
    a, b = _atom("a"), _atom("b")
    agg = AggregateAtom("sum", (
        AggregateElement((Rational(1, 2),), (Literal(False, a),)),
        AggregateElement((Rational(1, 2),), (Literal(False, b),)),
    ), "=", Rational(1, 2))
    g = _simple_program([], [a, b])
    both = frozenset({g.atoms.get(a), g.atoms.get(b)})
    # the two (1/2) tuples are the same element of the evaluated set
    assert satisfied(Literal(False, agg), both, g.atoms)
    # distinct second components keep them apart
    agg2 = AggregateAtom("sum", (
        AggregateElement((Rational(1, 2), SymbolicConst("a")),
                         (Literal(False, a),)),
        AggregateElement((Rational(1, 2), SymbolicConst("b")),
                         (Literal(False, b),)),
    ), "=", Rational(1))
    assert satisfied(Literal(False, agg2), both, g.atoms)


def test_satisfied_builtin_via_term_order():
    g = _simple_program([], [])
    lit = Literal(False, BuiltinAtom("<", StringConst("10.1"),
                                     StringConst("2.1")))
    assert satisfied(lit, frozenset(), g.atoms)


def test_reduct_examples():
    a, b = _atom("a"), _atom("b")
    rule = Rule((a,), (Literal(True, b),))
    g = _simple_program([rule], [a, b])
    ia = frozenset({g.atoms.get(a)})
    ib = frozenset({g.atoms.get(b)})
    assert reduct(g, ia) == [rule]
    assert reduct(g, ib) == []


def test_reduct_keeps_true_aggregates_and_rejects_unfounded_loop():
    # p :- #sum{1 : p} >= 1.  The rule survives the reduct at I={p}, but
    # {p} is not minimal, so there is no answer set containing p.
    p = _atom("p")
    agg = AggregateAtom("sum", (
        AggregateElement((Rational(1),), (Literal(False, p),)),
    ), ">=", Rational(1))
    rule = Rule((p,), (Literal(False, agg),))
    g = _simple_program([rule], [p])
    ip = frozenset({g.atoms.get(p)})
    assert reduct(g, ip) == [rule]
    assert answer_sets(g) == [frozenset()]


def test_answer_sets_disjunction_and_even_loop():
    assert solve_strings("a | b.") == {frozenset({"a"}), frozenset({"b"})}
    assert solve_strings("a :- not b. b :- not a.") == {
        frozenset({"a"}), frozenset({"b"})}


def test_answer_sets_guard():
    # 13 independent even loops = 26 open atoms > 24
    src = "\n".join(f"a{i} :- not b{i}. b{i} :- not a{i}." for i in range(13))
    g = pipeline(src)
    with pytest.raises(TooLargeForBruteForceError):
        answer_sets(g)


def test_costs_examples():
    g = pipeline("a :- not b. b :- not a.")
    for interp in answer_sets(g):
        assert costs(g, interp) == {}

    g = pipeline("a. :~ a. [1/2@1, x]\n:~ a. [1/3@1, y]")
    (interp,) = answer_sets(g)
    assert costs(g, interp) == {Rational(1): Rational(5, 6)}

    # syntactically identical ground weak constraints count once
    g = pipeline("a. :~ a. [1/2@1, x]\n:~ a. [1/2@1, x]")
    (interp,) = answer_sets(g)
    assert costs(g, interp) == {Rational(1): Rational(1, 2)}


def test_costs_duplicate_tuple_from_different_bodies():
    g = pipeline("a. b. :~ a. [1/2@1, x]\n:~ b. [1/2@1, x]")
    (interp,) = answer_sets(g)
    assert costs(g, interp) == {Rational(1): Rational(1, 2)}


def test_dominates():
    one = {Rational(1): Rational(1, 2)}
    other = {Rational(1): Rational(1, 3)}
    assert dominates(other, one)
    assert not dominates(one, other)
    # higher level decides first
    a = {Rational(2): Rational(1), Rational(1): Rational(0)}
    b = {Rational(2): Rational(1), Rational(1): Rational(5)}
    assert dominates(a, b)
    assert not dominates(b, a)
    assert not dominates(a, a)


def test_optimal_answer_sets():
    assert solve_strings("a | b.", optimal=True) == {
        frozenset({"a"}), frozenset({"b"})}
    src = "a :- not b. b :- not a. :~ a. [2@1, t]\n:~ b. [1@1, t]"
    assert solve_strings(src, optimal=True) == {frozenset({"b"})}
    src = "a :- not b. b :- not a. :~ a. [1@2, t]\n:~ b. [5@1, t]"
    assert solve_strings(src, optimal=True) == {frozenset({"b"})}


def test_minimality_of_each_answer_set():
    g = pipeline("a | b. c :- a. c :- b. d :- not e.")
    for interp in answer_sets(g):
        red = reduct(g, interp)
        assert is_model(g.rules, interp, g.atoms)
        for atom_id in sorted(interp - g.facts):
            smaller = frozenset(interp - {atom_id})
            assert not is_model(red, smaller, g.atoms)


def test_positive_programs_have_least_fixpoint_semantics():
    sources = [
        "a. b :- a. c :- b, a.",
        "e(1,2). e(2,3). e(3,4). r(X,Y) :- e(X,Y). r(X,Z) :- r(X,Y), e(Y,Z).",
        "p(1). p(2). q(X,Y) :- p(X), p(Y).",
    ]
    for src in sources:
        g = pipeline(src)
        sets_ = answer_sets(g)
        assert len(sets_) == 1
        # independent iterative oracle: immediate consequences to fixpoint
        model = set()
        changed = True
        while changed:
            changed = False
            for rule in g.rules:
                assert len(rule.head) == 1
                assert all(not l.negated for l in rule.body)
                if all(g.atoms.get(l.atom) in model for l in rule.body):
                    head_id = g.atoms.get(rule.head[0])
                    if head_id not in model:
                        model.add(head_id)
                        changed = True
        assert sets_[0] == frozenset(model)


def test_render_answer_set_order():
    g = pipeline("pow(3/4, 9/16). a(3/4).")
    (interp,) = answer_sets(g)
    assert render_answer_set(g, interp) == "{a(3/4), pow(3/4,9/16)}"


def test_render_costs_decreasing_levels():
    vector = {Rational(1): Rational(5, 6), Rational(2): Rational(1)}
    assert render_costs(vector) == "COSTS 2:1 1:5/6"
