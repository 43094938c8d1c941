"""Integer-only programs with hand-maintained expected answer sets.

Every entry is (name, source, needs_integer_division, expected) where
expected is the full collection of answer sets, each written as a frozenset
of atom texts.  The expectations were worked out by hand with classical
integer ASP semantics: division truncates toward zero (hence the flag on
the programs that use '/'), modulus follows the same truncation, and
aggregates see integers only.
"""


def _sets(*sets):
    return {frozenset(s) for s in sets}


CORPUS = [
    ("single_fact", "a.", False, _sets({"a"})),
    ("chain", "a. b :- a.", False, _sets({"a", "b"})),
    ("even_loop", "a :- not b. b :- not a.", False,
     _sets({"a"}, {"b"})),
    ("disjunction", "a | b.", False, _sets({"a"}, {"b"})),
    ("loop_constraint", "a :- not b. b :- not a. :- a.", False,
     _sets({"b"})),
    ("loop_forced", ":- not a. a :- not b. b :- not a.", False,
     _sets({"a"})),
    ("range_facts", "p(1..3).", False,
     _sets({"p(1)", "p(2)", "p(3)"})),
    ("comparison", "p(1). p(2). q(X) :- p(X), X > 1.", False,
     _sets({"p(1)", "p(2)", "q(2)"})),
    ("arith_head", "p(1). p(2). s(X+1) :- p(X).", False,
     _sets({"p(1)", "p(2)", "s(2)", "s(3)"})),
    ("times", "p(3). q(X) :- p(Y), X = Y*2.", False,
     _sets({"p(3)", "q(6)"})),
    ("int_div", "p(7). q(X) :- p(Y), X = Y / 2.", True,
     _sets({"p(7)", "q(3)"})),
    ("int_div_negative", "p(-7). q(X) :- p(Y), X = Y / 2.", True,
     _sets({"p(-7)", "q(-3)"})),
    ("modulus", "p(7). q(X) :- p(Y), X = Y \\ 2.", False,
     _sets({"p(7)", "q(1)"})),
    ("transitive_closure",
     "e(1,2). e(2,3). r(X,Y) :- e(X,Y). r(X,Z) :- r(X,Y), e(Y,Z).", False,
     _sets({"e(1,2)", "e(2,3)", "r(1,2)", "r(2,3)", "r(1,3)"})),
    ("count_assign", "a(1..3). c(N) :- #count{X : a(X)} = N.", False,
     _sets({"a(1)", "a(2)", "a(3)", "c(3)"})),
    ("sum_assign", "a(1). a(2). s(N) :- #sum{X : a(X)} = N.", False,
     _sets({"a(1)", "a(2)", "s(3)"})),
    ("max_assign", "a(2). a(5). m(N) :- #max{X : a(X)} = N.", False,
     _sets({"a(2)", "a(5)", "m(5)"})),
    ("min_assign", "a(2). a(5). m(N) :- #min{X : a(X)} = N.", False,
     _sets({"a(2)", "a(5)", "m(2)"})),
    ("count_bound", "a(1). a(2). ok :- #count{X : a(X)} >= 2.", False,
     _sets({"a(1)", "a(2)", "ok"})),
    ("even_numbers", "num(1..4). even(X) :- num(X), X \\ 2 = 0.", False,
     _sets({"num(1)", "num(2)", "num(3)", "num(4)", "even(2)", "even(4)"})),
    ("supported_disjunct", "a | b. a :- b.", False, _sets({"a"})),
    ("strong_negation", "p. -q. r :- p, not q.", False,
     _sets({"p", "-q", "r"})),
    ("strong_clash", "p. -p.", False, set()),
    ("default_negation", "a(1). a(2). c(1). b(X) :- a(X), not c(X).", False,
     _sets({"a(1)", "a(2)", "c(1)", "b(2)"})),
    ("empty_model", "p(X) :- q(X). q(X) :- p(X).", False,
     _sets(set())),
    ("agg_constraint", "a(1). a(2). :- #sum{X : a(X)} > 2.", False, set()),
    ("pairs", "p(2). p(5). q(X,Y) :- p(X), p(Y), X < Y.", False,
     _sets({"p(2)", "p(5)", "q(2,5)"})),
    ("sum_negative_weights", "b(-2). b(3). t(S) :- #sum{X : b(X)} = S.", False,
     _sets({"b(-2)", "b(3)", "t(1)"})),
    ("negated_aggregate", "a(1). ok :- not #count{X : a(X)} >= 2.", False,
     _sets({"a(1)", "ok"})),
    ("guess_and_check",
     "p(1..2). in(X) :- p(X), not out(X). out(X) :- p(X), not in(X). "
     ":- #count{X : in(X)} < 1.", False,
     _sets({"p(1)", "p(2)", "in(1)", "in(2)"},
           {"p(1)", "p(2)", "in(1)", "out(2)"},
           {"p(1)", "p(2)", "out(1)", "in(2)"})),
]

# Weak-constraint programs: (name, source, expected optimal answer sets).
WEAK_CORPUS = [
    ("weights", "a :- not b. b :- not a. :~ a. [2@1, x] :~ b. [1@1, x]",
     _sets({"b"})),
    ("levels", "a :- not b. b :- not a. :~ a. [1@2, x] :~ b. [5@1, x]",
     _sets({"b"})),
    ("tie", "a :- not b. b :- not a. :~ a. [1@1, x] :~ b. [1@1, y]",
     _sets({"a"}, {"b"})),
]
