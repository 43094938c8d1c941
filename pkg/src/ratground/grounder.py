"""Bottom-up instantiation of parsed programs.

The grounder computes the derivable ground program: predicates are grouped
into strongly connected components of the dependency graph, components are
processed in topological order, and rules are matched against the derived
instances with semi-naive iteration inside each component.  Negative and
aggregate literals over predicates of the same component stay in the ground
rule with open truth values; everything already final is simplified away
(true builtins and facts disappear from bodies, false literals delete the
instance).  Candidate bindings that run into undefined arithmetic (division
by zero, non-integer modulus, arithmetic on non-rationals) are dropped,
optionally with a warning.

Determinism: all iteration is over insertion-ordered dicts, so identical
input and options produce byte-identical ground output on every run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from . import extfuncs
from .errors import (ExternalCallError, GroundingError, InternalError,
                     RangeTypeError, RecursiveAggregateError, Span)
from .rational import Rational
from .syntax import (AggregateAtom, AggregateElement, ArithTerm, BuiltinAtom,
                     ClassicalAtom, ExternalAtom, Functional, Literal,
                     Program, Rule, StringConst, SymbolicConst, Variable,
                     WeakConstraint, aggregate_value, classify_variables,
                     compare_with_extremes, pattern_and_arith_vars, rel_holds,
                     standardize, substitute, term_order, vars_of)
from .syntax import NEG_INF, POS_INF


class _Undefined:
    __slots__ = ()

    def __repr__(self):
        return "UNDEFINED"


#: Result of arithmetic that is not well-defined; callers drop the binding.
UNDEFINED = _Undefined()


def _trunc_div(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a < 0) == (b < 0) else -q


def _apply_binop(op: str, left, right, integer_division: bool):
    if left is UNDEFINED or right is UNDEFINED:
        return UNDEFINED
    if not (isinstance(left, Rational) and isinstance(right, Rational)):
        return UNDEFINED
    if op == "+":
        return left.add(right)
    if op == "-":
        return left.sub(right)
    if op == "*":
        return left.mul(right)
    if op == "/":
        if right.num == 0:
            return UNDEFINED
        if integer_division and left.den == 1 and right.den == 1:
            return Rational(_trunc_div(left.num, right.num))
        return left.div(right)
    if op == "\\":
        if left.den != 1 or right.den != 1 or right.num == 0:
            return UNDEFINED
        return Rational(left.num - _trunc_div(left.num, right.num) * right.num)
    raise InternalError(f"unknown arithmetic operator {op!r}")


def expand_arith(term, integer_division: bool = False,
                 span: Optional[Span] = None) -> list:
    """All readings of a term with ground arithmetic collapsed.

    Range subterms multiply readings (one per integer in the range, so an
    empty range yields none); readings whose arithmetic is undefined appear
    as UNDEFINED entries.  Variables outside arithmetic pass through so the
    result can be used as a match pattern.  Non-integer range bounds raise
    RangeTypeError.
    """
    if isinstance(term, (Rational, SymbolicConst, StringConst, Variable)):
        return [term]
    if isinstance(term, Functional):
        combos = [[]]
        for arg in term.args:
            vals = expand_arith(arg, integer_division, span)
            combos = [c + [v] for c in combos for v in vals]
        return [UNDEFINED if any(v is UNDEFINED for v in c)
                else Functional(term.functor, tuple(c))
                for c in combos]
    if isinstance(term, ArithTerm):
        if term.op == "neg":
            out = []
            for v in expand_arith(term.args[0], integer_division, span):
                if isinstance(v, Rational):
                    out.append(v.neg())
                else:
                    out.append(UNDEFINED)
            return out
        lefts = expand_arith(term.args[0], integer_division, span)
        rights = expand_arith(term.args[1], integer_division, span)
        out = []
        for lv in lefts:
            for rv in rights:
                if term.op == "..":
                    if lv is UNDEFINED or rv is UNDEFINED:
                        out.append(UNDEFINED)
                        continue
                    if not (isinstance(lv, Rational) and lv.den == 1
                            and isinstance(rv, Rational) and rv.den == 1):
                        raise RangeTypeError(
                            f"range bounds must be integers, got "
                            f"{lv}..{rv}", span)
                    out.extend(Rational(i) for i in range(lv.num, rv.num + 1))
                else:
                    out.append(_apply_binop(term.op, lv, rv, integer_division))
        return out
    raise InternalError(f"expand_arith on unexpected term {term!r}")


def eval_arith(term, integer_division: bool = False):
    """Single-value arithmetic evaluation of a ground term.

    Returns UNDEFINED instead of raising when the term is not well-defined;
    range terms belong to the multi-reading path and are rejected here.
    """
    values = expand_arith(term, integer_division)
    if len(values) != 1:
        raise InternalError("range term in single-value context")
    return values[0]


def eval_external(name: str, inputs) -> object:
    """Evaluate a registered external function; UNDEFINED drops the binding."""
    entry = extfuncs.REGISTRY.get(name)
    if entry is None:
        raise ExternalCallError(f"unknown external function &{name}")
    result = extfuncs.call(name, tuple(inputs))
    if result is None:
        return UNDEFINED
    return result[0] if len(result) == 1 else result


def unify(pattern, value, binding: dict) -> Optional[dict]:
    """Match a (possibly variable-containing) pattern against a ground value."""
    if isinstance(pattern, Variable):
        bound = binding.get(pattern.name)
        if bound is None:
            new = dict(binding)
            new[pattern.name] = value
            return new
        return binding if bound == value else None
    if isinstance(pattern, Functional):
        if (not isinstance(value, Functional) or pattern.functor != value.functor
                or len(pattern.args) != len(value.args)):
            return None
        for p, v in zip(pattern.args, value.args):
            binding = unify(p, v, binding)
            if binding is None:
                return None
        return binding
    return binding if pattern == value else None


class AtomTable:
    """Bijection between ground classical atoms and dense integer ids.

    Ids start at ``first_id`` (default 2: id 1 is the numeric format's
    always-false anchor) and are assigned in insertion order.
    """

    def __init__(self, first_id: int = 2):
        self.first_id = first_id
        self._ids: dict = {}
        self._atoms: list = []

    def intern(self, atom: ClassicalAtom) -> int:
        ident = self._ids.get(atom)
        if ident is None:
            ident = self.first_id + len(self._atoms)
            self._ids[atom] = ident
            self._atoms.append(atom)
        return ident

    def get(self, atom: ClassicalAtom) -> Optional[int]:
        return self._ids.get(atom)

    def atom_of(self, ident: int) -> ClassicalAtom:
        return self._atoms[ident - self.first_id]

    def __len__(self):
        return len(self._atoms)

    def __iter__(self) -> Iterator[tuple[int, ClassicalAtom]]:
        for i, atom in enumerate(self._atoms):
            yield self.first_id + i, atom


@dataclass
class GroundProgram:
    """Arithmetically evaluated ground program with its atom table."""

    rules: list
    weaks: list
    atoms: AtomTable
    facts: frozenset  # atom ids certainly true


class Grounder:
    def __init__(self, program: Program, *, integer_division: bool = False,
                 warn: Optional[Callable[[Optional[Span], str], None]] = None,
                 first_id: int = 2):
        self.program = program
        self.integer_division = integer_division
        self.warn = warn
        self.first_id = first_id
        # predkey -> {args tuple: None} in derivation order
        self._possible: dict = {}
        self._certain: dict = {}
        self._in_progress: set = set()
        self._instances: dict = {}      # (heads, body) -> None
        self._weak_instances: dict = {} # (body, w, l, terms) -> None
        self._span: Optional[Span] = None
        self._delta_events: list = []

    # ------------------------------------------------------------------
    # helpers

    def _note_dropped(self, reason: str):
        if self.warn is not None:
            self.warn(self._span, reason)

    def _expand(self, term):
        return expand_arith(term, self.integer_division, self._span)

    def _poss(self, key) -> dict:
        return self._possible.setdefault(key, {})

    def _cert(self, key) -> set:
        return self._certain.setdefault(key, set())

    def _is_possible(self, atom: ClassicalAtom) -> bool:
        return atom.args in self._possible.get(atom.key, ())

    def _is_certain(self, atom: ClassicalAtom) -> bool:
        return atom.args in self._certain.get(atom.key, ())

    # ------------------------------------------------------------------
    # preparation

    def _prepare(self):
        program = standardize_program(self.program)
        self._head_rules = []
        self._constraints = []
        for rule in program.rules:
            (self._head_rules if rule.head else self._constraints).append(rule)
        self._weaks = list(program.weaks)
        self._constraints.extend(self._strong_negation_constraints(program))

    def _strong_negation_constraints(self, program: Program) -> list:
        keys: dict = {}
        for stmt in program.statements():
            for atom in _classical_atoms_of(stmt):
                keys[atom.key] = None
        out = []
        for (neg, name, arity) in keys:
            if neg and (False, name, arity) in keys:
                args = tuple(Variable(f"_S{i}") for i in range(arity))
                out.append(Rule((), (
                    Literal(False, ClassicalAtom(False, name, args)),
                    Literal(False, ClassicalAtom(True, name, args)),
                )))
        return out

    # ------------------------------------------------------------------
    # dependency graph

    def _build_graph(self):
        nodes: dict = {}
        edges: dict = {}     # node -> {node: via_aggregate}

        def node(key):
            nodes.setdefault(key, None)
            edges.setdefault(key, {})
            return key

        for rule in self._head_rules:
            head_keys = [node(a.key) for a in rule.head]
            # Alternatives in a disjunctive head depend on each other.
            for h1 in head_keys:
                for h2 in head_keys:
                    if h1 != h2:
                        edges[h1].setdefault(h2, False)
            for lit in rule.body:
                atom = lit.atom
                if isinstance(atom, ClassicalAtom):
                    src = node(atom.key)
                    for h in head_keys:
                        edges[src].setdefault(h, False)
                elif isinstance(atom, AggregateAtom):
                    for elem in atom.elements:
                        for cond in elem.condition:
                            if isinstance(cond.atom, ClassicalAtom):
                                src = node(cond.atom.key)
                                for h in head_keys:
                                    edges[src][h] = True
        for stmt in self._constraints + self._weaks:
            for atom in _classical_atoms_of(stmt):
                node(atom.key)

        comp_of, components = _tarjan_scc(list(nodes), edges)
        # Components come out in reverse topological order.
        components.reverse()
        comp_index = {}
        for i, comp in enumerate(components):
            for key in comp:
                comp_index[key] = i

        for rule in self._head_rules:
            for lit in rule.body:
                atom = lit.atom
                if isinstance(atom, AggregateAtom):
                    for elem in atom.elements:
                        for cond in elem.condition:
                            if not isinstance(cond.atom, ClassicalAtom):
                                continue
                            for h in rule.head:
                                if comp_index[cond.atom.key] == comp_index[h.key]:
                                    raise RecursiveAggregateError(
                                        f"predicate {cond.atom.pred}/"
                                        f"{len(cond.atom.args)} is involved in "
                                        "recursion through an aggregate",
                                        rule.span)
        self._components = components
        self._comp_index = comp_index

    # ------------------------------------------------------------------
    # main loop

    def run(self) -> GroundProgram:
        self._prepare()
        self._build_graph()
        rules_by_comp: dict = {i: [] for i in range(len(self._components))}
        for rule in self._head_rules:
            comp = max(self._comp_index[a.key] for a in rule.head)
            rules_by_comp[comp].append(rule)
        for i, comp in enumerate(self._components):
            self._ground_component(set(comp), rules_by_comp[i])
        self._ground_final_phase()
        self._simplify_to_fixpoint()
        return self._finalize()

    def _ground_component(self, preds: set, rules: list):
        self._in_progress = preds
        delta = None
        while True:
            self._delta_events = []
            for rule in rules:
                self._process_statement(rule, delta)
            if not self._delta_events:
                break
            delta = {}
            for key, args in self._delta_events:
                delta.setdefault(key, {})[args] = None
            delta = {key: list(argmap) for key, argmap in delta.items()}
        self._in_progress = set()

    def _ground_final_phase(self):
        for rule in self._constraints:
            self._process_statement(rule, None)
        for weak in self._weaks:
            self._process_statement(weak, None)

    def _process_statement(self, stmt, delta):
        self._span = stmt.span
        globals_, _ = classify_variables(stmt)
        items = list(enumerate(stmt.body))
        if delta is None:
            runs = [(None, None)]
        else:
            runs = []
            full_rerun = False
            for idx, lit in items:
                atom = lit.atom
                if (isinstance(atom, ClassicalAtom) and not lit.negated
                        and atom.key in delta):
                    runs.append((idx, delta[atom.key]))
                elif isinstance(atom, AggregateAtom):
                    for elem in atom.elements:
                        for cond in elem.condition:
                            if (isinstance(cond.atom, ClassicalAtom)
                                    and cond.atom.key in delta):
                                full_rerun = True
            if full_rerun:
                runs = [(None, None)]
            if not runs:
                return
        for delta_idx, delta_args in runs:
            for binding, kept in self._solve(items, {}, [], globals_,
                                             delta_idx, delta_args):
                body = tuple(lit for _, lit in sorted(kept, key=lambda e: e[0]))
                if isinstance(stmt, WeakConstraint):
                    self._register_weak(stmt, binding, body)
                else:
                    self._register_rule(stmt, binding, body)

    # ------------------------------------------------------------------
    # body solving

    def _solve(self, items, binding, kept, globals_, delta_idx, delta_args):
        if not items:
            yield binding, kept
            return
        pick = None
        for pos, (idx, lit) in enumerate(items):
            if self._ready(lit, binding, globals_):
                pick = pos
                break
        if pick is None:
            raise InternalError(
                "no literal can be processed; the safety check should have "
                "rejected this statement")
        idx, lit = items[pick]
        rest = items[:pick] + items[pick + 1:]
        atom = lit.atom
        if isinstance(atom, ClassicalAtom):
            step = self._step_negative if lit.negated else self._step_positive
        elif isinstance(atom, BuiltinAtom):
            step = self._step_builtin
        elif isinstance(atom, ExternalAtom):
            step = self._step_external
        elif isinstance(atom, AggregateAtom):
            step = self._step_aggregate
        else:
            raise InternalError(f"unknown literal {lit!r}")
        yield from step(idx, lit, rest, binding, kept, globals_,
                        delta_idx, delta_args)

    def _ready(self, lit: Literal, binding: dict, globals_: set) -> bool:
        atom = lit.atom
        if isinstance(atom, ClassicalAtom):
            if lit.negated:
                return vars_of(atom) <= binding.keys()
            arith = set()
            for arg in atom.args:
                arith |= _arith_vars(arg)
            return arith <= binding.keys()
        if isinstance(atom, BuiltinAtom):
            all_vars = vars_of(atom)
            if all_vars <= binding.keys():
                return True
            if lit.negated or atom.rel != "=":
                return False
            for pattern, closed in ((atom.left, atom.right),
                                    (atom.right, atom.left)):
                if (vars_of(closed) <= binding.keys()
                        and _arith_vars(pattern) <= binding.keys()):
                    return True
            return False
        if isinstance(atom, ExternalAtom):
            ins = set()
            for t in atom.inputs:
                ins |= vars_of(t)
            if not ins <= binding.keys():
                return False
            if lit.negated:
                return vars_of(atom) <= binding.keys()
            return True
        if isinstance(atom, AggregateAtom):
            needed = vars_of(atom.guard)
            for elem in atom.elements:
                needed |= vars_of(elem) & globals_
            if (not lit.negated and atom.rel == "="
                    and isinstance(atom.guard, Variable)):
                needed = needed - {atom.guard.name}
            return needed <= binding.keys()
        raise InternalError(f"unknown atom {atom!r}")

    def _arg_combos(self, args, binding):
        """Cartesian readings of an argument tuple under a binding."""
        combos = [[]]
        for arg in args:
            vals = self._expand(substitute(arg, binding))
            combos = [c + [v] for c in combos for v in vals]
        for combo in combos:
            if any(v is UNDEFINED for v in combo):
                self._note_dropped("binding dropped: undefined arithmetic")
                continue
            yield tuple(combo)

    def _step_positive(self, idx, lit, rest, binding, kept, globals_,
                       delta_idx, delta_args):
        atom = lit.atom
        for pattern in self._arg_combos(atom.args, binding):
            if idx == delta_idx:
                candidates = delta_args
            else:
                candidates = list(self._possible.get(atom.key, ()))
            for args in candidates:
                new = binding
                for pat, val in zip(pattern, args):
                    new = unify(pat, val, new)
                    if new is None:
                        break
                if new is None:
                    continue
                ground = ClassicalAtom(atom.strong_neg, atom.pred, args)
                if self._is_certain(ground):
                    next_kept = kept
                else:
                    next_kept = kept + [(idx, Literal(False, ground))]
                yield from self._solve(rest, new, next_kept, globals_,
                                       delta_idx, delta_args)

    def _step_negative(self, idx, lit, rest, binding, kept, globals_,
                       delta_idx, delta_args):
        atom = lit.atom
        for args in self._arg_combos(atom.args, binding):
            ground = ClassicalAtom(atom.strong_neg, atom.pred, args)
            if self._is_certain(ground):
                continue
            if not self._is_possible(ground) and ground.key not in self._in_progress:
                yield from self._solve(rest, binding, kept, globals_,
                                       delta_idx, delta_args)
            else:
                next_kept = kept + [(idx, Literal(True, ground))]
                yield from self._solve(rest, binding, next_kept, globals_,
                                       delta_idx, delta_args)

    def _step_builtin(self, idx, lit, rest, binding, kept, globals_,
                      delta_idx, delta_args):
        atom = lit.atom
        left = substitute(atom.left, binding)
        right = substitute(atom.right, binding)
        left_open = bool(vars_of(left))
        right_open = bool(vars_of(right))
        if not left_open and not right_open:
            ok = False
            for lv in self._expand(left):
                for rv in self._expand(right):
                    if lv is UNDEFINED or rv is UNDEFINED:
                        self._note_dropped("binding dropped: undefined arithmetic")
                        continue
                    truth = rel_holds(atom.rel, _order_of(lv, rv))
                    if truth != lit.negated:
                        ok = True
            if ok:
                yield from self._solve(rest, binding, kept, globals_,
                                       delta_idx, delta_args)
            return
        # Assignment: exactly one side still has variables.
        pattern, closed = (left, right) if left_open else (right, left)
        for value in self._expand(closed):
            if value is UNDEFINED:
                self._note_dropped("binding dropped: undefined arithmetic")
                continue
            for pat in self._expand(pattern):
                if pat is UNDEFINED:
                    self._note_dropped("binding dropped: undefined arithmetic")
                    continue
                new = unify(pat, value, binding)
                if new is not None:
                    yield from self._solve(rest, new, kept, globals_,
                                           delta_idx, delta_args)

    def _step_external(self, idx, lit, rest, binding, kept, globals_,
                       delta_idx, delta_args):
        atom = lit.atom
        outputs = [substitute(t, binding) for t in atom.outputs]
        for inputs in self._arg_combos(atom.inputs, binding):
            result = extfuncs.call(atom.name, inputs)
            if result is None:
                self._note_dropped(
                    f"binding dropped: &{atom.name} undefined on "
                    f"{tuple(inputs)!r}")
                continue
            if lit.negated:
                if tuple(result) != tuple(outputs):
                    yield from self._solve(rest, binding, kept, globals_,
                                           delta_idx, delta_args)
                continue
            new = binding
            for out_term, out_val in zip(outputs, result):
                new = unify(out_term, out_val, new)
                if new is None:
                    break
            if new is not None:
                yield from self._solve(rest, new, kept, globals_,
                                       delta_idx, delta_args)

    def _step_aggregate(self, idx, lit, rest, binding, kept, globals_,
                        delta_idx, delta_args):
        atom: AggregateAtom = substitute(lit.atom, binding)
        elements = self._instantiate_elements(atom.elements)
        if all(not e.condition for e in elements):
            value = aggregate_value(atom.fn, {e.terms for e in elements})
            if (not lit.negated and atom.rel == "="
                    and isinstance(atom.guard, Variable)):
                if value is NEG_INF or value is POS_INF:
                    return  # no term equals an extreme
                new = dict(binding)
                new[atom.guard.name] = value
                yield from self._solve(rest, new, kept, globals_,
                                       delta_idx, delta_args)
                return
            ok = False
            for gv in self._expand(atom.guard):
                if gv is UNDEFINED:
                    self._note_dropped("binding dropped: undefined arithmetic")
                    continue
                truth = rel_holds(atom.rel, compare_with_extremes(value, gv))
                if truth != lit.negated:
                    ok = True
            if ok:
                yield from self._solve(rest, binding, kept, globals_,
                                       delta_idx, delta_args)
            return
        if vars_of(atom.guard):
            raise GroundingError(
                "aggregate assignment needs fully derived elements; guard "
                f"variable cannot be bound here", self._span)
        for gv in self._expand(atom.guard):
            if gv is UNDEFINED:
                self._note_dropped("binding dropped: undefined arithmetic")
                continue
            ground = AggregateAtom(atom.fn, tuple(elements), atom.rel, gv)
            next_kept = kept + [(idx, Literal(lit.negated, ground))]
            yield from self._solve(rest, binding, next_kept, globals_,
                                   delta_idx, delta_args)

    def _instantiate_elements(self, elements) -> list:
        out: dict = {}
        for elem in elements:
            items = list(enumerate(elem.condition))
            for lbind, lkept in self._solve(items, {}, [], set(), None, None):
                conds = tuple(l for _, l in sorted(lkept, key=lambda e: e[0]))
                combos = [[]]
                dead = False
                for term in elem.terms:
                    vals = self._expand(substitute(term, lbind))
                    combos = [c + [v] for c in combos for v in vals]
                    if not combos:
                        dead = True
                        break
                if dead:
                    continue
                for combo in combos:
                    if any(v is UNDEFINED for v in combo):
                        self._note_dropped(
                            "element instance dropped: undefined arithmetic")
                        continue
                    out[(tuple(combo), conds)] = None
        return [AggregateElement(t, c) for (t, c) in out]

    # ------------------------------------------------------------------
    # instance registration

    def _register_rule(self, rule: Rule, binding: dict, body: tuple):
        head_combos = [[]]
        for head in rule.head:
            options = [ClassicalAtom(head.strong_neg, head.pred, args)
                       for args in self._arg_combos(head.args, binding)]
            head_combos = [hc + [opt] for hc in head_combos for opt in options]
        for heads in head_combos:
            heads = tuple(dict.fromkeys(heads))
            if any(self._is_certain(h) for h in heads):
                continue
            self._add_instance(heads, body)

    def _add_instance(self, heads: tuple, body: tuple):
        key = (heads, body)
        if key in self._instances:
            return
        self._instances[key] = None
        for atom in heads:
            poss = self._poss(atom.key)
            if atom.args not in poss:
                poss[atom.args] = None
                self._delta_events.append((atom.key, atom.args))
        if len(heads) == 1 and not body:
            atom = heads[0]
            cert = self._cert(atom.key)
            if atom.args not in cert:
                cert.add(atom.args)
                self._delta_events.append((atom.key, atom.args))

    def _register_weak(self, weak: WeakConstraint, binding: dict, body: tuple):
        for wv in self._expand(substitute(weak.weight, binding)):
            if wv is UNDEFINED:
                self._note_dropped("binding dropped: undefined arithmetic")
                continue
            for lv in self._expand(substitute(weak.level, binding)):
                if lv is UNDEFINED:
                    self._note_dropped("binding dropped: undefined arithmetic")
                    continue
                for terms in self._arg_combos(weak.terms, binding):
                    self._weak_instances[(body, wv, lv, terms)] = None

    # ------------------------------------------------------------------
    # final simplification

    def _simplify_to_fixpoint(self):
        rules = list(self._instances)
        while True:
            changed = False
            out: dict = {}
            for heads, body in rules:
                simplified = self._simplify_instance(heads, body)
                if simplified is None:
                    continue
                heads2, body2 = simplified
                if len(heads2) == 1 and not body2:
                    atom = heads2[0]
                    cert = self._cert(atom.key)
                    if atom.args not in cert:
                        cert.add(atom.args)
                        changed = True
                out.setdefault(simplified, None)
            rules = list(out)
            if not changed:
                self._final_rules = rules
                break
        weaks: dict = {}
        for (body, weight, level, terms) in self._weak_instances:
            body2 = self._simplify_body(body)
            if body2 is not None:
                weaks.setdefault((body2, weight, level, terms), None)
        self._final_weaks = list(weaks)

    def _simplify_instance(self, heads, body):
        body2 = self._simplify_body(body)
        if body2 is None:
            return None
        if any(self._is_certain(h) for h in heads):
            if not (len(heads) == 1 and not body2):
                return None
        return heads, body2

    def _simplify_body(self, body) -> Optional[tuple]:
        out = []
        for lit in body:
            atom = lit.atom
            if isinstance(atom, ClassicalAtom):
                if lit.negated:
                    if self._is_certain(atom):
                        return None
                    if not self._is_possible(atom):
                        continue
                else:
                    if self._is_certain(atom):
                        continue
                out.append(lit)
            elif isinstance(atom, AggregateAtom):
                simplified = self._simplify_aggregate(lit)
                if simplified is True:
                    continue
                if simplified is False:
                    return None
                out.append(simplified)
            else:
                raise InternalError(f"unexpected ground literal {lit!r}")
        return tuple(out)

    def _simplify_aggregate(self, lit: Literal):
        atom = lit.atom
        elems: dict = {}
        for elem in atom.elements:
            conds = []
            dead = False
            for cond in elem.condition:
                catom = cond.atom
                if cond.negated:
                    if self._is_certain(catom):
                        dead = True
                        break
                    if not self._is_possible(catom):
                        continue
                else:
                    if self._is_certain(catom):
                        continue
                    if not self._is_possible(catom):
                        dead = True
                        break
                conds.append(cond)
            if dead:
                continue
            elems.setdefault((elem.terms, tuple(conds)), None)
        if all(not conds for _, conds in elems):
            value = aggregate_value(atom.fn, {terms for terms, _ in elems})
            truth = rel_holds(atom.rel, compare_with_extremes(value, atom.guard))
            return truth != lit.negated
        elements = tuple(AggregateElement(t, c) for t, c in elems)
        return Literal(lit.negated, AggregateAtom(atom.fn, elements, atom.rel,
                                                  atom.guard))

    # ------------------------------------------------------------------
    # output assembly

    def _finalize(self) -> GroundProgram:
        table = AtomTable(self.first_id)
        rules = []
        facts = set()
        for heads, body in self._final_rules:
            for atom in heads:
                table.intern(atom)
            _intern_body(table, body)
            rules.append(Rule(heads, body))
            if len(heads) == 1 and not body:
                facts.add(table.intern(heads[0]))
        weaks = []
        for body, weight, level, terms in self._final_weaks:
            _intern_body(table, body)
            weaks.append(WeakConstraint(body, weight, level, terms))
        return GroundProgram(rules, weaks, table, frozenset(facts))


def _intern_body(table: AtomTable, body):
    for lit in body:
        atom = lit.atom
        if isinstance(atom, ClassicalAtom):
            table.intern(atom)
        elif isinstance(atom, AggregateAtom):
            for elem in atom.elements:
                for cond in elem.condition:
                    table.intern(cond.atom)


def _classical_atoms_of(stmt) -> Iterator[ClassicalAtom]:
    if isinstance(stmt, Rule):
        yield from stmt.head
    for lit in stmt.body:
        atom = lit.atom
        if isinstance(atom, ClassicalAtom):
            yield atom
        elif isinstance(atom, AggregateAtom):
            for elem in atom.elements:
                for cond in elem.condition:
                    if isinstance(cond.atom, ClassicalAtom):
                        yield cond.atom


def _arith_vars(term) -> set:
    _, arith = pattern_and_arith_vars(term)
    return arith


def _order_of(left, right) -> int:
    return term_order(left, right)


def standardize_program(program: Program) -> Program:
    return Program([standardize(r) for r in program.rules],
                   [standardize(w) for w in program.weaks])


def _tarjan_scc(nodes: list, edges: dict):
    """Iterative Tarjan; components come out in reverse topological order."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    components: list = []
    counter = [0]

    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(edges.get(root, ())))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = low[succ] = counter[0]
                    counter[0] += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(edges.get(succ, ()))))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp.append(member)
                    if member == node:
                        break
                components.append(comp)
    comp_of = {}
    for i, comp in enumerate(components):
        for key in comp:
            comp_of[key] = i
    return comp_of, components


def ground(program: Program, *, integer_division: bool = False,
           warn: Optional[Callable] = None, first_id: int = 2) -> GroundProgram:
    """Instantiate a parsed program; see the module docstring for semantics."""
    return Grounder(program, integer_division=integer_division, warn=warn,
                    first_id=first_id).run()
