"""Lexer, recursive-descent parser and safety check for input programs.

Input syntax in short: rules ``h1 | h2 :- b1, ..., bn.``, strong
constraints ``:- body.``, weak constraints ``:~ body. [w@l, t1, ..., tn]``,
aggregate atoms ``#sum{t1,t2 : cond; ...} >= g`` (the guard may be written
on either side), external function literals ``&name(inputs; outputs)``,
``%`` line comments.  Numeric literals are integers, decimals (converted to
exact rationals immediately, honoring the configured digit limit) and
``p/q`` fractions, the latter being ordinary division terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import extfuncs
from .errors import ExternalCallError, ParseError, Span
from .rational import Rational, from_decimal
from .syntax import (AGGREGATE_FNS, MIRROR_REL, REL_OPS, AggregateAtom,
                     AggregateElement, AnonymousVariable, ArithTerm,
                     BuiltinAtom, ClassicalAtom, ExternalAtom, Functional,
                     Literal, Program, Rule, StringConst, SymbolicConst,
                     Variable, WeakConstraint, map_terms,
                     pattern_and_arith_vars, vars_of)

_PUNCT2 = (":-", ":~", "..", "<=", ">=", "!=")
_PUNCT1 = set("()[]{},;:.|+-*/\\=<>@&")


@dataclass(frozen=True)
class Token:
    kind: str   # IDENT VAR ANON INT DEC STRING AGGR EOF or the punctuation itself
    text: str
    line: int
    col: int


class Lexer:
    def __init__(self, text: str, source: str = "<string>"):
        self.text = text
        self.source = source
        self.pos = 0
        self.line = 1
        self.col = 1

    def span(self) -> Span:
        return Span(self.source, self.line, self.col)

    def _advance(self, n: int = 1):
        for _ in range(n):
            if self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def tokens(self) -> list[Token]:
        out = []
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch in " \t\r\n":
                self._advance()
                continue
            if ch == "%":
                while self.pos < len(text) and text[self.pos] != "\n":
                    self._advance()
                continue
            line, col = self.line, self.col
            if ch.isdigit():
                out.append(self._number(line, col))
                continue
            if ch == '"':
                out.append(self._string(line, col))
                continue
            if ch.isalpha() or ch == "_":
                out.append(self._word(line, col))
                continue
            if ch == "#":
                out.append(self._aggregate(line, col))
                continue
            two = text[self.pos:self.pos + 2]
            if two in _PUNCT2 or two == ":∼":  # accept the tilde variant too
                self._advance(2)
                out.append(Token(":~" if two == ":∼" else two, two, line, col))
                continue
            if ch in _PUNCT1:
                self._advance()
                out.append(Token(ch, ch, line, col))
                continue
            raise ParseError(f"illegal character {ch!r}", Span(self.source, line, col))
        out.append(Token("EOF", "", self.line, self.col))
        return out

    def _number(self, line, col) -> Token:
        text = self.text
        start = self.pos
        while self.pos < len(text) and text[self.pos].isdigit():
            self._advance()
        if (self.pos + 1 < len(text) and text[self.pos] == "."
                and text[self.pos + 1].isdigit()):
            self._advance()
            while self.pos < len(text) and text[self.pos].isdigit():
                self._advance()
            return Token("DEC", text[start:self.pos], line, col)
        return Token("INT", text[start:self.pos], line, col)

    def _string(self, line, col) -> Token:
        text = self.text
        self._advance()  # opening quote
        start = self.pos
        while self.pos < len(text):
            ch = text[self.pos]
            if ch == "\\" and self.pos + 1 < len(text) and text[self.pos + 1] == '"':
                self._advance(2)
                continue
            if ch == '"':
                value = text[start:self.pos]
                self._advance()
                return Token("STRING", value, line, col)
            if ch == "\n":
                break
            self._advance()
        raise ParseError("unterminated string constant", Span(self.source, line, col))

    def _word(self, line, col) -> Token:
        text = self.text
        start = self.pos
        while self.pos < len(text) and (text[self.pos].isalnum() or text[self.pos] == "_"):
            self._advance()
        word = text[start:self.pos]
        if word == "_":
            return Token("ANON", word, line, col)
        if word[0].isupper() or word[0] == "_":
            return Token("VAR", word, line, col)
        return Token("IDENT", word, line, col)

    def _aggregate(self, line, col) -> Token:
        text = self.text
        self._advance()  # '#'
        start = self.pos
        while self.pos < len(text) and (text[self.pos].isalnum() or text[self.pos] == "_"):
            self._advance()
        name = text[start:self.pos]
        if name not in AGGREGATE_FNS:
            raise ParseError(f"unknown aggregate #{name}", Span(self.source, line, col))
        return Token("AGGR", name, line, col)


class Parser:
    """Parses statements into the object model; reusable across input files."""

    def __init__(self, decimal_digits: int = 6):
        self.decimal_digits = decimal_digits
        self._fresh_counter = 0
        self._tokens: list[Token] = []
        self._i = 0
        self._source = "<string>"

    # -- token plumbing

    def _peek(self, ahead: int = 0) -> Token:
        return self._tokens[min(self._i + ahead, len(self._tokens) - 1)]

    def _next(self) -> Token:
        tok = self._tokens[self._i]
        if tok.kind != "EOF":
            self._i += 1
        return tok

    def _expect(self, kind: str) -> Token:
        tok = self._peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text!r}", self._span(tok))
        return self._next()

    def _span(self, tok: Token) -> Span:
        return Span(self._source, tok.line, tok.col)

    # -- entry points

    def parse_into(self, program: Program, text: str, source: str = "<string>"):
        self._tokens = Lexer(text, source).tokens()
        self._i = 0
        self._source = source
        while self._peek().kind != "EOF":
            stmt = self._statement()
            if isinstance(stmt, WeakConstraint):
                program.weaks.append(stmt)
            else:
                program.rules.append(stmt)
        return program

    # -- statements

    def _statement(self):
        first = self._peek()
        span = self._span(first)
        if first.kind == ":~":
            self._next()
            body = self._body_until(".")
            self._expect(".")
            weight, level, terms = self._weak_spec()
            stmt = WeakConstraint(tuple(body), weight, level, tuple(terms), span)
        else:
            head = []
            if first.kind not in (":-", "."):
                head.append(self._classical_atom())
                while self._peek().kind == "|":
                    self._next()
                    head.append(self._classical_atom())
            body = []
            if self._peek().kind == ":-":
                self._next()
                body = self._body_until(".")
            self._expect(".")
            stmt = Rule(tuple(head), tuple(body), span)
        return self._freshen(stmt)

    def _body_until(self, stop: str) -> list:
        body = []
        if self._peek().kind == stop:
            return body
        body.append(self._literal())
        while self._peek().kind == ",":
            self._next()
            body.append(self._literal())
        return body

    def _weak_spec(self):
        self._expect("[")
        weight = self._term()
        level = Rational(0)
        if self._peek().kind == "@":
            self._next()
            level = self._term()
        terms = []
        while self._peek().kind == ",":
            self._next()
            terms.append(self._term())
        self._expect("]")
        return weight, level, terms

    def _freshen(self, stmt):
        """Replace each ``_`` occurrence with a fresh variable name."""
        used = vars_of(stmt)

        def repl(t):
            if isinstance(t, AnonymousVariable):
                while True:
                    self._fresh_counter += 1
                    name = f"_V{self._fresh_counter}"
                    if name not in used:
                        return Variable(name)
            return t

        return map_terms(stmt, repl)

    # -- literals and atoms

    def _literal(self) -> Literal:
        negated = False
        tok = self._peek()
        if tok.kind == "IDENT" and tok.text == "not":
            negated = True
            self._next()
        return Literal(negated, self._atom())

    def _atom(self):
        tok = self._peek()
        if tok.kind == "&":
            return self._external_atom()
        if tok.kind == "AGGR":
            return self._aggregate_atom(None, None)
        if tok.kind == "-" and self._peek(1).kind == "IDENT":
            self._next()
            atom = self._classical_atom(strong_neg=True)
            if self._peek().kind in REL_OPS:
                raise ParseError("strong-negated atom cannot appear in a comparison",
                                 self._span(self._peek()))
            return atom
        left = self._term()
        if self._peek().kind in REL_OPS:
            rel = self._next().kind
            if self._peek().kind == "AGGR":
                return self._aggregate_atom(left, rel)
            right = self._term()
            if self._peek().kind in REL_OPS:
                raise ParseError("chained comparisons are not supported",
                                 self._span(self._peek()))
            return BuiltinAtom(rel, left, right)
        return self._term_as_atom(left, tok)

    def _term_as_atom(self, term, tok: Token) -> ClassicalAtom:
        if isinstance(term, SymbolicConst):
            return ClassicalAtom(False, term.name)
        if isinstance(term, Functional):
            return ClassicalAtom(False, term.functor, term.args)
        raise ParseError("expected an atom", self._span(tok))

    def _classical_atom(self, strong_neg: bool = False) -> ClassicalAtom:
        if not strong_neg and self._peek().kind == "-":
            self._next()
            strong_neg = True
        name = self._expect("IDENT")
        args: tuple = ()
        if self._peek().kind == "(":
            self._next()
            arglist = [self._term()]
            while self._peek().kind == ",":
                self._next()
                arglist.append(self._term())
            self._expect(")")
            args = tuple(arglist)
        return ClassicalAtom(strong_neg, name.text, args)

    def _external_atom(self) -> ExternalAtom:
        amp = self._expect("&")
        name = self._expect("IDENT")
        span = self._span(amp)
        self._expect("(")
        inputs = []
        if self._peek().kind != ";":
            inputs.append(self._term())
            while self._peek().kind == ",":
                self._next()
                inputs.append(self._term())
        self._expect(";")
        outputs = []
        if self._peek().kind != ")":
            outputs.append(self._term())
            while self._peek().kind == ",":
                self._next()
                outputs.append(self._term())
        self._expect(")")
        entry = extfuncs.REGISTRY.get(name.text)
        if entry is None:
            raise ExternalCallError(f"unknown external function &{name.text}", span)
        if len(inputs) != entry.in_arity or len(outputs) != entry.out_arity:
            raise ExternalCallError(
                f"&{name.text} expects {entry.in_arity} input(s) and "
                f"{entry.out_arity} output(s)", span)
        for t in outputs:
            if not isinstance(t, (Variable, AnonymousVariable)):
                raise ExternalCallError(
                    f"output terms of &{name.text} must be variables", span)
        return ExternalAtom(name.text, tuple(inputs), tuple(outputs))

    def _aggregate_atom(self, left_guard, left_rel) -> AggregateAtom:
        fn = self._expect("AGGR")
        self._expect("{")
        elements = []
        if self._peek().kind != "}":
            elements.append(self._aggregate_element())
            while self._peek().kind == ";":
                self._next()
                elements.append(self._aggregate_element())
        self._expect("}")
        if self._peek().kind in REL_OPS:
            if left_guard is not None:
                raise ParseError("aggregate atoms take a single guard",
                                 self._span(self._peek()))
            rel = self._next().kind
            guard = self._term()
            return AggregateAtom(fn.text, tuple(elements), rel, guard)
        if left_guard is None:
            raise ParseError("aggregate atom needs a guard",
                             self._span(self._peek()))
        return AggregateAtom(fn.text, tuple(elements), MIRROR_REL[left_rel], left_guard)

    def _aggregate_element(self) -> AggregateElement:
        terms = []
        if self._peek().kind not in (":", ";", "}"):
            terms.append(self._term())
            while self._peek().kind == ",":
                self._next()
                terms.append(self._term())
        condition = []
        if self._peek().kind == ":":
            self._next()
            if self._peek().kind not in (";", "}"):
                condition.append(self._condition_literal())
                while self._peek().kind == ",":
                    self._next()
                    condition.append(self._condition_literal())
        return AggregateElement(tuple(terms), tuple(condition))

    def _condition_literal(self) -> Literal:
        lit = self._literal()
        if isinstance(lit.atom, (AggregateAtom, ExternalAtom)):
            raise ParseError("aggregate conditions must be classical or builtin literals",
                             self._span(self._peek()))
        return lit

    # -- terms, with precedence: unary minus > (* / \) > (+ -) > '..'

    def _term(self):
        left = self._add_term()
        while self._peek().kind == "..":
            self._next()
            left = ArithTerm("..", (left, self._add_term()))
        return left

    def _add_term(self):
        left = self._mul_term()
        while self._peek().kind in ("+", "-"):
            op = self._next().kind
            left = ArithTerm(op, (left, self._mul_term()))
        return left

    def _mul_term(self):
        left = self._unary_term()
        while self._peek().kind in ("*", "/", "\\"):
            op = self._next().kind
            left = ArithTerm(op, (left, self._unary_term()))
        return left

    def _unary_term(self):
        if self._peek().kind == "-":
            self._next()
            return ArithTerm("neg", (self._unary_term(),))
        return self._primary_term()

    def _primary_term(self):
        tok = self._next()
        if tok.kind == "INT":
            return Rational(int(tok.text))
        if tok.kind == "DEC":
            return from_decimal(tok.text, self.decimal_digits)
        if tok.kind == "STRING":
            return StringConst(tok.text)
        if tok.kind == "VAR":
            return Variable(tok.text)
        if tok.kind == "ANON":
            return AnonymousVariable()
        if tok.kind == "IDENT":
            if self._peek().kind == "(":
                self._next()
                args = [self._term()]
                while self._peek().kind == ",":
                    self._next()
                    args.append(self._term())
                self._expect(")")
                return Functional(tok.text, tuple(args))
            return SymbolicConst(tok.text)
        if tok.kind == "(":
            inner = self._term()
            self._expect(")")
            return inner
        raise ParseError(f"expected a term, found {tok.text!r}", self._span(tok))


def parse_program(text: str, source: str = "<string>",
                  decimal_digits: int = 6) -> Program:
    program = Program([], [])
    Parser(decimal_digits).parse_into(program, text, source)
    return program


def parse_files(paths, decimal_digits: int = 6) -> Program:
    """Concatenate several input files into one program, in order."""
    program = Program([], [])
    parser = Parser(decimal_digits)
    for path in paths:
        with open(path, encoding="utf-8") as handle:
            parser.parse_into(program, handle.read(), str(path))
    return program


# ---------------------------------------------------------------------------
# Safety


@dataclass(frozen=True)
class SafetyViolation:
    span: Optional[Span]
    message: str

    def __str__(self):
        return f"{self.span}: {self.message}" if self.span else self.message


def _bindable_closure(literals, seed: set, global_vars: set) -> set:
    """Variables reachable from ``seed`` through the body's binding constructs.

    Positive classical literals bind their matchable argument variables;
    ``=`` builtins bind one side once the other side is closed; positive
    externals bind outputs once inputs are closed; a positive ``=``
    aggregate with a variable guard binds it once the element globals are
    closed.  Iterated to fixpoint.
    """
    bound = set(seed)
    while True:
        grew = False
        for lit in literals:
            atom = lit.atom
            if isinstance(atom, ClassicalAtom) and not lit.negated:
                pattern = set()
                arith = set()
                for arg in atom.args:
                    p, a = pattern_and_arith_vars(arg)
                    pattern |= p
                    arith |= a
                if arith <= bound and not pattern <= bound:
                    bound |= pattern
                    grew = True
            elif isinstance(atom, BuiltinAtom) and not lit.negated and atom.rel == "=":
                for pat_side, closed_side in ((atom.left, atom.right),
                                              (atom.right, atom.left)):
                    if vars_of(closed_side) <= bound:
                        pattern, arith = pattern_and_arith_vars(pat_side)
                        if arith <= bound and not pattern <= bound:
                            bound |= pattern
                            grew = True
            elif isinstance(atom, ExternalAtom) and not lit.negated:
                ins = set()
                for t in atom.inputs:
                    ins |= vars_of(t)
                if ins <= bound:
                    outs = {t.name for t in atom.outputs if isinstance(t, Variable)}
                    if not outs <= bound:
                        bound |= outs
                        grew = True
            elif (isinstance(atom, AggregateAtom) and not lit.negated
                  and atom.rel == "=" and isinstance(atom.guard, Variable)):
                # Globals occurring inside the elements; locals are bound there.
                elem_globals = set()
                for elem in atom.elements:
                    elem_globals |= vars_of(elem)
                elem_globals &= global_vars
                if elem_globals <= bound and atom.guard.name not in bound:
                    bound.add(atom.guard.name)
                    grew = True
        if not grew:
            return bound


def check_safety(program: Program) -> list[SafetyViolation]:
    """Every global variable must be bound by the body; locals by their element."""
    from .syntax import classify_variables

    violations = []
    for stmt in program.statements():
        glob, locs = classify_variables(stmt)
        bound = _bindable_closure(stmt.body, set(), glob)
        kind = "weak constraint" if isinstance(stmt, WeakConstraint) else "rule"
        for name in sorted(glob - bound):
            violations.append(SafetyViolation(
                stmt.span, f"unsafe variable {name} in {kind}"))
        for (li, ei), local in sorted(locs.items()):
            if not local:
                continue
            elem = stmt.body[li].atom.elements[ei]
            ebound = _bindable_closure(elem.condition, bound & glob, glob)
            for name in sorted(local - ebound):
                violations.append(SafetyViolation(
                    stmt.span,
                    f"unsafe local variable {name} in aggregate element"))
    return violations
