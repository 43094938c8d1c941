# cython: language_level=3
"""Compiled kernel for exact rational arithmetic in standard form.

Behavioral twin of ``_ratcore``; numerator and denominator stay Python
integers so there is no magnitude limit, the speedup comes from cdef-class
attribute access and reduced call overhead in the hot grounding loops.
"""

import math

from .errors import UndefinedArithmeticError, ZeroDenominatorError

_gcd = math.gcd
_lcm = math.lcm


cdef class Rational:
    """Arbitrary-precision rational kept in standard form (den > 0, coprime)."""

    cdef readonly object num
    cdef readonly object den

    def __init__(self, num=0, den=1):
        if den == 0:
            raise ZeroDenominatorError(f"{num}/0 has no standard form")
        g = _gcd(num, den)
        if den < 0:
            g = -g
        self.num = num // g
        self.den = den // g

    @staticmethod
    cdef Rational _reduced(object num, object den):
        # num/den must already be in standard form.
        cdef Rational r = Rational.__new__(Rational)
        r.num = num
        r.den = den
        return r

    def add(self, Rational other):
        return Rational(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    def sub(self, Rational other):
        return Rational(self.num * other.den - other.num * self.den,
                        self.den * other.den)

    def mul(self, Rational other):
        return Rational(self.num * other.num, self.den * other.den)

    def div(self, Rational other):
        if other.num == 0:
            raise UndefinedArithmeticError("division by zero")
        return Rational(self.num * other.den, self.den * other.num)

    def neg(self):
        return Rational._reduced(-self.num, self.den)

    def compare(self, Rational other):
        """Cross-multiplication order: -1, 0 or 1."""
        lhs = self.num * other.den
        rhs = other.num * self.den
        return (lhs > rhs) - (lhs < rhs)

    @property
    def is_integer(self):
        return self.den == 1

    def __add__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return Rational.add(self, other)

    def __sub__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return Rational.sub(self, other)

    def __mul__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return Rational.mul(self, other)

    def __truediv__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return Rational.div(self, other)

    def __neg__(self):
        return self.neg()

    def __abs__(self):
        if self.num >= 0:
            return self
        return self.neg()

    def __richcmp__(self, other, int op):
        if not isinstance(other, Rational):
            return NotImplemented
        cdef int c = Rational.compare(self, other)
        if op == 0:   # <
            return c < 0
        if op == 1:   # <=
            return c <= 0
        if op == 2:   # ==
            return c == 0
        if op == 3:   # !=
            return c != 0
        if op == 4:   # >
            return c > 0
        return c >= 0

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return self.num != 0

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"Rational({self.num}, {self.den})"


def normalize(num, den):
    """Standard form of num/den; raises ZeroDenominatorError for den == 0."""
    return Rational(num, den)


def compare(Rational a, Rational b):
    return a.compare(b)


def lcm_denominators(values):
    """Least common multiple of the denominators of a non-empty sequence."""
    dens = [v.den for v in values]
    if not dens:
        raise ValueError("lcm_denominators needs at least one value")
    return _lcm(*dens)


def round_half_away(num, den):
    """Nearest integer to num/den with den > 0; ties round away from zero."""
    if num < 0:
        quot, rem = divmod(-num, den)
        if 2 * rem >= den:
            quot += 1
        return -quot
    quot, rem = divmod(num, den)
    if 2 * rem >= den:
        quot += 1
    return quot
