"""Pure-Python kernel for exact rational arithmetic in standard form.

``ratground.rational`` selects this module or its compiled twin
``_ratcore_cy`` at import time.  The two must stay behaviorally identical;
``tests/test_rational_impls.py`` cross-checks them.
"""

import math

from .errors import UndefinedArithmeticError, ZeroDenominatorError


class Rational:
    """Arbitrary-precision rational kept in standard form.

    Standard form: the denominator is positive and coprime with the
    numerator; zero is 0/1.  Instances are immutable and hashable, and all
    operations return standard-form results exactly (no rounding ever).
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if den == 0:
            raise ZeroDenominatorError(f"{num}/0 has no standard form")
        g = math.gcd(num, den)
        if den < 0:
            g = -g
        self.num = num // g
        self.den = den // g

    # Arithmetic.  Operands must already be in standard form (guaranteed by
    # construction); the constructor reduces each result.

    def add(self, other):
        return Rational(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    def sub(self, other):
        return Rational(self.num * other.den - other.num * self.den,
                        self.den * other.den)

    def mul(self, other):
        return Rational(self.num * other.num, self.den * other.den)

    def div(self, other):
        if other.num == 0:
            raise UndefinedArithmeticError("division by zero")
        return Rational(self.num * other.den, self.den * other.num)

    def neg(self):
        r = object.__new__(Rational)
        r.num = -self.num
        r.den = self.den
        return r

    def compare(self, other):
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
        return self.add(other)

    def __sub__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return self.sub(other)

    def __mul__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return self.mul(other)

    def __truediv__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return self.div(other)

    def __neg__(self):
        return self.neg()

    def __abs__(self):
        return self if self.num >= 0 else self.neg()

    def __eq__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __lt__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return self.compare(other) < 0

    def __le__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return self.compare(other) <= 0

    def __gt__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return self.compare(other) > 0

    def __ge__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return self.compare(other) >= 0

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


def compare(a, b):
    return a.compare(b)


def lcm_denominators(values):
    """Least common multiple of the denominators of a non-empty sequence."""
    dens = [v.den for v in values]
    if not dens:
        raise ValueError("lcm_denominators needs at least one value")
    return math.lcm(*dens)


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
