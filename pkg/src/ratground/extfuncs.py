"""Mathematical functions available through ``&name(inputs; outputs)`` literals.

All functions are pure and total over rational inputs; anything outside
their domain (non-rational arguments, fractional exponents, 0 to a negative
power) yields "undefined", which makes the grounder drop the candidate
binding instead of raising.
"""

from __future__ import annotations

from typing import Callable, NamedTuple, Optional

from .rational import Rational, round_half_away


class ExternalFunction(NamedTuple):
    in_arity: int
    out_arity: int
    fn: Callable


def _truncate(x: Rational) -> Rational:
    # Integer part toward zero.
    if x.num < 0:
        return Rational(-(-x.num // x.den))
    return Rational(x.num // x.den)


def _round(x: Rational) -> Rational:
    return Rational(round_half_away(x.num, x.den))


def _ceil(x: Rational) -> Rational:
    return Rational(-(-x.num // x.den))


def _floor(x: Rational) -> Rational:
    return Rational(x.num // x.den)


def _abs(x: Rational) -> Rational:
    return abs(x)


def _pow(x: Rational, e: Rational) -> Optional[Rational]:
    # Integer exponents only: rational bases under fractional exponents
    # would leave the rationals.  0**0 is 1 by convention.
    if e.den != 1:
        return None
    n = e.num
    if n >= 0:
        return Rational(x.num ** n, x.den ** n)
    if x.num == 0:
        return None
    return Rational(x.den ** -n, x.num ** -n)


def _lift(fn: Callable) -> Callable:
    def call(*args):
        if not all(isinstance(a, Rational) for a in args):
            return None
        out = fn(*args)
        return None if out is None else (out,)
    return call


REGISTRY: dict[str, ExternalFunction] = {
    "truncate": ExternalFunction(1, 1, _lift(_truncate)),
    "round": ExternalFunction(1, 1, _lift(_round)),
    "ceil": ExternalFunction(1, 1, _lift(_ceil)),
    "floor": ExternalFunction(1, 1, _lift(_floor)),
    "pow": ExternalFunction(2, 1, _lift(_pow)),
    "abs": ExternalFunction(1, 1, _lift(_abs)),
}


def call(name: str, inputs: tuple) -> Optional[tuple]:
    """Evaluate a registered function; None means undefined."""
    return REGISTRY[name].fn(*inputs)
