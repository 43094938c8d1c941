"""Rational-number API: standard-form arithmetic, decimal I/O, lcm scaling.

The arithmetic kernel exists twice: ``_ratcore`` (pure Python) and
``_ratcore_cy`` (Cython, built at install time).  The compiled kernel is
picked when importable; set ``RATGROUND_PURE_PYTHON=1`` to force the pure
fallback.  ``benchmarks/bench_rational.py`` compares the two.
"""

from __future__ import annotations

import os
import re

if os.environ.get("RATGROUND_PURE_PYTHON"):
    from . import _ratcore as _kernel
else:
    try:
        from . import _ratcore_cy as _kernel  # type: ignore[no-redef]
    except ImportError:
        from . import _ratcore as _kernel

Rational = _kernel.Rational
normalize = _kernel.normalize
compare = _kernel.compare
lcm_denominators = _kernel.lcm_denominators
round_half_away = _kernel.round_half_away

#: Importable name of the kernel in use, for diagnostics and benchmarks.
KERNEL_NAME = _kernel.__name__

ZERO = Rational(0)
ONE = Rational(1)

# Decimal literals look like "i.d1...dm" with at least one digit on each
# side; the sign is accepted here so the function is usable on rendered
# values, even though the parser routes negative literals through unary minus.
_DECIMAL = re.compile(r"(-?)(\d+)\.(\d+)\Z")


def from_decimal(text: str, max_digits: int = 6) -> "Rational":
    """Exact value of a decimal literal, rounded to ``max_digits`` places.

    Literals with at most ``max_digits`` decimal digits convert exactly;
    longer ones are rounded to the nearest with ties away from zero (the
    single rounding policy of the package, shared with
    ``to_decimal_string``).
    """
    if max_digits < 0:
        raise ValueError("max_digits must be non-negative")
    m = _DECIMAL.match(text)
    if m is None:
        raise ValueError(f"malformed decimal literal: {text!r}")
    sign, whole, frac = m.groups()
    digits = len(frac)
    num = int(whole + frac)
    if digits > max_digits:
        num = round_half_away(num, 10 ** (digits - max_digits))
        digits = max_digits
    if sign:
        num = -num
    return Rational(num, 10 ** digits)


def to_decimal_string(value: "Rational", digits: int = 6) -> str:
    """Decimal rendering rounded to ``digits`` places, ties away from zero.

    Trailing zeros of the fractional part are stripped; integers render
    bare ("3", not "3.000000").
    """
    if digits < 0:
        raise ValueError("digits must be non-negative")
    scaled = round_half_away(value.num * 10 ** digits, value.den)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10 ** digits)
    frac_text = str(frac).rjust(digits, "0").rstrip("0") if digits else ""
    if not frac_text:
        return f"{sign}{whole}" if whole else "0"
    return f"{sign}{whole}.{frac_text}"


def render(value: "Rational", mode: str = "fraction", digits: int = 6) -> str:
    """Canonical text of a rational: integers bare, otherwise per mode."""
    if value.den == 1:
        return str(value.num)
    if mode == "decimal":
        return to_decimal_string(value, digits)
    return f"{value.num}/{value.den}"
