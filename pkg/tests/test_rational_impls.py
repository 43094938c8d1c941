"""The pure-Python and compiled kernels must agree operation by operation."""

import random

import pytest

from ratground import _ratcore

try:
    from ratground import _ratcore_cy
except ImportError:
    _ratcore_cy = None

needs_compiled = pytest.mark.skipif(_ratcore_cy is None,
                                    reason="compiled kernel not built")


def _pairs(rng, n):
    for _ in range(n):
        a = (rng.randint(-40, 40), rng.randint(1, 40))
        b = (rng.randint(-40, 40), rng.randint(1, 40))
        yield a, b


@needs_compiled
def test_kernels_agree_on_arithmetic():
    rng = random.Random(3)
    for (an, ad), (bn, bd) in _pairs(rng, 500):
        py_a, py_b = _ratcore.Rational(an, ad), _ratcore.Rational(bn, bd)
        cy_a, cy_b = _ratcore_cy.Rational(an, ad), _ratcore_cy.Rational(bn, bd)
        assert (py_a.num, py_a.den) == (cy_a.num, cy_a.den)
        for op in ("add", "sub", "mul"):
            p = getattr(py_a, op)(py_b)
            c = getattr(cy_a, op)(cy_b)
            assert (p.num, p.den) == (c.num, c.den)
        if bn != 0:
            p, c = py_a.div(py_b), cy_a.div(cy_b)
            assert (p.num, p.den) == (c.num, c.den)
        assert py_a.compare(py_b) == cy_a.compare(cy_b)
        assert str(py_a) == str(cy_a)


@needs_compiled
def test_kernels_agree_on_errors():
    with pytest.raises(Exception) as py_exc:
        _ratcore.Rational(1, 0)
    with pytest.raises(Exception) as cy_exc:
        _ratcore_cy.Rational(1, 0)
    assert type(py_exc.value) is type(cy_exc.value)
    with pytest.raises(Exception) as py_div:
        _ratcore.Rational(1, 2).div(_ratcore.Rational(0))
    with pytest.raises(Exception) as cy_div:
        _ratcore_cy.Rational(1, 2).div(_ratcore_cy.Rational(0))
    assert type(py_div.value) is type(cy_div.value)


@needs_compiled
def test_kernels_agree_on_rounding_helpers():
    rng = random.Random(5)
    for _ in range(500):
        num = rng.randint(-10 ** 6, 10 ** 6)
        den = rng.randint(1, 10 ** 4)
        assert (_ratcore.round_half_away(num, den)
                == _ratcore_cy.round_half_away(num, den))
    values_py = [_ratcore.Rational(1, 6), _ratcore.Rational(5, 4)]
    values_cy = [_ratcore_cy.Rational(1, 6), _ratcore_cy.Rational(5, 4)]
    assert (_ratcore.lcm_denominators(values_py)
            == _ratcore_cy.lcm_denominators(values_cy))
