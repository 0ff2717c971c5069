from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from motivic_satake.laurent import ONE, ZERO, LaurentPoly, interpolate

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)


def test_canonical_support():
    p = LaurentPoly({1: 2, 3: 0})
    assert p.terms == {1: 2}
    assert LaurentPoly({2: 0}) == ZERO
    assert not ZERO


def test_format_and_json():
    p = LaurentPoly({2: 1, 0: -1, -1: 3})
    assert p.format("q") == "q^2 - 1 + 3*q^-1"
    assert LaurentPoly.from_json(p.to_json()) == p


def test_exponent_rescaling():
    p = LaurentPoly({1: 1, 0: 1})
    assert p.scale_exponents(2) == LaurentPoly({2: 1, 0: 1})
    assert p.scale_exponents(2).halve_exponents() == p
    with pytest.raises(ValueError):
        p.halve_exponents()


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys, st.integers(-3, 3), st.integers(2, 5))
def test_evaluate_is_homomorphism(a, k, x):
    b = LaurentPoly.monomial(k, 2)
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)
    assert a.shift(k).evaluate(x) == a.evaluate(x) * Fraction(x) ** k


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_interpolation_recovers_polynomial(coeffs):
    p = LaurentPoly(dict(enumerate(coeffs)))
    pts = [(x, int(p.evaluate(x))) for x in range(2, 2 + len(coeffs) + 1)]
    got = interpolate(pts)
    assert LaurentPoly({k: int(v) for k, v in got.items()}) == p
