from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from holocollapse.scalar import GaussianRational, format_scalar, gr, parse_scalar

rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
scalars = st.builds(GaussianRational, rationals, rationals)


@given(scalars, scalars, scalars)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a


@given(scalars)
def test_exact_inverse(a):
    if a:
        assert a * a.inverse() == 1
        assert a / a == 1
    else:
        with pytest.raises(ZeroDivisionError):
            a.inverse()


@given(scalars)
def test_format_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


@given(scalars)
def test_hash_matches_equality(a):
    b = GaussianRational(a.re, a.im)
    assert a == b and hash(a) == hash(b)


@pytest.mark.parametrize("text,expected", [
    ("3", gr(3)),
    ("-1/2", gr(Fraction(-1, 2))),
    ("i", gr(0, 1)),
    ("-2 i", gr(0, -2)),
    ("1/2+3/4 i", gr(Fraction(1, 2), Fraction(3, 4))),
    ("1-i", gr(1, -1)),
])
def test_parse_examples(text, expected):
    assert parse_scalar(text) == expected


def test_i_squared():
    i = gr(0, 1)
    assert i * i == -1
    assert i ** -1 == -i
    assert (gr(1, 1)) ** 2 == gr(0, 2)


def test_rejects_floats():
    with pytest.raises(TypeError):
        GaussianRational(0.5)


def test_real_parts_are_fractions():
    z = gr(Fraction(2, 6), -3)
    assert z.re == Fraction(1, 3) and z.im == -3
    assert isinstance(z.re, Fraction)
    assert z.conjugate() == gr(Fraction(1, 3), 3)
    assert z.norm() == Fraction(1, 9) + 9
