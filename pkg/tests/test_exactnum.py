"""
Exact arithmetic over Q(i).
"""
import pytest
from hypothesis import given, strategies as st
from numpy.random import default_rng

from app.exceptions import DivisionByZeroError, ParseError
from app.services.exactnum import (
    I_UNIT,
    ONE,
    ZERO,
    conjugate,
    div,
    format_scalar,
    gaussian,
    inv,
    is_real,
    parse_rational,
    parse_scalar,
    random_scalar,
    rational,
    rational_sqrt,
    signed_square_root,
    to_gaussian,
)

rationals = st.builds(rational, st.integers(-60, 60), st.integers(1, 60))
scalars = st.builds(gaussian, rationals, rationals)


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(scalars, scalars)
def test_conjugate_is_a_homomorphism(a, b):
    assert conjugate(a * b) == conjugate(a) * conjugate(b)
    assert conjugate(a + b) == conjugate(a) + conjugate(b)
    assert conjugate(conjugate(a)) == a


@given(scalars)
def test_inverse(a):
    if a:
        assert a * inv(a) == ONE
    else:
        with pytest.raises(DivisionByZeroError):
            inv(a)


@given(scalars)
def test_text_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


def test_field_examples():
    assert rational(1, 2) + rational(1, 3) == rational(5, 6)
    assert inv(I_UNIT) == -I_UNIT
    assert gaussian(1, 1) * gaussian(1, -1) == gaussian(2)
    assert conjugate(gaussian(2, 3)) == gaussian(2, -3)
    assert conjugate(gaussian(5)) == gaussian(5)


def test_lowest_terms():
    q = rational(4, 8)
    assert (int(q.numerator), int(q.denominator)) == (1, 2)
    with pytest.raises(DivisionByZeroError):
        rational(1, 0)
    with pytest.raises(DivisionByZeroError):
        div(ONE, ZERO)


@pytest.mark.parametrize("text,expected", [
    ("3", gaussian(3)),
    ("-1/2", gaussian(rational(-1, 2))),
    ("i", I_UNIT),
    ("-i", -I_UNIT),
    ("3/5*i", gaussian(0, rational(3, 5))),
    ("1/2+3/4*i", gaussian(rational(1, 2), rational(3, 4))),
    ("1-i", gaussian(1, -1)),
])
def test_parse_scalar(text, expected):
    assert parse_scalar(text) == expected


@pytest.mark.parametrize("text", ["", "x", "1/0", "1/2/3"])
def test_parse_scalar_rejects_malformed_text(text):
    with pytest.raises(ParseError):
        parse_scalar(text)


def test_format_scalar():
    assert format_scalar(gaussian(rational(1, 2), rational(-3, 4))) == "1/2-3/4*i"
    assert format_scalar(I_UNIT) == "i"
    assert format_scalar(gaussian(7)) == "7"
    assert to_gaussian("2/4") == gaussian(rational(1, 2))
    assert parse_rational(" -6/4 ") == rational(-3, 2)


def test_random_scalar_contract():
    first = [random_scalar(default_rng(7), 10) for _ in range(3)]
    second = [random_scalar(default_rng(7), 10) for _ in range(3)]
    assert first == second

    rng = default_rng(11)
    for _ in range(200):
        z = random_scalar(rng, 10)
        for part in (z.x, z.y):
            assert abs(int(part.numerator)) <= 10
            assert 1 <= int(part.denominator) <= 10
        assert is_real(random_scalar(rng, 10, real_only=True))


def test_square_roots():
    assert rational_sqrt(rational(9, 4)) == rational(3, 2)
    assert rational_sqrt(rational(2)) is None
    assert signed_square_root(rational(-1, 4)) == gaussian(0, rational(1, 2))
    root = signed_square_root(rational(-9))
    assert root * root == gaussian(-9)
    assert signed_square_root(rational(3)) is None
