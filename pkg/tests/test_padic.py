import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_ducci import INF, format_rational, is_p_integer, is_prime, padic_abs, parse_rational, vp

PRIMES = st.sampled_from([2, 3, 5, 7, 11])


def test_valuation_examples():
    assert vp(Fraction(8), 2) == 3
    assert vp(Fraction(3, 4), 2) == -2
    assert vp(Fraction(0), 5) == INF


def test_abs_examples():
    assert padic_abs(Fraction(8), 2) == Fraction(1, 8)
    assert padic_abs(Fraction(1, 2), 2) == 2
    assert padic_abs(Fraction(0), 3) == 0


def test_p_integer_examples():
    assert is_p_integer(Fraction(7), 5)
    assert not is_p_integer(Fraction(1, 5), 5)
    assert is_p_integer(Fraction(10, 3), 5)


def test_primality():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@given(st.fractions(), st.fractions(), PRIMES)
def test_abs_multiplicative(x, y, p):
    assert padic_abs(x * y, p) == padic_abs(x, p) * padic_abs(y, p)


@given(st.fractions(), st.fractions(), PRIMES)
def test_valuation_additive(x, y, p):
    if x != 0 and y != 0:
        assert vp(x * y, p) == vp(x, p) + vp(y, p)


def test_ultrametric_bulk():
    # >= 10^4 random pairs across several primes, with the equality case
    # checked whenever the two absolute values differ.
    rng = random.Random(20240521)
    for _ in range(3500):
        for p in (2, 3, 7):
            x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
            y = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
            ax, ay, axy = padic_abs(x, p), padic_abs(y, p), padic_abs(x + y, p)
            assert axy <= max(ax, ay)
            if ax != ay:
                assert axy == max(ax, ay)


@given(st.fractions(), PRIMES)
def test_abs_range_law(x, p):
    a = padic_abs(x, p)
    if x == 0:
        assert a == 0
        return
    # exactly a power of p: stripping all p's from |x|_p leaves 1
    v = vp(a, p)
    assert a == Fraction(p) ** v
    if 0 < a < 1:
        assert v <= -1
    assert (a == 1) == (vp(x, p) == 0)


@given(st.fractions(), PRIMES)
def test_double_abs_negates_valuation(x, p):
    if x != 0:
        assert vp(padic_abs(x, p), p) == -vp(x, p)
        assert padic_abs(padic_abs(x, p), p) == Fraction(p) ** vp(x, p)


@pytest.mark.parametrize(
    "text,value",
    [("3/4", Fraction(3, 4)), ("-7", Fraction(-7)), ("0", Fraction(0)), ("+2/6", Fraction(1, 3))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "1.5", "1e3", "a/b", "", "1/2/3", "--2"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(st.fractions())
@settings(max_examples=200)
def test_rational_round_trip(x):
    assert parse_rational(format_rational(x)) == x
