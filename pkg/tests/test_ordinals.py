import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nsgraph.ordinals import (MAX_COEFF, OMEGA, ZERO, Ordinal, OrdinalOverflow, Ordering, compare,
                              format_ordinal, natural_sum, parse_ordinal, scale)

coeff = st.integers(min_value=0, max_value=10**6)
ordinals = st.builds(Ordinal, coeff, coeff)


def w(t1, t0=0):
    return Ordinal(t1, t0)


def test_natural_sum_is_componentwise():
    assert natural_sum(w(1, 2), w(2, 3)) == w(3, 5)


def test_two_one_ended_walks_make_an_endless_one():
    assert natural_sum(OMEGA, OMEGA) == w(2)


def test_compare_examples():
    assert compare(w(1, 100), w(2, 0)) is Ordering.LESS
    assert compare(w(0, 5), w(0, 5)) is Ordering.EQUAL
    assert compare(w(6), w(4)) is Ordering.GREATER


def test_scale_examples():
    assert scale(w(2), 3) == w(6)
    assert scale(w(1, 1), 2) == w(2, 2)
    assert scale(w(3, 4), 0) == ZERO


def test_zero_iff_both_coefficients_vanish():
    assert Ordinal() == ZERO
    assert w(0, 1) != ZERO and w(1, 0) != ZERO


def test_sum_laws_exhaustive_small():
    vals = [w(a, b) for a in range(9) for b in range(9)]
    for x, y in itertools.product(vals[::5], vals[::3]):
        assert x + y == y + x
        assert x + ZERO == x
        for z in vals[::17]:
            assert (x + y) + z == x + (y + z)


@given(ordinals, ordinals)
def test_sum_commutes(a, b):
    assert natural_sum(a, b) == natural_sum(b, a)


@given(ordinals, ordinals, ordinals)
def test_sum_associates(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(ordinals, ordinals, ordinals)
def test_order_is_lexicographic_and_total(a, b, c):
    assert (a < b) == ((a.tau1, a.tau0) < (b.tau1, b.tau0))
    assert sum([a < b, a == b, a > b]) == 1
    if a <= b and b <= c:
        assert a <= c


@given(ordinals, ordinals, ordinals)
def test_sum_is_monotone(a, b, c):
    if a <= b:
        assert a + c <= b + c


@given(ordinals, st.integers(min_value=0, max_value=50))
def test_scale_is_repeated_sum(a, k):
    total = ZERO
    for _ in range(k):
        total = total + a
    assert scale(a, k) == total


def test_overflow_is_reported():
    big = w(MAX_COEFF, 0)
    with pytest.raises(OrdinalOverflow):
        natural_sum(big, OMEGA)
    with pytest.raises(OrdinalOverflow):
        scale(w(0, MAX_COEFF), 2)
    with pytest.raises(ValueError):
        Ordinal(-1, 0)


@pytest.mark.parametrize("value,text", [(w(2, 5), "w*2+5"), (w(0, 7), "7"), (w(1), "w*1"), (ZERO, "0")])
def test_format(value, text):
    assert format_ordinal(value) == text
    assert parse_ordinal(text) == value


@given(ordinals)
def test_text_round_trip(a):
    assert parse_ordinal(format_ordinal(a)) == a


@pytest.mark.parametrize("bad", ["w^2", "w*-1", "omega", "", "2+w"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_ordinal(bad)
