from fractions import Fraction

import pytest
from hypothesis import given, settings

from defcms.kfield import K, ONE, ZERO, RatK, parse_ratk, ratk_eval, ratk_normalize

from oracles import same, k
from strategies import ratk


def test_normalize_cancels_common_factor():
    assert ratk_normalize([-1, 0, 1], [-1, 1]) == RatK([1, 1])


def test_normalize_zero():
    z = ratk_normalize([], [0, 3])
    assert z == ZERO
    assert z.den == RatK(1).den


def test_normalize_content():
    x = ratk_normalize([0, 2], [4])
    assert x.to_text() == "(k)/(2)"


def test_normalize_denominator_sign():
    x = RatK([1], [0, -1])
    assert x.den.leading_coefficient() > 0
    assert x == -RatK.k_power(-1)


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError, match="division by zero in Q\\(k\\)"):
        RatK(1, 0)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_arithmetic_examples():
    assert (K + 1) * (K - 1) == K * K - 1
    assert ONE / (K + 1) + K / (1 + K) == ONE
    assert K * RatK.k_power(-1) == ONE


def test_eval_examples():
    assert ratk_eval(RatK([-1, 0, 1], [-1, 1]), 3) == 4
    assert ratk_eval(K / 2, Fraction(7, 2)) == Fraction(7, 4)
    with pytest.raises(ZeroDivisionError, match="pole"):
        ratk_eval(ONE / (K + 1), -1)


def test_text_roundtrip():
    for x in [ZERO, ONE, K, (K * K - 3) / (2 * K + 1), RatK(-5, 7), RatK.k_power(-3)]:
        assert parse_ratk(x.to_text()) == x
        assert parse_ratk(str(x)) == x


def test_against_sympy():
    x = (K * K - 1) / (K * K + 2 * K + 1) + RatK.k_power(-1)
    assert same(x, (k - 1) / (k + 1) + 1 / k)


@settings(max_examples=60, deadline=None)
@given(ratk(), ratk(), ratk())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    if a:
        assert a * a.inverse() == ONE


@settings(max_examples=60, deadline=None)
@given(ratk(), ratk())
def test_eval_is_homomorphism(a, b):
    for k0 in (Fraction(3), Fraction(-5, 7)):
        try:
            va, vb = ratk_eval(a, k0), ratk_eval(b, k0)
        except ZeroDivisionError:
            continue
        assert ratk_eval(a * b, k0) == va * vb
        assert ratk_eval(a + b, k0) == va + vb


@settings(max_examples=40, deadline=None)
@given(ratk())
def test_normalization_idempotent(a):
    assert RatK(a.num, a.den) == a
    assert RatK(a.num, a.den).num == a.num
