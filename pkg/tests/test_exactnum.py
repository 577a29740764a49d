from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quadweb import univariate as uv
from quadweb.exactnum import (QQ, ExtensionField, MixedFieldError, PrimeField, field_from_spec,
                              is_prime, random_prime)

P = 1_000_000_007
Fp = PrimeField(P)
ints = st.integers(min_value=-(10 ** 30), max_value=10 ** 30)


@given(ints, ints, ints)
def test_prime_field_ring_axioms(a, b, c):
    a, b, c = Fp.convert(a), Fp.convert(b), Fp.convert(c)
    assert Fp.norm(a * (b + c)) == Fp.norm(a * b + a * c)
    assert Fp.norm(Fp.norm(a * b) * c) == Fp.norm(a * Fp.norm(b * c))


@given(ints)
def test_prime_field_inverse(a):
    a = Fp.convert(a)
    if a:
        assert Fp.norm(a * Fp.inv(a)) == 1
    else:
        with pytest.raises(ZeroDivisionError):
            Fp.inv(a)


@given(st.fractions(max_denominator=10 ** 6))
def test_rational_reduction_matches_modular_division(q):
    q = Fraction(q)
    assert Fp.convert(q) == Fp.div(Fp.convert(q.numerator), Fp.convert(q.denominator))


def test_to_signed_is_symmetric():
    assert Fp.to_signed(P - 1) == -1
    assert Fp.to_signed(5) == 5


@pytest.mark.parametrize("n,expected", [(2, True), (1, False), (561, False), (P, True), (2 ** 61 - 1, True),
                                        (3215031751, False)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


def test_random_prime_range_and_determinism():
    p = random_prime(20, 0)
    assert 2 ** 19 <= p < 2 ** 20 and is_prime(p)
    assert random_prime(20, 0) == p
    q = random_prime(62, 7)
    assert 2 ** 61 <= q < 2 ** 62 and is_prime(q)
    with pytest.raises(ValueError):
        random_prime(70, 0)


def test_prime_field_rejects_composite():
    with pytest.raises(ArithmeticError):
        PrimeField(91)


def test_fp_element_operators():
    F7 = PrimeField(7)
    a, b = F7(3), F7(5)
    assert a + b == 1 and a * b == 1 and (a / b) * b == a and -a == 4 and a ** 6 == 1
    with pytest.raises(MixedFieldError):
        a + PrimeField(11)(1)


def test_rationals_are_exact():
    assert QQ.convert(Fraction(6, 4)) == Fraction(3, 2)
    assert QQ.inv(Fraction(-2, 3)) == Fraction(-3, 2)
    assert QQ.convert(19) + QQ.convert(27) == 46


def test_extension_field_inverse_and_frobenius():
    F = PrimeField(101)
    f = next(f for f in ([c, 1, 0, 1] for c in range(1, 101)) if not uv.roots(F, f))
    K = ExtensionField(F, f)
    t = K.gen()
    x = t * t + 3 * t + 7
    assert x * x.inv() == K.one()
    assert x ** (101 ** 3 - 1) == K.one()
    assert (t ** 101) ** 101 ** 2 == t


def test_field_from_spec():
    assert field_from_spec("rational") is QQ
    assert field_from_spec(13).p == 13
