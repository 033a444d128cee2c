import random
from fractions import Fraction

import pytest

from qweb.scalars import (
    I,
    ISQRT2,
    ONE,
    SQRT2,
    ZERO,
    Scalar,
    ScalarParseError,
    format_scalar,
    parse_scalar,
)


def test_defining_relations():
    assert I * I == Scalar.of(-1)
    assert SQRT2 * SQRT2 == Scalar.of(2)
    assert ISQRT2 * SQRT2 == ONE
    assert I * SQRT2 == Scalar(Fraction(0), Fraction(0), Fraction(0), Fraction(1))


def test_norm_of_one_plus_i():
    assert (ONE + I) * (ONE - I) == Scalar.of(2)


def test_additive_identity_and_cancellation():
    x = Scalar(Fraction(3, 7), Fraction(-2), Fraction(1, 2), Fraction(5))
    assert x + ZERO == x
    assert (ONE + I) + (ONE - I) == Scalar.of(2)
    assert ISQRT2 + ISQRT2 == SQRT2


def test_simple_inverses():
    assert Scalar.of(2).inv() == Scalar.of(Fraction(1, 2))
    assert I.inv() == -I
    assert (ISQRT2 * SQRT2).inv() == ONE


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()


def _random_scalar(rng):
    return Scalar(*[Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(4)])


def test_field_axioms_random():
    rng = random.Random(101)
    for _ in range(300):
        x, y, z = (_random_scalar(rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        assert x + y == y + x


def test_inverse_two_sided_random():
    rng = random.Random(17)
    count = 0
    while count < 10_000:
        x = _random_scalar(rng)
        if not x:
            continue
        count += 1
        assert x * x.inv() == ONE
        assert x.inv() * x == ONE


@pytest.mark.parametrize(
    "text,value",
    [
        ("1/2 + 3*i", Scalar(Fraction(1, 2), Fraction(3))),
        ("0", ZERO),
        ("1*r2", SQRT2),
        ("-1*i", -I),
        ("5*i*r2", Scalar(Fraction(0), Fraction(0), Fraction(0), Fraction(5))),
    ],
)
def test_parse_cases(text, value):
    assert parse_scalar(text) == value


def test_format_parse_roundtrip():
    rng = random.Random(3)
    for _ in range(200):
        x = _random_scalar(rng)
        text = format_scalar(x)
        assert parse_scalar(text) == x
        assert format_scalar(parse_scalar(text)) == text


def test_parse_errors_positioned():
    with pytest.raises(ScalarParseError):
        parse_scalar("1 + bogus")
    with pytest.raises(ScalarParseError):
        parse_scalar("")
