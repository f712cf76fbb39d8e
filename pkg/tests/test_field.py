"""Field arithmetic against independent little-Fermat / Fraction oracles."""

import random
from fractions import Fraction

import numpy as np
import pytest

from quohal.field import FieldError, PrimeField, RationalField, field_from_spec


def test_prime_field_arithmetic_oracle(f13):
    # oracle: plain Python modular arithmetic
    for a in range(13):
        for b in range(13):
            assert f13.add(a, b) == (a + b) % 13
            assert f13.sub(a, b) == (a - b) % 13
            assert f13.mul(a, b) == (a * b) % 13
    for a in range(1, 13):
        inv = f13.inv(a)
        assert (a * inv) % 13 == 1
        assert inv == pow(a, 11, 13)  # Fermat oracle


def test_prime_field_rejects_bad_modulus():
    with pytest.raises(FieldError):
        PrimeField(12)
    with pytest.raises(FieldError):
        PrimeField(1)


def test_inverse_of_zero_raises(f13, fq):
    with pytest.raises(FieldError):
        f13.inv(0)
    with pytest.raises(FieldError):
        fq.inv(Fraction(0))


def test_scalar_normalizes_range(f13):
    assert f13.scalar(-1) == 12
    assert f13.scalar(26) == 0
    assert f13.scalar("-1") == 12
    assert f13.scalar(Fraction(12, 5)) == f13.div(12, 5)


def test_parse_format_round_trip(f13, fq):
    rng = random.Random(7)
    for _ in range(50):
        x = f13.random_scalar(rng)
        assert f13.parse(f13.format(x)) == x
        y = fq.random_scalar(rng)
        assert fq.parse(fq.format(y)) == y


def test_rational_field_uses_fractions(fq):
    x = fq.scalar("3/4")
    assert x == Fraction(3, 4)
    assert fq.mul(x, fq.scalar(4)) == 3
    assert fq.format(Fraction(-2, 6)) == "-1/3"


def test_reduce_keeps_canonical_range(f13):
    arr = np.array([[14, -1], [26, 5]], dtype=f13.dtype)
    out = f13.reduce(arr)
    assert out.tolist() == [[1, 12], [0, 5]]


def test_dot_matches_integer_oracle(f13):
    rng = random.Random(3)
    a = f13.reduce(np.array([[rng.randrange(13) for _ in range(4)] for _ in range(3)], dtype=f13.dtype))
    b = f13.reduce(np.array([[rng.randrange(13) for _ in range(2)] for _ in range(4)], dtype=f13.dtype))
    out = f13.dot(a, b)
    oracle = [[sum(int(a[i, k]) * int(b[k, j]) for k in range(4)) % 13 for j in range(2)]
              for i in range(3)]
    assert out.tolist() == oracle


def test_large_prime_uses_object_dtype():
    big = PrimeField((1 << 31) - 1)  # Mersenne prime above the int64-safety cutoff
    assert big.dtype == object
    x = big.scalar(1 << 30)
    assert big.mul(x, x) == pow(1 << 30, 2, (1 << 31) - 1)


def test_field_spec_round_trip(f13, fq):
    assert field_from_spec(f13.to_spec()) == f13
    assert field_from_spec(fq.to_spec()) == fq
    assert field_from_spec({"prime": 101}) == PrimeField(101)
    with pytest.raises(FieldError):
        field_from_spec({"prime": 10})
    with pytest.raises(FieldError):
        field_from_spec({})


def test_equality_and_hash(f13, fq):
    assert f13 == PrimeField(13)
    assert f13 != PrimeField(101)
    assert fq == RationalField()
    assert len({f13, PrimeField(13), fq}) == 2
