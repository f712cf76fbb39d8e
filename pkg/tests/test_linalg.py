"""Exact linear algebra against brute-force oracles (seeded property loops)."""

import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from quohal.field import PrimeField, RationalField
from quohal.linalg import (
    NotInvertible,
    TensorIndex,
    column_space_contains,
    invert,
    kernel,
    kron,
    random_matrix,
    random_vector,
    rank,
    rref_array,
    same_column_span,
    solve,
    solve_many,
)

F13 = PrimeField(13)
FQ = RationalField()
FIELDS = [F13, FQ]


def _sign_perms(n):
    """(sign, permutation) pairs, computed independently via inversions."""
    from itertools import permutations

    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        yield ((-1) ** inv, p)


def det_oracle(field, m):
    m = np.asarray(m)
    n = m.shape[0]
    total = field.zero
    for sgn, p in _sign_perms(n):
        term = field.one if sgn == 1 else field.neg(field.one)
        for i in range(n):
            term = field.mul(term, m[i, p[i]])
        total = field.add(total, term)
    return total


@pytest.mark.parametrize("field", FIELDS, ids=["GF13", "Q"])
def test_invert_matches_determinant_oracle(field):
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randrange(1, 5)
        m = random_matrix(field, rng, n, n)
        d = det_oracle(field, m)
        out = invert(field, m)
        if field.is_zero(d):
            assert isinstance(out, NotInvertible)
        else:
            assert not isinstance(out, NotInvertible)
            assert np.array_equal(field.dot(m, out), field.eye(n))
            assert np.array_equal(field.dot(out, m), field.eye(n))


@pytest.mark.parametrize("field", FIELDS, ids=["GF13", "Q"])
def test_solve_property(field):
    rng = random.Random(23)
    for _ in range(40):
        rows = rng.randrange(1, 6)
        cols = rng.randrange(1, 6)
        a = random_matrix(field, rng, rows, cols)
        x_true = random_vector(field, rng, cols)
        b = field.dot(a, x_true)
        x = solve(field, a, b)
        assert x is not None
        assert np.array_equal(field.dot(a, x), b)


def test_solve_detects_inconsistency():
    a = F13.asarray([[1, 0], [1, 0]])
    b = F13.asarray([1, 2])
    assert solve(F13, a, b) is None


@pytest.mark.parametrize("field", FIELDS, ids=["GF13", "Q"])
def test_kernel_is_exact_null_space(field):
    rng = random.Random(5)
    for _ in range(30):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 6)
        a = random_matrix(field, rng, rows, cols)
        k = kernel(field, a)
        # every column really is annihilated
        if k.shape[1]:
            assert not np.any(field.dot(a, k))
        # rank-nullity with the independent rank
        assert k.shape[1] == cols - rank(field, a)
        # columns are linearly independent
        assert rank(field, k) == k.shape[1]


def test_rank_small_cases_oracle():
    cases = [
        ([[0]], 0),
        ([[5]], 1),
        ([[1, 2], [2, 4]], 1),
        ([[1, 2], [3, 4]], 2),
        ([[1, 0, 1], [0, 1, 1], [1, 1, 2]], 2),
    ]
    for m, expected in cases:
        assert rank(F13, F13.asarray(m)) == expected
        assert rank(FQ, FQ.asarray(m)) == expected


def test_rref_reproduces_row_space():
    rng = random.Random(9)
    for _ in range(20):
        a = random_matrix(F13, rng, 3, 4)
        r, pivots = rref_array(F13, a)
        assert same_column_span(F13, a.T, r.T)
        for i, c in enumerate(pivots):
            assert r[i, c] == 1


def test_solve_many_columns():
    a = F13.asarray([[2, 0], [0, 3]])
    b = F13.asarray([[4, 2], [9, 3]])
    x = solve_many(F13, a, b)
    assert np.array_equal(F13.dot(a, x), b)


def test_column_space_contains():
    a = F13.asarray([[1, 0], [0, 1], [1, 1]])
    assert column_space_contains(F13, a, F13.asarray([2, 3, 5]))
    assert not column_space_contains(F13, a, F13.asarray([0, 0, 1]))


def test_tensor_index_row_major():
    t = TensorIndex((2, 3, 4))
    assert t.total == 24
    # row-major agreement with numpy reshape
    arr = np.arange(24).reshape(2, 3, 4)
    for multi in product(range(2), range(3), range(4)):
        assert t.flat(multi) == arr[multi]
        assert t.unflat(t.flat(multi)) == multi
    with pytest.raises(ValueError):
        t.flat((2, 0, 0))
    with pytest.raises(ValueError):
        t.unflat(24)


def test_kron_matches_tensor_index_convention():
    a = F13.asarray([[1, 2], [3, 4]])
    b = F13.asarray([[0, 5], [6, 7]])
    k = kron(F13, a, b)
    t = TensorIndex((2, 2))
    for i, j, p, q in product(range(2), repeat=4):
        assert k[t.flat((i, p)), t.flat((j, q))] == F13.mul(a[i, j], b[p, q])


def test_rational_entries_stay_exact():
    a = FQ.asarray([[Fraction(1, 3), Fraction(1, 7)], [Fraction(2, 5), Fraction(3, 11)]])
    inv = invert(FQ, a)
    assert np.array_equal(FQ.dot(a, inv), FQ.eye(2))
    det = det_oracle(FQ, a)
    assert det == Fraction(1, 3) * Fraction(3, 11) - Fraction(1, 7) * Fraction(2, 5)
