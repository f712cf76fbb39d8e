"""Dense exact linear algebra over a field, plus tensor-index bookkeeping.

All matrices are plain 2-D numpy arrays with entries in the given field's
representation; every function takes the field explicitly.  The core routine
is a single fraction-free-in-spirit Gaussian elimination (:func:`rref_array`)
with the first-nonzero pivot rule, from which kernels, inverses, ranks and
linear solves are derived.  Row operations are vectorized over whole rows so
GF(p) elimination stays fast at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .field import FieldError

__all__ = [
    "NotInvertible",
    "TensorIndex",
    "kron",
    "rref_array",
    "rank",
    "kernel",
    "invert",
    "solve",
    "solve_many",
    "column_space_contains",
    "same_column_span",
    "random_matrix",
    "random_vector",
]


@dataclass(frozen=True)
class NotInvertible:
    """Returned by :func:`invert` when the matrix is singular."""

    rank: int


class TensorIndex:
    """Row-major flattening between multi-indices and flat indices.

    For dims ``(d0, ..., d_{k-1})`` the basis vector ``e_{i0} ⊗ ... ⊗ e_{i_{k-1}}``
    of the tensor product corresponds to flat index
    ``i0*d1*...*d_{k-1} + ... + i_{k-1}`` — numpy's C order, so reshaping a
    flat vector to shape ``dims`` agrees with this convention.
    """

    def __init__(self, dims: Sequence[int]):
        self.dims: Tuple[int, ...] = tuple(int(d) for d in dims)
        if any(d <= 0 for d in self.dims):
            raise ValueError(f"tensor factor dims must be positive, got {self.dims}")
        self.arity = len(self.dims)
        self.total = 1
        for d in self.dims:
            self.total *= d
        self._strides = []
        s = 1
        for d in reversed(self.dims):
            self._strides.append(s)
            s *= d
        self._strides.reverse()

    def flat(self, multi: Sequence[int]) -> int:
        if len(multi) != self.arity:
            raise ValueError(f"expected {self.arity} indices, got {len(multi)}")
        x = 0
        for i, d, s in zip(multi, self.dims, self._strides):
            if not (0 <= i < d):
                raise ValueError(f"index {i} out of range for factor of dim {d}")
            x += i * s
        return x

    def unflat(self, x: int) -> Tuple[int, ...]:
        if not (0 <= x < self.total):
            raise ValueError(f"flat index {x} out of range for total dim {self.total}")
        out = []
        for s in self._strides:
            out.append(x // s)
            x %= s
        return tuple(out)

    def __repr__(self) -> str:
        return f"TensorIndex{self.dims}"


def kron(field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the row-major convention matching TensorIndex."""
    return field.reduce(np.kron(a, b))


def rref_array(field, m: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form and pivot columns (first-nonzero pivot rule)."""
    m = field.reduce(np.array(m, dtype=field.dtype))
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    rows, cols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = m[r:, c]
        nz = [i for i in range(col.shape[0]) if not field.is_zero(col[i])]
        if not nz:
            continue
        i = r + nz[0]
        if i != r:
            m[[r, i]] = m[[i, r]]
        piv = m[r, c]
        if piv != field.one:
            m[r] = field.reduce(m[r] * field.inv(piv))
        coeffs = m[:, c].copy()
        coeffs[r] = field.zero
        m = field.reduce(m - np.outer(coeffs, m[r]))
        pivots.append(c)
        r += 1
    return m, pivots


def rank(field, m: np.ndarray) -> int:
    _, pivots = rref_array(field, m)
    return len(pivots)


def kernel(field, m: np.ndarray) -> np.ndarray:
    """Basis of the right null space, as the *columns* of the result.

    The basis is the canonical one read off the RREF: one column per free
    variable, with a 1 in the free position.  Shape ``(cols, nullity)``.
    """
    m = np.asarray(m)
    rows, cols = m.shape
    r, pivots = rref_array(field, m)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = field.zeros((cols, len(free)))
    for j, f in enumerate(free):
        basis[f, j] = field.one
        for i, pc in enumerate(pivots):
            basis[pc, j] = field.neg(r[i, f])
    return field.reduce(basis)


def invert(field, m: np.ndarray):
    """Exact inverse, or :class:`NotInvertible` carrying the rank."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"invert expects a square matrix, got shape {m.shape}")
    n = m.shape[0]
    aug = np.concatenate([field.reduce(np.array(m, dtype=field.dtype)), field.eye(n)], axis=1)
    r, pivots = rref_array(field, aug)
    lead = [c for c in pivots if c < n]
    if len(lead) < n:
        return NotInvertible(rank=len(lead))
    return r[:, n:]


def solve(field, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """One exact solution ``x`` of ``a @ x = b``, or ``None`` if inconsistent.

    ``b`` may be a vector or a matrix (multiple right-hand sides); free
    variables are set to zero.
    """
    a = np.asarray(a)
    b_arr = field.reduce(np.array(b, dtype=field.dtype))
    vector_rhs = b_arr.ndim == 1
    if vector_rhs:
        b_arr = b_arr.reshape(-1, 1)
    if b_arr.shape[0] != a.shape[0]:
        raise ValueError(f"shape mismatch: a is {a.shape}, b has {b_arr.shape[0]} rows")
    cols = a.shape[1]
    aug = np.concatenate([field.reduce(np.array(a, dtype=field.dtype)), b_arr], axis=1)
    r, pivots = rref_array(field, aug)
    if any(c >= cols for c in pivots):
        return None
    x = field.zeros((cols, b_arr.shape[1]))
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols:]
    return x[:, 0] if vector_rhs else x


def solve_many(field, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """Alias of :func:`solve` for matrix right-hand sides (readability)."""
    return solve(field, a, b)


def column_space_contains(field, m: np.ndarray, v: np.ndarray) -> bool:
    return solve(field, m, v) is not None


def same_column_span(field, a: np.ndarray, b: np.ndarray) -> bool:
    """Do the columns of ``a`` and ``b`` span the same subspace?"""
    ra = rank(field, a)
    rb = rank(field, b)
    if ra != rb:
        return False
    return rank(field, np.concatenate([a, b], axis=1)) == ra


def random_matrix(field, rng, rows: int, cols: int) -> np.ndarray:
    m = field.zeros((rows, cols))
    for i in range(rows):
        for j in range(cols):
            m[i, j] = field.random_scalar(rng)
    return m


def random_vector(field, rng, n: int) -> np.ndarray:
    v = field.zeros((n,))
    for i in range(n):
        v[i] = field.random_scalar(rng)
    return v
