"""Finite-dimensional associative algebras given by structure constants.

An algebra of dimension n over a field k is stored as:

* ``mult``: an (n, n, n) tensor with ``e_i · e_j = Σ_k mult[i, j, k] e_k``;
* ``unit``: the coordinate vector of the identity element.

Elements are coordinate vectors of length n.  Left/right multiplication
operators act on column vectors; ``left_stack[i]`` is the matrix of
``x ↦ e_i · x`` and ``right_stack[i]`` of ``x ↦ x · e_i``.

The module also provides multiplication in tensor powers A^{⊗k} (elements
stored as k-dimensional arrays of shape (n,)*k), tensor-product and opposite
algebras, and the associativity/unit verifier.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .reports import AxiomReport, CheckItem, FAIL, PASS, first_nonzero_witness

__all__ = [
    "FinAlgebra",
    "verify_algebra",
    "tensor_algebra",
    "op_algebra",
    "tp_mul",
    "tp_unit",
]


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class FinAlgebra:
    """A finite-dimensional algebra presented by structure constants.

    Construction checks shapes only; semantic axioms (associativity,
    two-sided unit) are the job of :func:`verify_algebra`, so deliberately
    corrupted data can still be constructed and then diagnosed.
    """

    def __init__(self, field, mult: np.ndarray, unit: np.ndarray, name: str = "A"):
        self.field = field
        self.name = name
        mult = field.reduce(np.array(mult, dtype=field.dtype))
        unit = field.reduce(np.array(unit, dtype=field.dtype))
        if mult.ndim != 3 or len(set(mult.shape)) != 1:
            raise ValueError(f"mult tensor must be (n, n, n), got {mult.shape}")
        self.dim = mult.shape[0]
        if unit.shape != (self.dim,):
            raise ValueError(f"unit must have shape ({self.dim},), got {unit.shape}")
        self.mult = _freeze(mult)
        self.unit = _freeze(unit)
        # left_stack[i][k, j] = mult[i, j, k]  (matrix of left mult by e_i)
        self.left_stack = _freeze(np.transpose(mult, (0, 2, 1)).copy())
        # right_stack[i][k, j] = mult[j, i, k]  (matrix of right mult by e_i)
        self.right_stack = _freeze(np.transpose(mult, (1, 2, 0)).copy())

    # ------------------------------------------------------------------ elements
    def mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Product of two elements given as coordinate vectors."""
        f = self.field
        return f.reduce(np.tensordot(np.tensordot(u, self.mult, (0, 0)), v, (0, 0)))

    def left_mult_matrix(self, u: np.ndarray) -> np.ndarray:
        """Matrix of ``x ↦ u · x`` acting on column vectors."""
        f = self.field
        return f.reduce(np.tensordot(u, self.left_stack, (0, 0)))

    def right_mult_matrix(self, u: np.ndarray) -> np.ndarray:
        """Matrix of ``x ↦ x · u`` acting on column vectors."""
        f = self.field
        return f.reduce(np.tensordot(u, self.right_stack, (0, 0)))

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros((self.dim,))
        v[i] = self.field.one
        return v

    def __repr__(self) -> str:
        return f"FinAlgebra({self.name}, dim={self.dim}, field={self.field!r})"


def tp_unit(alg: FinAlgebra, k: int) -> np.ndarray:
    """The identity 1⊗...⊗1 of A^{⊗k} as a k-dimensional array."""
    out = alg.unit
    for _ in range(k - 1):
        out = np.multiply.outer(out, alg.unit)
    return alg.field.reduce(out)


def tp_mul(alg: FinAlgebra, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Product in A^{⊗k} of elements stored as arrays of shape (n,)*k.

    Componentwise in each tensor slot: contract the outer product
    u ⊗ v (axes u_1..u_k, v_1..v_k) slot by slot with the mult tensor.
    After step t the result axes are (u_{t+2}..u_k, v_{t+2}..v_k, w_1..w_{t+1})
    with finished slots appended at the end, so the final array has the slots
    in their original order.
    """
    f = alg.field
    k = u.ndim
    if v.ndim != k:
        raise ValueError(f"tensor arity mismatch: {u.ndim} vs {v.ndim}")
    if f.dtype is object:
        # dense tensordot on object dtype multiplies through every zero;
        # the nonzero-expansion below is what makes exact rational
        # verification of k-fold tensor powers tractable
        return _tp_mul_sparse(alg, u, v, k)
    w = f.reduce(np.multiply.outer(u, v))
    for t in range(k):
        w = f.reduce(np.tensordot(w, alg.mult, axes=([0, k - t], [0, 1])))
    return w


def _tp_mul_sparse(alg: FinAlgebra, u: np.ndarray, v: np.ndarray, k: int) -> np.ndarray:
    f = alg.field
    n = alg.dim
    mult = alg.mult
    slot_nz: dict = {}

    def slot_products(i: int, j: int):
        key = (i, j)
        if key not in slot_nz:
            slot_nz[key] = [(a, mult[i, j, a]) for a in range(n) if not f.is_zero(mult[i, j, a])]
        return slot_nz[key]

    u_nz = [(idx, u[idx]) for idx in zip(*np.nonzero(u))]
    v_nz = [(idx, v[idx]) for idx in zip(*np.nonzero(v))]
    out = f.zeros((n,) * k)
    for iu, cu in u_nz:
        for iv, cv in v_nz:
            c0 = f.mul(cu, cv)
            if f.is_zero(c0):
                continue
            terms = [((), c0)]
            for t in range(k):
                nxt = []
                for idx, c in terms:
                    for a, mc in slot_products(int(iu[t]), int(iv[t])):
                        nxt.append((idx + (a,), f.mul(c, mc)))
                terms = nxt
            for idx, c in terms:
                out[idx] = f.add(out[idx], c)
    return f.reduce(out)


def verify_algebra(alg: FinAlgebra) -> AxiomReport:
    """Check associativity and the two-sided unit exactly.

    Associativity is checked as the tensor identity
    ``Σ_x mult[i,j,x] mult[x,k,l] = Σ_y mult[j,k,y] mult[i,y,l]`` for all
    (i, j, k, l); unit as ``1·e_j = e_j = e_j·1``.
    """
    f = alg.field
    m = alg.mult
    checks = []

    left_unit = f.reduce(np.tensordot(alg.unit, m, (0, 0)))  # [j, l] = (1·e_j)_l
    res = f.reduce(left_unit - f.eye(alg.dim))
    w = first_nonzero_witness(f, res)
    checks.append(CheckItem("unit-left", PASS if w is None else FAIL, w))

    right_unit = f.reduce(np.tensordot(alg.unit, m, (0, 1)))  # [i, l] = (e_i·1)_l
    res = f.reduce(right_unit - f.eye(alg.dim))
    w = first_nonzero_witness(f, res)
    checks.append(CheckItem("unit-right", PASS if w is None else FAIL, w))

    lhs = f.reduce(np.tensordot(m, m, (2, 0)))          # [i, j, k, l]
    rhs_raw = f.reduce(np.tensordot(m, m, (2, 1)))      # [j, k, i, l]
    rhs = np.transpose(rhs_raw, (2, 0, 1, 3))
    w = first_nonzero_witness(f, f.reduce(lhs - rhs))
    checks.append(CheckItem("associativity", PASS if w is None else FAIL, w))

    return AxiomReport(subject=f"algebra {alg.name}", checks=checks)


def op_algebra(alg: FinAlgebra) -> FinAlgebra:
    """The opposite algebra: e_i ·_op e_j = e_j · e_i."""
    return FinAlgebra(
        alg.field,
        np.transpose(alg.mult, (1, 0, 2)).copy(),
        alg.unit.copy(),
        name=f"{alg.name}^op",
    )


def tensor_algebra(a: FinAlgebra, b: FinAlgebra, name: Optional[str] = None) -> FinAlgebra:
    """The tensor product algebra A ⊗ B with componentwise multiplication.

    Basis ordering is row-major: ``e_{(i,x)} = e_i ⊗ e_x`` has flat index
    ``i * dim(B) + x``, matching :class:`~quohal.linalg.TensorIndex`.
    """
    if a.field != b.field:
        raise ValueError("tensor_algebra requires a common base field")
    f = a.field
    na, nb = a.dim, b.dim
    ma = a.mult
    mb = b.mult
    mixed = ma[:, None, :, None, :, None] * mb[None, :, None, :, None, :]
    mult = f.reduce(mixed).reshape(na * nb, na * nb, na * nb)
    unit = f.reduce(np.multiply.outer(a.unit, b.unit)).reshape(na * nb)
    return FinAlgebra(f, mult, unit, name=name or f"{a.name}⊗{b.name}")
