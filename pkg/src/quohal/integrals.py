"""Integrals, the semisimplicity criterion, and the Frobenius property.

A left integral is an element t with h·t = ε(h)t for all h; the integral
space is computed exactly as the kernel of the stacked linear system.  The
semisimplicity criterion is: H is semisimple iff some left integral has
ε(t) ≠ 0 (the witness is normalized to ε(t) = 1).  An independent radical
oracle via the trace form of the left regular representation cross-checks
the criterion where its own precondition (char 0, or p > dim) holds — it
answers ``UnsupportedOracle`` otherwise, never silently.

The Frobenius property is certified by exhibiting a functional λ whose
twisted Gram matrix [λ(S⁻¹(e_i)·e_j)] is invertible; the search tries
seeded random functionals, then dual-basis vectors, then their partial
sums, and reports ``NeedLargerField`` only when everything fails.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Union

import numpy as np

from .algebra import FinAlgebra
from .linalg import NotInvertible, invert, kernel
from .modules import BimoduleRep
from .quasi import QuasiHopfAlgebra
from .reports import first_nonzero_witness

__all__ = [
    "IntegralSpace",
    "integral_space",
    "PanResult",
    "pan_semisimple",
    "UnsupportedOracle",
    "radical_oracle",
    "FrobeniusForm",
    "NeedLargerField",
    "find_frobenius_form",
    "dual_bimodule_Hstar",
]


@dataclass(frozen=True)
class IntegralSpace:
    """Exact basis (columns) of the one-sided integrals of H."""

    side: str
    basis: Any  # (dim H, k) array, columns are integrals

    @property
    def dim(self) -> int:
        return int(np.asarray(self.basis).shape[1])

    def to_json(self, field) -> Dict[str, Any]:
        b = np.asarray(self.basis)
        return {
            "side": self.side,
            "dim": self.dim,
            "basis": [[field.format(x) for x in b[:, j]] for j in range(b.shape[1])],
        }


def integral_space(h: QuasiHopfAlgebra, side: str = "left") -> IntegralSpace:
    """Solve h·t = ε(h)t (left) or t·h = ε(h)t (right) exactly."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    f = h.field
    n = h.dim
    stacks = h.alg.left_stack if side == "left" else h.alg.right_stack
    eye = f.eye(n)
    rows = [f.reduce(stacks[i] - h.counit[i] * eye) for i in range(n)]
    basis = kernel(f, f.reduce(np.concatenate(rows, axis=0)))
    return IntegralSpace(side=side, basis=basis)


@dataclass(frozen=True)
class PanResult:
    """Semisimplicity verdict with the normalized integral witness."""

    semisimple: bool
    witness: Optional[Any]  # t with ε(t) = 1 when semisimple
    integral_dim: int

    def to_json(self, field) -> Dict[str, Any]:
        out: Dict[str, Any] = {"semisimple": self.semisimple, "integral_dim": self.integral_dim}
        if self.witness is not None:
            out["witness"] = [field.format(x) for x in np.asarray(self.witness)]
        return out


def pan_semisimple(h: QuasiHopfAlgebra) -> PanResult:
    """H is semisimple iff ε does not vanish on the left integrals."""
    f = h.field
    ints = integral_space(h, "left")
    basis = np.asarray(ints.basis)
    evals = f.dot(h.counit.reshape(1, -1), basis).reshape(-1) if basis.shape[1] else f.zeros((0,))
    for j in range(basis.shape[1]):
        if not f.is_zero(evals[j]):
            t = f.reduce(f.inv(evals[j]) * basis[:, j])
            return PanResult(semisimple=True, witness=t, integral_dim=ints.dim)
    return PanResult(semisimple=False, witness=None, integral_dim=ints.dim)


@dataclass(frozen=True)
class UnsupportedOracle:
    """The radical oracle's validity precondition fails; no answer given."""

    reason: str

    def to_json(self, field=None) -> Dict[str, Any]:
        return {"status": "unsupported", "reason": self.reason}


def radical_oracle(a: FinAlgebra) -> Union[np.ndarray, UnsupportedOracle]:
    """Radical of the trace form T(x, y) = trace(L_x L_y), as a column basis.

    Equals the Jacobson radical when the field has characteristic 0 or
    p > dim A; outside that range the trace-form characterization can lie,
    so the oracle refuses instead.
    """
    f = a.field
    if f.char != 0 and f.char <= a.dim:
        return UnsupportedOracle(reason=f"trace-form radical needs char 0 or p > dim; have p = {f.char}, dim = {a.dim}")
    n = a.dim
    gram = f.zeros((n, n))
    left = a.left_stack
    for i in range(n):
        for j in range(n):
            prod = f.dot(left[i], left[j])
            tr = f.scalar(0)
            for t in range(n):
                tr = f.add(tr, prod[t, t])
            gram[i, j] = tr
    return kernel(f, gram)


@dataclass(frozen=True)
class FrobeniusForm:
    """A functional λ certifying the Frobenius property.

    ``gram_mult[i,j] = λ(e_i·e_j)`` and ``gram_twisted[i,j] = λ(S⁻¹(e_i)·e_j)``
    are both invertible; the twisted matrix is exactly the S⁻¹-transpose
    transform of the plain one.
    """

    lam: Any
    gram_mult: Any
    gram_twisted: Any

    def to_json(self, field) -> Dict[str, Any]:
        return {
            "lambda": [field.format(x) for x in np.asarray(self.lam)],
            "gram_mult": [[field.format(x) for x in row] for row in np.asarray(self.gram_mult)],
            "gram_twisted": [[field.format(x) for x in row] for row in np.asarray(self.gram_twisted)],
        }


@dataclass(frozen=True)
class NeedLargerField:
    """Search exhausted without a nondegenerate functional.

    The Frobenius property guarantees a dense open set of solutions, so this
    outcome over a small field means every sampled and structured candidate
    landed in the degenerate locus — enlarge the field and retry.
    """

    trials: int

    def to_json(self, field=None) -> Dict[str, Any]:
        return {"status": "need-larger-field", "trials": self.trials}


def _gram_pair(h: QuasiHopfAlgebra, lam: np.ndarray):
    f = h.field
    gm = f.reduce(np.tensordot(h.alg.mult, lam, (2, 0)))
    sinv = h.antipode_inv
    gt = f.dot(np.ascontiguousarray(sinv.T), gm)
    # independent contraction of the same data as a consistency assertion
    w3 = f.reduce(np.tensordot(sinv, h.alg.mult, (0, 0)))
    gt_direct = f.reduce(np.tensordot(w3, lam, (2, 0)))
    if first_nonzero_witness(f, f.reduce(gt - gt_direct)) is not None:
        raise AssertionError("twisted Gram transform identity violated")
    return gm, gt


def find_frobenius_form(h: QuasiHopfAlgebra, seed: int = 0, trials: int = 64) -> Union[FrobeniusForm, NeedLargerField]:
    """Search for λ with invertible Gram matrices.

    Candidate order: ``trials`` seeded random functionals, then the dual
    basis vectors δ_i, then the partial sums δ_0+…+δ_k.  The two Gram
    matrices are invertible together (S⁻¹ is an invertible change of one
    argument); both are checked anyway.
    """
    f = h.field
    n = h.dim
    _ = h.antipode_inv  # raises PreconditionError when S is singular
    rng = random.Random(seed)

    def candidates():
        for _ in range(trials):
            yield np.array([f.random_scalar(rng) for _ in range(n)], dtype=f.dtype)
        for i in range(n):
            e = f.zeros((n,))
            e[i] = f.scalar(1)
            yield e
        acc = f.zeros((n,))
        for i in range(n):
            acc[i] = f.scalar(1)
            yield acc.copy()

    for lam in candidates():
        lam = f.reduce(lam)
        gm, gt = _gram_pair(h, lam)
        if isinstance(invert(f, gm), NotInvertible):
            continue
        if isinstance(invert(f, gt), NotInvertible):
            continue
        return FrobeniusForm(lam=lam, gram_mult=gm, gram_twisted=gt)
    return NeedLargerField(trials=trials)


def dual_bimodule_Hstar(h: QuasiHopfAlgebra) -> BimoduleRep:
    """H* as an H-bimodule: (g·φ·k)(v) = φ(S(g)·v·S⁻¹(k)).

    In dual coordinates the left action of e_i is the transpose of left
    multiplication by S(e_i), the right action of e_j the transpose of
    right multiplication by S⁻¹(e_j).  Its right-module restriction is free
    of rank 1 — the dual-space face of the Frobenius property.
    """
    f = h.field
    l_s = f.reduce(np.tensordot(h.antipode, h.alg.left_stack, (0, 0)))
    r_sinv = f.reduce(np.tensordot(h.antipode_inv, h.alg.right_stack, (0, 0)))
    left = f.reduce(np.ascontiguousarray(l_s.transpose(0, 2, 1)))
    right = f.reduce(np.ascontiguousarray(r_sinv.transpose(0, 2, 1)))
    return BimoduleRep(h.alg, h.dim, left, right, name=f"{h.name}*")
