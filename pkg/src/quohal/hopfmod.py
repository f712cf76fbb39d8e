"""Hopf modules over a quasi-Hopf subalgebra embedding K ⊆ H.

A :class:`SubalgebraEmbedding` packages two verified quasi-Hopf algebras and
an injective unital algebra map ``incl: K → H`` (an (dim H, dim K) matrix
whose column x is the image of e_x).  Three regimes are distinguished by
re-computed flags:

* ``is_subcoalgebra``:  Δ_H∘incl lands in the image of incl⊗incl;
* ``shares_associator``:  φ_H lies in the image of incl^{⊗3};
* ``is_quasi_hopf_sub``:  both memberships AND the induced data equal K's own
  (Δ, ε, φ, S, α, β all compatible).

A right Hopf module is a K-bimodule M with a coaction δ: M → M⊗H (stored as
an (mdim·dim H, mdim) matrix, rows indexed row-major by (M-index, H-index))
such that

* (M⊗ε)δ = id,
* (M⊗Δ)δ(m)·φ = φ·(δ⊗H)δ(m) in the K⊗K⊗K-bimodule M⊗H⊗H, where φ = φ_K
  acts on the left through the three left K-actions (M's own, and left
  multiplication by incl(·) on each H slot) and on the right symmetrically,
* δ is a K-bimodule map for the codiagonal structures.

Left Hopf modules (δ: N → H⊗N) satisfy the mirrored axioms
(ε⊗N)δ = id and (H⊗δ)δ(n)·φ = φ·(Δ⊗N)δ(n).

The bimodule associator of the underlying monoidal category acts as
Φ(u⊗v⊗w) = φ⁽¹⁾uφ⁽⁻¹⁾ ⊗ φ⁽²⁾vφ⁽⁻²⁾ ⊗ φ⁽³⁾wφ⁽⁻³⁾; cofree comodules, twisted
tensors and the cotensor equalizer are all built from it.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .algebra import FinAlgebra
from .errors import ConstructionError, EmbeddingError, RegimeError
from .linalg import kernel, rank, solve
from .modules import (
    BimoduleRep,
    ModuleRep,
    bimodule_iso_test,
    freeness_check,
    tensor_bimodules,
)
from .quasi import QuasiHopfAlgebra
from .reports import (
    AxiomReport,
    CheckItem,
    FAIL,
    IsoNo,
    PASS,
    first_nonzero_witness,
)

__all__ = [
    "SubalgebraEmbedding",
    "EmbeddingReport",
    "identity_embedding",
    "tensor_embedding",
    "validate_embedding",
    "HopfModule",
    "verify_hopf_module",
    "cofree_hopf_module",
    "cofree_left_hopf_module",
    "twist_tensor_hopf_module",
    "direct_sum_hopf_modules",
    "cotensor",
    "verify_cotensor_iso",
    "structure_freeness",
]


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _arrays_equal(f, a: np.ndarray, b: np.ndarray) -> bool:
    return first_nonzero_witness(f, f.reduce(np.asarray(a) - np.asarray(b))) is None


class SubalgebraEmbedding:
    """K ⊆ H via an inclusion matrix; flags are computed, never trusted."""

    def __init__(self, k: QuasiHopfAlgebra, h: QuasiHopfAlgebra, incl, name: str = ""):
        if k.field != h.field:
            raise ValueError("embedding requires a common base field")
        f = k.field
        incl = f.reduce(np.array(incl, dtype=f.dtype))
        if incl.shape != (h.dim, k.dim):
            raise ValueError(f"incl must be ({h.dim}, {k.dim}), got {incl.shape}")
        self.K = k
        self.H = h
        self.incl = _freeze(incl)
        self.name = name or f"{k.name}⊆{h.name}"
        self._lhk: Optional[np.ndarray] = None
        self._rhk: Optional[np.ndarray] = None
        self._h_bimodule: Optional[BimoduleRep] = None
        self._report: Optional["EmbeddingReport"] = None

    @property
    def field(self):
        return self.K.field

    def push(self, v_k: np.ndarray) -> np.ndarray:
        """Image of a K-element in H coordinates."""
        return self.field.dot(self.incl, v_k)

    @property
    def lhk_stack(self) -> np.ndarray:
        """Left multiplication by incl(e_x) on H, stacked over the K-basis."""
        if self._lhk is None:
            f = self.field
            self._lhk = _freeze(f.reduce(np.tensordot(self.incl, self.H.alg.left_stack, (0, 0))))
        return self._lhk

    @property
    def rhk_stack(self) -> np.ndarray:
        """Right multiplication by incl(e_x) on H, stacked over the K-basis."""
        if self._rhk is None:
            f = self.field
            self._rhk = _freeze(f.reduce(np.tensordot(self.incl, self.H.alg.right_stack, (0, 0))))
        return self._rhk

    @property
    def h_bimodule(self) -> BimoduleRep:
        """H as a K-bimodule through incl."""
        if self._h_bimodule is None:
            self._h_bimodule = BimoduleRep(
                self.K.alg,
                self.H.dim,
                self.lhk_stack.copy(),
                self.rhk_stack.copy(),
                name=f"{self.H.name}|{self.K.name}",
            )
        return self._h_bimodule

    @property
    def flags(self) -> Dict[str, bool]:
        return validate_embedding(self).flags

    @property
    def regime(self) -> str:
        return validate_embedding(self).regime

    def is_identity(self) -> bool:
        f = self.field
        return self.K.dim == self.H.dim and _arrays_equal(f, self.incl, f.eye(self.K.dim))

    def __repr__(self) -> str:
        return f"SubalgebraEmbedding({self.name})"


@dataclass
class EmbeddingReport(AxiomReport):
    """Validation outcome plus the recomputed regime flags."""

    flags: Dict[str, bool] = dc_field(default_factory=dict)
    regime: str = "subalgebra"

    def to_json(self):
        out = super().to_json()
        out["flags"] = dict(self.flags)
        out["regime"] = self.regime
        return out


def identity_embedding(h: QuasiHopfAlgebra) -> SubalgebraEmbedding:
    return SubalgebraEmbedding(h, h, h.field.eye(h.dim), name=f"{h.name}=id")


def tensor_embedding(k: QuasiHopfAlgebra, f_alg: QuasiHopfAlgebra) -> SubalgebraEmbedding:
    """K embedded as K⊗1 inside the tensor product K⊗F."""
    from .quasi import tensor_qba  # local import to keep module load order simple

    h = tensor_qba(k, f_alg)
    if not isinstance(h, QuasiHopfAlgebra):
        raise ConstructionError("tensor_embedding requires quasi-Hopf inputs")
    fld = k.field
    incl = fld.reduce(np.kron(fld.eye(k.dim), f_alg.alg.unit.reshape(-1, 1)))
    return SubalgebraEmbedding(k, h, incl, name=f"{k.name}⊗1⊆{h.name}")


def validate_embedding(e: SubalgebraEmbedding) -> EmbeddingReport:
    """Hard-check the algebra embedding, then recompute all regime flags.

    Non-injective, non-unital, or non-multiplicative inclusions raise
    :class:`~quohal.errors.EmbeddingError`; flag outcomes are informational
    (they select a theorem regime, they are not axioms of the embedding).
    """
    if e._report is not None:
        return e._report
    f = e.field
    k, h, incl = e.K, e.H, e.incl
    nk, nh = k.dim, h.dim
    checks: List[CheckItem] = []

    r = rank(f, incl)
    if r != nk:
        raise EmbeddingError(f"incl of {e.name} is not injective (rank {r} < {nk})")
    checks.append(CheckItem("incl-injective", PASS))

    if not _arrays_equal(f, e.push(k.alg.unit), h.alg.unit):
        raise EmbeddingError(f"incl of {e.name} does not send 1_K to 1_H")
    checks.append(CheckItem("incl-unital", PASS))

    lhs = f.reduce(np.tensordot(k.alg.mult, incl, (2, 1)))  # [x, y, j] = incl(e_x e_y)_j
    t = f.reduce(np.tensordot(incl, h.alg.mult, (0, 0)))    # [x, t, l]
    rhs = np.transpose(f.reduce(np.tensordot(t, incl, (1, 0))), (0, 2, 1))
    if first_nonzero_witness(f, f.reduce(lhs - rhs)) is not None:
        raise EmbeddingError(f"incl of {e.name} is not multiplicative")
    checks.append(CheckItem("incl-multiplicative", PASS))

    incl2 = f.reduce(np.kron(incl, incl))
    induced_comul = solve(f, incl2, f.dot(h.comul, incl))
    incl3 = f.reduce(np.kron(incl, incl2))
    induced_assoc = solve(f, incl3, np.asarray(h.assoc))

    flags: Dict[str, bool] = {}
    flags["is_subcoalgebra"] = induced_comul is not None
    flags["shares_associator"] = induced_assoc is not None
    comul_ok = induced_comul is not None and _arrays_equal(f, induced_comul, k.comul)
    counit_ok = _arrays_equal(f, f.dot(h.counit.reshape(1, -1), incl).reshape(-1), k.counit)
    assoc_ok = induced_assoc is not None and _arrays_equal(f, induced_assoc, k.assoc)
    antipode_ok = _arrays_equal(f, f.dot(h.antipode, incl), f.dot(incl, k.antipode))
    alpha_ok = _arrays_equal(f, e.push(k.alpha), h.alpha)
    beta_ok = _arrays_equal(f, e.push(k.beta), h.beta)
    flags["comul_compatible"] = comul_ok
    flags["counit_compatible"] = counit_ok
    flags["assoc_compatible"] = assoc_ok
    flags["antipode_compatible"] = antipode_ok
    flags["alpha_compatible"] = alpha_ok
    flags["beta_compatible"] = beta_ok
    flags["is_quasi_hopf_sub"] = all(
        [flags["is_subcoalgebra"], comul_ok, counit_ok, flags["shares_associator"], assoc_ok, antipode_ok, alpha_ok, beta_ok]
    )
    regime = "quasi-hopf-sub" if flags["is_quasi_hopf_sub"] else "subalgebra"
    report = EmbeddingReport(subject=f"embedding {e.name}", checks=checks, flags=flags, regime=regime)
    e._report = report
    return report


# --------------------------------------------------------------------------- Hopf modules


@dataclass
class HopfModule:
    """A K-bimodule with an H-coaction over an embedding K ⊆ H.

    ``side`` is the comodule side: "right" stores δ: M → M⊗H as an
    (mdim·dim H, mdim) matrix with rows indexed by (M-index, H-index);
    "left" stores δ: N → H⊗N with rows indexed by (H-index, N-index).
    """

    embedding: SubalgebraEmbedding
    carrier: BimoduleRep
    coaction: np.ndarray
    side: str = "right"
    name: str = "M"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")
        f = self.embedding.field
        nh = self.embedding.H.dim
        m = self.carrier.mdim
        coact = f.reduce(np.array(self.coaction, dtype=f.dtype))
        if coact.shape != (m * nh, m):
            raise ValueError(f"coaction must be ({m * nh}, {m}), got {coact.shape}")
        self.coaction = _freeze(coact)

    @property
    def mdim(self) -> int:
        return self.carrier.mdim

    @property
    def field(self):
        return self.embedding.field

    def __repr__(self) -> str:
        return f"HopfModule({self.name}, {self.side}, mdim={self.mdim} over {self.embedding.name})"


def _op3(f, coeff3: np.ndarray, s1: np.ndarray, s2: np.ndarray, s3: np.ndarray) -> np.ndarray:
    """Matrix of Σ coeff[x,y,z] · s1[x] ⊗ s2[y] ⊗ s3[z] on slot1⊗slot2⊗slot3."""
    a = f.reduce(np.tensordot(coeff3, s1, (0, 0)))   # [y, z, a, b]
    a = f.reduce(np.tensordot(a, s2, (0, 0)))        # [z, a, b, c, d]
    a = f.reduce(np.tensordot(a, s3, (0, 0)))        # [a, b, c, d, e, g]
    d1, d2, d3 = s1.shape[1], s2.shape[1], s3.shape[1]
    return np.ascontiguousarray(np.transpose(a, (0, 2, 4, 1, 3, 5))).reshape(d1 * d2 * d3, d1 * d2 * d3)


@dataclass(frozen=True)
class _Slot:
    """Left/right action stacks of K on one tensor factor."""

    left: np.ndarray
    right: np.ndarray


def _h_slot(e: SubalgebraEmbedding) -> _Slot:
    return _Slot(left=e.lhk_stack, right=e.rhk_stack)


def _bimodule_slot(p: BimoduleRep) -> _Slot:
    return _Slot(left=p.left, right=p.right)


def _phi_operator(e: SubalgebraEmbedding, slots: Tuple[_Slot, _Slot, _Slot], inverse: bool = False) -> np.ndarray:
    """The bimodule associator Φ (or Φ⁻¹) on slot1⊗slot2⊗slot3.

    Φ acts by left action of φ_K and right action of φ_K⁻¹; the inverse swaps
    the two tensors.
    """
    f = e.field
    phi, phi_inv = (e.K.phi, e.K.phi_inv) if not inverse else (e.K.phi_inv, e.K.phi)
    left_op = _op3(f, phi, slots[0].left, slots[1].left, slots[2].left)
    right_op = _op3(f, phi_inv, slots[0].right, slots[1].right, slots[2].right)
    return f.dot(left_op, right_op)


def _left_action_op(e: SubalgebraEmbedding, coeff3: np.ndarray, slots) -> np.ndarray:
    f = e.field
    return _op3(f, coeff3, slots[0].left, slots[1].left, slots[2].left)


def _right_action_op(e: SubalgebraEmbedding, coeff3: np.ndarray, slots) -> np.ndarray:
    f = e.field
    return _op3(f, coeff3, slots[0].right, slots[1].right, slots[2].right)


def _require_quasi_hopf_sub(e: SubalgebraEmbedding, what: str):
    if not validate_embedding(e).flags["is_quasi_hopf_sub"]:
        raise RegimeError(
            f"{what} requires a quasi-Hopf subalgebra embedding; {e.name} is only a subalgebra"
        )


def verify_hopf_module(m: HopfModule, phi_convention: str = "std") -> AxiomReport:
    """Check the comodule counit law, φ-twisted coassociativity, and that δ
    is a K-bimodule map for the codiagonal structures.

    ``phi_convention="std"`` checks (M⊗Δ)δ·φ = φ·(δ⊗H)δ (right comodules)
    with φ = φ_K; ``"inv"`` swaps φ ↔ φ⁻¹ on both sides.
    """
    if phi_convention not in ("std", "inv"):
        raise ValueError(f"phi_convention must be 'std' or 'inv', got {phi_convention!r}")
    e = m.embedding
    _require_quasi_hopf_sub(e, "verify_hopf_module")
    f = m.field
    h = e.H
    nh = h.dim
    md = m.mdim
    delta = np.asarray(m.coaction)
    checks: List[CheckItem] = []

    def add(name: str, residual: np.ndarray):
        w = first_nonzero_witness(f, residual)
        checks.append(CheckItem(name, PASS if w is None else FAIL, w))

    coeff = e.K.phi if phi_convention == "std" else e.K.phi_inv
    if m.side == "right":
        # (M⊗ε)δ = id
        folded = f.reduce(np.tensordot(delta.reshape(md, nh, md), h.counit, (1, 0)))
        add("counit-law", f.reduce(folded - f.eye(md)))

        # (M⊗Δ)δ · φ = φ · (δ⊗H)δ
        slots = (_bimodule_slot(m.carrier), _h_slot(e), _h_slot(e))
        step1 = f.dot(f.reduce(np.kron(f.eye(md), h.comul)), delta)
        step2 = f.dot(f.reduce(np.kron(delta, f.eye(nh))), delta)
        lhs = f.dot(_right_action_op(e, coeff, slots), step1)
        rhs = f.dot(_left_action_op(e, coeff, slots), step2)
        add("coassoc", f.reduce(lhs - rhs))

        tensor_struct = tensor_bimodules(e.K.qb, m.carrier, e.h_bimodule)
    else:
        # (ε⊗N)δ = id
        folded = f.reduce(np.tensordot(delta.reshape(nh, md, md), h.counit, (0, 0)))
        add("counit-law", f.reduce(folded - f.eye(md)))

        # (H⊗δ)δ · φ = φ · (Δ⊗N)δ
        slots = (_h_slot(e), _h_slot(e), _bimodule_slot(m.carrier))
        step1 = f.dot(f.reduce(np.kron(f.eye(nh), delta)), delta)
        step2 = f.dot(f.reduce(np.kron(h.comul, f.eye(md))), delta)
        lhs = f.dot(_right_action_op(e, coeff, slots), step1)
        rhs = f.dot(_left_action_op(e, coeff, slots), step2)
        add("coassoc", f.reduce(lhs - rhs))

        tensor_struct = tensor_bimodules(e.K.qb, e.h_bimodule, m.carrier)

    res_l = []
    res_r = []
    for x in range(e.K.dim):
        res_l.append(f.reduce(f.dot(delta, m.carrier.left[x]) - f.dot(tensor_struct.left[x], delta)))
        res_r.append(f.reduce(f.dot(delta, m.carrier.right[x]) - f.dot(tensor_struct.right[x], delta)))
    add("bimodule-map-left", np.stack(res_l))
    add("bimodule-map-right", np.stack(res_r))

    return AxiomReport(subject=f"{m.side} Hopf module {m.name}", checks=checks)


# --------------------------------------------------------------------------- constructions


def cofree_hopf_module(p: BimoduleRep, e: SubalgebraEmbedding, phi_convention: str = "std") -> HopfModule:
    """The cofree right comodule P⊗H: δ = Φ⁻¹_{P,H,H} ∘ (id_P ⊗ Δ).

    Explicitly δ(p⊗h) = φ⁽⁻¹⁾pφ⁽¹⁾ ⊗ φ⁽⁻²⁾h₍₁₎φ⁽²⁾ ⊗ φ⁽⁻³⁾h₍₂₎φ⁽³⁾.
    """
    _require_quasi_hopf_sub(e, "cofree_hopf_module")
    f = e.field
    h = e.H
    carrier = tensor_bimodules(e.K.qb, p, e.h_bimodule)
    base = f.reduce(np.kron(f.eye(p.mdim), h.comul))
    slots = (_bimodule_slot(p), _h_slot(e), _h_slot(e))
    op = _phi_operator(e, slots, inverse=(phi_convention == "std"))
    coaction = f.dot(op, base)
    return HopfModule(e, carrier, coaction, side="right", name=f"cofree({p.name})")


def cofree_left_hopf_module(p: BimoduleRep, e: SubalgebraEmbedding, phi_convention: str = "std") -> HopfModule:
    """The cofree left comodule H⊗P: δ = Φ_{H,H,P} ∘ (Δ ⊗ id_P).

    Explicitly δ(h⊗p) = φ⁽¹⁾h₍₁₎φ⁽⁻¹⁾ ⊗ φ⁽²⁾h₍₂₎φ⁽⁻²⁾ ⊗ φ⁽³⁾pφ⁽⁻³⁾.
    """
    _require_quasi_hopf_sub(e, "cofree_left_hopf_module")
    f = e.field
    h = e.H
    carrier = tensor_bimodules(e.K.qb, e.h_bimodule, p)
    base = f.reduce(np.kron(h.comul, f.eye(p.mdim)))
    slots = (_h_slot(e), _h_slot(e), _bimodule_slot(p))
    op = _phi_operator(e, slots, inverse=(phi_convention != "std"))
    coaction = f.dot(op, base)
    return HopfModule(e, carrier, coaction, side="left", name=f"cofree-left({p.name})")


def twist_tensor_hopf_module(p: BimoduleRep, m: HopfModule, phi_convention: str = "std") -> HopfModule:
    """P ⊗ M with coaction δ = Φ⁻¹_{P,M,H} ∘ (id_P ⊗ δ_M).

    Explicitly δ(p⊗m) = φ⁽⁻¹⁾pφ⁽¹⁾ ⊗ φ⁽⁻²⁾m₍₀₎φ⁽²⁾ ⊗ φ⁽⁻³⁾m₍₁₎φ⁽³⁾.
    """
    if m.side != "right":
        raise ValueError("twist_tensor_hopf_module expects a right Hopf module")
    e = m.embedding
    _require_quasi_hopf_sub(e, "twist_tensor_hopf_module")
    f = e.field
    carrier = tensor_bimodules(e.K.qb, p, m.carrier)
    base = f.reduce(np.kron(f.eye(p.mdim), np.asarray(m.coaction)))
    slots = (_bimodule_slot(p), _bimodule_slot(m.carrier), _h_slot(e))
    op = _phi_operator(e, slots, inverse=(phi_convention == "std"))
    coaction = f.dot(op, base)
    return HopfModule(e, carrier, coaction, side="right", name=f"{p.name}⊗{m.name}")


def direct_sum_hopf_modules(m1: HopfModule, m2: HopfModule) -> HopfModule:
    """Block-diagonal direct sum (same embedding and side)."""
    if m1.embedding is not m2.embedding:
        raise ValueError("direct sum requires a common embedding")
    if m1.side != m2.side:
        raise ValueError("direct sum requires a common comodule side")
    e = m1.embedding
    f = e.field
    nh = e.H.dim
    d1, d2 = m1.mdim, m2.mdim
    d = d1 + d2
    left = f.zeros((e.K.dim, d, d))
    right = f.zeros((e.K.dim, d, d))
    left[:, :d1, :d1] = m1.carrier.left
    left[:, d1:, d1:] = m2.carrier.left
    right[:, :d1, :d1] = m1.carrier.right
    right[:, d1:, d1:] = m2.carrier.right
    carrier = BimoduleRep(e.K.alg, d, left, right, name=f"{m1.name}⊕{m2.name}")
    coact = f.zeros((d * nh, d)) if m1.side == "right" else f.zeros((nh * d, d))
    c1 = np.asarray(m1.coaction)
    c2 = np.asarray(m2.coaction)
    if m1.side == "right":
        r1 = c1.reshape(d1, nh, d1)
        r2 = c2.reshape(d2, nh, d2)
        full = coact.reshape(d, nh, d)
        full[:d1, :, :d1] = r1
        full[d1:, :, d1:] = r2
        coact = full.reshape(d * nh, d)
    else:
        r1 = c1.reshape(nh, d1, d1)
        r2 = c2.reshape(nh, d2, d2)
        full = coact.reshape(nh, d, d)
        full[:, :d1, :d1] = r1
        full[:, d1:, d1:] = r2
        coact = full.reshape(nh * d, d)
    return HopfModule(e, carrier, coact, side=m1.side, name=f"{m1.name}⊕{m2.name}")


# --------------------------------------------------------------------------- cotensor


def cotensor(m: HopfModule, n: HopfModule) -> Tuple[BimoduleRep, np.ndarray]:
    """The cotensor product M □_H N with its inherited K-bimodule structure.

    M is a right comodule, N a left comodule over the same embedding.  The
    carrier is the kernel of (δ_M⊗id_N) − Φ⁻¹_{M,H,N}∘(id_M⊗δ_N) inside
    M⊗N; the inclusion matrix (columns = kernel basis) is returned alongside.
    """
    if m.side != "right" or n.side != "left":
        raise ValueError("cotensor expects (right comodule, left comodule)")
    e = m.embedding
    if n.embedding is not e:
        raise ValueError("cotensor requires a common embedding")
    _require_quasi_hopf_sub(e, "cotensor")
    f = e.field
    nh = e.H.dim
    dm, dn = m.mdim, n.mdim
    f1 = f.reduce(np.kron(np.asarray(m.coaction), f.eye(dn)))
    slots = (_bimodule_slot(m.carrier), _h_slot(e), _bimodule_slot(n.carrier))
    phi_inv_op = _phi_operator(e, slots, inverse=True)
    f2 = f.dot(phi_inv_op, f.reduce(np.kron(f.eye(dm), np.asarray(n.coaction))))
    basis = kernel(f, f.reduce(f1 - f2))  # (dm·dn, d)
    d = basis.shape[1]

    codiag = tensor_bimodules(e.K.qb, m.carrier, n.carrier)
    left = f.zeros((e.K.dim, d, d))
    right = f.zeros((e.K.dim, d, d))
    for x in range(e.K.dim):
        sol = solve(f, basis, f.dot(codiag.left[x], basis))
        if sol is None:
            raise ConstructionError("cotensor subspace is not stable under the left K-action")
        left[x] = sol
        sol = solve(f, basis, f.dot(codiag.right[x], basis))
        if sol is None:
            raise ConstructionError("cotensor subspace is not stable under the right K-action")
        right[x] = sol
    carrier = BimoduleRep(e.K.alg, d, left, right, name=f"{m.name}□{n.name}")
    return carrier, basis


def verify_cotensor_iso(m: HopfModule, p: BimoduleRep, seed: int = 0, trials: int = 64):
    """Check M □_H (H⊗P) ≅ M ⊗ P as K-bimodules; returns an iso witness."""
    e = m.embedding
    _require_quasi_hopf_sub(e, "verify_cotensor_iso")
    n = cofree_left_hopf_module(p, e)
    cot, _ = cotensor(m, n)
    target = tensor_bimodules(e.K.qb, m.carrier, p)
    if cot.mdim != target.mdim:
        return IsoNo(reason=f"dimension mismatch: cotensor {cot.mdim} vs tensor {target.mdim}")
    return bimodule_iso_test(cot, target, seed=seed, trials=trials)


def structure_freeness(m: HopfModule, seed: int = 0, trials: int = 64):
    """Freeness of a Hopf module over K = H as a right H-module."""
    e = m.embedding
    if not e.is_identity():
        raise RegimeError("structure_freeness requires the identity embedding K = H")
    return freeness_check(e.H.alg, m.carrier.right_module(), seed=seed, trials=trials)
