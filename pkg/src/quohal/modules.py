"""Module and bimodule representations, Hom spaces, iso tests, freeness.

A :class:`ModuleRep` stores one matrix per algebra basis element acting on
column vectors.  The variance convention:

* left module:  ρ(e_i)ρ(e_j) = ρ(e_i·e_j);
* right module: ρ(e_i)ρ(e_j) = ρ(e_j·e_i)  (an antihomomorphism — ρ(e_i) is
  the matrix of ``m ↦ m·e_i``).

Module maps satisfy ``X ρ_M(e_i) = ρ_N(e_i) X`` for both sides, so Hom
spaces, isomorphism testing and freeness checks are side-agnostic given the
action stacks.  Isomorphism testing is randomized-with-certificate: every
"yes" carries an invertible intertwiner that is re-verified by direct
multiplication; "no" at equal dimension is only reported after exhausting
the Hom space, and otherwise the result is Unknown with a failure bound.

A :class:`BimoduleRep` carries commuting left and right actions of one
algebra; it is analyzed by viewing it as a left module over A ⊗ A^op.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .algebra import FinAlgebra, op_algebra, tensor_algebra
from .linalg import NotInvertible, invert, kernel
from .quasi import QuasiBialgebra, QuasiHopfAlgebra
from .reports import (
    AxiomReport,
    CheckItem,
    FAIL,
    FreeOfRank,
    IsoNo,
    IsoUnknown,
    IsoYes,
    NotFree,
    PASS,
    UnknownFreeness,
    first_nonzero_witness,
)

__all__ = [
    "ModuleRep",
    "BimoduleRep",
    "HomSpace",
    "is_module",
    "regular_module",
    "counit_module",
    "direct_sum_modules",
    "module_power",
    "tensor_modules",
    "restrict_module",
    "is_faithful",
    "hom_space",
    "iso_test",
    "freeness_check",
    "dual_left_module",
    "verify_bimodule",
    "regular_bimodule",
    "counit_bimodule",
    "tensor_bimodules",
    "restrict_bimodule",
    "env_module",
    "bimodule_iso_test",
]

EXHAUSTION_LIMIT = 1 << 16


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass
class ModuleRep:
    """A left or right module over ``algebra`` given by its action stack."""

    side: str
    algebra: FinAlgebra
    mdim: int
    action: np.ndarray  # (n, mdim, mdim)
    name: str = "M"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")
        f = self.algebra.field
        act = f.reduce(np.array(self.action, dtype=f.dtype))
        expected = (self.algebra.dim, self.mdim, self.mdim)
        if act.shape != expected:
            raise ValueError(f"action stack must have shape {expected}, got {act.shape}")
        self.action = _freeze(act)

    @property
    def field(self):
        return self.algebra.field

    def act(self, a: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Apply the algebra element with coordinates ``a`` to the vector ``v``."""
        f = self.field
        return f.reduce(np.dot(f.reduce(np.tensordot(a, self.action, (0, 0))), v))

    def __repr__(self) -> str:
        return f"ModuleRep({self.name}, {self.side}, mdim={self.mdim} over {self.algebra.name})"


@dataclass
class BimoduleRep:
    """Commuting left and right actions of one algebra on a carrier space."""

    algebra: FinAlgebra
    mdim: int
    left: np.ndarray   # (n, mdim, mdim)
    right: np.ndarray  # (n, mdim, mdim)
    name: str = "P"

    def __post_init__(self):
        f = self.algebra.field
        expected = (self.algebra.dim, self.mdim, self.mdim)
        left = f.reduce(np.array(self.left, dtype=f.dtype))
        right = f.reduce(np.array(self.right, dtype=f.dtype))
        if left.shape != expected:
            raise ValueError(f"left action stack must have shape {expected}, got {left.shape}")
        if right.shape != expected:
            raise ValueError(f"right action stack must have shape {expected}, got {right.shape}")
        self.left = _freeze(left)
        self.right = _freeze(right)

    @property
    def field(self):
        return self.algebra.field

    def left_module(self) -> ModuleRep:
        return ModuleRep("left", self.algebra, self.mdim, self.left.copy(), name=f"{self.name}|left")

    def right_module(self) -> ModuleRep:
        return ModuleRep("right", self.algebra, self.mdim, self.right.copy(), name=f"{self.name}|right")

    def __repr__(self) -> str:
        return f"BimoduleRep({self.name}, mdim={self.mdim} over {self.algebra.name})"


@dataclass
class HomSpace:
    """A basis of the space of module maps M → N (each an (mN, mM) matrix)."""

    source_dim: int
    target_dim: int
    basis: List[np.ndarray]

    @property
    def dim(self) -> int:
        return len(self.basis)


# --------------------------------------------------------------------------- verifiers


def is_module(m: ModuleRep) -> AxiomReport:
    """Check ρ(1) = id and multiplicativity with the right variance."""
    f = m.field
    alg = m.algebra
    act = m.action
    checks = []

    unit_mat = f.reduce(np.tensordot(alg.unit, act, (0, 0)))
    w = first_nonzero_witness(f, f.reduce(unit_mat - f.eye(m.mdim)))
    checks.append(CheckItem("action-unit", PASS if w is None else FAIL, w))

    # products[i, j] = ρ(e_i) ρ(e_j); target contracts the mult tensor with
    # the stack, reversed for right modules.
    prod = f.reduce(np.transpose(np.tensordot(act, act, (2, 1)), (0, 2, 1, 3)))
    mult = alg.mult if m.side == "left" else np.transpose(alg.mult, (1, 0, 2))
    target = f.reduce(np.tensordot(mult, act, (2, 0)))
    w = first_nonzero_witness(f, f.reduce(prod - target))
    if w is not None:
        w["basis-pair"] = w["index"][:2]
    checks.append(CheckItem("action-mult", PASS if w is None else FAIL, w))

    return AxiomReport(subject=f"{m.side} module {m.name}", checks=checks)


def verify_bimodule(b: BimoduleRep) -> AxiomReport:
    """Left/right module axioms plus elementwise commutation of the actions."""
    f = b.field
    rep_l = is_module(ModuleRep("left", b.algebra, b.mdim, b.left.copy(), name=b.name))
    rep_r = is_module(ModuleRep("right", b.algebra, b.mdim, b.right.copy(), name=b.name))
    checks = [CheckItem(f"left-{c.name}", c.status, c.witness) for c in rep_l.checks]
    checks += [CheckItem(f"right-{c.name}", c.status, c.witness) for c in rep_r.checks]

    lr = f.reduce(np.transpose(np.tensordot(b.left, b.right, (2, 1)), (0, 2, 1, 3)))
    rl = f.reduce(np.transpose(np.tensordot(b.right, b.left, (2, 1)), (2, 0, 1, 3)))
    w = first_nonzero_witness(f, f.reduce(lr - rl))
    checks.append(CheckItem("actions-commute", PASS if w is None else FAIL, w))
    return AxiomReport(subject=f"bimodule {b.name}", checks=checks)


# --------------------------------------------------------------------------- constructors


def regular_module(a: FinAlgebra, side: str) -> ModuleRep:
    """A acting on itself by left (resp. right) multiplication."""
    stack = a.left_stack if side == "left" else a.right_stack
    return ModuleRep(side, a, a.dim, stack.copy(), name=f"{a.name}|reg-{side}")


def counit_module(q: QuasiBialgebra, side: str = "left") -> ModuleRep:
    """The one-dimensional module through the counit."""
    act = q.counit.reshape(q.dim, 1, 1).copy()
    return ModuleRep(side, q.alg, 1, act, name=f"{q.name}|triv")


def direct_sum_modules(m: ModuleRep, n: ModuleRep) -> ModuleRep:
    if m.algebra is not n.algebra and m.algebra.dim != n.algebra.dim:
        raise ValueError("direct sum requires modules over the same algebra")
    if m.side != n.side:
        raise ValueError("direct sum requires modules of the same side")
    f = m.field
    d = m.mdim + n.mdim
    act = f.zeros((m.algebra.dim, d, d))
    act[:, : m.mdim, : m.mdim] = m.action
    act[:, m.mdim :, m.mdim :] = n.action
    return ModuleRep(m.side, m.algebra, d, act, name=f"{m.name}⊕{n.name}")


def module_power(m: ModuleRep, r: int) -> ModuleRep:
    if r < 1:
        raise ValueError("module_power needs r >= 1")
    out = m
    for _ in range(r - 1):
        out = direct_sum_modules(out, m)
    return ModuleRep(m.side, m.algebra, out.mdim, out.action.copy(), name=f"{m.name}^{r}")


def tensor_modules(q: QuasiBialgebra, w: ModuleRep, v: ModuleRep) -> ModuleRep:
    """Diagonal action through Δ on W ⊗ V (same side required)."""
    if w.side != v.side:
        raise ValueError(f"side mismatch: {w.side} vs {v.side}")
    if w.algebra.dim != q.dim or v.algebra.dim != q.dim:
        raise ValueError("tensor_modules requires modules over the given quasibialgebra")
    f = q.field
    n = q.dim
    kron_stack = f.reduce(np.kron(w.action, v.action))  # [(a,b)] = ρ_W(e_a) ⊗ ρ_V(e_b)
    act = f.reduce(np.tensordot(q.D.reshape(n, n * n), kron_stack, (1, 0)))
    return ModuleRep(w.side, q.alg, w.mdim * v.mdim, act, name=f"{w.name}⊗{v.name}")


def restrict_module(m: ModuleRep, incl: np.ndarray, sub: FinAlgebra) -> ModuleRep:
    """Restrict a module over H along an algebra map K → H given by ``incl``."""
    f = m.field
    act = f.reduce(np.tensordot(incl.T, m.action, (1, 0)))  # [x] = ρ(incl(e_x))
    return ModuleRep(m.side, sub, m.mdim, act, name=f"{m.name}|{sub.name}")


def dual_left_module(h: QuasiHopfAlgebra, v: ModuleRep) -> ModuleRep:
    """The dual of a left module, acting through the transpose of S.

    ⟨h·f, x⟩ = ⟨f, S(h)·x⟩, i.e. ρ*(e_i) = ρ(S(e_i))ᵀ.  The antipode being
    an antiautomorphism makes this a left module again.
    """
    if v.side != "left":
        raise ValueError("dual_left_module expects a left module")
    f = h.field
    s_applied = f.reduce(np.tensordot(h.antipode, v.action, (0, 0)))  # [i] = ρ(S(e_i))
    act = np.transpose(s_applied, (0, 2, 1)).copy()
    return ModuleRep("left", v.algebra, v.mdim, act, name=f"{v.name}*")


def regular_bimodule(a: FinAlgebra) -> BimoduleRep:
    return BimoduleRep(a, a.dim, a.left_stack.copy(), a.right_stack.copy(), name=f"{a.name}|reg")


def counit_bimodule(q: QuasiBialgebra) -> BimoduleRep:
    act = q.counit.reshape(q.dim, 1, 1).copy()
    return BimoduleRep(q.alg, 1, act, act.copy(), name=f"{q.name}|triv")


def tensor_bimodules(q: QuasiBialgebra, p1: BimoduleRep, p2: BimoduleRep) -> BimoduleRep:
    """P1 ⊗ P2 with both actions diagonal through Δ."""
    f = q.field
    n = q.dim
    d_flat = q.D.reshape(n, n * n)
    left = f.reduce(np.tensordot(d_flat, f.reduce(np.kron(p1.left, p2.left)), (1, 0)))
    right = f.reduce(np.tensordot(d_flat, f.reduce(np.kron(p1.right, p2.right)), (1, 0)))
    return BimoduleRep(q.alg, p1.mdim * p2.mdim, left, right, name=f"{p1.name}⊗{p2.name}")


def restrict_bimodule(b: BimoduleRep, incl: np.ndarray, sub: FinAlgebra) -> BimoduleRep:
    f = b.field
    left = f.reduce(np.tensordot(incl.T, b.left, (1, 0)))
    right = f.reduce(np.tensordot(incl.T, b.right, (1, 0)))
    return BimoduleRep(sub, b.mdim, left, right, name=f"{b.name}|{sub.name}")


def env_module(b: BimoduleRep, env: Optional[FinAlgebra] = None) -> Tuple[ModuleRep, FinAlgebra]:
    """View a bimodule as a left module over A ⊗ A^op.

    ``e_{(i,j)}`` acts as ``left(e_i) ∘ right(e_j)``; returns the module and
    the enveloping algebra (built once and reusable across bimodules of A).
    """
    a = b.algebra
    if env is None:
        env = tensor_algebra(a, op_algebra(a), name=f"{a.name}^env")
    f = b.field
    n = a.dim
    stack = f.reduce(
        np.matmul(b.left[:, None, :, :], b.right[None, :, :, :]).reshape(n * n, b.mdim, b.mdim)
        if f.dtype is not object
        else np.array(
            [f.dot(b.left[i], b.right[j]) for i in range(n) for j in range(n)], dtype=object
        ).reshape(n * n, b.mdim, b.mdim)
    )
    mod = ModuleRep("left", env, b.mdim, stack, name=f"{b.name}|env")
    return mod, env


# --------------------------------------------------------------------------- analysis


def is_faithful(m: ModuleRep) -> Tuple[bool, np.ndarray]:
    """Faithfulness plus a basis of the annihilator {a : ρ(a) = 0}.

    One kernel computation: columns of the (mdim², n) matrix are vec(ρ(e_i)).
    """
    f = m.field
    n = m.algebra.dim
    flat = m.action.reshape(n, m.mdim * m.mdim).T
    ann = kernel(f, flat)  # (n, k)
    return ann.shape[1] == 0, ann


def hom_space(m: ModuleRep, n: ModuleRep) -> HomSpace:
    """All X with X ρ_M(e_i) = ρ_N(e_i) X, via one kernel computation.

    Row-major vec identity: vec(AXB) = (A ⊗ Bᵀ) vec(X).
    """
    if m.side != n.side:
        raise ValueError(f"side mismatch: {m.side} vs {n.side}")
    if m.algebra.dim != n.algebra.dim:
        raise ValueError("hom_space requires modules over the same algebra")
    f = m.field
    dim_n, dim_m = n.mdim, m.mdim
    eye_n = f.eye(dim_n)
    eye_m = f.eye(dim_m)
    blocks = []
    for i in range(m.algebra.dim):
        lhs = np.kron(eye_n, m.action[i].T)
        rhs = np.kron(n.action[i], eye_m)
        blocks.append(f.reduce(lhs - rhs))
    system = np.concatenate(blocks, axis=0) if blocks else f.zeros((0, dim_n * dim_m))
    basis_cols = kernel(f, system)
    basis = [basis_cols[:, j].reshape(dim_n, dim_m) for j in range(basis_cols.shape[1])]
    for x in basis:  # exactness invariant on everything we hand out
        for i in range(m.algebra.dim):
            res = f.reduce(f.dot(x, m.action[i]) - f.dot(n.action[i], x))
            if first_nonzero_witness(f, res) is not None:
                raise AssertionError("hom_space produced a non-intertwiner (internal error)")
    return HomSpace(source_dim=dim_m, target_dim=dim_n, basis=basis)


def _intertwines(f, x: np.ndarray, m: ModuleRep, n: ModuleRep) -> bool:
    for i in range(m.algebra.dim):
        res = f.reduce(f.dot(x, m.action[i]) - f.dot(n.action[i], x))
        if first_nonzero_witness(f, res) is not None:
            return False
    return True


def _certify_iso(f, x: np.ndarray, m: ModuleRep, n: ModuleRep) -> Optional[IsoYes]:
    """Re-verify a candidate by direct multiplication before returning Yes."""
    inv = invert(f, x)
    if isinstance(inv, NotInvertible):
        return None
    if not _intertwines(f, x, m, n):
        return None
    return IsoYes(matrix=x)


def iso_test(m: ModuleRep, n: ModuleRep, seed: int = 0, trials: int = 64):
    """Isomorphism test with verified witnesses.

    Samples random Hom-space elements and tests invertibility; after
    ``trials`` failures, enumerates the whole Hom space when
    |field|^dim(Hom) ≤ 2¹⁶, else returns Unknown with the bound
    p_fail ≤ (mdim/|field|)^trials (valid when an iso exists).
    """
    if m.mdim != n.mdim:
        return IsoNo(reason=f"dimension mismatch: {m.mdim} vs {n.mdim}")
    f = m.field
    if m.mdim == 0:
        return IsoYes(matrix=f.zeros((0, 0)))
    homs = hom_space(m, n)
    if homs.dim == 0:
        return IsoNo(reason="hom space is zero")
    stack = np.array([np.asarray(b) for b in homs.basis], dtype=f.dtype)
    rng = random.Random(seed)
    size = getattr(f, "p", None)
    # Over the rationals, sample integer coefficients from a 2^16-point set so
    # the Schwartz–Zippel failure bound stays meaningful.
    sample = (lambda: f.random_scalar(rng)) if size is not None else (lambda: f.scalar(rng.randrange(EXHAUSTION_LIMIT)))
    for _ in range(trials):
        coeffs = f.asarray([sample() for _ in range(homs.dim)])
        x = f.reduce(np.tensordot(coeffs, stack, (0, 0)))
        res = _certify_iso(f, x, m, n)
        if res is not None:
            return res
    if size is not None and size ** homs.dim <= EXHAUSTION_LIMIT:
        for combo in itertools.product(range(size), repeat=homs.dim):
            if all(c == 0 for c in combo):
                continue
            coeffs = f.asarray(list(combo))
            x = f.reduce(np.tensordot(coeffs, stack, (0, 0)))
            res = _certify_iso(f, x, m, n)
            if res is not None:
                return res
        return IsoNo(reason="no invertible intertwiner (hom space exhausted)")
    denom = size if size is not None else EXHAUSTION_LIMIT
    bound = f"({m.mdim}/{denom})^{trials}"
    return IsoUnknown(failure_bound=bound)


def freeness_check(k: FinAlgebra, m: ModuleRep, seed: int = 0, trials: int = 64):
    """Is M a free K-module?  Divisibility first, then iso with K^r.

    On success the witness holds a free generating set: column j is the image
    of the unit of the j-th copy of K under a verified iso K^r ≅ M.
    """
    n = k.dim
    if m.mdim % n != 0:
        return NotFree(reason=f"dim {m.mdim} not divisible by dim {n}")
    r = m.mdim // n
    if r == 0:
        return FreeOfRank(rank=0, witness=m.field.zeros((0, 0)))
    reg = module_power(regular_module(k, m.side), r) if r > 1 else regular_module(k, m.side)
    res = iso_test(reg, m, seed=seed, trials=trials)
    if isinstance(res, IsoYes):
        f = m.field
        gens = f.zeros((m.mdim, r))
        for j in range(r):
            emb = f.zeros((n * r,))
            emb[j * n : (j + 1) * n] = k.unit
            gens[:, j] = f.dot(np.asarray(res.matrix), emb)
        return FreeOfRank(rank=r, witness=gens)
    if isinstance(res, IsoNo):
        return NotFree(reason=f"not isomorphic to free module of rank {r}: {res.reason}")
    return UnknownFreeness(reason=f"iso with free module of rank {r} undecided: {res.failure_bound}")


def bimodule_iso_test(b1: BimoduleRep, b2: BimoduleRep, seed: int = 0, trials: int = 64):
    """Bimodule isomorphism via the enveloping algebra A ⊗ A^op."""
    if b1.algebra.dim != b2.algebra.dim:
        raise ValueError("bimodule_iso_test requires bimodules over the same algebra")
    m1, env = env_module(b1)
    m2, _ = env_module(b2, env=env)
    return iso_test(m1, m2, seed=seed, trials=trials)
