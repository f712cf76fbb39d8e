"""Concrete verified instances: group algebras, cocycle-twisted dual group
algebras, and the embeddings the test suite and CLI exercise.

Groups are explicit multiplication tables.  A 3-cocycle on G with values in
k* determines the dual quasi-Hopf algebra k^G_ω: the diagonal function
algebra with Δ(e_g) = Σ_{ab=g} e_a⊗e_b, ε(e_g) = δ_{g,1}, associator
φ = Σ ω(a,b,c) e_a⊗e_b⊗e_c, and S(e_g) = e_{g⁻¹}.  α is fixed to 1 and β is
solved from the quasi-antipode identities as a linear system — never guessed
— and every constructor re-verifies its output before returning it.

Named instances (default field GF(13)):

========== ===========================================================
kZ2, kZ4   group algebras of Z/2, Z/4 (trivial associator)
kS3        group algebra of the symmetric group on 3 letters
fZ2w       k^{Z/2}_ω with ω(1,1,1) = −1
fZ4w       k^{Z/4}_ω with the standard order-4 cocycle (ζ = 5 in GF(13))
fZ2w_x_kZ2 embedding fZ2w ↪ fZ2w ⊗ kZ2 as K⊗1
coset_Z4_Z2 embedding k^{Z/2}_ω ↪ k^{Z/4}_ω' along cosets of {0,2}
========== ===========================================================

The coset instance deliberately pairs a Z/4 cocycle that is *not* pulled
back from the quotient, so the embedding is a subalgebra and subcoalgebra
but does not share the associator.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import FinAlgebra
from .errors import ConstructionError
from .field import PrimeField, RationalField
from .hopfmod import SubalgebraEmbedding, tensor_embedding, validate_embedding
from .linalg import solve
from .quasi import (
    QuasiBialgebra,
    QuasiHopfAlgebra,
    verify_quasiantipode,
    verify_quasibialgebra,
)
from .reports import AxiomReport, CheckItem, FAIL, PASS, first_nonzero_witness

__all__ = [
    "GroupTable",
    "Cocycle3",
    "check_3cocycle",
    "trivial_cocycle",
    "standard_cocycle",
    "pullback_cocycle",
    "group_algebra",
    "dual_group_algebra",
    "coset_embedding",
    "tensor_embedding",
    "ZOO_NAMES",
    "zoo_instance",
    "zoo_quasi_hopf",
    "default_field",
]


def default_field() -> PrimeField:
    return PrimeField(13)


class GroupTable:
    """A finite group as an explicit multiplication table.

    ``table[i, j]`` is the index of the product of elements i and j.  The
    constructor checks all group axioms and locates the identity and the
    inverse table.
    """

    def __init__(self, table: Sequence[Sequence[int]], name: str = "G"):
        tbl = np.array(table, dtype=np.int64)
        if tbl.ndim != 2 or tbl.shape[0] != tbl.shape[1]:
            raise ValueError("group table must be square")
        n = tbl.shape[0]
        if tbl.min() < 0 or tbl.max() >= n:
            raise ValueError("group table entries must be element indices")
        identity = None
        for e in range(n):
            if all(tbl[e, x] == x and tbl[x, e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise ValueError("group table has no identity element")
        inverse = np.full(n, -1, dtype=np.int64)
        for x in range(n):
            for y in range(n):
                if tbl[x, y] == identity and tbl[y, x] == identity:
                    inverse[x] = y
                    break
            if inverse[x] < 0:
                raise ValueError(f"element {x} has no inverse")
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if tbl[tbl[x, y], z] != tbl[x, tbl[y, z]]:
                        raise ValueError(f"group table not associative at ({x},{y},{z})")
        self.n = int(n)
        self.table = tbl
        self.table.setflags(write=False)
        self.identity = int(identity)
        self.inverse = inverse
        self.inverse.setflags(write=False)
        self.name = name

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def order_of(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    @classmethod
    def cyclic(cls, n: int) -> "GroupTable":
        tbl = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls(tbl, name=f"Z{n}")

    @classmethod
    def symmetric3(cls) -> "GroupTable":
        perms = sorted(itertools.permutations(range(3)))
        index = {p: i for i, p in enumerate(perms)}
        tbl = [[0] * 6 for _ in range(6)]
        for i, p in enumerate(perms):
            for j, q in enumerate(perms):
                comp = tuple(p[q[t]] for t in range(3))  # (p∘q)(t)
                tbl[i][j] = index[comp]
        return cls(tbl, name="S3")

    def is_normal(self, subset: Sequence[int]) -> bool:
        s = set(int(x) for x in subset)
        if self.identity not in s:
            return False
        for x in s:
            for y in s:
                if self.mul(x, y) not in s:
                    return False
        return all(self.mul(self.mul(g, x), self.inv(g)) in s for g in range(self.n) for x in s)

    def cosets(self, subset: Sequence[int]) -> List[Tuple[int, ...]]:
        """Left cosets of a normal subgroup, sorted by minimal element."""
        s = sorted(set(int(x) for x in subset))
        seen: Dict[int, Tuple[int, ...]] = {}
        out: List[Tuple[int, ...]] = []
        for g in range(self.n):
            if g in seen:
                continue
            cs = tuple(sorted(self.mul(g, x) for x in s))
            for h in cs:
                seen[h] = cs
            out.append(cs)
        return sorted(out, key=lambda c: c[0])

    def quotient(self, subset: Sequence[int]) -> Tuple["GroupTable", np.ndarray]:
        """Quotient group by a normal subgroup and the projection index map."""
        if not self.is_normal(subset):
            raise ValueError("subset is not a normal subgroup")
        cosets = self.cosets(subset)
        proj = np.zeros(self.n, dtype=np.int64)
        for ci, cs in enumerate(cosets):
            for g in cs:
                proj[g] = ci
        q = len(cosets)
        tbl = [[0] * q for _ in range(q)]
        for ci, cs in enumerate(cosets):
            for cj, ct in enumerate(cosets):
                tbl[ci][cj] = int(proj[self.mul(cs[0], ct[0])])
        return GroupTable(tbl, name=f"{self.name}/N"), proj


class Cocycle3:
    """A normalized 3-cochain on a group with values in the field's units.

    ``values[a, b, c]`` is ω(a, b, c); whether it actually satisfies the
    cocycle identity is checked by :func:`check_3cocycle`, not assumed.
    """

    def __init__(self, group: GroupTable, field, values, name: str = "ω"):
        self.group = group
        self.field = field
        vals = field.reduce(np.array(values, dtype=field.dtype))
        if vals.shape != (group.n,) * 3:
            raise ValueError(f"cocycle values must have shape {(group.n,) * 3}")
        vals.setflags(write=False)
        self.values = vals
        self.name = name

    @property
    def normalized(self) -> bool:
        f, g = self.field, self.group
        e = g.identity
        one = f.scalar(1)
        n = g.n
        for a in range(n):
            for b in range(n):
                for (x, y, z) in ((e, a, b), (a, e, b), (a, b, e)):
                    if not f.is_zero(f.sub(self.values[x, y, z], one)):
                        return False
        return True


def check_3cocycle(w: Cocycle3) -> AxiomReport:
    """Exhaustively check invertibility, normalization, and the cocycle
    identity ω(h,k,l)·ω(g,hk,l)·ω(g,h,kl)⁻¹·ω(gh,k,l)⁻¹·ω(g,h,k) = 1."""
    f, g = w.field, w.group
    n = g.n
    checks: List[CheckItem] = []

    bad = None
    for idx in np.ndindex(n, n, n):
        if f.is_zero(w.values[idx]):
            bad = idx
            break
    checks.append(
        CheckItem("values-invertible", PASS if bad is None else FAIL,
                  None if bad is None else {"index": [int(i) for i in bad], "value": f.format(f.scalar(0))})
    )
    if bad is not None:
        return AxiomReport(subject=f"3-cocycle {w.name} on {g.name}", checks=checks)

    checks.append(CheckItem("normalized", PASS if w.normalized else FAIL))

    one = f.scalar(1)
    witness = None
    for gg in range(n):
        for h in range(n):
            for k in range(n):
                for l in range(n):
                    v = f.mul(w.values[h, k, l], w.values[gg, g.mul(h, k), l])
                    v = f.mul(v, f.inv(w.values[gg, h, g.mul(k, l)]))
                    v = f.mul(v, f.inv(w.values[g.mul(gg, h), k, l]))
                    v = f.mul(v, w.values[gg, h, k])
                    if not f.is_zero(f.sub(v, one)):
                        witness = {"quadruple": [gg, h, k, l], "value": f.format(v)}
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    checks.append(CheckItem("cocycle-identity", PASS if witness is None else FAIL, witness))
    return AxiomReport(subject=f"3-cocycle {w.name} on {g.name}", checks=checks)


def trivial_cocycle(g: GroupTable, field) -> Cocycle3:
    vals = field.zeros((g.n,) * 3)
    vals[...] = field.scalar(1)
    return Cocycle3(g, field, vals, name="1")


def _primitive_root_of_unity(field, n: int):
    """Smallest-representative primitive n-th root of unity, or None."""
    if n == 1:
        return field.scalar(1)
    if isinstance(field, RationalField):
        return field.scalar(-1) if n == 2 else None
    p = field.p
    if (p - 1) % n != 0:
        return None
    divisors = [n // q for q in range(2, n + 1) if n % q == 0 and _is_prime(q)]
    for cand in range(2, p):
        if pow(cand, n, p) != 1:
            continue
        if all(pow(cand, d, p) != 1 for d in divisors):
            return field.scalar(cand)
    return None


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, int(q ** 0.5) + 1))


def standard_cocycle(g: GroupTable, field, name: str = "ω") -> Cocycle3:
    """The standard cocycle ω(x^a, x^b, x^c) = ζ^{a⌊(b+c)/n⌋} on a cyclic
    group, with ζ the smallest primitive n-th root of unity in the field."""
    n = g.n
    gen = next((x for x in range(n) if g.order_of(x) == n), None)
    if gen is None:
        raise ConstructionError(f"{g.name} is not cyclic; the standard cocycle needs a generator")
    zeta = _primitive_root_of_unity(field, n)
    if zeta is None:
        raise ConstructionError(f"field has no primitive root of unity of order {n}")
    exponent = np.zeros(n, dtype=np.int64)
    x = g.identity
    for a in range(n):
        exponent[x] = a
        x = g.mul(x, gen)
    vals = field.zeros((n,) * 3)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                a, b, c = exponent[i], exponent[j], exponent[k]
                e = int(a) * ((int(b) + int(c)) // n)
                v = field.scalar(1)
                for _ in range(e):
                    v = field.mul(v, zeta)
                vals[i, j, k] = v
    return Cocycle3(g, field, vals, name=name)


def pullback_cocycle(g: GroupTable, proj: np.ndarray, w_quotient: Cocycle3, name: str = "π*ω") -> Cocycle3:
    """Pull a quotient cocycle back along a projection index map."""
    n = g.n
    f = w_quotient.field
    vals = f.zeros((n,) * 3)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                vals[i, j, k] = w_quotient.values[proj[i], proj[j], proj[k]]
    return Cocycle3(g, f, vals, name=name)


def _reverify(h: QuasiHopfAlgebra) -> QuasiHopfAlgebra:
    rep1 = verify_quasibialgebra(h.qb)
    rep2 = verify_quasiantipode(h)
    bad = [c.name for c in rep1.failures] + [c.name for c in rep2.failures]
    if bad:
        raise ConstructionError(f"constructed instance {h.name} fails verification: {bad}")
    return h


def group_algebra(g: GroupTable, field=None, name: str = "") -> QuasiHopfAlgebra:
    """The group Hopf algebra kG: Δ(g) = g⊗g, trivial associator, S(g) = g⁻¹."""
    f = field if field is not None else default_field()
    n = g.n
    mult = f.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            mult[i, j, g.mul(i, j)] = f.scalar(1)
    unit = f.zeros((n,))
    unit[g.identity] = f.scalar(1)
    comul = f.zeros((n * n, n))
    for i in range(n):
        comul[i * n + i, i] = f.scalar(1)
    counit = f.zeros((n,))
    counit[...] = f.scalar(1)
    assoc = f.reduce(np.kron(unit, np.kron(unit, unit)))
    alg = FinAlgebra(f, mult, unit, name=name or f"k{g.name}")
    qb = QuasiBialgebra(alg, comul, counit, assoc, assoc.copy())
    antipode = f.zeros((n, n))
    for i in range(n):
        antipode[g.inv(i), i] = f.scalar(1)
    alpha = unit.copy()
    beta = unit.copy()
    return _reverify(QuasiHopfAlgebra(qb, antipode, alpha, beta))


def dual_group_algebra(g: GroupTable, w: Cocycle3, name: str = "") -> QuasiHopfAlgebra:
    """The dual quasi-Hopf algebra k^G_ω with α = 1 and β solved linearly.

    The quasi-antipode identities with α = 1 are affine-linear in β once S
    is fixed to e_g ↦ e_{g⁻¹}: the two comultiplication identities are
    homogeneous constraints, the two associator zigzags are inhomogeneous.
    The stacked system is solved exactly; no solution is a construction
    error (it cannot happen for a normalized cocycle).
    """
    if w.group is not g:
        raise ValueError("cocycle is defined on a different group table")
    rep = check_3cocycle(w)
    if not rep.ok:
        raise ConstructionError(
            f"cocycle {w.name} fails: {[c.name for c in rep.failures]}"
        )
    f = w.field
    n = g.n
    mult = f.zeros((n, n, n))
    for i in range(n):
        mult[i, i, i] = f.scalar(1)
    unit = f.zeros((n,))
    unit[...] = f.scalar(1)
    comul = f.zeros((n * n, n))
    for a in range(n):
        for b in range(n):
            comul[a * n + b, g.mul(a, b)] = f.scalar(1)
    counit = f.zeros((n,))
    counit[g.identity] = f.scalar(1)
    assoc = f.zeros((n ** 3,))
    assoc_inv = f.zeros((n ** 3,))
    for idx in np.ndindex(n, n, n):
        a, b, c = idx
        flat = (a * n + b) * n + c
        assoc[flat] = w.values[idx]
        assoc_inv[flat] = f.inv(w.values[idx])
    alg = FinAlgebra(f, mult, unit, name=name or f"f{g.name}w")
    qb = QuasiBialgebra(alg, comul, counit, assoc, assoc_inv)
    antipode = f.zeros((n, n))
    for i in range(n):
        antipode[g.inv(i), i] = f.scalar(1)
    alpha = unit.copy()
    beta = _solve_beta(qb, antipode, alpha)
    return _reverify(QuasiHopfAlgebra(qb, antipode, alpha, beta))


def _solve_beta(qb: QuasiBialgebra, antipode: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    """Solve the quasi-antipode identities for β with S and α given.

    Checks the β-free identity Σ S(h₍₁₎)αh₍₂₎ = ε(h)α first, then stacks
    the linear conditions:

    * Σ h₍₁₎·β·S(h₍₂₎) − ε(h)β = 0 for every basis element h,
    * Σ φ⁽¹⁾·β·(S(φ⁽²⁾)αφ⁽³⁾) = 1,
    * Σ (S(φ⁽⁻¹⁾)αφ⁽⁻²⁾)·β·S(φ⁽⁻³⁾) = 1.
    """
    f = qb.field
    n = qb.dim
    alg = qb.alg
    left, right = alg.left_stack, alg.right_stack
    r_s = f.reduce(np.tensordot(antipode, right, (0, 0)))  # r_s[b] = right mult by S(e_b)
    l_s = f.reduce(np.tensordot(antipode, left, (0, 0)))   # l_s[a] = left mult by S(e_a)
    s_alpha = f.reduce(np.tensordot(l_s, alpha, (2, 0)))   # s_alpha[a] = S(e_a)·α
    d = qb.D

    # β-free identity: Σ D[h,a,b] · S(e_a)·α·e_b = ε(h)·α
    sab = f.reduce(np.tensordot(s_alpha, right, (1, 2)))   # sab[a, b, l] = (S(e_a)·α·e_b)_l
    lhs = f.reduce(np.tensordot(d, sab, ([1, 2], [0, 1])))
    rhs = f.reduce(np.outer(qb.counit, alpha))
    if first_nonzero_witness(f, f.reduce(lhs - rhs)) is not None:
        raise ConstructionError("no quasi-antipode with α = 1: the β-free identity fails")

    # Σ D[h,a,b] L(e_a)R(S(e_b)) β = ε(h) β, stacked over h
    lr = np.transpose(f.reduce(np.tensordot(left, r_s, (2, 1))), (0, 2, 1, 3))  # [a, b, i, j]
    m_stack = f.reduce(np.tensordot(d, lr, ([1, 2], [0, 1])))                   # [h, i, j]
    m_stack = f.reduce(m_stack - qb.counit[:, None, None] * f.eye(n)[None, :, :])

    phi, phi_inv = qb.phi, qb.phi_inv
    b1 = f.zeros((n, n))
    b2 = f.zeros((n, n))
    for idx in np.ndindex(n, n, n):
        a, b, c = idx
        v1 = phi[idx]
        if not f.is_zero(v1):
            tail_vec = f.dot(right[c], s_alpha[b])         # S(φ⁽²⁾)αφ⁽³⁾ factor
            b1 = f.reduce(b1 + v1 * f.dot(left[a], _right_mult_matrix(f, right, tail_vec)))
        v2 = phi_inv[idx]
        if not f.is_zero(v2):
            head_vec = f.dot(right[b], s_alpha[a])         # S(φ⁽⁻¹⁾)αφ⁽⁻²⁾ factor
            b2 = f.reduce(b2 + v2 * f.dot(_left_mult_matrix(f, left, head_vec), r_s[c]))

    a_mat = f.reduce(np.concatenate([m_stack.reshape(n * n, n), b1, b2], axis=0))
    b_vec = f.reduce(np.concatenate([f.zeros((n * n,)), alg.unit, alg.unit]))
    beta = solve(f, a_mat, b_vec)
    if beta is None:
        raise ConstructionError("quasi-antipode identities have no β solution with α = 1")
    return f.reduce(beta)


def _right_mult_matrix(f, right_stack: np.ndarray, v: np.ndarray) -> np.ndarray:
    return f.reduce(np.tensordot(v, right_stack, (0, 0)))


def _left_mult_matrix(f, left_stack: np.ndarray, v: np.ndarray) -> np.ndarray:
    return f.reduce(np.tensordot(v, left_stack, (0, 0)))


def coset_embedding(g: GroupTable, n_subset: Sequence[int], w_h: Cocycle3, w_k: Cocycle3) -> SubalgebraEmbedding:
    """Embed k^{G/N}_{w_k} into k^G_{w_h} by e_coset ↦ Σ_{x ∈ coset} e_x.

    The inclusion is always an algebra and coalgebra embedding; whether the
    associators match (w_h a pullback of w_k) is recomputed by
    validate_embedding, not assumed.
    """
    if not g.is_normal(n_subset):
        raise ConstructionError("coset_embedding requires a normal subgroup")
    q, proj = g.quotient(n_subset)
    if w_h.group is not g:
        raise ValueError("w_h must live on G")
    if w_k.group.n != q.n or not np.array_equal(w_k.group.table, q.table):
        raise ValueError("w_k must live on the quotient group G/N")
    f = w_h.field
    if w_k.field != f:
        raise ValueError("cocycles must share a field")
    h_alg = dual_group_algebra(g, w_h)
    k_alg = dual_group_algebra(q, Cocycle3(q, f, w_k.values, name=w_k.name))
    incl = f.zeros((g.n, q.n))
    for x in range(g.n):
        incl[x, proj[x]] = f.scalar(1)
    emb = SubalgebraEmbedding(k_alg, h_alg, incl, name=f"{k_alg.name}⊆{h_alg.name}")
    validate_embedding(emb)  # raises EmbeddingError on hard failure
    return emb


ZOO_NAMES = ("kZ2", "kZ4", "kS3", "fZ2w", "fZ4w", "fZ2w_x_kZ2", "coset_Z4_Z2")


def zoo_instance(name: str, field=None) -> Union[QuasiHopfAlgebra, SubalgebraEmbedding]:
    """Build a named instance; embeddings return SubalgebraEmbedding."""
    f = field if field is not None else default_field()
    if name == "kZ2":
        return group_algebra(GroupTable.cyclic(2), f, name="kZ2")
    if name == "kZ4":
        return group_algebra(GroupTable.cyclic(4), f, name="kZ4")
    if name == "kS3":
        return group_algebra(GroupTable.symmetric3(), f, name="kS3")
    if name == "fZ2w":
        g = GroupTable.cyclic(2)
        return dual_group_algebra(g, standard_cocycle(g, f), name="fZ2w")
    if name == "fZ4w":
        g = GroupTable.cyclic(4)
        return dual_group_algebra(g, standard_cocycle(g, f), name="fZ4w")
    if name == "fZ2w_x_kZ2":
        k = zoo_instance("fZ2w", f)
        aux = group_algebra(GroupTable.cyclic(2), f, name="kZ2")
        return tensor_embedding(k, aux)
    if name == "coset_Z4_Z2":
        g = GroupTable.cyclic(4)
        q = GroupTable.cyclic(2)
        return coset_embedding(g, (0, 2), standard_cocycle(g, f), standard_cocycle(q, f))
    raise KeyError(f"unknown zoo instance {name!r}; known: {', '.join(ZOO_NAMES)}")


def zoo_quasi_hopf(name: str, field=None) -> QuasiHopfAlgebra:
    """The quasi-Hopf algebra behind a name (H of an embedding instance)."""
    obj = zoo_instance(name, field)
    return obj.H if isinstance(obj, SubalgebraEmbedding) else obj
