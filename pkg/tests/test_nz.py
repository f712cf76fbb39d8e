"""Theorem-level checks: freeness over subalgebras, Hopf-module freeness,
the tensor-faithful freeness criterion, and semisimplicity descent.

The freeness witnesses the theorems return are re-verified here with an
independent integer-arithmetic orbit-rank oracle: a claimed generating set
really generates iff the K-orbit of the generators spans the module.
"""

import numpy as np
import pytest

from quohal.errors import RegimeError
from quohal.field import PrimeField
from quohal.hopfmod import (
    HopfModule,
    SubalgebraEmbedding,
    cofree_hopf_module,
    identity_embedding,
    tensor_embedding,
    twist_tensor_hopf_module,
)
from quohal.modules import counit_module, module_power, regular_module
from quohal.modules import regular_bimodule
from quohal.nz import auxthm_check, hopf_module_freeness, nz_freeness, semisimple_descent
from quohal.reports import CONFIRMED, REFUTED, UNDECIDED
from quohal.zoo import GroupTable, group_algebra, zoo_instance

F13 = PrimeField(13)

NZ_HYPOTHESES = ["embedding-valid", "H-verified", "K-verified", "K-finite-dimensional"]
HM_HYPOTHESES = ["embedding-quasi-hopf-sub", "H-verified", "K-verified",
                 "hopf-module-axioms", "finitely-generated"]
AUX_HYPOTHESES = ["K-verified", "V-faithful", "finitely-generated", "tensor-power-iso"]
SD_HYPOTHESES = ["embedding-valid", "is-subcoalgebra", "H-verified", "K-verified", "H-semisimple"]


# ------------------------------------------------------------- oracles


def gf_mat_rank(rows_in, p):
    rows = [[int(x) % p for x in row] for row in rows_in]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                fac = rows[i][c]
                rows[i] = [(a - fac * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def orbit_spans(action_stacks, generators, p):
    """Do the vectors {a_x · g_j} span the whole carrier? (int arithmetic)"""
    rows = []
    for g in generators:
        for ax in action_stacks:
            rows.append([sum(int(ax[r][c]) * g[c] for c in range(len(g))) % p
                         for r in range(len(ax))])
    dim = len(action_stacks[0])
    return gf_mat_rank(rows, p) == dim


def idempotent_embedding_3_in_4():
    """A verified algebra embedding kZ3 → kZ4 over GF(13) with 3 ∤ 4.

    kZ3 ≅ k³ via its primitive idempotents (cube roots of unity 1, 3, 9);
    send them to F_0, F_1, F_2+F_3 where F_j are the primitive idempotents
    of kZ4 (fourth roots of unity, ζ = 5).  Injective, unital,
    multiplicative — but no coalgebra compatibility, and the dimensions
    already rule freeness bookkeeping out.
    """
    p = 13
    k3 = group_algebra(GroupTable.cyclic(3), F13, name="kZ3")
    k4 = zoo_instance("kZ4", F13)
    inv3, inv4 = pow(3, p - 2, p), pow(4, p - 2, p)
    z3, z4 = 3, 5
    # columns of emat = idempotents of kZ3 in the group basis
    emat = [[(inv3 * pow(z3, (-j * k) % 3, p)) % p for j in range(3)] for k in range(3)]
    fmat = [[(inv4 * pow(z4, (-j * k) % 4, p)) % p for j in range(4)] for k in range(4)]
    targets = [
        [fmat[r][0] for r in range(4)],
        [fmat[r][1] for r in range(4)],
        [(fmat[r][2] + fmat[r][3]) % p for r in range(4)],
    ]
    # incl(e_k) = Σ_j (emat⁻¹)[j,k] · targets[j]; inverse DFT: (emat⁻¹)[j,k] = ζ³^{jk}
    incl = F13.zeros((4, 3))
    for kcol in range(3):
        for j in range(3):
            c = pow(z3, (j * kcol) % 3, p)
            for r in range(4):
                incl[r, kcol] = (int(incl[r, kcol]) + c * targets[j][r]) % p
    e = SubalgebraEmbedding(k3, k4, incl, name="kZ3-in-kZ4")
    # sanity: really unital and multiplicative (validated independently below)
    return e


def test_idempotent_embedding_is_algebra_map():
    e = idempotent_embedding_3_in_4()
    p = 13
    incl = np.asarray(e.incl)
    mult3 = np.asarray(e.K.alg.mult)
    mult4 = np.asarray(e.H.alg.mult)
    # unital
    img_unit = [sum(int(incl[r, c]) * int(e.K.alg.unit[c]) for c in range(3)) % p for r in range(4)]
    assert img_unit == [int(x) for x in e.H.alg.unit]
    # multiplicative on all basis pairs
    for i in range(3):
        for j in range(3):
            prod_k = [int(mult3[i, j, t]) for t in range(3)]
            lhs = [sum(int(incl[r, t]) * prod_k[t] for t in range(3)) % p for r in range(4)]
            ai = [int(incl[r, i]) for r in range(4)]
            aj = [int(incl[r, j]) for r in range(4)]
            rhs = [0] * 4
            for a in range(4):
                for b in range(4):
                    ab = ai[a] * aj[b]
                    if ab % p:
                        for t in range(4):
                            rhs[t] = (rhs[t] + ab * int(mult4[a, b, t])) % p
            assert lhs == rhs, (i, j)
    assert gf_mat_rank([[int(incl[r, c]) for c in range(3)] for r in range(4)], p) == 3


# ------------------------------------------------------------- nz freeness


def test_nz_identity_embedding_rank_one(zoo13):
    rep = nz_freeness(identity_embedding(zoo13["fZ2w"]))
    assert rep.conclusion == CONFIRMED and rep.confirmed
    assert [h.name for h in rep.hypotheses] == NZ_HYPOTHESES
    assert rep.hypotheses_met
    assert rep.witnesses["rank"] == 1
    assert rep.witnesses["left"]["free"] and rep.witnesses["right"]["free"]


def test_nz_tensor_embedding_rank_two(zoo13):
    rep = nz_freeness(zoo13["fZ2w_x_kZ2"])
    assert rep.conclusion == CONFIRMED
    assert rep.witnesses["rank"] == 2
    assert rep.witnesses["left"]["rank"] == 2 and rep.witnesses["right"]["rank"] == 2


def test_nz_coset_embedding_rank_two_with_verified_generators(zoo13):
    e = zoo13["coset_Z4_Z2"]
    rep = nz_freeness(e, seed=0)
    assert rep.conclusion == CONFIRMED
    assert rep.witnesses["rank"] == 2
    # re-verify the returned generators with the int orbit oracle
    for side, stacks in (("right", e.rhk_stack), ("left", e.lhk_stack)):
        gens = [[int(x) for x in col] for col in
                np.array(rep.witnesses[side]["generators"], dtype=object)]
        assert len(gens) == 2
        assert orbit_spans([np.asarray(s) for s in stacks], gens, 13), side


def test_nz_seed_determinism(zoo13):
    a = nz_freeness(zoo13["coset_Z4_Z2"], seed=3).to_json()
    b = nz_freeness(zoo13["coset_Z4_Z2"], seed=3).to_json()
    assert a == b


def test_nz_divisibility_violation_is_reported_as_artifact_bug():
    rep = nz_freeness(idempotent_embedding_3_in_4())
    assert rep.hypotheses_met  # the embedding itself is a valid algebra map
    assert rep.conclusion == REFUTED
    assert "3 does not divide" in rep.note
    assert "artifact bug" in rep.note


# ------------------------------------------------------------- hopf-module freeness


def test_hopf_module_freeness_dim8_rank4(zoo13):
    h = zoo13["fZ2w"]
    e = identity_embedding(h)
    reg = regular_bimodule(h.alg)
    m = twist_tensor_hopf_module(reg, cofree_hopf_module(reg, e))
    rep = hopf_module_freeness(m)
    assert [x.name for x in rep.hypotheses] == HM_HYPOTHESES
    assert rep.conclusion == CONFIRMED
    assert rep.witnesses["rank"] == 4
    assert rep.witnesses["left"]["free"]


def test_hopf_module_freeness_tensor_embedding(zoo13):
    e = zoo13["fZ2w_x_kZ2"]
    m = cofree_hopf_module(regular_bimodule(e.K.alg), e)
    assert m.mdim == 8
    rep = hopf_module_freeness(m)
    assert rep.conclusion == CONFIRMED
    assert rep.witnesses["rank"] == 4


def test_hopf_module_freeness_fz4w(zoo13):
    h = zoo13["fZ4w"]
    m = cofree_hopf_module(regular_bimodule(h.alg), identity_embedding(h))
    rep = hopf_module_freeness(m)
    assert rep.conclusion == CONFIRMED
    assert rep.witnesses["rank"] == 4


def test_hopf_module_freeness_refuses_plain_subalgebra(zoo13):
    e = zoo13["coset_Z4_Z2"]
    coaction = e.field.zeros((e.K.dim * e.H.dim, e.K.dim))
    m = HopfModule(e, regular_bimodule(e.K.alg), coaction, side="right", name="X")
    with pytest.raises(RegimeError) as exc:
        hopf_module_freeness(m)
    msg = str(exc.value)
    assert "shares_associator" in msg or "assoc_compatible" in msg


def test_hopf_module_freeness_bad_coaction_undecided(zoo13):
    h = zoo13["fZ2w"]
    e = identity_embedding(h)
    good = cofree_hopf_module(regular_bimodule(h.alg), e)
    bad = np.asarray(good.coaction).copy()
    bad[1, 1] = h.field.add(bad[1, 1], 1)
    m = HopfModule(e, good.carrier, bad, side="right", name="bad")
    rep = hopf_module_freeness(m)
    assert not rep.hypotheses_met
    assert rep.conclusion == UNDECIDED
    assert "hypotheses not met" in rep.note


# ------------------------------------------------------------- aux criterion


def test_auxthm_regular_pair_confirmed(zoo13):
    h = zoo13["fZ2w"]
    w = regular_module(h.alg, "right")
    v = regular_module(h.alg, "right")
    rep = auxthm_check(h, w, v)
    assert [x.name for x in rep.hypotheses] == AUX_HYPOTHESES
    assert rep.conclusion == CONFIRMED
    assert rep.witnesses["rank"] == 1


def test_auxthm_power_confirmed(zoo13):
    h = zoo13["fZ2w"]
    w = module_power(regular_module(h.alg, "right"), 2)
    v = regular_module(h.alg, "right")
    rep = auxthm_check(h, w, v)
    assert rep.conclusion == CONFIRMED
    assert rep.witnesses["rank"] == 2


def test_auxthm_non_faithful_v_not_asserted(zoo13):
    h = zoo13["fZ2w"]
    w = regular_module(h.alg, "right")
    v = counit_module(h.qb, "right")
    rep = auxthm_check(h, w, v)
    faith = next(x for x in rep.hypotheses if x.name == "V-faithful")
    assert faith.status == "fail"
    assert faith.witness == {"annihilator_dim": 1}
    assert rep.conclusion == UNDECIDED
    assert "hypotheses not met" in rep.note


def test_auxthm_unknown_iso_propagates(zoo13):
    h = zoo13["fZ2w"]
    w = regular_module(h.alg, "right")
    v = regular_module(h.alg, "right")
    rep = auxthm_check(h, w, v, trials=0)
    iso = next(x for x in rep.hypotheses if x.name == "tensor-power-iso")
    assert iso.status == "unknown"
    assert "failure_bound" in iso.witness
    assert rep.conclusion == UNDECIDED
    assert "inconclusive" in rep.note


def test_auxthm_rejects_left_modules(zoo13):
    h = zoo13["fZ2w"]
    with pytest.raises(ValueError):
        auxthm_check(h, regular_module(h.alg, "left"), regular_module(h.alg, "right"))


# ------------------------------------------------------------- descent


def test_semisimple_descent_coset(zoo13):
    rep = semisimple_descent(zoo13["coset_Z4_Z2"])
    assert [x.name for x in rep.hypotheses] == SD_HYPOTHESES
    assert rep.conclusion == CONFIRMED
    assert rep.witnesses["K-integral"]["semisimple"] is True
    assert rep.witnesses["radical-H"] == {"radical_dim": 0}
    assert rep.witnesses["radical-K"] == {"radical_dim": 0}


def test_semisimple_descent_tensor(zoo13):
    rep = semisimple_descent(zoo13["fZ2w_x_kZ2"])
    assert rep.conclusion == CONFIRMED


def test_semisimple_descent_skips_unsupported_radical():
    f3 = PrimeField(3)
    e = tensor_embedding(zoo_instance("kZ2", f3), zoo_instance("kZ2", f3))
    rep = semisimple_descent(e)
    assert rep.conclusion == CONFIRMED  # |G| = 2 and 4 both invertible mod 3
    assert rep.witnesses["radical-H"]["status"] == "unsupported"  # p = 3 ≤ dim H = 4
    assert rep.witnesses["radical-K"] == {"radical_dim": 0}      # p = 3 > dim K = 2


def test_semisimple_descent_non_subcoalgebra_not_asserted():
    rep = semisimple_descent(idempotent_embedding_3_in_4())
    sub = next(x for x in rep.hypotheses if x.name == "is-subcoalgebra")
    assert sub.status == "fail"
    assert rep.conclusion == UNDECIDED
    assert "hypotheses not met" in rep.note


def test_theorem_report_json_shape(zoo13):
    js = nz_freeness(zoo13["coset_Z4_Z2"]).to_json()
    assert js["theorem"] == "freeness-over-subalgebra"
    assert js["conclusion"] == "Confirmed"
    assert [h["name"] for h in js["hypotheses"]] == NZ_HYPOTHESES
    assert all(h["status"] == "pass" for h in js["hypotheses"])
    assert js["witnesses"]["rank"] == 2
