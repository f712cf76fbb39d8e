"""Freeness and descent theorems as executable verifications.

Each checker returns a :class:`~quohal.reports.TheoremReport`: the
hypotheses actually verified, a conclusion (``Confirmed`` / ``Refuted`` /
``Unknown``), and constructive witnesses (ranks, generator bases).  On
instances that pass their verifiers, ``Refuted`` can only mean a defect in
this package, and the report says so explicitly.

* :func:`nz_freeness` — H restricted along a validated subalgebra embedding
  is free over K of rank dim H / dim K, on both sides.  Only the algebra
  embedding is needed; sharing the associator is deliberately NOT required.
* :func:`hopf_module_freeness` — a Hopf module over a quasi-Hopf subalgebra
  embedding is free as a left K-module of rank dim M / dim K.  This one
  hard-errors on a plain subalgebra: the stronger regime is essential.
* :func:`auxthm_check` — if V is faithful and W⊗V ≅ W^{dim V} as right
  K-modules, then W is free.
* :func:`semisimple_descent` — a subalgebra-and-subcoalgebra of a
  semisimple quasi-Hopf algebra is itself semisimple.
"""

from __future__ import annotations

from typing import List

import numpy as np

from .errors import RegimeError
from .hopfmod import HopfModule, SubalgebraEmbedding, validate_embedding, verify_hopf_module
from .integrals import UnsupportedOracle, pan_semisimple, radical_oracle
from .modules import (
    ModuleRep,
    freeness_check,
    is_faithful,
    iso_test,
    module_power,
    tensor_modules,
)
from .quasi import QuasiHopfAlgebra, verify_quasiantipode, verify_quasibialgebra
from .reports import (
    CheckItem,
    CONFIRMED,
    FAIL,
    FreeOfRank,
    IsoUnknown,
    IsoYes,
    PASS,
    REFUTED,
    TheoremReport,
    UNDECIDED,
    UNKNOWN,
    UnknownFreeness,
)

__all__ = [
    "nz_freeness",
    "hopf_module_freeness",
    "auxthm_check",
    "semisimple_descent",
]

_BUG_NOTE = "inputs were verified, so a refutation indicates an artifact bug, not mathematics"


def _verified_check(name: str, h: QuasiHopfAlgebra) -> CheckItem:
    ok = verify_quasibialgebra(h.qb).ok and verify_quasiantipode(h).ok
    return CheckItem(name, PASS if ok else FAIL)


def _freeness_witness(field, result) -> dict:
    if isinstance(result, FreeOfRank):
        out = {"free": True, "rank": result.rank}
        if result.witness is not None:
            w = np.asarray(result.witness)
            out["generators"] = [[field.format(x) for x in w[:, j]] for j in range(w.shape[1])]
        return out
    return result.to_json(field)


def nz_freeness(e: SubalgebraEmbedding, seed: int = 0, trials: int = 64) -> TheoremReport:
    """Freeness of H over an embedded K, checked on both sides.

    Restricts the regular H-module to K through the inclusion and runs the
    freeness check; Confirmed iff both sides are free of rank
    dim H / dim K.  dim K ∤ dim H on verified inputs is reported as Refuted
    with the bug note (the theorem forbids it).
    """
    rep = TheoremReport(theorem="freeness-over-subalgebra")
    emb_report = validate_embedding(e)  # raises EmbeddingError on hard failure
    rep.hypotheses.append(CheckItem("embedding-valid", PASS if emb_report.ok else FAIL))
    rep.hypotheses.append(_verified_check("H-verified", e.H))
    rep.hypotheses.append(_verified_check("K-verified", e.K))
    rep.hypotheses.append(CheckItem("K-finite-dimensional", PASS, {"dim": e.K.dim}))
    f = e.field
    nh, nk = e.H.dim, e.K.dim

    if not rep.hypotheses_met:
        rep.conclusion = UNDECIDED
        rep.note = "hypotheses not met; conclusion not asserted"
        return rep

    if nh % nk != 0:
        rep.conclusion = REFUTED
        rep.note = f"dim K = {nk} does not divide dim H = {nh}; " + _BUG_NOTE
        return rep
    expected = nh // nk

    right_restriction = ModuleRep("right", e.K.alg, nh, e.rhk_stack.copy(), name=f"{e.H.name}|K-right")
    left_restriction = ModuleRep("left", e.K.alg, nh, e.lhk_stack.copy(), name=f"{e.H.name}|K-left")
    outcomes = {}
    for side, mod in (("right", right_restriction), ("left", left_restriction)):
        res = freeness_check(e.K.alg, mod, seed=seed, trials=trials)
        outcomes[side] = res
        rep.witnesses[side] = _freeness_witness(f, res)

    if all(isinstance(r, FreeOfRank) and r.rank == expected for r in outcomes.values()):
        rep.conclusion = CONFIRMED
        rep.witnesses["rank"] = expected
    elif any(isinstance(r, (UnknownFreeness,)) for r in outcomes.values()):
        rep.conclusion = UNDECIDED
        rep.note = "freeness search inconclusive; enlarge trials or field"
    else:
        rep.conclusion = REFUTED
        rep.note = _BUG_NOTE
    return rep


def hopf_module_freeness(m: HopfModule, seed: int = 0, trials: int = 64,
                         phi_convention: str = "std") -> TheoremReport:
    """Freeness of a Hopf module as a left K-module over a quasi-Hopf sub.

    Requires is_quasi_hopf_sub — a plain subalgebra embedding raises
    :class:`~quohal.errors.RegimeError`, because the statement genuinely
    needs the stronger regime.
    """
    e = m.embedding
    emb_report = validate_embedding(e)
    if not emb_report.flags["is_quasi_hopf_sub"]:
        raise RegimeError(
            "hopf_module_freeness requires a quasi-Hopf subalgebra embedding; "
            f"{e.name} fails: " + ", ".join(k for k, v in emb_report.flags.items() if not v)
        )
    rep = TheoremReport(theorem="hopf-module-freeness")
    rep.hypotheses.append(CheckItem("embedding-quasi-hopf-sub", PASS))
    rep.hypotheses.append(_verified_check("H-verified", e.H))
    rep.hypotheses.append(_verified_check("K-verified", e.K))
    mod_report = verify_hopf_module(m, phi_convention=phi_convention)
    rep.hypotheses.append(CheckItem("hopf-module-axioms", PASS if mod_report.ok else FAIL))
    rep.hypotheses.append(
        CheckItem("finitely-generated", PASS, {"note": "automatic at finite dimension", "dim": m.mdim})
    )
    if not rep.hypotheses_met:
        rep.conclusion = UNDECIDED
        rep.note = "hypotheses not met; conclusion not asserted"
        return rep

    nk = e.K.dim
    if m.mdim % nk != 0:
        rep.conclusion = REFUTED
        rep.note = f"dim K = {nk} does not divide dim M = {m.mdim}; " + _BUG_NOTE
        return rep
    expected = m.mdim // nk
    res = freeness_check(e.K.alg, m.carrier.left_module(), seed=seed, trials=trials)
    rep.witnesses["left"] = _freeness_witness(e.field, res)
    if isinstance(res, FreeOfRank) and res.rank == expected:
        rep.conclusion = CONFIRMED
        rep.witnesses["rank"] = expected
    elif isinstance(res, UnknownFreeness):
        rep.conclusion = UNDECIDED
        rep.note = "freeness search inconclusive; enlarge trials or field"
    else:
        rep.conclusion = REFUTED
        rep.note = _BUG_NOTE
    return rep


def auxthm_check(k: QuasiHopfAlgebra, w: ModuleRep, v: ModuleRep,
                 seed: int = 0, trials: int = 64) -> TheoremReport:
    """If V is faithful and W⊗V ≅ W^{dim V} as right K-modules, W is free.

    Hypotheses are verified, not assumed; when one fails the conclusion is
    not asserted at all.  An inconclusive hypothesis iso-test propagates as
    Unknown.
    """
    rep = TheoremReport(theorem="tensor-faithful-freeness")
    rep.hypotheses.append(_verified_check("K-verified", k))
    if w.side != "right" or v.side != "right":
        raise ValueError("auxthm_check expects right modules over K")
    faithful, annihilator = is_faithful(v)
    rep.hypotheses.append(
        CheckItem("V-faithful", PASS if faithful else FAIL,
                  None if faithful else {"annihilator_dim": int(annihilator.shape[1])})
    )
    rep.hypotheses.append(
        CheckItem("finitely-generated", PASS, {"note": "automatic at finite dimension", "dim": w.mdim})
    )
    tensor = tensor_modules(k.qb, w, v)
    power = module_power(w, v.mdim)
    iso = iso_test(tensor, power, seed=seed, trials=trials)
    if isinstance(iso, IsoYes):
        rep.hypotheses.append(CheckItem("tensor-power-iso", PASS))
    elif isinstance(iso, IsoUnknown):
        rep.hypotheses.append(CheckItem("tensor-power-iso", UNKNOWN, {"failure_bound": iso.failure_bound}))
    else:
        rep.hypotheses.append(CheckItem("tensor-power-iso", FAIL, {"reason": iso.reason}))

    if any(h.status == UNKNOWN for h in rep.hypotheses):
        rep.conclusion = UNDECIDED
        rep.note = "hypothesis iso-test inconclusive; conclusion not asserted"
        return rep
    if not rep.hypotheses_met:
        rep.conclusion = UNDECIDED
        rep.note = "hypotheses not met; conclusion not asserted"
        return rep

    if w.mdim % k.dim != 0:
        rep.conclusion = REFUTED
        rep.note = f"dim K = {k.dim} does not divide dim W = {w.mdim}; " + _BUG_NOTE
        return rep
    expected = w.mdim // k.dim
    res = freeness_check(k.alg, w, seed=seed, trials=trials)
    rep.witnesses["freeness"] = _freeness_witness(k.field, res)
    if isinstance(res, FreeOfRank) and res.rank == expected:
        rep.conclusion = CONFIRMED
        rep.witnesses["rank"] = expected
    elif isinstance(res, UnknownFreeness):
        rep.conclusion = UNDECIDED
        rep.note = "freeness search inconclusive; enlarge trials or field"
    else:
        rep.conclusion = REFUTED
        rep.note = _BUG_NOTE
    return rep


def semisimple_descent(e: SubalgebraEmbedding) -> TheoremReport:
    """Semisimplicity of H descends to a subalgebra-and-subcoalgebra K.

    The conclusion is checked through the integral criterion on K and
    cross-checked against the trace-form radical oracle wherever the
    oracle's own precondition holds (on both H and K).
    """
    rep = TheoremReport(theorem="semisimple-descent")
    emb_report = validate_embedding(e)
    rep.hypotheses.append(CheckItem("embedding-valid", PASS if emb_report.ok else FAIL))
    rep.hypotheses.append(
        CheckItem("is-subcoalgebra", PASS if emb_report.flags["is_subcoalgebra"] else FAIL)
    )
    rep.hypotheses.append(_verified_check("H-verified", e.H))
    rep.hypotheses.append(_verified_check("K-verified", e.K))
    pan_h = pan_semisimple(e.H)
    rep.hypotheses.append(
        CheckItem("H-semisimple", PASS if pan_h.semisimple else FAIL, pan_h.to_json(e.field))
    )
    if not rep.hypotheses_met:
        rep.conclusion = UNDECIDED
        rep.note = "hypotheses not met; conclusion not asserted"
        return rep

    pan_k = pan_semisimple(e.K)
    rep.witnesses["K-integral"] = pan_k.to_json(e.field)
    cross: List[str] = []
    for label, alg in (("H", e.H.alg), ("K", e.K.alg)):
        oracle = radical_oracle(alg)
        if isinstance(oracle, UnsupportedOracle):
            rep.witnesses[f"radical-{label}"] = oracle.to_json()
        else:
            dim = int(oracle.shape[1])
            rep.witnesses[f"radical-{label}"] = {"radical_dim": dim}
            pan_val = pan_h.semisimple if label == "H" else pan_k.semisimple
            if (dim == 0) != pan_val:
                cross.append(f"radical oracle disagrees with the integral criterion on {label}")
    if cross:
        rep.conclusion = REFUTED
        rep.note = "; ".join(cross) + "; " + _BUG_NOTE
        return rep
    if pan_k.semisimple:
        rep.conclusion = CONFIRMED
    else:
        rep.conclusion = REFUTED
        rep.note = _BUG_NOTE
    return rep
