"""Batch front door: load instances, run verifier/theorem suites, report.

Every command prints one JSON report on standard output and a short human
summary on standard error.  Exit codes: 0 when every check passed or the
theorem was confirmed, 1 when any check failed or a theorem was refuted
(a failed hypothesis counts as a failed check), 2 when the decisive result
was unknown or unsupported, 3 for unusable input (bad file, bad name, bad
arguments, regime violations).  Reports are deterministic given
(input, command, seed) — only ``timing_ms`` varies between runs.

``FILE`` arguments accept a path, ``-`` for standard input, or the
shorthand ``zoo:<name>`` which stands for the emitted instance file of a
built-in example; with that shorthand the object name defaults to the zoo
name, so ``quohal nz zoo:coset_Z4_Z2`` just works.  The default seed is 0,
overridable by the ``QUOHAL_SEED`` environment variable or ``--seed``.
"""

from __future__ import annotations

import json
import os
import sys
import time
from typing import Any, Dict, List, Optional, Tuple

import click

from .algebra import verify_algebra
from .errors import InputError, QuohalError
from .hopfmod import (
    SubalgebraEmbedding,
    validate_embedding,
    verify_cotensor_iso,
    verify_hopf_module,
)
from .integrals import (
    FrobeniusForm,
    UnsupportedOracle,
    find_frobenius_form,
    integral_space,
    pan_semisimple,
    radical_oracle,
)
from .io import (
    Bundle,
    bundle_to_json,
    emit_embedding,
    emit_quasi_hopf,
    load_bundle,
    loads_bundle,
    read_source,
)
from .nz import auxthm_check, hopf_module_freeness, nz_freeness
from .nz import semisimple_descent as _descent_check
from .quasi import QuasiHopfAlgebra, verify_quasiantipode, verify_quasibialgebra
from .reports import IsoUnknown, IsoYes
from .zoo import ZOO_NAMES, zoo_instance

__all__ = ["main"]


def _default_seed() -> int:
    raw = os.environ.get("QUOHAL_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"QUOHAL_SEED must be an integer, got {raw!r}")


_seed_option = click.option("--seed", type=int, default=None,
                            help="Randomness seed (default: QUOHAL_SEED or 0).")
_trials_option = click.option("--trials", type=int, default=64, show_default=True,
                              help="Random candidates before structured fallbacks.")


def _resolve_seed(seed: Optional[int]) -> int:
    return _default_seed() if seed is None else seed


def _load_source(file_arg: str, name: Optional[str]) -> Tuple[Bundle, str]:
    """Load a bundle from path / stdin / zoo shorthand and pick the object name."""
    if file_arg.startswith("zoo:"):
        zoo_name = file_arg[4:]
        if zoo_name not in ZOO_NAMES:
            raise InputError(f"unknown zoo instance {zoo_name!r}; known: {', '.join(ZOO_NAMES)}")
        obj = zoo_instance(zoo_name)
        doc = (emit_embedding(obj, zoo_name) if isinstance(obj, SubalgebraEmbedding)
               else emit_quasi_hopf(obj, zoo_name))
        return load_bundle(doc), (name or zoo_name)
    bundle = loads_bundle(read_source(file_arg))
    if name:
        return bundle, name
    # a file holding exactly one object may be addressed namelessly
    names: List[str] = []
    for table in (bundle.quasihopf, bundle.embeddings, bundle.hopf_modules,
                  bundle.modules, bundle.bimodules, bundle.algebras):
        names.extend(table.keys())
    if len(names) == 1:
        return bundle, names[0]
    raise InputError("object name required: the file holds more than one object")


def _status_exit(statuses: List[str]) -> int:
    lowered = [s.lower() for s in statuses]
    if any(s in ("fail", "refuted") for s in lowered):
        return 1
    if any(s in ("unknown", "unsupported") for s in lowered):
        return 2
    return 0


def _emit_report(command: str, payload: Dict[str, Any], statuses: List[str],
                 summary_lines: List[str], started: float) -> None:
    code = _status_exit(statuses)
    payload = dict(payload)
    payload["command"] = command
    payload["status"] = {0: "pass", 1: "fail", 2: "unknown"}[code]
    payload["timing_ms"] = int((time.monotonic() - started) * 1000)
    click.echo(json.dumps(payload, indent=2, sort_keys=True))
    for line in summary_lines:
        click.echo(line, err=True)
    click.echo(f"overall: {payload['status']}", err=True)
    sys.exit(code)


def _axiom_outputs(reports) -> Tuple[List[str], List[str]]:
    statuses: List[str] = []
    lines: List[str] = []
    for rep in reports:
        for chk in rep.checks:
            statuses.append(chk.status)
            lines.append(f"{rep.subject} :: {chk.name}: {chk.status}")
    return statuses, lines


def _theorem_outputs(rep) -> Tuple[List[str], List[str]]:
    statuses = [h.status for h in rep.hypotheses] + [rep.conclusion]
    lines = [f"hypothesis {h.name}: {h.status}" for h in rep.hypotheses]
    lines.append(f"conclusion: {rep.conclusion}" + (f" ({rep.note})" if rep.note else ""))
    return statuses, lines


def _verify_instance(h: QuasiHopfAlgebra):
    return [verify_algebra(h.alg), verify_quasibialgebra(h.qb), verify_quasiantipode(h)]


class _Cli(click.Group):
    """Group that maps library errors to exit 3 in both script and test harnesses."""

    def main(self, *args, **kwargs):
        kwargs["standalone_mode"] = False
        try:
            return super().main(*args, **kwargs)
        except click.exceptions.Abort:
            sys.exit(3)
        except click.ClickException as exc:
            exc.show()
            sys.exit(3)
        except QuohalError as exc:
            click.echo(json.dumps({"error": str(exc)}, indent=2, sort_keys=True))
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)


@click.group(cls=_Cli)
def main():
    """Exact verification of finite-dimensional quasi-Hopf algebra instances.

    Exit codes: 0 all checks passed / theorem confirmed; 1 a check failed or
    a theorem was refuted; 2 decisive result unknown or unsupported; 3 bad
    input.  JSON reports go to stdout, human summaries to stderr.
    """


@main.command("check-axioms")
@click.argument("file")
@click.argument("name", required=False)
def check_axioms(file: str, name: Optional[str]):
    """Run the algebra and quasibialgebra verifiers on one named instance."""
    started = time.monotonic()
    bundle, name = _load_source(file, name)
    if name in bundle.quasihopf:
        h = bundle.quasihopf[name]
        reports = [verify_algebra(h.alg), verify_quasibialgebra(h.qb)]
    else:
        reports = [verify_algebra(bundle.get_algebra_backing(name))]
    statuses, lines = _axiom_outputs(reports)
    _emit_report("check-axioms",
                 {"name": name, "reports": [r.to_json() for r in reports]},
                 statuses, lines, started)


@main.command("check-antipode")
@click.argument("file")
@click.argument("name", required=False)
def check_antipode(file: str, name: Optional[str]):
    """Run the quasi-antipode verifier on one named instance."""
    started = time.monotonic()
    bundle, name = _load_source(file, name)
    rep = verify_quasiantipode(bundle.get_quasi_hopf(name))
    statuses, lines = _axiom_outputs([rep])
    _emit_report("check-antipode", {"name": name, "reports": [rep.to_json()]},
                 statuses, lines, started)


@main.command("check-embedding")
@click.argument("file")
@click.argument("name", required=False)
def check_embedding(file: str, name: Optional[str]):
    """Re-derive the compatibility flags and regime of an embedding."""
    started = time.monotonic()
    bundle, name = _load_source(file, name)
    rep = validate_embedding(bundle.get_embedding(name))
    statuses, lines = _axiom_outputs([rep])
    lines.append(f"regime: {rep.regime}")
    _emit_report("check-embedding", {"name": name, "report": rep.to_json()},
                 statuses, lines, started)


@main.command("integrals")
@click.argument("file")
@click.argument("name", required=False)
def integrals_cmd(file: str, name: Optional[str]):
    """Compute exact bases of the left and right integral spaces."""
    started = time.monotonic()
    bundle, name = _load_source(file, name)
    h = bundle.get_quasi_hopf(name)
    reports = _verify_instance(h)
    statuses, lines = _axiom_outputs(reports)
    payload: Dict[str, Any] = {"name": name, "reports": [r.to_json() for r in reports]}
    if "fail" not in statuses:
        left = integral_space(h, "left")
        right = integral_space(h, "right")
        payload["integrals"] = {"left": left.to_json(h.field), "right": right.to_json(h.field)}
        lines.append(f"left integral dim {left.dim}; right integral dim {right.dim}")
    _emit_report("integrals", payload, statuses, lines, started)


@main.command("semisimple")
@click.argument("file")
@click.argument("name", required=False)
def semisimple_cmd(file: str, name: Optional[str]):
    """Integral criterion for semisimplicity, cross-checked by the trace-form radical."""
    started = time.monotonic()
    bundle, name = _load_source(file, name)
    h = bundle.get_quasi_hopf(name)
    reports = _verify_instance(h)
    statuses, lines = _axiom_outputs(reports)
    payload: Dict[str, Any] = {"name": name, "reports": [r.to_json() for r in reports]}
    if "fail" not in statuses:
        pan = pan_semisimple(h)
        payload["criterion"] = pan.to_json(h.field)
        lines.append(f"integral criterion: {'semisimple' if pan.semisimple else 'not semisimple'}")
        oracle = radical_oracle(h.alg)
        if isinstance(oracle, UnsupportedOracle):
            payload["radical"] = oracle.to_json()
            statuses.append("unsupported")
            lines.append(f"radical oracle: unsupported ({oracle.reason})")
        else:
            rdim = int(oracle.shape[1])
            agree = (rdim == 0) == pan.semisimple
            payload["radical"] = {"radical_dim": rdim}
            payload["agreement"] = agree
            statuses.append("pass" if agree else "fail")
            lines.append(f"radical dim {rdim}; agreement with criterion: {agree}")
    _emit_report("semisimple", payload, statuses, lines, started)


@main.command("frobenius")
@click.argument("file")
@click.argument("name", required=False)
@_seed_option
@_trials_option
def frobenius_cmd(file: str, name: Optional[str], seed: Optional[int], trials: int):
    """Search for a functional certifying the Frobenius property."""
    started = time.monotonic()
    seed = _resolve_seed(seed)
    bundle, name = _load_source(file, name)
    h = bundle.get_quasi_hopf(name)
    reports = _verify_instance(h)
    statuses, lines = _axiom_outputs(reports)
    payload: Dict[str, Any] = {"name": name, "seed": seed,
                               "reports": [r.to_json() for r in reports]}
    if "fail" not in statuses:
        result = find_frobenius_form(h, seed=seed, trials=trials)
        if isinstance(result, FrobeniusForm):
            payload["frobenius"] = result.to_json(h.field)
            statuses.append("pass")
            lines.append("nondegenerate functional found; both Gram matrices invertible")
        else:
            payload["frobenius"] = result.to_json()
            statuses.append("unknown")
            lines.append(f"no functional found after {trials} random trials plus structured candidates")
    _emit_report("frobenius", payload, statuses, lines, started)


@main.command("nz")
@click.argument("file")
@click.argument("name", required=False)
@_seed_option
@_trials_option
def nz_cmd(file: str, name: Optional[str], seed: Optional[int], trials: int):
    """Freeness of H over an embedded subalgebra K, on both sides."""
    started = time.monotonic()
    seed = _resolve_seed(seed)
    bundle, name = _load_source(file, name)
    rep = nz_freeness(bundle.get_embedding(name), seed=seed, trials=trials)
    statuses, lines = _theorem_outputs(rep)
    _emit_report("nz", {"name": name, "seed": seed, "report": rep.to_json()},
                 statuses, lines, started)


@main.command("hopf-free")
@click.argument("file")
@click.argument("name", required=False)
@_seed_option
@_trials_option
def hopf_free_cmd(file: str, name: Optional[str], seed: Optional[int], trials: int):
    """Freeness of a Hopf module over a quasi-Hopf subalgebra."""
    started = time.monotonic()
    seed = _resolve_seed(seed)
    bundle, name = _load_source(file, name)
    rep = hopf_module_freeness(bundle.get_hopf_module(name), seed=seed, trials=trials)
    statuses, lines = _theorem_outputs(rep)
    _emit_report("hopf-free", {"name": name, "seed": seed, "report": rep.to_json()},
                 statuses, lines, started)


@main.command("auxthm")
@click.argument("file")
@click.argument("w_name")
@click.argument("v_name")
@_seed_option
@_trials_option
def auxthm_cmd(file: str, w_name: str, v_name: str, seed: Optional[int], trials: int):
    """Faithful-tensor freeness: V faithful and W⊗V ≅ W^dim(V) imply W free."""
    started = time.monotonic()
    seed = _resolve_seed(seed)
    bundle, _ = _load_source(file, w_name)
    w = bundle.get_module(w_name)
    v = bundle.get_module(v_name)
    if v.algebra is not w.algebra:
        raise InputError("W and V must be modules over the same quasi-Hopf entry")
    if w.side != "right" or v.side != "right":
        raise InputError("auxthm expects right modules for both W and V")
    k = next((qh for qh in bundle.quasihopf.values() if qh.alg is w.algebra), None)
    if k is None:
        raise InputError("auxthm requires W to be a module over a quasi-Hopf entry of the file")
    rep = auxthm_check(k, w, v, seed=seed, trials=trials)
    statuses, lines = _theorem_outputs(rep)
    _emit_report("auxthm",
                 {"W": w_name, "V": v_name, "seed": seed, "report": rep.to_json()},
                 statuses, lines, started)


@main.command("semisimple-descent")
@click.argument("file")
@click.argument("name", required=False)
def descent_cmd(file: str, name: Optional[str]):
    """Descent of semisimplicity along a subalgebra-and-subcoalgebra embedding."""
    started = time.monotonic()
    bundle, name = _load_source(file, name)
    rep = _descent_check(bundle.get_embedding(name))
    statuses, lines = _theorem_outputs(rep)
    _emit_report("semisimple-descent", {"name": name, "report": rep.to_json()},
                 statuses, lines, started)


@main.command("cotensor-iso")
@click.argument("file")
@click.argument("module_name")
@click.argument("bimodule_name")
@_seed_option
@_trials_option
def cotensor_iso_cmd(file: str, module_name: str, bimodule_name: str,
                     seed: Optional[int], trials: int):
    """Check M cotensor (H⊗P) against M⊗P as bimodules, with certificates."""
    started = time.monotonic()
    seed = _resolve_seed(seed)
    bundle, _ = _load_source(file, module_name)
    m = bundle.get_hopf_module(module_name)
    p = bundle.get_bimodule(bimodule_name)
    if p.algebra is not m.carrier.algebra:
        raise InputError("the bimodule must live over the same subalgebra K as the Hopf module")
    mod_rep = verify_hopf_module(m)
    statuses, lines = _axiom_outputs([mod_rep])
    payload: Dict[str, Any] = {"module": module_name, "bimodule": bimodule_name,
                               "seed": seed, "reports": [mod_rep.to_json()]}
    if "fail" not in statuses:
        iso = verify_cotensor_iso(m, p, seed=seed, trials=trials)
        payload["iso"] = iso.to_json(m.field)
        if isinstance(iso, IsoYes):
            statuses.append("pass")
            lines.append("cotensor against the cofree comodule matches the plain tensor")
        elif isinstance(iso, IsoUnknown):
            statuses.append("unknown")
            lines.append("isomorphism search inconclusive")
        else:
            statuses.append("fail")
            lines.append(f"not isomorphic: {iso.reason}")
    _emit_report("cotensor-iso", payload, statuses, lines, started)


@main.group("zoo")
def zoo_group():
    """Built-in verified instances."""


@zoo_group.command("list")
def zoo_list():
    """List the built-in instance names."""
    click.echo(json.dumps({"instances": list(ZOO_NAMES)}, indent=2))
    for n in ZOO_NAMES:
        click.echo(n, err=True)
    sys.exit(0)


@zoo_group.command("emit")
@click.argument("name")
def zoo_emit(name: str):
    """Print a built-in instance as an instance file (pipe into other commands)."""
    if name not in ZOO_NAMES:
        raise InputError(f"unknown zoo instance {name!r}; known: {', '.join(ZOO_NAMES)}")
    obj = zoo_instance(name)
    doc = (emit_embedding(obj, name) if isinstance(obj, SubalgebraEmbedding)
           else emit_quasi_hopf(obj, name))
    click.echo(bundle_to_json(doc))
    sys.exit(0)


if __name__ == "__main__":
    main()
