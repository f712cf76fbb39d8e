"""Instance files: JSON with sparse exact tensors, loaders, and emitters.

A file describes one field and any number of named objects:

.. code-block:: json

    {
      "field": {"prime": 13},
      "algebras":     {"A":  {"dim": 2, "mult": [...], "unit": [...]}},
      "quasihopf":    {"H":  {"dim": 2, "mult": [...], "unit": [...],
                              "comul": [...], "counit": [...],
                              "assoc": [...], "assoc_inv": [...],
                              "antipode": [...], "alpha": [...], "beta": [...]}},
      "modules":      {"W":  {"algebra": "H", "side": "right", "mdim": 2,
                              "action": [...]}},
      "bimodules":    {"P":  {"algebra": "H", "mdim": 2,
                              "left": [...], "right": [...]}},
      "embeddings":   {"E":  {"K": "K", "H": "H", "incl": [...]}},
      "hopf_modules": {"M":  {"embedding": "E", "carrier": "P",
                              "side": "right", "coaction": [...]}}
    }

Every tensor is a sparse list of ``{"indices": [...], "value": "scalar"}``
entries against the object's *storage* shape — omitted entries are zero.
Scalars are strings: residues in [0, p) over GF(p), ``"a"`` or ``"a/b"``
over the rationals.  Storage shapes for an object of dimension n (carrier
dimension m, ambient dimension nH):

====================== =======================
mult                   (n, n, n)
unit, counit, α, β     (n,)
comul                  (n², n)
assoc, assoc_inv       (n³,)
antipode               (n, n)
module action          (n, m, m)
bimodule left/right    (n, m, m)
incl                   (nH, nK)
coaction               (m·nH, m) right / (nH·m, m) left
====================== =======================

The loader checks structure exhaustively (unknown keys, bad indices,
unparsable scalars, dangling references) and raises
:class:`~quohal.errors.FormatError` with a dotted location.  Mathematical
verification is deliberately left to the callers: commands re-verify each
object before use so that a verifier can *report* a failing axiom rather
than dying at load time.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import FinAlgebra
from .errors import FormatError, InputError
from .field import field_from_spec
from .hopfmod import HopfModule, SubalgebraEmbedding
from .modules import BimoduleRep, ModuleRep
from .quasi import QuasiBialgebra, QuasiHopfAlgebra

__all__ = [
    "Bundle",
    "sparse_to_array",
    "array_to_sparse",
    "load_bundle",
    "loads_bundle",
    "read_source",
    "emit_quasi_hopf",
    "emit_embedding",
    "bundle_to_json",
]


def sparse_to_array(field, entries, shape: Tuple[int, ...], location: str) -> np.ndarray:
    """Decode a sparse entry list into a dense exact array of ``shape``."""
    if not isinstance(entries, list):
        raise FormatError("sparse tensor must be a list of entries", location)
    arr = field.zeros(shape)
    for pos, entry in enumerate(entries):
        loc = f"{location}[{pos}]"
        if not isinstance(entry, dict) or set(entry) != {"indices", "value"}:
            raise FormatError('entry must be {"indices": [...], "value": "..."}', loc)
        idx = entry["indices"]
        if (not isinstance(idx, list) or len(idx) != len(shape)
                or not all(isinstance(i, int) for i in idx)):
            raise FormatError(f"indices must be {len(shape)} integers", loc)
        if not all(0 <= i < s for i, s in zip(idx, shape)):
            raise FormatError(f"indices {idx} out of range for shape {shape}", loc)
        if not isinstance(entry["value"], str):
            raise FormatError("value must be a string scalar", loc)
        try:
            arr[tuple(idx)] = field.parse(entry["value"])
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise FormatError(f"unparsable scalar {entry['value']!r}: {exc}", loc)
    return field.reduce(arr)


def array_to_sparse(field, arr: np.ndarray) -> List[Dict[str, Any]]:
    """Encode the nonzero entries of an exact array, row-major order."""
    a = np.asarray(arr)
    out: List[Dict[str, Any]] = []
    for flat, value in enumerate(a.reshape(-1)):
        if field.is_zero(value):
            continue
        idx = np.unravel_index(flat, a.shape) if a.ndim else ()
        out.append({"indices": [int(i) for i in idx], "value": field.format(value)})
    return out


@dataclass
class Bundle:
    """All objects decoded from one instance file, ready for commands."""

    field: Any
    algebras: Dict[str, FinAlgebra] = dc_field(default_factory=dict)
    quasihopf: Dict[str, QuasiHopfAlgebra] = dc_field(default_factory=dict)
    modules: Dict[str, ModuleRep] = dc_field(default_factory=dict)
    bimodules: Dict[str, BimoduleRep] = dc_field(default_factory=dict)
    embeddings: Dict[str, SubalgebraEmbedding] = dc_field(default_factory=dict)
    hopf_modules: Dict[str, HopfModule] = dc_field(default_factory=dict)

    def _lookup(self, table: Dict[str, Any], name: str, kind: str):
        if name not in table:
            known = ", ".join(sorted(table)) or "none"
            raise InputError(f"no {kind} named {name!r} in file (known: {known})")
        return table[name]

    def get_quasi_hopf(self, name: str) -> QuasiHopfAlgebra:
        return self._lookup(self.quasihopf, name, "quasi-Hopf algebra")

    def get_algebra_backing(self, name: str) -> FinAlgebra:
        if name in self.quasihopf:
            return self.quasihopf[name].alg
        return self._lookup(self.algebras, name, "algebra")

    def get_module(self, name: str) -> ModuleRep:
        return self._lookup(self.modules, name, "module")

    def get_bimodule(self, name: str) -> BimoduleRep:
        return self._lookup(self.bimodules, name, "bimodule")

    def get_embedding(self, name: str) -> SubalgebraEmbedding:
        return self._lookup(self.embeddings, name, "embedding")

    def get_hopf_module(self, name: str) -> HopfModule:
        return self._lookup(self.hopf_modules, name, "Hopf module")


_QH_FIELDS = ("mult", "unit", "comul", "counit", "assoc", "assoc_inv", "antipode", "alpha", "beta")
_TOP_KEYS = {"field", "algebras", "quasihopf", "modules", "bimodules", "embeddings", "hopf_modules"}


def _require_dict(obj, location: str) -> dict:
    if not isinstance(obj, dict):
        raise FormatError("expected a JSON object", location)
    return obj


def _require_keys(obj: dict, required: Sequence[str], location: str):
    missing = [k for k in required if k not in obj]
    if missing:
        raise FormatError(f"missing keys: {', '.join(missing)}", location)
    extra = [k for k in obj if k not in required]
    if extra:
        raise FormatError(f"unknown keys: {', '.join(extra)}", location)


def _require_dim(obj: dict, key: str, location: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or v <= 0:
        raise FormatError(f"{key} must be a positive integer", location)
    return v


def load_bundle(data: Any) -> Bundle:
    """Decode a parsed JSON document into constructed objects."""
    data = _require_dict(data, "$")
    unknown = [k for k in data if k not in _TOP_KEYS]
    if unknown:
        raise FormatError(f"unknown top-level sections: {', '.join(unknown)}", "$")
    if "field" not in data:
        raise FormatError("missing field spec", "$")
    try:
        fld = field_from_spec(data["field"])
    except Exception as exc:
        raise FormatError(f"bad field spec: {exc}", "$.field")
    bundle = Bundle(field=fld)

    for name, spec in _require_dict(data.get("algebras", {}), "$.algebras").items():
        loc = f"$.algebras.{name}"
        spec = _require_dict(spec, loc)
        _require_keys(spec, ("dim", "mult", "unit"), loc)
        n = _require_dim(spec, "dim", loc)
        mult = sparse_to_array(fld, spec["mult"], (n, n, n), f"{loc}.mult")
        unit = sparse_to_array(fld, spec["unit"], (n,), f"{loc}.unit")
        bundle.algebras[name] = FinAlgebra(fld, mult, unit, name=name)

    for name, spec in _require_dict(data.get("quasihopf", {}), "$.quasihopf").items():
        loc = f"$.quasihopf.{name}"
        spec = _require_dict(spec, loc)
        _require_keys(spec, ("dim",) + _QH_FIELDS, loc)
        n = _require_dim(spec, "dim", loc)
        shapes = {
            "mult": (n, n, n), "unit": (n,), "comul": (n * n, n), "counit": (n,),
            "assoc": (n ** 3,), "assoc_inv": (n ** 3,), "antipode": (n, n),
            "alpha": (n,), "beta": (n,),
        }
        arrs = {k: sparse_to_array(fld, spec[k], shapes[k], f"{loc}.{k}") for k in _QH_FIELDS}
        try:
            alg = FinAlgebra(fld, arrs["mult"], arrs["unit"], name=name)
            qb = QuasiBialgebra(alg, arrs["comul"], arrs["counit"], arrs["assoc"], arrs["assoc_inv"])
            bundle.quasihopf[name] = QuasiHopfAlgebra(qb, arrs["antipode"], arrs["alpha"], arrs["beta"])
        except ValueError as exc:
            raise FormatError(str(exc), loc)

    for name, spec in _require_dict(data.get("modules", {}), "$.modules").items():
        loc = f"$.modules.{name}"
        spec = _require_dict(spec, loc)
        _require_keys(spec, ("algebra", "side", "mdim", "action"), loc)
        alg = _resolve_algebra(bundle, spec["algebra"], loc)
        m = _require_dim(spec, "mdim", loc)
        side = spec["side"]
        if side not in ("left", "right"):
            raise FormatError("side must be 'left' or 'right'", loc)
        action = sparse_to_array(fld, spec["action"], (alg.dim, m, m), f"{loc}.action")
        bundle.modules[name] = ModuleRep(side, alg, m, action, name=name)

    for name, spec in _require_dict(data.get("bimodules", {}), "$.bimodules").items():
        loc = f"$.bimodules.{name}"
        spec = _require_dict(spec, loc)
        _require_keys(spec, ("algebra", "mdim", "left", "right"), loc)
        alg = _resolve_algebra(bundle, spec["algebra"], loc)
        m = _require_dim(spec, "mdim", loc)
        left = sparse_to_array(fld, spec["left"], (alg.dim, m, m), f"{loc}.left")
        right = sparse_to_array(fld, spec["right"], (alg.dim, m, m), f"{loc}.right")
        bundle.bimodules[name] = BimoduleRep(alg, m, left, right, name=name)

    for name, spec in _require_dict(data.get("embeddings", {}), "$.embeddings").items():
        loc = f"$.embeddings.{name}"
        spec = _require_dict(spec, loc)
        _require_keys(spec, ("K", "H", "incl"), loc)
        k = _resolve_quasihopf(bundle, spec["K"], loc)
        h = _resolve_quasihopf(bundle, spec["H"], loc)
        incl = sparse_to_array(fld, spec["incl"], (h.dim, k.dim), f"{loc}.incl")
        bundle.embeddings[name] = SubalgebraEmbedding(k, h, incl, name=name)

    for name, spec in _require_dict(data.get("hopf_modules", {}), "$.hopf_modules").items():
        loc = f"$.hopf_modules.{name}"
        spec = _require_dict(spec, loc)
        _require_keys(spec, ("embedding", "carrier", "side", "coaction"), loc)
        if spec["embedding"] not in bundle.embeddings:
            raise FormatError(f"unknown embedding {spec['embedding']!r}", loc)
        emb = bundle.embeddings[spec["embedding"]]
        if spec["carrier"] not in bundle.bimodules:
            raise FormatError(f"unknown bimodule {spec['carrier']!r}", loc)
        carrier = bundle.bimodules[spec["carrier"]]
        side = spec["side"]
        if side not in ("left", "right"):
            raise FormatError("side must be 'left' or 'right'", loc)
        shape = (carrier.mdim * emb.H.dim, carrier.mdim)
        coaction = sparse_to_array(fld, spec["coaction"], shape, f"{loc}.coaction")
        try:
            bundle.hopf_modules[name] = HopfModule(emb, carrier, coaction, side=side, name=name)
        except ValueError as exc:
            raise FormatError(str(exc), loc)
    return bundle


def _resolve_algebra(bundle: Bundle, ref: Any, location: str) -> FinAlgebra:
    if not isinstance(ref, str):
        raise FormatError("algebra reference must be a name string", location)
    if ref in bundle.quasihopf:
        return bundle.quasihopf[ref].alg
    if ref in bundle.algebras:
        return bundle.algebras[ref]
    raise FormatError(f"unresolved algebra reference {ref!r}", location)


def _resolve_quasihopf(bundle: Bundle, ref: Any, location: str) -> QuasiHopfAlgebra:
    if not isinstance(ref, str):
        raise FormatError("quasi-Hopf reference must be a name string", location)
    if ref not in bundle.quasihopf:
        raise FormatError(f"unresolved quasi-Hopf reference {ref!r}", location)
    return bundle.quasihopf[ref]


def loads_bundle(text: str) -> Bundle:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}", f"line {exc.lineno}, column {exc.colno}")
    return load_bundle(data)


def read_source(path: str) -> str:
    """Read an instance file; ``-`` means standard input."""
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path!r}: {exc}")


# --------------------------------------------------------------------------- emitters


def _emit_qh_entry(h: QuasiHopfAlgebra) -> Dict[str, Any]:
    f = h.field
    return {
        "dim": h.dim,
        "mult": array_to_sparse(f, h.alg.mult),
        "unit": array_to_sparse(f, h.alg.unit),
        "comul": array_to_sparse(f, h.comul),
        "counit": array_to_sparse(f, h.counit),
        "assoc": array_to_sparse(f, h.assoc),
        "assoc_inv": array_to_sparse(f, h.assoc_inv),
        "antipode": array_to_sparse(f, h.antipode),
        "alpha": array_to_sparse(f, h.alpha),
        "beta": array_to_sparse(f, h.beta),
    }


def emit_quasi_hopf(h: QuasiHopfAlgebra, name: str) -> Dict[str, Any]:
    """Instance-file document holding one quasi-Hopf algebra."""
    return {"field": h.field.to_spec(), "quasihopf": {name: _emit_qh_entry(h)}}


def emit_embedding(e: SubalgebraEmbedding, name: str) -> Dict[str, Any]:
    """Instance-file document holding an embedding and its two algebras.

    The algebras are stored under ``<name>.K`` and ``<name>.H``.
    """
    f = e.field
    return {
        "field": f.to_spec(),
        "quasihopf": {
            f"{name}.K": _emit_qh_entry(e.K),
            f"{name}.H": _emit_qh_entry(e.H),
        },
        "embeddings": {
            name: {"K": f"{name}.K", "H": f"{name}.H", "incl": array_to_sparse(f, e.incl)}
        },
    }


def _check_doc_field(doc: Dict[str, Any], f) -> None:
    if field_from_spec(doc["field"]) != f:
        raise InputError("cannot mix objects over different fields in one document")


def add_module(doc: Dict[str, Any], name: str, m: ModuleRep, algebra_ref: str) -> Dict[str, Any]:
    """Append a one-sided module entry to an existing document (in place)."""
    _check_doc_field(doc, m.field)
    doc.setdefault("modules", {})[name] = {
        "algebra": algebra_ref,
        "side": m.side,
        "mdim": m.mdim,
        "action": array_to_sparse(m.field, m.action),
    }
    return doc


def add_bimodule(doc: Dict[str, Any], name: str, p: BimoduleRep, algebra_ref: str) -> Dict[str, Any]:
    """Append a bimodule entry to an existing document (in place)."""
    _check_doc_field(doc, p.field)
    doc.setdefault("bimodules", {})[name] = {
        "algebra": algebra_ref,
        "mdim": p.mdim,
        "left": array_to_sparse(p.field, p.left),
        "right": array_to_sparse(p.field, p.right),
    }
    return doc


def add_hopf_module(doc: Dict[str, Any], name: str, hm: HopfModule,
                    embedding_ref: str, carrier_ref: str) -> Dict[str, Any]:
    """Append a Hopf-module entry referencing an embedding and a stored carrier."""
    _check_doc_field(doc, hm.field)
    if carrier_ref not in doc.get("bimodules", {}):
        add_bimodule(doc, carrier_ref, hm.carrier, embedding_ref + ".K")
    doc.setdefault("hopf_modules", {})[name] = {
        "embedding": embedding_ref,
        "carrier": carrier_ref,
        "side": hm.side,
        "coaction": array_to_sparse(hm.field, hm.coaction),
    }
    return doc


def bundle_to_json(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
