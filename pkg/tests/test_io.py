"""JSON instance-file round trips, strict validation, and error locations."""

import json
from fractions import Fraction

import numpy as np
import pytest

from quohal.errors import FormatError, InputError
from quohal.field import PrimeField, RationalField
from quohal.hopfmod import cofree_hopf_module, identity_embedding
from quohal.io import (
    add_bimodule,
    add_hopf_module,
    add_module,
    array_to_sparse,
    bundle_to_json,
    emit_embedding,
    emit_quasi_hopf,
    load_bundle,
    loads_bundle,
    read_source,
    sparse_to_array,
)
from quohal.modules import regular_bimodule, regular_module
from quohal.zoo import zoo_instance

F13 = PrimeField(13)

QH_ATTRS = ("mult", "unit", "comul", "counit", "assoc", "assoc_inv", "antipode", "alpha", "beta")


def read_attr(h, attr):
    for holder in (h.qb.alg, h.qb, h):
        if hasattr(holder, attr):
            return np.asarray(getattr(holder, attr))
    raise AttributeError(attr)


def arrays_equal(a, b):
    return np.array_equal(np.asarray(a), np.asarray(b))


# --------------------------------------------------------------- sparse codec


def test_sparse_round_trip_prime_field():
    arr = np.zeros((2, 3), dtype=F13.dtype)
    arr[0, 1] = 5
    arr[1, 2] = 12
    entries = array_to_sparse(F13, arr)
    assert len(entries) == 2
    assert all(set(e) == {"indices", "value"} for e in entries)
    assert arrays_equal(sparse_to_array(F13, entries, (2, 3), "x"), arr)


def test_sparse_round_trip_rationals():
    fq = RationalField()
    arr = np.empty((2,), dtype=object)
    arr[0] = Fraction(-3, 7)
    arr[1] = Fraction(0)
    entries = array_to_sparse(fq, arr)
    assert len(entries) == 1 and entries[0]["value"] == "-3/7"
    back = sparse_to_array(fq, entries, (2,), "y")
    assert back[0] == Fraction(-3, 7) and back[1] == 0


def test_sparse_rejects_out_of_range_index():
    with pytest.raises(FormatError):
        sparse_to_array(F13, [{"indices": [5], "value": "1"}], (2,), "loc")


# ------------------------------------------------------------- instance files


def test_quasi_hopf_round_trip_gf13(zoo13):
    for name in ("fZ2w", "fZ4w", "kS3"):
        h = zoo13[name]
        b = loads_bundle(bundle_to_json(emit_quasi_hopf(h, name)))
        h2 = b.get_quasi_hopf(name)
        assert h2.field == h.field
        for attr in QH_ATTRS:
            assert arrays_equal(read_attr(h, attr), read_attr(h2, attr)), (name, attr)


def test_quasi_hopf_round_trip_rationals():
    h = zoo_instance("kZ2", RationalField())
    b = loads_bundle(bundle_to_json(emit_quasi_hopf(h, "kZ2")))
    h2 = b.get_quasi_hopf("kZ2")
    for attr in QH_ATTRS:
        assert arrays_equal(read_attr(h, attr), read_attr(h2, attr)), attr


def test_embedding_round_trip_preserves_flags(zoo13):
    e = zoo13["coset_Z4_Z2"]
    b = loads_bundle(bundle_to_json(emit_embedding(e, "c")))
    e2 = b.get_embedding("c")
    assert arrays_equal(e2.incl, e.incl)
    assert arrays_equal(e2.H.qb.assoc, e.H.qb.assoc)
    assert arrays_equal(e2.K.antipode, e.K.antipode)
    assert e2.flags == e.flags
    assert e2.regime == e.regime == "subalgebra"
    # component algebras are stored under <name>.K / <name>.H
    assert set(b.quasihopf) == {"c.K", "c.H"}


def test_tensor_embedding_round_trip_regime(zoo13):
    e = zoo13["fZ2w_x_kZ2"]
    b = loads_bundle(bundle_to_json(emit_embedding(e, "t")))
    assert b.get_embedding("t").regime == "quasi-hopf-sub"


def test_module_and_bimodule_round_trip(zoo13):
    h = zoo13["fZ2w"]
    doc = emit_quasi_hopf(h, "fZ2w")
    add_module(doc, "reg", regular_module(h.alg, "right"), "fZ2w")
    add_bimodule(doc, "bim", regular_bimodule(h.alg), "fZ2w")
    b = loads_bundle(bundle_to_json(doc))
    m = b.get_module("reg")
    assert m.side == "right" and m.mdim == 2
    assert arrays_equal(m.action, regular_module(h.alg, "right").action)
    p = b.get_bimodule("bim")
    assert arrays_equal(p.left, regular_bimodule(h.alg).left)
    assert arrays_equal(p.right, regular_bimodule(h.alg).right)


def test_hopf_module_round_trip(zoo13):
    h = zoo13["fZ2w"]
    e = identity_embedding(h)
    hm = cofree_hopf_module(regular_bimodule(h.alg), e)
    doc = emit_embedding(e, "id")
    add_hopf_module(doc, "M", hm, "id", "M.carrier")
    assert "M.carrier" in doc["bimodules"]  # carrier added automatically
    b = loads_bundle(bundle_to_json(doc))
    hm2 = b.get_hopf_module("M")
    assert hm2.side == "right" and hm2.mdim == hm.mdim
    assert arrays_equal(hm2.coaction, hm.coaction)
    assert arrays_equal(hm2.carrier.left, hm.carrier.left)


def test_add_helpers_reject_field_mixing(zoo13):
    doc = emit_quasi_hopf(zoo13["fZ2w"], "fZ2w")
    alien = regular_module(zoo_instance("kZ2", PrimeField(101)).alg, "right")
    with pytest.raises(InputError):
        add_module(doc, "m", alien, "fZ2w")


# ------------------------------------------------------------- strict loading


def mutated_doc(mutate):
    d = json.loads(bundle_to_json(emit_quasi_hopf(zoo_instance("kZ2"), "kZ2")))
    mutate(d)
    return d


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda d: d.__setitem__("bogus", {}), "$"),
        (lambda d: d["quasihopf"]["kZ2"].pop("counit"), "quasihopf.kZ2"),
        (lambda d: d["quasihopf"]["kZ2"]["mult"][0].__setitem__("indices", [0, 0, 99]),
         "quasihopf.kZ2.mult"),
        (lambda d: d["quasihopf"]["kZ2"]["unit"][0].__setitem__("value", "zzz"),
         "quasihopf.kZ2.unit"),
        (lambda d: d["quasihopf"]["kZ2"]["mult"][0].__setitem__("extra", 1),
         "quasihopf.kZ2.mult"),
        (lambda d: d.__setitem__("field", {"prime": 10}), "field"),
        (lambda d: d["quasihopf"]["kZ2"].__setitem__("dim", -1), "quasihopf.kZ2"),
    ],
)
def test_format_error_locations(mutate, fragment):
    with pytest.raises(FormatError) as exc:
        load_bundle(mutated_doc(mutate))
    assert fragment in str(exc.value)


def test_json_syntax_error_reports_position():
    with pytest.raises(FormatError) as exc:
        loads_bundle("{ not json")
    assert "line" in str(exc.value)


def test_dangling_reference(zoo13):
    d = json.loads(bundle_to_json(emit_embedding(zoo13["coset_Z4_Z2"], "c")))
    d["embeddings"]["c"]["H"] = "missing"
    with pytest.raises(FormatError) as exc:
        load_bundle(d)
    assert "embeddings.c" in str(exc.value)


def test_unknown_name_lookup(zoo13):
    b = loads_bundle(bundle_to_json(emit_quasi_hopf(zoo13["kZ2"], "kZ2")))
    with pytest.raises(InputError) as exc:
        b.get_quasi_hopf("nope")
    assert "kZ2" in str(exc.value)  # the known names are listed
    with pytest.raises(InputError):
        b.get_embedding("kZ2")


def test_top_level_must_be_object():
    with pytest.raises(FormatError):
        loads_bundle("[1, 2]")


# ---------------------------------------------------------------- read_source


def test_read_source_file_and_stdin(tmp_path, monkeypatch):
    p = tmp_path / "x.json"
    p.write_text("{}")
    assert read_source(str(p)) == "{}"
    import io as _io
    monkeypatch.setattr("sys.stdin", _io.StringIO("{\"a\": 1}"))
    assert read_source("-") == "{\"a\": 1}"


def test_read_source_missing_file(tmp_path):
    with pytest.raises(InputError):
        read_source(str(tmp_path / "absent.json"))
