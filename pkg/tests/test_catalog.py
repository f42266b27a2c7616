import json

import pytest

from hopfcalc import (
    QQ, AxiomError, SchemaError, SparseTensor, catalog_entry, check_qt, dump_json,
    is_triangular, load_json, parse_document, parse_field, sweedler4, sweedler4_r,
    verify_hopf,
)
from hopfcalc.catalog import dumps_json, same_structure


def test_h4_relations(h4):
    b = lambda k: h4.basis(h4.space.index(k))
    assert h4.mul(b("x"), b("g")) == -b("gx")
    assert h4.mul(b("g"), b("g")) == b("1")
    assert h4.mul(b("x"), b("x")).is_zero()
    H = (h4.space, h4.space)
    ix = h4.space.index
    assert h4.delta(b("g")) == SparseTensor.basis(H, (ix("g"), ix("g")))
    dx = SparseTensor.basis(H, (ix("x"), ix("1"))) + SparseTensor.basis(H, (ix("g"), ix("x")))
    assert h4.delta(b("x")) == dx


def test_h4_antipode_squared(h4):
    x = h4.basis(h4.space.index("x"))
    S = h4.antipode
    assert S(S(x)) == -x


def test_catalog_entries_verified():
    for name in ("sweedler4", "c2"):
        e = catalog_entry(name)
        assert verify_hopf(e.hopf).ok
        assert e.notes
    with pytest.raises(KeyError):
        catalog_entry("nosuch")


def test_prime_field_catalog():
    F = parse_field("p:5")
    assert verify_hopf(sweedler4(F)).ok


def test_c2_antipode_is_identity(c2):
    from hopfcalc import identity
    assert c2.antipode == identity(c2.space)


def _c2_oracle_product(x, y):
    # kC₂⊗kC₂ with basis words in {1, g}; multiplication is XOR on exponents
    out = {}
    for (a, b), c in x.items():
        for (a2, b2), d in y.items():
            k = (a ^ a2, b ^ b2)
            out[k] = out.get(k, 0) + c * d
    return {k: v for k, v in out.items() if v}


def test_rt_triangular_by_oracle(c2):
    half = QQ(1) / QQ(2)
    rt = {(0, 0): half, (0, 1): half, (1, 0): half, (1, 1): -half}
    flipped = {(b, a): c for (a, b), c in rt.items()}
    assert _c2_oracle_product(flipped, rt) == {(0, 0): 1}
    R = SparseTensor((c2.space, c2.space), rt, QQ)
    assert check_qt(c2, R).ok
    assert is_triangular(c2, R)


@pytest.mark.parametrize("alpha", [0, 1, -3, QQ(1) / QQ(2)])
def test_h4_r_family(alpha):
    h, R = sweedler4_r(alpha)
    assert check_qt(h, R).ok
    assert is_triangular(h, R)


def test_json_round_trip(h4, tmp_path):
    doc = dump_json(h4)
    assert doc["dim"] == 4 and doc["basis"] == ["1", "g", "x", "gx"]
    assert doc["m"] == sorted(doc["m"])
    p = tmp_path / "h4.json"
    p.write_text(dumps_json(h4))
    back = load_json(p)
    assert same_structure(back, h4)
    assert dumps_json(back) == dumps_json(h4)


def test_json_rationals_are_canonical(h4):
    doc = dump_json(h4)
    assert all(isinstance(r[-1], str) and "/" in r[-1] for r in doc["m"] + doc["cm"])


def test_corrupted_product_is_rejected(h4):
    doc = dump_json(h4)
    # m(x⊗g) = −gx becomes +gx
    ix = h4.space.index
    for row in doc["m"]:
        if row[:2] == [ix("x"), ix("g")]:
            row[3] = "1/1"
    with pytest.raises(AxiomError, match="associativity"):
        parse_document(doc)


def test_duplicate_labels():
    doc = dump_json(sweedler4())
    doc["basis"] = ["1", "g", "g", "gx"]
    with pytest.raises(SchemaError, match="duplicate"):
        parse_document(doc)


@pytest.mark.parametrize("mutate, msg", [
    (lambda d: d.pop("cm"), "missing"),
    (lambda d: d.update(extra=1), "unknown"),
    (lambda d: d.update(field={"p": 2}), "2"),
    (lambda d: d["m"][0].__setitem__(3, 0.5), "num/den"),
    (lambda d: d["m"][0].__setitem__(0, 9), "out of range"),
])
def test_schema_errors(mutate, msg):
    doc = dump_json(sweedler4())
    mutate(doc)
    with pytest.raises(SchemaError, match=msg):
        parse_document(doc)


def test_not_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(SchemaError):
        load_json(p)
