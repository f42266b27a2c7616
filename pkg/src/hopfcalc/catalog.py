"""Concrete Hopf algebras and the structure-constant JSON format."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .hopf import HopfData, HopfError, Report, verify_hopf
from .linalg import LinMap, Space
from .scalars import QQ, Field, FieldError, parse_field


class SchemaError(ValueError):
    pass


class AxiomError(ValueError):
    def __init__(self, msg, report: Report):
        super().__init__(msg)
        self.report = report


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    hopf: HopfData
    notes: str


def from_tables(labels, mult, comult, counit, antipode, field: Field = QQ,
                name="H", unit=None) -> HopfData:
    """Build Hopf data from label-level tables.

    mult: {(a, b): {c: coeff}}; missing pairs multiply to 0.
    comult: {a: {(b, c): coeff}}; counit: {a: coeff}; antipode: {a: {b: coeff}}.
    unit defaults to the first basis label.
    """
    H = Space(name, tuple(labels))
    ix = H.index
    m = LinMap.from_entries((H, H), (H,),
                            [((ix(c),), (ix(a), ix(b)), v)
                             for (a, b), out in mult.items() for c, v in out.items()], field)
    cm = LinMap.from_entries((H,), (H, H),
                             [((ix(b), ix(c)), (ix(a),), v)
                              for a, out in comult.items() for (b, c), v in out.items()], field)
    unit = unit or {labels[0]: 1}
    u = LinMap.from_entries((), (H,), [((ix(a),), (), v) for a, v in unit.items()], field)
    cu = LinMap.from_entries((H,), (), [((), (ix(a),), v) for a, v in counit.items()], field)
    S = None
    if antipode is not None:
        S = LinMap.from_entries((H,), (H,),
                                [((ix(b),), (ix(a),), v)
                                 for a, out in antipode.items() for b, v in out.items()], field)
    return HopfData(H, m, u, cm, cu, S, field, name)


def sweedler4(field: Field = QQ) -> HopfData:
    """Sweedler's 4-dimensional algebra on (1, g, x, gx): g²=1, x²=0, xg=-gx."""
    if field.char == 2:
        raise FieldError("Sweedler's algebra needs a field of characteristic other than 2")
    # words in g, x reduced to sign * basis label
    def word(w):
        sign, gs, xs = 1, 0, 0
        for ch in w:
            if ch == "g":
                if xs % 2:
                    sign = -sign
                gs += 1
            else:
                xs += 1
        if xs > 1:
            return None
        lab = ("g" if gs % 2 else "") + ("x" if xs else "")
        return sign, lab or "1"

    labels = ["1", "g", "x", "gx"]
    mult = {}
    for a in labels:
        for b in labels:
            r = word(a.replace("1", "") + b.replace("1", ""))
            if r is not None:
                mult[(a, b)] = {r[1]: r[0]}
    comult = {
        "1": {("1", "1"): 1},
        "g": {("g", "g"): 1},
        "x": {("x", "1"): 1, ("g", "x"): 1},
        "gx": {("gx", "g"): 1, ("1", "gx"): 1},
    }
    counit = {"1": 1, "g": 1}
    antipode = {"1": {"1": 1}, "g": {"g": 1}, "x": {"gx": -1}, "gx": {"x": 1}}
    return from_tables(labels, mult, comult, counit, antipode, field, "H4")


def group_algebra_c2(field: Field = QQ) -> HopfData:
    mult = {("1", "1"): {"1": 1}, ("1", "g"): {"g": 1}, ("g", "1"): {"g": 1}, ("g", "g"): {"1": 1}}
    comult = {"1": {("1", "1"): 1}, "g": {("g", "g"): 1}}
    return from_tables(["1", "g"], mult, comult, {"1": 1, "g": 1},
                       {"1": {"1": 1}, "g": {"g": 1}}, field, "kC2")


def catalog_entry(name: str, field: Field = QQ) -> CatalogEntry:
    makers = {
        "sweedler4": (sweedler4, "Sweedler's Hopf algebra, basis (1, g, x, gx)"),
        "c2": (group_algebra_c2, "group algebra of the cyclic group of order 2"),
    }
    if name not in makers:
        raise KeyError(name)
    make, notes = makers[name]
    h = make(field)
    rep = verify_hopf(h)
    if not rep.ok:
        raise AxiomError(f"catalog entry {name} fails its axioms", rep)
    return CatalogEntry(name, h, notes)


# --- JSON ---------------------------------------------------------------------

def dump_json(h: HopfData) -> dict:
    f = h.field
    doc = {
        "dim": h.dim,
        "basis": list(h.space.labels),
        "field": f.to_json(),
        "m": [[i, j, k, f.fmt(v)] for (k,), (i, j), v in sorted(h.m.entries(), key=lambda t: (t[1], t[0]))],
        "unit": [f.fmt(h.unit.col(()).get((i,), 0)) for i in range(h.dim)],
        "cm": [[i, j, k, f.fmt(v)] for (j, k), (i,), v in sorted(h.cm.entries(), key=lambda t: (t[1], t[0]))],
        "counit": [f.fmt(h.counit.col((i,)).get((), 0)) for i in range(h.dim)],
        "antipode": [] if h.antipode is None else
        [[i, j, f.fmt(v)] for (j,), (i,), v in sorted(h.antipode.entries(), key=lambda t: (t[1], t[0]))],
    }
    # entries are sorted lexicographically by their index prefix
    doc["m"].sort(key=lambda e: e[:3])
    doc["cm"].sort(key=lambda e: e[:3])
    doc["antipode"].sort(key=lambda e: e[:2])
    return doc


def dumps_json(h: HopfData) -> str:
    return json.dumps(dump_json(h), ensure_ascii=False)


_KEYS = {"dim", "basis", "field", "m", "unit", "cm", "counit", "antipode"}


def parse_document(doc, name="H", verify=True) -> HopfData:
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    missing = _KEYS - set(doc)
    extra = set(doc) - _KEYS
    if missing:
        raise SchemaError(f"missing keys: {sorted(missing)}")
    if extra:
        raise SchemaError(f"unknown keys: {sorted(extra)}")
    n = doc["dim"]
    if not isinstance(n, int) or n < 1:
        raise SchemaError("dim must be a positive integer")
    labels = doc["basis"]
    if not isinstance(labels, list) or len(labels) != n or not all(isinstance(l, str) for l in labels):
        raise SchemaError("basis must be a list of dim strings")
    if len(set(labels)) != n:
        raise SchemaError("duplicate basis labels")
    try:
        field = parse_field(doc["field"])
    except FieldError as e:
        raise SchemaError(str(e)) from None

    def scalar(s, where):
        if not isinstance(s, str):
            raise SchemaError(f"{where}: rationals must be \"num/den\" strings")
        try:
            return field.parse(s)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"{where}: bad rational {s!r}") from None

    def index(i, where):
        if not isinstance(i, int) or not 0 <= i < n:
            raise SchemaError(f"{where}: index {i!r} out of range")
        return i

    def entries(key, arity):
        rows = doc[key]
        if not isinstance(rows, list):
            raise SchemaError(f"{key} must be a list")
        out = []
        for r, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != arity + 1:
                raise SchemaError(f"{key}[{r}] must have {arity} indices and a coefficient")
            idx = tuple(index(i, f"{key}[{r}]") for i in row[:arity])
            out.append((idx, scalar(row[arity], f"{key}[{r}]")))
        return out

    def vector(key):
        v = doc[key]
        if not isinstance(v, list) or len(v) != n:
            raise SchemaError(f"{key} must list dim coefficients")
        return [scalar(s, f"{key}[{i}]") for i, s in enumerate(v)]

    H = Space(name, tuple(labels))
    m = LinMap.from_entries((H, H), (H,), [((k,), (i, j), c) for (i, j, k), c in entries("m", 3)], field)
    cm = LinMap.from_entries((H,), (H, H), [((j, k), (i,), c) for (i, j, k), c in entries("cm", 3)], field)
    S = LinMap.from_entries((H,), (H,), [((j,), (i,), c) for (i, j), c in entries("antipode", 2)], field)
    u = LinMap((), (H,), {(): {(i,): c for i, c in enumerate(vector("unit"))}}, field)
    cu = LinMap((H,), (), {(i,): {(): c} for i, c in enumerate(vector("counit"))}, field)
    h = HopfData(H, m, u, cm, cu, S if doc["antipode"] else None, field, name)
    if verify:
        rep = verify_hopf(h)
        if not rep.ok:
            bad = rep.failures()[0]
            raise AxiomError(f"axiom {bad.name} fails at {bad.witness}", rep)
    return h


def load_json(path, name=None, verify=True) -> HopfData:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise SchemaError(f"not valid JSON: {e}") from None
    return parse_document(doc, name or "H", verify)


def same_structure(a: HopfData, b: HopfData) -> bool:
    return (a.space.labels == b.space.labels and a.field == b.field
            and a.m.entries() == b.m.entries() and a.cm.entries() == b.cm.entries()
            and a.unit.entries() == b.unit.entries() and a.counit.entries() == b.counit.entries()
            and ((a.antipode is None and b.antipode is None) or
                 (a.antipode is not None and b.antipode is not None and
                  a.antipode.entries() == b.antipode.entries())))


def sweedler4_r(alpha=0, field: Field = QQ):
    """The R-matrices of H₄:
    R_α = ½(1⊗1 + 1⊗g + g⊗1 − g⊗g) + (α/2)(x⊗x − x⊗gx + gx⊗x + gx⊗gx)."""
    from .linalg import SparseTensor
    h = sweedler4(field)
    half = field(1) / field(2)
    a = field(alpha) * half
    terms = [("1", "1", half), ("1", "g", half), ("g", "1", half), ("g", "g", -half),
             ("x", "x", a), ("x", "gx", -a), ("gx", "x", a), ("gx", "gx", a)]
    ix = h.space.index
    data: dict = {}
    for l, r, c in terms:
        data[(ix(l), ix(r))] = data.get((ix(l), ix(r)), 0) + c
    return h, SparseTensor((h.space, h.space), data, field)
