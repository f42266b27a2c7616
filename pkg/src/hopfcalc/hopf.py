"""Hopf algebra data, axiom checks, convolution and duality."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .linalg import (
    DimensionError, InvertibilityError, LinMap, Space, SparseTensor, all_indices,
    apply, compose, identity, inverse, shape_dim, shape_str, solve_vector, swap,
    tensor, tensor_all, unflat_index, flat_index, product_space,
)
from .scalars import QQ, Field


class HopfError(ValueError):
    pass


class NotInvertibleError(InvertibilityError):
    pass


# --- reports ----------------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    witness: str | None = None

    def to_json(self):
        return {"name": self.name, "pass": self.passed, "witness": self.witness}


@dataclass
class Number:
    label: str
    value: object
    expected: object = None
    provenance: str = ""

    def to_json(self, fmt=str):
        out = {"label": self.label, "value": fmt(self.value), "provenance": self.provenance}
        if self.expected is not None:
            out["expected"] = fmt(self.expected)
        return out


@dataclass
class Report:
    checks: list = dc_field(default_factory=list)
    numbers: list = dc_field(default_factory=list)

    def add(self, name, passed, witness=None):
        self.checks.append(Check(name, bool(passed), witness))
        return passed

    def record(self, label, value, expected=None, provenance=""):
        """Keep an exact number; with an expected value it also becomes a check."""
        self.numbers.append(Number(label, value, expected, provenance))
        if expected is not None:
            ok = value == expected
            self.add(f"{label} = {expected}", ok, None if ok else f"got {value}")
        return value

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness))
        self.numbers.extend(other.numbers)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __bool__(self):
        return self.ok

    def __getitem__(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            line = f"{c.name}: {'pass' if c.passed else 'fail'}"
            if c.witness:
                line += f" (witness {c.witness})"
            lines.append(line)
        for n in self.numbers:
            line = f"{n.label} = {n.value}"
            if n.expected is not None:
                line += f" (expected {n.expected})"
            lines.append(line)
        return "\n".join(lines)

    def to_json(self, fmt=str, timing_ms=None):
        doc = {"checks": [c.to_json() for c in self.checks],
               "numbers": [n.to_json(fmt) for n in self.numbers]}
        if timing_ms is not None:
            doc["timing_ms"] = timing_ms
        return doc


def label_of(shape, idx) -> str:
    return "⊗".join(s.labels[i] for s, i in zip(shape, idx)) or "1"


# --- the ground field as a trivial Hopf algebra on the empty shape ----------

class _Ground:
    """k itself: every structure map is the identity of the empty shape."""

    def __init__(self, field: Field):
        one = field.one
        self.field = field
        e = LinMap((), (), {(): {(): one}}, field)
        self.m = self.unit = self.cm = self.counit = self.antipode = e
        self.shape = ()


def ground(field: Field = QQ) -> _Ground:
    return _Ground(field)


# --- Hopf data -----------------------------------------------------------------

class HopfData:
    """A based space with m, unit, cm, counit and optional antipode."""

    def __init__(self, space: Space, m: LinMap, unit: LinMap, cm: LinMap,
                 counit: LinMap, antipode: LinMap | None = None,
                 field: Field = QQ, name: str | None = None):
        H = (space,)
        for f, dom, cod, what in ((m, H + H, H, "m"), (unit, (), H, "unit"),
                                  (cm, H, H + H, "cm"), (counit, H, (), "counit")):
            if f.dom != dom or f.cod != cod:
                raise DimensionError(
                    f"{what} has shape {shape_str(f.dom)}→{shape_str(f.cod)}, expected "
                    f"{shape_str(dom)}→{shape_str(cod)}")
        if antipode is not None and (antipode.dom != H or antipode.cod != H):
            raise DimensionError("antipode must be an endomorphism of the space")
        self.space = space
        self.m, self.unit, self.cm, self.counit = m, unit, cm, counit
        self.antipode = antipode
        self.field = field
        self.name = name or space.name
        self._tables = None
        self._sinv = None

    @property
    def shape(self):
        return (self.space,)

    @property
    def dim(self):
        return self.space.dim

    def __repr__(self):
        return f"HopfData({self.name}, dim={self.dim})"

    def replace(self, **kw) -> "HopfData":
        args = dict(space=self.space, m=self.m, unit=self.unit, cm=self.cm,
                    counit=self.counit, antipode=self.antipode, field=self.field,
                    name=self.name)
        args.update(kw)
        return HopfData(**args)

    # fast tables
    def _build(self):
        n = self.dim
        mt = _ProductTable(self.m)
        ct = [[(k[0], k[1], v) for k, v in self.cm.col((i,)).items()] for i in range(n)]
        eps = [self.counit.col((i,)).get((), self.field.zero) for i in range(n)]
        st = None
        if self.antipode is not None:
            st = [[(k[0], v) for k, v in self.antipode.col((i,)).items()] for i in range(n)]
        self._tables = (mt, ct, eps, st)

    @property
    def mt(self):
        if self._tables is None:
            self._build()
        return self._tables[0]

    @property
    def ct(self):
        if self._tables is None:
            self._build()
        return self._tables[1]

    @property
    def eps(self):
        if self._tables is None:
            self._build()
        return self._tables[2]

    @property
    def st(self):
        if self._tables is None:
            self._build()
        if self._tables[3] is None:
            raise HopfError(f"{self.name} has no antipode")
        return self._tables[3]

    # elements
    def element(self, terms) -> SparseTensor:
        """terms: dict label -> coeff, or a single label."""
        if isinstance(terms, str):
            terms = {terms: 1}
        return SparseTensor.from_labels(self.shape, [(c, [l]) for l, c in terms.items()], self.field)

    def basis(self, i) -> SparseTensor:
        if isinstance(i, str):
            i = self.space.index(i)
        return SparseTensor.basis(self.shape, (i,), self.field)

    def one(self) -> SparseTensor:
        return SparseTensor(self.shape, dict(self.unit.col(())), self.field)

    def mul(self, x: SparseTensor, y: SparseTensor) -> SparseTensor:
        return tmul((self,), x, y)

    def delta(self, x: SparseTensor) -> SparseTensor:
        return apply(self.cm, x)

    def S(self, x: SparseTensor) -> SparseTensor:
        if self.antipode is None:
            raise HopfError(f"{self.name} has no antipode")
        return apply(self.antipode, x)

    def epsilon(self, x: SparseTensor):
        return apply(self.counit, x).scalar_value()

    @property
    def antipode_inverse(self) -> LinMap:
        if self._sinv is None:
            if self.antipode is None:
                raise HopfError(f"{self.name} has no antipode")
            try:
                self._sinv = inverse(self.antipode)
            except InvertibilityError:
                raise HopfError(f"antipode of {self.name} is not invertible") from None
        return self._sinv

    def left_mult(self, a: SparseTensor) -> LinMap:
        """b -> a·b as a LinMap."""
        cols = {}
        for j in range(self.dim):
            cols[(j,)] = tmul((self,), a, self.basis(j)).data
        return LinMap(self.shape, self.shape, cols, self.field)


class _ProductTable(dict):
    """(i, j) -> [(k, coeff)], filled on first use."""

    def __init__(self, m: LinMap):
        super().__init__()
        self._m = m

    def __missing__(self, key):
        v = [(k[0], c) for k, c in self._m.col(key).items()]
        self[key] = v
        return v


def tmul(algs, x: SparseTensor, y: SparseTensor) -> SparseTensor:
    """Product in the tensor product algebra algs[0]⊗algs[1]⊗..."""
    tabs = [A.mt for A in algs]
    out: dict = {}
    get = out.get
    if len(tabs) == 1:
        mt = tabs[0]
        for (a,), ca in x.data.items():
            for (b,), cb in y.data.items():
                c = ca * cb
                for k, v in mt[(a, b)]:
                    out[(k,)] = get((k,), 0) + c * v
        return SparseTensor(x.shape, out, x.field)
    for kx, cx in x.data.items():
        for ky, cy in y.data.items():
            partial = [((), cx * cy)]
            for leg, mt in enumerate(tabs):
                prods = mt[(kx[leg], ky[leg])]
                if not prods:
                    partial = []
                    break
                partial = [(p + (k,), pc * v) for p, pc in partial for k, v in prods]
            for k, v in partial:
                out[k] = get(k, 0) + v
    return SparseTensor(x.shape, out, x.field)


def tone(algs, field=None) -> SparseTensor:
    """Unit of a tensor product algebra."""
    t = SparseTensor.scalar(1, field or algs[0].field)
    for A in algs:
        t = t @ A.one()
    return t


def tinverse(algs, r: SparseTensor) -> SparseTensor:
    """Inverse of r in the tensor product algebra, by solving r·x = 1."""
    field = r.field
    shape = tuple(A.space for A in algs)
    n = shape_dim(shape)
    cols = []
    for j in range(n):
        b = SparseTensor.basis(shape, unflat_index(j, shape), field)
        cols.append({flat_index(k, shape): v for k, v in tmul(algs, r, b).items()})
    one = tone(algs, field)
    rhs = {flat_index(k, shape): v for k, v in one.items()}
    try:
        x = solve_vector(cols, rhs, n, field)
    except InvertibilityError:
        raise NotInvertibleError("element is not invertible") from None
    inv = SparseTensor(shape, {unflat_index(j, shape): v for j, v in enumerate(x)}, field)
    if tmul(algs, inv, r) != one:
        raise NotInvertibleError("element has a right inverse that is not a left inverse")
    return inv


# --- axiom verification ---------------------------------------------------------

def _first_mismatch(lhs: LinMap, rhs: LinMap):
    j = lhs.first_difference(rhs)
    return None if j is None else label_of(lhs.dom, j)


def _vmul(mt, x: dict, y: dict) -> dict:
    out: dict = {}
    for a, ca in x.items():
        for b, cb in y.items():
            c = ca * cb
            for k, v in mt[(a, b)]:
                out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v != 0}


def _vdelta(ct, x: dict) -> dict:
    out: dict = {}
    for a, ca in x.items():
        for b, c, v in ct[a]:
            out[(b, c)] = out.get((b, c), 0) + ca * v
    return {k: v for k, v in out.items() if v != 0}


def _v2mul(mt, x: dict, y: dict) -> dict:
    out: dict = {}
    for (a1, a2), ca in x.items():
        for (b1, b2), cb in y.items():
            p1 = mt[(a1, b1)]
            if not p1:
                continue
            p2 = mt[(a2, b2)]
            c = ca * cb
            for k1, v1 in p1:
                for k2, v2 in p2:
                    out[(k1, k2)] = out.get((k1, k2), 0) + c * v1 * v2
    return {k: v for k, v in out.items() if v != 0}


def generated_dimension(h: HopfData, generators) -> int:
    """Dimension of the subalgebra generated by the given basis indices."""
    from .linalg import _row_reduce
    mt = h.mt
    basis_rows: dict = {}
    pivots: dict = {}

    def reduce(v: dict) -> dict:
        v = dict(v)
        changed = True
        while changed:
            changed = False
            for p, row in pivots.items():
                c = v.get(p)
                if c:
                    for k, w in row.items():
                        nv = v.get(k, 0) - c * w
                        if nv == 0:
                            v.pop(k, None)
                        else:
                            v[k] = nv
                    changed = True
        return v

    def add(v: dict) -> bool:
        v = reduce(v)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {k: w * inv for k, w in v.items()}
        for q, row in pivots.items():
            c = row.get(p)
            if c:
                for k, w in v.items():
                    nv = row.get(k, 0) - c * w
                    if nv == 0:
                        row.pop(k, None)
                    else:
                        row[k] = nv
        pivots[p] = v
        return True

    one = {k[0]: v for k, v in h.unit.col(()).items()}
    frontier = [one] if add(one) else []
    while frontier:
        nxt = []
        for v in frontier:
            for g in generators:
                g = {g: h.field.one} if isinstance(g, int) else g
                w = _vmul(mt, g, v)
                if w and add(w):
                    nxt.append(w)
        frontier = nxt
    return len(pivots)


def verify_hopf(h: HopfData, generators=None) -> Report:
    """Exact check of every bialgebra/Hopf axiom; failures carry a witness.

    With generators (basis indices generating the algebra, which is
    checked) the identities that are multiplicative in their first argument
    are only tested with a generator there; by induction on word length
    this is equivalent to the full test.
    """
    f = h.field
    n = h.dim
    labs = h.space.labels
    mt, ct, eps = h.mt, h.ct, h.eps
    one = {k[0]: v for k, v in h.unit.col(()).items()}
    rep = Report()
    def basis(i):
        return {i: f.one}

    if generators is None:
        firsts = [(labs[i], basis(i)) for i in range(n)]
    else:
        firsts = []
        for g in generators:
            if isinstance(g, int):
                firsts.append((labs[g], basis(g)))
            else:
                g = {k[0]: v for k, v in g.items()} if isinstance(g, SparseTensor) else dict(g)
                firsts.append(("+".join(labs[k] for k in sorted(g)), g))
        d = generated_dimension(h, [g for _, g in firsts])
        rep.add("generators span", d == n, None if d == n else f"dimension {d} < {n}")

    def first_bad(it):
        for w, ok in it:
            if not ok:
                return w
        return None

    def assoc():
        for xl, x in firsts:
            for y in range(n):
                xy = _vmul(mt, x, basis(y))
                for z in range(n):
                    yz = mt[(y, z)]
                    lhs = _vmul(mt, xy, basis(z))
                    rhs = _vmul(mt, x, {k: v for k, v in yz})
                    yield f"{xl}⊗{labs[y]}⊗{labs[z]}", lhs == rhs

    w = first_bad(assoc())
    rep.add("associativity", w is None, w)
    w = first_bad((labs[y], _vmul(mt, one, basis(y)) == basis(y)) for y in range(n))
    rep.add("unit (left)", w is None, w)
    w = first_bad((labs[y], _vmul(mt, basis(y), one) == basis(y)) for y in range(n))
    rep.add("unit (right)", w is None, w)

    def coassoc():
        for x in range(n):
            l: dict = {}
            r: dict = {}
            for a, b, c in ct[x]:
                for a1, a2, d in ct[a]:
                    l[(a1, a2, b)] = l.get((a1, a2, b), 0) + c * d
                for b1, b2, d in ct[b]:
                    r[(a, b1, b2)] = r.get((a, b1, b2), 0) + c * d
            yield labs[x], _nz(l) == _nz(r)

    w = first_bad(coassoc())
    rep.add("coassociativity", w is None, w)

    def counit(side):
        for x in range(n):
            v: dict = {}
            for a, b, c in ct[x]:
                k, e = (b, eps[a]) if side == "left" else (a, eps[b])
                v[k] = v.get(k, 0) + c * e
            yield labs[x], _nz(v) == basis(x)

    for side in ("left", "right"):
        w = first_bad(counit(side))
        rep.add(f"counit ({side})", w is None, w)

    delta_cache = [_vdelta(ct, basis(y)) for y in range(n)]

    def bialg():
        for xl, x in firsts:
            dx = _vdelta(ct, x)
            for y in range(n):
                lhs = _vdelta(ct, _vmul(mt, x, basis(y)))
                rhs = _v2mul(mt, dx, delta_cache[y])
                yield f"{xl}⊗{labs[y]}", lhs == rhs

    w = first_bad(bialg())
    rep.add("bialgebra (Δ∘m)", w is None, w)

    def epsmul():
        for xl, x in firsts:
            ex = sum((c * eps[k] for k, c in x.items()), f.zero)
            for y in range(n):
                v = sum((c * eps[k] for k, c in _vmul(mt, x, basis(y)).items()), f.zero)
                yield f"{xl}⊗{labs[y]}", v == ex * eps[y]

    w = first_bad(epsmul())
    rep.add("counit multiplicative", w is None, w)
    d1 = _vdelta(ct, one)
    rep.add("unit comultiplicative", d1 == _nz({(a, b): ca * cb for a, ca in one.items() for b, cb in one.items()}),
            None if d1 else "1")
    e1 = sum((c * eps[k] for k, c in one.items()), f.zero)
    rep.add("counit of unit", e1 == 1, None if e1 == 1 else "1")

    if h.antipode is not None:
        st = h.st

        def anti(side):
            for x in range(n):
                v: dict = {}
                for a, b, c in ct[x]:
                    if side == "left":
                        pairs = [(s, b, w) for s, w in st[a]]
                    else:
                        pairs = [(a, s, w) for s, w in st[b]]
                    for p, q, w in pairs:
                        for k, u in mt[(p, q)]:
                            v[k] = v.get(k, 0) + c * w * u
                target = {k: eps[x] * c for k, c in one.items()}
                yield labs[x], _nz(v) == _nz(target)

        for side in ("left", "right"):
            w = first_bad(anti(side))
            rep.add(f"antipode ({side})", w is None, w)
    return rep


def _nz(d: dict) -> dict:
    return {k: v for k, v in d.items() if v != 0}


def compose_all_(*maps):
    out = maps[0]
    for g in maps[1:]:
        out = compose(out, g)
    return out


def verify_algebra_morphism(f: LinMap, src, dst) -> Report:
    """f∘m = m∘(f⊗f) and f∘η = η."""
    rep = Report()
    lhs = compose(src.m, f)
    rhs = compose(tensor(f, f), dst.m)
    rep.add("multiplicative", lhs == rhs, _first_mismatch(lhs, rhs))
    lhs = compose(src.unit, f)
    rep.add("unital", lhs == dst.unit, None if lhs == dst.unit else "1")
    return rep


def verify_coalgebra_morphism(f: LinMap, src, dst) -> Report:
    rep = Report()
    lhs = compose(f, dst.cm)
    rhs = compose(src.cm, tensor(f, f))
    rep.add("comultiplicative", lhs == rhs, _first_mismatch(lhs, rhs))
    lhs = compose(f, dst.counit)
    rep.add("counital", lhs == src.counit, _first_mismatch(lhs, src.counit))
    return rep


def verify_bialgebra_morphism(f: LinMap, src, dst) -> Report:
    rep = verify_algebra_morphism(f, src, dst)
    rep.extend(verify_coalgebra_morphism(f, src, dst))
    return rep


# --- convolution ----------------------------------------------------------------

def convolution(f: LinMap, g: LinMap, src, dst) -> LinMap:
    """m_dst ∘ (f⊗g) ∘ Δ_src."""
    if f.dom != src.shape or g.dom != src.shape or f.cod != dst.shape or g.cod != dst.shape:
        raise DimensionError(
            f"convolution needs maps {shape_str(src.shape)}→{shape_str(dst.shape)}, got "
            f"{shape_str(f.dom)}→{shape_str(f.cod)} and {shape_str(g.dom)}→{shape_str(g.cod)}")
    return compose(compose(src.cm, tensor(f, g)), dst.m)


def convolution_unit(src, dst) -> LinMap:
    return compose(src.counit, dst.unit)


def convolution_inverse_map(f: LinMap, src, dst) -> LinMap:
    """The g with f*g = η∘ε (checked to be two-sided)."""
    field = src.field if hasattr(src, "field") else f.field
    dom, cod = src.shape, dst.shape
    nd, nc = shape_dim(dom), shape_dim(cod)
    # unknown g has entries g[i, j]; column index q = j*nc + i
    cols = []
    for jj in range(nd):
        for ii in range(nc):
            e = LinMap(dom, cod, {unflat_index(jj, dom): {unflat_index(ii, cod): field.one}}, field)
            conv = convolution(f, e, src, dst)
            cols.append({flat_index(j, dom) * nc + flat_index(i, cod): v
                         for j, c in conv.cols.items() for i, v in c.items()})
    target = convolution_unit(src, dst)
    rhs = {flat_index(j, dom) * nc + flat_index(i, cod): v
           for j, c in target.cols.items() for i, v in c.items()}
    try:
        x = solve_vector(cols, rhs, nd * nc, field)
    except InvertibilityError:
        raise NotInvertibleError("map is not convolution-invertible") from None
    gcols: dict = {}
    for q, v in enumerate(x):
        if v != 0:
            jj, ii = divmod(q, nc)
            gcols.setdefault(unflat_index(jj, dom), {})[unflat_index(ii, cod)] = v
    g = LinMap(dom, cod, gcols, field)
    if convolution(g, f, src, dst) != target:
        raise NotInvertibleError("convolution inverse is only one-sided")
    return g


def element_inverse(r: SparseTensor, algs) -> SparseTensor:
    """Inverse of r in the algebra algs (a HopfData or a tuple for a tensor product)."""
    if isinstance(algs, HopfData):
        algs = (algs,)
    return tinverse(tuple(algs), r)


# --- derived algebras ----------------------------------------------------------------

def opposite(h: HopfData) -> HopfData:
    """Opposite multiplication; antipode S⁻¹."""
    H = h.space
    m = compose(swap(H, H, h.field), h.m)
    S = h.antipode_inverse if h.antipode is not None else None
    return HopfData(H, m, h.unit, h.cm, h.counit, S, h.field, h.name + "^op")


def co_opposite(h: HopfData) -> HopfData:
    """Opposite comultiplication; antipode S⁻¹."""
    H = h.space
    cm = compose(h.cm, swap(H, H, h.field))
    S = h.antipode_inverse if h.antipode is not None else None
    return HopfData(H, h.m, h.unit, cm, h.counit, S, h.field, h.name + "^cop")


def dual_space(H: Space) -> Space:
    return Space(H.name + "*", tuple("e_" + l for l in H.labels))


def dual_hopf(h: HopfData, name: str | None = None) -> HopfData:
    """H* on the dual basis: (f*g)(a) = f(a1)g(a2), Δf(a⊗b) = f(ab), S(f)(a) = f(S a)."""
    if h.antipode is None:
        raise HopfError("dual_hopf needs an antipode")
    H = h.space
    D = dual_space(H)
    if name:
        D = Space(name, D.labels)
    field = h.field
    # transpose every structure map
    m = _transpose(h.cm, (D,), field)
    cm = _transpose(h.m, (D,), field)
    unit = _transpose(h.counit, (D,), field)
    counit = _transpose(h.unit, (D,), field)
    S = _transpose(h.antipode, (D,), field)
    return HopfData(D, m, unit, cm, counit, S, field, D.name)


def _transpose(f: LinMap, D, field) -> LinMap:
    dom = D * len(f.cod)
    cod = D * len(f.dom)
    cols: dict = {}
    for j, c in f.cols.items():
        for i, v in c.items():
            cols.setdefault(i, {})[j] = v
    return LinMap(dom, cod, cols, field)


def tensor_hopf(a: HopfData, h: HopfData, name: str | None = None, lazy=False) -> HopfData:
    """The tensor product Hopf algebra A⊗H on a product space."""
    field = a.field
    X = product_space(a.space, h.space, name=name)
    algs = (a, h)

    def mcol(j):
        x = SparseTensor.basis((a.space, h.space), X.split(j[0]), field)
        y = SparseTensor.basis((a.space, h.space), X.split(j[1]), field)
        return {(X.join(k),): v for k, v in tmul(algs, x, y).items()}

    def cmcol(j):
        i1, i2 = X.split(j[0])
        out = {}
        for a1, a2, c in a.ct[i1]:
            for h1, h2, d in h.ct[i2]:
                k = (X.join((a1, h1)), X.join((a2, h2)))
                out[k] = out.get(k, 0) + c * d
        return out

    XX = (X, X)
    if lazy:
        m = LinMap.lazy(XX, (X,), mcol, field)
        cm = LinMap.lazy((X,), XX, cmcol, field)
    else:
        m = LinMap.from_function(XX, (X,), mcol, field)
        cm = LinMap.from_function((X,), XX, cmcol, field)
    unit = LinMap((), (X,), {(): {(X.join(k),): v for k, v in tone(algs).items()}}, field)
    counit = LinMap((X,), (), {(X.join((i, j)),): {(): a.eps[i] * h.eps[j]}
                               for i in range(a.dim) for j in range(h.dim)}, field)
    S = None
    if a.antipode is not None and h.antipode is not None:
        S = LinMap((X,), (X,), {(X.join((i, j)),): {(X.join((k, l)),): c * d
                                                     for k, c in a.st[i] for l, d in h.st[j]}
                                for i in range(a.dim) for j in range(h.dim)}, field)
    return HopfData(X, m, unit, cm, counit, S, field, X.name)


def flatten_tensor(t: SparseTensor, X: Space, nlegs: int) -> SparseTensor:
    """Regroup consecutive legs of t into copies of the product space X."""
    k = len(X.factors)
    data = {}
    for key, v in t.items():
        data[tuple(X.join(key[i * k:(i + 1) * k]) for i in range(nlegs))] = v
    return SparseTensor((X,) * nlegs, data, t.field, False)


def unflatten_tensor(t: SparseTensor) -> SparseTensor:
    """Split every product-space leg of t into its factors."""
    shape = []
    for s in t.shape:
        shape.extend(s.factors or (s,))
    data = {}
    for key, v in t.items():
        nk = ()
        for s, i in zip(t.shape, key):
            nk += s.split(i)
        data[nk] = v
    return SparseTensor(tuple(shape), data, t.field, False)


# --- duality --------------------------------------------------------------------

@dataclass
class DualityPair:
    primal: Space
    dual: Space
    ev: LinMap
    coev: LinMap

    def snakes(self) -> Report:
        f = self.ev.field
        H, D = self.primal, self.dual
        rep = Report()
        # H -> H⊗H*⊗H -> H
        z1 = compose(tensor(self.coev, identity(H, f)), tensor(identity(H, f), self.ev))
        rep.add("snake on H", z1 == identity(H, f), _first_mismatch(z1, identity(H, f)))
        z2 = compose(tensor(identity(D, f), self.coev), tensor(self.ev, identity(D, f)))
        rep.add("snake on H*", z2 == identity(D, f), _first_mismatch(z2, identity(D, f)))
        return rep


def make_duality(h, dual: Space | None = None) -> DualityPair:
    """ev(f⊗a) = f(a), coev(1) = Σ x_i⊗e_{x_i}."""
    H = h.space if isinstance(h, HopfData) else h
    field = h.field if isinstance(h, HopfData) else QQ
    D = dual or dual_space(H)
    one = field.one
    ev = LinMap((D, H), (), {(i, i): {(): one} for i in range(H.dim)}, field)
    coev = LinMap((), (H, D), {(): {(i, i): one for i in range(H.dim)}}, field)
    return DualityPair(H, D, ev, coev)
