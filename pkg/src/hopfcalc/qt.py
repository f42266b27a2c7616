"""Quasitriangular structures, weak R-matrices, braidings and transmutation."""

from __future__ import annotations

from dataclasses import dataclass

from .hopf import (
    HopfData, HopfError, NotInvertibleError, Report, label_of, tinverse, tmul, tone,
    verify_bialgebra_morphism, _first_mismatch,
)
from .linalg import (
    DimensionError, LinMap, Space, SparseTensor, all_indices, apply, compose, identity,
    shape_str, swap, tensor,
)


class MorphismError(ValueError):
    def __init__(self, msg, report: Report | None = None):
        super().__init__(msg)
        self.report = report


class ModuleError(ValueError):
    pass


class QTElement:
    """An invertible element of A⊗H (or H⊗H) with its inverse cached."""

    def __init__(self, value: SparseTensor, algs, role: str = "R", inverse=None):
        algs = tuple(algs)
        if tuple(A.space for A in algs) != value.shape:
            raise DimensionError(
                f"element of shape {shape_str(value.shape)} does not live in "
                f"{'⊗'.join(A.name for A in algs)}")
        self.value = value
        self.algs = algs
        self.role = role
        self._inv = inverse

    @property
    def inverse(self) -> SparseTensor:
        if self._inv is None:
            self._inv = tinverse(self.algs, self.value)
        return self._inv

    @property
    def field(self):
        return self.value.field

    def terms(self):
        return self.value.terms()

    def __repr__(self):
        return f"QTElement({self.role}: {self.value!r})"

    def _raw(self, value, algs, role, inverse):
        self.value, self.algs, self.role, self._inv = value, algs, role, inverse
        return self

    @classmethod
    def unit(cls, algs, role="1"):
        return cls(tone(algs), algs, role, tone(algs))


def as_qt(r, algs, role="R") -> QTElement:
    if isinstance(r, QTElement):
        return r
    return QTElement(r, algs, role)


def embed_legs(t: SparseTensor, algs, positions) -> SparseTensor:
    """Place leg k of t at positions[k] of a tensor over algs; other legs get 1."""
    n = len(algs)
    rest = [i for i in range(n) if i not in positions]
    units = [algs[i].one() for i in rest]
    out = {}
    for key, v in t.items():
        partial = [((None,) * n, v)]
        for r, u in zip(rest, units):
            partial = [(p[:r] + (k,) + p[r + 1:], c * w) for p, c in partial for (k,), w in u.items()]
        for p, c in partial:
            p = list(p)
            for leg, pos in enumerate(positions):
                p[pos] = key[leg]
            p = tuple(p)
            out[p] = out.get(p, 0) + c
    return SparseTensor(tuple(A.space for A in algs), out, t.field)


# --- checks ----------------------------------------------------------------------------

def check_weak_r(a: HopfData, h: HopfData, r) -> Report:
    """(Δ_A⊗id)R = R₁₃R₂₃, (id⊗Δ_H)R = R₁₃R₁₂, R convolution-invertible."""
    R = r.value if isinstance(r, QTElement) else r
    rep = Report()
    AAH = (a, a, h)
    lhs = apply(a.cm, R, 0)
    rhs = tmul(AAH, embed_legs(R, AAH, (0, 2)), embed_legs(R, AAH, (1, 2)))
    rep.add("(Δ⊗id)R = R13·R23", lhs == rhs, _tensor_witness(lhs, rhs))
    AHH = (a, h, h)
    lhs = apply(h.cm, R, 1)
    rhs = tmul(AHH, embed_legs(R, AHH, (0, 2)), embed_legs(R, AHH, (0, 1)))
    rep.add("(id⊗Δ)R = R13·R12", lhs == rhs, _tensor_witness(lhs, rhs))
    try:
        inv = r.inverse if isinstance(r, QTElement) else tinverse((a, h), R)
        rep.add("invertible", True)
    except NotInvertibleError:
        rep.add("invertible", False, "no inverse")
    return rep


def _tensor_witness(x: SparseTensor, y: SparseTensor):
    for k in sorted(set(x.data) | set(y.data)):
        if x.data.get(k, 0) != y.data.get(k, 0):
            return label_of(x.shape, k)
    return None


def check_qt(h: HopfData, r, basis=None) -> Report:
    """The two comultiplication identities, RΔ(x) = Δ^op(x)R on basis x, invertibility.

    basis restricts the intertwining check to the given elements (basis
    indices or SparseTensors). Both sides are multiplicative in x, so a
    generating set is enough.
    """
    R = r.value if isinstance(r, QTElement) else r
    rep = check_weak_r(h, h, r)
    HH = (h, h)
    bad = None
    for i in (range(h.dim) if basis is None else basis):
        if isinstance(i, int):
            x = h.basis(i)
        elif isinstance(i, dict):
            x = SparseTensor(h.shape, {(k,): v for k, v in i.items()}, h.field)
        else:
            x = i
        d = h.delta(x)
        lhs = tmul(HH, R, d)
        rhs = tmul(HH, d.permute((1, 0)), R)
        if lhs != rhs:
            bad = h.space.labels[i] if isinstance(i, int) else repr(x)
            break
    rep.add("R·Δ = Δ^op·R", bad is None, bad)
    return rep


def is_triangular(h: HopfData, r) -> bool:
    R = r.value if isinstance(r, QTElement) else r
    HH = (h, h)
    return tmul(HH, R.permute((1, 0)), R) == tone(HH, h.field)


def cw_membership(a: HopfData, h: HopfData, u) -> bool:
    """Weak R-matrix lying in the centre of A⊗H."""
    if not check_weak_r(a, h, u).ok:
        return False
    U = u.value if isinstance(u, QTElement) else u
    AH = (a, h)
    for i in range(a.dim):
        for j in range(h.dim):
            b = SparseTensor.basis((a.space, h.space), (i, j), a.field)
            if tmul(AH, U, b) != tmul(AH, b, U):
                return False
    return True


def central_witness(a: HopfData, h: HopfData, u: SparseTensor):
    AH = (a, h)
    for i in range(a.dim):
        for j in range(h.dim):
            b = SparseTensor.basis((a.space, h.space), (i, j), a.field)
            if tmul(AH, u, b) != tmul(AH, b, u):
                return label_of(b.shape, (i, j))
    return None


def compose_rd(p, q, r, u, v, a: HopfData | None = None, h: HopfData | None = None,
               carrier: Space | None = None, algs=None) -> QTElement:
    """R_D = Σ R'P'U' ⊗ Q'R̄''V'' ⊗ P''R̄'V' ⊗ R''Q''U'' in D⊗D, D = A⊗H.

    R_D is the product R₁₄P₁₃Q₂₄U₁₄R̄₃₂V₃₂ of leg embeddings, so its inverse
    is the product of the inverted factors in reverse order; both one-sided
    products are checked exactly.
    """
    a = a or r.algs[0]
    h = h or r.algs[1]
    legs = (a, h, a, h)
    placements = [(r.value, r.inverse, (0, 3)), (p.value, p.inverse, (0, 2)),
                  (q.value, q.inverse, (1, 3)), (u.value, u.inverse, (0, 3)),
                  (r.inverse, r.value, (2, 1)), (v.value, v.inverse, (2, 1))]
    out = inv = None
    for val, vinv, pos in placements:
        fct = embed_legs(val, legs, pos)
        ifct = embed_legs(vinv, legs, pos)
        out = fct if out is None else tmul(legs, out, fct)
        inv = ifct if inv is None else tmul(legs, ifct, inv)
    one = tone(legs)
    if tmul(legs, out, inv) != one or tmul(legs, inv, out) != one:
        raise NotInvertibleError("R_D factors do not invert")
    if carrier is None:
        from .linalg import product_space
        carrier = product_space(a.space, h.space)

    def flat(t):
        data = {(carrier.join(k[0:2]), carrier.join(k[2:4])): c for k, c in t.items()}
        return SparseTensor((carrier, carrier), data, t.field, False)

    value, value_inv = flat(out), flat(inv)
    if algs is None:
        return QTElement.__new__(QTElement)._raw(value, None, "R_D", value_inv)
    return QTElement(value, algs, "R_D", value_inv)


# --- actions and braidings ---------------------------------------------------------------

def adjoint_action(h: HopfData, lazy=False) -> LinMap:
    """ad(x⊗b) = Σ x₁ b S(x₂)."""
    H = h.space
    st = h.st

    def col(j):
        x, b = j
        out = {}
        for x1, x2, c in h.ct[x]:
            for k, v in h.mt[(x1, b)]:
                for s, w in st[x2]:
                    for kk, vv in h.mt[(k, s)]:
                        out[(kk,)] = out.get((kk,), 0) + c * v * w * vv
        return out

    if lazy:
        return LinMap.lazy((H, H), (H,), col, h.field)
    return LinMap.from_function((H, H), (H,), col, h.field)


def check_module(h: HopfData, rho: LinMap) -> Report:
    V = rho.cod
    f = h.field
    rep = Report()
    lhs = compose(tensor(h.m, identity(V, f)), rho)
    rhs = compose(tensor(identity(h.space, f), rho), rho)
    rep.add("action associative", lhs == rhs, _first_mismatch(lhs, rhs))
    lhs = compose(tensor(h.unit, identity(V, f)), rho)
    rep.add("action unital", lhs == identity(V, f), _first_mismatch(lhs, identity(V, f)))
    return rep


def module_braiding(h: HopfData, r, rho_v: LinMap, rho_w: LinMap, check=True) -> LinMap:
    """c(v⊗w) = Σ R''·w ⊗ R'·v."""
    if check:
        for rho in (rho_v, rho_w):
            rep = check_module(h, rho)
            if not rep.ok:
                raise ModuleError(f"not a module: {rep.failures()[0].name}")
    R = r.value if isinstance(r, QTElement) else r
    V, W = rho_v.cod, rho_w.cod
    f = h.field

    def col(j):
        nv = len(V)
        jv, jw = j[:nv], j[nv:]
        out = {}
        for (r1, r2), c in R.items():
            for wv, a in rho_w.col((r2,) + jw).items():
                for vv, b in rho_v.col((r1,) + jv).items():
                    k = wv + vv
                    out[k] = out.get(k, 0) + c * a * b
        return out

    return LinMap.from_function(V + W, W + V, col, f)


def regular_module(h: HopfData) -> LinMap:
    return h.m


# --- transmutation --------------------------------------------------------------------------

class BraidedHopfData(HopfData):
    """A bialgebra in the category of H₁-modules with braiding from R."""

    def __init__(self, hopf: HopfData, ambient: HopfData, r: QTElement, action: LinMap,
                 name=None):
        super().__init__(hopf.space, hopf.m, hopf.unit, hopf.cm, hopf.counit,
                         hopf.antipode, hopf.field, name or hopf.name)
        self.ambient = ambient
        self.r = r
        self.action = action            # ambient ⊗ B -> B

    @property
    def braided_antipode(self):
        return self.antipode

    def braiding(self, other: "BraidedHopfData | None" = None) -> LinMap:
        """C^R on self⊗other (other defaults to self)."""
        other = other or self
        return module_braiding(self.ambient, self.r, self.action, other.action, check=False)

    def braided_tensor_mult(self) -> LinMap:
        """m_{B⊗B} = (m⊗m)(id⊗c⊗id)."""
        B = self.space
        f = self.field
        c = self.braiding()
        mid = tensor(tensor(identity(B, f), c), identity(B, f))
        return compose(mid, tensor(self.m, self.m))


def transmute(h1: HopfData, f: LinMap, h: HopfData, r1, check=True,
              lazy=False) -> BraidedHopfData:
    """B(H₁, f, H): the algebra H with Δ_B(b) = Σ b₁·f(S R'') ⊗ ad(f R')(b₂),
    S_B(b) = Σ f(R'')·S(ad(f R')(b)), counit ε_H."""
    r1 = as_qt(r1, (h1, h1))
    if check:
        rep = verify_bialgebra_morphism(f, h1, h)
        if not rep.ok:
            bad = rep.failures()[0]
            raise MorphismError(f"f is not a bialgebra morphism: {bad.name} fails at {bad.witness}", rep)
        rep = check_qt(h1, r1)
        if not rep.ok:
            raise MorphismError(f"R is not quasitriangular: {rep.failures()[0].name}", rep)
    field = h.field
    H = h.space
    R = r1.value
    mt, st = h.mt, h.st
    # group (f⊗f)R by its first leg: Σ_i e_i ⊗ c_i
    fR = apply(f, apply(f, R, 0), 1)
    groups: dict = {}
    for (i, k), c in fR.items():
        groups.setdefault(i, {})[k] = c
    legs = []                      # (ad(e_i) column cache, c_i, f(S R'') = S(c_i))
    for i, ci in sorted(groups.items()):
        sci: dict = {}
        for k, c in ci.items():
            for s, w in st[k]:
                sci[s] = sci.get(s, 0) + c * w
        legs.append((i, ci, {k: v for k, v in sci.items() if v != 0}))
    ad_cache: dict = {}

    def ad(i, z):
        key = (i, z)
        r = ad_cache.get(key)
        if r is None:
            r = {}
            for y1, y2, c in h.ct[i]:
                left = mt[(y1, z)]
                if not left:
                    continue
                for s, w in st[y2]:
                    for k, v in left:
                        for kk, vv in mt[(k, s)]:
                            r[kk] = r.get(kk, 0) + c * w * v * vv
            r = [(k, v) for k, v in r.items() if v != 0]
            ad_cache[key] = r
        return r

    def cmcol(j):
        out = {}
        get = out.get
        for b1, b2, c in h.ct[j[0]]:
            for i, ci, sci in legs:
                right = ad(i, b2)
                if not right:
                    continue
                left = {}
                for s, w in sci.items():
                    for l, u in mt[(b1, s)]:
                        left[l] = left.get(l, 0) + w * u
                for l, u in left.items():
                    if u == 0:
                        continue
                    cu = c * u
                    for k, v in right:
                        key = (l, k)
                        out[key] = get(key, 0) + cu * v
        return out

    def scol(j):
        out = {}
        for i, ci, _ in legs:
            for k, v in ad(i, j[0]):
                for s, w in st[k]:
                    for r2, c in ci.items():
                        for kk, vv in mt[(r2, s)]:
                            out[(kk,)] = out.get((kk,), 0) + c * v * w * vv
        return out

    if lazy:
        cm = LinMap.lazy((H,), (H, H), cmcol, field)
        SB = LinMap.lazy((H,), (H,), scol, field)
    else:
        cm = LinMap.from_function((H,), (H, H), cmcol, field)
        SB = LinMap.from_function((H,), (H,), scol, field)
    base = HopfData(H, h.m, h.unit, cm, h.counit, SB, field, f"B({h1.name},f,{h.name})")
    # H₁ acts on B through f and the adjoint action
    def actcol(j):
        out = {}
        for (k,), c in f.col((j[0],)).items():
            for kk, v in ad(k, j[1]):
                out[(kk,)] = out.get((kk,), 0) + c * v
        return out

    action = LinMap.lazy((h1.space, H), (H,), actcol, field)
    return BraidedHopfData(base, h1, r1, action)


def braided_analogue(h: HopfData, r, **kw) -> BraidedHopfData:
    out = transmute(h, identity(h.space, h.field), h, r, **kw)
    out.name = f"{h.name}_"
    return out


def verify_braided(b: BraidedHopfData) -> Report:
    """Braided bialgebra law with C^R, braided antipode, counit and coassociativity."""
    B = b.space
    f = b.field
    idB = identity(B, f)
    rep = Report()
    lhs = compose(b.m, b.cm)
    rhs = compose(tensor(b.cm, b.cm), b.braided_tensor_mult())
    rep.add("braided bialgebra law", lhs == rhs, _first_mismatch(lhs, rhs))
    lhs = compose(b.cm, tensor(b.cm, idB))
    rhs = compose(b.cm, tensor(idB, b.cm))
    rep.add("coassociativity", lhs == rhs, _first_mismatch(lhs, rhs))
    for side, t in (("left", tensor(b.counit, idB)), ("right", tensor(idB, b.counit))):
        lhs = compose(b.cm, t)
        rep.add(f"counit ({side})", lhs == idB, _first_mismatch(lhs, idB))
    e = compose(b.counit, b.unit)
    for side, t in (("left", tensor(b.antipode, idB)), ("right", tensor(idB, b.antipode))):
        lhs = compose(compose(b.cm, t), b.m)
        rep.add(f"braided antipode ({side})", lhs == e, _first_mismatch(lhs, e))
    return rep
