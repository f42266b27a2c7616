"""Double bicrossproducts A^φ_α⋈^ψ_β H and their specialisations."""

from __future__ import annotations

from dataclasses import dataclass

from .hopf import (
    HopfData, HopfError, Report, co_opposite, convolution_inverse_map, dual_hopf,
    label_of, make_duality, compose_all_, tensor_hopf, tone, verify_hopf, DualityPair, _first_mismatch,
    NotInvertibleError,
)
from .linalg import (
    DimensionError, LinMap, Space, SparseTensor, all_indices, apply, compose, identity,
    product_space, shape_str, swap, tensor, tensor_all,
)


@dataclass
class CrossStructure:
    """α: H⊗A→A, β: H⊗A→H, φ: A→H⊗A, ψ: H→H⊗A. None marks the trivial map."""

    alpha: LinMap | None = None
    beta: LinMap | None = None
    phi: LinMap | None = None
    psi: LinMap | None = None

    @property
    def flags(self) -> dict:
        return {k: getattr(self, k) is None for k in ("alpha", "beta", "phi", "psi")}

    def explicit(self, a: HopfData, h: HopfData) -> "CrossStructure":
        """Same structure with every trivial map written out."""
        t = trivial_maps(a, h)
        return CrossStructure(*(getattr(self, k) if getattr(self, k) is not None else t[k]
                                for k in ("alpha", "beta", "phi", "psi")))


def trivial_maps(a: HopfData, h: HopfData) -> dict:
    f = a.field
    A, H = a.space, h.space
    return {
        "alpha": tensor(h.counit, identity(A, f)),
        "beta": tensor(identity(H, f), a.counit),
        "phi": tensor(h.unit, identity(A, f)),
        "psi": tensor(identity(H, f), a.unit),
    }


class AssembledBialgebra(HopfData):
    """A bialgebra on the carrier A⊗H together with how it was built."""

    def __init__(self, hopf: HopfData, a: HopfData, h: HopfData, provenance: str,
                 cross: CrossStructure | None = None, report: Report | None = None):
        super().__init__(hopf.space, hopf.m, hopf.unit, hopf.cm, hopf.counit,
                         hopf.antipode, hopf.field, hopf.name)
        self.a, self.h = a, h
        self.provenance = provenance
        self.cross = cross
        self.report = report

    def pair_shape(self):
        return (self.a.space, self.h.space)

    def embed(self, t: SparseTensor) -> SparseTensor:
        """Regroup legs (A, H, A, H, ...) into carrier legs."""
        X = self.space
        k = len(t.shape) // 2
        data = {tuple(X.join(key[2 * i:2 * i + 2]) for i in range(k)): v for key, v in t.items()}
        return SparseTensor((X,) * k, data, t.field, False)

    def split(self, t: SparseTensor) -> SparseTensor:
        shape = ()
        for _ in t.shape:
            shape += (self.a.space, self.h.space)
        data = {}
        for key, v in t.items():
            nk = ()
            for i in key:
                nk += self.space.split(i)
            data[nk] = v
        return SparseTensor(shape, data, t.field, False)


def _assemble_maps(a, h, cs: CrossStructure, crossing):
    """Column functions for m_D and Δ_D on split legs."""
    f = a.field
    A, H = a.space, h.space
    cs = cs.explicit(a, h)
    X = product_space(A, H, name=f"{a.name}⋈{h.name}")
    if crossing is None:
        c_HA, c_AH = swap(H, A, f), swap(A, H, f)
    else:
        c_HA, c_AH = crossing

    def mcol(j):
        (ai, hi), (bi, gi) = X.split(j[0]), X.split(j[1])
        t = SparseTensor.basis((A, H, A, H), (ai, hi, bi, gi), f)
        t = apply(h.cm, t, 1)            # a h1 h2 b g
        t = apply(a.cm, t, 3)            # a h1 h2 b1 b2 g
        t = apply(c_HA, t, 2)            # a h1 b1 h2 b2 g
        t = apply(cs.alpha, t, 1)        # a α h2 b2 g
        t = apply(cs.beta, t, 2)         # a α β g
        t = apply(a.m, t, 0)
        t = apply(h.m, t, 1)
        return {(X.join(k),): v for k, v in t.items()}

    def cmcol(j):
        ai, hi = X.split(j[0])
        t = SparseTensor.basis((A, H), (ai, hi), f)
        t = apply(a.cm, t, 0)            # a1 a2 h
        t = apply(h.cm, t, 2)            # a1 a2 h1 h2
        t = apply(cs.phi, t, 1)          # a1 φH φA h1 h2
        t = apply(cs.psi, t, 3)          # a1 φH φA ψH ψA h2
        t = apply(c_AH, t, 2)            # a1 φH ψH φA ψA h2
        t = apply(h.m, t, 1)             # a1 H φA ψA h2
        t = apply(a.m, t, 2)             # a1 H A h2
        return {(X.join(k[0:2]), X.join(k[2:4])): v for k, v in t.items()}

    return X, mcol, cmcol


def double_bicrossproduct(a: HopfData, h: HopfData, cs: CrossStructure, *,
                          crossing=None, antipode: LinMap | None = None,
                          verify: bool = True, lazy: bool | None = None,
                          provenance: str = "double bicrossproduct") -> AssembledBialgebra:
    """Assemble m_D and Δ_D on A⊗H; ε_D = ε_A⊗ε_H, η_D = η_A⊗η_H.

    crossing = (c_HA, c_AH) gives the crossings H⊗A -> A⊗H and A⊗H -> H⊗A
    used inside m_D and Δ_D (the plain twists by default). Without an explicit antipode one is
    solved for by convolution inversion when the carrier is small.
    """
    for name, mp, dom, cod in (("alpha", cs.alpha, (h.space, a.space), (a.space,)),
                               ("beta", cs.beta, (h.space, a.space), (h.space,)),
                               ("phi", cs.phi, (a.space,), (h.space, a.space)),
                               ("psi", cs.psi, (h.space,), (h.space, a.space))):
        if mp is not None and (mp.dom != dom or mp.cod != cod):
            raise DimensionError(
                f"{name} has shape {shape_str(mp.dom)}→{shape_str(mp.cod)}, expected "
                f"{shape_str(dom)}→{shape_str(cod)}")
    f = a.field
    X, mcol, cmcol = _assemble_maps(a, h, cs, crossing)
    XX = (X, X)
    if lazy is None:
        lazy = X.dim > 64
    if lazy:
        m = LinMap.lazy(XX, (X,), mcol, f)
        cm = LinMap.lazy((X,), XX, cmcol, f)
    else:
        m = LinMap.from_function(XX, (X,), mcol, f)
        cm = LinMap.from_function((X,), XX, cmcol, f)
    base = tensor_hopf(a, h)
    unit = LinMap((), (X,), base.unit.cols, f)
    counit = LinMap((X,), (), base.counit.cols, f)
    out = HopfData(X, m, unit, cm, counit, None, f, X.name)
    if antipode is None and X.dim <= 36:
        try:
            antipode = convolution_inverse_map(identity(X, f), out, out)
        except NotInvertibleError:
            antipode = None
    if antipode is not None:
        antipode = LinMap((X,), (X,), antipode.cols, f)
        out = out.replace(antipode=antipode)
    report = verify_hopf(out) if verify else None
    return AssembledBialgebra(out, a, h, provenance, cs, report)


def double_cross_product(a, h, alpha, beta, **kw) -> AssembledBialgebra:
    kw.setdefault("provenance", "double cross product")
    return double_bicrossproduct(a, h, CrossStructure(alpha=alpha, beta=beta), **kw)


def double_cross_coproduct(a, h, phi, psi, **kw) -> AssembledBialgebra:
    kw.setdefault("provenance", "double cross coproduct")
    return double_bicrossproduct(a, h, CrossStructure(phi=phi, psi=psi), **kw)


# --- skew pairing and the Drinfeld double -------------------------------------------

def skew_pairing_tau(h: HopfData, dual: DualityPair | None = None,
                     a: HopfData | None = None) -> LinMap:
    """τ: H⊗A -> k, τ(h⊗f) = f(h), for A = H^{*cop} on the dual basis."""
    dual = dual or make_duality(h)
    A = a.space if a is not None else dual.dual
    # ev is H*⊗H -> k; τ reads it with the legs crossed
    cols = {(j, i): c for (i, j), c in dual.ev.cols.items()}
    return LinMap((h.space, A), (), cols, h.field)


def verify_skew_pairing(tau: LinMap, h: HopfData, a: HopfData) -> Report:
    """τ(hh', f) = τ(h, f₂)τ(h', f₁), τ(h, fg) = τ(h₁, f)τ(h₂, g), and unit/counit laws."""
    f = h.field
    H, A = h.space, a.space
    rep = Report()
    # τ∘(m_H⊗id) versus (τ⊗τ)∘(legs h, f₂, h', f₁)
    lhs = compose(tensor(h.m, identity(A, f)), tau)
    t = tensor_all(identity(H, f), identity(H, f), a.cm)        # h h' f1 f2
    perm = LinMap.from_function((H, H, A, A), (H, A, H, A),
                                lambda j: {(j[0], j[3], j[1], j[2]): f.one}, f)
    rhs = compose(compose(t, perm), tensor(tau, tau))
    rep.add("multiplicative in H", lhs == rhs, _first_mismatch(lhs, rhs))
    lhs = compose(tensor(identity(H, f), a.m), tau)
    t = tensor_all(h.cm, identity(A, f), identity(A, f))        # h1 h2 f g
    perm = LinMap.from_function((H, H, A, A), (H, A, H, A),
                                lambda j: {(j[0], j[2], j[1], j[3]): f.one}, f)
    rhs = compose(compose(t, perm), tensor(tau, tau))
    rep.add("multiplicative in A", lhs == rhs, _first_mismatch(lhs, rhs))
    lhs = compose(tensor(h.unit, identity(A, f)), tau)
    rep.add("unit of H", lhs == a.counit, _first_mismatch(lhs, a.counit))
    lhs = compose(tensor(identity(H, f), a.unit), tau)
    rep.add("unit of A", lhs == h.counit, _first_mismatch(lhs, h.counit))
    return rep


def verify_module_coalgebra(a: HopfData, h: HopfData, alpha: LinMap) -> Report:
    """(A, α) is a left H-module coalgebra: module laws, Δ_A α = (α⊗α)(h₁⊗a₁⊗h₂⊗a₂), ε_A α = ε⊗ε."""
    f = h.field
    H, A = h.space, a.space
    idA, idH = identity(A, f), identity(H, f)
    rep = Report()
    lhs = compose(tensor(h.m, idA), alpha)
    rhs = compose(tensor(idH, alpha), alpha)
    rep.add("action associative", lhs == rhs, _first_mismatch(lhs, rhs))
    lhs = compose(tensor(h.unit, idA), alpha)
    rep.add("action unital", lhs == idA, _first_mismatch(lhs, idA))
    lhs = compose(alpha, a.cm)
    mid = tensor_all(idH, swap(H, A, f), idA)
    rhs = compose_all_(tensor(h.cm, a.cm), mid, tensor(alpha, alpha))
    rep.add("Δ_A∘α = (α⊗α)∘(Δ_H⊗Δ_A) with legs crossed", lhs == rhs, _first_mismatch(lhs, rhs))
    lhs = compose(alpha, a.counit)
    rhs = tensor(h.counit, a.counit)
    rep.add("ε_A∘α = ε_H⊗ε_A", lhs == rhs, _first_mismatch(lhs, rhs))
    return rep


def drinfeld_actions(h: HopfData, a: HopfData, tau: LinMap, tau_inv: LinMap):
    """α(h⊗f) = Σ τ(h₁,f₍₁₎) f₍₂₎ τ⁻¹(h₂,f₍₃₎), β(h⊗f) = Σ τ(h₁,f₍₁₎) h₂ τ⁻¹(h₃,f₍₂₎)."""
    field = h.field
    H, A = h.space, a.space
    tv = {j: c[()] for j, c in tau.cols.items()}
    ti = {j: c[()] for j, c in tau_inv.cols.items()}

    def alpha(j):
        hi, fi = j
        out = {}
        for h1, h2, c in h.ct[hi]:
            for f1, f23, d in a.ct[fi]:
                t1 = tv.get((h1, f1))
                if t1 is None:
                    continue
                for f2, f3, e in a.ct[f23]:
                    t2 = ti.get((h2, f3))
                    if t2 is None:
                        continue
                    out[(f2,)] = out.get((f2,), 0) + c * d * e * t1 * t2
        return out

    def beta(j):
        hi, fi = j
        out = {}
        for h1, h23, c in h.ct[hi]:
            for h2, h3, c2 in h.ct[h23]:
                for f1, f2, d in a.ct[fi]:
                    t1 = tv.get((h1, f1))
                    t2 = ti.get((h3, f2))
                    if t1 is None or t2 is None:
                        continue
                    out[(h2,)] = out.get((h2,), 0) + c * c2 * d * t1 * t2
        return out

    al = LinMap.from_function((H, A), (A,), alpha, field)
    be = LinMap.from_function((H, A), (H,), beta, field)
    return al, be


def double_dual_part(h: HopfData) -> HopfData:
    """A = H^{*cop} with dual basis labels e_…"""
    return co_opposite(dual_hopf(h, name=f"{h.name}*")).replace(name=f"{h.name}*cop")


def drinfeld_double(h: HopfData, verify: bool = True):
    """D(H) = A⋈_τ H with A = H^{*cop}; returns (D, [b]) with [b] ∈ D⊗D."""
    if h.antipode is None:
        raise HopfError("the double needs an antipode")
    h.antipode_inverse  # raises if singular
    a = double_dual_part(h)
    a = HopfData(*_respace(a, Space("A", a.space.labels)), field=a.field, name=a.name)
    hh = HopfData(*_respace(h, Space("H", h.space.labels)), field=h.field, name=h.name)
    tau = skew_pairing_tau(hh, a=a)
    from .hopf import tensor_hopf as _th
    ha = _th(hh, a)
    tau_flat = LinMap((ha.space,), (), {(ha.space.join(j),): c for j, c in tau.cols.items()}, h.field)
    from .hopf import ground
    tinv_flat = convolution_inverse_map(tau_flat, ha, ground(h.field))
    tau_inv = LinMap((hh.space, a.space), (), {ha.space.split(j[0]): c
                                              for j, c in tinv_flat.cols.items()}, h.field)
    alpha, beta = drinfeld_actions(hh, a, tau, tau_inv)
    D = double_cross_product(a, hh, alpha, beta, verify=verify, provenance="Drinfeld double")
    D.name = f"D({h.name})"
    D.tau, D.tau_inv = tau, tau_inv
    b = canonical_element(D)
    return D, b


def _respace(h: HopfData, S: Space):
    def re(f: LinMap):
        dom = tuple(S if s == h.space else s for s in f.dom)
        cod = tuple(S if s == h.space else s for s in f.cod)
        return LinMap(dom, cod, f.cols, f.field)
    return (S, re(h.m), re(h.unit), re(h.cm), re(h.counit),
            re(h.antipode) if h.antipode is not None else None)


def canonical_element(D: AssembledBialgebra) -> SparseTensor:
    """[b] = Σᵢ (1_A⊗x_i)⊗(e_{x_i}⊗1_H) in D⊗D."""
    a, h = D.a, D.h
    f = D.field
    one_a, one_h = a.one(), h.one()
    out = {}
    for i in range(h.dim):
        for (ka,), ca in one_a.items():
            for (kh,), ch in one_h.items():
                key = (D.space.join((ka, i)), D.space.join((i, kh)))
                out[key] = out.get(key, 0) + ca * ch
    return SparseTensor((D.space, D.space), out, f)


# --- the double A⋈^R H of a weak R-matrix ----------------------------------------------

def twist_element(a: HopfData, h: HopfData, r) -> tuple:
    """F = Σ (1⊗R'')⊗(R'⊗1) and its inverse, on legs (A, H, A, H)."""
    from .qt import as_qt, embed_legs
    r = as_qt(r, (a, h))
    legs = (a, h, a, h)
    return embed_legs(r.value, legs, (2, 1)), embed_legs(r.inverse, legs, (2, 1))


def weak_r_double(a: HopfData, h: HopfData, r, verify: bool = False,
                  name: str | None = None) -> AssembledBialgebra:
    """A⋈^R H: the tensor product algebra with Δ = F Δ_{A⊗H} F⁻¹ and
    S(x) = U S_{A⊗H}(x) U⁻¹, where U = Σ S(R')⊗R'' and U⁻¹ = Σ R̄'⊗S(R̄'')."""
    from .hopf import tmul
    from .qt import as_qt
    r = as_qt(r, (a, h))
    f = a.field
    A, H = a.space, h.space
    X = product_space(A, H, name=name or f"{a.name}⋈^R{h.name}")
    legs = (a, h, a, h)
    AH = (a, h)
    F, Fi = twist_element(a, h, r)
    U = apply(a.antipode, r.value, 0)
    Ui = apply(h.antipode, r.inverse, 1)

    def cmcol(j):
        ai, hi = X.split(j[0])
        d = {}
        for a1, a2, c in a.ct[ai]:
            for h1, h2, e in h.ct[hi]:
                d[(a1, h1, a2, h2)] = d.get((a1, h1, a2, h2), 0) + c * e
        t = tmul(legs, tmul(legs, F, SparseTensor(legs_shape, d, f)), Fi)
        return {(X.join(k[0:2]), X.join(k[2:4])): v for k, v in t.items()}

    def scol(j):
        ai, hi = X.split(j[0])
        s = {}
        for k, c in a.st[ai]:
            for l, e in h.st[hi]:
                s[(k, l)] = c * e
        t = tmul(AH, tmul(AH, U, SparseTensor((A, H), s, f)), Ui)
        return {(X.join(k),): v for k, v in t.items()}

    legs_shape = (A, H, A, H)
    base = tensor_hopf(a, h, lazy=True)
    XX = (X, X)

    m = LinMap.lazy(XX, (X,), lambda j: base.m.col(j), f)
    cm = LinMap.from_function((X,), XX, cmcol, f)
    S = LinMap.from_function((X,), (X,), scol, f)
    unit = LinMap((), (X,), base.unit.cols, f)
    counit = LinMap((X,), (), base.counit.cols, f)
    out = HopfData(X, m, unit, cm, counit, S, f, X.name)
    report = verify_hopf(out) if verify else None
    return AssembledBialgebra(out, a, h, "weak R-matrix double", None, report)
