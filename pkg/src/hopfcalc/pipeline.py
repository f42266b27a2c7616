"""The worked double: A = H = D(H₄) with P = Q = R = [b] and U = V = 1.

Everything heavy is built once per field and cached on the Setup object.
"""

from __future__ import annotations

from functools import cached_property

from .catalog import sweedler4
from .cross import drinfeld_double, weak_r_double
from .factor import cofactorise, phi_psi_prime, projections, xi_explicit
from .hopf import HopfData, SparseTensor
from .linalg import LinMap, compose, identity, tensor
from .qt import QTElement, braided_analogue, compose_rd, module_braiding, transmute
from .scalars import QQ, Field


class Setup:
    def __init__(self, field: Field = QQ, base: HopfData | None = None):
        self.field = field
        self.base = base or sweedler4(field)

    @cached_property
    def double(self):
        return drinfeld_double(self.base)

    @property
    def D(self):
        return self.double[0]

    @cached_property
    def b(self) -> QTElement:
        return QTElement(self.double[1], (self.D, self.D), "[b]")

    @cached_property
    def unit(self) -> QTElement:
        return QTElement.unit((self.D, self.D))

    @cached_property
    def B(self):
        """D⋈^{[b]}D, built from the twist."""
        return weak_r_double(self.D, self.D, self.b, name="B")

    @cached_property
    def R_B(self) -> QTElement:
        return compose_rd(self.b, self.b, self.b, self.unit, self.unit,
                          carrier=self.B.space, algs=(self.B, self.B))

    @cached_property
    def Dbar(self):
        """The transmutation of B along the identity, with R_B."""
        return braided_analogue(self.B, self.R_B, check=False, lazy=True)

    @cached_property
    def pi(self):
        return projections(self.B)

    @cached_property
    def Abar(self):
        return transmute(self.B, self.pi[0], self.D, self.R_B, check=False, lazy=True)

    @cached_property
    def Hbar(self):
        return transmute(self.B, self.pi[1], self.D, self.R_B, check=False, lazy=True)

    @cached_property
    def xi_pair(self):
        return xi_explicit(self.D, self.D, self.b, self.unit, self.unit, carrier=self.B.space)

    @cached_property
    def xi_projected(self) -> LinMap:
        """(π_A⊗π_H)∘Δ of the transmuted double, as a map onto the carrier."""
        pa, ph = self.pi
        X = self.B.space
        t = compose(self.Dbar.cm, tensor(pa, ph))
        return LinMap((X,), (X,), {j: {(X.join(k),): v for k, v in c.items()}
                                   for j, c in t.cols.items()}, self.field)

    @cached_property
    def crossings(self):
        """C^{R_B} on H̲⊗A̲ and on A̲⊗H̲."""
        B, R = self.B, self.R_B
        c_ha = module_braiding(B, R, self.Hbar.action, self.Abar.action, check=False)
        c_ah = module_braiding(B, R, self.Abar.action, self.Hbar.action, check=False)
        return c_ha, c_ah

    @cached_property
    def primes(self):
        """(φ′, ψ′) of [b]; cofactorising D⋈^{[b]}D gives exactly these."""
        return phi_psi_prime(self.D, self.D, self.b)

    def double_generators(self):
        """a⊗1 and 1⊗h for a, h generating the two halves of D(H).

        On the dual half e_g and e_x+e_gx generate; e_x alone does not, since
        e_x·(e_1−e_g) = e_x.
        """
        D = self.D
        A, H = D.space.factors
        one_a = {k[0]: v for k, v in D.a.unit.col(()).items()}
        one_h = {k[0]: v for k, v in D.h.unit.col(()).items()}
        gens = []
        for a_part in ({A.index("e_g"): 1}, {A.index("e_x"): 1, A.index("e_gx"): 1}):
            gens.append({D.space.join((i, k)): c * v for i, c in a_part.items()
                         for k, v in one_h.items()})
        for lab in ("g", "x"):
            i = H.index(lab)
            gens.append({D.space.join((k, i)): v for k, v in one_a.items()})
        return gens

    def big_generators(self):
        """The images of the double's generators in both halves of B."""
        X = self.B.space
        one = {k[0]: v for k, v in self.D.unit.col(()).items()}
        gens = []
        for g in self.double_generators():
            gens.append({X.join((i, k)): c * v for i, c in g.items() for k, v in one.items()})
            gens.append({X.join((k, i)): c * v for i, c in g.items() for k, v in one.items()})
        return gens

    def cofactorisation(self, check=False):
        pa, ph = self.pi
        return cofactorise(self.Dbar, self.Abar, self.Hbar, pa, ph,
                           crossing=self.crossings, check=check, verify_assembled=False)

    @cached_property
    def cofactored(self):
        return self.cofactorisation()


def leg_functional(D, a_part: str, h_part: str) -> dict:
    """A functional on one D(H)=A⊗H leg, as {basis index: value}.

    On the A-leg a label of H means evaluation at that basis element and
    "ε" means evaluation at 1. On the H-leg "e_y" is the dual basis
    functional and "ε" is the counit.
    """
    A, H = D.space.factors
    fa = {A.index("e_" + ("1" if a_part == "ε" else a_part)): 1}
    if h_part == "ε":
        fh = {k: c for k in range(H.dim) if (c := D.h.eps[k]) != 0}
    else:
        fh = {H.index(h_part[2:] if h_part.startswith("e_") else h_part): 1}
    return {D.space.join((i, k)): va * vh for i, va in fa.items() for k, vh in fh.items()}


def pair(t, functionals, field):
    """Contract every leg of t against the given leg functionals."""
    total = field.zero
    for key, c in t.items():
        v = c
        for leg, fn in zip(key, functionals):
            w = fn.get(leg)
            if not w:
                v = 0
                break
            v = v * w
        total += v
    return total


def coaction_value(coaction: LinMap, D, label: str):
    return SparseTensor(coaction.cod, coaction.col((D.space.index(label),)), D.field)


def evaluate_first_a_leg(t, D, h_label: str):
    """Evaluate the first A-leg of t ∈ D⊗D at h_label; the rest lands in H⊗A⊗H."""
    A, H = D.space.factors
    target = A.index("e_" + h_label)
    out: dict = {}
    for (d1, d2), c in t.items():
        a1, h1 = D.space.split(d1)
        if a1 != target:
            continue
        a2, h2 = D.space.split(d2)
        out[(h1, a2, h2)] = out.get((h1, a2, h2), 0) + c
    return SparseTensor((H, A, H), out, D.field)


def unit_tensor(D):
    """η⊗η⊗η in H⊗A⊗H."""
    A, H = D.space.factors
    one_a = {k[0]: v for k, v in D.a.unit.col(()).items()}
    one_h = {k[0]: v for k, v in D.h.unit.col(()).items()}
    data = {(i, j, k): u * v * w for i, u in one_h.items() for j, v in one_a.items()
            for k, w in one_h.items()}
    return SparseTensor((H, A, H), data, D.field)


def coefficient_along(t, direction):
    """The c with t = c·direction, or 0 when t has no component along it.

    The component is read off the first basis entry of the direction; the
    caller compares t with c·direction to see whether t is a multiple.
    """
    key = min(direction.data)
    return t.data.get(key, 0) / direction.data[key]


def trivial_coactions(D):
    """φ(a) = 1⊗a and ψ(h) = h⊗1 on D."""
    X = D.space
    one = {k[0]: v for k, v in D.unit.col(()).items()}
    phi = LinMap((X,), (X, X), {(i,): {(k, i): v for k, v in one.items()} for i in range(X.dim)},
                 D.field)
    psi = LinMap((X,), (X, X), {(i,): {(i, k): v for k, v in one.items()} for i in range(X.dim)},
                 D.field)
    return phi, psi
