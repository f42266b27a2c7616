"""Acceptance criteria 1-10, each timed and reported on one line.

Run under pytest (the lines appear in the terminal summary) or directly
with ``python tests/test_acceptance.py``.
"""

import random
import time
from contextlib import contextmanager

import pytest

from hopfcalc import (
    QQ, CrossStructure, SparseTensor, braided_analogue, check_qt, cofactorise,
    double_bicrossproduct, drinfeld_double, dual_hopf, evaluate, factorise, group_algebra_c2,
    identity, inclusions, is_triangular, projections, rank, sweedler4, sweedler4_r,
    verify_braided, verify_hopf, xi_explicit,
)
from hopfcalc.cross import trivial_maps
from hopfcalc.expr import Environment
from hopfcalc.hopf import generated_dimension, tmul, tone
from hopfcalc.linalg import compose, shape_dim
from hopfcalc.pipeline import (
    Setup, coaction_value, coefficient_along, evaluate_first_a_leg, leg_functional, pair,
    trivial_coactions, unit_tensor,
)
from hopfcalc.qt import check_weak_r
from hopfcalc.repro import canonical_pairing

RESULTS: dict = {}


@contextmanager
def criterion(n, text, limit):
    t0 = time.perf_counter()
    try:
        yield
    except AssertionError as e:
        RESULTS[n] = f"FAIL criterion {n}: {text} ({str(e).splitlines()[0]})"
        raise
    dt = time.perf_counter() - t0
    if dt >= limit:
        RESULTS[n] = f"FAIL criterion {n}: {text} (took {dt:.1f} s, limit {limit} s)"
        raise AssertionError(f"criterion {n} took {dt:.1f} s, limit {limit} s")
    RESULTS[n] = f"PASS criterion {n}: {text} ({dt:.2f} s)"


@pytest.fixture(scope="module")
def s():
    return Setup(QQ)


def test_criterion_1_hopf_suites():
    with criterion(1, "verify_hopf on H4, H4*, kC2 and D(H4)", 5):
        h4 = sweedler4()
        D, _ = drinfeld_double(h4, verify=False)
        for h in (h4, dual_hopf(h4), group_algebra_c2(), D):
            rep = verify_hopf(h)
            assert rep.ok, f"{h.name}: {rep.failures()[0].name}"
        assert D.dim == 16


def test_criterion_2_pairings(s):
    D, b = s.D, s.b
    with criterion(2, "<[b]^-1,(x⊗ε)⊗(ε⊗e_x)> = 0, <swap[b],…> = 1, [b] not triangular", 1):
        fn = [leg_functional(D, "x", "ε"), leg_functional(D, "ε", "e_x")]
        v0 = pair(b.inverse, fn, QQ)
        v1 = pair(b.value.permute((1, 0)), fn, QQ)
        assert (v0, v1) == (0, 1), f"got {v0}, {v1}"
        assert not is_triangular(D, b)


def test_criterion_3_qt(s):
    D, b = s.D, s.b
    with criterion(3, "check_qt(D(H4), [b]) passes", 10):
        rep = check_qt(D, b)
        assert rep.ok, rep.summary()


def test_criterion_4_xi_identity(s):
    D = s.D
    with criterion(4, "V = R gives ξ = id on the 16-dim carrier", 30):
        r = canonical_pairing(D)
        a, h = r.algs
        assert check_weak_r(a, h, r).ok
        xi, xib = xi_explicit(a, h, r, None, r)
        X = xi.dom[0]
        assert X.dim == 16
        assert xi == identity(X) and xib == identity(X)


def test_criterion_5_xi_bijective(s):
    with criterion(5, "U = V = 1: ξ bijective, ξ̄∘ξ = id, ξ = (π_A⊗π_H)∘Δ of D̲", 120):
        xi, xib = s.xi_pair
        X = s.B.space
        assert rank(xi) == shape_dim(xi.dom) == 256
        assert compose(xi, xib) == identity(X)
        assert compose(xib, xi) == identity(X)
        assert s.xi_projected == xi


def test_criterion_6_phi(s):
    D = s.D
    with criterion(6, "<φ(e_gx⊗η),(x⊗ε)⊗(gx⊗e_x)> = 2, trivial coaction gives 0", 120):
        phi, _ = s.primes
        t_phi, _ = trivial_coactions(D)
        fn = [leg_functional(D, "x", "ε"), leg_functional(D, "gx", "e_x")]
        triv = pair(coaction_value(t_phi, D, "e_gx⊗1"), fn, QQ)
        got = pair(coaction_value(phi, D, "e_gx⊗1"), fn, QQ)
        assert phi != t_phi
        assert triv == 0, f"trivial pairing {triv}"
        assert got == 2, f"pairing is {got}, expected 2"


def test_criterion_7_psi(s):
    D = s.D
    with criterion(7, "(x⊗id)ψ(e_x⊗g) = η⊗η⊗η, trivial coaction gives 0", 120):
        _, psi = s.primes
        _, t_psi = trivial_coactions(D)
        unit = unit_tensor(D)
        triv = evaluate_first_a_leg(coaction_value(t_psi, D, "e_x⊗g"), D, "x")
        assert psi != t_psi
        assert coefficient_along(triv, unit) == 0
        comp = evaluate_first_a_leg(coaction_value(psi, D, "e_x⊗g"), D, "x")
        c = coefficient_along(comp, unit)
        assert comp == unit, f"component is {comp!r}, coefficient {c}"


def test_criterion_8_strictly_braided(s):
    B = s.B
    with criterion(8, "R_B on D⋈^[b]D is quasitriangular and swap(R_B)·R_B ≠ 1", 300):
        R = s.R_B
        BB = (B, B)
        assert tmul(BB, R.value.permute((1, 0)), R.value) != tone(BB, QQ)
        gens = s.big_generators()
        assert generated_dimension(B, gens) == B.dim
        rep = check_qt(B, R, basis=gens)
        assert rep.ok, rep.summary()


def test_criterion_9_round_trip(s):
    D = s.D
    with criterion(9, "factorise reassembles D(H4); cofactorise on A⊗H gives trivial φ, ψ", 60):
        ja, jh = inclusions(D)
        fr = factorise(D, D.a, D.h, ja, jh)
        assert fr.report.ok, fr.report.summary()
        assert fr.assembled.m.cols == D.m.cols and fr.assembled.cm.cols == D.cm.cols
        assert compose(fr.xi, fr.xi_inverse) == identity(D.space)
        h4 = sweedler4()
        T = double_bicrossproduct(dual_hopf(h4), h4, CrossStructure())
        pa, ph = projections(T)
        cf = cofactorise(T, T.a, T.h, pa, ph)
        t = trivial_maps(T.a, T.h)
        assert cf.report.ok and cf.phi == t["phi"] and cf.psi == t["psi"]


def _ybe_and_hexagon(h, R):
    from test_qt import hexagons_hold, ybe_holds
    return ybe_holds(h, R) and hexagons_hold(h, R)


def test_criterion_10_properties(s):
    with criterion(10, "braided laws, B(D,π_A,A) = A̲, YBE/hexagons, 100 random expressions", 300):
        c2 = group_algebra_c2()
        half = QQ(1) / QQ(2)
        rt = SparseTensor((c2.space, c2.space),
                          {(0, 0): half, (0, 1): half, (1, 0): half, (1, 1): -half}, QQ)
        pairs = [(c2, tone((c2, c2))), (c2, rt)] + [sweedler4_r(a) for a in (0, 1, -2)]
        pairs.append((s.D, s.b))
        for h, R in pairs:
            assert check_qt(h, R).ok
            assert _ybe_and_hexagon(h, R), h.name
            rep = verify_braided(braided_analogue(h, R))
            assert rep.ok, f"{h.name}: {rep.failures()[0].name}"
        for out in (s.Abar, s.Hbar):
            rep = verify_braided(out)
            assert rep.ok, rep.summary()
        ref = braided_analogue(s.D, s.b)
        n = s.D.dim
        assert all(s.Abar.cm.col((j,)) == ref.cm.col((j,)) for j in range(n))
        assert all(s.Abar.antipode.col((j,)) == ref.antipode.col((j,)) for j in range(n))
        from test_expr import atoms, random_expr
        h4 = sweedler4()
        env = Environment.for_algebra(h4)
        rng = random.Random(17)
        table = atoms(h4)
        for _ in range(100):
            text, expected, _ = random_expr(rng, rng.randint(0, 3), table)
            assert evaluate(text, env) == expected, text


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
