import pytest
from hypothesis import given, settings, strategies as st

from hopfcalc import (
    QQ, DimensionError, InvertibilityError, LinMap, Space, SparseTensor, apply, compose,
    identity, inverse, rank, solve, swap, tensor,
)
from hopfcalc.linalg import all_indices, flat_index, unflat_index

U = Space("U", ("u0", "u1"))
V = Space("V", ("v0", "v1", "v2"))
W = Space("W", ("w0", "w1"))
SPACES = {"U": U, "V": V, "W": W}

coeffs = st.integers(-3, 3).map(QQ)


@st.composite
def linmaps(draw, dom, cod):
    cols = {}
    for j in all_indices(dom):
        col = {}
        for i in all_indices(cod):
            c = draw(coeffs)
            if c:
                col[i] = c
        cols[j] = col
    return LinMap(tuple(dom), tuple(cod), cols, QQ)


def test_index_convention_is_left_major():
    shape = (U, V)
    assert flat_index((1, 0), shape) == 3
    assert unflat_index(4, shape) == (1, 1)


def test_compose_identity(h4):
    i4 = identity(h4.space)
    assert compose(i4, i4) == i4
    assert compose(h4.cm, tensor(h4.counit, i4)) == i4


def test_m_then_cm_on_gg(h4):
    # g⊗g ↦ g² = 1 ↦ 1⊗1
    ix = h4.space.index
    out = compose(h4.m, h4.cm).on_basis(ix("g"), ix("g"))
    assert out == SparseTensor.basis((h4.space, h4.space), (ix("1"), ix("1")))


def test_tensor_shapes(h4):
    assert tensor(identity(U), identity(W)) == identity((U, W))
    f = tensor(h4.counit, identity(h4.space))
    assert f.dom == (h4.space, h4.space) and f.cod == (h4.space,)


def test_tensor_antipodes(h4):
    ix = h4.space.index
    out = tensor(h4.antipode, h4.antipode).on_basis(ix("x"), ix("g"))
    assert out == SparseTensor.basis((h4.space, h4.space), (ix("gx"), ix("g")), coeff=QQ(-1))
    # xg = −gx, so S(x) = xg reads as −gx on the basis


def test_swap(h4):
    H = h4.space
    ix = H.index
    s = swap(H, H)
    assert s.on_basis(ix("x"), ix("g")) == SparseTensor.basis((H, H), (ix("g"), ix("x")))
    assert compose(s, s) == identity((H, H))


def test_compose_shape_error():
    with pytest.raises(DimensionError, match="U.*V|V.*U"):
        compose(identity(U), identity(V))


def test_solve_examples():
    i4 = identity(V)
    assert solve(identity((U, W)), identity((U, W))) == identity((U, W))
    two = QQ(2) * i4
    assert solve(two, i4) == (QQ(1) / QQ(2)) * i4
    sing = LinMap((U,), (U,), {(0,): {(0,): QQ(1)}, (1,): {(0,): QQ(1)}}, QQ)
    with pytest.raises(InvertibilityError):
        solve(sing, identity(U))
    assert rank(sing) == 1


def test_zeros_are_pruned():
    t = SparseTensor((U,), {(0,): QQ(1)}) - SparseTensor((U,), {(0,): QQ(1)})
    assert t.nnz == 0 and t.is_zero()


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_compose_associative(data):
    f = data.draw(linmaps((U,), (V,)))
    g = data.draw(linmaps((V,), (W,)))
    h = data.draw(linmaps((W,), (U,)))
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_interchange_law(data):
    f = data.draw(linmaps((U,), (V,)))
    g = data.draw(linmaps((W,), (U,)))
    f2 = data.draw(linmaps((V,), (W,)))
    g2 = data.draw(linmaps((U,), (V,)))
    assert compose(tensor(f, g), tensor(f2, g2)) == tensor(compose(f, f2), compose(g, g2))


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_swap_naturality(data):
    f = data.draw(linmaps((U,), (V,)))
    g = data.draw(linmaps((W,), (U,)))
    lhs = compose(tensor(f, g), swap(V, U))
    rhs = compose(swap(U, W), tensor(g, f))
    assert lhs == rhs


def test_swap_naturality_catalog(h4):
    H = h4.space
    for f in (h4.antipode, h4.antipode_inverse, identity(H)):
        for g in (h4.antipode, identity(H)):
            assert compose(tensor(f, g), swap(H, H)) == compose(swap(H, H), tensor(g, f))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_solve_inverts(data):
    f = data.draw(linmaps((V,), (V,)))
    try:
        finv = solve(f, identity(V))
    except InvertibilityError:
        assert rank(f) < 3
        return
    assert compose(f, finv) == identity(V)
    assert compose(finv, f) == identity(V)
    assert inverse(f) == finv


def test_apply_on_leg(h4):
    H = h4.space
    ix = H.index
    t = SparseTensor.basis((H, H), (ix("x"), ix("x")))
    out = apply(h4.antipode, t, 1)
    assert out == SparseTensor.basis((H, H), (ix("x"), ix("gx")), coeff=QQ(-1))
