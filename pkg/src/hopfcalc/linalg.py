"""Based spaces, sparse tensors and sparse linear maps over an exact field.

Multi-indices flatten left-factor-major: in (i1, ..., ik) the first index is
the most significant. Maps are stored column-wise: for each domain
multi-index, a dict codomain multi-index -> nonzero scalar.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

from .scalars import QQ, Field


class DimensionError(ValueError):
    pass


class InvertibilityError(ValueError):
    pass


@dataclass(frozen=True)
class Space:
    name: str
    labels: tuple
    factors: tuple = dc_field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.labels:
            raise DimensionError(f"space {self.name!r} has no basis")
        if len(set(self.labels)) != len(self.labels):
            raise DimensionError(f"space {self.name!r} has duplicate basis labels")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not a basis label of {self.name}") from None

    def split(self, i: int) -> tuple:
        """Factor indices of basis element i for a product space."""
        if not self.factors:
            return (i,)
        out = []
        for f in reversed(self.factors):
            i, r = divmod(i, f.dim)
            out.append(r)
        return tuple(reversed(out))

    def join(self, parts: Sequence[int]) -> int:
        i = 0
        for f, p in zip(self.factors, parts):
            i = i * f.dim + p
        return i

    def __str__(self):
        return self.name


def product_space(*spaces: Space, name: str | None = None) -> Space:
    def wrap(s, lab):
        return f"({lab})" if s.factors else lab

    labels = ["⊗".join(wrap(s, l) for s, l in zip(spaces, combo))
              for combo in itertools.product(*(s.labels for s in spaces))]
    if name is None:
        name = "⊗".join(s.name for s in spaces)
    return Space(name, tuple(labels), tuple(spaces))


def flat_index(idx: Sequence[int], shape: Sequence[Space]) -> int:
    n = 0
    for i, s in zip(idx, shape):
        n = n * s.dim + i
    return n


def unflat_index(n: int, shape: Sequence[Space]) -> tuple:
    out = []
    for s in reversed(shape):
        n, r = divmod(n, s.dim)
        out.append(r)
    return tuple(reversed(out))


def shape_dim(shape: Sequence[Space]) -> int:
    d = 1
    for s in shape:
        d *= s.dim
    return d


def all_indices(shape: Sequence[Space]):
    return itertools.product(*(range(s.dim) for s in shape))


def shape_str(shape: Sequence[Space]) -> str:
    return "⊗".join(s.name for s in shape) if shape else "k"


def _prune(d: dict) -> dict:
    return {k: v for k, v in d.items() if v != 0}


class SparseTensor:
    """An element of a tensor power of based spaces."""

    __slots__ = ("shape", "field", "data")

    def __init__(self, shape, data=None, field: Field = QQ, prune=True):
        self.shape = tuple(shape)
        self.field = field
        data = data or {}
        self.data = _prune(data) if prune else data

    @classmethod
    def basis(cls, shape, idx, field: Field = QQ, coeff=None):
        idx = tuple(idx)
        return cls(shape, {idx: field.one if coeff is None else field(coeff)}, field)

    @classmethod
    def from_labels(cls, shape, terms, field: Field = QQ):
        """terms: iterable of (coeff, [label, ...])."""
        shape = tuple(shape)
        out = {}
        for c, labs in terms:
            idx = tuple(s.index(l) for s, l in zip(shape, labs))
            out[idx] = out.get(idx, field.zero) + field(c)
        return cls(shape, out, field)

    @classmethod
    def scalar(cls, c, field: Field = QQ):
        return cls((), {(): field(c)}, field)

    def items(self):
        return self.data.items()

    @property
    def nnz(self) -> int:
        return len(self.data)

    def coeff(self, idx):
        return self.data.get(tuple(idx), self.field.zero)

    def _check(self, other):
        if not isinstance(other, SparseTensor) or other.shape != self.shape:
            raise DimensionError(
                f"tensor shapes differ: {shape_str(self.shape)} vs "
                f"{shape_str(getattr(other, 'shape', ()))}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.data)
        for k, v in other.data.items():
            out[k] = out.get(k, 0) + v
        return SparseTensor(self.shape, out, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SparseTensor(self.shape, {k: -v for k, v in self.data.items()}, self.field, False)

    def __rmul__(self, c):
        c = self.field(c)
        return SparseTensor(self.shape, {k: c * v for k, v in self.data.items()}, self.field)

    def __matmul__(self, other):
        """Outer (tensor) product."""
        out = {}
        for k1, v1 in self.data.items():
            for k2, v2 in other.data.items():
                out[k1 + k2] = v1 * v2
        return SparseTensor(self.shape + other.shape, out, self.field)

    def __eq__(self, other):
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.shape, frozenset(self.data.items())))

    def is_zero(self) -> bool:
        return not self.data

    def permute(self, perm: Sequence[int]) -> "SparseTensor":
        """Leg k of the result is leg perm[k] of self."""
        shape = tuple(self.shape[p] for p in perm)
        data = {tuple(k[p] for p in perm): v for k, v in self.data.items()}
        return SparseTensor(shape, data, self.field, False)

    def scalar_value(self):
        if self.shape:
            raise DimensionError("not a scalar")
        return self.data.get((), self.field.zero)

    def terms(self):
        """Sorted (multi-index, coeff) pairs."""
        return sorted(self.data.items())

    def __repr__(self):
        if not self.data:
            return "0"
        parts = []
        for k, v in self.terms():
            lab = "⊗".join(s.labels[i] for s, i in zip(self.shape, k)) or "1"
            parts.append(f"{self.field.fmt(v)}·{lab}")
        return " + ".join(parts)


class LinMap:
    """Sparse linear map dom -> cod (both tuples of Spaces).

    Columns may be supplied eagerly as a dict or lazily by a function
    computing one column (domain multi-index -> dict) on demand.
    """

    __slots__ = ("dom", "cod", "field", "_cols", "_fn", "_complete")

    def __init__(self, dom, cod, cols=None, field: Field = QQ,
                 fn: Callable | None = None):
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.field = field
        self._fn = fn
        if cols is None:
            self._cols = {}
            self._complete = fn is None
        else:
            self._cols = {j: c for j, c in ((j, _prune(c)) for j, c in cols.items()) if c}
            self._complete = True

    @classmethod
    def lazy(cls, dom, cod, fn, field: Field = QQ):
        return cls(dom, cod, None, field, fn)

    @classmethod
    def from_function(cls, dom, cod, fn, field: Field = QQ):
        """Eagerly tabulate fn(multi-index) -> SparseTensor or dict."""
        cols = {}
        for j in all_indices(dom):
            v = fn(j)
            cols[j] = v.data if isinstance(v, SparseTensor) else v
        return cls(dom, cod, cols, field)

    @classmethod
    def from_entries(cls, dom, cod, entries, field: Field = QQ):
        """entries: iterable of (cod multi-index, dom multi-index, coeff)."""
        cols: dict = {}
        for out, inp, c in entries:
            col = cols.setdefault(tuple(inp), {})
            col[tuple(out)] = col.get(tuple(out), 0) + field(c)
        return cls(dom, cod, cols, field)

    def col(self, j) -> dict:
        c = self._cols.get(j)
        if c is None:
            if self._complete:
                return {}
            v = self._fn(j)
            c = _prune(v.data if isinstance(v, SparseTensor) else v)
            self._cols[j] = c
        return c

    def materialize(self) -> "LinMap":
        if not self._complete:
            for j in all_indices(self.dom):
                self.col(j)
            self._cols = {j: c for j, c in self._cols.items() if c}
            self._complete = True
            self._fn = None
        return self

    @property
    def cols(self) -> dict:
        self.materialize()
        return self._cols

    def entries(self):
        """Sorted (cod multi-index, dom multi-index, coeff) triples."""
        out = []
        for j, c in self.cols.items():
            for i, v in c.items():
                out.append((i, j, v))
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def __call__(self, t: SparseTensor, at: int = 0) -> SparseTensor:
        return apply(self, t, at)

    def on_basis(self, *idx) -> SparseTensor:
        return SparseTensor(self.cod, dict(self.col(tuple(idx))), self.field, False)

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.cols == other.cols

    def __hash__(self):
        return id(self)

    def __add__(self, other):
        if self.dom != other.dom or self.cod != other.cod:
            raise DimensionError(
                f"cannot add maps {shape_str(self.dom)}→{shape_str(self.cod)} and "
                f"{shape_str(other.dom)}→{shape_str(other.cod)}")
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, c in other.cols.items():
            tgt = cols.setdefault(j, {})
            for i, v in c.items():
                tgt[i] = tgt.get(i, 0) + v
        return LinMap(self.dom, self.cod, cols, self.field)

    def __rmul__(self, c):
        c = self.field(c)
        return LinMap(self.dom, self.cod,
                      {j: {i: c * v for i, v in col.items()} for j, col in self.cols.items()},
                      self.field)

    def __neg__(self):
        return (-1) * self

    def __sub__(self, other):
        return self + (-other)

    def first_difference(self, other: "LinMap"):
        """A domain multi-index where the maps differ, or None."""
        for j in sorted(set(self.cols) | set(other.cols)):
            if self.col(j) != other.col(j):
                return j
        return None

    def __repr__(self):
        return f"LinMap({shape_str(self.dom)} → {shape_str(self.cod)}, nnz={self.nnz})"


def apply(f: LinMap, t: SparseTensor, at: int = 0) -> SparseTensor:
    """Apply f to the legs at, ..., at+len(f.dom)-1 of t."""
    k = len(f.dom)
    if tuple(t.shape[at:at + k]) != f.dom:
        raise DimensionError(
            f"cannot apply {shape_str(f.dom)}→{shape_str(f.cod)} to legs {at}.. of "
            f"{shape_str(t.shape)}")
    out: dict = {}
    get = out.get
    for key, c in t.data.items():
        pre, j, post = key[:at], key[at:at + k], key[at + k:]
        for i, v in f.col(j).items():
            nk = pre + i + post
            out[nk] = get(nk, 0) + c * v
    shape = t.shape[:at] + f.cod + t.shape[at + k:]
    return SparseTensor(shape, out, t.field)


def compose(f: LinMap, g: LinMap) -> LinMap:
    """g after f."""
    if f.cod != g.dom:
        raise DimensionError(
            f"cannot compose: codomain {shape_str(f.cod)} of first map does not match "
            f"domain {shape_str(g.dom)} of second")
    cols = {}
    for j, c in f.cols.items():
        out: dict = {}
        for m, v in c.items():
            for i, w in g.col(m).items():
                out[i] = out.get(i, 0) + v * w
        cols[j] = out
    return LinMap(f.dom, g.cod, cols, f.field)


def compose_all(*maps: LinMap) -> LinMap:
    """Left to right: the first map applies first."""
    out = maps[0]
    for g in maps[1:]:
        out = compose(out, g)
    return out


def tensor(f: LinMap, g: LinMap) -> LinMap:
    cols = {}
    fc, gc = f.cols, g.cols
    for j1, c1 in fc.items():
        for j2, c2 in gc.items():
            cols[j1 + j2] = {i1 + i2: v1 * v2 for i1, v1 in c1.items() for i2, v2 in c2.items()}
    return LinMap(f.dom + g.dom, f.cod + g.cod, cols, f.field)


def tensor_all(*maps: LinMap) -> LinMap:
    out = maps[0]
    for g in maps[1:]:
        out = tensor(out, g)
    return out


def identity(shape, field: Field = QQ) -> LinMap:
    if isinstance(shape, Space):
        shape = (shape,)
    shape = tuple(shape)
    one = field.one
    return LinMap(shape, shape, {j: {j: one} for j in all_indices(shape)}, field)


def swap(U, V, field: Field = QQ) -> LinMap:
    """The plain twist U⊗V -> V⊗U (U, V spaces or tuples of spaces)."""
    U = (U,) if isinstance(U, Space) else tuple(U)
    V = (V,) if isinstance(V, Space) else tuple(V)
    n = len(U)
    one = field.one
    cols = {j: {j[n:] + j[:n]: one} for j in all_indices(U + V)}
    return LinMap(U + V, V + U, cols, field)


def permutation_map(shape, perm, field: Field = QQ) -> LinMap:
    """Map sending leg perm[k] of the input to leg k of the output."""
    shape = tuple(shape)
    one = field.one
    cod = tuple(shape[p] for p in perm)
    cols = {j: {tuple(j[p] for p in perm): one} for j in all_indices(shape)}
    return LinMap(shape, cod, cols, field)


def element_map(t: SparseTensor) -> LinMap:
    """The map k -> shape picking out t."""
    return LinMap((), t.shape, {(): dict(t.data)}, t.field)


def functional(shape, values: dict, field: Field = QQ) -> LinMap:
    """A map shape -> k from a dict multi-index -> value."""
    return LinMap(tuple(shape), (), {tuple(j): {(): field(v)} for j, v in values.items()}, field)


# --- exact Gaussian elimination -------------------------------------------

def _matrix_rows(f: LinMap):
    rows: dict = {}
    for j, c in f.cols.items():
        jj = flat_index(j, f.dom)
        for i, v in c.items():
            rows.setdefault(flat_index(i, f.cod), {})[jj] = v
    return rows


def _row_reduce(rows: dict, ncols: int, aug: dict | None = None):
    """In-place reduced row echelon form. Returns {pivot col: row id}."""
    pivots = {}
    remaining = set(rows)
    for col in range(ncols):
        best = None
        for r in remaining:
            if col in rows[r] and (best is None or len(rows[r]) < len(rows[best])):
                best = r
        if best is None:
            continue
        remaining.discard(best)
        prow = rows[best]
        inv = 1 / prow[col]
        for k in list(prow):
            prow[k] = prow[k] * inv
        if aug is not None:
            arow = aug[best]
            for k in list(arow):
                arow[k] = arow[k] * inv
        for r in list(rows):
            if r == best:
                continue
            row = rows[r]
            c = row.get(col)
            if c is None:
                continue
            for k, v in prow.items():
                nv = row.get(k, 0) - c * v
                if nv == 0:
                    row.pop(k, None)
                else:
                    row[k] = nv
            if aug is not None:
                arow, brow = aug[r], aug[best]
                for k, v in brow.items():
                    nv = arow.get(k, 0) - c * v
                    if nv == 0:
                        arow.pop(k, None)
                    else:
                        arow[k] = nv
        pivots[col] = best
    return pivots


def rank(f: LinMap) -> int:
    rows = _matrix_rows(f)
    return len(_row_reduce(rows, shape_dim(f.dom)))


def inverse(f: LinMap) -> LinMap:
    n, m = shape_dim(f.dom), shape_dim(f.cod)
    if n != m:
        raise InvertibilityError(
            f"map {shape_str(f.dom)}→{shape_str(f.cod)} is not square ({n}x{m})")
    rows = _matrix_rows(f)
    for r in range(n):
        rows.setdefault(r, {})
    one = f.field.one
    aug = {r: {r: one} for r in range(n)}
    pivots = _row_reduce(rows, n, aug)
    if len(pivots) < n:
        raise InvertibilityError(
            f"map {shape_str(f.dom)}→{shape_str(f.cod)} is singular (rank {len(pivots)} < {n})")
    # row pivots[c] now reads x_c = sum aug[...] * y
    cols: dict = {}
    for c, r in pivots.items():
        xc = unflat_index(c, f.dom)
        for yi, v in aug[r].items():
            cols.setdefault(unflat_index(yi, f.cod), {})[xc] = v
    return LinMap(f.cod, f.dom, cols, f.field)


def solve(f: LinMap, target: LinMap) -> LinMap:
    """f⁻¹ ∘ target."""
    if target.cod != f.cod:
        raise DimensionError(
            f"target codomain {shape_str(target.cod)} does not match {shape_str(f.cod)}")
    return compose(target, inverse(f))


def solve_vector(columns: Sequence[dict], rhs: dict, n_rows: int, field: Field = QQ):
    """Solve sum_j x_j columns[j] = rhs for a square nonsingular system.

    columns[j] and rhs map row numbers to scalars. Returns the list x.
    """
    n = len(columns)
    if n != n_rows:
        raise InvertibilityError(f"system is not square ({n_rows}x{n})")
    rows: dict = {r: {} for r in range(n_rows)}
    for j, c in enumerate(columns):
        for r, v in c.items():
            rows[r][j] = v
    aug = {r: ({0: rhs[r]} if rhs.get(r, 0) != 0 else {}) for r in range(n_rows)}
    pivots = _row_reduce(rows, n, aug)
    if len(pivots) < n:
        raise InvertibilityError(f"system is singular (rank {len(pivots)} < {n})")
    return [aug[pivots[c]].get(0, field.zero) for c in range(n)]
