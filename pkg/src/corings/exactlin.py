"""Exact linear algebra over the rationals.

Matrices are dense, row-major and immutable.  Vectors are plain tuples of
rationals.  Maps act on column vectors, so a linear map V -> W is stored as a
``dim W x dim V`` matrix and composition is matrix product.

Every tensor construction in the package pairs basis indices row-major,
``(i, j) -> i * dim2 + j``; :func:`kron` is the single source of that
convention.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple

__all__ = [
    "Fraction", "Vector", "Matrix", "Subspace", "QuotientSpace",
    "rational", "format_rational", "rref", "rank", "kernel_basis",
    "solve_right", "quotient_space", "kron", "zero_vector", "unit_vector",
    "vadd", "vsub", "vscale", "is_zero_vector", "inverse", "column_space",
]


def rational(x) -> Fraction:
    """Parse ``x`` ("p/q", "p", int or Fraction) into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ValueError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            try:
                n, d = int(num), int(den)
            except ValueError:
                raise ValueError(f"malformed rational {x!r}") from None
            if d == 0:
                raise ValueError(f"zero denominator in {x!r}")
            return Fraction(n, d)
        try:
            return Fraction(int(text))
        except ValueError:
            raise ValueError(f"malformed rational {x!r}") from None
    raise ValueError(f"not a rational: {x!r}")


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _norm(x):
    # zeros are stored as the int 0 so that large sparse-ish matrices stay cheap
    if not x:
        return 0
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


# -- vectors ---------------------------------------------------------------

def zero_vector(n: int) -> Vector:
    return (0,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [0] * n
    v[i] = Fraction(1)
    return tuple(v)


def vadd(u, v) -> Vector:
    return tuple(_norm(a + b) for a, b in zip(u, v))


def vsub(u, v) -> Vector:
    return tuple(_norm(a - b) for a, b in zip(u, v))


def vscale(c, v) -> Vector:
    if not c:
        return (0,) * len(v)
    return tuple(_norm(c * a) for a in v)


def is_zero_vector(v) -> bool:
    return not any(v)


# -- matrices --------------------------------------------------------------

class Matrix:
    """Immutable dense matrix of rationals."""

    __slots__ = ("rows", "cols", "_data", "_sparse")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence] | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self._data = tuple((0,) * cols for _ in range(rows))
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("matrix data does not match its shape")
            self._data = tuple(tuple(_norm(x) for x in r) for r in data)
        self._sparse = None

    @classmethod
    def _raw(cls, rows, cols, data):
        m = cls.__new__(cls)
        m.rows, m.cols, m._data, m._sparse = rows, cols, data, None
        return m

    # constructors
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, [[rational(x) if isinstance(x, str) else x for x in r] for r in rows])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        columns = list(columns)
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if any(len(c) != rows for c in columns):
            raise ValueError("columns have inconsistent lengths")
        if not columns:
            return cls(rows, 0, [[] for _ in range(rows)])
        data = tuple(tuple(x if x.__class__ is Fraction else _norm(x) for x in r) for r in zip(*columns))
        return cls._raw(rows, len(columns), data)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence) -> "Matrix":
        if len(entries) != rows * cols:
            raise ValueError("entries length must equal rows*cols")
        return cls(rows, cols, [entries[i * cols:(i + 1) * cols] for i in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one = Fraction(1)
        return cls._raw(n, n, tuple(tuple(one if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_sparse_columns(cls, rows: int, columns: Sequence[dict]) -> "Matrix":
        data = [[0] * len(columns) for _ in range(rows)]
        for j, col in enumerate(columns):
            for i, x in col.items():
                if x:
                    data[i][j] = x
        return cls._raw(rows, len(columns), tuple(tuple(r) for r in data))

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def row_list(self) -> list[Vector]:
        return list(self._data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def entries(self) -> Vector:
        return tuple(x for r in self._data for x in r)

    def _sparse_rows(self):
        if self._sparse is None:
            self._sparse = tuple(tuple((j, x) for j, x in enumerate(r) if x) for r in self._data)
        return self._sparse

    # algebra
    def sparse_columns(self) -> list[list]:
        """Per column, the list of (row, value) pairs with nonzero value."""
        cols = [[] for _ in range(self.cols)]
        for i, r in enumerate(self._data):
            for j, x in enumerate(r):
                if x:
                    cols[j].append((i, x))
        return cols

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.cols, self.rows, tuple(zip(*self._data)) if self.rows else tuple(() for _ in range(self.cols)))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            brows = other._sparse_rows()
            p = other.cols
            out = []
            for arow in self._sparse_rows():
                acc = [0] * p
                for k, x in arow:
                    for j, y in brows[k]:
                        acc[j] += x * y
                out.append(tuple(v if v else 0 for v in acc))
            return Matrix._raw(self.rows, p, tuple(out))
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"shape mismatch {self.shape} @ vector of length {len(v)}")
        res = []
        for arow in self._sparse_rows():
            s = 0
            for k, x in arow:
                y = v[k]
                if y:
                    s += x * y
            res.append(_norm(s))
        return tuple(res)

    def _zip(self, other, op):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._raw(self.rows, self.cols, tuple(
            tuple(_norm(op(a, b)) for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, tuple(tuple(_norm(-a) for a in r) for r in self._data))

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        return Matrix._raw(self.rows, self.cols, tuple(tuple(_norm(c * a) for a in r) for r in self._data))

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows, cols = list(rows), list(cols)
        return Matrix._raw(len(rows), len(cols), tuple(tuple(self._data[i][j] for j in cols) for i in rows))

    def flatten(self) -> Vector:
        return self.entries

    def reshape(self, rows: int, cols: int) -> "Matrix":
        return Matrix.from_entries(rows, cols, self.entries)

    def rank(self) -> int:
        return rank(self)

    def first_nonzero_column(self) -> int | None:
        for j in range(self.cols):
            if any(r[j] for r in self._data):
                return j
        return None

    @staticmethod
    def hstack(mats: Sequence["Matrix"], rows: int | None = None) -> "Matrix":
        mats = list(mats)
        if not mats:
            return Matrix(rows or 0, 0)
        r = mats[0].rows
        if any(m.rows != r for m in mats):
            raise ValueError("hstack: row counts differ")
        return Matrix._raw(r, sum(m.cols for m in mats),
                           tuple(sum((m._data[i] for m in mats), ()) for i in range(r)))

    @staticmethod
    def vstack(mats: Sequence["Matrix"], cols: int | None = None) -> "Matrix":
        mats = list(mats)
        if not mats:
            return Matrix(0, cols or 0)
        c = mats[0].cols
        if any(m.cols != c for m in mats):
            raise ValueError("vstack: column counts differ")
        return Matrix._raw(sum(m.rows for m in mats), c, sum((m._data for m in mats), ()))

    @staticmethod
    def block_diag(mats: Sequence["Matrix"]) -> "Matrix":
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        data = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                data[r0 + i][c0:c0 + m.cols] = m._data[i]
            r0 += m.rows
            c0 += m.cols
        return Matrix._raw(rows, cols, tuple(tuple(r) for r in data))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self._data]


# -- elimination -----------------------------------------------------------

class _Echelon:
    """Incrementally maintained reduced row-echelon basis of a row space.

    Rows are dicts ``{col: value}``.  Every stored row has a leading 1 at its
    pivot and zeros in all other pivot columns.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}
        self._occ: dict[int, set] = defaultdict(set)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        row = {k: v for k, v in row.items() if v}
        pivots = self.rows
        for c in [c for c in row if c in pivots]:
            coef = row.get(c)
            if not coef:
                continue
            for k, v in pivots[c].items():
                nv = row.get(k, 0) - coef * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        if len(self.rows) == self.ncols:
            return False
        row = self.reduce(row)
        if not row:
            return False
        c0 = min(row)
        inv = 1 / Fraction(row[c0])
        row = {k: v * inv for k, v in row.items()}
        occ = self._occ
        for p in occ.pop(c0, ()):
            prow = self.rows[p]
            coef = prow[c0]
            for k, v in row.items():
                nv = prow.get(k, 0) - coef * v
                if nv:
                    if k not in prow:
                        occ[k].add(p)
                    prow[k] = nv
                else:
                    if k in prow:
                        del prow[k]
                        if k != c0:
                            occ[k].discard(p)
        self.rows[c0] = row
        for k in row:
            if k != c0:
                occ[k].add(c0)
        return True

    def add_vector(self, v) -> bool:
        return self.add({i: x for i, x in enumerate(v) if x})

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis_rows(self) -> list[Vector]:
        out = []
        for c in self.pivots():
            r = [0] * self.ncols
            for k, v in self.rows[c].items():
                r[k] = v
            out.append(tuple(r))
        return out


def _echelon_of_rows(rows: Iterable, ncols: int) -> _Echelon:
    ech = _Echelon(ncols)
    for r in rows:
        if isinstance(r, dict):
            ech.add(r)
        else:
            ech.add_vector(r)
        if ech.rank == ncols:
            break
    return ech


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form of ``m`` (same shape) and its pivot columns."""
    ech = _echelon_of_rows(m.row_list(), m.cols)
    rows = ech.basis_rows()
    rows += [(0,) * m.cols] * (m.rows - len(rows))
    return Matrix._raw(m.rows, m.cols, tuple(rows)), ech.pivots()


def rank(m: Matrix) -> int:
    return _echelon_of_rows(m.row_list(), m.cols).rank


class Subspace:
    """A subspace of Q^n held by its RREF basis, so equality is syntactic."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_ech")

    def __init__(self, ambient_dim: int, ech: _Echelon):
        self.ambient_dim = ambient_dim
        self._ech = ech
        self.pivots = tuple(ech.pivots())
        self.basis = Matrix._raw(len(self.pivots), ambient_dim, tuple(ech.basis_rows()))

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, _echelon_of_rows(vectors, ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, _Echelon(ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span((unit_vector(ambient_dim, i) for i in range(ambient_dim)), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> list[Vector]:
        return self.basis.row_list()

    def contains(self, v) -> bool:
        return not self._ech.reduce({i: x for i, x in enumerate(v) if x})

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def coordinates(self, v) -> Vector:
        """Coordinates of ``v`` (assumed to lie in the subspace) in the RREF basis."""
        return tuple(v[p] for p in self.pivots)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.vectors() + other.vectors(), self.ambient_dim)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim})"


class QuotientSpace:
    """Q^n / W with explicit projection and section matrices.

    Quotient coordinates are indexed by the non-pivot columns of W's RREF
    basis; the section sends a quotient basis vector to that ambient unit
    vector.
    """

    __slots__ = ("ambient_dim", "kernel", "projection", "section", "free_columns")

    def __init__(self, ambient_dim: int, kernel: Subspace):
        self.ambient_dim = ambient_dim
        self.kernel = kernel
        pivots = set(kernel.pivots)
        free = [j for j in range(ambient_dim) if j not in pivots]
        self.free_columns = tuple(free)
        index = {j: k for k, j in enumerate(free)}
        q = len(free)
        proj = [[0] * ambient_dim for _ in range(q)]
        for j in free:
            proj[index[j]][j] = Fraction(1)
        for c, row in kernel._ech.rows.items():
            for k, v in row.items():
                if k != c:
                    proj[index[k]][c] = -v
        self.projection = Matrix._raw(q, ambient_dim, tuple(tuple(r) for r in proj))
        sect = [[0] * q for _ in range(ambient_dim)]
        for j in free:
            sect[j][index[j]] = Fraction(1)
        self.section = Matrix._raw(ambient_dim, q, tuple(tuple(r) for r in sect))

    @property
    def dim(self) -> int:
        return len(self.free_columns)

    def project(self, v) -> Vector:
        return self.projection @ v

    def lift(self, v) -> Vector:
        return self.section @ v

    def __repr__(self):
        return f"QuotientSpace(Q^{self.ambient_dim} / dim {self.kernel.dim} -> dim {self.dim})"


def kernel_basis(m: Matrix) -> Subspace:
    """Null space {v : m v = 0} as a Subspace of Q^cols."""
    return kernel_of_rows(m.row_list(), m.cols)


def kernel_of_rows(rows: Iterable, ncols: int) -> Subspace:
    """Common null space of equations given as dense rows or sparse ``{col: value}`` dicts."""
    ech = _echelon_of_rows(rows, ncols)
    pivots = ech.rows
    vecs = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = {f: Fraction(1)}
        for c, row in pivots.items():
            x = row.get(f)
            if x:
                v[c] = -x
        vecs.append(v)
    return Subspace.span(vecs, ncols)


def column_space(m: Matrix) -> Subspace:
    return Subspace.span(m.columns(), m.rows)


def solve_right(a: Matrix, b: Matrix) -> Matrix | None:
    """Some X with a X = b, free variables set to zero; None if inconsistent."""
    if a.rows != b.rows:
        raise ValueError(f"dimension mismatch: a has {a.rows} rows, b has {b.rows}")
    n = a.cols
    aug = Matrix.hstack([a, b]) if b.cols else a
    ech = _echelon_of_rows(aug.row_list(), aug.cols) if aug.cols else _Echelon(0)
    if any(c >= n for c in ech.rows):
        return None
    out = [[0] * b.cols for _ in range(n)]
    for c, row in ech.rows.items():
        for k, v in row.items():
            if k >= n:
                out[c][k - n] = v
    return Matrix._raw(n, b.cols, tuple(tuple(r) for r in out))


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    x = solve_right(m, Matrix.identity(m.rows))
    if x is None or rank(m) != m.rows:
        raise ValueError("matrix is singular")
    return x


def quotient_space(ambient_dim: int, w: Subspace) -> QuotientSpace:
    if w.ambient_dim != ambient_dim:
        raise ValueError("subspace lives in a different ambient space")
    return QuotientSpace(ambient_dim, w)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; basis pair (i, j) of the factors maps to i*dim2 + j."""
    brows = b._data
    out = []
    for arow in a._data:
        for brow in brows:
            r = []
            for x in arow:
                if x:
                    r.extend(_norm(x * y) if y else 0 for y in brow)
                else:
                    r.extend((0,) * b.cols)
            out.append(tuple(r))
    return Matrix._raw(a.rows * b.rows, a.cols * b.cols, tuple(out))


def kron_vec(u, v) -> Vector:
    return tuple(_norm(x * y) if x and y else 0 for x in u for y in v)
