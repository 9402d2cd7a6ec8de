"""Finite-dimensional algebras over Q, their modules, and balanced tensors.

An :class:`Algebra` is stored by its multiplication table on a basis.  A
:class:`Module` carries matrices for the action of each basis element of a
ring on the left and/or on the right, so one class covers right modules, left
modules and bimodules.  Tensor products over a ring are quotients of the
Kronecker product by the balancing relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactlin import (
    Matrix, QuotientSpace, Subspace, Vector, column_space, kernel_basis, kernel_of_rows, kron,
    kron_vec, rank, solve_right, unit_vector, vadd, vscale, zero_vector,
)


class NotProjective(Exception):
    """The module admits no splitting of its canonical free cover."""


class NonUnitalModule(ValueError):
    pass


@dataclass
class Report:
    """Outcome of an axiom check: an empty failure list means valid."""

    subject: str
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def extend(self, other: "Report", prefix: str = "") -> None:
        self.failures.extend(prefix + f for f in other.failures)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"{self.subject}: pass"
        return f"{self.subject}: FAIL\n" + "\n".join("  - " + f for f in self.failures)


def first_difference(a: Matrix, b: Matrix) -> int | None:
    """Index of the first column where two maps disagree (a witnessing basis vector)."""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    if a == b:
        return None
    return (a - b).first_nonzero_column()


class Algebra:
    """Unital associative algebra given by structure constants.

    ``table[i][j]`` is the coordinate vector of ``e_i * e_j``.
    """

    def __init__(self, table: Sequence[Sequence[Sequence]], unit: Sequence, names: Sequence[str] | None = None):
        n = len(table)
        self.dim = n
        self.table = tuple(tuple(tuple(Fraction(x) if x else 0 for x in v) for v in row) for row in table)
        if any(len(row) != n or any(len(v) != n for v in row) for row in self.table):
            raise ValueError("structure tensor must be dim x dim x dim")
        self.unit = tuple(Fraction(x) if x else 0 for x in unit)
        if len(self.unit) != n:
            raise ValueError("unit vector has the wrong length")
        self.names = tuple(names) if names else tuple(f"e{i}" for i in range(n))

    @classmethod
    def from_structure(cls, c, unit, names=None) -> "Algebra":
        return cls(c, unit, names)

    @classmethod
    def from_matrices(cls, mats: Sequence[Matrix], names=None) -> "Algebra":
        """Subalgebra of a matrix algebra spanned by ``mats`` (must contain the identity).

        The basis of the result is ``mats`` in the given order.
        """
        mats = list(mats)
        if not mats:
            raise ValueError("empty basis")
        frame = Frame([m.flatten() for m in mats])
        n = len(mats)
        table = [[frame.coordinates((mats[i] @ mats[j]).flatten()) for j in range(n)] for i in range(n)]
        ident = Matrix.identity(mats[0].rows).flatten()
        unit = frame.coordinates(ident)
        alg = cls(table, unit, names)
        alg.matrices = tuple(mats)
        return alg

    @classmethod
    def scalars(cls) -> "Algebra":
        return cls([[[1]]], [1], ["1"])

    def mul(self, u, v) -> Vector:
        acc = [0] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.table[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        acc[k] += ab * c
        return tuple(x if x else 0 for x in acc)

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    @cached_property
    def left_matrices(self) -> tuple[Matrix, ...]:
        """``L[i] v = e_i * v``."""
        n = self.dim
        return tuple(Matrix.from_columns([self.table[i][j] for j in range(n)], n) for i in range(n))

    @cached_property
    def right_matrices(self) -> tuple[Matrix, ...]:
        """``R[j] v = v * e_j``."""
        n = self.dim
        return tuple(Matrix.from_columns([self.table[i][j] for i in range(n)], n) for j in range(n))

    def left_mult(self, a) -> Matrix:
        return combine(self.left_matrices, a, self.dim)

    def right_mult(self, a) -> Matrix:
        return combine(self.right_matrices, a, self.dim)

    def opposite(self) -> "Algebra":
        n = self.dim
        return Algebra([[self.table[j][i] for j in range(n)] for i in range(n)], self.unit,
                       [s + "^op" for s in self.names])

    def is_unit(self, v) -> bool:
        return tuple(v) == self.unit

    def subalgebra_generated(self, gens: Sequence[Vector]) -> Subspace:
        space = Subspace.span([self.unit] + list(gens), self.dim)
        while True:
            vecs = space.vectors()
            new = Subspace.span(vecs + [self.mul(u, v) for u in vecs for v in gens], self.dim)
            if new.dim == space.dim:
                return new
            space = new

    @cached_property
    def generators(self) -> tuple[Vector, ...]:
        """Basis vectors that, with the unit, generate the algebra (chosen greedily)."""
        gens: list[Vector] = []
        sub = Subspace.span([self.unit], self.dim)
        for i in range(self.dim):
            e = self.basis_vector(i)
            if not sub.contains(e):
                gens.append(e)
                sub = self.subalgebra_generated(gens)
                if sub.dim == self.dim:
                    break
        return tuple(gens)

    def regular_right(self) -> "Module":
        return Module(self.dim, right_ring=self, right=self.right_matrices, name="A_A")

    def regular_left(self) -> "Module":
        return Module(self.dim, left_ring=self, left=self.left_matrices, name="_AA")

    def regular_bimodule(self) -> "Module":
        return Module(self.dim, left_ring=self, left=self.left_matrices,
                      right_ring=self, right=self.right_matrices, name="_AA_A")

    def trace_form(self) -> Matrix:
        n = self.dim
        Ls = self.left_matrices
        traces = [sum((Ls[k][i, i] for i in range(n)), Fraction(0)) for k in range(n)]
        return Matrix(n, n, [[sum((c * traces[k] for k, c in enumerate(self.table[i][j]) if c), Fraction(0))
                              for j in range(n)] for i in range(n)])

    def __repr__(self):
        return f"Algebra(dim={self.dim})"


class IdemRing(Algebra):
    """Finite-dimensional ring with a distinguished complete set of orthogonal idempotents.

    The families handled here are finite, so the sum of the idempotents is a
    unit; the distinguished idempotents are kept for unitality checks and
    block bookkeeping.
    """

    def __init__(self, table, idempotents: Sequence[Vector], names=None):
        idempotents = [tuple(v) for v in idempotents]
        n = len(table)
        unit = zero_vector(n)
        for e in idempotents:
            unit = vadd(unit, e)
        super().__init__(table, unit, names)
        self.idempotents = tuple(tuple(Fraction(x) if x else 0 for x in e) for e in idempotents)

    @classmethod
    def from_blocks(cls, dims: Sequence[int], homs: dict, names=None) -> "IdemRing":
        """Ring of block maps on the direct sum of spaces of the given dims.

        ``homs[(p, q)]`` is a basis (list of ``dims[q] x dims[p]`` matrices) of
        the maps from summand p to summand q.  Must contain the identities.
        Product is composition: ``(g * f) = g o f``.
        """
        k = len(dims)
        offsets = [sum(dims[:i]) for i in range(k)]
        total = sum(dims)
        blocks = []
        frames = {}
        for p in range(k):
            for q in range(k):
                basis = homs.get((p, q), [])
                if basis:
                    frames[(p, q)] = (len(blocks), Frame([f.flatten() for f in basis]))
                for idx, f in enumerate(basis):
                    blocks.append((p, q, idx, f))
        n = len(blocks)
        table = []
        for (p1, q1, _, f1) in blocks:
            row = []
            for (p2, q2, _, f2) in blocks:
                v = [0] * n
                if q2 == p1:
                    prod = f1 @ f2
                    if (p2, q1) in frames:
                        start, frame = frames[(p2, q1)]
                        c = frame.coordinates(prod.flatten())
                        v[start:start + len(c)] = c
                    elif not prod.is_zero():
                        raise ValueError("block maps are not closed under composition")
                row.append(tuple(v))
            table.append(row)
        idems = []
        for p in range(k):
            start, frame = frames[(p, p)]
            c = frame.coordinates(Matrix.identity(dims[p]).flatten())
            v = [0] * n
            v[start:start + len(c)] = c
            idems.append(tuple(v))
        ring = cls(table, idems, names)
        ring.block_dims = tuple(dims)
        ring.offsets = tuple(offsets)
        ring.blocks = tuple((p, q, idx) for (p, q, idx, _) in blocks)
        ring.block_maps = tuple(f for (_, _, _, f) in blocks)
        ring.frames = frames
        mats = []
        for (p, q, _, f) in blocks:
            data = [[0] * total for _ in range(total)]
            for i in range(f.rows):
                for j in range(f.cols):
                    data[offsets[q] + i][offsets[p] + j] = f[i, j]
            mats.append(Matrix(total, total, data))
        ring.matrices = tuple(mats)
        return ring

    def block_coordinates(self, p: int, q: int, f: Matrix) -> Vector:
        """Coordinates in the ring of a map from summand p to summand q."""
        v = [0] * self.dim
        if (p, q) not in self.frames:
            if not f.is_zero():
                raise ValueError("map outside the ring")
            return tuple(v)
        start, frame = self.frames[(p, q)]
        c = frame.coordinates(f.flatten())
        v[start:start + len(c)] = c
        return tuple(v)

    def block_contains(self, p: int, q: int, f: Matrix) -> bool:
        if (p, q) not in self.frames:
            return f.is_zero()
        return self.frames[(p, q)][1].contains(f.flatten())


class Frame:
    """A list of independent vectors with a coordinate map for their span."""

    def __init__(self, vectors: Sequence[Vector]):
        vectors = [tuple(v) for v in vectors]
        self.vectors = vectors
        self.span = Subspace.span(vectors, len(vectors[0]) if vectors else 0)
        if self.span.dim != len(vectors):
            raise ValueError("frame vectors are linearly dependent")
        # coordinates in the RREF basis are read at pivots; convert to this frame
        if vectors:
            c = Matrix.from_rows([[v[p] for p in self.span.pivots] for v in vectors])
            inv = solve_right(c.T, Matrix.identity(len(vectors)))
            self._convert = inv
        else:
            self._convert = Matrix(0, 0)

    def __len__(self):
        return len(self.vectors)

    def contains(self, v) -> bool:
        return self.span.contains(v)

    def coordinates(self, v) -> Vector:
        if not self.vectors:
            return ()
        return self._convert @ tuple(v[p] for p in self.span.pivots)


def combine(mats: Sequence[Matrix], coeffs, n: int, cols: int | None = None) -> Matrix:
    cols = n if cols is None else cols
    terms = [(c, m) for c, m in zip(coeffs, mats) if c]
    if len(terms) == 1 and terms[0][0] == 1:
        return terms[0][1]
    acc = Matrix.zeros(n, cols)
    for c, m in terms:
        if c:
            acc = acc + m.scale(c)
    return acc


class Module:
    """A finite-dimensional vector space with left and/or right ring actions.

    ``left[i]`` is the matrix of ``v -> e_i . v`` and ``right[i]`` the matrix of
    ``v -> v . e_i`` for the basis elements of the respective rings.
    """

    def __init__(self, dim: int, *, left_ring: Algebra | None = None, left: Sequence[Matrix] = (),
                 right_ring: Algebra | None = None, right: Sequence[Matrix] = (), name: str = ""):
        self.dim = dim
        self.left_ring = left_ring
        self.left = tuple(left)
        self.right_ring = right_ring
        self.right = tuple(right)
        self.name = name
        if left_ring is not None and len(self.left) != left_ring.dim:
            raise ValueError("need one left action matrix per ring basis element")
        if right_ring is not None and len(self.right) != right_ring.dim:
            raise ValueError("need one right action matrix per ring basis element")
        for m in self.left + self.right:
            if m.shape != (dim, dim):
                raise ValueError(f"action matrix of shape {m.shape} on a module of dim {dim}")

    def left_mat(self, a) -> Matrix:
        return combine(self.left, a, self.dim)

    def right_mat(self, a) -> Matrix:
        return combine(self.right, a, self.dim)

    def act_left(self, a, v) -> Vector:
        return self.left_mat(a) @ v

    def act_right(self, v, a) -> Vector:
        return self.right_mat(a) @ v

    def with_left(self, ring: Algebra, mats: Sequence[Matrix], name: str | None = None) -> "Module":
        return Module(self.dim, left_ring=ring, left=mats, right_ring=self.right_ring, right=self.right,
                      name=self.name if name is None else name)

    def with_right(self, ring: Algebra, mats: Sequence[Matrix], name: str | None = None) -> "Module":
        return Module(self.dim, left_ring=self.left_ring, left=self.left, right_ring=ring, right=mats,
                      name=self.name if name is None else name)

    def right_only(self) -> "Module":
        return Module(self.dim, right_ring=self.right_ring, right=self.right, name=self.name)

    def left_only(self) -> "Module":
        return Module(self.dim, left_ring=self.left_ring, left=self.left, name=self.name)

    def as_right_over_opposite(self) -> "Module":
        """A left R-module seen as a right module over R^op (same matrices)."""
        return Module(self.dim, right_ring=self.left_ring.opposite(), right=self.left, name=self.name)

    def transformed(self, s: Matrix) -> "Module":
        """Same module in the basis given by the columns of the invertible matrix ``s``."""
        from .exactlin import inverse
        si = inverse(s)
        return Module(self.dim, left_ring=self.left_ring, left=[si @ m @ s for m in self.left],
                      right_ring=self.right_ring, right=[si @ m @ s for m in self.right], name=self.name)

    def __repr__(self):
        return f"Module({self.name or '?'}, dim={self.dim})"


def RightModule(ring: Algebra, dim: int, action: Sequence[Matrix], name: str = "") -> Module:
    return Module(dim, right_ring=ring, right=action, name=name)


def LeftModule(ring: Algebra, dim: int, action: Sequence[Matrix], name: str = "") -> Module:
    return Module(dim, left_ring=ring, left=action, name=name)


def Bimodule(left_ring: Algebra, right_ring: Algebra, dim: int, left_action, right_action, name: str = "") -> Module:
    return Module(dim, left_ring=left_ring, left=left_action, right_ring=right_ring, right=right_action, name=name)


def zero_module(ring: Algebra) -> Module:
    return Module(0, right_ring=ring, right=[Matrix(0, 0)] * ring.dim, name="0")


# -- validation ------------------------------------------------------------

def check_algebra(a: Algebra) -> Report:
    rep = Report("algebra axioms")
    n = a.dim
    for i in range(n):
        for j in range(n):
            eij = a.table[i][j]
            for k in range(n):
                lhs = a.mul(eij, a.basis_vector(k))
                rhs = a.mul(a.basis_vector(i), a.table[j][k])
                if lhs != rhs:
                    rep.fail(f"associativity fails on basis triple ({i}, {j}, {k})")
    for i in range(n):
        e = a.basis_vector(i)
        if a.mul(a.unit, e) != e:
            rep.fail(f"unit is not a left identity on e{i}")
        if a.mul(e, a.unit) != e:
            rep.fail(f"unit is not a right identity on e{i}")
    return rep


def check_module(m: Module) -> Report:
    rep = Report(f"module axioms ({m.name or 'module'})")
    ident = Matrix.identity(m.dim)
    if m.right_ring is not None:
        r = m.right_ring
        for i in range(r.dim):
            for j in range(r.dim):
                # v.(e_i e_j) = (v.e_i).e_j
                if m.right_mat(r.table[i][j]) != m.right[j] @ m.right[i]:
                    rep.fail(f"right action not associative on ring basis pair ({i}, {j})")
        if m.right_mat(r.unit) != ident:
            rep.fail("right action of the unit is not the identity")
    if m.left_ring is not None:
        r = m.left_ring
        for i in range(r.dim):
            for j in range(r.dim):
                if m.left_mat(r.table[i][j]) != m.left[i] @ m.left[j]:
                    rep.fail(f"left action not associative on ring basis pair ({i}, {j})")
        if m.left_mat(r.unit) != ident:
            rep.fail("left action of the unit is not the identity")
    if m.left_ring is not None and m.right_ring is not None:
        for i, lm in enumerate(m.left):
            for j, rm in enumerate(m.right):
                if lm @ rm != rm @ lm:
                    rep.fail(f"left and right actions do not commute on basis pair ({i}, {j})")
    return rep


def is_unital(m: Module, side: str) -> bool:
    """M = M R, tested as: the sum of the distinguished idempotents acts as the identity."""
    ring = m.right_ring if side == "right" else m.left_ring
    idems = getattr(ring, "idempotents", None) or (ring.unit,)
    total = zero_vector(ring.dim)
    for e in idems:
        total = vadd(total, e)
    act = m.right_mat(total) if side == "right" else m.left_mat(total)
    return act == Matrix.identity(m.dim)


# -- tensor products -------------------------------------------------------

class BalancedTensor:
    """M (x)_T N as a quotient of M (x)_K N by m.t (x) n - m (x) t.n.

    The outer actions (left ring of M, right ring of N) descend to
    ``self.module``.
    """

    def __init__(self, left: Module, ring: Algebra, right: Module):
        if left.right_ring is None or right.left_ring is None:
            raise ValueError("tensor_over needs a right action on the left factor and a left action on the right factor")
        if left.right_ring.dim != ring.dim or right.left_ring.dim != ring.dim:
            raise ValueError("factors are modules over a different ring")
        self.left = left
        self.right = right
        self.ring = ring
        m, n = left.dim, right.dim
        self.ambient_dim = m * n
        gens = list(ring.generators)
        if not (is_unital(left, "right") and is_unital(right, "left")):
            gens.append(ring.unit)
        rows = []
        for t in gens:
            rt = left.right_mat(t)
            lt = right.left_mat(t)
            rt_cols = [[(a, x) for a, x in enumerate(col) if x] for col in rt.columns()]
            lt_cols = [[(b, x) for b, x in enumerate(col) if x] for col in lt.columns()]
            for i in range(m):
                for k in range(n):
                    row: dict = {}
                    for a, x in rt_cols[i]:
                        row[a * n + k] = row.get(a * n + k, 0) + x
                    for b, x in lt_cols[k]:
                        row[i * n + b] = row.get(i * n + b, 0) - x
                    if any(row.values()):
                        rows.append(row)
        self.relations = Subspace.span(rows, m * n)
        self.space = QuotientSpace(m * n, self.relations)
        self.projection = self.space.projection
        self.section = self.space.section
        self.dim = self.space.dim

    @cached_property
    def module(self) -> "Module":
        left, right = self.left, self.right
        m, n = left.dim, right.dim
        left_out = [self.induced(a, Matrix.identity(n)) for a in left.left] if left.left_ring else []
        right_out = [self.induced(Matrix.identity(m), b) for b in right.right] if right.right_ring else []
        return Module(self.dim, left_ring=left.left_ring, left=left_out,
                      right_ring=right.right_ring, right=right_out,
                      name=f"({left.name} (x) {right.name})")

    def induced(self, f: Matrix, g: Matrix, target: "BalancedTensor | None" = None) -> Matrix:
        """Matrix of f (x) g from this tensor space to ``target`` (default: itself)."""
        return tensor_map(self, f, g, self if target is None else target)

    @cached_property
    def projection_columns(self) -> list[list]:
        return self.projection.sparse_columns()

    def free_pairs(self):
        """(left index, right index) of the ambient pure tensor behind each quotient basis vector."""
        n = self.right.dim
        return [divmod(c, n) for c in self.space.free_columns]

    def project_sparse(self, amb: dict) -> Vector:
        out = [0] * self.dim
        cols = self.projection_columns
        for k, c in amb.items():
            if c:
                for i, x in cols[k]:
                    out[i] += c * x
        return tuple(x if x else 0 for x in out)

    def act(self, x: Matrix, left: Matrix | None = None, right: Matrix | None = None) -> Matrix:
        """Apply ``left (x) right`` (identity where omitted) to the columns of ``x``.

        Works through representatives in the ambient space, so the outer
        actions can be evaluated without forming their full matrices.
        """
        n1, n2 = self.left.dim, self.right.dim
        lc = left.sparse_columns() if left is not None else None
        rc = right.sparse_columns() if right is not None else None
        lifted = (self.section @ x).sparse_columns()
        cols = []
        for col in lifted:
            amb: dict = {}
            for k, v in col:
                i, j = divmod(k, n2)
                for a, s in (lc[i] if lc is not None else ((i, 1),)):
                    for b, t in (rc[j] if rc is not None else ((j, 1),)):
                        key = a * n2 + b
                        amb[key] = amb.get(key, 0) + v * s * t
            cols.append(self.project_sparse(amb))
        return Matrix.from_columns(cols, self.dim)

    def pure(self, u, v) -> Vector:
        """Quotient coordinates of u (x) v."""
        return self.projection @ kron_vec(u, v)

    def pure_basis(self, i: int, j: int) -> Vector:
        return self.projection.column(i * self.right.dim + j)

    def lift(self, x) -> Vector:
        return self.section @ x

    def __repr__(self):
        return f"BalancedTensor(dim={self.dim}, ambient={self.ambient_dim})"


def tensor_map(src: BalancedTensor, f: Matrix, g: Matrix, dst: BalancedTensor) -> Matrix:
    """f (x) g : src -> dst, for f, g compatible with the balancing."""
    fc = f.sparse_columns()
    gc = g.sparse_columns()
    n2 = dst.right.dim
    cols = []
    for i, j in src.free_pairs():
        amb: dict = {}
        for a, x in fc[i]:
            for b, y in gc[j]:
                k = a * n2 + b
                amb[k] = amb.get(k, 0) + x * y
        cols.append(dst.project_sparse(amb))
    return Matrix.from_columns(cols, dst.dim)


def insert_right(src: BalancedTensor, g: Matrix, mid: BalancedTensor, dst: BalancedTensor) -> Matrix:
    """x (x) y  ->  sum (x (x) z) (x) w  where g(y) = sum z (x) w.

    ``src`` is X (x) Y, ``g`` maps Y into the ambient space Z (x)_K W
    (one representative per column), ``mid`` is X (x) Z and ``dst`` is
    mid (x) W.  Well defined whenever g is left linear over the middle ring
    of ``src``.
    """
    gc = g.sparse_columns()
    zdim = mid.right.dim
    wdim = dst.right.dim
    mcols = mid.projection_columns
    cols = []
    for x, y in src.free_pairs():
        amb: dict = {}
        for r, c in gc[y]:
            z, w = divmod(r, wdim)
            for m, d in mcols[x * zdim + z]:
                k = m * wdim + w
                amb[k] = amb.get(k, 0) + c * d
        cols.append(dst.project_sparse(amb))
    return Matrix.from_columns(cols, dst.dim)


def tensor_over(m: Module, t: Algebra, n: Module) -> BalancedTensor:
    if isinstance(t, IdemRing):
        if not is_unital(m, "right"):
            raise NonUnitalModule(f"{m.name or 'left factor'} is not unital over the idempotented ring")
        if not is_unital(n, "left"):
            raise NonUnitalModule(f"{n.name or 'right factor'} is not unital over the idempotented ring")
    return BalancedTensor(m, t, n)


# -- homomorphisms and duals -----------------------------------------------

def commuting_maps(rows_out: int, cols_in: int, pairs) -> list[Matrix]:
    """Basis of the maps f (``rows_out x cols_in``) with f a = b f for every (a, b) in ``pairs``."""
    nunk = rows_out * cols_in
    if nunk == 0:
        return []
    eqs = []
    for a, b in pairs:
        acols = a.sparse_columns()
        brows = [[(k, x) for k, x in enumerate(r) if x] for r in b.row_list()]
        for i in range(rows_out):
            for j in range(cols_in):
                # (f a - b f)[i, j] = sum_k f[i, k] a[k, j] - sum_k b[i, k] f[k, j]
                row: dict = {}
                for k, x in acols[j]:
                    row[i * cols_in + k] = row.get(i * cols_in + k, 0) + x
                for k, x in brows[i]:
                    row[k * cols_in + j] = row.get(k * cols_in + j, 0) - x
                if any(row.values()):
                    eqs.append(row)
    sol = kernel_of_rows(eqs, nunk)
    return [Matrix.from_entries(rows_out, cols_in, v) for v in sol.vectors()]


def generator_points(ring: Algebra) -> list[Vector]:
    """Ring generators plus the unit: commuting with their actions forces linearity."""
    return list(ring.generators) + [ring.unit]


def hom_right(p: Module, q: Module) -> list[Matrix]:
    """Basis of right-linear maps P -> Q (each a ``dim Q x dim P`` matrix)."""
    if p.dim == 0 or q.dim == 0:
        return []
    return commuting_maps(q.dim, p.dim, [(p.right_mat(g), q.right_mat(g)) for g in generator_points(p.right_ring)])


def hom_left(p: Module, q: Module) -> list[Matrix]:
    if p.dim == 0 or q.dim == 0:
        return []
    return commuting_maps(q.dim, p.dim, [(p.left_mat(g), q.left_mat(g)) for g in generator_points(p.left_ring)])


class DualModule:
    """P* = Hom_A(P, A) for a right A-module P.

    The basis consists of functionals (``dim A x dim P`` matrices).  The
    module carries the left A-action (a.phi)(x) = a phi(x) and, when P has a
    left action by some ring T, the right T-action phi.t = phi o t.
    """

    def __init__(self, p: Module):
        a = p.right_ring
        self.source = p
        self.ring = a
        basis = hom_right(p, a.regular_right()) if p.dim else []
        self.functionals = basis
        self.frame = Frame([f.flatten() for f in basis]) if basis else None
        self.dim = len(basis)
        left = [Matrix.from_columns([self.coordinates(a.left_matrices[i] @ f) for f in basis], self.dim)
                for i in range(a.dim)]
        right_ring, right = None, ()
        if p.left_ring is not None:
            right_ring = p.left_ring
            right = [Matrix.from_columns([self.coordinates(f @ t) for f in basis], self.dim) for t in p.left]
        self.module = Module(self.dim, left_ring=a, left=left, right_ring=right_ring, right=right,
                             name=f"{p.name}*")

    def coordinates(self, f: Matrix) -> Vector:
        if self.dim == 0:
            if not f.is_zero():
                raise ValueError("nonzero functional on the zero module")
            return ()
        return self.frame.coordinates(f.flatten())

    def functional(self, coords) -> Matrix:
        return combine(self.functionals, coords, self.ring.dim, self.source.dim)

    def contains(self, f: Matrix) -> bool:
        return self.dim == 0 and f.is_zero() or self.dim > 0 and self.frame.contains(f.flatten())


def dual_module(p: Module) -> DualModule:
    return DualModule(p)


@dataclass
class DualBasis:
    """Finite dual basis {e_a, e*_a} of a right A-module P."""

    module: Module
    elements: list[Vector]
    functionals: list[Matrix]

    def __len__(self):
        return len(self.elements)

    def check(self) -> Report:
        p = self.module
        rep = Report("dual basis criterion")
        for j in range(p.dim):
            x = unit_vector(p.dim, j)
            acc = zero_vector(p.dim)
            for e, f in zip(self.elements, self.functionals):
                acc = vadd(acc, p.act_right(e, f @ x))
            if acc != x:
                rep.fail(f"sum e_a . e*_a(p) != p for basis vector {j}")
        return rep

    def reconstruction(self) -> Matrix:
        """Matrix of p -> sum_a e_a . e*_a(p); the identity for a dual basis."""
        p = self.module
        acc = Matrix.zeros(p.dim, p.dim)
        for e, f in zip(self.elements, self.functionals):
            # p -> e . f(p)  =  [columns R_k e]_k @ f
            acc = acc + Matrix.from_columns([r @ e for r in p.right], p.dim) @ f
        return acc


def _free_cover_section(m: Module, gens: Sequence[Vector], idems: Sequence[Vector] | None = None):
    """Split the canonical surjection  (+)_i e_i B -> M,  x_i -> g_i . x_i.

    Works on the right over B = m.right_ring.  Returns the section as a list
    of ``dim B x dim M`` blocks (block i lands in e_i B), or raises
    NotProjective.
    """
    b = m.right_ring
    n = len(gens)
    if idems is None:
        idems = [b.unit] * n
    reg = b.regular_right()
    pieces, incs = [], []
    for e in idems:
        piece, inc = submodule(reg, column_space(b.left_mult(e)), name="eB")
        pieces.append(piece)
        incs.append(inc)
    free = direct_sum(pieces, name="F")
    # pi: F -> M, a basis vector x of e_i B goes to g_i . x
    pi_cols = []
    for g, inc in zip(gens, incs):
        for x in inc.columns():
            pi_cols.append(m.act_right(g, x))
    pi = Matrix.from_columns(pi_cols, m.dim) if pi_cols else Matrix(m.dim, 0)
    homs = hom_right(m, free)
    target = Matrix.identity(m.dim).flatten()
    if homs:
        coeff = Matrix.from_columns([(pi @ h).flatten() for h in homs])
        sol = solve_right(coeff, Matrix.from_columns([target], len(target)))
    else:
        sol = None
    if sol is None:
        raise NotProjective(f"{m.name or 'module'} has no splitting of its free cover")
    sigma = combine(homs, sol.column(0), free.dim, m.dim)
    blocks, row = [], 0
    for inc in incs:
        k = inc.cols
        blocks.append(inc @ sigma.submatrix(range(row, row + k), range(m.dim)))
        row += k
    return blocks, free.dim


def dual_basis(p: Module, generators: Sequence[Vector] | None = None) -> DualBasis:
    """Dual basis of P_A from a right-linear section of A^n -> P.

    The generators default to the K-basis of P.
    """
    if p.dim == 0:
        return DualBasis(p, [], [])
    gens = [tuple(g) for g in generators] if generators is not None else [unit_vector(p.dim, i) for i in range(p.dim)]
    if column_space(Matrix.from_columns(gens, p.dim)).dim < p.dim and \
            Subspace.span([p.act_right(g, p.right_ring.basis_vector(k)) for g in gens
                           for k in range(p.right_ring.dim)], p.dim).dim < p.dim:
        raise ValueError("generators do not generate the module")
    blocks, _ = _free_cover_section(p, gens)
    return DualBasis(p, gens, blocks)


def is_projective(m: Module, side: str = "right") -> bool:
    """Projectivity of a finite-dimensional module over a finite-dimensional algebra.

    Tests Tor_1(M, B/J) = 0, i.e. injectivity of M (x)_B J -> M for J = rad B.
    For finitely generated modules over an artinian ring this is equivalent
    to projectivity: the kernel K of a projective cover satisfies K = KJ.
    """
    mod = m if side == "right" else m.as_right_over_opposite()
    if mod.dim == 0:
        return True
    b = mod.right_ring
    rad = jacobson_radical(b)
    if rad.dim == 0:
        return True
    jmod, _ = submodule(b.regular_left(), rad, name="J")
    t = BalancedTensor(mod, b, jmod)
    image = Subspace.span([mod.act_right(unit_vector(mod.dim, i), x)
                           for i in range(mod.dim) for x in rad.vectors()], mod.dim)
    return t.dim == image.dim


def is_projective_by_splitting(m: Module, side: str = "right") -> bool:
    """Same question answered by splitting the free cover on the K-basis (slower)."""
    mod = m if side == "right" else m.as_right_over_opposite()
    try:
        if mod.dim:
            _free_cover_section(mod, [unit_vector(mod.dim, i) for i in range(mod.dim)])
    except NotProjective:
        return False
    return True


def jacobson_radical(r: Algebra) -> Subspace:
    """rad(R) = {x : tr(L_{xy}) = 0 for all y} (characteristic zero)."""
    rad = kernel_basis(r.trace_form())
    return rad


def check_radical(r: Algebra, rad: Subspace) -> Report:
    rep = Report("radical is a nilpotent two-sided ideal")
    vecs = rad.vectors()
    for x in vecs:
        for i in range(r.dim):
            e = r.basis_vector(i)
            if not rad.contains(r.mul(e, x)) or not rad.contains(r.mul(x, e)):
                rep.fail("not a two-sided ideal")
                return rep
    power = vecs
    for _ in range(r.dim + 1):
        if not power:
            return rep
        power = Subspace.span([r.mul(u, v) for u in power for v in vecs], r.dim).vectors()
    if power:
        rep.fail("not nilpotent")
    return rep


@dataclass
class FlatnessReport:
    flat: bool
    faithful: bool

    @property
    def faithfully_flat(self) -> bool:
        return self.flat and self.faithful


def left_ideal_module(r: Algebra, e: Vector) -> tuple[Module, Matrix]:
    """R.e as a left R-module, with its inclusion into R."""
    sub = Subspace.span([r.mul(r.basis_vector(i), e) for i in range(r.dim)], r.dim)
    inc = Matrix.from_columns(sub.vectors(), r.dim) if sub.dim else Matrix(r.dim, 0)
    acts = [Matrix.from_columns([sub.coordinates(l @ v) for v in sub.vectors()], sub.dim) for l in r.left_matrices]
    return Module(sub.dim, left_ring=r, left=acts, name="Re"), inc


def is_faithfully_flat(r: Algebra, f: Module) -> FlatnessReport:
    """Flatness and faithfulness of a finite-dimensional left R-module.

    flat: f is projective (finite-dimensional, so flat and projective agree).
    faithful: the annihilator of f / rad(R) f in R / rad(R) vanishes.
    """
    if not is_unital(f, "left"):
        raise NonUnitalModule("module is not unital over the idempotented ring")
    flat = is_projective(f, side="left")
    rad = jacobson_radical(r)
    radf = Subspace.span([f.left_mat(x) @ v for x in rad.vectors() for v in
                          (unit_vector(f.dim, i) for i in range(f.dim))], f.dim) if f.dim else Subspace.zero(0)
    # annihilator of f/rad f: x with x.f in rad f
    cols = []
    for i in range(r.dim):
        img = f.left[i]
        cols.append(tuple(x for v in img.columns() for x in _mod_vector(radf, v)))
    if f.dim:
        ann = kernel_basis(Matrix.from_columns(cols))
    else:
        ann = Subspace.full(r.dim)
    faithful = ann == rad
    return FlatnessReport(flat, faithful)


def _mod_vector(sub: Subspace, v) -> Vector:
    """Canonical representative of v modulo sub (entries at non-pivot columns)."""
    red = sub._ech.reduce({i: x for i, x in enumerate(v) if x})
    out = [0] * len(v)
    for k, x in red.items():
        out[k] = x
    return tuple(out)


def submodule(m: Module, sub: Subspace, name: str = "") -> tuple[Module, Matrix]:
    """Restriction of all actions to an invariant subspace; returns (module, inclusion)."""
    vecs = sub.vectors()
    inc = Matrix.from_columns(vecs, m.dim) if vecs else Matrix(m.dim, 0)

    def restrict(mat):
        cols = []
        for v in vecs:
            w = mat @ v
            if not sub.contains(w):
                raise ValueError("subspace is not invariant")
            cols.append(sub.coordinates(w))
        return Matrix.from_columns(cols, sub.dim) if cols else Matrix(0, 0)

    return Module(sub.dim, left_ring=m.left_ring, left=[restrict(a) for a in m.left],
                  right_ring=m.right_ring, right=[restrict(a) for a in m.right], name=name or m.name), inc


def quotient_module(m: Module, sub: Subspace, name: str = "") -> tuple[Module, QuotientSpace]:
    q = QuotientSpace(m.dim, sub)
    def desc(mat):
        return q.projection @ mat @ q.section
    return Module(q.dim, left_ring=m.left_ring, left=[desc(a) for a in m.left],
                  right_ring=m.right_ring, right=[desc(a) for a in m.right], name=name or m.name), q


def direct_sum(mods: Sequence[Module], name: str = "") -> Module:
    mods = list(mods)
    first = mods[0]
    left = [Matrix.block_diag([m.left[i] for m in mods]) for i in range(len(first.left))] if first.left_ring else []
    right = [Matrix.block_diag([m.right[i] for m in mods]) for i in range(len(first.right))] if first.right_ring else []
    return Module(sum(m.dim for m in mods), left_ring=first.left_ring, left=left,
                  right_ring=first.right_ring, right=right,
                  name=name or " (+) ".join(m.name for m in mods))


def subalgebra(a: Algebra, b: Subspace) -> tuple[Algebra, Matrix]:
    """A subspace closed under multiplication and containing 1, as an algebra with its inclusion."""
    if not b.contains(a.unit):
        raise ValueError("subalgebra must contain the unit")
    vecs = b.vectors()
    for u in vecs:
        for v in vecs:
            if not b.contains(a.mul(u, v)):
                raise ValueError("subspace is not closed under multiplication")
    frame = Frame(vecs)
    table = [[frame.coordinates(a.mul(u, v)) for v in vecs] for u in vecs]
    alg = Algebra(table, frame.coordinates(a.unit))
    return alg, Matrix.from_columns(vecs, a.dim)
