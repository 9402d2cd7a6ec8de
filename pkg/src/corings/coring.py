"""Corings, comodules and grouplike elements.

A coring over A is an A-bimodule C with comultiplication C -> C (x)_A C and
counit C -> A, both stored as matrices into explicitly constructed tensor
spaces.  Iterated tensors are bracketed to the left: C (x) C (x) C means
(C (x) C) (x) C.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

from .algebra import (
    Algebra, BalancedTensor, Module, Report, direct_sum, first_difference, hom_right,
    generator_points, insert_right, subalgebra, tensor_map, tensor_over, combine,
)
from .exactlin import Matrix, Subspace, Vector, column_space, kernel_basis, unit_vector


class NotGrouplike(ValueError):
    pass


def collapse_left(t: BalancedTensor, f: Matrix, ring: Algebra) -> Matrix:
    """x (x) n -> f(x) . n  for f: X -> A, giving t -> N."""
    n = t.right
    fc = f.sparse_columns()
    cols = []
    for i, j in t.free_pairs():
        v = [0] * n.dim
        for k, c in fc[i]:
            col = n.left[k].column(j)
            for r, y in enumerate(col):
                if y:
                    v[r] += c * y
        cols.append(tuple(v))
    return Matrix.from_columns(cols, n.dim)


def collapse_right(t: BalancedTensor, f: Matrix, ring: Algebra) -> Matrix:
    """m (x) y -> m . f(y)  for f: Y -> A, giving t -> M."""
    m = t.left
    fc = f.sparse_columns()
    cols = []
    for i, j in t.free_pairs():
        v = [0] * m.dim
        for k, c in fc[j]:
            col = m.right[k].column(i)
            for r, y in enumerate(col):
                if y:
                    v[r] += c * y
        cols.append(tuple(v))
    return Matrix.from_columns(cols, m.dim)


class Coring:
    """An A-coring (C, comult, counit).

    ``summands`` optionally records a direct-sum decomposition as a list of
    (coring, inclusion matrix) pairs; the axiom check then works summand by
    summand, which is far cheaper than forming the full triple tensor.
    """

    def __init__(self, ring: Algebra, bimodule: Module, comult: Matrix, counit: Matrix,
                 name: str = "", square: BalancedTensor | None = None, summands=None):
        self.ring = ring
        self.module = bimodule
        self.dim = bimodule.dim
        self.name = name
        self.square = square if square is not None else tensor_over(bimodule, ring, bimodule)
        if comult.shape != (self.square.dim, self.dim):
            raise ValueError(f"comultiplication has shape {comult.shape}, expected {(self.square.dim, self.dim)}")
        if counit.shape != (ring.dim, self.dim):
            raise ValueError(f"counit has shape {counit.shape}, expected {(ring.dim, self.dim)}")
        self.comult = comult
        self.counit = counit
        self.summands = summands

    @cached_property
    def cube(self) -> BalancedTensor:
        return tensor_over(self.square.module, self.ring, self.module)

    @cached_property
    def comult_lift(self) -> Matrix:
        """Delta with values written in the ambient space C (x)_K C."""
        return self.square.section @ self.comult

    def delta(self, v) -> Vector:
        return self.comult @ v

    def eps(self, v) -> Vector:
        return self.counit @ v

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def __repr__(self):
        return f"Coring({self.name or '?'}, dim={self.dim})"


def _check_bimodule_map(rep: Report, what: str, f: Matrix, src: Module, dst: Module | BalancedTensor):
    """Linearity on both sides, tested on the ring generators and the unit."""
    tensor = dst if isinstance(dst, BalancedTensor) else None
    if src.left_ring is not None:
        for k, g in enumerate(generator_points(src.left_ring)):
            img = tensor.act(f, left=tensor.left.left_mat(g)) if tensor else dst.left_mat(g) @ f
            w = first_difference(f @ src.left_mat(g), img)
            if w is not None:
                rep.fail(f"{what} is not left linear: ring generator {k}, witness basis vector {w}")
    if src.right_ring is not None:
        for k, g in enumerate(generator_points(src.right_ring)):
            img = tensor.act(f, right=tensor.right.right_mat(g)) if tensor else dst.right_mat(g) @ f
            w = first_difference(f @ src.right_mat(g), img)
            if w is not None:
                rep.fail(f"{what} is not right linear: ring generator {k}, witness basis vector {w}")


def check_coring(c: Coring) -> Report:
    rep = Report(f"coring axioms ({c.name})" if c.name else "coring axioms")
    a = c.ring
    _check_bimodule_map(rep, "comultiplication", c.comult, c.module, c.square)
    _check_bimodule_map(rep, "counit", c.counit, c.module, a.regular_bimodule())
    ident = Matrix.identity(c.dim)
    w = first_difference(collapse_left(c.square, c.counit, a) @ c.comult, ident)
    if w is not None:
        rep.fail(f"left counit law (eps (x) C) Delta = id fails at basis vector {w}")
    w = first_difference(collapse_right(c.square, c.counit, a) @ c.comult, ident)
    if w is not None:
        rep.fail(f"right counit law (C (x) eps) Delta = id fails at basis vector {w}")
    if c.summands:
        _check_summands(rep, c)
    else:
        lhs = tensor_map(c.square, c.comult, ident, c.cube) @ c.comult
        rhs = insert_right(c.square, c.comult_lift, c.square, c.cube) @ c.comult
        w = first_difference(lhs, rhs)
        if w is not None:
            rep.fail(f"coassociativity (Delta (x) C) Delta = (C (x) Delta) Delta fails at basis vector {w}")
    return rep


def _check_summands(rep: Report, c: Coring):
    """Coassociativity of a direct sum: each summand, plus compatibility of the inclusions."""
    for k, (sub, inc) in enumerate(c.summands):
        sub_rep = check_coring(sub)
        rep.extend(sub_rep, prefix=f"summand {k}: ")
        # Delta(inc x) must equal (inc (x) inc) Delta_sub(x), and eps likewise
        lhs = c.comult @ inc
        rhs = tensor_map(sub.square, inc, inc, c.square) @ sub.comult
        w = first_difference(lhs, rhs)
        if w is not None:
            rep.fail(f"summand {k}: inclusion does not commute with comultiplication (witness {w})")
        w = first_difference(c.counit @ inc, sub.counit)
        if w is not None:
            rep.fail(f"summand {k}: inclusion does not commute with counit (witness {w})")
    total = sum(inc.cols for _, inc in c.summands)
    span = column_space(Matrix.hstack([inc for _, inc in c.summands], c.dim))
    if total != c.dim or span.dim != c.dim:
        rep.fail("summands do not decompose the coring")


def is_coring_hom(f: Matrix, c: Coring, d: Coring) -> Report:
    """Bimodule map compatible with comultiplications and counits."""
    rep = Report("coring homomorphism")
    _check_bimodule_map(rep, "map", f, c.module, d.module)
    w = first_difference(d.comult @ f, tensor_map(c.square, f, f, d.square) @ c.comult)
    if w is not None:
        rep.fail(f"map does not commute with comultiplication (witness {w})")
    w = first_difference(d.counit @ f, c.counit)
    if w is not None:
        rep.fail(f"map does not commute with counit (witness {w})")
    return rep


# -- comodules -------------------------------------------------------------

class Comodule:
    """Right comodule: a right A-module M with coaction M -> M (x)_A C."""

    def __init__(self, coring: Coring, module: Module, coaction: Matrix, name: str = ""):
        self.coring = coring
        self.module = module
        self.name = name or module.name
        self.dim = module.dim
        self.tensor = tensor_over(module, coring.ring, coring.module)
        if coaction.shape != (self.tensor.dim, module.dim):
            raise ValueError(f"coaction has shape {coaction.shape}, expected {(self.tensor.dim, module.dim)}")
        self.coaction = coaction

    @cached_property
    def tensor2(self) -> BalancedTensor:
        return tensor_over(self.tensor.module, self.coring.ring, self.coring.module)

    def __repr__(self):
        return f"Comodule({self.name}, dim={self.dim})"


class LeftComodule:
    """Left comodule: a left A-module N with coaction N -> C (x)_A N."""

    def __init__(self, coring: Coring, module: Module, coaction: Matrix, name: str = ""):
        self.coring = coring
        self.module = module
        self.name = name or module.name
        self.dim = module.dim
        self.tensor = tensor_over(coring.module, coring.ring, module)
        if coaction.shape != (self.tensor.dim, module.dim):
            raise ValueError(f"coaction has shape {coaction.shape}, expected {(self.tensor.dim, module.dim)}")
        self.coaction = coaction

    @cached_property
    def tensor2(self) -> BalancedTensor:
        return tensor_over(self.coring.square.module, self.coring.ring, self.module)

    def __repr__(self):
        return f"LeftComodule({self.name}, dim={self.dim})"


def check_comodule(c: Coring, m: Comodule | LeftComodule) -> Report:
    if m.coring is not c and m.coring.module is not c.module:
        raise ValueError("comodule lives over a different coring")
    if isinstance(m, LeftComodule):
        return _check_left_comodule(c, m)
    rep = Report(f"comodule axioms ({m.name})" if m.name else "comodule axioms")
    mod = m.module
    for k, g in enumerate(generator_points(c.ring)):
        img = m.tensor.act(m.coaction, right=c.module.right_mat(g))
        w = first_difference(m.coaction @ mod.right_mat(g), img)
        if w is not None:
            rep.fail(f"coaction is not right linear: ring generator {k}, witness basis vector {w}")
    w = first_difference(collapse_right(m.tensor, c.counit, c.ring) @ m.coaction, Matrix.identity(m.dim))
    if w is not None:
        rep.fail(f"counit law (M (x) eps) rho = id fails at basis vector {w}")
    lhs = insert_right(m.tensor, c.comult_lift, m.tensor, m.tensor2) @ m.coaction
    rhs = tensor_map(m.tensor, m.coaction, Matrix.identity(c.dim), m.tensor2) @ m.coaction
    w = first_difference(lhs, rhs)
    if w is not None:
        rep.fail(f"coassociativity (M (x) Delta) rho = (rho (x) C) rho fails at basis vector {w}")
    return rep


def _check_left_comodule(c: Coring, m: LeftComodule) -> Report:
    rep = Report(f"left comodule axioms ({m.name})" if m.name else "left comodule axioms")
    mod = m.module
    for k, g in enumerate(generator_points(c.ring)):
        img = m.tensor.act(m.coaction, left=c.module.left_mat(g))
        w = first_difference(m.coaction @ mod.left_mat(g), img)
        if w is not None:
            rep.fail(f"coaction is not left linear: ring generator {k}, witness basis vector {w}")
    w = first_difference(collapse_left(m.tensor, c.counit, c.ring) @ m.coaction, Matrix.identity(m.dim))
    if w is not None:
        rep.fail(f"counit law (eps (x) N) lambda = id fails at basis vector {w}")
    lam_lift = m.tensor.section @ m.coaction
    lhs = insert_right(m.tensor, lam_lift, c.square, m.tensor2) @ m.coaction
    rhs = tensor_map(m.tensor, c.comult, Matrix.identity(m.dim), m.tensor2) @ m.coaction
    w = first_difference(lhs, rhs)
    if w is not None:
        rep.fail(f"coassociativity (C (x) lambda) lambda = (Delta (x) N) lambda fails at basis vector {w}")
    return rep


def regular_comodule(c: Coring) -> Comodule:
    """C as a right comodule over itself."""
    return Comodule(c, c.module.right_only(), c.comult, name=c.name or "C")


def regular_left_comodule(c: Coring) -> LeftComodule:
    return LeftComodule(c, c.module.left_only(), c.comult, name=c.name or "C")


# -- grouplikes ------------------------------------------------------------

class Grouplike:
    def __init__(self, coring: Coring, vector, name: str = ""):
        self.coring = coring
        self.vector = tuple(vector)
        self.name = name

    def __repr__(self):
        return f"Grouplike({self.name or self.vector})"


def is_grouplike(c: Coring, g) -> bool:
    g = tuple(g)
    return c.comult @ g == c.square.pure(g, g) and c.counit @ g == c.ring.unit


def grouplike(c: Coring, g, name: str = "") -> Grouplike:
    if not is_grouplike(c, g):
        raise NotGrouplike(f"{name or g} is not grouplike")
    return Grouplike(c, g, name)


def comodule_from_grouplike(c: Coring, g: Grouplike) -> Comodule:
    """[g]A: the regular right module with a -> 1 (x) g.a."""
    gv = g.vector if isinstance(g, Grouplike) else tuple(g)
    if not is_grouplike(c, gv):
        raise NotGrouplike("element is not grouplike")
    a = c.ring
    mod = a.regular_right()
    name = f"[{getattr(g, 'name', '') or 'g'}]A"
    t = tensor_over(mod, a, c.module)
    cols = [t.pure(a.unit, c.module.right[i] @ gv) for i in range(a.dim)]
    return Comodule(c, Module(a.dim, right_ring=a, right=a.right_matrices, name=name),
                    Matrix.from_columns(cols, t.dim), name=name)


def left_comodule_from_grouplike(c: Coring, g: Grouplike) -> LeftComodule:
    """A[g]: the regular left module with a -> a.g (x) 1."""
    gv = g.vector if isinstance(g, Grouplike) else tuple(g)
    if not is_grouplike(c, gv):
        raise NotGrouplike("element is not grouplike")
    a = c.ring
    name = f"A[{getattr(g, 'name', '') or 'g'}]"
    mod = Module(a.dim, left_ring=a, left=a.left_matrices, name=name)
    t = tensor_over(c.module, a, mod)
    cols = [t.pure(c.module.left[i] @ gv, a.unit) for i in range(a.dim)]
    return LeftComodule(c, mod, Matrix.from_columns(cols, t.dim), name=name)


# -- morphisms -------------------------------------------------------------

def comodule_hom(c: Coring, m: Comodule, n: Comodule) -> list[Matrix]:
    """Basis of the colinear right A-module maps M -> N."""
    if m.dim == 0 or n.dim == 0:
        return []
    ident = Matrix.identity(c.dim)
    # restrict to right-linear maps first: a much smaller system
    base = hom_right(m.module, n.module)
    if not base:
        return []
    cols = [(n.coaction @ f - tensor_map(m.tensor, f, ident, n.tensor) @ m.coaction).flatten() for f in base]
    ker = kernel_basis(Matrix.from_columns(cols))
    return [combine(base, v, n.dim, m.dim) for v in ker.vectors()]


def is_colinear(f: Matrix, m: Comodule, n: Comodule) -> bool:
    c = m.coring
    if any(f @ ra != rb @ f for ra, rb in zip(m.module.right, n.module.right)):
        return False
    return n.coaction @ f == tensor_map(m.tensor, f, Matrix.identity(c.dim), n.tensor) @ m.coaction


class GrouplikeHomRing:
    """A_{g,h} = {b in A : h.b = b.g} with its identification with Hom^C([g]A, [h]A)."""

    def __init__(self, space: Subspace, homs: list[Matrix], evaluation_ok: bool):
        self.space = space
        self.homs = homs
        self.evaluation_ok = evaluation_ok

    @property
    def dim(self):
        return self.space.dim


def grouplike_subspace(c: Coring, g, h) -> Subspace:
    a = c.ring
    gv = g.vector if isinstance(g, Grouplike) else tuple(g)
    hv = h.vector if isinstance(h, Grouplike) else tuple(h)
    # b -> h.b - b.g
    cols = [tuple(x - y for x, y in zip(c.module.right[i] @ hv, c.module.left[i] @ gv)) for i in range(a.dim)]
    return kernel_basis(Matrix.from_columns(cols, c.dim))


def grouplike_hom_ring(c: Coring, g: Grouplike, h: Grouplike) -> GrouplikeHomRing:
    a = c.ring
    space = grouplike_subspace(c, g, h)
    homs = comodule_hom(c, comodule_from_grouplike(c, g), comodule_from_grouplike(c, h))
    images = Subspace.span([f @ a.unit for f in homs], a.dim)
    # f -> f(1) injective (rank) and onto A_{g,h}
    ok = images.dim == len(homs) and images == space
    return GrouplikeHomRing(space, homs, ok)


# -- constructions ---------------------------------------------------------

def trivial_coring(a: Algebra) -> Coring:
    """A as an A-coring with the canonical isomorphisms."""
    bim = a.regular_bimodule()
    sq = tensor_over(bim, a, bim)
    comult = Matrix.from_columns([sq.pure(a.unit, a.basis_vector(i)) for i in range(a.dim)], sq.dim)
    return Coring(a, bim, comult, Matrix.identity(a.dim), name="A", square=sq)


def sweedler_coring(a: Algebra, b: Subspace) -> Coring:
    """A (x)_B A for a unital subalgebra B, given as a subspace of A."""
    bal, inc = subalgebra(a, b)
    right_b = [a.right_mult(v) for v in inc.columns()]
    left_b = [a.left_mult(v) for v in inc.columns()]
    m1 = Module(a.dim, left_ring=a, left=a.left_matrices, right_ring=bal, right=right_b, name="A")
    m2 = Module(a.dim, left_ring=bal, left=left_b, right_ring=a, right=a.right_matrices, name="A")
    t = tensor_over(m1, bal, m2)
    bim = t.module
    sq = tensor_over(bim, a, bim)
    one = a.unit
    dcols, ecols = [], []
    for i, j in t.free_pairs():
        ei, ej = a.basis_vector(i), a.basis_vector(j)
        dcols.append(sq.pure(t.pure(ei, one), t.pure(one, ej)))
        ecols.append(a.mul(ei, ej))
    c = Coring(a, bim, Matrix.from_columns(dcols, sq.dim), Matrix.from_columns(ecols, a.dim),
               name="Sweedler", square=sq)
    c.tensor = t
    c.base = (bal, inc)
    c.one = t.pure(one, one)
    return c


def direct_sum_coring(parts: Sequence[Coring], name: str = "") -> Coring:
    """Direct sum of corings over a common ring."""
    parts = list(parts)
    a = parts[0].ring
    bim = direct_sum([p.module for p in parts], name=name)
    sq = tensor_over(bim, a, bim)
    offs, total = [], 0
    for p in parts:
        offs.append(total)
        total += p.dim
    incs = []
    for p, o in zip(parts, offs):
        incs.append(Matrix.from_columns([unit_vector(total, o + i) for i in range(p.dim)], total))
    dcols, ecols = [], []
    for p, inc in zip(parts, incs):
        tm = tensor_map(p.square, inc, inc, sq) @ p.comult
        dcols.extend(tm.columns())
        ecols.extend(p.counit.columns())
    c = Coring(a, bim, Matrix.from_columns(dcols, sq.dim), Matrix.from_columns(ecols, a.dim),
               name=name, square=sq, summands=list(zip(parts, incs)))
    return c


class CoidealCertificate:
    def __init__(self, counit_ok: bool, comult_ok: bool, bimodule_ok: bool):
        self.counit_ok = counit_ok
        self.comult_ok = comult_ok
        self.bimodule_ok = bimodule_ok

    @property
    def ok(self):
        return self.counit_ok and self.comult_ok and self.bimodule_ok


def quotient_coring(c: Coring, j: Subspace, name: str = "") -> tuple[Coring, Matrix, CoidealCertificate]:
    """C / J for a coideal J; returns (quotient coring, projection, certificate)."""
    from .algebra import quotient_module
    a = c.ring
    vecs = j.vectors()
    bim_ok = all(j.contains(m @ v) for v in vecs for m in c.module.left + c.module.right)
    counit_ok = all(not any(c.counit @ v) for v in vecs)
    qmod, q = quotient_module(c.module, j, name=name)
    pi = q.projection
    sq = tensor_over(qmod, a, qmod)
    pipi = tensor_map(c.square, pi, pi, sq)
    comult_ok = all(not any(pipi @ (c.comult @ v)) for v in vecs)
    cert = CoidealCertificate(counit_ok, comult_ok, bim_ok)
    if not cert.ok:
        raise ValueError("subspace is not a coideal")
    comult = pipi @ c.comult @ q.section
    counit = c.counit @ q.section
    return Coring(a, qmod, comult, counit, name=name, square=sq), pi, cert


# -- cotensor and generation -------------------------------------------------

class Cotensor:
    def __init__(self, tensor: BalancedTensor, space: Subspace):
        self.tensor = tensor
        self.space = space

    @property
    def dim(self):
        return self.space.dim


def cotensor(m: Comodule, n: LeftComodule) -> Cotensor:
    """M box_C N = ker(rho (x) N - M (x) lambda) inside M (x)_A N."""
    c = m.coring
    mn = tensor_over(m.module, c.ring, n.module)
    dst = tensor_over(m.tensor.module, c.ring, n.module)
    lhs = tensor_map(mn, m.coaction, Matrix.identity(n.dim), dst)
    rhs = insert_right(mn, n.tensor.section @ n.coaction, m.tensor, dst)
    return Cotensor(mn, kernel_basis(lhs - rhs))


def is_generated_by(c: Coring, m: Comodule, family: Sequence[Comodule]) -> bool:
    images = []
    for p in family:
        for f in comodule_hom(c, p, m):
            images.extend(f.columns())
    return Subspace.span(images, m.dim).dim == m.dim


def direct_sum_comodule(c: Coring, members: Sequence[Comodule], name: str = "") -> Comodule:
    members = list(members)
    mod = direct_sum([p.module.right_only() for p in members], name=name)
    t = tensor_over(mod, c.ring, c.module)
    cols = []
    off = 0
    for p in members:
        inc = Matrix.from_columns([unit_vector(mod.dim, off + i) for i in range(p.dim)], mod.dim)
        cols.extend((tensor_map(p.tensor, inc, Matrix.identity(c.dim), t) @ p.coaction).columns())
        off += p.dim
    return Comodule(c, mod, Matrix.from_columns(cols, t.dim), name=name)
