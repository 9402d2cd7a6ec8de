"""Group-graded algebras, the coring AG, and graded modules as comodules.

AG is the free left A-module on G.  Its basis vector ``e_i g`` has index
``gi * dim A + i``, so each group element owns a contiguous block.  The right
action follows  g.a = a (g h)  for a homogeneous of degree h.
"""

from __future__ import annotations

from typing import Sequence

from .algebra import Algebra, Module, Report, jacobson_radical, quotient_module
from .coring import Comodule, Coring, Grouplike, comodule_from_grouplike, grouplike
from .exactlin import Matrix, Subspace, unit_vector


class GradingError(ValueError):
    pass


class Group:
    """Finite group from a multiplication table on labels."""

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[int]]):
        self.labels = list(labels)
        self.order = len(self.labels)
        self.table = [list(r) for r in table]
        n = self.order
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise GradingError("group table must be order x order")
        ids = [e for e in range(n) if all(self.table[e][g] == g and self.table[g][e] == g for g in range(n))]
        if not ids:
            raise GradingError("group table has no identity")
        self.identity = ids[0]
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise GradingError("group table is not associative")
        self.inverses = []
        for g in range(n):
            inv = [h for h in range(n) if self.table[g][h] == self.identity]
            if not inv:
                raise GradingError(f"{self.labels[g]} has no inverse")
            self.inverses.append(inv[0])

    @classmethod
    def cyclic(cls, n: int, labels: Sequence[str] | None = None) -> "Group":
        labels = labels or (["e"] + [f"g{k}" for k in range(1, n)])
        return cls(labels, [[(i + j) % n for j in range(n)] for i in range(n)])

    @classmethod
    def klein(cls) -> "Group":
        return cls(["e", "a", "b", "c"], [[i ^ j for j in range(4)] for i in range(4)])

    @classmethod
    def trivial(cls) -> "Group":
        return cls(["e"], [[0]])

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverses[g]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GradingError(f"unknown group element {label!r}") from None

    def is_subgroup(self, elems: Sequence[int]) -> bool:
        s = set(elems)
        return bool(s) and self.identity in s and all(self.mul(a, self.inv(b)) in s for a in s for b in s)

    def __repr__(self):
        return f"Group(order={self.order})"


class GradedAlgebra:
    """An algebra with a homogeneous basis; ``degrees[i]`` is the degree of e_i."""

    def __init__(self, algebra: Algebra, group: Group, degrees: Sequence[int]):
        self.algebra = algebra
        self.group = group
        self.degrees = list(degrees)
        rep = check_grading(self)
        if not rep.ok:
            raise GradingError("; ".join(rep.failures))

    def component(self, g: int) -> Subspace:
        a = self.algebra
        return Subspace.span([a.basis_vector(i) for i in range(a.dim) if self.degrees[i] == g], a.dim)

    def homogeneous_parts(self, v) -> dict:
        parts: dict = {}
        for i, x in enumerate(v):
            if x:
                parts.setdefault(self.degrees[i], [0] * len(v))[i] = x
        return {g: tuple(p) for g, p in parts.items()}


def check_grading(ga: GradedAlgebra) -> Report:
    rep = Report("grading")
    a, grp = ga.algebra, ga.group
    if len(ga.degrees) != a.dim:
        rep.fail("need one degree per basis vector")
        return rep
    if any(not 0 <= d < grp.order for d in ga.degrees):
        rep.fail("degree outside the group")
        return rep
    for i in range(a.dim):
        for j in range(a.dim):
            d = grp.mul(ga.degrees[i], ga.degrees[j])
            for k, c in enumerate(a.table[i][j]):
                if c and ga.degrees[k] != d:
                    rep.fail(f"e{i} e{j} has a component outside degree {grp.labels[d]}")
                    break
    for k, c in enumerate(a.unit):
        if c and ga.degrees[k] != grp.identity:
            rep.fail("unit is not homogeneous of degree e")
            break
    return rep


def is_strongly_graded(ga: GradedAlgebra) -> bool:
    a, grp = ga.algebra, ga.group
    comps = [ga.component(g).vectors() for g in range(grp.order)]
    for g in range(grp.order):
        for h in range(grp.order):
            prods = [a.mul(u, v) for u in comps[g] for v in comps[h]]
            if Subspace.span(prods, a.dim).dim != len(comps[grp.mul(g, h)]):
                return False
    return True


def graded_coring(ga: GradedAlgebra) -> tuple[Coring, list[Grouplike]]:
    a, grp = ga.algebra, ga.group
    n, order = a.dim, grp.order
    dim = n * order
    left = [Matrix.block_diag([a.left_matrices[k]] * order) for k in range(n)]
    right = []
    for k in range(n):
        h = ga.degrees[k]
        data = [[0] * dim for _ in range(dim)]
        for g in range(order):
            gh = grp.mul(g, h)
            for i in range(n):
                for j, c in enumerate(a.table[i][k]):
                    if c:
                        data[gh * n + j][g * n + i] = c
        right.append(Matrix(dim, dim, data))
    bim = Module(dim, left_ring=a, left=left, right_ring=a, right=right, name="AG")
    from .algebra import tensor_over
    sq = tensor_over(bim, a, bim)
    gvec = [tuple(a.unit[i] if gi == g else 0 for gi in range(order) for i in range(n)) for g in range(order)]
    dcols, ecols = [], []
    for g in range(order):
        for i in range(n):
            dcols.append(sq.pure(unit_vector(dim, g * n + i), gvec[g]))
            ecols.append(a.basis_vector(i))
    c = Coring(a, bim, Matrix.from_columns(dcols, sq.dim), Matrix.from_columns(ecols, n), name="AG", square=sq)
    c.graded = ga
    gls = [grouplike(c, gvec[g], name=grp.labels[g]) for g in range(order)]
    return c, gls


def ag_element(ga: GradedAlgebra, a, g: int):
    """Coordinates of a.g in AG."""
    n = ga.algebra.dim
    v = [0] * (n * ga.group.order)
    v[g * n:(g + 1) * n] = list(a)
    return tuple(v)


class GradedModule:
    """A right A-module with a homogeneous basis: basis vector i has degree ``degrees[i]``."""

    def __init__(self, ga: GradedAlgebra, module: Module, degrees: Sequence[int], name: str = ""):
        self.graded = ga
        self.module = module
        self.degrees = list(degrees)
        self.name = name or module.name
        rep = check_graded_module(self)
        if not rep.ok:
            raise GradingError("; ".join(rep.failures))

    @property
    def dim(self):
        return self.module.dim

    def component(self, g: int) -> Subspace:
        return Subspace.span([unit_vector(self.dim, i) for i in range(self.dim) if self.degrees[i] == g], self.dim)

    def components(self) -> list[Subspace]:
        return [self.component(g) for g in range(self.graded.group.order)]


def check_graded_module(m: GradedModule) -> Report:
    rep = Report("graded module")
    ga = m.graded
    if len(m.degrees) != m.dim:
        rep.fail("need one degree per basis vector")
        return rep
    for k in range(ga.algebra.dim):
        h = ga.degrees[k]
        mat = m.module.right[k]
        for i in range(m.dim):
            d = ga.group.mul(m.degrees[i], h)
            for r, x in enumerate(mat.column(i)):
                if x and m.degrees[r] != d:
                    rep.fail(f"basis vector {i} times e{k} leaves degree {ga.group.labels[d]}")
                    break
    return rep


def graded_to_comodule(c: Coring, m: GradedModule) -> Comodule:
    """m -> sum_g m_g (x) g."""
    ga = m.graded
    from .algebra import tensor_over
    t = tensor_over(m.module, ga.algebra, c.module)
    one = ga.algebra.unit
    cols = [t.pure(unit_vector(m.dim, i), ag_element(ga, one, m.degrees[i])) for i in range(m.dim)]
    return Comodule(c, m.module, Matrix.from_columns(cols, t.dim), name=m.name)


def slot_iso(c: Coring, m: Comodule) -> Matrix:
    """M (x)_A AG -> (+)_g M  sending m (x) a.g to m.a in slot g."""
    ga = c.graded
    n, order = ga.algebra.dim, ga.group.order
    cols = []
    for i, j in m.tensor.free_pairs():
        g, k = divmod(j, n)
        v = [0] * (m.dim * order)
        for r, x in enumerate(m.module.right[k].column(i)):
            if x:
                v[g * m.dim + r] = x
        cols.append(tuple(v))
    return Matrix.from_columns(cols, m.dim * order)


def comodule_to_graded(c: Coring, m: Comodule) -> list[Subspace]:
    """Homogeneous components M_g read off the coaction."""
    ga = c.graded
    order = ga.group.order
    slots = slot_iso(c, m) @ m.coaction
    comps = []
    for g in range(order):
        block = slots.submatrix(range(g * m.dim, (g + 1) * m.dim), range(m.dim))
        comps.append(Subspace.span(block.columns(), m.dim))
    return comps


def check_decomposition(c: Coring, m: Comodule, comps: Sequence[Subspace]) -> Report:
    """The components are independent, exhaust M and are compatible with the grading."""
    ga = c.graded
    rep = Report("graded decomposition")
    total = sum(s.dim for s in comps)
    span = Subspace.span([v for s in comps for v in s.vectors()], m.dim)
    if total != m.dim or span.dim != m.dim:
        rep.fail("components do not form a direct sum decomposition")
    for g, s in enumerate(comps):
        for k in range(ga.algebra.dim):
            gh = ga.group.mul(g, ga.degrees[k])
            for v in s.vectors():
                if not comps[gh].contains(m.module.right[k] @ v):
                    rep.fail(f"M_{ga.group.labels[g]} A_h not contained in the expected component")
                    return rep
    return rep


def shift(m: GradedModule, g: int, name: str = "") -> GradedModule:
    """M(g): the component of degree g.d is M_d."""
    grp = m.graded.group
    return GradedModule(m.graded, m.module, [grp.mul(g, d) for d in m.degrees], name=name or f"{m.name}({grp.labels[g]})")


def regular_graded(ga: GradedAlgebra) -> GradedModule:
    return GradedModule(ga, ga.algebra.regular_right(), ga.degrees, name="A")


def graded_simple_probes(ga: GradedAlgebra) -> list[GradedModule]:
    """Shifts of A / rad(A), using that the radical is homogeneous here."""
    a = ga.algebra
    rad = jacobson_radical(a)
    homogeneous = all(rad.contains(p) for v in rad.vectors() for p in ga.homogeneous_parts(v).values())
    if not homogeneous or rad.dim == 0:
        return [shift(regular_graded(ga), g, name=f"A({ga.group.labels[g]})") for g in range(ga.group.order)]
    # quotient keeps a homogeneous basis: the free columns of the radical's echelon basis
    reg = a.regular_right()
    qmod, q = quotient_module(reg, rad, name="A/J")
    degs = [ga.degrees[j] for j in q.free_columns]
    base = GradedModule(ga, qmod, degs, name="A/J")
    return [shift(base, g, name=f"A/J({ga.group.labels[g]})") for g in range(ga.group.order)]


def shifted_regular(c: Coring, g: Grouplike) -> Comodule:
    return comodule_from_grouplike(c, g)


def subgroup_family(ga: GradedAlgebra, h: Sequence[int], c: Coring | None = None,
                    gls: Sequence[Grouplike] | None = None):
    """The family {[h]A : h in H} over AG, with its ring checked against the graded pieces.

    The block of R from [g]A to [k]A must be A_{k^-1 g}, realised by f -> f(1).
    ``c`` and ``gls`` reuse an already built AG and its grouplikes.
    """
    from .comatrix import ComoduleFamily, InconsistencyError
    grp = ga.group
    h = list(h)
    if len(set(h)) != len(h) or not grp.is_subgroup(h):
        raise GradingError(f"{[grp.labels[x] for x in h]} is not a subgroup")
    if c is None or gls is None:
        c, gls = graded_coring(ga)
    members = [comodule_from_grouplike(c, gls[x]) for x in h]
    fam = ComoduleFamily(c, members)
    fam.grouplikes = [gls[x] for x in h]
    one = ga.algebra.unit
    for p, g in enumerate(h):
        for q, k in enumerate(h):
            images = Subspace.span([f @ one for f in fam.homs[(p, q)]], ga.algebra.dim)
            if images != ga.component(grp.mul(grp.inv(k), g)):
                raise InconsistencyError(
                    f"ring block ({grp.labels[g]}, {grp.labels[k]}) is not the homogeneous component "
                    f"of degree {grp.labels[grp.mul(grp.inv(k), g)]}")
    return fam
