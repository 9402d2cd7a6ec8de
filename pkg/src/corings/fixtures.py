"""Standard small examples and random generators used by tests and the CLI.

F1  Q with the trivial coring.
F2  Q[x]/(x^2 - 1), graded by C2 = {e, s} with deg x = s (strongly graded).
F3  Q[x]/(x^2), same grading (not strongly graded).
F4  the Sweedler coring A (x)_Q A for the algebra of F2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, DualBasis, Module, dual_basis, direct_sum, submodule
from .coring import Comodule, Coring, Grouplike, grouplike, sweedler_coring, trivial_coring
from .exactlin import Matrix, Subspace, column_space, inverse, unit_vector
from .graded import (
    GradedAlgebra, GradedModule, Group, graded_coring, graded_simple_probes, graded_to_comodule,
    regular_graded, shift,
)


@dataclass
class Fixture:
    name: str
    algebra: Algebra
    coring: Coring
    grouplikes: dict
    graded: GradedAlgebra | None = None
    probes: list = field(default_factory=list)

    def grouplike_list(self, names=None) -> list[Grouplike]:
        names = list(self.grouplikes) if names is None else names
        return [self.grouplikes[n] for n in names]


def truncated_polynomial(n: int, c) -> Algebra:
    """Q[x]/(x^n - c) on the basis 1, x, ..., x^(n-1)."""
    c = Fraction(c)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            v = [0] * n
            k = i + j
            if k < n:
                v[k] = 1
            else:
                v[k - n] = c
            row.append(v)
        table.append(row)
    names = ["1"] + ["x" if k == 1 else f"x^{k}" for k in range(1, n)]
    return Algebra(table, unit_vector(n, 0), names)


def c2() -> Group:
    return Group(["e", "s"], [[0, 1], [1, 0]])


def graded_fixture(name: str, ga: GradedAlgebra) -> Fixture:
    c, gls = graded_coring(ga)
    probes = [graded_to_comodule(c, p) for p in graded_simple_probes(ga)]
    return Fixture(name, ga.algebra, c, {g.name: g for g in gls}, ga, probes)


def f1() -> Fixture:
    a = Algebra.scalars()
    c = trivial_coring(a)
    g = grouplike(c, a.unit, name="1")
    fx = Fixture("F1", a, c, {"1": g})
    from .coring import regular_comodule
    fx.probes = [regular_comodule(c)]
    return fx


def f2_graded() -> GradedAlgebra:
    return GradedAlgebra(truncated_polynomial(2, 1), c2(), [0, 1])


def f3_graded() -> GradedAlgebra:
    return GradedAlgebra(truncated_polynomial(2, 0), c2(), [0, 1])


def f2() -> Fixture:
    return graded_fixture("F2", f2_graded())


def f3() -> Fixture:
    return graded_fixture("F3", f3_graded())


def f4() -> Fixture:
    a = truncated_polynomial(2, 1)
    c = sweedler_coring(a, Subspace.span([a.unit], a.dim))
    g = grouplike(c, c.one, name="1(x)1")
    from .coring import regular_comodule
    return Fixture("F4", a, c, {"1(x)1": g}, probes=[regular_comodule(c)])


FIXTURES = {"F1": f1, "F2": f2, "F3": f3, "F4": f4}


# -- random graded algebras ---------------------------------------------------

def _rand_nonzero(rng: random.Random, lo=-3, hi=3) -> Fraction:
    while True:
        x = Fraction(rng.randint(lo, hi), rng.randint(1, 3))
        if x:
            return x


def _rand_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        m = Matrix(n, n, [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)])
        if m.rank() == n:
            return m


def change_basis(a: Algebra, s: Matrix) -> Algebra:
    """Same algebra on the basis given by the columns of s."""
    si = inverse(s)
    n = a.dim
    cols = s.columns()
    table = [[si @ a.mul(cols[i], cols[j]) for j in range(n)] for i in range(n)]
    return Algebra(table, si @ a.unit)


def homogeneous_basis_change(ga: GradedAlgebra, rng: random.Random) -> GradedAlgebra:
    """Mix basis vectors inside each homogeneous component by a random invertible matrix."""
    a = ga.algebra
    n = a.dim
    data = [[0] * n for _ in range(n)]
    for g in set(ga.degrees):
        idx = [i for i in range(n) if ga.degrees[i] == g]
        m = _rand_invertible(rng, len(idx))
        for r, i in enumerate(idx):
            for c, j in enumerate(idx):
                data[i][j] = m[r, c]
    return GradedAlgebra(change_basis(a, Matrix(n, n, data)), ga.group, ga.degrees)


def _klein_algebra(a_sq, b_sq) -> Algebra:
    """Q<x, y>/(x^2 - a, y^2 - b, xy - yx) on 1, x, y, xy."""
    # basis index encodes exponents: 0=1, 1=x, 2=y, 3=xy
    a_sq, b_sq = Fraction(a_sq), Fraction(b_sq)
    table = []
    for i in range(4):
        row = []
        for j in range(4):
            xi, yi = i & 1, i >> 1
            xj, yj = j & 1, j >> 1
            coef = Fraction(1)
            if xi and xj:
                coef *= a_sq
            if yi and yj:
                coef *= b_sq
            v = [0] * 4
            v[(xi ^ xj) | ((yi ^ yj) << 1)] = coef
            row.append(v)
        table.append(row)
    return Algebra(table, unit_vector(4, 0), ["1", "x", "y", "xy"])


def _matrix_units(n: int) -> list[Matrix]:
    out = []
    for i in range(n):
        for j in range(n):
            d = [[0] * n for _ in range(n)]
            d[i][j] = 1
            out.append(Matrix(n, n, d))
    return out


def _m2_graded() -> GradedAlgebra:
    """M_2(Q) with E11, E22 in degree e and E12, E21 in degree s (strongly graded)."""
    units = _matrix_units(2)
    basis = [units[0] + units[3], units[0], units[1], units[2]]
    return GradedAlgebra(Algebra.from_matrices(basis), c2(), [0, 0, 1, 1])


def _t2_graded() -> GradedAlgebra:
    """Upper triangular 2x2 with E12 in degree s (not strongly graded)."""
    units = _matrix_units(2)
    basis = [units[0] + units[3], units[0], units[1]]
    return GradedAlgebra(Algebra.from_matrices(basis), c2(), [0, 0, 1])


def random_graded_algebra(rng: random.Random) -> GradedAlgebra:
    """A random small graded algebra over a group of order at most 4."""
    kind = rng.choice(["cyclic", "cyclic", "klein", "m2", "t2", "trivial", "thin", "thin"])
    if kind == "thin":
        # a two-dimensional algebra over a group of order 4, supported on two degrees
        grp = rng.choice([Group.cyclic(4), Group.klein()])
        g = rng.randrange(1, 4)
        c = 0 if grp.mul(g, g) != grp.identity or rng.random() < 0.5 else _rand_nonzero(rng)
        ga = GradedAlgebra(truncated_polynomial(2, c), grp, [grp.identity, g])
    elif kind == "cyclic":
        n = rng.choice([2, 3, 4])
        c = 0 if rng.random() < 0.35 else _rand_nonzero(rng)
        ga = GradedAlgebra(truncated_polynomial(n, c), Group.cyclic(n), list(range(n)))
    elif kind == "klein":
        a_sq = 0 if rng.random() < 0.3 else _rand_nonzero(rng)
        b_sq = 0 if rng.random() < 0.3 else _rand_nonzero(rng)
        ga = GradedAlgebra(_klein_algebra(a_sq, b_sq), Group.klein(), [0, 1, 2, 3])
    elif kind == "m2":
        ga = _m2_graded()
    elif kind == "t2":
        ga = _t2_graded()
    else:
        n = rng.choice([2, 3])
        c = rng.choice([0, 1, _rand_nonzero(rng)])
        ga = GradedAlgebra(truncated_polynomial(n, c), Group.trivial(), [0] * n)
    return homogeneous_basis_change(ga, rng)


# -- random modules -----------------------------------------------------------------

def _idempotent_pieces(a: Algebra) -> list[Module]:
    """Indecomposable projective right ideals eA for the two-dimensional fixture algebras."""
    reg = a.regular_right()
    pieces = [reg]
    # Q[x]/(x^2 - 1): e = (1 +- x)/2
    if a.dim == 2 and a.mul(a.basis_vector(1), a.basis_vector(1)) == a.unit:
        for sign in (1, -1):
            e = (Fraction(1, 2), Fraction(sign, 2))
            sub = column_space(a.left_mult(e))
            mod, _ = submodule(reg, sub, name=f"e{'+' if sign > 0 else '-'}A")
            pieces.append(mod)
    return pieces


def random_projective(a: Algebra, rng: random.Random, max_dim: int = 4) -> Module:
    pieces = _idempotent_pieces(a)
    chosen = []
    while not chosen or (sum(m.dim for m in chosen) < max_dim and rng.random() < 0.5):
        m = rng.choice(pieces)
        if sum(x.dim for x in chosen) + m.dim > max_dim:
            break
        chosen.append(m)
    m = direct_sum(chosen, name="P")
    return m.transformed(_rand_invertible(rng, m.dim))


def random_generators(p: Module, rng: random.Random) -> list:
    """A random generating set (a random basis plus one extra random vector)."""
    s = _rand_invertible(rng, p.dim)
    gens = s.columns()
    gens.append(tuple(Fraction(rng.randint(-2, 2)) for _ in range(p.dim)))
    return gens


def random_graded_module(ga: GradedAlgebra, rng: random.Random, max_dim: int = 5) -> GradedModule:
    """Direct sum of shifts of A and of the graded simples, in a random homogeneous basis."""
    grp = ga.group
    simples = graded_simple_probes(ga)
    options = [shift(regular_graded(ga), g) for g in range(grp.order)] + simples
    chosen = []
    while not chosen or (sum(m.dim for m in chosen) < max_dim and rng.random() < 0.6):
        m = rng.choice(options)
        if chosen and sum(x.dim for x in chosen) + m.dim > max_dim:
            break
        chosen.append(m)
    mod = direct_sum([m.module for m in chosen], name="M")
    degs = [d for m in chosen for d in m.degrees]
    n = mod.dim
    data = [[0] * n for _ in range(n)]
    for g in set(degs):
        idx = [i for i in range(n) if degs[i] == g]
        mix = _rand_invertible(rng, len(idx))
        for r, i in enumerate(idx):
            for c, j in enumerate(idx):
                data[i][j] = mix[r, c]
    return GradedModule(ga, mod.transformed(Matrix(n, n, data)), degs, name="M")
