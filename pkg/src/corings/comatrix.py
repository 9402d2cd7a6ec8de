"""Comatrix corings attached to a finite family of comodules.

For a family of comodules P that are finitely generated projective over A
this builds the coproduct of the comatrix corings P* (x)_{T_P} P, the coideal
J, the quotient r = (+) P* (x) P / J, the coring Sigma^dagger (x)_R Sigma over the
ring R of colinear maps, and Sigma* (x)_T Sigma for T = End^C(Sigma), with the
maps between them, the canonical map to C, and the descent conditions.

Sigma is the direct sum of the members; Sigma^dagger the direct sum of their
duals.  Elements of R are block maps on Sigma and act on Sigma^dagger by
precomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from functools import cached_property
from typing import Sequence

from .algebra import (
    Algebra, BalancedTensor, DualBasis, DualModule, IdemRing, Module, NotProjective, Report,
    direct_sum, dual_basis, dual_module, hom_right, is_faithfully_flat, is_projective,
    tensor_map, tensor_over, combine,
)
from .coring import (
    Comodule, Coring, Grouplike, check_comodule, check_coring, collapse_left, comodule_from_grouplike,
    comodule_hom, direct_sum_coring, grouplike_subspace, is_colinear, is_coring_hom, is_generated_by,
    quotient_coring, sweedler_coring,
)
from .exactlin import Matrix, Subspace, Vector, column_space, kernel_basis, rank, unit_vector


class InconsistencyError(RuntimeError):
    """A computed result contradicts a theorem the library relies on."""


# -- generic comatrix structure ----------------------------------------------

@dataclass
class _Piece:
    """One summand P of Sigma with its dual and a dual basis, placed at offsets."""
    dual: DualModule
    basis: DualBasis
    dual_offset: int
    offset: int

    @property
    def dim(self):
        return self.basis.module.dim


def _comatrix_structure(a: Algebra, ring: Algebra, sd: Module, s: Module, pieces: Sequence[_Piece],
                        name: str) -> Coring:
    """Delta(phi (x) p) = sum_a phi (x) e_a (x) e*_a (x) p ; eps(phi (x) p) = phi(p).

    Only pure tensors with phi and p in the same piece survive; the others
    are zero in the balanced tensor because R contains the block idempotents.
    """
    t = tensor_over(sd, ring, s)
    sq = tensor_over(t.module, a, t.module)
    owner_d, owner_s = {}, {}
    for k, pc in enumerate(pieces):
        for i in range(pc.dual.dim):
            owner_d[pc.dual_offset + i] = k
        for i in range(pc.dim):
            owner_s[pc.offset + i] = k
    # per piece: lists of (iota e_a in Sigma, iota e*_a in Sigma^dagger)
    terms = []
    for pc in pieces:
        lst = []
        for e, f in zip(pc.basis.elements, pc.basis.functionals):
            ev = [0] * s.dim
            ev[pc.offset:pc.offset + pc.dim] = list(e)
            fv = [0] * sd.dim
            fv[pc.dual_offset:pc.dual_offset + pc.dual.dim] = list(pc.dual.coordinates(f))
            lst.append((tuple(ev), tuple(fv)))
        terms.append(lst)
    dcols, ecols = [], []
    for i, j in t.free_pairs():
        k = owner_d[i]
        if owner_s[j] != k:
            raise InconsistencyError("mixed pure tensor survived in the balanced tensor")
        pc = pieces[k]
        phi = unit_vector(sd.dim, i)
        u = unit_vector(s.dim, j)
        acc: dict = {}
        for ev, fv in terms[k]:
            left = t.pure(phi, ev)
            right = t.pure(fv, u)
            for x, lx in enumerate(left):
                if lx:
                    for y, ry in enumerate(right):
                        if ry:
                            idx = x * t.dim + y
                            acc[idx] = acc.get(idx, 0) + lx * ry
        dcols.append(sq.project_sparse(acc))
        func = pc.dual.functionals[i - pc.dual_offset]
        ecols.append(func.column(j - pc.offset))
    c = Coring(a, t.module, Matrix.from_columns(dcols, sq.dim), Matrix.from_columns(ecols, a.dim),
               name=name, square=sq)
    c.tensor = t
    return c


def _tensor_algebra(maps: Sequence[Matrix]) -> Algebra:
    return Algebra.from_matrices(list(maps))


def comatrix_coring(p: Module, t_basis: Sequence[Matrix] | None = None, basis: DualBasis | None = None,
                    name: str = "") -> Coring:
    """P* (x)_T P for a right A-module P and a subring T of End_A(P) given by a basis of maps.

    T defaults to the scalars.  ``basis`` picks the dual basis used for the
    comultiplication.
    """
    a = p.right_ring
    if t_basis is None:
        t_basis = [Matrix.identity(p.dim)]
    tring = _tensor_algebra(t_basis)
    pt = Module(p.dim, left_ring=tring, left=list(t_basis), right_ring=a, right=p.right, name=p.name)
    dual = dual_module(pt)
    db = basis if basis is not None else dual_basis(p.right_only())
    return _comatrix_structure(a, tring, dual.module, pt, [_Piece(dual, db, 0, 0)], name or f"{p.name}*(x)P")


# -- families ----------------------------------------------------------------

class ComoduleFamily:
    """A finite family of right C-comodules, each f.g. projective over A."""

    def __init__(self, coring: Coring, members: Sequence[Comodule], bases: Sequence[DualBasis] | None = None):
        self.coring = coring
        self.members = list(members)
        if not self.members:
            raise ValueError("empty family")
        a = coring.ring
        self.ring_a = a
        self.bases = list(bases) if bases is not None else [dual_basis(m.module.right_only()) for m in self.members]
        for m, b in zip(self.members, self.bases):
            rep = b.check()
            if not rep.ok:
                raise NotProjective(f"{m.name}: {rep.failures[0]}")
        self.duals = [dual_module(m.module.right_only()) for m in self.members]
        self.offsets, self.dual_offsets = [], []
        o = do = 0
        for m, d in zip(self.members, self.duals):
            self.offsets.append(o)
            self.dual_offsets.append(do)
            o += m.dim
            do += d.dim
        self.total = o
        self.dual_total = do
        k = len(self.members)
        self.homs = {(p, q): comodule_hom(coring, self.members[p], self.members[q])
                     for p in range(k) for q in range(k)}
        self.R = IdemRing.from_blocks([m.dim for m in self.members], self.homs)
        self.sigma = self._sigma_module(self.R)
        self.sigma_dagger = self._dagger_module(self.R)

    # modules over a block ring (R or R-bar)
    def _sigma_module(self, ring: IdemRing) -> Module:
        right = [Matrix.block_diag([m.module.right[i] for m in self.members]) for i in range(self.ring_a.dim)]
        return Module(self.total, left_ring=ring, left=ring.matrices, right_ring=self.ring_a, right=right,
                      name="Sigma")

    def _dagger_module(self, ring: IdemRing) -> Module:
        left = [Matrix.block_diag([d.module.left[i] for d in self.duals]) for i in range(self.ring_a.dim)]
        right = []
        for (p, q, _), f in zip(ring.blocks, ring.block_maps):
            # phi in Q* goes to phi o f in P*
            data = [[0] * self.dual_total for _ in range(self.dual_total)]
            dq, dp = self.duals[q], self.duals[p]
            for j, phi in enumerate(dq.functionals):
                col = dp.coordinates(phi @ f)
                for i, x in enumerate(col):
                    if x:
                        data[self.dual_offsets[p] + i][self.dual_offsets[q] + j] = x
            right.append(Matrix(self.dual_total, self.dual_total, data))
        return Module(self.dual_total, left_ring=self.ring_a, left=left, right_ring=ring, right=right,
                      name="Sigma^dagger")

    def pieces(self) -> list[_Piece]:
        return [_Piece(d, b, do, o) for d, b, do, o in zip(self.duals, self.bases, self.dual_offsets, self.offsets)]

    def inclusion(self, p: int) -> Matrix:
        return Matrix.from_columns([unit_vector(self.total, self.offsets[p] + i) for i in range(self.members[p].dim)],
                                   self.total)

    def projection(self, p: int) -> Matrix:
        return self.inclusion(p).T

    def dual_inclusion(self, p: int) -> Matrix:
        return Matrix.from_columns([unit_vector(self.dual_total, self.dual_offsets[p] + i)
                                    for i in range(self.duals[p].dim)], self.dual_total)

    @cached_property
    def endo_rings(self) -> list[list[Matrix]]:
        return [self.homs[(p, p)] for p in range(len(self.members))]

    @cached_property
    def sigma_comodule(self) -> Comodule:
        from .coring import direct_sum_comodule
        return direct_sum_comodule(self.coring, self.members, name="Sigma")

    def names(self) -> list[str]:
        return [m.name for m in self.members]


# -- the coproduct coring, J and r ---------------------------------------------

def member_comatrix(fam: ComoduleFamily, p: int) -> Coring:
    m = fam.members[p]
    return comatrix_coring(m.module.right_only(), fam.endo_rings[p], fam.bases[p], name=f"{m.name}*(x){m.name}")


def coproduct_coring(fam: ComoduleFamily) -> Coring:
    cached = getattr(fam, "_coproduct", None)
    if cached is None:
        parts = [member_comatrix(fam, p) for p in range(len(fam.members))]
        cached = direct_sum_coring(parts, name="P(A)")
        fam._coproduct = cached
    return cached


def _summand_offsets(c: Coring) -> list[int]:
    out, o = [], 0
    for sub, _ in c.summands:
        out.append(o)
        o += sub.dim
    return out


@dataclass
class CoidealReport:
    subspace: Subspace
    counit_ok: bool
    comult_ok: bool

    @property
    def dim(self):
        return self.subspace.dim

    @property
    def ok(self):
        return self.counit_ok and self.comult_ok


def coideal_J(fam: ComoduleFamily) -> CoidealReport:
    """Span of  phi (x)_{T_Q} t p - phi t (x)_{T_P} p  over phi in Q*, p in P, t in Hom^C(P, Q)."""
    big = coproduct_coring(fam)
    offs = _summand_offsets(big)
    gens = []
    for (p, q), ts in fam.homs.items():
        sp, sq_ = big.summands[p][0], big.summands[q][0]
        dp, dq = fam.duals[p], fam.duals[q]
        for t in ts:
            for j, phi in enumerate(dq.functionals):
                phit = dp.coordinates(phi @ t)
                for i in range(fam.members[p].dim):
                    x = unit_vector(fam.members[p].dim, i)
                    v = [0] * big.dim
                    a1 = sq_.tensor.pure(unit_vector(dq.dim, j), t @ x)
                    for k, c in enumerate(a1):
                        v[offs[q] + k] += c
                    a2 = sp.tensor.pure(phit, x)
                    for k, c in enumerate(a2):
                        v[offs[p] + k] -= c
                    gens.append(v)
    j_space = Subspace.span(gens, big.dim)
    cert = _coideal_flags(big, j_space)
    return CoidealReport(j_space, cert.counit_ok, cert.comult_ok)


def _coideal_flags(c: Coring, j: Subspace):
    from .algebra import quotient_module
    from .coring import CoidealCertificate
    vecs = j.vectors()
    qmod, q = quotient_module(c.module, j) if all(j.contains(m @ v) for v in vecs
                                                   for m in c.module.left + c.module.right) else (None, None)
    counit_ok = all(not any(c.counit @ v) for v in vecs)
    if q is None:
        return CoidealCertificate(counit_ok, False, False)
    sq = tensor_over(qmod, c.ring, qmod)
    pipi = tensor_map(c.square, q.projection, q.projection, sq)
    comult_ok = all(not any(pipi @ (c.comult @ v)) for v in vecs)
    return CoidealCertificate(counit_ok, comult_ok, True)


class QuotientCoring:
    def __init__(self, fam: ComoduleFamily):
        self.family = fam
        self.big = coproduct_coring(fam)
        self.j = coideal_J(fam)
        if not self.j.ok:
            raise InconsistencyError("the generators of J do not span a coideal")
        self.coring, self.projection, _ = quotient_coring(self.big, self.j.subspace, name="r(A)")
        self.section = QuotientCoring._section(self.big, self.j.subspace)

    @staticmethod
    def _section(c: Coring, j: Subspace) -> Matrix:
        from .exactlin import QuotientSpace
        return QuotientSpace(c.dim, j).section

    def member_comodule(self, p: int) -> Comodule:
        """P as an r-comodule:  p -> sum e_a (x) (e*_a (x) p + J)."""
        fam = self.family
        m = fam.members[p]
        sub, _ = self.big.summands[p]
        off = _summand_offsets(self.big)[p]
        t = tensor_over(m.module.right_only(), fam.ring_a, self.coring.module)
        dual = fam.duals[p]
        cols = []
        for i in range(m.dim):
            x = unit_vector(m.dim, i)
            acc = [0] * t.dim
            for e, f in zip(fam.bases[p].elements, fam.bases[p].functionals):
                inner = sub.tensor.pure(dual.coordinates(f), x)
                big = [0] * self.big.dim
                big[off:off + sub.dim] = list(inner)
                r = self.projection @ big
                v = t.pure(e, r)
                acc = [u + w for u, w in zip(acc, v)]
            cols.append(tuple(acc))
        return Comodule(self.coring, m.module.right_only(), Matrix.from_columns(cols, t.dim), name=m.name)


def quotient_coring_of(fam: ComoduleFamily) -> QuotientCoring:
    cached = getattr(fam, "_quotient", None)
    if cached is None:
        cached = QuotientCoring(fam)
        fam._quotient = cached
    return cached


# -- Sigma^dagger (x)_R Sigma and Sigma* (x)_T Sigma -----------------------------

class InfiniteComatrix:
    """Sigma^dagger (x)_R Sigma with Gamma_1, Gamma_2, Gamma and the triangle of isomorphisms."""

    def __init__(self, fam: ComoduleFamily):
        self.family = fam
        a = fam.ring_a
        self.coring = _comatrix_structure(a, fam.R, fam.sigma_dagger, fam.sigma, fam.pieces(), "Sigma^dagger(x)_R Sigma")
        self.tensor = self.coring.tensor
        # T = End^C(Sigma), Sigma* and a dual basis of Sigma, built independently
        sig = fam.sigma_comodule
        self.T_basis = comodule_hom(fam.coring, sig, sig)
        tring = _tensor_algebra(self.T_basis)
        self.T = tring
        sig_t = Module(sig.dim, left_ring=tring, left=self.T_basis, right_ring=a, right=sig.module.right, name="Sigma")
        self.sigma_star = dual_module(sig_t)
        self.sigma_basis = dual_basis(sig.module)
        self.t_coring = _comatrix_structure(a, tring, self.sigma_star.module, sig_t,
                                            [_Piece(self.sigma_star, self.sigma_basis, 0, 0)], "Sigma*(x)_T Sigma")

    @cached_property
    def gamma1(self) -> Matrix:
        """(+) P* (x)_{T_P} P  ->  Sigma^dagger (x)_R Sigma."""
        fam = self.family
        big = coproduct_coring(fam)
        cols = []
        for p, (sub, _) in enumerate(big.summands):
            m = tensor_map(sub.tensor, fam.dual_inclusion(p), fam.inclusion(p), self.tensor)
            cols.extend(m.columns())
        return Matrix.from_columns(cols, self.tensor.dim)

    @cached_property
    def dagger_to_star(self) -> Matrix:
        """phi in P*  ->  phi o pi_P in Sigma*."""
        fam = self.family
        cols = []
        for p, d in enumerate(fam.duals):
            proj = fam.projection(p)
            for phi in d.functionals:
                cols.append(self.sigma_star.coordinates(phi @ proj))
        return Matrix.from_columns(cols, self.sigma_star.dim)

    @cached_property
    def gamma2(self) -> Matrix:
        return tensor_map(self.tensor, self.dagger_to_star, Matrix.identity(self.family.total), self.t_coring.tensor)

    @cached_property
    def gamma(self) -> Matrix:
        """Gamma_P(phi (x) p) = phi pi_P (x) iota_P p, computed summand by summand."""
        fam = self.family
        big = coproduct_coring(fam)
        cols = []
        for p, (sub, _) in enumerate(big.summands):
            f = self.dagger_to_star @ fam.dual_inclusion(p)
            m = tensor_map(sub.tensor, f, fam.inclusion(p), self.t_coring.tensor)
            cols.extend(m.columns())
        return Matrix.from_columns(cols, self.t_coring.tensor.dim)

    def member_comodule(self, p: int) -> Comodule:
        """P over Sigma^dagger (x)_R Sigma:  p -> sum e_a (x) iota(e*_a) (x) iota(p)."""
        fam = self.family
        m = fam.members[p]
        t = tensor_over(m.module.right_only(), fam.ring_a, self.coring.module)
        dinc, inc = fam.dual_inclusion(p), fam.inclusion(p)
        cols = []
        for i in range(m.dim):
            x = unit_vector(m.dim, i)
            acc = [0] * t.dim
            for e, f in zip(fam.bases[p].elements, fam.bases[p].functionals):
                inner = self.tensor.pure(dinc @ fam.duals[p].coordinates(f), inc @ x)
                v = t.pure(e, inner)
                acc = [u + w for u, w in zip(acc, v)]
            cols.append(tuple(acc))
        return Comodule(self.coring, m.module.right_only(), Matrix.from_columns(cols, t.dim), name=m.name)


def infinite_comatrix(fam: ComoduleFamily) -> InfiniteComatrix:
    cached = getattr(fam, "_infinite", None)
    if cached is None:
        cached = InfiniteComatrix(fam)
        fam._infinite = cached
    return cached


def is_bijective(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


@dataclass
class TriangleReport:
    gamma1_surjective: bool
    kernel_is_J: bool
    commutes: bool
    r_to_dagger: bool
    dagger_to_star: bool
    r_to_star: bool
    dims: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all([self.gamma1_surjective, self.kernel_is_J, self.commutes,
                    self.r_to_dagger, self.dagger_to_star, self.r_to_star])


def triangle_report(fam: ComoduleFamily) -> TriangleReport:
    q = quotient_coring_of(fam)
    inf = infinite_comatrix(fam)
    g1, g2, g = inf.gamma1, inf.gamma2, inf.gamma
    surj = rank(g1) == inf.coring.dim
    ker = kernel_basis(g1) == q.j.subspace
    commutes = g2 @ g1 == g
    iso1 = g1 @ q.section
    iso3 = g @ q.section

    def iso_ok(f, c, d):
        return is_bijective(f) and is_coring_hom(f, c, d).ok

    return TriangleReport(
        surj, ker, commutes,
        iso_ok(iso1, q.coring, inf.coring),
        iso_ok(g2, inf.coring, inf.t_coring),
        iso_ok(iso3, q.coring, inf.t_coring),
        {"P": q.big.dim, "J": q.j.dim, "r": q.coring.dim, "dagger": inf.coring.dim, "star": inf.t_coring.dim},
    )


# -- the canonical map ---------------------------------------------------------

@dataclass
class CanReport:
    can_matrix: Matrix
    is_coring_hom: bool
    is_bijective: bool
    rank: int
    target_dim: int

    @property
    def galois(self):
        return self.is_bijective


def _can_on_tensor(t: BalancedTensor, functional, comodule: Comodule, c: Coring) -> Matrix:
    """phi (x) u -> (phi (x) C) rho(u) on the quotient basis of t; ``functional(i)`` is phi_i: Sigma -> A."""
    rho = comodule.coaction
    cols = []
    cache = {}
    for i, j in t.free_pairs():
        if i not in cache:
            cache[i] = collapse_left(comodule.tensor, functional(i), c.ring)
        cols.append(cache[i] @ rho.column(j))
    return Matrix.from_columns(cols, c.dim)


def canonical_map(fam: ComoduleFamily) -> CanReport:
    c = fam.coring
    inf = infinite_comatrix(fam)
    sig = fam.sigma_comodule

    def functional(i):
        for p, d in enumerate(fam.duals):
            o = fam.dual_offsets[p]
            if o <= i < o + d.dim:
                return d.functionals[i - o] @ fam.projection(p)
        raise IndexError(i)

    can = _can_on_tensor(inf.tensor, functional, sig, c)
    r = rank(can)
    return CanReport(can, is_coring_hom(can, inf.coring, c).ok, r == c.dim == inf.coring.dim, r, c.dim)


def coaction_report(fam: ComoduleFamily) -> Report:
    """For each member P: the coaction over Sigma^dagger (x)_R Sigma is a comodule,
    it matches the r-coaction under r ~ Sigma^dagger (x)_R Sigma, and
    (P (x) can) composed with it gives back the original C-coaction."""
    rep = Report("member coactions")
    q = quotient_coring_of(fam)
    inf = infinite_comatrix(fam)
    can = canonical_map(fam).can_matrix
    iso = inf.gamma1 @ q.section
    for p, m in enumerate(fam.members):
        over_inf = inf.member_comodule(p)
        over_r = q.member_comodule(p)
        rep.extend(check_comodule(inf.coring, over_inf), prefix=f"{m.name} over Sigma^dagger (x) Sigma: ")
        rep.extend(check_comodule(q.coring, over_r), prefix=f"{m.name} over r: ")
        ident = Matrix.identity(m.dim)
        moved = tensor_map(over_r.tensor, ident, iso, over_inf.tensor) @ over_r.coaction
        if moved != over_inf.coaction:
            rep.fail(f"{m.name}: the r-coaction does not correspond to the Sigma^dagger (x) Sigma coaction")
        back = tensor_map(over_inf.tensor, ident, can, m.tensor) @ over_inf.coaction
        if back != m.coaction:
            rep.fail(f"{m.name}: (P (x) can) after the lifted coaction differs from the C-coaction")
    return rep


def canonical_map_star(fam: ComoduleFamily) -> Matrix:
    """can on Sigma* (x)_T Sigma, used to check the square of canonical maps."""
    inf = infinite_comatrix(fam)
    return _can_on_tensor(inf.t_coring.tensor, lambda i: inf.sigma_star.functionals[i], fam.sigma_comodule, fam.coring)


def brute_force_can_rank(c: Coring, grouplikes: Sequence) -> int:
    """dim span {a g a'} over basis elements a, a' of A and g in the given grouplikes."""
    vecs = []
    for g in grouplikes:
        gv = g.vector if isinstance(g, Grouplike) else tuple(g)
        for i in range(c.ring.dim):
            left = c.module.left[i] @ gv
            for j in range(c.ring.dim):
                vecs.append(c.module.right[j] @ left)
    return Subspace.span(vecs, c.dim).dim


# -- grouplike families and r(G) ----------------------------------------------

def grouplike_family(c: Coring, gls: Sequence[Grouplike]) -> ComoduleFamily:
    members = [comodule_from_grouplike(c, g) for g in gls]
    fam = ComoduleFamily(c, members)
    fam.grouplikes = list(gls)
    return fam


class GrouplikePresentation:
    """r(G) built from the Sweedler corings A (x)_{A_{g,g}} A and compared with the family form."""

    def __init__(self, c: Coring, gls: Sequence[Grouplike]):
        a = c.ring
        self.coring_c = c
        self.grouplikes = list(gls)
        self.sweedlers = [sweedler_coring(a, grouplike_subspace(c, g, g)) for g in gls]
        self.big = direct_sum_coring(self.sweedlers, name="(+) A(x)A")
        offs = _summand_offsets(self.big)
        gens = []
        for gi, g in enumerate(gls):
            for hi, h in enumerate(gls):
                ts = grouplike_subspace(c, g, h).vectors()
                sg, sh = self.sweedlers[gi], self.sweedlers[hi]
                for t in ts:
                    for i in range(a.dim):
                        ai = a.basis_vector(i)
                        for j in range(a.dim):
                            aj = a.basis_vector(j)
                            v = [0] * self.big.dim
                            for k, x in enumerate(sh.tensor.pure(ai, a.mul(t, aj))):
                                v[offs[hi] + k] += x
                            for k, x in enumerate(sg.tensor.pure(a.mul(ai, t), aj)):
                                v[offs[gi] + k] -= x
                            gens.append(v)
        self.relations = Subspace.span(gens, self.big.dim)
        self.coring, self.projection, self.certificate = quotient_coring(self.big, self.relations, name="r(G)")
        from .exactlin import QuotientSpace
        self.section = QuotientSpace(self.big.dim, self.relations).section

    def can(self) -> Matrix:
        """a (x) a' + J  ->  a g a'."""
        c = self.coring_c
        cols = []
        for gi, sw in enumerate(self.sweedlers):
            gv = self.grouplikes[gi].vector
            for i, j in sw.tensor.free_pairs():
                cols.append(c.module.right[j] @ (c.module.left[i] @ gv))
        return Matrix.from_columns(cols, c.dim) @ self.section

    def to_family(self, fam: ComoduleFamily) -> Matrix:
        """a (x) a' + J  ->  iota_{g*}(a . ev_g) (x) iota_g(a')  in Sigma^dagger (x)_R Sigma."""
        inf = infinite_comatrix(fam)
        a = self.coring_c.ring
        cols = []
        for gi, sw in enumerate(self.sweedlers):
            dual = fam.duals[gi]
            dinc, inc = fam.dual_inclusion(gi), fam.inclusion(gi)
            for i, j in sw.tensor.free_pairs():
                phi = dual.coordinates(a.left_matrices[i])
                cols.append(inf.tensor.pure(dinc @ phi, inc @ a.basis_vector(j)))
        return Matrix.from_columns(cols, inf.tensor.dim) @ self.section


# -- R-bar, S and the descent conditions -----------------------------------------

@dataclass
class EndomorphismBarReport:
    dims: dict
    contains_R: bool
    lam_bijective: bool
    agrees_with_condition: bool
    can_iso_bijective: bool


def endomorphism_ring_bar(fam: ComoduleFamily) -> tuple[IdemRing, EndomorphismBarReport]:
    inf = infinite_comatrix(fam)
    d = inf.coring
    k = len(fam.members)
    lifted = [inf.member_comodule(p) for p in range(k)]
    homs = {(p, q): comodule_hom(d, lifted[p], lifted[q]) for p in range(k) for q in range(k)}
    rbar = IdemRing.from_blocks([m.dim for m in fam.members], homs)
    # R inside R-bar
    contains = all(rbar.block_contains(p, q, f) for (p, q), fs in fam.homs.items() for f in fs)
    lam_bij = contains and rbar.dim == fam.R.dim
    # cross-check with  f (x)_R iota_P(p) = 1_Q (x)_R iota_Q(f p)  in S (x)_R Sigma
    s_ring, s_right = _s_ring(fam)
    s_mod = Module(s_ring.dim, right_ring=fam.R, right=s_right, name="S")
    st = tensor_over(s_mod, fam.R, fam.sigma)
    agree = True
    for p in range(k):
        for q in range(k):
            base = hom_right(fam.members[p].module.right_only(), fam.members[q].module.right_only())
            one_q = s_ring.block_coordinates(q, q, Matrix.identity(fam.members[q].dim))
            cols = []
            for f in base:
                fs = s_ring.block_coordinates(p, q, f)
                col = []
                for i in range(fam.members[p].dim):
                    x = unit_vector(fam.members[p].dim, i)
                    lhs = st.pure(fs, fam.inclusion(p) @ x)
                    rhs = st.pure(one_q, fam.inclusion(q) @ (f @ x))
                    col.extend(u - v for u, v in zip(lhs, rhs))
                cols.append(tuple(col))
            if base:
                sol = kernel_basis(Matrix.from_columns(cols))
                sub = Subspace.span([combine(base, v, fam.members[q].dim, fam.members[p].dim).flatten()
                                     for v in sol.vectors()], fam.members[q].dim * fam.members[p].dim)
            else:
                sub = Subspace.zero(fam.members[q].dim * fam.members[p].dim)
            direct = Subspace.span([f.flatten() for f in homs[(p, q)]], fam.members[q].dim * fam.members[p].dim)
            if sub != direct:
                agree = False
    # Sigma^dagger (x)_{R-bar} Sigma -> Sigma^dagger (x)_R Sigma
    src = tensor_over(fam._dagger_module(rbar), rbar, fam._sigma_module(rbar))
    can_iso = tensor_map(src, Matrix.identity(fam.dual_total), Matrix.identity(fam.total), inf.tensor)
    report = EndomorphismBarReport({"R": fam.R.dim, "Rbar": rbar.dim}, contains, lam_bij, agree, is_bijective(can_iso))
    return rbar, report


def _s_ring(fam: ComoduleFamily) -> tuple[IdemRing, list[Matrix]]:
    """S = (+) Hom_A(P, Q) and the matrices of right multiplication by R's basis."""
    cached = getattr(fam, "_s", None)
    if cached is not None:
        return cached
    k = len(fam.members)
    homs = {(p, q): hom_right(fam.members[p].module.right_only(), fam.members[q].module.right_only())
            for p in range(k) for q in range(k)}
    s = IdemRing.from_blocks([m.dim for m in fam.members], homs)
    right = []
    for r in fam.R.matrices:
        cols = [_coords_in_blocks(s, sm @ r) for sm in s.matrices]
        right.append(Matrix.from_columns(cols, s.dim))
    fam._s = (s, right)
    return s, right


def _coords_in_blocks(ring: IdemRing, big: Matrix) -> Vector:
    """Coordinates of a block map on Sigma (given as a full matrix) in a block ring."""
    out = [0] * ring.dim
    k = len(ring.block_dims)
    for p in range(k):
        for q in range(k):
            rows = range(ring.offsets[q], ring.offsets[q] + ring.block_dims[q])
            cols = range(ring.offsets[p], ring.offsets[p] + ring.block_dims[p])
            blk = big.submatrix(rows, cols)
            if blk.is_zero():
                continue
            v = ring.block_coordinates(p, q, blk)
            out = [x + y for x, y in zip(out, v)]
    return tuple(out)


def s_left_module(fam: ComoduleFamily) -> Module:
    s, _ = _s_ring(fam)
    left = []
    for r in fam.R.matrices:
        cols = [_coords_in_blocks(s, r @ sm) for sm in s.matrices]
        left.append(Matrix.from_columns(cols, s.dim))
    return Module(s.dim, left_ring=fam.R, left=left, name="S")


def s_sigma_iso(fam: ComoduleFamily) -> bool:
    """Sigma (x)_A Sigma^dagger -> S,  iota_Q(q) (x) iota_P*(phi) -> (p -> q . phi(p)), is bijective."""
    s, _ = _s_ring(fam)
    a = fam.ring_a
    sig = Module(fam.total, right_ring=a, right=fam.sigma.right, name="Sigma")
    dag = Module(fam.dual_total, left_ring=a, left=fam.sigma_dagger.left, name="Sigma^dagger")
    t = tensor_over(sig, a, dag)
    cols = []
    for i, j in t.free_pairs():
        q = _owner(fam.offsets, i)
        p = _owner(fam.dual_offsets, j)
        qv = fam.projection(q) @ unit_vector(fam.total, i)
        phi = fam.duals[p].functionals[j - fam.dual_offsets[p]]
        # p' -> q . phi(p')  as a (dim Q x dim P) matrix
        qm = fam.members[q].module
        f = Matrix.from_columns([qm.act_right(qv, phi.column(c)) for c in range(phi.cols)], qm.dim)
        cols.append(s.block_coordinates(p, q, f))
    return is_bijective(Matrix.from_columns(cols, s.dim))


def _owner(offsets: Sequence[int], i: int) -> int:
    k = 0
    for n, o in enumerate(offsets):
        if o <= i:
            k = n
    return k


def projectivity_certificate(fam: ComoduleFamily, probes: Sequence[Comodule]) -> bool:
    """Every colinear epimorphism X -> Y between probes or members induces a surjection
    Hom^C(P, X) -> Hom^C(P, Y) for each member P (lifting property, tested on finite data)."""
    c = fam.coring
    objs = list(fam.members) + list(probes)
    homs_cache = {}

    def hom(x, y):
        key = (id(x), id(y))
        if key not in homs_cache:
            homs_cache[key] = comodule_hom(c, x, y)
        return homs_cache[key]

    for x in objs:
        for y in objs:
            for e in hom(x, y):
                if rank(e) != y.dim:
                    continue
                for p in fam.members:
                    target = hom(p, y)
                    images = [(e @ f).flatten() for f in hom(p, x)]
                    span = Subspace.span(images, y.dim * p.dim)
                    if any(not span.contains(t.flatten()) for t in target):
                        return False
    return True


@dataclass
class DescentReport:
    flat: bool
    fg_projective: bool
    can_bijective: bool
    sigma_faithfully_flat: bool
    s_iso: bool
    s_faithfully_flat: bool
    lambda_bijective: bool
    generates: bool
    projective_certificate: bool
    dims: dict = field(default_factory=dict)
    generation: dict = field(default_factory=dict)

    @property
    def condition_iii(self) -> bool:
        return self.fg_projective and self.can_bijective and self.sigma_faithfully_flat

    @property
    def condition_iv(self) -> bool:
        return self.flat and self.fg_projective and self.can_bijective and self.s_faithfully_flat

    @property
    def condition_i(self) -> bool:
        return self.flat and self.generates and self.projective_certificate

    def inconsistencies(self) -> list[str]:
        out = []
        if self.condition_iii != self.condition_iv:
            out.append("can bijective with Sigma faithfully flat disagrees with the S faithful flatness condition")
        if self.condition_iii != self.condition_i:
            out.append("can bijective with Sigma faithfully flat disagrees with generation plus projectivity")
        if self.sigma_faithfully_flat and not self.lambda_bijective:
            out.append("Sigma faithfully flat over R but lambda: R -> R-bar is not bijective")
        if not self.s_iso:
            out.append("S is not isomorphic to Sigma (x)_A Sigma^dagger")
        return out

    @property
    def consistent(self) -> bool:
        return not self.inconsistencies()

    @property
    def all_true(self) -> bool:
        return all([self.flat, self.fg_projective, self.can_bijective, self.sigma_faithfully_flat,
                    self.s_faithfully_flat, self.lambda_bijective, self.generates, self.projective_certificate])

    def flags(self) -> dict:
        d = asdict(self)
        d.pop("dims")
        d.pop("generation")
        return d


def descent_report(fam: ComoduleFamily, probes: Sequence[Comodule]) -> DescentReport:
    c = fam.coring
    flat = is_projective(c.module.left_only(), side="left")
    fgp = all(b.check().ok for b in fam.bases)
    can = canonical_map(fam)
    sig_ff = is_faithfully_flat(fam.R, fam.sigma.left_only()).faithfully_flat
    s_iso = s_sigma_iso(fam)
    s_ff = is_faithfully_flat(fam.R, s_left_module(fam)).faithfully_flat
    rbar, bar = endomorphism_ring_bar(fam)
    gen = {p.name: is_generated_by(c, p, fam.members) for p in probes}
    cert = projectivity_certificate(fam, probes)
    return DescentReport(flat, fgp, can.is_bijective, sig_ff, s_iso, s_ff, bar.lam_bijective,
                         all(gen.values()), cert,
                         dims={"C": c.dim, "R": fam.R.dim, "Rbar": rbar.dim, "Sigma": fam.total,
                               "can_rank": can.rank},
                         generation=gen)
