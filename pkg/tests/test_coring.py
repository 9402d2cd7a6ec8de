import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from corings import fixtures as fx
from corings.algebra import Module
from corings.coring import (
    Comodule, Coring, NotGrouplike, check_comodule, check_coring, comodule_from_grouplike, comodule_hom,
    cotensor, grouplike_hom_ring, is_colinear, is_generated_by, is_grouplike, left_comodule_from_grouplike,
    regular_comodule, regular_left_comodule, sweedler_coring, trivial_coring,
)
from corings.exactlin import Matrix, Subspace
from corings.graded import ag_element


# -- check_coring -----------------------------------------------------------------

def test_fixture_corings_are_valid(F1, F2, F3, F4):
    for f in (F1, F2, F3, F4):
        assert check_coring(f.coring).ok, f.name


def test_broken_comultiplication_is_reported(F2):
    c = F2.coring
    ga = F2.graded
    cols = list(c.comult.columns())
    for i in range(2):
        a = ga.algebra.basis_vector(i)
        extra = c.square.pure(ag_element(ga, a, 1), ag_element(ga, ga.algebra.unit, 0))
        cols[2 + i] = tuple(x + y for x, y in zip(cols[2 + i], extra))
    bad = Coring(c.ring, c.module, Matrix.from_columns(cols, c.square.dim), c.counit, square=c.square)
    rep = check_coring(bad)
    assert not rep.ok
    assert any("coassociativity" in f for f in rep.failures)


def test_broken_counit_is_reported(F2):
    c = F2.coring
    bad = Coring(c.ring, c.module, c.comult, c.counit.scale(2), square=c.square)
    assert any("counit law" in f for f in check_coring(bad).failures)


# -- grouplikes and their comodules ------------------------------------------------------

def test_grouplike_examples(F1, F2):
    assert is_grouplike(F1.coring, F1.algebra.unit)
    e, s = F2.grouplikes["e"].vector, F2.grouplikes["s"].vector
    assert is_grouplike(F2.coring, e) and is_grouplike(F2.coring, s)
    assert not is_grouplike(F2.coring, tuple(x + y for x, y in zip(e, s)))


def test_comodule_from_non_grouplike_fails(F2):
    e, s = F2.grouplikes["e"].vector, F2.grouplikes["s"].vector
    with pytest.raises(NotGrouplike):
        comodule_from_grouplike(F2.coring, tuple(x + y for x, y in zip(e, s)))


def test_trivial_grouplike_comodule_is_regular(F1):
    m = comodule_from_grouplike(F1.coring, F1.grouplikes["1"])
    assert m.coaction == regular_comodule(F1.coring).coaction


def test_grouplike_coactions_on_f2(F2):
    ga, c = F2.graded, F2.coring
    one, x = ga.algebra.basis_vector(0), ga.algebra.basis_vector(1)
    me = comodule_from_grouplike(c, F2.grouplikes["e"])
    assert me.coaction.column(0) == me.tensor.pure(one, ag_element(ga, one, 0))
    assert me.coaction.column(1) == me.tensor.pure(one, ag_element(ga, x, 1))
    ms = comodule_from_grouplike(c, F2.grouplikes["s"])
    assert ms.coaction.column(0) == ms.tensor.pure(one, ag_element(ga, one, 1))


def test_every_grouplike_comodule_is_valid(F1, F2, F3, F4):
    for f in (F1, F2, F3, F4):
        for g in f.grouplikes.values():
            assert check_comodule(f.coring, comodule_from_grouplike(f.coring, g)).ok
            assert check_comodule(f.coring, left_comodule_from_grouplike(f.coring, g)).ok


def test_regular_comodules_are_valid(F2, F4):
    for f in (F2, F4):
        assert check_comodule(f.coring, regular_comodule(f.coring)).ok
        assert check_comodule(f.coring, regular_left_comodule(f.coring)).ok


def test_wrong_degree_bookkeeping_is_reported(F2):
    ga, c = F2.graded, F2.coring
    me = comodule_from_grouplike(c, F2.grouplikes["e"])
    one = ga.algebra.unit
    # a -> 1 (x) a.s with a placed in slot s regardless of its degree
    cols = [me.tensor.pure(one, ag_element(ga, ga.algebra.basis_vector(i), 1)) for i in range(2)]
    bad = Comodule(c, me.module, Matrix.from_columns(cols, me.tensor.dim), name="bad")
    assert not check_comodule(c, bad).ok


# -- morphisms -----------------------------------------------------------------

def test_identity_is_colinear(F2, F3):
    for f in (F2, F3):
        for m in f.probes:
            assert is_colinear(Matrix.identity(m.dim), m, m)
            assert len(comodule_hom(f.coring, m, m)) >= 1


@pytest.mark.parametrize("name,invertible", [("F2", True), ("F3", False)])
def test_hom_between_shifts(name, invertible):
    f = fx.FIXTURES[name]()
    c = f.coring
    me, ms = (comodule_from_grouplike(c, f.grouplikes[g]) for g in ("e", "s"))
    homs = comodule_hom(c, me, ms)
    assert len(homs) == 1
    x = f.algebra.left_mult(f.algebra.basis_vector(1))
    assert Subspace.span([homs[0].flatten()], 4) == Subspace.span([x.flatten()], 4)
    assert (homs[0].rank() == 2) == invertible


def test_grouplike_hom_ring_examples(F2, F3):
    gl2, gl3 = F2.grouplikes, F3.grouplikes
    one, x = (1, 0), (0, 1)
    assert grouplike_hom_ring(F2.coring, gl2["e"], gl2["e"]).space == Subspace.span([one], 2)
    assert grouplike_hom_ring(F2.coring, gl2["e"], gl2["s"]).space == Subspace.span([x], 2)
    assert grouplike_hom_ring(F3.coring, gl3["s"], gl3["s"]).space == Subspace.span([one], 2)


def test_grouplike_hom_ring_identification_and_products(F2, F3, F4):
    for f in (F2, F3, F4):
        gls = list(f.grouplikes.values())
        rings = {(g.name, h.name): grouplike_hom_ring(f.coring, g, h) for g in gls for h in gls}
        for (g, h), r in rings.items():
            assert r.evaluation_ok
            if g == h:
                assert r.space.contains(f.algebra.unit)
        for k, g, h in product([g.name for g in gls], repeat=3):
            for u in rings[(g, h)].space.vectors():
                for v in rings[(k, g)].space.vectors():
                    assert rings[(k, h)].space.contains(f.algebra.mul(u, v))


# -- Sweedler corings -------------------------------------------------------------

def test_sweedler_over_whole_algebra(F3):
    a = F3.algebra
    c = sweedler_coring(a, Subspace.full(a.dim))
    assert c.dim == a.dim and check_coring(c).ok


def test_sweedler_fixture(F4):
    assert F4.coring.dim == 4
    assert is_grouplike(F4.coring, F4.coring.one)


def test_sweedler_over_scalars_in_f3(F3):
    a = F3.algebra
    c = sweedler_coring(a, Subspace.span([a.unit], 2))
    assert c.dim == 4 and check_coring(c).ok and is_grouplike(c, c.one)


def test_sweedler_rejects_non_subalgebra(F3):
    with pytest.raises(ValueError):
        sweedler_coring(F3.algebra, Subspace.span([(0, 1)], 2))


def test_trivial_coring_on_random_algebras():
    rng = random.Random(3)
    for _ in range(4):
        a = fx.random_graded_algebra(rng).algebra
        assert check_coring(trivial_coring(a)).ok


# -- cotensor and generation ---------------------------------------------------------

@pytest.mark.parametrize("name", ["F2", "F3", "F4"])
def test_cotensor_with_the_coring(name):
    f = fx.FIXTURES[name]()
    c = f.coring
    for g in f.grouplikes.values():
        n = left_comodule_from_grouplike(c, g)
        m = comodule_from_grouplike(c, g)
        assert cotensor(regular_comodule(c), n).dim == n.dim
        assert cotensor(m, regular_left_comodule(c)).dim == m.dim


def test_cotensor_of_shifts(F2):
    c = F2.coring
    e = F2.grouplikes["e"]
    assert cotensor(comodule_from_grouplike(c, e), left_comodule_from_grouplike(c, e)).dim == 1


def test_generation_examples(F3):
    c = F3.coring
    me, ms = (comodule_from_grouplike(c, F3.grouplikes[g]) for g in ("e", "s"))
    simple_s = F3.probes[1]
    assert is_generated_by(c, me, [me])
    assert not is_generated_by(c, simple_s, [me])
    assert is_generated_by(c, simple_s, [me, ms])
