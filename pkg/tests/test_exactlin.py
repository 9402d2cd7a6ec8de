from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from corings.exactlin import (
    Matrix, Subspace, format_rational, kernel_basis, kron, quotient_space, rank, rational, rref,
    solve_right,
)

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def matrices(draw, max_rows=4, max_cols=4, rows=None, cols=None):
    r = rows if rows is not None else draw(st.integers(0, max_rows))
    c = cols if cols is not None else draw(st.integers(0, max_cols))
    data = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix(r, c, data)


# -- examples -----------------------------------------------------------------

def test_rational_parsing_and_formatting():
    assert rational("3/6") == Fraction(1, 2)
    assert format_rational(Fraction(-4, 2)) == "-2"
    assert format_rational(Fraction(2, 3)) == "2/3"
    with pytest.raises((ValueError, ZeroDivisionError)):
        rational("1/0")


def test_rref_identity():
    m, piv = rref(Matrix.identity(2))
    assert m == Matrix.identity(2) and piv == [0, 1]


def test_rref_zero():
    m, piv = rref(Matrix.zeros(2, 3))
    assert m == Matrix.zeros(2, 3) and piv == []


def test_rref_hand_example():
    m, piv = rref(Matrix(2, 2, [[2, 4], [1, 2]]))
    assert m == Matrix(2, 2, [[1, 2], [0, 0]])
    assert piv == [0]


def test_kernel_identity_is_zero():
    assert kernel_basis(Matrix.identity(3)) == Subspace.zero(3)


def test_kernel_zero_is_full():
    assert kernel_basis(Matrix.zeros(2, 2)) == Subspace.full(2)


def test_kernel_hand_example():
    assert kernel_basis(Matrix(1, 2, [[1, 2]])) == Subspace.span([(-2, 1)], 2)


def test_solve_identity():
    b = Matrix(2, 3, [[1, 2, 3], [4, 5, Fraction(1, 7)]])
    assert solve_right(Matrix.identity(2), b) == b


def test_solve_zeroes_free_variables():
    assert solve_right(Matrix(1, 2, [[1, 1]]), Matrix(1, 1, [[1]])) == Matrix(2, 1, [[1], [0]])


def test_solve_inconsistent():
    assert solve_right(Matrix.zeros(1, 1), Matrix(1, 1, [[1]])) is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_right(Matrix.identity(2), Matrix.identity(3))


def test_quotient_by_zero():
    q = quotient_space(3, Subspace.zero(3))
    assert q.dim == 3 and q.projection == Matrix.identity(3)


def test_quotient_by_everything():
    assert quotient_space(3, Subspace.full(3)).dim == 0


def test_quotient_by_diagonal():
    q = quotient_space(2, Subspace.span([(1, 1)], 2))
    assert q.dim == 1
    assert q.project((1, 0)) == tuple(-x for x in q.project((0, 1)))
    assert q.projection @ q.section == Matrix.identity(1)


def test_kron_examples():
    assert kron(Matrix.identity(2), Matrix.identity(3)) == Matrix.identity(6)
    assert kron(Matrix(2, 2, [[1, 2], [3, 4]]), Matrix.zeros(2, 3)).is_zero()
    assert kron(Matrix(1, 1, [[2]]), Matrix.identity(2)) == Matrix(2, 2, [[2, 0], [0, 2]])


def test_kron_index_convention():
    a = Matrix(2, 2, [[1, 2], [3, 4]])
    b = Matrix(2, 2, [[5, 6], [7, 8]])
    k = kron(a, b)
    for i in range(2):
        for j in range(2):
            for r in range(2):
                for s in range(2):
                    assert k[i * 2 + r, j * 2 + s] == a[i, j] * b[r, s]


# -- properties -----------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_preserves_rank_and_is_idempotent(m):
    r, piv = rref(m)
    assert rank(r) == rank(m) == len(piv)
    assert rref(r)[0] == r
    assert Subspace.span(r.row_list(), m.cols) == Subspace.span(m.row_list(), m.cols)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_vectors_are_annihilated(m):
    k = kernel_basis(m)
    assert k.dim == m.cols - rank(m)
    for v in k.vectors():
        assert not any(m @ v)


@settings(max_examples=60, deadline=None)
@given(matrices(max_cols=5))
def test_quotient_invariants(m):
    w = Subspace.span(m.row_list(), m.cols)
    q = quotient_space(m.cols, w)
    assert q.dim == m.cols - w.dim
    assert q.projection @ q.section == Matrix.identity(q.dim)
    for v in w.vectors():
        assert not any(q.project(v))
    assert kernel_basis(q.projection) == w


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_solve_right_solves_consistent_systems(data):
    a = data.draw(matrices(max_rows=4, max_cols=4))
    x = data.draw(matrices(rows=a.cols, cols=data.draw(st.integers(0, 2))))
    b = a @ x
    sol = solve_right(a, b)
    assert sol is not None and a @ sol == b


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_kron_mixed_product(data):
    n1, n2, n3 = (data.draw(st.integers(1, 3)) for _ in range(3))
    m1, m2, m3 = (data.draw(st.integers(1, 3)) for _ in range(3))
    a = data.draw(matrices(rows=n1, cols=n2))
    c = data.draw(matrices(rows=n2, cols=n3))
    b = data.draw(matrices(rows=m1, cols=m2))
    d = data.draw(matrices(rows=m2, cols=m3))
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


@settings(max_examples=30, deadline=None)
@given(matrices(max_rows=2, max_cols=2), matrices(max_rows=2, max_cols=2), matrices(max_rows=2, max_cols=2))
def test_kron_associative(a, b, c):
    assert kron(kron(a, b), c) == kron(a, kron(b, c))
