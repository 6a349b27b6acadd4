from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from obtuse import linalg
from obtuse.core import (DegenerateBasis, GramMatrix, LatticeBasis, UnimodularTransform,
                         change_of_basis, format_basis, gram, gram_schmidt, integral_gs,
                         is_obtuse, obtuseness, parse_basis, read_basis, same_lattice,
                         write_basis)

from strategies import bases


def B(*rows):
    return LatticeBasis(rows)


def test_gram_examples():
    assert gram(B((1, 0), (0, 1))).entries == ((1, 0), (0, 1))
    assert gram(B((2, 1), (1, 2))).entries == ((5, 4), (4, 5))
    assert gram(B((1, 0), (-1, -1))).entries == ((1, -1), (-1, 2))


def test_gram_schmidt_examples():
    gs = gram_schmidt(B((1, 0), (0, 1)))
    assert gs.mu[1][0] == 0 and gs.normsq == (1, 1)
    gs = gram_schmidt(B((2, 0), (1, 2)))
    assert gs.mu[1][0] == Fraction(1, 2) and gs.normsq == (4, 4)
    gs = gram_schmidt(B((1, 1), (1, 0)))
    assert gs.mu[1][0] == Fraction(1, 2) and gs.normsq == (2, Fraction(1, 2))


def test_is_obtuse_examples():
    assert is_obtuse(B((1, 0), (0, 1)))
    assert not is_obtuse(B((2, 1), (1, 2)))
    assert is_obtuse(B((1, 0), (-1, -1)))
    assert obtuseness(B((2, 1), (1, 2))) == 1


def test_same_lattice_examples():
    I2 = B((1, 0), (0, 1))
    assert same_lattice(I2, I2)
    assert same_lattice(I2, B((1, 0), (1, 1)))
    assert not same_lattice(I2, B((2, 0), (0, 1)))
    assert change_of_basis(I2, B((1, 0), (1, 1))) == [[1, 0], [1, 1]]


def test_same_lattice_rejects_other_span():
    assert not same_lattice(B((1, 0, 0), (0, 1, 0)), B((1, 0, 0), (0, 0, 1)))


def test_degenerate_inputs_rejected():
    with pytest.raises(DegenerateBasis):
        B((1, 2), (2, 4))
    with pytest.raises(DegenerateBasis):
        B((1, 2, 3), (1, 2))
    with pytest.raises(DegenerateBasis):
        B((1,), (2,))
    with pytest.raises(DegenerateBasis):
        LatticeBasis([])
    with pytest.raises(DegenerateBasis):
        gram_schmidt(LatticeBasis([(1, 1), (2, 2)], check=False))


def test_non_square_basis():
    b = B((1, 2, 3), (0, 1, 4))
    assert b.n == 2 and b.m == 3
    assert gram(b).entries == ((14, 14), (14, 17))


@settings(max_examples=60, deadline=None)
@given(bases(max_n=5, extra_dims=2))
def test_gram_schmidt_matches_sympy(b):
    M = sympy.Matrix(b.tolist())
    ortho = []
    for i in range(b.n):
        v = M.row(i)
        for j, w in enumerate(ortho):
            mu = (M.row(i).dot(w)) / w.dot(w)
            assert gram_schmidt(b).mu[i][j] == Fraction(int(mu.p), int(mu.q))
            v = v - mu * w
        ortho.append(v)
    gs = gram_schmidt(b)
    for i, w in enumerate(ortho):
        q = w.dot(w)
        assert gs.normsq[i] == Fraction(int(q.p), int(q.q))


@settings(max_examples=60, deadline=None)
@given(bases(max_n=6, extra_dims=1))
def test_gram_schmidt_reconstruction_and_determinant(b):
    gs = gram_schmidt(b)
    prod = Fraction(1)
    for x in gs.normsq:
        assert x > 0
        prod *= x
    assert prod == linalg.det(gram(b).entries)
    # b_i = b*_i + sum_j mu_ij b*_j, rebuilt exactly
    stars = []
    for i in range(b.n):
        star = [Fraction(x) for x in b[i]]
        for j in range(i):
            star = [s - gs.mu[i][j] * t for s, t in zip(star, stars[j])]
        stars.append(star)
    for i in range(b.n):
        for j in range(i):
            assert sum(x * y for x, y in zip(stars[i], stars[j])) == 0


@settings(max_examples=40, deadline=None)
@given(bases(max_n=6))
def test_float_gram_schmidt_close_to_exact(b):
    ex, fl = gram_schmidt(b), gram_schmidt(b, "float")
    for x, y in zip(ex.normsq, fl.normsq):
        assert abs(float(x) - y) <= 1e-9 * float(x)


@settings(max_examples=60, deadline=None)
@given(bases(max_n=6, extra_dims=1))
def test_integral_gs_is_integral_and_consistent(b):
    D, lam = integral_gs(gram(b))
    gs = gram_schmidt(b)
    for i in range(b.n):
        assert Fraction(D[i + 1], D[i]) == gs.normsq[i]
        for j in range(i):
            assert lam[i][j] == gs.mu[i][j] * D[j + 1]


@settings(max_examples=60, deadline=None)
@given(bases(max_n=5), st.data())
def test_positive_definite_iff_independent(b, data):
    assert gram(b).is_positive_definite()
    # append a combination of the rows: the Gram matrix becomes singular
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=b.n, max_size=b.n))
    dep = LatticeBasis(list(b) + [b.combination(coeffs)], check=False)
    assert not gram(dep).is_positive_definite()
    with pytest.raises(DegenerateBasis):
        LatticeBasis(dep.tolist())


@settings(max_examples=60, deadline=None)
@given(bases(max_n=5), st.data())
def test_unimodular_images_span_same_lattice(b, data):
    n = b.n
    U = linalg.identity(n)
    for _ in range(data.draw(st.integers(0, 6))):
        i, j = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
        if i != j:
            k = data.draw(st.integers(-3, 3))
            U[i] = [a + k * c for a, c in zip(U[i], U[j])]
    if data.draw(st.booleans()):
        U[0] = [-x for x in U[0]]
    T = UnimodularTransform(tuple(map(tuple, U)))
    assert T.is_unimodular
    assert same_lattice(b, T.apply(b))
    S = [row[:] for row in U]
    S[0] = [2 * x for x in S[0]]
    assert not same_lattice(b, LatticeBasis(linalg.matmul(S, b.vectors)))


def test_transform_composition():
    b = B((3, 1), (1, 2))
    s = UnimodularTransform(((1, 0), (1, 1)))
    t = UnimodularTransform(((0, 1), (1, 0)))
    assert s.then(t).apply(b) == t.apply(s.apply(b))
    assert s.then(t).det == -1


def test_quadratic_form_is_squared_norm():
    b = B((2, 1, 0), (1, -3, 2), (0, 1, 1))
    v = [2, -1, 3]
    w = b.combination(v)
    assert gram(b).quadratic_form(v) == sum(x * x for x in w)


def test_basis_io_round_trip(tmp_path):
    b = B((1, -2, 3), (4, 5, -6))
    path = tmp_path / "b.txt"
    write_basis(path, b)
    assert read_basis(path) == b
    assert parse_basis(format_basis(b)) == b
    assert parse_basis("[[1 -2 3]\n [4 5 -6]]") == b
    assert parse_basis("# comment\n1 -2 3\n\n4 5 -6\n") == b


@settings(max_examples=40, deadline=None)
@given(bases(max_n=4, bound=10**30, extra_dims=2))
def test_round_trip_big_entries(b):
    assert parse_basis(format_basis(b)) == b


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_basis("1 2\n3 x\n")
    with pytest.raises(ValueError):
        parse_basis("\n\n")


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-30, 30), min_size=5, max_size=5), min_size=5, max_size=5))
def test_linalg_against_sympy(rows):
    M = sympy.Matrix(rows)
    assert linalg.det(rows) == M.det()
    if M.det() != 0:
        N, d = linalg.inverse(rows)
        assert d > 0
        assert sympy.Matrix(N) / d == M.inv()
        b = [1, -2, 0, 3, 5]
        assert [sympy.Rational(x.numerator, x.denominator) for x in linalg.solve(rows, b)] == \
            list(M.LUsolve(sympy.Matrix(b)))
