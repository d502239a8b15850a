from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from vinberg import rational as Q

small = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def square(n_min=1, n_max=5):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


def rect():
    return st.tuples(st.integers(1, 5), st.integers(1, 5)).flatmap(
        lambda s: st.lists(st.lists(small, min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0]))


def to_sympy(a):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in a])


def test_frac_parsing():
    assert Q.frac("3/6") == Fraction(1, 2)
    assert Q.frac(-4) == Fraction(-4)
    assert Q.fmt(Fraction(-8, 2)) == "-4"
    assert Q.fmt(Fraction(3, -9)) == "-1/3"
    with pytest.raises(TypeError):
        Q.frac(0.5)
    with pytest.raises(TypeError):
        Q.frac(True)


# [DERIVED] sympy is the oracle for everything below

@settings(max_examples=60, deadline=None)
@given(square())
def test_det_matches_sympy(rows):
    a = Q.matrix(rows)
    assert Q.det(a) == Fraction(str(to_sympy(a).det()))


@settings(max_examples=60, deadline=None)
@given(rect())
def test_rank_and_nullspace_match_sympy(rows):
    a = Q.matrix(rows)
    n_cols = len(a[0])
    assert Q.rank(a) == to_sympy(a).rank()
    kernel = Q.nullspace(a, n_cols=n_cols)
    assert len(kernel) == n_cols - Q.rank(a)
    for v in kernel:
        assert all(x == 0 for x in Q.matvec(a, v))


@settings(max_examples=40, deadline=None)
@given(rect())
def test_rref_matches_sympy(rows):
    a = Q.matrix(rows)
    r, pivots = Q.rref(a)
    s, sp = to_sympy(a).rref()
    assert list(pivots) == list(sp)
    assert Q.matrix([[str(x) for x in row] for row in s.tolist()]) == r


@settings(max_examples=40, deadline=None)
@given(square())
def test_inverse(rows):
    a = Q.matrix(rows)
    if Q.det(a) == 0:
        return
    assert Q.is_identity(Q.matmul(a, Q.inverse(a)))


@settings(max_examples=40, deadline=None)
@given(square(1, 4))
def test_charpoly_matches_sympy(rows):
    a = Q.matrix(rows)
    lam = sympy.Symbol("x")
    expected = sympy.Poly(to_sympy(a).charpoly(lam).as_expr(), lam).all_coeffs()
    assert Q.charpoly(a) == [Fraction(str(c)) for c in expected]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5), st.integers(-4, 4),
       st.integers(0, 2))
def test_count_roots_above(roots, a, n_complex):
    # coefficients (highest degree first) from sympy, times (x^2 + 1)^n_complex
    x = sympy.Symbol("x")
    expr = sympy.prod([x - r for r in roots]) * (x**2 + 1) ** n_complex
    p = [Fraction(int(c)) for c in sympy.Poly(expr, x).all_coeffs()]
    assert Q.count_roots_above(p, a) == len({r for r in roots if r > a})


def test_poly_divmod():
    m = Q.matrix([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    p = Q.charpoly(m)  # (x-1)(x-2)(x-3)
    d = Q.charpoly(Q.matrix([[1]]))  # x - 1
    quo, rem = Q.poly_divmod(p, d)
    assert all(c == 0 for c in rem)
    for x in range(-3, 4):
        assert Q.poly_eval(quo, x) == (x - 2) * (x - 3)


def test_incremental_span():
    span = Q.IncrementalSpan(3)
    assert span.add((1, 0, 0))
    assert span.add((1, 1, 0))
    assert not span.add((3, 5, 0))
    assert span.contains((0, 2, 0))
    assert not span.contains((0, 0, 1))
    assert span.dim == 2


def test_coordinates():
    basis = [(Fraction(1), Fraction(1)), (Fraction(0), Fraction(2))]
    assert Q.coordinates(basis, (3, 7)) == (3, 2)


def test_mat_power_and_trace():
    rot = Q.matrix([[0, -1], [1, 0]])
    assert Q.is_identity(Q.mat_power(rot, 4))
    assert not Q.is_identity(Q.mat_power(rot, 2))
    assert Q.trace(rot) == 0
