from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from specialconn.errors import StructuralError
from specialconn.exact import (
    Mat,
    Subspace,
    format_rational,
    is_positive_definite,
    nullspace,
    parse_rational,
    rational_roots,
    subspace_algebra,
)

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    )


def square(max_n=4):
    return st.integers(1, max_n).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-2/4", Fraction(-1, 2)), (" 7/1 ", Fraction(7))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1/0", "", "a", "1/2/3", "0.5e"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_format_rational_canonical():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-3, 6)) == "-1/2"


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_and_nullspace_match_sympy(rows):
    M = Mat(rows)
    S = sympy.Matrix(rows)
    assert M.rank == S.rank()
    ns = nullspace(M)
    assert ns.dim == len(S.nullspace())
    for v in ns.basis:
        assert not any(M @ v)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_matches_sympy(rows):
    R, rank, pivots = Mat(rows).rref()
    Rs, ps = sympy.Matrix(rows).rref()
    assert list(pivots) == list(ps)
    assert [[Fraction(int(x.p), int(x.q)) for x in Rs.row(i)] for i in range(Rs.rows)] == R.tolist()


@settings(max_examples=60, deadline=None)
@given(square())
def test_det_and_charpoly_match_sympy(rows):
    M = Mat(rows)
    S = sympy.Matrix(rows)
    assert M.det() == S.det()
    lam = sympy.Symbol("x")
    expected = [Fraction(int(c)) for c in S.charpoly(lam).all_coeffs()]
    assert M.charpoly() == expected


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=4))
def test_rational_roots_recovers_planted_roots(roots):
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.prod([(x - sympy.Rational(r.numerator, r.denominator)) for r in roots]) * (x ** 2 + 1), x)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in poly.all_coeffs()]
    assert rational_roots(coeffs) == sorted(set(roots))


@settings(max_examples=60, deadline=None)
@given(square())
def test_positive_definite_matches_eigenvalues(rows):
    M = Mat(rows)
    G = M.T @ M + Mat.identity(M.rows) * Fraction(-1, 2)  # symmetric, sometimes indefinite
    S = sympy.Matrix(G.tolist())
    expected = bool(S.is_positive_definite)
    assert is_positive_definite(G) == expected


def test_positive_definite_requires_symmetric():
    with pytest.raises(StructuralError):
        is_positive_definite(Mat([[1, 2], [0, 1]]))


@settings(max_examples=60, deadline=None)
@given(matrices(4, 4), matrices(4, 4))
def test_subspace_dimension_formula(a, b):
    n = 4
    U = Subspace(n, [r + [0] * (n - len(r)) for r in a])
    V = Subspace(n, [r + [0] * (n - len(r)) for r in b])
    assert (U + V).dim + (U & V).dim == U.dim + V.dim
    for v in (U & V).basis:
        assert U.contains(v) and V.contains(v)
    assert U <= U + V


def test_subspace_is_canonical():
    assert Subspace(3, [[1, 1, 0], [0, 1, 0]]) == Subspace(3, [[1, 0, 0], [0, 2, 0]])
    assert Subspace(3, [[1, 1, 0], [0, 1, 0]]).basis == ((1, 0, 0), (0, 1, 0))


def test_subspace_algebra_ops():
    U = Subspace(3, [[1, 0, 0]])
    V = Subspace(3, [[0, 1, 0]])
    assert subspace_algebra(U, V, "sum").dim == 2
    assert subspace_algebra(U, V, "intersection").dim == 0
    assert subspace_algebra(U, [2, 0, 0], "contains-vector") is True
