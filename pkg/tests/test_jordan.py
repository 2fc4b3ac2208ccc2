import itertools

import pytest
import sympy

from specialconn import catalog
from specialconn.errors import Rejected
from specialconn.exact import Mat
from specialconn.jordan import NonassocAlgebra, classify_algebra, left_mult, symmetrize_leibniz, tkk, tkk_pair, tkk_special_product
from specialconn.lie import is_semisimple, killing, lower_central_series, validate_lie
from specialconn.products import verify_special


def sym2_jordan():
    """2x2 symmetric matrices with x o y = (xy + yx)/2; basis E11, E22, E12+E21."""
    mats = [Mat([[1, 0], [0, 0]]), Mat([[0, 0], [0, 1]]), Mat([[0, 1], [1, 0]])]

    def coords(m):
        # entries (a, b, b, c) -> (a, c, b)
        e = m.entries
        return [e[0], e[3], e[1]]

    prod = [[[x / 2 for x in coords(mats[i] @ mats[j] + mats[j] @ mats[i])] for j in range(3)] for i in range(3)]
    return NonassocAlgebra(3, prod, ["E11", "E22", "S12"])


def symbolic_jordan(A):
    """x.(x^2.y) - x^2.(x.y) with symbolic x, y."""
    n = A.dim
    xs = sympy.symbols(f"x0:{n}")
    ys = sympy.symbols(f"y0:{n}")

    def mul(u, v):
        out = [0] * n
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    c = A.product[i][j][k]
                    if c:
                        out[k] += sympy.Rational(c.numerator, c.denominator) * u[i] * v[j]
        return out

    x2 = mul(xs, xs)
    return all(sympy.expand(a - b) == 0 for a, b in zip(mul(xs, mul(x2, ys)), mul(x2, mul(xs, ys))))


def oracle_tkk_dims(A):
    """Spanning-set reduction with sympy: dims of span{L_x,[L_y,L_z]} and span{L,[L_x,L]}."""
    n = A.dim
    L = [sympy.Matrix(left_mult(A, b).tolist()) for b in A.basis()]
    g0 = L + [L[i] * L[j] - L[j] * L[i] for i in range(n) for j in range(n)]
    r0 = sympy.Matrix([list(m) for m in g0]).rank()

    def bil(fn):
        return [fn(i, j)[k] for i in range(n) for j in range(n) for k in range(n)]

    def mul_basis(i, j):
        return list(A.product[i][j])

    g1 = [bil(mul_basis)]
    for x in range(n):
        Lx = L[x]

        def f(i, j, Lx=Lx, x=x):
            ej = sympy.Matrix([1 if t == j else 0 for t in range(n)])
            Ly = L[i]
            xy = sympy.Matrix(list(A.product[x][i]))
            Lxy = sum((xy[t] * L[t] for t in range(n)), sympy.zeros(n, n))
            return list((Lx * Ly - Ly * Lx - Lxy) * ej)

        g1.append(bil(f))
    r1 = sympy.Matrix(g1).rank()
    return n, r0, r1


def test_classify_zero_assoc():
    flags = classify_algebra(catalog.zero_assoc())
    assert flags.as_dict() == {
        "commutative": True,
        "associative": True,
        "jordan": True,
        "zero_associative": True,
        "symmetric_leibniz": True,
    }


@pytest.mark.parametrize("build", [catalog.zero_assoc, catalog.unital_line, sym2_jordan, lambda: catalog.zero_assoc(3, 2, 1)])
def test_jordan_flag_matches_symbolic_oracle(build):
    A = build()
    assert classify_algebra(A).jordan == symbolic_jordan(A)


def test_non_jordan_commutative_algebra():
    # commutative: e0.e0 = e1, e0.e1 = e1.e0 = e0 -- fails the Jordan identity
    A = NonassocAlgebra(2, [[[0, 1], [1, 0]], [[1, 0], [0, 0]]])
    flags = classify_algebra(A)
    assert flags.commutative
    assert flags.jordan == symbolic_jordan(A)
    assert not flags.jordan and "jordan" in flags.witnesses
    with pytest.raises(Rejected):
        tkk(A)


def test_noncommutative_witness():
    A = NonassocAlgebra(2, [[[0, 0], [0, 1]], [[0, 0], [0, 0]]])
    flags = classify_algebra(A)
    assert not flags.commutative
    assert flags.witnesses["commutative"] == [0, 1]


def test_symmetrize_leibniz():
    A = catalog.zero_assoc()
    S = symmetrize_leibniz(A)
    assert S.product[0][0] == (0, 2)
    flags = classify_algebra(S)
    assert flags.commutative and flags.zero_associative


@pytest.mark.parametrize("build,dims", [(catalog.zero_assoc, (2, 1, 1)), (catalog.unital_line, (1, 1, 1)), (sym2_jordan, (3, 4, 3))])
def test_tkk_grade_dims_match_oracle(build, dims):
    A = build()
    G = tkk(A)
    got = G.grade_dims()
    assert (got[-1], got[0], got[1]) == dims == oracle_tkk_dims(A)
    assert validate_lie(G.lie).valid
    assert G.grading_violations() == []


def test_tkk_of_unital_line_is_sl2_like():
    G = tkk(catalog.unital_line())
    assert G.lie.dim == 3 and is_semisimple(G.lie)
    # split real form: Killing signature (2, 1) as for sl(2), not (0, 3) as for so(3)
    def signature(K):
        ev = sympy.Matrix(K.tolist()).eigenvals(multiple=True)
        return sum(1 for e in ev if e > 0), sum(1 for e in ev if e < 0)

    assert signature(killing(G.lie)) == signature(killing(catalog.sl(2))) == (2, 1)


def test_tkk_of_sym2_is_semisimple():
    G = tkk(sym2_jordan())
    assert G.lie.dim == 10 and is_semisimple(G.lie)


def test_tkk_zero_assoc_nilpotency():
    """The lower central series of tkk(e1.e1 = e2) has length 3.

    [B, e1] is the left multiplication F by e1, and [e1, F] = -e2 is nonzero,
    so [g, [g, g]] contains e2 and the class is 3.
    """
    G = tkk(catalog.zero_assoc())
    L = G.lie
    chain, nilpotent, cls = lower_central_series(L)
    assert nilpotent
    assert [s.dim for s in chain] == [4, 2, 1, 0]
    assert cls == 3
    e1, e2, F, B = L.basis()
    F_from_B = L.bracket(B, e1)
    assert F_from_B == F
    assert L.bracket(e1, F_from_B) == tuple(-x for x in e2)


def test_tkk_h_abelian_for_commutative_associative():
    for A in (catalog.zero_assoc(), catalog.zero_assoc(3, 1, 3), catalog.unital_line()):
        G = tkk(A)
        h = [i for i, g in enumerate(G.grades) if g == 0]
        for i, j in itertools.combinations(h, 2):
            assert not any(G.lie.structure[i][j])


@pytest.mark.parametrize("args", [(2, 1, 2), (3, 1, 2), (3, 2, 3), (4, 1, 4)])
def test_tkk_special_product_family(args):
    A = catalog.zero_assoc(*args)
    P, T = tkk_special_product(A)
    assert not T.is_zero()
    assert verify_special(P, T).ok


def test_tkk_special_product_rejects_unital():
    with pytest.raises(Rejected):
        tkk_special_product(catalog.unital_line())


def test_tkk_pair_involution():
    G, P = tkk_pair(catalog.zero_assoc())
    assert (P.p, P.q) == (3, 1)
