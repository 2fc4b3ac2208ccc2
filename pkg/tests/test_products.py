import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from specialconn import catalog
from specialconn.errors import Rejected
from specialconn.exact import Mat, Subspace
from specialconn.lie import killing
from specialconn.products import (
    ProductTensor,
    candidate_space,
    curvature,
    holonomy,
    poisson_checks,
    poisson_from_center,
    power_identity_violations,
    semi_symmetry_check,
    solve_special,
    torsion,
    trace_lemma_violations,
    transport_to_double,
    verify_special,
)

PAIRS = {
    "sphere2": lambda: catalog.sphere_pair(2),
    "sphere3": lambda: catalog.sphere_pair(3),
    "r4-so3": catalog.r4_so3_pair,
    "double-sl2": lambda: catalog.double_pair(catalog.sl(2)),
    "double-gl2": lambda: catalog.double_pair(catalog.gl(2)),
    "cartan-sl2": lambda: catalog.transpose_pair(2),
}


def delta_product():
    """e_i * e_j = delta_ij e_4 for i, j <= 3 on R^4."""
    return ProductTensor(4, [[[1 if (i == j and i < 3 and k == 3) else 0 for k in range(4)] for j in range(4)] for i in range(4)])


def oracle_candidate_dim(P):
    """Solve commutativity + invariance symbolically, straight from the bracket of g."""
    L, p = P.algebra, P.p
    a = sympy.symbols(f"a0:{p ** 3}")

    def alpha(i, j):
        return [a[(i * p + j) * p + k] for k in range(p)]

    def apply(u, v):
        out = [0] * p
        for i in range(p):
            for j in range(p):
                if u[i] and v[j]:
                    for k, s in enumerate(alpha(i, j)):
                        out[k] += u[i] * v[j] * s
        return out

    def to_m(x):
        return [sympy.Rational(c.numerator, c.denominator) for c in P.m_coords(x)]

    def bracket_sym(h, coeffs):
        # [h, sum coeffs_k m_k] in m-coordinates
        out = [0] * p
        for k, c in enumerate(coeffs):
            for r, val in enumerate(to_m(L.bracket(h, P.m_basis[k]))):
                out[r] += c * val
        return out

    eqs = []
    for i in range(p):
        for j in range(p):
            eqs += [x - y for x, y in zip(alpha(i, j), alpha(j, i))]
    E = [[1 if r == c else 0 for c in range(p)] for r in range(p)]
    for h in P.h_basis:
        hu = [to_m(L.bracket(h, u)) for u in P.m_basis]
        for i in range(p):
            for j in range(p):
                lhs = bracket_sym(h, alpha(i, j))
                rhs = [x + y for x, y in zip(apply(hu[i], E[j]), apply(E[i], hu[j]))]
                eqs += [sympy.expand(x - y) for x, y in zip(lhs, rhs)]
    eqs = [e for e in eqs if e != 0]
    if not eqs:
        return p ** 3
    M, _ = sympy.linear_eq_to_matrix(eqs, a)
    return p ** 3 - M.rank()


@pytest.mark.parametrize("name,expected", [("sphere2", 0), ("sphere3", 0), ("r4-so3", 3), ("double-sl2", 0), ("cartan-sl2", None)])
def test_candidate_space_matches_oracle(name, expected):
    P = PAIRS[name]()
    W = candidate_space(P)
    assert len(W) == oracle_candidate_dim(P)
    if expected is not None:
        assert len(W) == expected


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sphere_has_only_zero_product(n):
    S = solve_special(catalog.sphere_pair(n))
    assert S.w_dim == 0 and S.status == "complete"
    assert S.solutions == [ProductTensor.zero(n)]


def test_r4_so3_solution_variety():
    S = solve_special(catalog.r4_so3_pair())
    assert S.w_dim == 3
    assert S.status == "complete"
    assert sorted(c.dim for c in S.components) == [1, 1, 1]
    assert S.contains(delta_product())
    assert delta_product() in S.solutions


def test_r4_so3_brute_force_membership():
    """Every integer point of W is special exactly when it lies on a component."""
    P = catalog.r4_so3_pair()
    S = solve_special(P)
    W = S.candidate_space
    rng = random.Random(3)
    points = [(0, 0, 0), (1, 0, 0), (0, 1, 1), (0, 0, 2), (0, 2, 2), (1, 1, 0)]
    points += [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(40)]
    for t in points:
        A = ProductTensor.zero(4)
        for c, w in zip(t, W):
            if c:
                A = A + c * w
        assert verify_special(P, A).ok == S.contains(A), t


def test_constraints_only_when_over_budget():
    S = solve_special(catalog.r4_so3_pair(), max_params=2)
    assert S.status == "constraints-only"
    assert S.constraint_strings


def test_delta_product_properties():
    P = catalog.r4_so3_pair()
    A = delta_product()
    assert verify_special(P, A).ok
    assert not any(x for a in torsion(A) for b in a for x in b)
    R = curvature(P, A)
    assert R == curvature(P) and R.is_zero()
    H = holonomy(P, A)
    assert H.dim == 0 and H.closed


def test_verify_reports_associator_witness():
    P = catalog.r4_so3_pair()
    W = candidate_space(P)
    rep = verify_special(P, W[0] + W[1] + W[2])
    assert not rep.associative
    w = rep.witnesses["associative"]
    assert len(w["indices"]) == 3 and w["associator"] != "0"


def test_verify_rejects_noninvariant():
    P = catalog.sphere_pair(2)
    A = ProductTensor(2, [[[1, 0], [0, 0]], [[0, 0], [0, 0]]])
    rep = verify_special(P, A)
    assert rep.commutative and not rep.invariant
    assert "invariant" in rep.witnesses


def test_holonomy_rejects_nonspecial():
    P = catalog.sphere_pair(2)
    with pytest.raises(Rejected) as exc:
        holonomy(P, ProductTensor(2, [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]))
    assert exc.value.witness


def test_poisson_from_center_gl2():
    L = catalog.gl(2)
    A = poisson_from_center(L, [1, 0, 0, 1])
    assert not A.is_zero()
    assert poisson_checks(L, A).ok
    K = killing(L)
    assert A(L.basis()[0], L.basis()[0]) == tuple(K[0, 0] * x for x in (1, 0, 0, 1))


def test_poisson_rejections():
    L = catalog.gl(2)
    with pytest.raises(Rejected):
        poisson_from_center(L, [0, 0, 0, 0])
    with pytest.raises(Rejected) as exc:
        poisson_from_center(L, [1, 0, 0, 0])
    assert exc.value.witness


def test_transport_to_double():
    L = catalog.gl(2)
    P, T = transport_to_double(L, poisson_from_center(L, [1, 0, 0, 1]))
    assert P.p == 4 and not T.is_zero()
    assert verify_special(P, T).ok
    S = solve_special(P)
    assert S.contains(T)


def brute_holonomy(P, A):
    L, p = P.algebra, P.p
    mats = []
    for u in P.m_basis:
        for v in P.m_basis:
            mats.append(P.restrict_ad(L.bracket(u, v)))
            for w in P.m_basis:
                x = L.bracket(L.bracket(u, v), w)
                mats.append(A.left(P.m_coords(x)))
    M = sympy.Matrix([[sympy.Rational(e.numerator, e.denominator) for e in m.entries] for m in mats]) if mats else sympy.zeros(0, p * p)
    rank = M.rank() if mats else 0
    return rank, mats


def holonomy_fixtures():
    out = [(catalog.sphere_pair(n), ProductTensor.zero(n)) for n in (2, 3, 4)]
    out.append((catalog.r4_so3_pair(), delta_product()))
    L = catalog.gl(2)
    out.append(transport_to_double(L, poisson_from_center(L, [1, 0, 0, 1])))
    return out


def test_holonomy_matches_brute_force():
    for P, A in holonomy_fixtures():
        H = holonomy(P, A)
        rank, mats = brute_holonomy(P, A)
        assert H.dim == rank
        for m in mats:
            assert H.generators.contains(m.entries)
        hm = H.matrices()
        for x in hm:
            for y in hm:
                assert H.generators.contains(x.commutator(y).entries)
        assert H.closed


def test_double_gl2_holonomy_dimension():
    L = catalog.gl(2)
    P, T = transport_to_double(L, poisson_from_center(L, [1, 0, 0, 1]))
    assert holonomy(P, T).dim == 6


def test_semi_symmetry_of_special_curvatures():
    for P, A in holonomy_fixtures():
        assert semi_symmetry_check(curvature(P, A)).ok


def test_curvature_antisymmetric():
    for P, A in holonomy_fixtures():
        assert curvature(P, A).antisymmetry_violations() == []


def test_canonical_curvature_formula():
    P = catalog.sphere_pair(2)
    L = P.algebra
    R = curvature(P)
    for i, u in enumerate(P.m_basis):
        for j, v in enumerate(P.m_basis):
            for l, w in enumerate(P.m_basis):
                expected = P.m_coords(tuple(-x for x in L.bracket(L.bracket(u, v), w)))
                assert R.operators[i][j].col(l) == expected


@pytest.mark.parametrize("name", ["r4-so3", "double-gl2"])
def test_trace_lemma_on_candidate_basis(name):
    P = PAIRS[name]()
    for A in candidate_space(P):
        assert trace_lemma_violations(P, A) == []


def test_power_identity_for_special_products():
    for P, A in holonomy_fixtures():
        assert power_identity_violations(A) == []


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["r4-so3", "double-gl2"]), st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_special_iff_torsion_free_with_canonical_curvature(name, coeffs):
    P = PAIRS[name]()
    W = candidate_space(P)
    A = ProductTensor.zero(P.p)
    for c, w in zip(coeffs, W):
        if c:
            A = A + Fraction(c) * w
    tors_free = not any(x for a in torsion(A) for b in a for x in b)
    assert verify_special(P, A).ok == (tors_free and curvature(P, A) == curvature(P))


def test_product_tensor_flat_roundtrip():
    A = delta_product()
    assert ProductTensor.from_flat(A.flat, 4) == A
