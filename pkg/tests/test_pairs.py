import pytest

from specialconn import catalog
from specialconn.errors import Rejected
from specialconn.exact import Mat, Subspace
from specialconn.lie import LieAlgebra, Representation, bracket_subspaces, direct_sum, killing
from specialconn.pairs import (
    CERTIFIED,
    REDUCIBLE_IRRATIONAL,
    REDUCIBLE_NONSPLIT,
    Involution,
    cartan_pair_checks,
    classify,
    decompose,
    is_cartan_involution,
    isotropy,
    split_module,
    strong_decomposition_identities,
)


def identity_pair(L):
    return decompose(L, Involution(L, Mat.identity(L.dim)))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sphere_pair_dims(n):
    P = catalog.sphere_pair(n)
    assert (P.p, P.q) == (n, n * (n - 1) // 2)
    assert not P.inclusion_violations()


def test_double_pair_m_is_antidiagonal():
    P = catalog.double_pair(catalog.sl(2))
    assert (P.algebra.dim, P.p, P.q) == (6, 3, 3)
    for v in P.m_basis:
        assert tuple(v[:3]) == tuple(-x for x in v[3:])
    for v in P.h_basis:
        assert tuple(v[:3]) == tuple(v[3:])


def test_r4_so3_pair_dims():
    P = catalog.r4_so3_pair()
    assert (P.algebra.dim, P.p, P.q) == (7, 4, 3)


def test_m_and_h_satisfy_bracket_inclusions():
    for P in (catalog.sphere_pair(3), catalog.transpose_pair(3), catalog.double_pair(catalog.gl(2))):
        L = P.algebra
        assert P.h.contains_subspace(bracket_subspaces(L, P.m, P.m))
        assert P.m.contains_subspace(bracket_subspaces(L, P.h, P.m))
        assert P.h.contains_subspace(bracket_subspaces(L, P.h, P.h))
        assert (P.m + P.h).dim == L.dim


def test_non_involution_rejected():
    L = catalog.sl(2)
    with pytest.raises(Rejected) as exc:
        decompose(L, Involution(L, Mat([[1, 0, 0], [0, 2, 0], [0, 0, 1]])))
    assert exc.value.witness


def test_non_automorphism_rejected():
    L = catalog.sl(2)
    # swaps e and f but fixes h: involutive, not an automorphism
    with pytest.raises(Rejected) as exc:
        decompose(L, Involution(L, Mat([[1, 0, 0], [0, 0, 1], [0, 1, 0]])))
    assert exc.value.witness


def test_isotropy_kernel_of_r4_pair_is_trivial():
    iso = isotropy(catalog.r4_so3_pair())
    assert iso.kernel.dim == 0
    assert iso.faithful_rep.is_homomorphism()


def test_isotropy_kernel_detected():
    # h = span{z} of Heisenberg-like pair acts trivially on m
    L = catalog.heisenberg(1)
    P = decompose(L, Involution(L, Mat([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])))
    iso = isotropy(P)
    assert iso.kernel == P.h
    assert iso.faithful_rep.acting.dim == 0


def test_split_rotation_is_certified_irreducible():
    so2 = LieAlgebra.abelian(1)
    R = Representation(so2, 2, [Mat([[0, -1], [1, 0]])])
    res = split_module(R)
    assert res.certificates == [CERTIFIED]
    assert res.semisimple


def test_split_direct_sum_of_standard_reps():
    L = catalog.sl(2)
    mats, _ = catalog.sl_basis(2)

    def block(m):
        rows = [[0] * 4 for _ in range(4)]
        for a in range(2):
            for b in range(2):
                rows[a][b] = m[a, b]
                rows[a + 2][b + 2] = m[a, b]
        return Mat(rows)

    res = split_module(Representation(L, 4, [block(m) for m in mats]))
    assert [s.dim for s in res.summands] == [2, 2]
    assert res.certificates == [CERTIFIED, CERTIFIED]
    total = res.summands[0] + res.summands[1]
    assert total.dim == 4


def test_split_nilpotent_action_is_not_semisimple():
    R = Representation(LieAlgebra.abelian(1), 2, [Mat([[0, 1], [0, 0]])])
    res = split_module(R)
    assert not res.semisimple
    assert res.certificates == [REDUCIBLE_NONSPLIT]


def test_split_irrational_commutant():
    # x acts by a matrix with eigenvalues +-sqrt(2): splits only over Q(sqrt 2)
    R = Representation(LieAlgebra.abelian(1), 2, [Mat([[0, 2], [1, 0]])])
    res = split_module(R)
    assert res.certificates == [REDUCIBLE_IRRATIONAL]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sphere_pairs_are_simple(n):
    C = classify(catalog.sphere_pair(n))
    assert C.simple and C.semisimple and C.strongly_semisimple
    assert C.confidence == "certified"


def test_r4_so3_semisimple_not_strong():
    C = classify(catalog.r4_so3_pair())
    assert C.semisimple and not C.strongly_semisimple and not C.simple
    assert "[m,m] = {0}" in C.reasons
    assert [s.dim for s in C.decomposition] == [1, 3]
    assert C.confidence == "certified"


def test_double_sl2_strongly_semisimple():
    P = catalog.double_pair(catalog.sl(2))
    C = classify(P)
    assert C.simple and C.strongly_semisimple
    assert strong_decomposition_identities(P, C.decomposition) == []


def test_double_gl2_not_strong():
    C = classify(catalog.double_pair(catalog.gl(2)))
    assert C.semisimple and not C.strongly_semisimple
    assert sorted(s.dim for s in C.decomposition) == [1, 3]


def test_compact_h_rule():
    C = classify(catalog.sphere_pair(3), compact_h_assertion=True)
    assert C.strongly_semisimple
    assert any("compact" in r for r in C.reasons)


def test_classification_deterministic_under_seed():
    P = catalog.double_pair(catalog.gl(2))
    assert classify(P, seed=1).report()["decomposition"] == classify(P, seed=1).report()["decomposition"]


def test_degenerate_pairs_have_caveat():
    C = classify(identity_pair(catalog.so(3)))
    assert not C.simple
    assert any("dim m = 0" in r for r in C.reasons)


@pytest.mark.parametrize(
    "build,expected",
    [
        (lambda: catalog.transpose_pair(2), True),
        (lambda: catalog.transpose_pair(3), True),
        (lambda: identity_pair(catalog.sl(2)), False),
        (lambda: identity_pair(catalog.so(3)), True),
        (lambda: catalog.sphere_pair(2), False),  # compact so(3): only Id is Cartan
    ],
)
def test_cartan_involutions(build, expected):
    P = build()
    assert is_cartan_involution(P.algebra, P.involution) is expected
    if expected:
        C = classify(P)
        assert cartan_pair_checks(P, C.decomposition) == []


def test_cartan_pair_orthogonality_oracle():
    P = catalog.transpose_pair(3)
    K = killing(P.algebra)
    for u in P.m_basis:
        for v in P.h_basis:
            assert sum(a * b for a, b in zip(u, K @ v)) == 0


def test_cartan_rejects_non_automorphism():
    L = catalog.sl(2)
    with pytest.raises(Rejected):
        is_cartan_involution(L, Involution(L, Mat([[1, 0, 0], [0, 0, 1], [0, 1, 0]])))
