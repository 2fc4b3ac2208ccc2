import pytest

from specialconn import catalog, io
from specialconn.catalog import UsageError, build
from specialconn.jordan import NonassocAlgebra, classify_algebra
from specialconn.lie import LieAlgebra, validate_lie
from specialconn.pairs import SymmetricPair

CASES = [
    ("so", {"n": 3}),
    ("so", {"n": 4}),
    ("sl", {"n": 3}),
    ("gl", {"n": 2}),
    ("heisenberg", {}),
    ("sphere-pair", {"n": 2}),
    ("sphere-pair", {"n": 6}),
    ("double-pair", {"base": "sl2"}),
    ("double-pair", {"base": "heisenberg"}),
    ("cartan-pair", {"n": 3}),
    ("r4-so3-pair", {}),
    ("zero-assoc", {"n": 3, "i1": 2, "i2": 3}),
    ("unital-line", {}),
]


@pytest.mark.parametrize("name,params", CASES)
def test_build_is_valid_and_pure(name, params):
    a = build(name, params)
    b = build(name, params)
    assert io.serialize(a.artifact) == io.serialize(b.artifact)
    art = a.artifact
    if isinstance(art, SymmetricPair):
        assert validate_lie(art.algebra).valid
        assert art.involution.violations() == []
        assert art.inclusion_violations() == []
    elif isinstance(art, LieAlgebra):
        assert validate_lie(art).valid
    else:
        assert isinstance(art, NonassocAlgebra)
        assert classify_algebra(art).jordan


def test_documented_examples():
    P = build("sphere-pair", {"n": 2}).artifact
    assert (P.algebra.dim, P.p, P.q) == (3, 2, 1)
    P = build("r4-so3-pair").artifact
    assert (P.algebra.dim, P.p, P.q) == (7, 4, 3)
    P = build("double-pair", {"base": "sl2"}).artifact
    assert P.algebra.dim == 6
    assert all(tuple(v[:3]) == tuple(-x for x in v[3:]) for v in P.m_basis)


def test_r4_so3_bracket_convention():
    L = catalog.r4_so3_algebra()
    e = L.basis()
    # [E01, e2] = e1 : E01 = e1 e2^T - e2 e1^T acting on translations
    assert L.bracket(e[4], e[1]) == e[0]
    assert not any(L.bracket(e[0], e[3]))
    assert not any(L.bracket(e[3], e[4]))


@pytest.mark.parametrize(
    "name,params",
    [("nope", {}), ("sphere-pair", {"n": 7}), ("sphere-pair", {"n": 1}), ("so", {"n": "x"}), ("double-pair", {"base": "e8"}), ("zero-assoc", {"i1": 1, "i2": 1}), ("so", {"m": 3})],
)
def test_usage_errors(name, params):
    with pytest.raises(UsageError):
        build(name, params)
