"""Deterministic builders for the standard algebras and pairs.

Basis conventions (solver output is coordinate dependent, so these are
fixed):

* ``so(n)``: ``E_ij = e_i e_j^T - e_j e_i^T`` for ``i < j`` in lexicographic
  order, indices 0-based.
* ``sl(n)``: ``H_i = E_ii - E_(i+1)(i+1)``, then ``E_ij`` for ``i < j``, then
  ``E_ij`` for ``i > j``, each block lexicographic.  For n = 2 this is (h, e, f).
* ``gl(n)``: ``E_ij`` lexicographic.
* ``heisenberg``: ``x_1..x_n, y_1..y_n, z`` with ``[x_i, y_i] = z``.
* ``r4-so3``: the four translations ``e_1..e_4`` followed by the three
  ``so(3)`` generators acting on the first three coordinates.
* double pairs: the first copy of the base, then the second.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import StructuralError
from .exact import Mat
from .jordan import NonassocAlgebra
from .lie import LieAlgebra, direct_sum, matrix_lie_algebra
from .pairs import Involution, SymmetricPair, decompose


class UsageError(ValueError):
    """Unknown catalog name or parameter out of range."""


def elementary(n: int, i: int, j: int, scale=1) -> Mat:
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = scale
    return Mat(rows)


def so_basis(n: int) -> tuple[list[Mat], list[str]]:
    mats, names = [], []
    for i in range(n):
        for j in range(i + 1, n):
            mats.append(elementary(n, i, j) - elementary(n, j, i))
            names.append(f"E{i}{j}")
    return mats, names


def sl_basis(n: int) -> tuple[list[Mat], list[str]]:
    mats, names = [], []
    for i in range(n - 1):
        mats.append(elementary(n, i, i) - elementary(n, i + 1, i + 1))
        names.append(f"H{i}")
    for i in range(n):
        for j in range(i + 1, n):
            mats.append(elementary(n, i, j))
            names.append(f"E{i}{j}")
    for i in range(n):
        for j in range(i):
            mats.append(elementary(n, i, j))
            names.append(f"E{i}{j}")
    if n == 2:
        names = ["h", "e", "f"]
    return mats, names


def gl_basis(n: int) -> tuple[list[Mat], list[str]]:
    mats, names = [], []
    for i in range(n):
        for j in range(n):
            mats.append(elementary(n, i, j))
            names.append(f"E{i}{j}")
    return mats, names


def so(n: int) -> LieAlgebra:
    mats, names = so_basis(n)
    return matrix_lie_algebra(mats, names)


def sl(n: int) -> LieAlgebra:
    mats, names = sl_basis(n)
    return matrix_lie_algebra(mats, names)


def gl(n: int) -> LieAlgebra:
    mats, names = gl_basis(n)
    return matrix_lie_algebra(mats, names)


def heisenberg(n: int = 1) -> LieAlgebra:
    d = 2 * n + 1
    brackets = {}
    for i in range(n):
        v = [0] * d
        v[-1] = 1
        brackets[(i, n + i)] = v
    names = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)] + ["z"]
    return LieAlgebra.from_brackets(d, brackets, names)


def induced_involution(mats: list[Mat], fn: Callable[[Mat], Mat], algebra: LieAlgebra) -> Involution:
    """Matrix of X -> fn(X) on the span of ``mats`` (columns = images)."""
    flat = Mat.from_columns([m.entries for m in mats])
    cols = []
    for m in mats:
        target = fn(m).entries
        aug = Mat([list(r) + [t] for r, t in zip(flat, target)], len(mats) + 1)
        r, _, pivots = aug.rref()
        if pivots and pivots[-1] == len(mats):
            raise StructuralError("map does not preserve the span")
        x = [Fraction(0)] * len(mats)
        for k, p in enumerate(pivots):
            x[p] = r[k, len(mats)]
        cols.append(x)
    return Involution(algebra, Mat.from_columns(cols))


def sphere_pair(n: int) -> SymmetricPair:
    """so(n+1) with conjugation by J_n = diag(1, ..., 1, -1)."""
    mats, names = so_basis(n + 1)
    L = matrix_lie_algebra(mats, names)
    J = Mat([[(-1 if i == n else 1) if i == j else 0 for j in range(n + 1)] for i in range(n + 1)])
    return decompose(L, induced_involution(mats, lambda X: J @ X @ J, L))


def transpose_pair(n: int) -> SymmetricPair:
    """sl(n) with X -> -X^T."""
    mats, names = sl_basis(n)
    L = matrix_lie_algebra(mats, names)
    return decompose(L, induced_involution(mats, lambda X: -X.T, L))


def swap_involution(L: LieAlgebra, base_dim: int) -> Involution:
    d = base_dim
    rows = [[0] * (2 * d) for _ in range(2 * d)]
    for i in range(d):
        rows[i][d + i] = 1
        rows[d + i][i] = 1
    return Involution(L, Mat(rows))


def double_pair(base: LieAlgebra) -> SymmetricPair:
    D = direct_sum(base, base)
    return decompose(D, swap_involution(D, base.dim))


def r4_so3_algebra() -> LieAlgebra:
    """R^4 semidirect so(3) as affine 5x5 matrices [[X, u], [0, 0]]."""
    mats, names = [], []
    for i in range(4):
        mats.append(elementary(5, i, 4))
        names.append(f"e{i + 1}")
    for X, name in zip(*so_basis(3)):
        rows = [[0] * 5 for _ in range(5)]
        for a in range(3):
            for b in range(3):
                rows[a][b] = X[a, b]
        mats.append(Mat(rows))
        names.append(name)
    return matrix_lie_algebra(mats, names)


def r4_so3_pair() -> SymmetricPair:
    L = r4_so3_algebra()
    diag = [-1] * 4 + [1] * 3
    return decompose(L, Involution(L, Mat([[diag[i] if i == j else 0 for j in range(7)] for i in range(7)])))


def zero_assoc(n: int = 2, i1: int = 1, i2: int = 2) -> NonassocAlgebra:
    """e_{i1}.e_{i1} = e_{i2}, every other product zero (1-based indices)."""
    p = [[[0] * n for _ in range(n)] for _ in range(n)]
    p[i1 - 1][i1 - 1][i2 - 1] = 1
    return NonassocAlgebra(n, p)


def unital_line() -> NonassocAlgebra:
    return NonassocAlgebra(1, [[[1]]])


# ---------------------------------------------------------------------------

BASES = {
    "so3": lambda: so(3),
    "so4": lambda: so(4),
    "sl2": lambda: sl(2),
    "sl3": lambda: sl(3),
    "gl2": lambda: gl(2),
    "heisenberg": lambda: heisenberg(1),
}


@dataclass
class CatalogEntry:
    name: str
    params: dict = field(default_factory=dict)
    artifact: object = None


def _int_param(params: dict, key: str, default: int, lo: int, hi: int) -> int:
    raw = params.get(key, default)
    try:
        val = int(raw)
    except (TypeError, ValueError):
        raise UsageError(f"parameter {key} must be an integer, got {raw!r}") from None
    if not lo <= val <= hi:
        raise UsageError(f"parameter {key}={val} outside [{lo}, {hi}]")
    return val


_PARAMS = {
    "so": {"n"},
    "sl": {"n"},
    "gl": {"n"},
    "heisenberg": {"n"},
    "sphere-pair": {"n"},
    "double-pair": {"base"},
    "cartan-pair": {"n"},
    "r4-so3-pair": set(),
    "zero-assoc": {"n", "i1", "i2"},
    "unital-line": set(),
}

NAMES = tuple(_PARAMS)


def build(name: str, params: dict | None = None) -> CatalogEntry:
    params = dict(params or {})
    if name not in _PARAMS:
        raise UsageError(f"unknown catalog entry {name!r}; choose from {', '.join(NAMES)}")
    unknown = set(params) - _PARAMS[name]
    if unknown:
        raise UsageError(f"unknown parameter(s) for {name}: {', '.join(sorted(unknown))}")

    if name == "so":
        art = so(_int_param(params, "n", 3, 2, 8))
    elif name == "sl":
        art = sl(_int_param(params, "n", 2, 2, 6))
    elif name == "gl":
        art = gl(_int_param(params, "n", 2, 1, 6))
    elif name == "heisenberg":
        art = heisenberg(_int_param(params, "n", 1, 1, 6))
    elif name == "sphere-pair":
        art = sphere_pair(_int_param(params, "n", 2, 2, 6))
    elif name == "cartan-pair":
        art = transpose_pair(_int_param(params, "n", 2, 2, 5))
    elif name == "double-pair":
        base = str(params.get("base", "sl2"))
        if base not in BASES:
            raise UsageError(f"unknown base {base!r}; choose from {', '.join(BASES)}")
        art = double_pair(BASES[base]())
    elif name == "r4-so3-pair":
        art = r4_so3_pair()
    elif name == "zero-assoc":
        n = _int_param(params, "n", 2, 2, 8)
        i1 = _int_param(params, "i1", 1, 1, n)
        i2 = _int_param(params, "i2", 2, 1, n)
        if i1 == i2:
            raise UsageError("zero-assoc needs i1 != i2")
        art = zero_assoc(n, i1, i2)
    else:
        art = unital_line()
    return CatalogEntry(name, params, art)
