"""Lie algebras given by structure constants.

``c[i][j]`` is the coordinate vector of ``[b_i, b_j]``.  The table is stored
densely for every ordered pair; antisymmetry is checked by
:func:`validate_lie`, never assumed, so malformed tables stay diagnosable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from .errors import StructuralError
from .exact import (
    ZERO,
    Mat,
    Subspace,
    Vector,
    format_rational,
    lincomb,
    nullspace,
    unit_vec,
    vec,
    zero_vec,
)


class LieAlgebra:
    def __init__(self, dim: int, basis_names: Sequence[str] | None, structure):
        self.dim = dim
        self.basis_names = tuple(basis_names) if basis_names is not None else tuple(f"b{i}" for i in range(dim))
        if len(self.basis_names) != dim:
            raise StructuralError(f"{len(self.basis_names)} basis names for dimension {dim}")
        rows = []
        for i in range(dim):
            if len(structure[i]) != dim:
                raise StructuralError("structure tensor is not dim x dim x dim")
            row = []
            for j in range(dim):
                v = vec(structure[i][j])
                if len(v) != dim:
                    raise StructuralError("structure tensor is not dim x dim x dim")
                row.append(v)
            rows.append(tuple(row))
        self.structure = tuple(rows)

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping[tuple[int, int], Sequence], basis_names=None) -> "LieAlgebra":
        """Build from the ``i < j`` brackets; the rest follows by antisymmetry."""
        c = [[zero_vec(dim) for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in brackets.items():
            v = vec(v)
            if i == j:
                raise StructuralError(f"bracket of b{i} with itself must not be given")
            c[i][j] = v
            c[j][i] = tuple(-x for x in v)
        return cls(dim, basis_names, c)

    @classmethod
    def abelian(cls, dim: int, basis_names=None) -> "LieAlgebra":
        return cls.from_brackets(dim, {}, basis_names)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.basis_names == other.basis_names and self.structure == other.structure

    def __hash__(self):
        return hash((self.dim, self.basis_names, self.structure))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, basis={list(self.basis_names)})"

    def basis(self) -> list[Vector]:
        return [unit_vec(self.dim, i) for i in range(self.dim)]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise StructuralError(f"vectors of length {len(x)}, {len(y)} for a {self.dim}-dim algebra")
        out = [ZERO] * self.dim
        c = self.structure
        for i, a in enumerate(x):
            if not a:
                continue
            ci = c[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, s in enumerate(ci[j]):
                    if s:
                        out[k] += ab * s
        return tuple(out)

    @cached_property
    def ad_basis(self) -> tuple[Mat, ...]:
        d = self.dim
        return tuple(Mat.from_columns([self.structure[i][j] for j in range(d)], d) if d else Mat.zeros(0, 0) for i in range(d))

    def pretty(self) -> str:
        lines = []
        for i, j in combinations(range(self.dim), 2):
            v = self.structure[i][j]
            if any(v):
                terms = " + ".join(f"{format_rational(a)}*{self.basis_names[k]}" for k, a in enumerate(v) if a)
                lines.append(f"[{self.basis_names[i]}, {self.basis_names[j]}] = {terms}")
        return "\n".join(lines) or "(abelian)"


@dataclass
class LieReport:
    valid: bool
    violations: list[dict] = field(default_factory=list)


def validate_lie(L: LieAlgebra) -> LieReport:
    """Check antisymmetry and the Jacobi identity on every basis triple."""
    d = L.dim
    c = L.structure
    bad: list[dict] = []
    for i in range(d):
        for j in range(i, d):
            s = tuple(a + b for a, b in zip(c[i][j], c[j][i]))
            if any(s):
                k = next(k for k, a in enumerate(s) if a)
                bad.append({
                    "identity": "antisymmetry",
                    "indices": [i, j],
                    "component": k,
                    "value": format_rational(s[k]),
                })
    basis = L.basis()
    for i in range(d):
        for j in range(d):
            for l in range(d):
                # [[b_i,b_j],b_l] + [[b_j,b_l],b_i] + [[b_l,b_i],b_j]
                s = lincomb(
                    (1, 1, 1),
                    (
                        L.bracket(c[i][j], basis[l]),
                        L.bracket(c[j][l], basis[i]),
                        L.bracket(c[l][i], basis[j]),
                    ),
                    d,
                )
                if any(s):
                    k = next(k for k, a in enumerate(s) if a)
                    bad.append({
                        "identity": "jacobi",
                        "indices": [i, j, l],
                        "component": k,
                        "value": format_rational(s[k]),
                    })
    return LieReport(not bad, bad)


def ad(L: LieAlgebra, x: Sequence) -> Mat:
    """Matrix of y -> [x, y]; column j is [x, b_j]."""
    x = vec(x)
    if len(x) != L.dim:
        raise StructuralError(f"vector of length {len(x)} for a {L.dim}-dim algebra")
    out = Mat.zeros(L.dim, L.dim)
    for i, a in enumerate(x):
        if a:
            out = out + a * L.ad_basis[i]
    return out


def killing(L: LieAlgebra) -> Mat:
    ads = L.ad_basis
    d = L.dim
    k = [[ZERO] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            k[i][j] = k[j][i] = (ads[i] @ ads[j]).trace()
    return Mat(k, d)


def is_semisimple(L: LieAlgebra) -> bool:
    """Cartan's criterion: the Killing form is nondegenerate."""
    if L.dim == 0:
        return True
    return killing(L).det() != 0


def bracket_subspaces(L: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    if U.ambient_dim != L.dim or V.ambient_dim != L.dim:
        raise StructuralError(f"subspaces of ambient dimension {U.ambient_dim}, {V.ambient_dim} in a {L.dim}-dim algebra")
    return Subspace(L.dim, [L.bracket(u, v) for u in U.basis for v in V.basis])


def centralizer_in(L: LieAlgebra, W: Subspace, U: Subspace) -> Subspace:
    """{w in W : [w, u] = 0 for all u in U}."""
    if W.ambient_dim != L.dim or U.ambient_dim != L.dim:
        raise StructuralError(f"subspaces of ambient dimension {W.ambient_dim}, {U.ambient_dim} in a {L.dim}-dim algebra")
    if not W.dim:
        return W
    if not U.dim:
        return W
    # unknown coefficients on W's basis; one block of rows per u
    rows = []
    for u in U.basis:
        images = [L.bracket(w, u) for w in W.basis]
        for k in range(L.dim):
            rows.append([img[k] for img in images])
    kernel = nullspace(Mat(rows, W.dim))
    return Subspace(L.dim, [W.vector(z) for z in kernel.basis])


def center(L: LieAlgebra) -> Subspace:
    full = Subspace.full(L.dim)
    return centralizer_in(L, full, full)


@dataclass
class SeriesResult:
    chain: list[Subspace]
    nilpotent: bool
    nilpotency_class: int | None

    def __iter__(self):
        return iter((self.chain, self.nilpotent, self.nilpotency_class))


def lower_central_series(L: LieAlgebra) -> SeriesResult:
    """g, [g,g], [g,[g,g]], ... until it reaches {0} or stops shrinking.

    The class is the index of the first zero term (abelian: 1).
    """
    g = Subspace.full(L.dim)
    chain = [g]
    for _ in range(L.dim + 1):
        if chain[-1].dim == 0:
            return SeriesResult(chain, True, len(chain) - 1)
        nxt = bracket_subspaces(L, g, chain[-1])
        if nxt == chain[-1]:
            return SeriesResult(chain, False, None)
        chain.append(nxt)
    raise AssertionError("lower central series failed to stabilize")  # unreachable by dimension count


class Representation:
    """Images of the basis of ``acting`` as matrices on a module."""

    def __init__(self, acting: LieAlgebra, module_dim: int, images: Sequence[Mat]):
        if len(images) != acting.dim:
            raise StructuralError(f"{len(images)} images for a {acting.dim}-dim algebra")
        for m in images:
            if m.shape != (module_dim, module_dim):
                raise StructuralError(f"image of shape {m.shape} on a {module_dim}-dim module")
        self.acting = acting
        self.module_dim = module_dim
        self.images = tuple(images)

    def __repr__(self):
        return f"Representation({self.acting.dim} -> gl({self.module_dim}))"

    def __call__(self, x: Sequence) -> Mat:
        out = Mat.zeros(self.module_dim, self.module_dim)
        for a, m in zip(vec(x), self.images):
            if a:
                out = out + a * m
        return out

    def homomorphism_violations(self) -> list[dict]:
        bad = []
        for i, j in combinations(range(self.acting.dim), 2):
            lhs = self(self.acting.structure[i][j])
            rhs = self.images[i].commutator(self.images[j])
            if lhs != rhs:
                bad.append({"identity": "homomorphism", "indices": [i, j]})
        return bad

    def is_homomorphism(self) -> bool:
        return not self.homomorphism_violations()


def adjoint_representation(L: LieAlgebra) -> Representation:
    return Representation(L, L.dim, L.ad_basis)


def matrix_lie_algebra(mats: Sequence[Mat], basis_names=None) -> LieAlgebra:
    """Structure constants of the span of linearly independent matrices.

    Raises StructuralError if the span is not closed under commutators.
    """
    n = len(mats)
    if not n:
        return LieAlgebra.abelian(0, basis_names)
    flat = [m.entries for m in mats]
    span = Subspace(len(flat[0]), flat)
    if span.dim != n:
        raise StructuralError("basis matrices are linearly dependent")
    # coordinates in the given (not echelon) basis: solve through the echelon basis
    to_given = Mat.from_columns(flat)
    brackets = {}
    for i, j in combinations(range(n), 2):
        comm = mats[i].commutator(mats[j]).entries
        if span.coordinates(comm) is None:
            raise StructuralError(f"commutator of basis matrices {i}, {j} leaves the span")
        brackets[(i, j)] = _solve_in_columns(to_given, comm)
    return LieAlgebra.from_brackets(n, brackets, basis_names)


def _solve_in_columns(cols: Mat, target: Sequence) -> Vector:
    """Unique x with cols @ x = target (columns independent, target in span)."""
    aug = Mat([list(r) + [t] for r, t in zip(cols, vec(target))], cols.cols + 1)
    r, _, pivots = aug.rref()
    x = [ZERO] * cols.cols
    for row_idx, p in enumerate(pivots):
        if p == cols.cols:
            raise StructuralError("target outside column span")
        x[p] = r[row_idx, cols.cols]
    return tuple(x)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra, suffixes=("_1", "_2")) -> LieAlgebra:
    d1, d2 = L1.dim, L2.dim
    d = d1 + d2
    c = [[zero_vec(d) for _ in range(d)] for _ in range(d)]
    for i in range(d1):
        for j in range(d1):
            c[i][j] = tuple(L1.structure[i][j]) + zero_vec(d2)
    for i in range(d2):
        for j in range(d2):
            c[d1 + i][d1 + j] = zero_vec(d1) + tuple(L2.structure[i][j])
    names = [n + suffixes[0] for n in L1.basis_names] + [n + suffixes[1] for n in L2.basis_names]
    return LieAlgebra(d, names, c)
