"""Nonassociative algebras and the Tits-Kantor-Koecher construction.

The TKK algebra of a Jordan algebra A is assembled in the basis order
``(g_-1, g_0, g_1)``: the basis of A, then an echelon basis of
``span{L_x, [L_y, L_z]}`` inside End(A), then an echelon basis of
``span{L, [L_x, L]}`` inside the symmetric bilinear maps A x A -> A.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Sequence

from .errors import ConsistencyError, Rejected, StructuralError
from .exact import ZERO, Mat, Subspace, Vector, format_rational, vec, zero_vec
from .lie import LieAlgebra, validate_lie


class NonassocAlgebra:
    """Finite-dimensional algebra with product tensor ``e_i . e_j = sum_k p[i][j][k] e_k``."""

    def __init__(self, dim: int, product, basis_names: Sequence[str] | None = None):
        self.dim = dim
        self.basis_names = tuple(basis_names) if basis_names is not None else tuple(f"e{i + 1}" for i in range(dim))
        rows = []
        for i in range(dim):
            if len(product[i]) != dim:
                raise StructuralError("product tensor is not dim x dim x dim")
            row = []
            for j in range(dim):
                v = vec(product[i][j])
                if len(v) != dim:
                    raise StructuralError("product tensor is not dim x dim x dim")
                row.append(v)
            rows.append(tuple(row))
        self.product = tuple(rows)

    def __eq__(self, other):
        if not isinstance(other, NonassocAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.product == other.product and self.basis_names == other.basis_names

    def __repr__(self):
        return f"NonassocAlgebra(dim={self.dim})"

    def mul(self, x: Sequence, y: Sequence) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise StructuralError(f"vectors of length {len(x)}, {len(y)} for a {self.dim}-dim algebra")
        out = [ZERO] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, s in enumerate(self.product[i][j]):
                    if s:
                        out[k] += ab * s
        return tuple(out)

    def basis(self) -> list[Vector]:
        return [tuple(Mat.identity(self.dim).row(i)) for i in range(self.dim)]

    def is_zero(self) -> bool:
        return not any(any(v) for row in self.product for v in row)


def left_mult(A: NonassocAlgebra, x: Sequence) -> Mat:
    """Matrix of y -> x.y."""
    x = vec(x)
    if len(x) != A.dim:
        raise StructuralError(f"vector of length {len(x)} for a {A.dim}-dim algebra")
    cols = [A.mul(x, b) for b in A.basis()]
    return Mat.from_columns(cols, A.dim) if cols else Mat.zeros(0, 0)


def right_mult(A: NonassocAlgebra, x: Sequence) -> Mat:
    """Matrix of y -> y.x."""
    x = vec(x)
    cols = [A.mul(b, x) for b in A.basis()]
    return Mat.from_columns(cols, A.dim) if cols else Mat.zeros(0, 0)


@dataclass
class AlgebraFlags:
    commutative: bool
    associative: bool
    jordan: bool
    zero_associative: bool
    symmetric_leibniz: bool
    witnesses: dict

    def as_dict(self) -> dict:
        return {
            "commutative": self.commutative,
            "associative": self.associative,
            "jordan": self.jordan,
            "zero_associative": self.zero_associative,
            "symmetric_leibniz": self.symmetric_leibniz,
        }


def _first(pred, items):
    for it in items:
        if pred(*it):
            return list(it)
    return None


def classify_algebra(A: NonassocAlgebra) -> AlgebraFlags:
    """Decide the defining identities on basis elements.

    The Jordan identity x.(x^2.y) = x^2.(x.y) is cubic in x; it is tested in
    its full linearization (x replaced by three independent basis vectors and
    symmetrized), which is equivalent in characteristic 0.
    """
    B = A.basis()
    n = A.dim
    mul = A.mul
    pairs = list(product(range(n), repeat=2))
    triples = list(product(range(n), repeat=3))
    witnesses = {}

    w = _first(lambda i, j: mul(B[i], B[j]) != mul(B[j], B[i]), pairs)
    commutative = w is None
    if w:
        witnesses["commutative"] = w

    w = _first(lambda i, j, k: mul(mul(B[i], B[j]), B[k]) != mul(B[i], mul(B[j], B[k])), triples)
    associative = w is None
    if w:
        witnesses["associative"] = w

    w = _first(lambda i, j, k: any(mul(mul(B[i], B[j]), B[k])) or any(mul(B[i], mul(B[j], B[k]))), triples)
    zero_associative = w is None
    if w:
        witnesses["zero_associative"] = w

    jordan = commutative
    if commutative:
        def broken(a, b, c, y):
            xs = (B[a], B[b], B[c])
            total = zero_vec(n)
            for p, q, r in permutations(range(3)):
                sq = mul(xs[q], xs[r])
                lhs = mul(xs[p], mul(sq, B[y]))
                rhs = mul(sq, mul(xs[p], B[y]))
                total = tuple(t + u - v for t, u, v in zip(total, lhs, rhs))
            return any(total)

        w = _first(broken, product(range(n), repeat=4))
        jordan = w is None
        if w:
            witnesses["jordan"] = w
    else:
        witnesses["jordan"] = witnesses["commutative"]

    Ls = [left_mult(A, b) for b in B]
    Rs = [right_mult(A, b) for b in B]
    w = _first(
        lambda i, j: Ls[i].commutator(Ls[j]) != left_mult(A, mul(B[i], B[j]))
        or Rs[i].commutator(Rs[j]) != right_mult(A, mul(B[j], B[i])),
        pairs,
    )
    symmetric_leibniz = w is None
    if w:
        witnesses["symmetric_leibniz"] = w

    return AlgebraFlags(commutative, associative, jordan, zero_associative, symmetric_leibniz, witnesses)


def symmetrize_leibniz(A: NonassocAlgebra) -> NonassocAlgebra:
    """x * y := x.y + y.x on a symmetric Leibniz algebra."""
    flags = classify_algebra(A)
    if not flags.symmetric_leibniz:
        raise Rejected("algebra is not symmetric Leibniz", {"indices": flags.witnesses["symmetric_leibniz"]})
    n = A.dim
    p = [[tuple(a + b for a, b in zip(A.product[i][j], A.product[j][i])) for j in range(n)] for i in range(n)]
    out = NonassocAlgebra(n, p, A.basis_names)
    out_flags = classify_algebra(out)
    if not (out_flags.commutative and out_flags.zero_associative):
        raise ConsistencyError("symmetrized product is not commutative 0-associative", out_flags.witnesses)
    return out


# ---------------------------------------------------------------------------
# TKK


@dataclass
class GradedLieAlgebra:
    lie: LieAlgebra
    grades: list[int]

    def grade_dims(self) -> dict[int, int]:
        return {g: self.grades.count(g) for g in (-1, 0, 1)}

    def involution_matrix(self) -> Mat:
        d = self.lie.dim
        return Mat([[(1 if self.grades[i] == 0 else -1) if i == j else 0 for j in range(d)] for i in range(d)])

    def grading_violations(self) -> list[dict]:
        bad = []
        L = self.lie
        for i in range(L.dim):
            for j in range(L.dim):
                target = self.grades[i] + self.grades[j]
                for k, a in enumerate(L.structure[i][j]):
                    if a and self.grades[k] != target:
                        bad.append({"identity": "grading", "indices": [i, j], "component": k})
        return bad


def _bilinear_apply(B: Sequence, n: int, x: Sequence, y: Sequence) -> Vector:
    """B stored flat as B[(i*n + j)*n + k] = coefficient of e_k in B(e_i, e_j)."""
    out = [ZERO] * n
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if not b:
                continue
            base = (i * n + j) * n
            for k in range(n):
                c = B[base + k]
                if c:
                    out[k] += a * b * c
    return tuple(out)


def _bilinear_from(fn, n: int) -> Vector:
    I = Mat.identity(n)
    flat = []
    for i in range(n):
        for j in range(n):
            flat.extend(fn(I.row(i), I.row(j)))
    return tuple(flat)


def tkk(A: NonassocAlgebra) -> GradedLieAlgebra:
    flags = classify_algebra(A)
    if not flags.jordan:
        raise Rejected("TKK construction needs a Jordan algebra", {"indices": flags.witnesses["jordan"]})
    n = A.dim
    B = A.basis()
    L = [left_mult(A, b) for b in B]

    g0 = Subspace(n * n, [m.entries for m in L] + [L[i].commutator(L[j]).entries for i in range(n) for j in range(i + 1, n)])

    def L_tensor(x, y):
        return A.mul(x, y)

    def LxL(a):
        La = left_mult(A, a)
        return lambda y, z: tuple(
            u - v for u, v in zip(La.commutator(left_mult(A, y)) @ vec(z), left_mult(A, A.mul(a, y)) @ vec(z))
        )

    g1 = Subspace(n ** 3, [_bilinear_from(L_tensor, n)] + [_bilinear_from(LxL(b), n) for b in B])

    r0, r1 = g0.dim, g1.dim
    dim = n + r0 + r1
    F = [Mat.from_flat(f, n, n) for f in g0.basis]
    Bs = list(g1.basis)

    def coords0(mat: Mat, where):
        c = g0.coordinates(mat.entries)
        if c is None:
            raise ConsistencyError("bracket left g_0", {"indices": where})
        return c

    def coords1(flat, where):
        c = g1.coordinates(flat)
        if c is None:
            raise ConsistencyError("bracket left g_1", {"indices": where})
        return c

    def embed(block: int, c) -> Vector:
        v = [ZERO] * dim
        off = (0, n, n + r0)[block]
        for k, a in enumerate(c):
            v[off + k] = a
        return tuple(v)

    brackets = {}
    # indices: g_-1 -> [0, n), g_0 -> [n, n+r0), g_1 -> [n+r0, dim)
    for a in range(r0):
        for x in range(n):
            # [F, x] = F(x); stored with the lower index first: [x, F] = -F(x)
            brackets[(x, n + a)] = embed(0, [-t for t in F[a] @ B[x]])
        for b in range(a + 1, r0):
            brackets[(n + a, n + b)] = embed(1, coords0(F[a].commutator(F[b]), [n + a, n + b]))
        for c in range(r1):
            Bc = Bs[c]
            FB = _bilinear_from(
                lambda x, y, Fa=F[a], Bc=Bc: tuple(
                    u - v - w
                    for u, v, w in zip(
                        Fa @ _bilinear_apply(Bc, n, x, y),
                        _bilinear_apply(Bc, n, Fa @ vec(x), y),
                        _bilinear_apply(Bc, n, x, Fa @ vec(y)),
                    )
                ),
                n,
            )
            brackets[(n + a, n + r0 + c)] = embed(2, coords1(FB, [n + a, n + r0 + c]))
    for c in range(r1):
        for x in range(n):
            # [B, x] = B(x, .) in g_0; stored as [x, B] = -B(x, .)
            cols = [_bilinear_apply(Bs[c], n, B[x], B[y]) for y in range(n)]
            Bx = Mat.from_columns(cols, n)
            brackets[(x, n + r0 + c)] = embed(1, [-t for t in coords0(Bx, [n + r0 + c, x])])

    names = list(A.basis_names) + [f"F{a}" for a in range(r0)] + [f"B{c}" for c in range(r1)]
    lie = LieAlgebra.from_brackets(dim, brackets, names)
    report = validate_lie(lie)
    if not report.valid:
        raise ConsistencyError("assembled TKK bracket fails the Lie axioms", report.violations[0])
    graded = GradedLieAlgebra(lie, [-1] * n + [0] * r0 + [1] * r1)
    bad = graded.grading_violations()
    if bad:
        raise ConsistencyError("assembled TKK bracket breaks the grading", bad[0])
    return graded


def tkk_pair(A: NonassocAlgebra):
    from .pairs import Involution, decompose

    G = tkk(A)
    return G, decompose(G.lie, Involution(G.lie, G.involution_matrix()))


def tkk_special_product(A: NonassocAlgebra):
    """The pair of tkk(A) and the product (x + B) * (y + C) := x.y on m."""
    from .products import ProductTensor, verify_special

    flags = classify_algebra(A)
    if not (flags.commutative and flags.zero_associative):
        key = "commutative" if not flags.commutative else "zero_associative"
        raise Rejected(f"special product needs a commutative 0-associative algebra ({key} fails)", {"indices": flags.witnesses[key]})
    G, P = tkk_pair(A)
    n = A.dim
    p = P.p
    alpha = [[[ZERO] * p for _ in range(p)] for _ in range(p)]
    # m-coordinates: the echelon basis of m is g_-1 first, then g_1
    for i in range(n):
        for j in range(n):
            xy = P.m_coords(tuple(A.product[i][j]) + zero_vec(G.lie.dim - n))
            alpha[i][j] = list(xy)
    T = ProductTensor(p, alpha)
    rep = verify_special(P, T)
    if not rep.ok:
        raise ConsistencyError("TKK product is not special", rep.as_dict())
    return P, T


def format_vec(v) -> list[str]:
    return [format_rational(x) for x in v]
