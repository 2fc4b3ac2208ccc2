"""Special products on m and the connections they define.

A product is a rank-3 tensor in m-coordinates: ``alpha(u_i, u_j) =
sum_k a[i][j][k] u_k``.  Special means commutative, associative and
ad(h)-invariant; these are exactly the torsion-free invariant connections
whose curvature equals the canonical one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import sympy

from . import polysolve
from .errors import Rejected, StructuralError
from .exact import (
    ZERO,
    Mat,
    Subspace,
    Vector,
    format_rational,
    lincomb,
    nullspace,
    vec,
)
from .lie import LieAlgebra, bracket_subspaces, center, killing
from .pairs import SymmetricPair


class ProductTensor:
    def __init__(self, dim: int, alpha):
        rows = []
        for i in range(dim):
            if len(alpha[i]) != dim:
                raise StructuralError("product tensor is not dim x dim x dim")
            row = []
            for j in range(dim):
                v = vec(alpha[i][j])
                if len(v) != dim:
                    raise StructuralError("product tensor is not dim x dim x dim")
                row.append(v)
            rows.append(tuple(row))
        self.dim = dim
        self.alpha = tuple(rows)

    @classmethod
    def zero(cls, dim: int) -> "ProductTensor":
        return cls(dim, [[[0] * dim for _ in range(dim)] for _ in range(dim)])

    @classmethod
    def from_flat(cls, flat: Sequence, dim: int) -> "ProductTensor":
        flat = vec(flat)
        if len(flat) != dim ** 3:
            raise StructuralError(f"{len(flat)} entries for a rank-3 tensor of dimension {dim}")
        return cls(dim, [[flat[(i * dim + j) * dim:(i * dim + j + 1) * dim] for j in range(dim)] for i in range(dim)])

    @property
    def flat(self) -> Vector:
        return tuple(x for row in self.alpha for v in row for x in v)

    def __eq__(self, other):
        if not isinstance(other, ProductTensor):
            return NotImplemented
        return self.dim == other.dim and self.alpha == other.alpha

    def __hash__(self):
        return hash((self.dim, self.alpha))

    def __add__(self, other: "ProductTensor") -> "ProductTensor":
        return ProductTensor.from_flat([a + b for a, b in zip(self.flat, other.flat)], self.dim)

    def __rmul__(self, c) -> "ProductTensor":
        c = vec([c])[0]
        return ProductTensor.from_flat([c * a for a in self.flat], self.dim)

    def __repr__(self):
        terms = [
            f"u{i}*u{j}=" + "+".join(f"{format_rational(a)}u{k}" for k, a in enumerate(self.alpha[i][j]) if a)
            for i in range(self.dim)
            for j in range(self.dim)
            if any(self.alpha[i][j])
        ]
        return f"ProductTensor({self.dim}; {', '.join(terms) or '0'})"

    def is_zero(self) -> bool:
        return not any(self.flat)

    def __call__(self, u: Sequence, v: Sequence) -> Vector:
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, s in enumerate(self.alpha[i][j]):
                    if s:
                        out[k] += ab * s
        return tuple(out)

    def left(self, u: Sequence) -> Mat:
        """alpha_u: the matrix of v -> alpha(u, v)."""
        cols = [self(u, e) for e in Mat.identity(self.dim)]
        return Mat.from_columns(cols, self.dim) if cols else Mat.zeros(0, 0)

    def basis_left(self) -> list[Mat]:
        return [Mat.from_columns(list(self.alpha[i]), self.dim) for i in range(self.dim)]

    def power(self, u: Sequence, n: int) -> Vector:
        """n-fold product u * u * ... * u (n >= 1)."""
        out = vec(u)
        for _ in range(n - 1):
            out = self(u, out)
        return out


def _check_dim(P: SymmetricPair, A: ProductTensor):
    if A.dim != P.p:
        raise StructuralError(f"product of dimension {A.dim} on m of dimension {P.p}")


# ---------------------------------------------------------------------------
# candidate space


def invariant_commutative_products(p: int, generators: Sequence[Mat]) -> list[ProductTensor]:
    """Echelon basis of commutative products invariant under every generator.

    Unknowns are the p^3 tensor entries; rows encode a[i][j] = a[j][i] and
    X a(u_i, u_j) = a(X u_i, u_j) + a(u_i, X u_j).
    """
    n = p ** 3

    def idx(i, j, k):
        return (i * p + j) * p + k

    rows = []
    for i in range(p):
        for j in range(i + 1, p):
            for k in range(p):
                row = [ZERO] * n
                row[idx(i, j, k)] += 1
                row[idx(j, i, k)] -= 1
                rows.append(row)
    for X in generators:
        if X.is_zero():
            continue
        for i in range(p):
            for j in range(p):
                for k in range(p):
                    row = [ZERO] * n
                    for l in range(p):
                        if X[k, l]:
                            row[idx(i, j, l)] += X[k, l]
                        if X[l, i]:
                            row[idx(l, j, k)] -= X[l, i]
                        if X[l, j]:
                            row[idx(i, l, k)] -= X[l, j]
                    if any(row):
                        rows.append(row)
    if not rows:
        space = Subspace.full(n)
    else:
        space = nullspace(Mat(rows, n))
    return [ProductTensor.from_flat(b, p) for b in space.basis]


def candidate_space(P: SymmetricPair) -> list[ProductTensor]:
    return invariant_commutative_products(P.p, P.h_generators())


# ---------------------------------------------------------------------------
# verification


@dataclass
class ProductReport:
    commutative: bool
    associative: bool
    invariant: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.commutative and self.associative and self.invariant

    def as_dict(self) -> dict:
        return {
            "commutative": self.commutative,
            "associative": self.associative,
            "invariant": self.invariant,
            "witnesses": self.witnesses,
        }


def _first_nonzero(v: Sequence) -> tuple[int, str]:
    k = next(k for k, a in enumerate(v) if a)
    return k, format_rational(v[k])


def check_product(A: ProductTensor, generators: Sequence[Mat]) -> ProductReport:
    p = A.dim
    E = Mat.identity(p).tolist()
    E = [vec(e) for e in E]
    witnesses = {}

    commutative = True
    for i in range(p):
        for j in range(i + 1, p):
            d = tuple(a - b for a, b in zip(A.alpha[i][j], A.alpha[j][i]))
            if any(d):
                k, val = _first_nonzero(d)
                witnesses["commutative"] = {"indices": [i, j], "component": k, "difference": val}
                commutative = False
                break
        if not commutative:
            break

    associative = True
    for i in range(p):
        for j in range(p):
            uv = A.alpha[i][j]
            for l in range(p):
                d = tuple(a - b for a, b in zip(A(uv, E[l]), A(E[i], A.alpha[j][l])))
                if any(d):
                    k, val = _first_nonzero(d)
                    witnesses["associative"] = {"indices": [i, j, l], "component": k, "associator": val}
                    associative = False
                    break
            if not associative:
                break
        if not associative:
            break

    invariant = True
    for g, X in enumerate(generators):
        cols = [X.col(i) for i in range(p)]
        for i in range(p):
            for j in range(p):
                d = tuple(
                    a - b - c
                    for a, b, c in zip(X @ A.alpha[i][j], A(cols[i], E[j]), A(E[i], cols[j]))
                )
                if any(d):
                    k, val = _first_nonzero(d)
                    witnesses["invariant"] = {"generator": g, "indices": [i, j], "component": k, "defect": val}
                    invariant = False
                    break
            if not invariant:
                break
        if not invariant:
            break
    return ProductReport(commutative, associative, invariant, witnesses)


def verify_special(P: SymmetricPair, A: ProductTensor) -> ProductReport:
    _check_dim(P, A)
    return check_product(A, P.h_generators())


# ---------------------------------------------------------------------------
# torsion, curvature, semi-symmetry


def torsion(A: ProductTensor) -> tuple:
    """T[i][j][k] = a[i][j][k] - a[j][i][k]."""
    p = A.dim
    return tuple(
        tuple(tuple(a - b for a, b in zip(A.alpha[i][j], A.alpha[j][i])) for j in range(p)) for i in range(p)
    )


class CurvatureTensor:
    """R(u_i, u_j) u_l = sum_k r[i][j][l][k] u_k, also kept as operators R_ij."""

    def __init__(self, dim: int, operators: Sequence[Sequence[Mat]]):
        self.dim = dim
        self.operators = tuple(tuple(row) for row in operators)

    @classmethod
    def from_tensor(cls, dim: int, r) -> "CurvatureTensor":
        ops = [[Mat([[r[i][j][l][k] for l in range(dim)] for k in range(dim)], dim) for j in range(dim)] for i in range(dim)]
        return cls(dim, ops)

    @property
    def r(self) -> tuple:
        p = self.dim
        return tuple(
            tuple(tuple(tuple(self.operators[i][j][k, l] for k in range(p)) for l in range(p)) for j in range(p))
            for i in range(p)
        )

    def __eq__(self, other):
        if not isinstance(other, CurvatureTensor):
            return NotImplemented
        return self.dim == other.dim and self.operators == other.operators

    def __call__(self, x: Sequence, y: Sequence) -> Mat:
        out = Mat.zeros(self.dim, self.dim)
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b and not self.operators[i][j].is_zero():
                    out = out + (a * b) * self.operators[i][j]
        return out

    def is_zero(self) -> bool:
        return all(op.is_zero() for row in self.operators for op in row)

    def antisymmetry_violations(self) -> list[list[int]]:
        p = self.dim
        return [[i, j] for i in range(p) for j in range(i, p) if self.operators[i][j] != -self.operators[j][i]]


def curvature(P: SymmetricPair, A: ProductTensor | None = None) -> CurvatureTensor:
    """R(u,v)w = a(u, a(v,w)) - a(v, a(u,w)) - [[u,v],w]; A=None gives R^0."""
    p = P.p
    if A is None:
        A = ProductTensor.zero(p)
    _check_dim(P, A)
    lefts = A.basis_left()
    ops = [[None] * p for _ in range(p)]
    for i in range(p):
        ops[i][i] = Mat.zeros(p, p)
        for j in range(i + 1, p):
            R = lefts[i].commutator(lefts[j]) - P.restrict_ad(P.m_bracket_to_h(i, j))
            ops[i][j] = R
            ops[j][i] = -R
    # the diagonal a(u_i, a(u_i, .)) terms cancel exactly
    return CurvatureTensor(p, ops)


@dataclass
class SemiSymmetryReport:
    ok: bool
    witness: dict | None = None


def semi_symmetry_check(R: CurvatureTensor) -> SemiSymmetryReport:
    """[R(x,y), R(z,w)] = R(R(x,y)z, w) + R(z, R(x,y)w) on basis quadruples."""
    p = R.dim
    E = [vec(r) for r in Mat.identity(p).tolist()]
    for i in range(p):
        for j in range(p):
            Rij = R.operators[i][j]
            for a in range(p):
                Ra = Rij.col(a)
                for b in range(p):
                    lhs = Rij.commutator(R.operators[a][b])
                    rhs = R(Ra, E[b]) + R(E[a], Rij.col(b))
                    if lhs != rhs:
                        return SemiSymmetryReport(False, {"indices": [i, j, a, b]})
    return SemiSymmetryReport(True)


# ---------------------------------------------------------------------------
# holonomy


@dataclass
class HolonomyAlgebra:
    dim_m: int
    generators: Subspace  # inside End(m), matrices flattened row-major
    closed: bool

    @property
    def dim(self) -> int:
        return self.generators.dim

    def matrices(self) -> list[Mat]:
        return [Mat.from_flat(b, self.dim_m, self.dim_m) for b in self.generators.basis]


def is_closed_under_commutator(space: Subspace, p: int) -> bool:
    mats = [Mat.from_flat(b, p, p) for b in space.basis]
    return all(space.contains(x.commutator(y).entries) for x, y in combinations(mats, 2))


def holonomy(P: SymmetricPair, A: ProductTensor) -> HolonomyAlgebra:
    """ad_[m,m] + alpha_[[m,m],m], valid for special products only."""
    rep = verify_special(P, A)
    if not rep.ok:
        failed = next(k for k in ("commutative", "associative", "invariant") if not getattr(rep, k))
        raise Rejected(f"holonomy formula needs a special product ({failed} fails)", rep.witnesses.get(failed, {}))
    L = P.algebra
    p = P.p
    mm = bracket_subspaces(L, P.m, P.m)
    mmm = bracket_subspaces(L, mm, P.m)
    gens = [P.restrict_ad(x).entries for x in mm.basis]
    gens += [A.left(P.m_coords(w)).entries for w in mmm.basis]
    space = Subspace(p * p, gens)
    return HolonomyAlgebra(p, space, is_closed_under_commutator(space, p))


# ---------------------------------------------------------------------------
# solving for special products


@dataclass
class SolutionComponent:
    tensors: list[ProductTensor]  # echelon basis (in tensor coordinates) of a linear family of special products
    w_basis: list[Vector]  # the same family in candidate-space coordinates
    residual: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.residual

    @property
    def dim(self) -> int:
        return len(self.w_basis)


@dataclass
class SolutionSet:
    candidate_space: list[ProductTensor]
    quadratic_constraints: list[dict]
    constraint_strings: list[str]
    components: list[SolutionComponent]
    solutions: list[ProductTensor]
    status: str  # complete | complete-linear-subvariety | constraints-only

    @property
    def w_dim(self) -> int:
        return len(self.candidate_space)

    def contains(self, A: ProductTensor) -> bool:
        """Membership in one of the fully described rational components."""
        for comp in self.components:
            if comp.complete:
                n = A.dim ** 3
                if Subspace(n, [t.flat for t in comp.tensors]).contains(A.flat):
                    return True
        return A.is_zero()


def _assoc_pair(S: ProductTensor, T: ProductTensor) -> list[Vector]:
    """Coordinates of T(S(u_i,u_j),u_l) - T(u_i, S(u_j,u_l)) over all (i,j,l)."""
    p = S.dim
    E = [vec(r) for r in Mat.identity(p).tolist()]
    out = []
    for i in range(p):
        for j in range(p):
            for l in range(p):
                out.append(tuple(a - b for a, b in zip(T(S.alpha[i][j], E[l]), T(E[i], S.alpha[j][l]))))
    return out


def associativity_constraints(W: Sequence[ProductTensor], gens) -> list[sympy.Poly]:
    """Quadratics in the W-coordinates expressing associativity of sum t_s W_s."""
    w = len(W)
    if not w:
        return []
    pair = {}
    for s in range(w):
        for r in range(w):
            pair[(s, r)] = _assoc_pair(W[s], W[r])
    m = len(pair[(0, 0)])
    p = W[0].dim
    polys = []
    seen = set()
    for idx in range(m):
        for k in range(p):
            expr = 0
            for s in range(w):
                for r in range(w):
                    c = pair[(s, r)][idx][k]
                    if c:
                        expr += sympy.Rational(c.numerator, c.denominator) * gens[s] * gens[r]
            expr = sympy.expand(expr)
            if expr == 0:
                continue
            f = polysolve.primitive(sympy.Poly(expr, *gens))
            key = f.as_expr()
            if key not in seen:
                seen.add(key)
                polys.append(f)
    polys.sort(key=lambda f: sorted(f.terms()))
    return polys


def solve_special(P: SymmetricPair, max_params: int = 3) -> SolutionSet:
    W = candidate_space(P)
    p = P.p
    zero = ProductTensor.zero(p)
    w = len(W)
    if w == 0:
        return SolutionSet([], [], [], [], [zero], "complete")
    gens = polysolve.symbols(w)
    polys = associativity_constraints(W, gens)
    records = [polysolve.poly_record(f) for f in polys]
    strings = [polysolve.poly_string(f) for f in polys]

    def tensors_of(S: Subspace) -> tuple[list[ProductTensor], list[Vector]]:
        flats = [lincomb(b, [t.flat for t in W], p ** 3) for b in S.basis]
        canon = Subspace(p ** 3, flats)
        return [ProductTensor.from_flat(f, p) for f in canon.basis], list(S.basis)

    if not polys:
        tens, wb = tensors_of(Subspace.full(w))
        comp = SolutionComponent(tens, wb)
        return SolutionSet(W, records, strings, [comp], [zero] + tens, "complete-linear-subvariety")
    if w > max_params:
        return SolutionSet(W, records, strings, [], [zero], "constraints-only")

    comps = []
    for c in polysolve.components(polys, w, gens):
        tens, wb = tensors_of(c.subspace)
        comps.append(SolutionComponent(tens, wb, [polysolve.poly_string(f) for f in c.residual]))
    solutions = [zero]
    for c in comps:
        if c.complete:
            for t in c.tensors:
                if t not in solutions:
                    solutions.append(t)
    status = "complete" if all(c.complete for c in comps) else "constraints-only"
    return SolutionSet(W, records, strings, comps, solutions, status)


# ---------------------------------------------------------------------------
# Poisson structures on Lie algebras


def poisson_checks(L: LieAlgebra, A: ProductTensor) -> ProductReport:
    if A.dim != L.dim:
        raise StructuralError(f"product of dimension {A.dim} on a {L.dim}-dim algebra")
    return check_product(A, L.ad_basis)


def poisson_from_center(L: LieAlgebra, e0: Sequence) -> ProductTensor:
    """u * v := kappa(u, v) e0 for a nonzero central e0."""
    e0 = vec(e0)
    if len(e0) != L.dim:
        raise StructuralError(f"vector of length {len(e0)} for a {L.dim}-dim algebra")
    if not any(e0):
        raise Rejected("e0 must be nonzero", {"e0": [format_rational(x) for x in e0]})
    if not center(L).contains(e0):
        j = next(j for j in range(L.dim) if any(L.bracket(e0, L.basis()[j])))
        raise Rejected("e0 is not central", {"indices": [j], "bracket": [format_rational(x) for x in L.bracket(e0, L.basis()[j])]})
    K = killing(L)
    d = L.dim
    A = ProductTensor(d, [[[K[i, j] * x for x in e0] for j in range(d)] for i in range(d)])
    rep = poisson_checks(L, A)
    if not rep.ok:
        raise Rejected("constructed product is not Poisson", rep.witnesses)
    return A


def transport_to_double(L: LieAlgebra, A: ProductTensor):
    """Push a Poisson product on g to m0 = {(u, -u)} in the double pair."""
    from .catalog import double_pair

    rep = poisson_checks(L, A)
    if not rep.ok:
        failed = next(k for k in ("commutative", "associative", "invariant") if not getattr(rep, k))
        raise Rejected(f"product is not a Poisson structure ({failed} fails)", rep.witnesses.get(failed, {}))
    P = double_pair(L)
    d = L.dim

    def iota(u):
        return tuple(u) + tuple(-x for x in u)

    xs = [b[:d] for b in P.m_basis]  # m_basis[a] = iota(xs[a])
    p = P.p
    alpha = [[list(P.m_coords(iota(A(xs[a], xs[b])))) for b in range(p)] for a in range(p)]
    T = ProductTensor(p, alpha)
    rep = verify_special(P, T)
    if not rep.ok:
        raise Rejected("transported product is not special", rep.as_dict())
    return P, T


# ---------------------------------------------------------------------------
# identities satisfied by candidate and special products


def trace_lemma_violations(P: SymmetricPair, A: ProductTensor) -> list[dict]:
    """trace(alpha_[a,v]) = 0 for a in h, v in m (any invariant product)."""
    _check_dim(P, A)
    L = P.algebra
    out = []
    for a_idx, a in enumerate(P.h_basis):
        for v_idx, v in enumerate(P.m_basis):
            w = P.m_coords(L.bracket(a, v))
            t = A.left(w).trace()
            if t:
                out.append({"h_index": a_idx, "m_index": v_idx, "trace": format_rational(t)})
    return out


def power_identity_violations(A: ProductTensor, n_max: int | None = None) -> list[dict]:
    """alpha_{u^n} = (alpha_u)^n on basis vectors u, for 1 <= n <= n_max."""
    p = A.dim
    n_max = p if n_max is None else n_max
    out = []
    for i, u in enumerate(Mat.identity(p).tolist()):
        Lu = A.left(u)
        for n in range(1, n_max + 1):
            if A.left(A.power(u, n)) != Lu.power(n):
                out.append({"index": i, "n": n})
    return out
