"""Symmetric pairs at the Lie algebra level.

A pair is a Lie algebra with an involutive automorphism; invariance is always
the infinitesimal one (``ad(h)``), which agrees with ``Ad(H)`` for connected
``H`` only.  For disconnected ``H`` the group condition is stronger and is not
checked here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import sympy

from .errors import ConsistencyError, Rejected, StructuralError
from .exact import (
    ZERO,
    Mat,
    Subspace,
    Vector,
    format_rational,
    is_positive_definite,
    nullspace,
    rational_roots,
    vec,
)
from .lie import (
    LieAlgebra,
    Representation,
    bracket_subspaces,
    centralizer_in,
    is_semisimple,
    killing,
)

DEFAULT_SEED = 20240601
DEFAULT_TRIALS = 64

CERTIFIED = "certified-irreducible"
PROBABLE = "probable-irreducible"
REDUCIBLE_SPLIT = "reducible-split"
REDUCIBLE_NONSPLIT = "reducible-nonsplit"
REDUCIBLE_IRRATIONAL = "reducible-irrational"


class Involution:
    """Linear map on the algebra; column j is the image of basis vector j."""

    def __init__(self, of: LieAlgebra, matrix):
        matrix = matrix if isinstance(matrix, Mat) else Mat(matrix)
        if matrix.shape != (of.dim, of.dim):
            raise StructuralError(f"involution of shape {matrix.shape} on a {of.dim}-dim algebra")
        self.of = of
        self.matrix = matrix

    def __call__(self, x: Sequence) -> Vector:
        return self.matrix @ vec(x)

    def violations(self) -> list[dict]:
        """Witnesses against sigma^2 = Id and the automorphism law."""
        L = self.of
        bad = []
        sq = self.matrix @ self.matrix
        ident = Mat.identity(L.dim)
        for i in range(L.dim):
            if sq.col(i) != ident.col(i):
                bad.append({"identity": "involutive", "indices": [i]})
                break
        basis = L.basis()
        images = [self(b) for b in basis]
        for i, j in combinations(range(L.dim), 2):
            if self(L.structure[i][j]) != L.bracket(images[i], images[j]):
                bad.append({"identity": "automorphism", "indices": [i, j]})
                break
        return bad


class SymmetricPair:
    """Canonical decomposition g = m + h of an involution.

    ``m_basis`` and ``h_basis`` are the echelon bases of m and h; they fix
    the m- and h-coordinates used everywhere downstream.
    """

    def __init__(self, algebra: LieAlgebra, involution: Involution, m: Subspace, h: Subspace):
        self.algebra = algebra
        self.involution = involution
        self.m = m
        self.h = h

    @property
    def m_basis(self) -> tuple[Vector, ...]:
        return self.m.basis

    @property
    def h_basis(self) -> tuple[Vector, ...]:
        return self.h.basis

    @property
    def p(self) -> int:
        return self.m.dim

    @property
    def q(self) -> int:
        return self.h.dim

    def __repr__(self):
        return f"SymmetricPair(dim g={self.algebra.dim}, dim m={self.p}, dim h={self.q})"

    def m_coords(self, v: Sequence) -> Vector:
        c = self.m.coordinates(v)
        if c is None:
            raise ConsistencyError("vector expected in m lies outside it", {"vector": [format_rational(x) for x in v]})
        return c

    def h_coords(self, v: Sequence) -> Vector:
        c = self.h.coordinates(v)
        if c is None:
            raise ConsistencyError("vector expected in h lies outside it", {"vector": [format_rational(x) for x in v]})
        return c

    def m_vector(self, coords: Sequence) -> Vector:
        return self.m.vector(coords)

    def h_vector(self, coords: Sequence) -> Vector:
        return self.h.vector(coords)

    def m_bracket_to_h(self, i: int, j: int) -> Vector:
        """[u_i, u_j] in g-coordinates (lies in h)."""
        return self.algebra.bracket(self.m_basis[i], self.m_basis[j])

    def restrict_ad(self, x: Sequence) -> Mat:
        """ad(x) restricted to m, in m-coordinates; x should lie in h."""
        cols = [self.m_coords(self.algebra.bracket(x, u)) for u in self.m_basis]
        return Mat.from_columns(cols, self.p) if cols else Mat.zeros(0, 0)

    def h_generators(self) -> list[Mat]:
        return [self.restrict_ad(a) for a in self.h_basis]

    def inclusion_violations(self) -> list[dict]:
        L = self.algebra
        bad = []
        checks = (("[h,h] in h", self.h, self.h, self.h), ("[h,m] in m", self.h, self.m, self.m), ("[m,m] in h", self.m, self.m, self.h))
        for label, U, V, target in checks:
            for a, u in enumerate(U.basis):
                for b, v in enumerate(V.basis):
                    if not target.contains(L.bracket(u, v)):
                        bad.append({"identity": label, "indices": [a, b]})
        return bad


def decompose(L: LieAlgebra, s: Involution) -> SymmetricPair:
    if s.of is not L and s.of != L:
        raise StructuralError("involution belongs to a different algebra")
    bad = s.violations()
    if bad:
        raise Rejected(f"not an involutive automorphism ({bad[0]['identity']})", bad[0])
    ident = Mat.identity(L.dim)
    m = nullspace(s.matrix + ident)
    h = nullspace(s.matrix - ident)
    if m.dim + h.dim != L.dim:
        raise ConsistencyError("eigenspaces of an involution do not span")
    pair = SymmetricPair(L, s, m, h)
    bad = pair.inclusion_violations()
    if bad:
        raise ConsistencyError("canonical decomposition violates the bracket inclusions", bad[0])
    return pair


# ---------------------------------------------------------------------------
# isotropy representation


def subalgebra(L: LieAlgebra, S: Subspace, names=None) -> LieAlgebra:
    """Structure constants of a subalgebra in the coordinates of S's echelon basis."""
    brackets = {}
    for i, j in combinations(range(S.dim), 2):
        c = S.coordinates(L.bracket(S.basis[i], S.basis[j]))
        if c is None:
            raise ConsistencyError("subspace is not closed under the bracket", {"indices": [i, j]})
        brackets[(i, j)] = c
    return LieAlgebra.from_brackets(S.dim, brackets, names)


@dataclass
class IsotropyData:
    rep: Representation
    kernel: Subspace  # inside g, contained in h
    faithful_rep: Representation
    quotient_basis: list[Vector]  # h-coordinates of the chosen complement of the kernel


def isotropy(P: SymmetricPair) -> IsotropyData:
    h_alg = subalgebra(P.algebra, P.h, [f"h{i}" for i in range(P.q)])
    images = P.h_generators()
    rep = Representation(h_alg, P.p, images)
    if not rep.is_homomorphism():
        raise ConsistencyError("isotropy map is not a representation", rep.homomorphism_violations()[0])

    # kernel in h-coordinates: coefficients killing every matrix entry
    flat = [m.entries for m in images]
    if P.q:
        rows = [[f[k] for f in flat] for k in range(P.p * P.p)]
        ker_h = nullspace(Mat(rows, P.q))
    else:
        ker_h = Subspace.zero(0)
    kernel = Subspace(P.algebra.dim, [P.h_vector(z) for z in ker_h.basis])

    comp = ker_h.complement_basis()
    # combined basis of h: complement first, kernel after
    combined = Mat.from_columns(list(comp) + list(ker_h.basis)) if P.q else Mat.zeros(0, 0)
    r = len(comp)
    qbrackets = {}
    for i, j in combinations(range(r), 2):
        br = h_alg.bracket(comp[i], comp[j])
        coeffs = _solve(combined, br)
        qbrackets[(i, j)] = coeffs[:r]
    quotient = LieAlgebra.from_brackets(r, qbrackets, [f"hbar{i}" for i in range(r)])
    faithful = Representation(quotient, P.p, [rep(c) for c in comp])
    if not faithful.is_homomorphism():
        raise ConsistencyError("faithful quotient is not a representation")
    return IsotropyData(rep, kernel, faithful, comp)


def _solve(cols: Mat, target: Sequence) -> Vector:
    n = cols.cols
    aug = Mat([list(row) + [t] for row, t in zip(cols, vec(target))], n + 1)
    r, _, pivots = aug.rref()
    if pivots and pivots[-1] == n:
        raise ConsistencyError("linear system has no solution")
    x = [ZERO] * n
    for i, p in enumerate(pivots):
        x[p] = r[i, n]
    return tuple(x)


# ---------------------------------------------------------------------------
# module splitting


def commutant(gens: Sequence[Mat], k: int) -> Subspace:
    """{X in End(Q^k) : X g = g X for every generator}, flattened row-major."""
    if not gens:
        return Subspace.full(k * k)
    rows = []
    for g in gens:
        # (g X - X g)[a][b] = sum_c g[a][c] X[c][b] - X[a][c] g[c][b]
        for a in range(k):
            for b in range(k):
                row = [ZERO] * (k * k)
                for c in range(k):
                    if g[a, c]:
                        row[c * k + b] += g[a, c]
                    if g[c, b]:
                        row[a * k + c] -= g[c, b]
                if any(row):
                    rows.append(row)
    if not rows:
        return Subspace.full(k * k)
    return nullspace(Mat(rows, k * k))


def enveloping_algebra(gens: Sequence[Mat], k: int) -> Subspace:
    """Unital associative algebra generated by ``gens`` (flattened)."""
    ident = Mat.identity(k)
    span = Subspace(k * k, [ident.entries])
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = g @ x
                if not span.contains(y.entries):
                    span = span + Subspace(k * k, [y.entries])
                    new.append(y)
        frontier = new
    return span


def trace_form_nondegenerate(E: Subspace, k: int) -> bool:
    """Dickson: a matrix algebra in characteristic 0 is semisimple iff its
    trace form is nondegenerate."""
    mats = [Mat.from_flat(b, k, k) for b in E.basis]
    n = len(mats)
    gram = [[(mats[a] @ mats[b]).trace() for b in range(n)] for a in range(n)]
    return Mat(gram, n).det() != 0


def _has_real_root(coeffs: Sequence) -> bool:
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], x)
    return poly.count_roots() > 0


def _fitting_split(c: Mat, lam) -> tuple[Subspace, Subspace] | None:
    """ker (c - lam)^k + im (c - lam)^k, if both parts are proper."""
    k = c.rows
    n = (c - lam * Mat.identity(k)).power(k)
    ker = nullspace(n)
    if ker.dim == 0 or ker.dim == k:
        return None
    img = Subspace(k, [n.col(j) for j in range(k)])
    return ker, img


def _restrict(gens: Sequence[Mat], V: Subspace) -> list[Mat]:
    out = []
    for g in gens:
        cols = []
        for b in V.basis:
            c = V.coordinates(g @ b)
            if c is None:
                raise ConsistencyError("summand is not invariant")
            cols.append(c)
        out.append(Mat.from_columns(cols, V.dim))
    return out


@dataclass
class SplitResult:
    summands: list[Subspace]
    certificates: list[str]
    semisimple: bool  # module completely reducible (Dickson criterion, exact)
    commutant_dims: list[int]
    seed: int
    notes: list[str] = field(default_factory=list)


def _split_once(gens: list[Mat], k: int, comm: Subspace, rng: random.Random | None, trials: int):
    """Try to split Q^k into two invariant pieces using the commutant."""
    ident = Mat.identity(k)
    candidates = [Mat.from_flat(b, k, k) for b in comm.basis]
    for c in candidates:
        if c == c[0, 0] * ident:
            continue
        for lam in rational_roots(c.charpoly()):
            parts = _fitting_split(c, lam)
            if parts:
                return parts
    if rng is None:
        return None
    for _ in range(trials):
        coeffs = [rng.randint(-5, 5) for _ in candidates]
        c = Mat.zeros(k, k)
        for a, m in zip(coeffs, candidates):
            if a:
                c = c + a * m
        for lam in rational_roots(c.charpoly()):
            parts = _fitting_split(c, lam)
            if parts:
                return parts
    return None


def split_module(R: Representation, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> SplitResult:
    """Decompose a module into invariant summands and grade each leaf.

    Leaves are split along generalized eigenspaces of commutant elements with
    rational eigenvalues, deterministically first, then by a seeded random
    search.  A leaf is certified irreducible when its enveloping algebra is
    semisimple and its commutant is a real division algebra of dimension 1
    or 2.
    """
    k = R.module_dim
    gens = [m for m in R.images if not m.is_zero()]
    rng = random.Random(seed)
    whole_E = enveloping_algebra(gens, k) if k else Subspace.zero(0)
    semisimple = True if k == 0 else trace_form_nondegenerate(whole_E, k)

    leaves: list[tuple[Subspace, str, int]] = []
    notes: list[str] = []
    stack = [Subspace.full(k)] if k else []
    while stack:
        V = stack.pop()
        local = [g for g in _restrict(gens, V) if not g.is_zero()]
        d = V.dim
        comm = commutant(local, d)
        parts = _split_once(local, d, comm, None, 0)
        if parts is None:
            cert = _certify(local, d, comm)
            if cert is None:
                parts = _split_once(local, d, comm, rng, trials)
                if parts is None:
                    cert = PROBABLE
        if parts is not None:
            for part in parts:
                stack.append(Subspace(k, [V.vector(c) for c in part.basis]))
            continue
        leaves.append((V, cert, comm.dim))

    leaves.sort(key=lambda t: (t[0].dim, t[0].pivots, t[0].basis))
    if not semisimple:
        notes.append("enveloping algebra has a nonzero radical: module is not completely reducible")
    return SplitResult(
        [v for v, _, _ in leaves],
        [c for _, c, _ in leaves],
        semisimple,
        [cd for _, _, cd in leaves],
        seed,
        notes,
    )


def _certify(gens: list[Mat], d: int, comm: Subspace) -> str | None:
    E = enveloping_algebra(gens, d)
    if not trace_form_nondegenerate(E, d):
        return REDUCIBLE_NONSPLIT
    if comm.dim == 1:
        return CERTIFIED
    if comm.dim == 2:
        ident = Mat.identity(d).entries
        other = next(Mat.from_flat(b, d, d) for b in comm.basis if Subspace(d * d, [ident, b]).dim == 2)
        # det(a I + b c) vanishes off the origin iff c has a real eigenvalue
        if _has_real_root(other.charpoly()):
            return REDUCIBLE_IRRATIONAL
        return CERTIFIED
    return None


# ---------------------------------------------------------------------------
# classification


@dataclass
class Classification:
    simple: bool
    semisimple: bool
    strongly_semisimple: bool
    decomposition: list[Subspace]  # summands of m, in g-coordinates
    confidence: str  # certified | probabilistic | undetermined
    certificates: list[str] = field(default_factory=list)
    decomposition_m: list[Subspace] = field(default_factory=list)  # same summands in m-coordinates
    reasons: list[str] = field(default_factory=list)
    seed: int = DEFAULT_SEED

    def report(self) -> dict:
        return {
            "flags": {
                "simple": self.simple,
                "semisimple": self.semisimple,
                "strongly_semisimple": self.strongly_semisimple,
            },
            "decomposition_dims": [s.dim for s in self.decomposition],
            "decomposition": [[[format_rational(x) for x in v] for v in s.basis] for s in self.decomposition_m],
            "certificates": list(self.certificates),
            "confidence": self.confidence,
            "reasons": list(self.reasons),
            "seed": self.seed,
        }


def classify(P: SymmetricPair, compact_h_assertion: bool = False, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> Classification:
    iso = isotropy(P)
    split = split_module(iso.rep, seed=seed, trials=trials)
    L = P.algebra
    summands_g = [Subspace(L.dim, [P.m_vector(c) for c in s.basis]) for s in split.summands]
    certs = split.certificates
    reasons: list[str] = []

    simple = P.p >= 1 and len(certs) == 1 and certs[0] == CERTIFIED
    if P.p <= 1:
        reasons.append(f"dim m = {P.p}: the uniqueness theorem for simple pairs assumes dim m > 1")
    semisimple = split.semisimple
    confidence = "certified"

    if compact_h_assertion and is_semisimple(L):
        reasons.append("semi-simple g with compact H asserted: strongly semi-simple by rule")
        return Classification(simple, True, True, summands_g, "certified", certs, split.summands, reasons, seed)

    if not semisimple:
        reasons.append("isotropy representation is not completely reducible")
        return Classification(False, False, False, summands_g, confidence, certs, split.summands, reasons, seed)

    zero_brackets = [i for i, s in enumerate(summands_g) if bracket_subspaces(L, s, s).dim == 0]
    if bracket_subspaces(L, P.m, P.m).dim == 0 and P.p:
        reasons.append("[m,m] = {0}")
    for i in zero_brackets:
        reasons.append(f"[m_{i}, m_{i}] = {{0}} for summand {i} (dim {summands_g[i].dim})")
    strongly = not zero_brackets

    if any(c == REDUCIBLE_IRRATIONAL for c in certs):
        reasons.append("a summand splits only over an irrational extension; decomposition into simple summands not computed")
        confidence = "undetermined"
    elif any(c == PROBABLE for c in certs):
        confidence = "probabilistic"
    elif not strongly:
        # with isomorphic summands another decomposition could avoid the zero brackets
        whole = commutant([m for m in iso.rep.images if not m.is_zero()], P.p).dim
        if whole != sum(split.commutant_dims):
            reasons.append("isomorphic summands present: other decompositions not excluded")
            confidence = "undetermined"
    return Classification(simple, semisimple, strongly, summands_g, confidence, certs, split.summands, reasons, seed)


def strong_decomposition_identities(P: SymmetricPair, parts: Sequence[Subspace]) -> list[dict]:
    """Violations of the identities a strongly semi-simple decomposition obeys.

    Checks [m_i,[m_j,m_l]] = 0 for i not in {j,l}, [m_i,[m_i,m_i]] = m_i and
    that m_i has no nonzero element commuting with [m_i,m_i].
    """
    L = P.algebra
    bad = []
    k = len(parts)
    brk = {(j, l): bracket_subspaces(L, parts[j], parts[l]) for j in range(k) for l in range(k)}
    for i in range(k):
        for j in range(k):
            for l in range(k):
                if i != j and i != l and bracket_subspaces(L, parts[i], brk[(j, l)]).dim:
                    bad.append({"identity": "cross-term", "indices": [i, j, l]})
        if bracket_subspaces(L, parts[i], brk[(i, i)]) != parts[i]:
            bad.append({"identity": "[m_i,[m_i,m_i]] = m_i", "indices": [i]})
        if centralizer_in(L, parts[i], brk[(i, i)]).dim:
            bad.append({"identity": "trivial centralizer", "indices": [i]})
    return bad


# ---------------------------------------------------------------------------
# Cartan involutions


def cartan_form(L: LieAlgebra, t: Involution) -> Mat:
    """Matrix of (u, v) -> -kappa(u, t v)."""
    return -(killing(L) @ t.matrix)


def is_cartan_involution(L: LieAlgebra, t: Involution) -> bool:
    bad = t.violations()
    if bad:
        raise Rejected(f"not an involutive automorphism ({bad[0]['identity']})", bad[0])
    form = cartan_form(L, t)
    if not form.is_symmetric():
        raise ConsistencyError("-kappa(u, t v) is not symmetric for an automorphism")
    return is_positive_definite(form)


def cartan_pair_checks(P: SymmetricPair, parts: Sequence[Subspace]) -> list[dict]:
    """Killing-orthogonality of m and h, and [m, p] = [p, p] per summand."""
    L = P.algebra
    K = killing(L)
    bad = []
    for a, u in enumerate(P.m_basis):
        for b, v in enumerate(P.h_basis):
            if sum((x * y for x, y in zip(u, K @ v)), ZERO):
                bad.append({"identity": "kappa(m,h) = 0", "indices": [a, b]})
    for i, part in enumerate(parts):
        if bracket_subspaces(L, P.m, part) != bracket_subspaces(L, part, part):
            bad.append({"identity": "[m,p] = [p,p]", "indices": [i]})
    return bad
