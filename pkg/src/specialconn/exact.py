"""Exact rational scalars, dense matrices and subspaces.

Everything here works over :class:`fractions.Fraction`.  Matrices are small
(desk scale) and dense; elimination skips zero entries so the sparse stacked
systems built elsewhere stay cheap.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import StructuralError

Vector = tuple  # tuple of Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {s!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    x = frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    c = frac(c)
    return tuple(c * a for a in v)


def is_zero(v: Sequence) -> bool:
    return not any(v)


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


# ---------------------------------------------------------------------------
# row reduction on plain lists


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (nonzero rows, pivots).

    Pivot column is the leftmost remaining column with a nonzero entry, pivot
    row the lowest-index remaining row holding one.
    """
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = rows[r] = [x * inv if x else x for x in prow]
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in support:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


class Mat:
    """Immutable dense rational matrix."""

    __slots__ = ("rows", "cols", "_e", "_hash")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        e = tuple(tuple(frac(x) for x in row) for row in data)
        if cols is None:
            cols = len(e[0]) if e else 0
        for row in e:
            if len(row) != cols:
                raise StructuralError("ragged matrix rows")
        self.rows = len(e)
        self.cols = cols
        self._e = e
        self._hash = None

    @classmethod
    def _raw(cls, e: tuple, rows: int, cols: int) -> "Mat":
        m = object.__new__(cls)
        m.rows, m.cols, m._e, m._hash = rows, cols, e, None
        return m

    @classmethod
    def zeros(cls, r: int, c: int) -> "Mat":
        return cls._raw(tuple((ZERO,) * c for _ in range(r)), r, c)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._raw(tuple(unit_vec(n, i) for i in range(n)), n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Mat":
        if not columns:
            return cls.zeros(nrows or 0, 0)
        return cls(list(zip(*columns)))

    @classmethod
    def from_flat(cls, flat: Sequence, rows: int, cols: int) -> "Mat":
        flat = vec(flat)
        if len(flat) != rows * cols:
            raise StructuralError("entry count does not match shape")
        return cls._raw(tuple(flat[i * cols:(i + 1) * cols] for i in range(rows)), rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple:
        """Row-major flat tuple."""
        return tuple(x for row in self._e for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> Vector:
        return self._e[i]

    def col(self, j: int) -> Vector:
        return tuple(row[j] for row in self._e)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._e]

    def __iter__(self):
        return iter(self._e)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._e))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._e)
        return f"Mat({self.rows}x{self.cols}: [{body}])"

    @property
    def T(self) -> "Mat":
        return Mat._raw(tuple(zip(*self._e)) if self.rows else tuple(() for _ in range(self.cols)), self.cols, self.rows)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise StructuralError(f"shape mismatch {self.shape} + {other.shape}")
        return Mat._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)), self.rows, self.cols)

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise StructuralError(f"shape mismatch {self.shape} - {other.shape}")
        return Mat._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)), self.rows, self.cols)

    def __neg__(self) -> "Mat":
        return Mat._raw(tuple(tuple(-a for a in r) for r in self._e), self.rows, self.cols)

    def __rmul__(self, c) -> "Mat":
        c = frac(c)
        return Mat._raw(tuple(tuple(c * a for a in r) for r in self._e), self.rows, self.cols)

    def __mul__(self, c) -> "Mat":
        return self.__rmul__(c)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise StructuralError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.cols
            oe = other._e
            out = []
            for r in self._e:
                acc = [ZERO] * ocols
                for k, a in enumerate(r):
                    if a:
                        for j, b in enumerate(oe[k]):
                            if b:
                                acc[j] += a * b
                out.append(tuple(acc))
            return Mat._raw(tuple(out), self.rows, ocols)
        v = other
        if len(v) != self.cols:
            raise StructuralError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self._e)

    def commutator(self, other: "Mat") -> "Mat":
        return self @ other - other @ self

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(self._e[i][j] == self._e[j][i] for i in range(self.rows) for j in range(i))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._e)

    def trace(self) -> Fraction:
        if not self.is_square():
            raise StructuralError("trace of a non-square matrix")
        return sum((self._e[i][i] for i in range(self.rows)), ZERO)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat._raw(tuple(tuple(self._e[i][j] for j in cols) for i in rows), len(rows), len(cols))

    def rref(self) -> tuple["Mat", int, list[int]]:
        reduced, pivots = _rref_rows([list(r) for r in self._e], self.cols)
        rank = len(reduced)
        full = [tuple(r) for r in reduced] + [(ZERO,) * self.cols] * (self.rows - rank)
        return Mat._raw(tuple(full), self.rows, self.cols), rank, pivots

    @property
    def rank(self) -> int:
        return len(_rref_rows([list(r) for r in self._e], self.cols)[0])

    def nullspace(self) -> "Subspace":
        return nullspace(self)

    def det(self) -> Fraction:
        if not self.is_square():
            raise StructuralError("determinant of a non-square matrix")
        n = self.rows
        a = [list(r) for r in self._e]
        d = ONE
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                return ZERO
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                d = -d
            p = a[c][c]
            d *= p
            for i in range(c + 1, n):
                f = a[i][c]
                if f:
                    f = f / p
                    for j in range(c, n):
                        if a[c][j]:
                            a[i][j] -= f * a[c][j]
        return d

    def power(self, k: int) -> "Mat":
        out = Mat.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def charpoly(self) -> list[Fraction]:
        """Coefficients of det(x I - M), highest degree first (Faddeev-LeVerrier)."""
        if not self.is_square():
            raise StructuralError("characteristic polynomial of a non-square matrix")
        n = self.rows
        coeffs = [ONE]
        acc = Mat.zeros(n, n)
        ident = Mat.identity(n)
        c = ONE
        for k in range(1, n + 1):
            acc = self @ (acc + c * ident) if k > 1 else self
            c = -acc.trace() / k
            coeffs.append(c)
        return coeffs


def nullspace(m: Mat) -> "Subspace":
    """Kernel of ``m`` as an echelon-canonical subspace."""
    reduced, pivots = _rref_rows([list(r) for r in m], m.cols)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return Subspace(m.cols, basis)


def rank_of(vectors: Sequence[Sequence], n: int) -> int:
    return len(_rref_rows([list(vec(v)) for v in vectors], n)[0])


def is_positive_definite(s: Mat) -> bool:
    """Sylvester's criterion: every leading principal minor is > 0."""
    if not s.is_square():
        raise StructuralError(f"positive definiteness needs a square matrix, got {s.shape}")
    if not s.is_symmetric():
        raise StructuralError("positive definiteness needs a symmetric matrix")
    idx = list(range(s.rows))
    return all(s.submatrix(idx[:k], idx[:k]).det() > 0 for k in range(1, s.rows + 1))


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Linear subspace of Q^n held by its reduced row-echelon basis.

    Equal subspaces have identical bases, so ``==`` and ``hash`` are
    representation-level.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows = []
        for v in vectors:
            v = list(vec(v))
            if len(v) != ambient_dim:
                raise StructuralError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append(v)
        reduced, pivots = _rref_rows(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in reduced)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [unit_vec(n, i) for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        vs = ", ".join("(" + ",".join(format_rational(x) for x in v) + ")" for v in self.basis)
        return f"Subspace({self.ambient_dim}; {vs})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise StructuralError(f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.dim or not other.dim:
            return Subspace.zero(self.ambient_dim)
        # a.x = b.y  <=>  [A^T | -B^T] (x, y) = 0
        cols = list(self.basis) + [vscale(-1, b) for b in other.basis]
        kernel = nullspace(Mat.from_columns(cols))
        k = self.dim
        return Subspace(self.ambient_dim, [lincomb(z[:k], self.basis, self.ambient_dim) for z in kernel.basis])

    __and__ = intersection

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coefficients of ``v`` in the echelon basis, or None if v is outside."""
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise StructuralError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        coeffs = tuple(v[p] for p in self.pivots)
        if lincomb(coeffs, self.basis, self.ambient_dim) != v:
            return None
        return coeffs

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(b) for b in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)

    def vector(self, coeffs: Sequence) -> Vector:
        return lincomb(vec(coeffs), self.basis, self.ambient_dim)

    def complement_basis(self) -> list[Vector]:
        """Standard unit vectors completing the basis (the non-pivot columns)."""
        piv = set(self.pivots)
        return [unit_vec(self.ambient_dim, i) for i in range(self.ambient_dim) if i not in piv]


def subspace_algebra(a: Subspace, b, op: str):
    """Dispatch for ``sum``, ``intersection`` and ``contains-vector``."""
    if op == "sum":
        return a + b
    if op == "intersection":
        return a & b
    if op == "contains-vector":
        if len(b) != a.ambient_dim:
            raise StructuralError(f"vector of length {len(b)} in ambient dimension {a.ambient_dim}")
        return a.contains(b)
    raise ValueError(f"unknown subspace operation {op!r}")


# ---------------------------------------------------------------------------
# rational roots


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def integer_coefficients(coeffs: Sequence) -> list[int]:
    """Scale a rational coefficient list to coprime integers."""
    coeffs = vec(coeffs)
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


def _horner(coeffs: Sequence[int], x: Fraction) -> Fraction:
    acc = ZERO
    for c in coeffs:
        acc = acc * x + c
    return acc


def rational_roots(coeffs: Sequence) -> list[Fraction]:
    """Distinct rational roots of a polynomial given highest degree first.

    Rational root theorem: candidates are +-p/q with p | a_0 and q | a_n,
    after clearing denominators and stripping the zero root.
    """
    ints = integer_coefficients(coeffs)
    while ints and ints[0] == 0:
        ints = ints[1:]
    if len(ints) <= 1:
        return []
    roots = []
    while ints[-1] == 0:
        ints = ints[:-1]
        if ZERO not in roots:
            roots.append(ZERO)
        if len(ints) == 1:
            return sorted(roots)
    lead, const = ints[0], ints[-1]
    for p in _divisors(const):
        for q in _divisors(lead):
            if gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and _horner(ints, cand) == 0:
                    roots.append(cand)
    return sorted(roots)
