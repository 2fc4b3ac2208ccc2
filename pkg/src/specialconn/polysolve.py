"""Rational components of a system of homogeneous quadratics.

The solution set of homogeneous equations is a cone.  We split it into
linear subspaces by repeatedly choosing an equation with a rational linear
factor, restricting to the hyperplane of each such factor, and recursing.
Branches that end with no linear factor available are kept as residual
components (a subspace together with the equations still to be imposed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from .exact import Mat, Subspace, nullspace


@dataclass
class Component:
    subspace: Subspace
    residual: list[sympy.Poly] = field(default_factory=list)  # in the subspace's own parameters s_j

    @property
    def complete(self) -> bool:
        return not self.residual


def symbols(n: int, prefix: str = "t") -> list[sympy.Symbol]:
    return list(sympy.symbols(f"{prefix}0:{n}")) if n else []


def _to_fraction(c) -> Fraction:
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def primitive(poly: sympy.Poly) -> sympy.Poly | None:
    """Integer-cleared, content-free, positive leading coefficient; None if zero."""
    if poly.is_zero:
        return None
    _, prim = poly.clear_denoms(convert=True)
    prim = prim.primitive()[1]
    if prim.LC() < 0:
        prim = -prim
    return prim


def _restrict(polys: Sequence[sympy.Poly], S: Subspace, gens) -> tuple[list[sympy.Poly], list]:
    svars = symbols(S.dim, "s")
    subs = {}
    for i, t in enumerate(gens):
        subs[t] = sum((sympy.Rational(b[i].numerator, b[i].denominator) * s for b, s in zip(S.basis, svars)), sympy.Integer(0))
    out = []
    seen = set()
    for f in polys:
        expr = sympy.expand(f.as_expr().xreplace(subs))
        if expr == 0:
            continue
        g = primitive(sympy.Poly(expr, *svars)) if svars else None
        if g is None:
            if expr != 0:
                # nonzero constant: inconsistent branch (cannot happen for homogeneous input)
                out.append(sympy.Poly(expr, *gens))
            continue
        key = g.as_expr()
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out, svars


def _linear_factor_hyperplane(g: sympy.Poly, svars, S: Subspace) -> Subspace:
    coeffs = [_to_fraction(g.coeff_monomial(s)) for s in svars]
    kernel = nullspace(Mat([coeffs], len(svars)))
    return Subspace(S.ambient_dim, [S.vector(z) for z in kernel.basis])


def components(polys: Sequence[sympy.Poly], n: int, gens=None) -> list[Component]:
    """Decompose {t in Q^n : f(t) = 0 for all f} into rational linear pieces."""
    gens = gens or symbols(n)
    found: list[Component] = []

    def explore(S: Subspace):
        if S.dim == 0:
            found.append(Component(S))
            return
        restricted, svars = _restrict(polys, S, gens)
        if not restricted:
            found.append(Component(S))
            return
        if any(f.total_degree() == 0 for f in restricted):
            return
        choice = None
        for f in sorted(restricted, key=lambda f: (f.total_degree(), str(f.as_expr()))):
            _, factors = sympy.factor_list(f.as_expr(), *svars)
            if any(sympy.Poly(g, *svars).total_degree() == 1 for g, _ in factors):
                choice = factors
                break
        if choice is None:
            found.append(Component(S, restricted))
            return
        for g, _ in choice:
            gp = sympy.Poly(g, *svars)
            if gp.total_degree() == 1:
                explore(_linear_factor_hyperplane(gp, svars, S))
            else:
                # nonlinear rational factor: keep as residual on this branch
                found.append(Component(S, [gp] + [f for f in restricted if f.as_expr() != g]))

    explore(Subspace.full(n))
    return _prune(found)


def _prune(found: list[Component]) -> list[Component]:
    unique: list[Component] = []
    for c in found:
        if not any(c.subspace == u.subspace and c.complete == u.complete for u in unique):
            unique.append(c)
    complete = [c for c in unique if c.complete]
    kept = []
    for c in unique:
        covered = any(o is not c and o.subspace.contains_subspace(c.subspace) and (o.subspace != c.subspace or not c.complete) for o in complete)
        if not covered:
            kept.append(c)
    kept.sort(key=lambda c: (not c.complete, -c.subspace.dim, c.subspace.pivots, c.subspace.basis))
    return kept


def poly_record(f: sympy.Poly) -> dict:
    """{"monomials": [[exponents, coeff], ...]} with integer coefficients."""
    return {"monomials": [[list(m), int(c)] for m, c in sorted(f.terms())]}


def poly_string(f: sympy.Poly) -> str:
    return str(f.as_expr()).replace("**", "^")
