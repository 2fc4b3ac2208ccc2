"""
Poisson structures and the double pair
======================================

A central element e0 of g gives the product u * v = kappa(u, v) e0, which is
commutative, associative and ad(g)-invariant.  Transported to m = {(u, -u)}
in g + g it becomes a special product that is not the canonical one.
"""

from specialconn import catalog
from specialconn.products import holonomy, poisson_checks, poisson_from_center, semi_symmetry_check, curvature, transport_to_double

gl2 = catalog.gl(2)
A = poisson_from_center(gl2, [1, 0, 0, 1])  # e0 = identity matrix
print(A)
print(poisson_checks(gl2, A).as_dict())

P, T = transport_to_double(gl2, A)
print(P, T)

H = holonomy(P, T)
print("holonomy dim:", H.dim, "closed under brackets:", H.closed)
print("curvature semi-symmetric:", semi_symmetry_check(curvature(P, T)).ok)
