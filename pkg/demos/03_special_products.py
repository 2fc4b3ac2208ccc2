"""
Special products on R^4 x| SO(3)
================================

Special products (commutative, associative, ad(h)-invariant) are exactly the
special affine connections.  Here the candidate space W is 3-dimensional and
associativity cuts it down to three lines.
"""

from specialconn import catalog
from specialconn.products import ProductTensor, curvature, holonomy, solve_special, torsion, verify_special

P = catalog.r4_so3_pair()
S = solve_special(P)
print("dim W =", S.w_dim)
print("associativity constraints:", S.constraint_strings)
for comp in S.components:
    print("component of dim", comp.dim, comp.tensors)
print("status:", S.status)

# e_i * e_j = delta_ij e_4 (i, j <= 3) is one of the solution lines
A = ProductTensor(4, [[[1 if (i == j and i < 3 and k == 3) else 0 for k in range(4)] for j in range(4)] for i in range(4)])
print("special:", verify_special(P, A).ok, "in solution set:", S.contains(A))

# torsion-free with the canonical curvature (here zero), trivial holonomy
print("torsion zero:", not any(x for a in torsion(A) for b in a for x in b))
print("curvature is canonical:", curvature(P, A) == curvature(P))
print("holonomy dim:", holonomy(P, A).dim)

# a generic point of W is not associative; the witness names the basis triple
W = S.candidate_space
print(verify_special(P, W[0] + W[1] + W[2]).witnesses)

# on the spheres the only special product is zero
for n in (2, 3, 4):
    print(n, solve_special(catalog.sphere_pair(n)).solutions)
