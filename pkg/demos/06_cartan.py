"""
Cartan involutions
==================

tau is a Cartan involution when -kappa(u, tau v) is positive definite.  For a
Cartan pair m and h are Killing-orthogonal and [m, p] = [p, p] for every
summand p of the decomposition.
"""

from specialconn import catalog
from specialconn.exact import Mat
from specialconn.pairs import Involution, cartan_pair_checks, classify, decompose, is_cartan_involution

for n in (2, 3):
    P = catalog.transpose_pair(n)  # X -> -X^T on sl(n)
    print(f"sl({n}), -X^T:", is_cartan_involution(P.algebra, P.involution))
    print("  identities violated:", cartan_pair_checks(P, classify(P).decomposition))

for name, L in (("sl(2)", catalog.sl(2)), ("so(3)", catalog.so(3))):
    tau = Involution(L, Mat.identity(L.dim))
    print(f"{name}, Id:", is_cartan_involution(L, tau))
