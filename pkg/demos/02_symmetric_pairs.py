"""
Symmetric pairs and their classification
========================================

An involution sigma of g splits it as g = m + h (the -1 and +1 eigenspaces).
The isotropy action of h on m decides whether the pair is simple,
semi-simple or strongly semi-simple.
"""

from specialconn import catalog
from specialconn.pairs import classify, isotropy

# the 2-sphere: so(3) with conjugation by J = diag(1, 1, -1)
sphere = catalog.sphere_pair(2)
print(sphere, "m basis:", sphere.m_basis)
C = classify(sphere)
print(C.report())

# R^4 x| SO(3): m = R^4 is abelian, so the pair is semi-simple but
# not strongly semi-simple; the isotropy splits m = R^3 + R
r4 = catalog.r4_so3_pair()
C = classify(r4)
print("flags:", C.simple, C.semisimple, C.strongly_semisimple)
print("summand dims:", [s.dim for s in C.decomposition], "certificates:", C.certificates)
print("reasons:", C.reasons)

# the isotropy representation acts faithfully here
print("isotropy kernel dim:", isotropy(r4).kernel.dim)

# the double of a simple algebra g + g with the swap is strongly semi-simple
C = classify(catalog.double_pair(catalog.sl(2)))
print("double sl(2) strongly semi-simple:", C.strongly_semisimple)

# randomized splitting is seeded; the seed travels with the report
print(classify(catalog.double_pair(catalog.gl(2)), seed=7).report()["seed"])
