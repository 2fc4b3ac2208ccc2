"""
Jordan algebras and the TKK construction
========================================

g = A + span{L_x, [L_y, L_z]} + span{L, [L_x, L]} with grades -1, 0, +1.
"""

from specialconn import catalog
from specialconn.jordan import classify_algebra, tkk, tkk_special_product
from specialconn.lie import is_semisimple, lower_central_series
from specialconn.products import verify_special

# the 1-dim unital algebra gives a 3-dim semisimple algebra (a form of sl(2))
G = tkk(catalog.unital_line())
print(G.grade_dims(), "semisimple:", is_semisimple(G.lie))

# e1.e1 = e2 is commutative and 0-associative
A = catalog.zero_assoc()
print(classify_algebra(A).as_dict())
G = tkk(A)
print(G.grade_dims())
print(G.lie.pretty())

# the series is 4 > 2 > 1 > 0: [e1, [B, e1]] = [e1, F] = -e2 survives two brackets
chain, nilpotent, cls = lower_central_series(G.lie)
print("series dims:", [s.dim for s in chain], "class:", cls)

# (x + B) * (y + C) := x.y is a non-canonical special product
P, T = tkk_special_product(A)
print(T, verify_special(P, T).ok)
