"""
Lie algebras from structure constants
=====================================

Build a few matrix Lie algebras, check the axioms and look at the Killing
form, Cartan's criterion and the lower central series.
"""

from specialconn import catalog
from specialconn.lie import is_semisimple, killing, lower_central_series, validate_lie

# so(3) in the basis E01, E02, E12; the table is stored as c[i][j] = [b_i, b_j]
so3 = catalog.so(3)
print(so3.pretty())
print("axioms hold:", validate_lie(so3).valid)

# the Killing form is -2 * identity, so so(3) is semisimple (and compact)
print(killing(so3))
print("semisimple:", is_semisimple(so3))

# sl(2) in the basis (h, e, f): kappa(h,h) = 8, kappa(e,f) = 4
print(killing(catalog.sl(2)))

# gl(2) has a centre, so its Killing form is degenerate
print("gl(2) semisimple:", is_semisimple(catalog.gl(2)))

# the Heisenberg algebra [x, y] = z is 2-step nilpotent
chain, nilpotent, cls = lower_central_series(catalog.heisenberg(1))
print("Heisenberg series dims:", [s.dim for s in chain], "class", cls)

# breaking one entry of the table is caught with a witness
table = [[list(v) for v in row] for row in so3.structure]
table[0][1][2] += 1
broken = type(so3)(3, so3.basis_names, table)
print(validate_lie(broken).violations[0])
