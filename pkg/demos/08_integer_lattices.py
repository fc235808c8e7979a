"""Exact integer linear algebra backing the solvers.

Smith normal forms with unimodular transforms, lattice membership by
back-substitution, and GL(2, Z) matching of vector tuples.
"""

from linsusp.zlinalg import (gl2_match, lattice_member, matmul,
                             smith_normal_form)

m = [[2, 4], [6, 8]]
u, d, v = smith_normal_form(m)
print("M =", m)
print("U M V =", matmul(matmul(u, m), v), "with D =", d)

print("\nlattice membership:")
print("  (4,3) in <(2,0), (0,3)>:", lattice_member([4, 3], [[2, 0], [0, 3]]))
print("  (1,0) in <(2,0), (0,3)>:", lattice_member([1, 0], [[2, 0], [0, 3]]))

print("\nGL(2, Z) matching:")
print("  (e1,e2) -> (e2,e1):", gl2_match([((1, 0), (0, 1)),
                                          ((0, 1), (1, 0))]))
print("  (e1,e2) -> (2e1,e2):", gl2_match([((1, 0), (2, 0)),
                                           ((0, 1), (0, 1))]))
