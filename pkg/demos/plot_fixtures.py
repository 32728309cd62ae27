"""
Long walk distances on three small graphs
=========================================

The two-vertex path, the triangle and the three-vertex path have closed
forms, which makes them a good first look at the library.
"""

import numpy as np

from longwalk import build_graph, longwalk_det, perron_eigenpair, adjacency_matrix

np.set_printoptions(precision=6, suppress=True)

###############################################################################
# A graph is a vertex count plus ``(u, v, weight)`` triples. Parallel edges and
# loops are allowed.
p2 = build_graph(2, [(0, 1, 1.0)])
k3 = build_graph(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])
p3 = build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)])

for name, g in [("P2", p2), ("K3", k3), ("P3", p3)]:
    print(name)
    print(longwalk_det(g).values)

###############################################################################
# On the path the middle vertex is a cut vertex, so the distance is additive
# through it: d(0,2) = d(0,1) + d(1,2) = 4 sqrt(2) / 3.
d = longwalk_det(p3)
print("d(0,1) + d(1,2) =", d[0, 1] + d[1, 2], " 4 sqrt(2)/3 =", 4 * np.sqrt(2) / 3)

###############################################################################
# The Perron pair drives everything. For P3 the spectral radius is sqrt(2)
# and the eigenvector is proportional to (1, sqrt 2, 1).
pr = perron_eigenpair(adjacency_matrix(p3))
print("rho =", pr.rho, " p / p[0] =", pr.p / pr.p[0])
