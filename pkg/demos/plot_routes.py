"""
Five ways to the same distance
==============================

The long walk distance can be computed from ratios of minors, from any
g-inverse of ``rho I - A``, from a single inverted submatrix, or as a
resistance distance on a reweighted graph. All of them agree.
"""

import numpy as np

from longwalk import verify
from longwalk.generators import random_connected_graph

g = random_connected_graph(25, rng=7, density=0.2)

###############################################################################
# Every route, keyed by name. ``sub(u,v)`` deletes row v and column u.
routes = verify.longwalk_routes(g, n_uv=3, seed=1)
ref = routes["det"].values
for name, d in routes.items():
    print(f"{name:12s} max relative deviation from det: {verify._max_relative(d.values, ref):.1e}")

###############################################################################
# When the graph is balanced (all weighted degrees equal) the reweighting is
# trivial and the long walk distance is the plain resistance distance.
from longwalk import laplacian_matrix, longwalk_det, resistance_distance
from longwalk.generators import cycle_graph

c6 = cycle_graph(6)
gap = np.abs(longwalk_det(c6).values - resistance_distance(laplacian_matrix(c6)).values).max()
print("C6: |long walk - resistance| =", gap)
