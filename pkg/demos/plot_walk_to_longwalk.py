"""
From walk distances to the long walk limit
==========================================

Walk distances ``d_t`` exist for ``0 < t < 1/rho``. Rescaled by
``2 / (n rho^2 (1/rho - t))`` they converge to the long walk distance as
``t`` approaches ``1/rho``.
"""

import numpy as np

from longwalk import (adjacency_matrix, long_walk_limit_estimate, longwalk_det,
                      perron_eigenpair, walk_distance)
from longwalk.generators import triangle_chain

g = triangle_chain(2, weight=0.8)
pr = perron_eigenpair(adjacency_matrix(g))
target = longwalk_det(g, pr).values
off = ~np.eye(g.n, dtype=bool)

###############################################################################
# Walk distances at a few values of t. Vertex 2 joins the two triangles, so
# d(0,4) = d(0,2) + d(2,4) for every t.
for frac in (0.2, 0.5, 0.9):
    d = walk_distance(g, pr, frac / pr.rho)
    print(f"t = {frac:.1f}/rho: d(0,4) - d(0,2) - d(2,4) = {d[0, 4] - d[0, 2] - d[2, 4]:+.2e}")

###############################################################################
# The scaled estimate at t_k = (1 - 2^-k) / rho approaches the limit, with the
# relative deviation roughly halving at each step.
for k in range(4, 13):
    t = (1 - 2.0 ** -k) / pr.rho
    est = long_walk_limit_estimate(g, pr, t).values
    dev = np.max(np.abs(est[off] - target[off]) / target[off])
    print(f"k = {k:2d}  max relative deviation {dev:.3e}")
