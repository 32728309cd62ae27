"""Small graph families used by the checks, tests and demos."""
from __future__ import annotations

import numpy as np

from .graph import WeightedMultigraph, build_graph


def path_graph(n: int, weight: float = 1.0) -> WeightedMultigraph:
    return build_graph(n, [(i, i + 1, weight) for i in range(n - 1)])


def cycle_graph(n: int, weight: float = 1.0) -> WeightedMultigraph:
    return build_graph(n, [(i, (i + 1) % n, weight) for i in range(n)])


def complete_graph(n: int, weight: float = 1.0) -> WeightedMultigraph:
    return build_graph(n, [(i, j, weight) for i in range(n) for j in range(i + 1, n)])


def star_graph(n: int, weight: float = 1.0) -> WeightedMultigraph:
    return build_graph(n, [(0, i, weight) for i in range(1, n)])


def triangle_chain(k: int, weight: float = 1.0) -> WeightedMultigraph:
    """``k`` triangles glued in a row, consecutive ones sharing one vertex."""
    edges = []
    for t in range(k):
        a, b, c = 2 * t, 2 * t + 1, 2 * t + 2
        edges += [(a, b, weight), (b, c, weight), (a, c, weight)]
    return build_graph(2 * k + 1, edges)


def epsilon_family(n: int, eps: float) -> WeightedMultigraph:
    """Complete graph with a unit edge 0-1 and weight ``eps`` everywhere else."""
    edges = [(i, j, 1.0 if (i, j) == (0, 1) else eps)
             for i in range(n) for j in range(i + 1, n)]
    return build_graph(n, edges)


def random_weight(rng, size=None, wmax: float = 2.0, wmin: float = 0.0):
    """Uniform on ``(wmin, wmax]``."""
    return wmax - rng.uniform(0.0, wmax - wmin, size)


def random_tree(n: int, rng=None, wmax: float = 2.0, wmin: float = 0.0) -> WeightedMultigraph:
    rng = np.random.default_rng(rng)
    edges = [(int(rng.integers(0, i)), i, float(random_weight(rng, wmax=wmax, wmin=wmin)))
             for i in range(1, n)]
    return build_graph(n, edges)


def random_connected_graph(n: int, rng=None, density: float = 0.3, wmax: float = 2.0,
                           loops: bool = False, parallel: bool = False) -> WeightedMultigraph:
    """Random spanning tree plus extra edges kept with probability ``density``.

    Vertex labels are shuffled so the tree is not always rooted at 0.
    """
    rng = np.random.default_rng(rng)
    perm = rng.permutation(n)
    edges = [(int(perm[rng.integers(0, i)]), int(perm[i])) for i in range(1, n)]
    present = {frozenset(e) for e in edges}
    for i in range(n):
        for j in range(i + 1, n):
            if frozenset((i, j)) not in present and rng.random() < density:
                edges.append((i, j))
    if parallel:
        edges += [edges[k] for k in rng.choice(len(edges), size=max(1, n // 5))]
    if loops:
        edges += [(int(v), int(v)) for v in rng.choice(n, size=max(1, n // 5), replace=False)]
    weights = random_weight(rng, len(edges), wmax)
    return build_graph(n, [(u, v, float(w)) for (u, v), w in zip(edges, weights)])
