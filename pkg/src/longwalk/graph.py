"""Weighted multigraphs and the matrices built from them."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .errors import InvalidEdge, NotConnected, PerronMismatch, SameVertex

PERRON_TOL = 1e-9


@dataclass(frozen=True)
class WeightedMultigraph:
    """Undirected multigraph on vertices ``0..n-1``.

    ``edges`` holds ``(u, v, w)`` triples; parallel edges are repeated
    entries and loops have ``u == v``. Instances are validated on creation
    and never mutated afterwards.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise InvalidEdge(f"vertex count must be an integer >= 2, got {self.n}")
        clean = []
        for e in self.edges:
            try:
                u, v, w = e
            except (TypeError, ValueError):
                raise InvalidEdge(f"edge {e!r} is not a (u, v, w) triple") from None
            if int(u) != u or int(v) != v or not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidEdge(f"edge {e!r} has a vertex id outside [0, {self.n})")
            w = float(w)
            if not np.isfinite(w) or w <= 0:
                raise InvalidEdge(f"edge {e!r} has non-positive or non-finite weight")
            clean.append((int(u), int(v), w))
        object.__setattr__(self, "edges", tuple(clean))
        seen = _reach(self.neighbors, 0, self.n)
        if len(seen) != self.n:
            missing = sorted(set(range(self.n)) - seen)
            raise NotConnected(f"graph is disconnected; unreachable from 0: {missing[:10]}")

    @cached_property
    def neighbors(self) -> tuple[frozenset, ...]:
        nbrs = [set() for _ in range(self.n)]
        for u, v, _ in self.edges:
            if u != v:
                nbrs[u].add(v)
                nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def _adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            a[u, v] += w
            if u != v:
                a[v, u] += w
        a.setflags(write=False)
        return a

    @property
    def weighted_degrees(self) -> np.ndarray:
        return self._adjacency.sum(axis=1)

    def is_balanced(self, tol: float = 1e-12) -> bool:
        deg = self.weighted_degrees
        return bool(deg.max() / deg.min() - 1.0 <= tol)


def _reach(neighbors, start, n, removed=None):
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in neighbors[x]:
            if y != removed and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def build_graph(n: int, edges: Iterable) -> WeightedMultigraph:
    """Validate and return a connected weighted multigraph.

    Raises
    ------
    InvalidEdge
        On a non-positive weight or an out-of-range vertex id.
    NotConnected
        If some vertex cannot be reached from vertex 0.
    """
    return WeightedMultigraph(n, tuple(tuple(e) for e in edges))


def adjacency_matrix(g: WeightedMultigraph) -> np.ndarray:
    """Aggregated adjacency: ``a[i, j]`` sums all i-j edge weights.

    A loop contributes its weight once to the diagonal.
    """
    return g._adjacency.copy()


def laplacian_matrix(g: WeightedMultigraph) -> np.ndarray:
    a = g._adjacency
    return np.diag(a.sum(axis=1)) - a


def para_laplacian(g: WeightedMultigraph, perron) -> np.ndarray:
    """Return ``rho * I - A`` for the Perron pair of ``A``.

    The diagonal is taken as ``sum_{j != i} a_ij p_j / p_i``, which equals
    ``rho - a_ii`` because ``A p = rho p``. Building it this way keeps
    ``p`` in the kernel to rounding, so the rounding in ``rho`` is not
    amplified at vertices where ``p`` is small.

    Raises PerronMismatch when ``perron`` does not annihilate ``rho I - A``,
    which means it was computed for some other matrix.
    """
    a = g._adjacency
    p = np.asarray(perron.p)
    if p.shape != (g.n,):
        raise PerronMismatch(f"Perron vector has shape {p.shape}, expected ({g.n},)")
    resid = np.abs(perron.rho * p - a @ p).max()
    if resid > PERRON_TOL * perron.rho * np.abs(p).max():
        raise PerronMismatch(f"||(rho I - A) p||_inf = {resid:.3e} exceeds tolerance")
    off = a - np.diag(np.diag(a))
    lp = -off
    np.fill_diagonal(lp, (off @ p) / p)
    return lp


def cut_components(g: WeightedMultigraph, j: int) -> np.ndarray:
    """Component label of every vertex once ``j`` is deleted (``-1`` at ``j``)."""
    labels = np.full(g.n, -1, dtype=int)
    comp = 0
    for s in range(g.n):
        if s == j or labels[s] >= 0:
            continue
        for x in _reach(g.neighbors, s, g.n, removed=j):
            labels[x] = comp
        comp += 1
    return labels


def separates(g: WeightedMultigraph, j: int, i: int, k: int) -> bool:
    """True iff every i-k path in ``g`` passes through ``j``."""
    if len({i, j, k}) < 3:
        raise SameVertex(f"separates() needs three distinct vertices, got j={j}, i={i}, k={k}")
    for x in (i, j, k):
        if not 0 <= x < g.n:
            raise InvalidEdge(f"vertex {x} outside [0, {g.n})")
    return k not in _reach(g.neighbors, i, g.n, removed=j)


def shortest_path_distance(g: WeightedMultigraph):
    """Hop-count distances over the simple skeleton (loops ignored)."""
    from .distances import DistanceMatrix

    skel = (g._adjacency > 0).astype(float)
    np.fill_diagonal(skel, 0.0)
    hops = shortest_path(skel, method="D", directed=False, unweighted=True)
    return DistanceMatrix.build(hops, "shortest-path")
