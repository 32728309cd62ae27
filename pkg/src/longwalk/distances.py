"""Walk distances, the long walk distance and resistance distance.

Every long walk routine here accepts an optional precomputed
:class:`~longwalk.linalg.PerronData`; when omitted it is computed from the
graph's adjacency matrix.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DisconnectedKernel,
    IndexOutOfRange,
    NonPositiveWalkMatrix,
    NotAGInverse,
    NotALaplacian,
    NumericalInconsistency,
    ParameterOutOfRange,
    SingularSubmatrix,
)
from .graph import WeightedMultigraph, adjacency_matrix, para_laplacian
from .linalg import (
    GINV_TOL,
    PerronData,
    delete_rows_cols,
    ginverse_kernel_shift,
    ginverse_residual,
    inverse,
    lu_factor,
    perron_eigenpair,
)

SYMMETRY_TOL = 1e-8
LAPLACIAN_TOL = 1e-9


@dataclass(frozen=True)
class DistanceMatrix:
    values: np.ndarray
    method: str
    params: dict = field(default_factory=dict)

    @classmethod
    def build(cls, values, method, params=None) -> "DistanceMatrix":
        """Symmetrize, zero the diagonal and freeze ``values``."""
        v = np.asarray(values, dtype=float)
        v = (v + v.T) / 2.0
        np.fill_diagonal(v, 0.0)
        v.setflags(write=False)
        return cls(v, method, dict(params or {}))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, ij):
        return float(self.values[ij])


def _perron(g, perron):
    return perron if perron is not None else perron_eigenpair(adjacency_matrix(g))


def zvector(perron: PerronData, i: int, j: int) -> np.ndarray:
    """Vector with ``1/p'_i`` at ``i``, ``-1/p'_j`` at ``j`` and zeros elsewhere."""
    z = np.zeros(perron.n)
    z[i] = 1.0 / perron.p_prime[i]
    z[j] = -1.0 / perron.p_prime[j]
    return z


def _quadratic_forms(ginv, p_prime) -> np.ndarray:
    # z(i,j)^T G z(i,j) for all pairs at once
    w = ginv / np.outer(p_prime, p_prime)
    d = np.diag(w)
    return d[:, None] + d[None, :] - w - w.T


# -- walk distances --------------------------------------------------------

def walk_matrix(g: WeightedMultigraph, perron: PerronData | None, t: float) -> np.ndarray:
    """``R_t = (I - tA)^{-1}``, the matrix of walk weights of ``tG``."""
    perron = _perron(g, perron)
    bound = 1.0 / perron.rho
    if not 0.0 < t < bound:
        raise ParameterOutOfRange(
            f"walk parameter t={t!r} must satisfy 0 < t < 1/rho = {bound:.12g}")
    r = inverse(np.eye(g.n) - t * adjacency_matrix(g))
    r = (r + r.T) / 2.0
    if not np.all(r > 0):
        raise NonPositiveWalkMatrix(f"R_t has non-positive entries at t={t!r}")
    return r


def walk_distance(g: WeightedMultigraph, perron: PerronData | None = None,
                  t: float = 0.5) -> DistanceMatrix:
    """``d_t(i, j) = -ln(r_ij / sqrt(r_ii r_jj))`` for ``0 < t < 1/rho``."""
    r = walk_matrix(g, perron, t)
    logr = np.log(r)
    half = np.diag(logr) / 2.0
    return DistanceMatrix.build(half[:, None] + half[None, :] - logr, "walk", {"t": t})


def long_walk_limit_estimate(g: WeightedMultigraph, perron: PerronData | None = None,
                             t: float = 0.5) -> DistanceMatrix:
    """Finite-``t`` value of ``2 d_t / (n rho^2 (1/rho - t))``.

    Tends to the long walk distance as ``t`` approaches ``1/rho`` from below.
    """
    perron = _perron(g, perron)
    d = walk_distance(g, perron, t).values
    scale = 2.0 / (g.n * perron.rho ** 2 * (1.0 / perron.rho - t))
    return DistanceMatrix.build(scale * d, "longwalk-limit", {"t": t})


# -- long walk distance ----------------------------------------------------

def minor_ratios(lp) -> np.ndarray:
    """``M[i, j] = det((L_ii)_jj) / det(L_ii)`` for ``j != i``.

    Uses ``det((L_ii)_jj) = det(L_ii) * inv(L_ii)[j, j]`` so that each
    ``L_ii`` is factored once.
    """
    n = lp.shape[0]
    out = np.zeros((n, n))
    for i in range(n):
        sub = delete_rows_cols(lp, [i], [i])
        f = lu_factor(sub.values)
        if f.singular:
            raise SingularSubmatrix(f"principal submatrix without vertex {i} is singular")
        out[i, list(sub.cols)] = np.diag(inverse(f))
    return out


def longwalk_det(g: WeightedMultigraph, perron: PerronData | None = None) -> DistanceMatrix:
    """Long walk distance from principal minors of ``rho I - A``."""
    perron = _perron(g, perron)
    lp = para_laplacian(g, perron)
    raw = minor_ratios(lp) / perron.p_prime[None, :] ** 2
    np.fill_diagonal(raw, 0.0)
    gap = np.abs(raw - raw.T)
    worst = float((gap / np.maximum(np.abs(raw), np.abs(raw.T)).clip(min=1e-300)).max())
    if worst > SYMMETRY_TOL:
        raise NumericalInconsistency(
            f"determinant formula asymmetric: max relative gap {worst:.3e}")
    return DistanceMatrix.build(raw, "longwalk-det", {"asymmetry": worst})


def build_h_matrix(g: WeightedMultigraph, perron: PerronData | None = None) -> np.ndarray:
    """Zero-diagonal g-inverse of ``rho I - A`` built from minor ratios.

    ``h_ij = -p'_i det((L_ii)_jj) / (2 p'_j det L_ii)`` off the diagonal.
    """
    perron = _perron(g, perron)
    lp = para_laplacian(g, perron)
    pp = perron.p_prime
    h = -0.5 * minor_ratios(lp) * pp[:, None] / pp[None, :]
    np.fill_diagonal(h, 0.0)
    return h


def longwalk_ginverse(g: WeightedMultigraph, perron: PerronData | None = None,
                      linv=None) -> DistanceMatrix:
    """Long walk distance as ``z^T G z`` for any g-inverse ``G`` of ``rho I - A``.

    Without ``linv`` the kernel-shift inverse ``(rho I - A + q q^T)^{-1}`` is
    used, ``q`` being the unit Perron vector.
    """
    perron = _perron(g, perron)
    lp = para_laplacian(g, perron)
    if linv is None:
        linv = ginverse_kernel_shift(lp, perron.kernel_unit)
        label = "kernel-shift"
    else:
        linv = np.asarray(linv, dtype=float)
        label = "supplied"
    resid = ginverse_residual(lp, linv)
    if resid > GINV_TOL:
        raise NotAGInverse(f"L G L != L: relative residual {resid:.3e}")
    return DistanceMatrix.build(_quadratic_forms(linv, perron.p_prime), "longwalk-ginv",
                                {"ginverse": label, "residual": resid})


def submatrix_ginverse(lp, u: int, v: int) -> np.ndarray:
    """n-by-n g-inverse holding ``inv(L without row v, col u)``.

    Row ``u`` and column ``v`` are zero.
    """
    sub = delete_rows_cols(lp, [v], [u])
    f = lu_factor(sub.values)
    if f.singular:
        raise SingularSubmatrix(f"submatrix without row {v} and column {u} is singular")
    full = np.zeros_like(lp)
    # inverse rows follow the surviving columns and vice versa
    full[np.ix_(sub.cols, sub.rows)] = inverse(f)
    return full


def longwalk_submatrix(g: WeightedMultigraph, perron: PerronData | None = None,
                       u: int = 0, v: int = 0) -> DistanceMatrix:
    """Long walk distance through the inverse of ``rho I - A`` minus row ``v`` and column ``u``.

    Any choice of ``u`` and ``v`` gives the same matrix.
    """
    perron = _perron(g, perron)
    for x in (u, v):
        if not 0 <= x < g.n:
            raise IndexOutOfRange(f"vertex {x} outside [0, {g.n})")
    lp = para_laplacian(g, perron)
    full = submatrix_ginverse(lp, u, v)
    return DistanceMatrix.build(_quadratic_forms(full, perron.p_prime), "longwalk-sub",
                                {"u": u, "v": v})


def transform_gprime(g: WeightedMultigraph, perron: PerronData | None = None) -> np.ndarray:
    """Adjacency ``P' A P'`` of the Perron-rescaled graph."""
    perron = _perron(g, perron)
    pp = perron.p_prime
    return pp[:, None] * adjacency_matrix(g) * pp[None, :]


def resistance_distance(lap, mode: str = "det", v: int = 0) -> DistanceMatrix:
    """Effective resistances of the network with Laplacian ``lap``.

    ``mode="det"`` takes ratios of minors with the denominator minor taken
    at vertex ``v`` (any vertex works by the matrix-tree theorem).
    ``mode="ginv"`` uses ``(L + 11^T/n)^{-1}``.
    """
    lap = np.asarray(lap, dtype=float)
    n = lap.shape[0]
    scale = np.abs(lap).sum(axis=1).max()
    if (np.abs(lap.sum(axis=1)).max() > LAPLACIAN_TOL * scale
            or np.abs(lap - lap.T).max() > LAPLACIAN_TOL * scale):
        raise NotALaplacian("matrix is not symmetric with zero row sums")
    if mode == "ginv":
        ginv = ginverse_kernel_shift(lap, np.full(n, 1.0 / np.sqrt(n)))
        return DistanceMatrix.build(_quadratic_forms(ginv, np.ones(n)), "resistance-ginv")
    if mode != "det":
        raise ValueError(f"unknown mode {mode!r}")

    den_sign, den_log = _slogdet(delete_rows_cols(lap, [v], [v]).values)
    if den_sign <= 0:
        raise DisconnectedKernel(f"reduced Laplacian at vertex {v} is singular")
    out = np.zeros((n, n))
    for i in range(n):
        sub = delete_rows_cols(lap, [i], [i])
        f = lu_factor(sub.values)
        if f.singular:
            raise DisconnectedKernel(f"reduced Laplacian at vertex {i} is singular")
        num_sign, num_log = _slogdet(f)
        out[i, list(sub.cols)] = num_sign * np.exp(num_log - den_log) * np.diag(inverse(f))
    return DistanceMatrix.build(out, "resistance-det", {"v": v})


def _slogdet(m):
    f = m if hasattr(m, "pivots") else lu_factor(m)
    if f.singular:
        return 0.0, -np.inf
    piv = f.pivots
    sign = f.sign * np.prod(np.sign(piv))
    return float(sign), float(np.log(np.abs(piv)).sum())


def gprime_laplacian(g: WeightedMultigraph, perron: PerronData | None = None) -> np.ndarray:
    a1 = transform_gprime(g, perron)
    return np.diag(a1.sum(axis=1)) - a1


def longwalk_via_gprime(g: WeightedMultigraph, perron: PerronData | None = None,
                        mode: str = "det") -> DistanceMatrix:
    """Long walk distance as resistance distance in the graph ``P' A P'``."""
    d = resistance_distance(gprime_laplacian(g, perron), mode=mode)
    return DistanceMatrix.build(d.values, "longwalk-gprime", {"mode": mode})


def rescaled_longwalk(g: WeightedMultigraph, perron: PerronData | None = None) -> DistanceMatrix:
    """``n ||p||_2^2`` times the long walk distance, ``p`` summing to one.

    Equals the resistance distance on balanced graphs and tends to 1 across
    an edge that carries all the weight of the graph.
    """
    perron = _perron(g, perron)
    factor = g.n * perron.p_norm2 ** 2
    d = longwalk_det(g, perron).values
    return DistanceMatrix.build(factor * d, "rescaled-longwalk", {"factor": factor})


def long_walk_distance(g: WeightedMultigraph, perron: PerronData | None = None) -> DistanceMatrix:
    """Default long walk distance (the determinant route)."""
    return longwalk_det(g, perron)
