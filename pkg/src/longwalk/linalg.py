"""Dense kernels: Perron pair, LU determinant/solve, labeled deletion, g-inverses."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import (
    IndexOutOfRange,
    NoConvergence,
    NonPositiveEigenvector,
    SingularMatrix,
    SingularShift,
)

PIVOT_TOL = 1e-12
PERRON_STEP_TOL = 1e-13
PERRON_POLISH_TOL = 1e-14
PERRON_RESID_TOL = 1e-10
GINV_TOL = 1e-9


@dataclass(frozen=True)
class PerronData:
    """Perron root and vector of a nonnegative irreducible symmetric matrix.

    ``p`` is normalized to unit 1-norm (its entries sum to one); ``p_prime``
    is the rescaling ``sqrt(n) * p / ||p||_2`` whose squared 2-norm is ``n``.
    """

    rho: float
    p: np.ndarray
    p_norm2: float
    p_prime: np.ndarray
    iterations: int = 0

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def kernel_unit(self) -> np.ndarray:
        """Unit 2-norm Perron vector."""
        return self.p / self.p_norm2


def perron_eigenpair(a, max_iter: int | None = None) -> PerronData:
    """Perron pair by power iteration on the shifted matrix ``A + sigma I``.

    The shift ``sigma`` is the largest row sum, so ``rho + sigma`` strictly
    dominates even when ``A`` is bipartite and ``-rho`` is also an
    eigenvalue. Iteration starts from the all-ones vector and converges when
    the relative change of the iterate drops to 1e-13 in the max norm; it then
    continues, within another ``max_iter`` steps, until every component
    changes by at most 1e-14 of itself.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if a.ndim != 2 or a.shape != (n, n):
        raise ValueError("adjacency must be square")
    if max_iter is None:
        max_iter = int(100 * n * math.log(n + 1))
    sigma = a.sum(axis=1).max()
    shifted = a + sigma * np.eye(n)

    x = np.ones(n) / n
    for it in range(1, max_iter + 1):
        y = shifted @ x
        y /= y.sum()
        change = np.abs(y - x).max() / np.abs(y).max()
        x = y
        if change <= PERRON_STEP_TOL:
            break
    else:
        raise NoConvergence(f"power iteration did not converge in {max_iter} steps")

    # The max-norm test leaves small components accurate only relative to the
    # largest one. The products are sums of nonnegative terms, so iterating on
    # until each component settles recovers them to near machine precision.
    for _ in range(max_iter):
        if not np.all(x > 0):
            break
        y = shifted @ x
        y /= y.sum()
        change = float(np.max(np.abs(y - x) / y))
        x = y
        it += 1
        if change <= PERRON_POLISH_TOL:
            break

    if not np.all(x > 0):
        raise NonPositiveEigenvector("Perron iterate has non-positive entries")
    ax = a @ x
    rho = float(x @ ax / (x @ x))
    resid = np.abs(ax - rho * x).max()
    if resid > PERRON_RESID_TOL * rho * x.max():
        raise NoConvergence(f"Perron residual {resid:.3e} too large after {it} steps")
    norm2 = float(np.linalg.norm(x))
    return PerronData(rho=rho, p=x, p_norm2=norm2,
                      p_prime=math.sqrt(n) * x / norm2, iterations=it)


# -- LU --------------------------------------------------------------------

@dataclass(frozen=True)
class LUFactorization:
    lu: np.ndarray
    piv: np.ndarray
    sign: float
    singular: bool
    norm: float

    @property
    def order(self) -> int:
        return self.lu.shape[0]

    @property
    def pivots(self) -> np.ndarray:
        return np.diag(self.lu)


def lu_factor(m) -> LUFactorization:
    """Partial-pivoting LU; flags (rather than raises on) singular input.

    The flag is set when some pivot has magnitude at most
    ``1e-12 * ||m||_inf``.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    k = m.shape[0]
    if k == 0:
        return LUFactorization(m.copy(), np.zeros(0, dtype=np.int32), 1.0, False, 0.0)
    norm = float(np.abs(m).sum(axis=1).max())
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(m, check_finite=True)
    swaps = np.count_nonzero(piv != np.arange(k))
    sign = -1.0 if swaps % 2 else 1.0
    singular = bool(np.any(np.abs(np.diag(lu)) <= PIVOT_TOL * norm))
    return LUFactorization(lu, piv, sign, singular, norm)


def determinant(m) -> float:
    f = m if isinstance(m, LUFactorization) else lu_factor(m)
    if f.singular:
        return 0.0
    return float(f.sign * np.prod(f.pivots))


def solve(lu: LUFactorization, b) -> np.ndarray:
    if lu.singular:
        raise SingularMatrix("matrix is numerically singular")
    b = np.asarray(b, dtype=float)
    if lu.order == 0:
        return b.copy()
    return sla.lu_solve((lu.lu, lu.piv), b)


def inverse(m) -> np.ndarray:
    f = m if isinstance(m, LUFactorization) else lu_factor(m)
    return solve(f, np.eye(f.order))


# -- labeled submatrices ---------------------------------------------------

@dataclass(frozen=True)
class LabeledMatrix:
    """A matrix whose rows and columns remember original vertex ids."""

    values: np.ndarray
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    @classmethod
    def wrap(cls, m) -> "LabeledMatrix":
        if isinstance(m, LabeledMatrix):
            return m
        m = np.asarray(m, dtype=float)
        return cls(m, tuple(range(m.shape[0])), tuple(range(m.shape[1])))

    def __getitem__(self, key):
        r, c = key
        try:
            return self.values[self.rows.index(r), self.cols.index(c)]
        except ValueError:
            raise IndexOutOfRange(f"no entry labeled ({r}, {c})") from None


def delete_rows_cols(m, rows=(), cols=()) -> LabeledMatrix:
    """Drop the rows and columns with the given labels.

    Plain arrays are labeled by position; a :class:`LabeledMatrix` keeps its
    labels, so successive deletions can name vertices by their original id.
    """
    lm = LabeledMatrix.wrap(m)
    rows, cols = set(rows), set(cols)
    for lab, present in ((rows, lm.rows), (cols, lm.cols)):
        bad = lab - set(present)
        if bad:
            raise IndexOutOfRange(f"labels {sorted(bad)} not present")
    keep_r = [i for i, r in enumerate(lm.rows) if r not in rows]
    keep_c = [j for j, c in enumerate(lm.cols) if c not in cols]
    return LabeledMatrix(lm.values[np.ix_(keep_r, keep_c)],
                         tuple(lm.rows[i] for i in keep_r),
                         tuple(lm.cols[j] for j in keep_c))


# -- g-inverses ------------------------------------------------------------

def ginverse_residual(m, g) -> float:
    """``||M G M - M||_inf / ||M||_inf``; zero exactly for a g-inverse."""
    m = np.asarray(m, dtype=float)
    scale = np.abs(m).sum(axis=1).max()
    return float(np.abs(m @ g @ m - m).sum(axis=1).max() / scale)


def ginverse_kernel_shift(lsym, q) -> np.ndarray:
    """Return ``(lsym + q q^T)^{-1}``, a g-inverse of ``lsym``.

    ``lsym`` must be symmetric PSD with one-dimensional kernel spanned by
    the unit vector ``q``.
    """
    lsym = np.asarray(lsym, dtype=float)
    q = np.asarray(q, dtype=float)
    scale = np.abs(lsym).sum(axis=1).max()
    if abs(np.linalg.norm(q) - 1.0) > 1e-12:
        raise ValueError("kernel vector must have unit 2-norm")
    if np.abs(lsym @ q).max() > GINV_TOL * scale:
        raise ValueError("q is not in the kernel of the matrix")
    f = lu_factor(lsym + np.outer(q, q))
    if f.singular:
        raise SingularShift("shifted matrix is singular; kernel has dimension > 1")
    return solve(f, np.eye(len(q)))
