"""Numerical checks of the identities behind the long walk formulas.

Each ``check_*`` function returns a :class:`CheckRecord` and never raises on
a failed identity; :func:`run_full_report` bundles them into a
:class:`VerificationReport` that serializes to JSON.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .distances import (
    DistanceMatrix,
    build_h_matrix,
    gprime_laplacian,
    long_walk_limit_estimate,
    longwalk_det,
    longwalk_ginverse,
    longwalk_submatrix,
    longwalk_via_gprime,
    resistance_distance,
    walk_distance,
)
from .errors import PreconditionNotMet
from .graph import (
    WeightedMultigraph,
    adjacency_matrix,
    cut_components,
    laplacian_matrix,
    para_laplacian,
)
from .linalg import (
    delete_rows_cols,
    ginverse_kernel_shift,
    ginverse_residual,
    lu_factor,
    perron_eigenpair,
    solve,
)

TOL_EXACT = 1e-8
TOL_LIMIT = 1e-2
TOL_GINV = 1e-9
TOL_METRIC = 1e-10
TOL_DENOMINATOR = 1e-10
TOL_BALANCED = 1e-9
GEODETIC_MAX_N = 60
GEODETIC_SAMPLES = 100_000
LIMIT_STEPS = range(4, 13)
LIMIT_MAX_K = 30


@dataclass
class CheckRecord:
    name: str
    residual: float
    tolerance: float
    passed: bool
    params: dict = field(default_factory=dict)
    note: str = ""
    skipped: bool = False


@dataclass
class VerificationReport:
    n: int
    n_edges: int
    graph_hash: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        checks = [CheckRecord(**c) for c in data["checks"]]
        return cls(data["n"], data["n_edges"], data["graph_hash"], checks)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))


def graph_hash(g: WeightedMultigraph) -> str:
    canon = sorted((min(u, v), max(u, v), repr(w)) for u, v, w in g.edges)
    return hashlib.sha256(repr((g.n, canon)).encode()).hexdigest()


def _record(name, residual, tol, params=None, note="", passed=None) -> CheckRecord:
    residual = float(residual)
    if passed is None:
        passed = bool(residual <= tol)
    return CheckRecord(name, residual, float(tol), bool(passed), dict(params or {}), note)


def _max_relative(a, b) -> float:
    """Largest entrywise relative gap over off-diagonal entries."""
    a, b = np.asarray(a), np.asarray(b)
    off = ~np.eye(a.shape[0], dtype=bool)
    denom = np.maximum(np.abs(a), np.abs(b))[off]
    return float((np.abs(a - b)[off] / np.where(denom > 0, denom, 1.0)).max())


def _perron_for(g, perron):
    return perron if perron is not None else perron_eigenpair(adjacency_matrix(g))


# -- individual checks -----------------------------------------------------

def check_perron(g, perron=None) -> CheckRecord:
    perron = _perron_for(g, perron)
    a = adjacency_matrix(g)
    resid = np.abs(a @ perron.p - perron.rho * perron.p).max() / (perron.rho * perron.p.max())
    ok = resid <= TOL_METRIC and bool(np.all(perron.p > 0))
    return _record("perron_residual", resid, TOL_METRIC,
                   {"rho": perron.rho, "iterations": perron.iterations}, passed=ok)


def check_rank_deficiency(g, perron=None) -> CheckRecord:
    """``rho I - A`` is PSD with exactly one zero eigenvalue."""
    perron = _perron_for(g, perron)
    ev = np.linalg.eigvalsh(para_laplacian(g, perron))
    tol = TOL_GINV * perron.rho
    ok = ev[0] >= -tol and abs(ev[0]) <= tol and ev[1] > tol
    return _record("para_laplacian_rank", abs(ev[0]) / perron.rho, TOL_GINV,
                   {"lambda_min": float(ev[0]), "lambda_2": float(ev[1])}, passed=ok)


def check_ginverse_lemma(g, perron=None, h=None) -> CheckRecord:
    """``L H L = L`` for the zero-diagonal matrix ``H``; ``h`` overrides it."""
    perron = _perron_for(g, perron)
    lp = para_laplacian(g, perron)
    if h is None:
        h = build_h_matrix(g, perron)
    return _record("ginverse_H", ginverse_residual(lp, h), TOL_GINV)


def check_kernel_shift(g, perron=None, ginv=None) -> CheckRecord:
    perron = _perron_for(g, perron)
    lp = para_laplacian(g, perron)
    if ginv is None:
        ginv = ginverse_kernel_shift(lp, perron.kernel_unit)
    return _record("ginverse_kernel_shift", ginverse_residual(lp, ginv), TOL_GINV)


def check_bordered_identity(x, u: int, v: int, tol: float = TOL_EXACT) -> CheckRecord:
    """``x_uv = x[u, ~v] inv(X without row u, col v) x[~u, v]`` for singular ``x``.

    A nonsingular ``x`` yields a skipped record; a singular bordered block
    raises :class:`PreconditionNotMet`.
    """
    x = np.asarray(x, dtype=float)
    params = {"u": u, "v": v}
    if not lu_factor(x).singular:
        rec = _record("bordered_identity", 0.0, tol, params,
                      note="PreconditionNotMet: matrix is not singular", passed=True)
        rec.skipped = True
        return rec
    sub = delete_rows_cols(x, [u], [v])
    f = lu_factor(sub.values)
    if f.singular:
        raise PreconditionNotMet(f"block without row {u} and column {v} is singular")
    row = np.delete(x[u], v)
    col = np.delete(x[:, v], u)
    resid = abs(x[u, v] - row @ solve(f, col)) / np.abs(x).max()
    return _record("bordered_identity", resid, tol, params)


def check_metric(d, tol: float = TOL_METRIC) -> CheckRecord:
    """Exact symmetry and zero diagonal, positive off-diagonal, triangle inequality.

    Triangle slack is measured relative to the largest distance.
    """
    v = d.values if isinstance(d, DistanceMatrix) else np.asarray(d, dtype=float)
    n = v.shape[0]
    off = ~np.eye(n, dtype=bool)
    asym = float(np.abs(v - v.T).max())
    diag = float(np.abs(np.diag(v)).max())
    min_off = float(v[off].min()) if n > 1 else 0.0
    scale = max(float(np.abs(v).max()), 1e-300)
    # row i of the loop holds d(i,k) - d(i,j) - d(j,k) indexed [j, k]
    tri = max(float((v[i][None, :] - v[i][:, None] - v).max()) for i in range(n))
    tri_rel = max(tri, 0.0) / scale
    ok = asym == 0.0 and diag == 0.0 and min_off > 0 and tri_rel <= tol
    method = d.method if isinstance(d, DistanceMatrix) else "array"
    return _record("metric", tri_rel, tol,
                   {"method": method, "asymmetry": asym, "diagonal": diag,
                    "min_offdiag": min_off}, passed=ok)


def check_geodetic(g, d, tol: float = TOL_EXACT, seed: int = 0,
                   max_n: int = GEODETIC_MAX_N) -> CheckRecord:
    """Additivity ``d(i,j) + d(j,k) = d(i,k)`` holds exactly at cut triples.

    Over all ordered triples of distinct vertices (a seeded sample of
    100000 beyond ``max_n`` vertices), the relative defect must be within
    ``tol`` when ``j`` separates ``i`` from ``k`` and exceed it otherwise.
    """
    v = d.values if isinstance(d, DistanceMatrix) else np.asarray(d, dtype=float)
    n = g.n
    comps = np.array([cut_components(g, j) for j in range(n)])   # comps[j, x]
    if n <= max_n:
        i, j, k = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
        i, j, k = i.ravel(), j.ravel(), k.ravel()
        keep = (i != j) & (j != k) & (i != k)
        i, j, k = i[keep], j[keep], k[keep]
        sampled = False
    else:
        rng = np.random.default_rng(seed)
        trip = np.array([rng.choice(n, 3, replace=False) for _ in range(GEODETIC_SAMPLES)])
        i, j, k = trip.T
        sampled = True
    defect = np.abs(v[i, j] + v[j, k] - v[i, k]) / v[i, k]
    sep = comps[j, i] != comps[j, k]
    worst_sep = float(defect[sep].max()) if sep.any() else 0.0
    min_gap = float(defect[~sep].min()) if (~sep).any() else None
    false_neg = int(np.count_nonzero(sep & (defect > tol)))
    false_pos = int(np.count_nonzero(~sep & (defect <= tol)))
    method = d.method if isinstance(d, DistanceMatrix) else "array"
    return _record("geodetic", worst_sep, tol,
                   {"method": method, "triples": int(len(i)), "sampled": sampled,
                    "separating": int(sep.sum()), "min_nonseparating_defect": min_gap,
                    "false_positives": false_pos, "false_negatives": false_neg, "seed": seed},
                   passed=false_neg == 0 and false_pos == 0)


def sample_uv(n: int, count: int, seed: int = 0) -> list:
    """``count`` distinct (u, v) pairs: ``(0, 0)``, one more diagonal pair, the rest random.

    At most ``n * n`` pairs exist, so fewer come back on tiny graphs.
    """
    rng = np.random.default_rng(seed)
    pairs = [(0, 0)]
    if n > 1:
        pairs.append((int(rng.integers(1, n)),) * 2)
    count = min(count, n * n)
    while len(pairs) < count:
        pair = (int(rng.integers(n)), int(rng.integers(n)))
        if pair not in pairs:
            pairs.append(pair)
    return pairs[:count]


def longwalk_routes(g, perron=None, n_uv: int = 5, seed: int = 0) -> dict:
    """Every exact long walk route keyed by a short name."""
    perron = _perron_for(g, perron)
    routes = {
        "det": longwalk_det(g, perron),
        "ginv-shift": longwalk_ginverse(g, perron),
        "ginv-H": longwalk_ginverse(g, perron, build_h_matrix(g, perron)),
        "gprime-det": longwalk_via_gprime(g, perron, "det"),
        "gprime-ginv": longwalk_via_gprime(g, perron, "ginv"),
    }
    for u, v in sample_uv(g.n, n_uv, seed):
        routes[f"sub({u},{v})"] = longwalk_submatrix(g, perron, u, v)
    return routes


def check_cross_formula(g, perron=None, seed: int = 0, n_uv: int = 5,
                        tol_exact: float = TOL_EXACT, tol_limit: float = TOL_LIMIT,
                        adaptive: bool = True) -> list:
    """Pairwise agreement of all exact routes, plus the near-limit estimate.

    The estimate is taken at ``t = (1 - 2^-12) / rho``; with ``adaptive`` the
    exponent grows (up to 30) while the estimate is still outside
    ``tol_limit``.
    """
    perron = _perron_for(g, perron)
    routes = longwalk_routes(g, perron, n_uv, seed)
    names = list(routes)
    worst, pair = 0.0, None
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            r = _max_relative(routes[names[a]].values, routes[names[b]].values)
            if r > worst:
                worst, pair = r, [names[a], names[b]]
    exact = _record("cross_formula", worst, tol_exact,
                    {"routes": names, "worst_pair": pair, "seed": seed})
    ks = range(12, LIMIT_MAX_K + 1) if adaptive else [12]
    k, t, dev = _limit_sequence(g, perron, ks, tol_limit)[-1]
    limit = _record("limit_estimate", dev, tol_limit, {"k": k, "t": t})
    return [exact, limit]


def limit_deviations(g, perron=None, ks=LIMIT_STEPS) -> list:
    """``(k, t_k, relative deviation)`` for ``t_k = (1 - 2^-k) / rho``."""
    return _limit_sequence(g, _perron_for(g, perron), ks)


def _limit_sequence(g, perron, ks, stop_below=None) -> list:
    ref = longwalk_det(g, perron).values
    scale = np.abs(ref).max()
    out = []
    for k in ks:
        t = (1.0 - 2.0 ** -k) / perron.rho
        est = long_walk_limit_estimate(g, perron, t).values
        out.append((k, t, float(np.abs(est - ref).max() / scale)))
        if stop_below is not None and out[-1][2] < stop_below:
            break
    return out


def check_limit_convergence(g, perron=None, tol: float = TOL_LIMIT, ks=LIMIT_STEPS,
                            adaptive: bool = False) -> CheckRecord:
    """Deviation from the long walk distance is non-increasing along ``t_k``
    and ends below ``tol``.

    With ``adaptive`` the schedule continues past its last ``k`` (up to 30)
    until the deviation drops below ``tol``; graphs with a weakly attached
    vertex converge only once ``1 - t rho`` is small against ``min p'^2``.
    """
    perron = _perron_for(g, perron)
    ks = list(ks)
    devs = _limit_sequence(g, perron, ks)
    if adaptive and devs[-1][2] >= tol:
        devs += _limit_sequence(g, perron, range(ks[-1] + 1, LIMIT_MAX_K + 1), tol)
    seq = [d for _, _, d in devs]
    monotone = all(b <= a for a, b in zip(seq, seq[1:]))
    return _record("limit_convergence", seq[-1], tol,
                   {"k": [k for k, _, _ in devs], "deviations": seq, "monotone": monotone},
                   passed=monotone and seq[-1] < tol)


def check_balanced(g, perron=None, tol: float = TOL_BALANCED) -> CheckRecord:
    if not g.is_balanced():
        rec = _record("balanced_coincidence", 0.0, tol, note="graph is not balanced", passed=True)
        rec.skipped = True
        return rec
    lw = longwalk_det(g, perron).values
    rd = resistance_distance(laplacian_matrix(g), "det").values
    return _record("balanced_coincidence", _max_relative(lw, rd), tol)


def check_denominator_invariance(g, perron=None, tol: float = TOL_DENOMINATOR,
                                 tol_sub: float = 1e-9, seed: int = 0,
                                 exhaustive_n: int = 8) -> list:
    """Resistance minors on ``G'`` and the submatrix route do not depend on the deleted vertices."""
    perron = _perron_for(g, perron)
    lap = gprime_laplacian(g, perron)
    vs = range(g.n) if g.n <= exhaustive_n else np.random.default_rng(seed).choice(g.n, 5, False)
    base = resistance_distance(lap, "det", v=0).values
    worst = max(_max_relative(base, resistance_distance(lap, "det", v=int(v)).values) for v in vs)
    recs = [_record("denominator_invariance", worst, tol, {"vertices": [int(v) for v in vs]})]
    if g.n <= exhaustive_n:
        pairs = [(u, v) for u in range(g.n) for v in range(g.n)]
    else:
        pairs = sample_uv(g.n, 10, seed)
    ref = longwalk_submatrix(g, perron, 0, 0).values
    worst = max(_max_relative(ref, longwalk_submatrix(g, perron, u, v).values) for u, v in pairs)
    recs.append(_record("submatrix_invariance", worst, tol_sub, {"pairs": len(pairs)}))
    return recs


def run_full_report(g: WeightedMultigraph, seed: int = 0, tol_exact: float = TOL_EXACT,
                    tol_limit: float = TOL_LIMIT) -> VerificationReport:
    """Run every check on ``g`` and collect the results."""
    report = VerificationReport(g.n, len(g.edges), graph_hash(g))
    perron = perron_eigenpair(adjacency_matrix(g))
    lp = para_laplacian(g, perron)
    rng = np.random.default_rng(seed)
    u, v = (int(x) for x in rng.integers(g.n, size=2))
    lw = longwalk_det(g, perron)
    dt = walk_distance(g, perron, 0.5 / perron.rho)

    report.checks += [
        check_perron(g, perron),
        check_rank_deficiency(g, perron),
        check_ginverse_lemma(g, perron),
        check_kernel_shift(g, perron),
        check_bordered_identity(lp, u, v, tol_exact),
    ]
    report.checks += check_cross_formula(g, perron, seed, tol_exact=tol_exact, tol_limit=tol_limit)
    for d in (lw, dt, resistance_distance(laplacian_matrix(g), "det")):
        report.checks.append(check_metric(d))
    report.checks += [check_geodetic(g, lw, tol_exact, seed),
                      check_geodetic(g, dt, tol_exact, seed),
                      check_balanced(g, perron)]
    report.checks += check_denominator_invariance(g, perron, seed=seed)
    report.checks.append(check_limit_convergence(g, perron, tol_limit, adaptive=True))
    return report
