"""
A full verification report
==========================

``run_full_report`` runs the identity, metric, geodetic and convergence
checks on one graph and collects the residuals.
"""

from longwalk import run_full_report
from longwalk.generators import random_connected_graph

g = random_connected_graph(12, rng=3, density=0.3, loops=True)
report = run_full_report(g, seed=0)

print(f"n = {report.n}, edges = {report.n_edges}, passed = {report.passed}")
for check in report.checks:
    status = "skip" if check.skipped else ("ok" if check.passed else "FAIL")
    print(f"  {check.name:24s} {status:4s} residual {check.residual:.2e} (tol {check.tolerance:.0e})")

###############################################################################
# Reports serialize to JSON and back unchanged.
text = report.to_json()
print(len(text), "characters of JSON;", "round trip ok:", type(report).from_json(text) == report)
