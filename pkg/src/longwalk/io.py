"""Edge-list files and matrix output formats."""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .errors import EdgeListParseError
from .graph import WeightedMultigraph, build_graph


def parse_edge_list(text: str) -> tuple[WeightedMultigraph, list]:
    """Parse ``<label_u> <label_v> <weight>`` lines.

    Blank lines and ``#`` comments are skipped. Labels map to dense ids in
    order of first appearance; repeated pairs become parallel edges and
    ``u u w`` is a loop. Returns the graph and the label list.
    """
    ids: dict[str, int] = {}
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise EdgeListParseError(f"expected '<u> <v> <weight>', got {line!r}", lineno)
        try:
            w = float(parts[2])
        except ValueError:
            raise EdgeListParseError(f"weight {parts[2]!r} is not a number", lineno) from None
        if not math.isfinite(w) or w <= 0:
            raise EdgeListParseError(f"weight {parts[2]!r} must be positive", lineno)
        u, v = (ids.setdefault(lab, len(ids)) for lab in parts[:2])
        edges.append((u, v, w))
    if not edges:
        raise EdgeListParseError("no edges found")
    if len(ids) < 2:
        raise EdgeListParseError("need at least two distinct vertices")
    return build_graph(len(ids), edges), list(ids)


def read_edge_list(path) -> tuple[WeightedMultigraph, list]:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: WeightedMultigraph, labels=None) -> str:
    """Inverse of :func:`parse_edge_list`, keeping label order.

    Edges are written in stored order, so a parsed graph re-parses with the
    same ids.
    """
    labels = labels or [str(i) for i in range(g.n)]
    return "".join(f"{labels[u]} {labels[v]} {w!r}\n" for u, v, w in g.edges)


def fmt(x: float) -> str:
    return f"{x:#.12g}"


def rounded(values) -> np.ndarray:
    """Values rounded to the 12 significant digits that the text formats carry."""
    return np.vectorize(lambda x: float(fmt(x)))(np.asarray(values, dtype=float))


def matrix_to_csv(values, labels) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(labels))
    for lab, row in zip(labels, np.asarray(values)):
        w.writerow([lab] + [fmt(x) for x in row])
    return buf.getvalue()


def matrix_to_json(values, labels, method, params=None) -> str:
    return json.dumps({"labels": list(labels), "method": method,
                       "params": dict(params or {}),
                       "matrix": rounded(values).tolist()}, indent=1)


def matrix_from_csv(text: str) -> tuple[np.ndarray, list]:
    rows = list(csv.reader(io.StringIO(text)))
    labels = rows[0][1:]
    return np.array([[float(x) for x in r[1:]] for r in rows[1:]]), labels
