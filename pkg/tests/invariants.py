"""Structural invariants every certificate must satisfy; returns violations as strings."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from bshm.core import associated_graph, srg_params
from bshm.params import classify_params, equiangular_graphs, k_a_closed_form, type_graph

SWAP = {"type1": "type2", "type2": "type1", "equiangular": "equiangular"}


def neighbour_count_srg(adj: np.ndarray):
    """Set based (v, k, lambda, mu); None if not strongly regular."""
    v = len(adj)
    nbrs = [set(np.flatnonzero(adj[i]).tolist()) for i in range(v)]
    degs = {len(s) for s in nbrs}
    if len(degs) != 1:
        return None
    lam, mu = set(), set()
    for i in range(v):
        for j in range(i + 1, v):
            (lam if j in nbrs[i] else mu).add(len(nbrs[i] & nbrs[j]))
    if len(lam) > 1 or len(mu) > 1:
        return None
    return (v, degs.pop(), lam.pop() if lam else 0, mu.pop() if mu else 0)


def check(h, rows, cert) -> list[str]:
    bad = []
    n, ell, a, b = cert.params
    if (ell - a) % 4 or (ell - b) % 4:
        bad.append(f"mod 4 fails for {cert.params}")
    full = h.to_array(np.int64)
    mask = np.zeros(n, dtype=bool)
    mask[list(rows)] = True
    h1, h2 = full[mask], full[~mask]
    if cert.kind == "type1":
        if n * (ell + a * b) != (ell - a) * (ell - b) or np.any(h1.sum(axis=1)):
            bad.append("type 1 relation or balanced H1 fails")
    elif cert.kind == "type2":
        if n * (ell + a * b - a - b) != (ell - a) * (ell - b) or np.any(h2.sum(axis=1)):
            bad.append("type 2 relation or balanced H2 fails")
    elif cert.kind == "equiangular":
        if b != -a or a * a * (n - 1) != ell * (n - ell):
            bad.append("equiangular relation fails")
    if a != -b and cert.k_a != k_a_closed_form(n, ell, a, b):
        bad.append(f"k_a {cert.k_a} != closed form {k_a_closed_form(n, ell, a, b)}")
    if cert.graph is not None:
        got = tuple(Fraction(x) for x in cert.graph.as_tuple()[1:])
        if cert.kind in ("type1", "type2"):
            if got != type_graph(cert.kind, n, ell, a, b):
                bad.append(f"graph {cert.graph} != closed form {type_graph(cert.kind, n, ell, a, b)}")
        elif got not in equiangular_graphs(n, ell, a):
            bad.append(f"graph {cert.graph} not among {equiangular_graphs(n, ell, a)}")
    res = classify_params(n, ell, a, b)
    if not res:
        bad.append(f"classify rejects {cert.params}: {res}")
    elif res.kind.startswith("imprimitive"):
        if cert.primitive:
            bad.append("classified imprimitive but graph is primitive")
    elif res.kind != (SWAP[cert.kind] if res.switched else cert.kind):
        bad.append(f"classify kind {res.kind} (switched={res.switched}) vs certificate {cert.kind}")
    g = h1.T @ h1
    if not np.array_equal(g @ h1.T, n * h1.T) or np.any(g @ h2.T):
        bad.append("eigenspace check fails")
    comp = [i for i in range(n) if not mask[i]]
    if not np.array_equal(associated_graph(h, rows, a), associated_graph(h, comp, -a)):
        bad.append("switching changed the label-tracked graph")
    return bad
