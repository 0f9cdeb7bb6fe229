"""Exact verification oracles: stretch, lightness, degree, replacement
packing, coverings, crossings, and the efficiency ratio.

Stretch ratios use a tolerance of 1e-9: everything here is plain double
arithmetic, so a miss beyond that indicates a logic bug, not rounding.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra

from .graph import COLLINEAR_EPS, EdgeList, UnitBallGraph, mst_weight, segments_properly_cross
from .metric import PointSet, packing_bound
from .spanner import ReplacementRegistry, Spanner

STRETCH_TOL = 1e-9
COVERING_TOL = 1e-12


@dataclass
class Report:
    """Verification record for one spanner; None marks a check with no inputs
    on this run (no registry / no covering artifacts), never a skipped one."""

    max_edge_stretch: float
    lightness: float
    max_degree: int
    total_crossings: int
    crossings_per_node: float
    covering_ok: bool | None
    replacement_bound_ok: bool | None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _spanner_csr(ps: PointSet, edges: EdgeList) -> csr_matrix:
    n = ps.n
    if len(edges) == 0:
        return csr_matrix((n, n))
    rows, cols, vals = [], [], []
    for u, v, w in edges:
        rows.append(ps.row_of(u))
        cols.append(ps.row_of(v))
        vals.append(w)
    return csr_matrix((vals, (rows, cols)), shape=(n, n))


def check_stretch(
    g: UnitBallGraph, s: Spanner, bound: float | None = None, all_pairs: bool = False
) -> float:
    """Max over UBG edges (u, v) of dist_S(u, v) / ||uv||, by Dijkstra from
    each edge endpoint; inf when some adjacent pair is disconnected in s.

    all_pairs=True checks every connected pair instead (n <= 200 only).
    The `bound` parameter is informational; callers compare the returned
    ratio against bound + STRETCH_TOL.
    """
    for u, v, _ in s.edges:
        g.points.row_of(u), g.points.row_of(v)  # raises if s leaves g's points
    mat = _spanner_csr(g.points, s.edges)
    if all_pairs:
        if g.n > 200:
            raise ValueError("all-pairs stretch check is limited to n <= 200")
        dist_s = _csgraph_dijkstra(mat, directed=False)
        dist_g = _csgraph_dijkstra(_spanner_csr(g.points, g.edge_list()), directed=False)
        finite = np.isfinite(dist_g) & (dist_g > 0)
        if not finite.any():
            return 1.0
        ratios = dist_s[finite] / dist_g[finite]
        return float(ratios.max())
    edges = g.edge_list()
    if len(edges) == 0:
        return 1.0
    sources = sorted({g.points.row_of(u) for u, _, _ in edges})
    dist = _csgraph_dijkstra(mat, directed=False, indices=sources)
    src_index = {row: k for k, row in enumerate(sources)}
    worst = 0.0
    for u, v, w in edges:
        d = dist[src_index[g.points.row_of(u)], g.points.row_of(v)]
        worst = max(worst, d / w)
    return float(worst)


def lightness(g: UnitBallGraph, s: Spanner) -> float:
    """Spanner weight over the (per-component) MST weight of g."""
    denom = mst_weight(g)
    num = s.weight()
    if denom == 0.0:
        if num > 0.0:
            raise ValueError("lightness undefined: MST weight is zero")
        return 0.0
    return num / denom


@dataclass
class DegreeReport:
    max_degree: int
    histogram: dict[int, int]


def degree_report(s: Spanner) -> DegreeReport:
    counts = Counter()
    for u, v, _ in s.edges:
        counts[u] += 1
        counts[v] += 1
    degs = Counter(counts[int(i)] for i in s.points.ids)
    return DegreeReport(max(degs) if degs else 0, dict(sorted(degs.items())))


def replacement_packing_check(
    registry: ReplacementRegistry, ps: PointSet, eps_prime: float, d: int
) -> bool:
    """Per vertex: registry partners pairwise more than eps' apart, and at most
    packing_bound(1, eps', d) of them."""
    limit = packing_bound(1.0, eps_prime, d)
    dmat = ps.pairwise_distances()
    for x in sorted(registry.incident_ids()):
        partners = registry.partners_of(x)
        if len(partners) > limit:
            return False
        for i, a in enumerate(partners):
            for b in partners[i + 1 :]:
                if dmat[ps.row_of(a), ps.row_of(b)] <= eps_prime:
                    return False
    return True


def covering_check(
    ps: PointSet,
    centers: Iterable[int],
    targets: Iterable[int],
    r: float,
    tol: float = COVERING_TOL,
) -> bool:
    """Every target within distance r (plus float tolerance) of some center."""
    center_rows = [ps.row_of(c) for c in centers]
    if not center_rows:
        return not list(targets)
    dmat = ps.pairwise_distances()
    for t in targets:
        row = ps.row_of(t)
        if min(dmat[row, c] for c in center_rows) > r + tol:
            return False
    return True


@dataclass
class CrossingReport:
    total: int
    crossings_per_node: float
    max_longer_crossings_per_edge: int


def crossing_report(s: Spanner, block: int = 256) -> CrossingReport:
    """All-pairs proper-crossing scan over the spanner's segments.

    Counts, per edge, crossings with strictly longer edges and reports the
    max. Blocked to keep the O(m^2) orientation tables small.
    """
    if s.points.dimension != 2:
        raise ValueError("crossing analysis expects planar points")
    edges = list(s.edges)
    m = len(edges)
    n = s.points.n
    if m == 0:
        return CrossingReport(0, 0.0, 0)
    row_of = s.points.row_of
    coords = s.points.coords
    A = np.array([coords[row_of(u)] for u, _, _ in edges])
    B = np.array([coords[row_of(v)] for _, v, _ in edges])
    U = np.array([u for u, _, _ in edges])
    V = np.array([v for _, v, _ in edges])
    W = np.array([w for _, _, w in edges])
    pts = {int(i): p for i, p in zip(s.points.ids, s.points.points)}

    def orient_sign(p, q, c):
        val = (q[..., 0] - p[..., 0]) * (c[..., 1] - p[..., 1]) - (
            q[..., 1] - p[..., 1]
        ) * (c[..., 0] - p[..., 0])
        out = np.sign(val)
        out[np.abs(val) <= COLLINEAR_EPS] = 0
        return out

    total = 0
    longer_counts = np.zeros(m, dtype=np.int64)
    for lo in range(0, m, block):
        hi = min(lo + block, m)
        Ai, Bi = A[lo:hi, None, :], B[lo:hi, None, :]
        Aj, Bj = A[None, :, :], B[None, :, :]
        s1 = orient_sign(Ai, Bi, Aj)
        s2 = orient_sign(Ai, Bi, Bj)
        s3 = orient_sign(Aj, Bj, Ai)
        s4 = orient_sign(Aj, Bj, Bi)
        share = (
            (U[lo:hi, None] == U[None, :])
            | (U[lo:hi, None] == V[None, :])
            | (V[lo:hi, None] == U[None, :])
            | (V[lo:hi, None] == V[None, :])
        )
        cross = (s1 * s2 < 0) & (s3 * s4 < 0) & ~share
        degen = (s1 == 0) & (s2 == 0) & (s3 == 0) & (s4 == 0) & ~share
        for bi, j in np.argwhere(degen):
            i = lo + int(bi)
            if i == j:
                continue
            cross[bi, j] = segments_properly_cross(
                pts[int(U[i])], pts[int(V[i])], pts[int(U[j])], pts[int(V[j])]
            )
        # Upper-triangle contribution to the total; full row for longer counts.
        cols = np.arange(m)[None, :]
        rows = np.arange(lo, hi)[:, None]
        total += int((cross & (cols > rows)).sum())
        longer_counts[lo:hi] += (cross & (W[None, :] > W[lo:hi, None])).sum(axis=1)
    return CrossingReport(total, total / n, int(longer_counts.max()))


_EFFICIENCY_MEASURES = ("max_degree", "size", "weight")


def efficiency(measure: str, greedy_value: float, alg_value: float) -> float:
    """Centralized-greedy value over the distributed value; higher is better."""
    if measure not in _EFFICIENCY_MEASURES:
        raise ValueError(f"unknown measure {measure!r}")
    if alg_value == 0:
        raise ValueError("efficiency undefined for zero denominator")
    return greedy_value / alg_value


def full_report(
    g: UnitBallGraph,
    s: Spanner,
    covering_ok: bool | None = None,
    eps_prime: float | None = None,
) -> Report:
    """One-stop verification record for a spanner over its graph."""
    rep_ok = None
    if s.registry is not None and eps_prime is not None:
        rep_ok = replacement_packing_check(
            s.registry, g.points, eps_prime, g.points.doubling_dim_hint
        )
    crossings = crossing_report(s) if g.points.dimension == 2 else CrossingReport(0, 0.0, 0)
    return Report(
        max_edge_stretch=check_stretch(g, s),
        lightness=lightness(g, s),
        max_degree=degree_report(s).max_degree,
        total_crossings=crossings.total,
        crossings_per_node=crossings.crossings_per_node,
        covering_ok=covering_ok,
        replacement_bound_ok=rep_ok,
    )
