"""Unit ball graphs and the classical subroutines used by constructions and checks."""
from __future__ import annotations

import csv
import heapq
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .metric import Point, PointSet

Edge = tuple[int, int, float]


class EdgeList:
    """Canonical weighted edge set: u < v, unique, sorted by (u, v)."""

    def __init__(self, edges: Iterable[Edge] = ()):
        canon: dict[tuple[int, int], float] = {}
        for u, v, w in edges:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if w <= 0:
                raise ValueError(f"non-positive edge weight {w} on ({u},{v})")
            key = (int(u), int(v)) if u < v else (int(v), int(u))
            prev = canon.get(key)
            if prev is not None and prev != w:
                raise ValueError(f"conflicting weights for edge {key}")
            canon[key] = float(w)
        self.edges: list[Edge] = [(u, v, canon[(u, v)]) for u, v in sorted(canon)]
        self._keys = set(canon)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        u, v = pair
        return ((u, v) if u < v else (v, u)) in self._keys

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeList) and self.edges == other.edges

    def weight(self) -> float:
        return float(sum(w for _, _, w in self.edges))

    def node_ids(self) -> list[int]:
        seen = set()
        for u, v, _ in self.edges:
            seen.add(u)
            seen.add(v)
        return sorted(seen)

    def adjacency(self) -> dict[int, dict[int, float]]:
        adj: dict[int, dict[int, float]] = {}
        for u, v, w in self.edges:
            adj.setdefault(u, {})[v] = w
            adj.setdefault(v, {})[u] = w
        return adj

    def union(self, other: "EdgeList") -> "EdgeList":
        return EdgeList(list(self.edges) + list(other.edges))

    # CSV schema: header "u,v,w", u < v, rows sorted by (u, v).
    def to_csv(self, path: str | Path | None = None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["u", "v", "w"])
        for u, v, w in self.edges:
            writer.writerow([u, v, repr(w)])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text

    @classmethod
    def from_csv(cls, source: str | Path) -> "EdgeList":
        if isinstance(source, Path) or ("\n" not in str(source) and Path(source).exists()):
            text = Path(source).read_text()
        else:
            text = str(source)
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["u", "v", "w"]:
            raise ValueError("edge CSV must start with a 'u,v,w' header")
        edges = []
        for lineno, row in enumerate(rows[1:], start=2):
            if not row:
                continue
            try:
                edges.append((int(row[0]), int(row[1]), float(row[2])))
            except (ValueError, IndexError) as exc:
                raise ValueError(f"bad edge CSV at line {lineno}: {row!r}") from exc
        return cls(edges)


class UnitBallGraph:
    """Weighted graph whose edges are exactly the point pairs at distance <= radius."""

    def __init__(self, points: PointSet, radius: float = 1.0):
        if radius <= 0:
            raise ValueError("radius must be positive")
        self.points = points
        self.radius = float(radius)
        self.dmat = points.pairwise_distances()
        mask = self.dmat <= self.radius
        np.fill_diagonal(mask, False)
        self._mask = mask
        self._adj_rows: list[np.ndarray] | None = None

    @property
    def n(self) -> int:
        return self.points.n

    @property
    def ids(self) -> np.ndarray:
        return self.points.ids

    def _adjacency_rows(self) -> list[np.ndarray]:
        if self._adj_rows is None:
            self._adj_rows = [np.nonzero(self._mask[r])[0] for r in range(self.n)]
        return self._adj_rows

    def degree_of(self, node_id: int) -> int:
        return int(self._mask[self.points.row_of(node_id)].sum())

    def neighbors_of(self, node_id: int) -> list[tuple[int, float]]:
        """Sorted (neighbor id, weight) list."""
        r = self.points.row_of(node_id)
        rows = self._adjacency_rows()[r]
        return [(int(self.ids[s]), float(self.dmat[r, s])) for s in rows]

    def edge_list(self) -> EdgeList:
        iu, jv = np.nonzero(np.triu(self._mask, k=1))
        return EdgeList(
            (int(self.ids[i]), int(self.ids[j]), float(self.dmat[i, j]))
            for i, j in zip(iu, jv)
        )

    def num_edges(self) -> int:
        return int(np.triu(self._mask, k=1).sum())

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._mask[self.points.row_of(u), self.points.row_of(v)])

    def induced(self, node_ids: Iterable[int]) -> "UnitBallGraph":
        return UnitBallGraph(self.points.subset(node_ids), self.radius)

    def components(self) -> list[set[int]]:
        seen: set[int] = set()
        comps = []
        rows = self._adjacency_rows()
        for r in range(self.n):
            if r in seen:
                continue
            comp = {r}
            stack = [r]
            seen.add(r)
            while stack:
                cur = stack.pop()
                for nb in rows[cur]:
                    if nb not in seen:
                        seen.add(int(nb))
                        comp.add(int(nb))
                        stack.append(int(nb))
            comps.append({int(self.ids[i]) for i in comp})
        return comps


def build_ubg(ps: PointSet, radius: float = 1.0) -> UnitBallGraph:
    """Unit ball graph on ps: exactly the pairs at distance <= radius are edges."""
    return UnitBallGraph(ps, radius)


def threshold_subgraph(g: UnitBallGraph, alpha: float, mode: str) -> EdgeList:
    """Edges of g filtered by weight <= alpha (mode "<=") or > alpha (mode ">")."""
    if mode not in ("<=", ">"):
        raise ValueError("mode must be '<=' or '>'")
    full = g.edge_list()
    if mode == "<=":
        return EdgeList(e for e in full if e[2] <= alpha)
    return EdgeList(e for e in full if e[2] > alpha)


def shortest_path_distance(edges: EdgeList, u: int, v: int) -> float:
    """Exact Dijkstra distance using only the given edges; inf when disconnected."""
    if u == v:
        return 0.0
    adj = edges.adjacency()
    if u not in adj or v not in adj:
        return float("inf")
    dist = {u: 0.0}
    heap = [(0.0, u)]
    while heap:
        d, x = heapq.heappop(heap)
        if x == v:
            return d
        if d > dist.get(x, float("inf")):
            continue
        for y, w in adj[x].items():
            nd = d + w
            if nd < dist.get(y, float("inf")):
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return float("inf")


class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {i: i for i in items}

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def mst_weight(g: UnitBallGraph) -> float:
    """Kruskal; disconnected inputs contribute one MST per component."""
    uf = _UnionFind(int(i) for i in g.ids)
    total = 0.0
    for u, v, w in sorted(g.edge_list(), key=lambda e: (e[2], e[0], e[1])):
        if uf.union(u, v):
            total += w
    return total


def k_hop_neighborhood(g: UnitBallGraph, w: int, k: int) -> PointSet:
    """All vertices reachable from w in <= k hops, including w."""
    if k < 0:
        raise ValueError("k must be >= 0")
    rows = g._adjacency_rows()
    start = g.points.row_of(w)
    seen = {start}
    frontier = [start]
    for _ in range(k):
        nxt = []
        for r in frontier:
            for nb in rows[r]:
                nb = int(nb)
                if nb not in seen:
                    seen.add(nb)
                    nxt.append(nb)
        frontier = nxt
    return g.points.subset(int(g.ids[r]) for r in seen)


COLLINEAR_EPS = 1e-12  # orientation values this close to zero count as collinear


def _orient(ax, ay, bx, by, cx, cy) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _sign(val: float) -> int:
    if abs(val) <= COLLINEAR_EPS:
        return 0
    return 1 if val > 0 else -1


def segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff open segments ab and cd share a point and all four endpoints differ.

    Segments sharing an endpoint never cross. Collinear overlap of positive
    length counts as a (degenerate) crossing.
    """
    if a.id == b.id or c.id == d.id:
        raise ValueError("degenerate segment")
    if len({a.id, b.id, c.id, d.id}) < 4:
        return False
    (ax, ay), (bx, by) = a.coords, b.coords
    (cx, cy), (dx, dy) = c.coords, d.coords
    o1 = _sign(_orient(ax, ay, bx, by, cx, cy))
    o2 = _sign(_orient(ax, ay, bx, by, dx, dy))
    o3 = _sign(_orient(cx, cy, dx, dy, ax, ay))
    o4 = _sign(_orient(cx, cy, dx, dy, bx, by))
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == o2 == o3 == o4 == 0:
        # Collinear: project on the dominant axis and test open-interval overlap.
        if abs(bx - ax) >= abs(by - ay):
            a1, b1, c1, d1 = ax, bx, cx, dx
        else:
            a1, b1, c1, d1 = ay, by, cy, dy
        lo1, hi1 = min(a1, b1), max(a1, b1)
        lo2, hi2 = min(c1, d1), max(c1, d1)
        return max(lo1, lo2) < min(hi1, hi2)
    return False
