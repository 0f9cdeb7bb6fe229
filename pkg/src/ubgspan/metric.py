"""Points, the Euclidean metric, packing bounds, and seeded point generation.

Distances are compared with strict IEEE double arithmetic everywhere; ordering
ties are broken by (min id, max id) so that runs are bit-reproducible.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class Point:
    """A metric-space point with a node identity."""

    id: int
    coords: tuple[float, ...]

    @property
    def dimension(self) -> int:
        return len(self.coords)


class Metric:
    """Swappable distance interface. Only Euclidean l2 ships."""

    def distance(self, a: Sequence[float], b: Sequence[float]) -> float:
        raise NotImplementedError

    def pairwise(self, coords: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class EuclideanL2(Metric):
    def distance(self, a: Sequence[float], b: Sequence[float]) -> float:
        # Left-associated accumulation; pairwise() uses the same per-element
        # operations so scalar and matrix distances agree bit-for-bit.
        acc = 0.0
        for x, y in zip(a, b):
            diff = x - y
            acc = acc + diff * diff
        return math.sqrt(acc)

    def pairwise(self, coords: np.ndarray) -> np.ndarray:
        n, dim = coords.shape
        acc = np.zeros((n, n))
        for k in range(dim):
            diff = coords[:, k, None] - coords[None, :, k]
            acc = acc + diff * diff
        return np.sqrt(acc)


EUCLIDEAN = EuclideanL2()


class PointSet:
    """An ordered collection of points with unique ids.

    Generated point sets have dense ids 0..n-1; subsets produced by
    neighborhood queries keep their original ids so that locally computed
    edges can be merged back by identity.
    """

    def __init__(
        self,
        ids: Iterable[int],
        coords: np.ndarray | Sequence[Sequence[float]],
        doubling_dim_hint: int = 2,
        metric: Metric = EUCLIDEAN,
    ):
        ids_arr = np.asarray(list(ids), dtype=np.int64)
        coords_arr = np.asarray(coords, dtype=np.float64)
        if coords_arr.ndim != 2:
            raise ValueError("coords must be a 2-d array of shape (n, dim)")
        if ids_arr.shape[0] != coords_arr.shape[0]:
            raise ValueError("ids and coords length mismatch")
        if len(np.unique(ids_arr)) != len(ids_arr):
            raise ValueError("point ids must be unique")
        order = np.argsort(ids_arr)
        self.ids = ids_arr[order]
        self.coords = coords_arr[order]
        self.doubling_dim_hint = int(doubling_dim_hint)
        self.metric = metric
        self._row_of = {int(i): r for r, i in enumerate(self.ids)}

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def dimension(self) -> int:
        return self.coords.shape[1]

    @property
    def points(self) -> list[Point]:
        return [Point(int(i), tuple(c)) for i, c in zip(self.ids, self.coords)]

    def point(self, node_id: int) -> Point:
        row = self._row_of[int(node_id)]
        return Point(int(node_id), tuple(self.coords[row]))

    def row_of(self, node_id: int) -> int:
        return self._row_of[int(node_id)]

    def subset(self, node_ids: Iterable[int]) -> "PointSet":
        rows = [self._row_of[int(i)] for i in node_ids]
        rows = sorted(rows)
        return PointSet(
            self.ids[rows],
            self.coords[rows],
            doubling_dim_hint=self.doubling_dim_hint,
            metric=self.metric,
        )

    def pairwise_distances(self) -> np.ndarray:
        return self.metric.pairwise(self.coords)

    @classmethod
    def from_points(cls, points: Iterable[Point], **kw) -> "PointSet":
        pts = list(points)
        return cls([p.id for p in pts], [p.coords for p in pts], **kw)

    # CSV schema: header "id,x,y", ids ascending.
    def to_csv(self, path: str | Path | None = None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        axes = ["x", "y", "z"][: self.dimension]
        writer.writerow(["id"] + axes)
        for i, c in zip(self.ids, self.coords):
            writer.writerow([int(i)] + [repr(float(v)) for v in c])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text

    @classmethod
    def from_csv(cls, source: str | Path, **kw) -> "PointSet":
        if isinstance(source, Path) or ("\n" not in str(source) and Path(source).exists()):
            text = Path(source).read_text()
        else:
            text = str(source)
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0][0] != "id":
            raise ValueError("point CSV must start with an 'id,...' header")
        ids, coords = [], []
        for lineno, row in enumerate(rows[1:], start=2):
            if not row:
                continue
            try:
                ids.append(int(row[0]))
                coords.append([float(v) for v in row[1:]])
            except (ValueError, IndexError) as exc:
                raise ValueError(f"bad point CSV at line {lineno}: {row!r}") from exc
        return cls(ids, coords, **kw)


def distance(p: Point, q: Point, metric: Metric = EUCLIDEAN) -> float:
    """Metric distance between two points; raises on dimension mismatch."""
    if p.dimension != q.dimension:
        raise ValueError(
            f"dimension mismatch: {p.dimension} vs {q.dimension}"
        )
    return metric.distance(p.coords, q.coords)


def packing_bound(R: float, r: float, d: int) -> int:
    """Max number of pairwise->r separated points inside a radius-R ball:
    floor((4R/r)^d)."""
    if R <= 0 or r <= 0:
        raise ValueError("packing_bound needs positive radii")
    if d < 1:
        raise ValueError("packing_bound needs dimension >= 1")
    return math.floor((4.0 * R / r) ** d)


def generate_uniform_square(n: int, side: float, seed: int) -> PointSet:
    """n i.i.d. uniform points in [0, side]^2.

    PRNG pinned to numpy PCG64(seed); coordinates drawn row-major (x then y
    per point), so a given (n, side, seed) is bit-reproducible.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if side <= 0:
        raise ValueError("need side > 0")
    rng = np.random.Generator(np.random.PCG64(seed))
    coords = rng.random((n, 2)) * side
    return PointSet(np.arange(n), coords)
