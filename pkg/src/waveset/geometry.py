"""Planar region algebra on finite unions of convex polygons.

Regions are immutable. Boolean operations clip convex pieces against
half-planes (Sutherland-Hodgman), so every result is again a list of
interior-disjoint convex pieces. Slivers below the area tolerance are
dropped, which is how "up to measure zero" becomes a numerical statement.
"""

from __future__ import annotations

import contextlib
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Sequence

import numpy as np

Vertex = tuple[float, float]


class GeometryError(ValueError):
    """Invalid polygon, region or map."""


class InvalidMapError(GeometryError):
    """Affine map with a (numerically) singular linear part."""


@dataclass(frozen=True)
class Tolerances:
    geom: float = 1e-12
    area: float = 1e-12
    det: float = 1e-12
    phase: float = 1e-8


_TOL = Tolerances()


def tolerances() -> Tolerances:
    return _TOL


@contextlib.contextmanager
def use_tolerances(**overrides: float) -> Iterator[Tolerances]:
    """Temporarily override the module tolerances (``geom``, ``area``, ``det``, ``phase``)."""
    global _TOL
    old = _TOL
    _TOL = replace(old, **overrides)
    try:
        yield _TOL
    finally:
        _TOL = old


def worker_count() -> int:
    """Parallelism cap from ``WAVESET_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("WAVESET_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# low-level convex polygon kernels (plain tuples; polygons are tiny)
# ---------------------------------------------------------------------------


def _signed_area(pts: Sequence[Vertex]) -> float:
    s = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def _clip(pts: Sequence[Vertex], px: float, py: float, qx: float, qy: float) -> list[Vertex]:
    """Keep the part of a convex polygon left of the directed line p -> q."""
    ex, ey = qx - px, qy - py
    scale = math.hypot(ex, ey)
    eps = _TOL.geom * max(1.0, scale)
    out: list[Vertex] = []
    prev = pts[-1]
    sp = ex * (prev[1] - py) - ey * (prev[0] - px)
    for cur in pts:
        sc = ex * (cur[1] - py) - ey * (cur[0] - px)
        if sc >= -eps:
            if sp < -eps:
                t = sp / (sp - sc)
                out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
            out.append(cur)
        elif sp >= -eps:
            if sp > eps:
                t = sp / (sp - sc)
                out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
        prev, sp = cur, sc
    return out


def _clean(pts: Sequence[Vertex]) -> tuple[Vertex, ...] | None:
    """Drop duplicate and collinear vertices; None if the result is a sliver."""
    if len(pts) < 3:
        return None
    eps = _TOL.geom
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    scale = max(1.0, max(xs) - min(xs), max(ys) - min(ys))
    dedup: list[Vertex] = []
    for p in pts:
        if dedup and abs(p[0] - dedup[-1][0]) <= eps * scale and abs(p[1] - dedup[-1][1]) <= eps * scale:
            continue
        dedup.append(p)
    while len(dedup) > 1 and abs(dedup[0][0] - dedup[-1][0]) <= eps * scale and abs(dedup[0][1] - dedup[-1][1]) <= eps * scale:
        dedup.pop()
    changed = True
    while changed and len(dedup) >= 3:
        changed = False
        n = len(dedup)
        for i in range(n):
            a, b, c = dedup[i - 1], dedup[i], dedup[(i + 1) % n]
            cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if abs(cross) <= eps * scale * scale:
                del dedup[i]
                changed = True
                break
    if len(dedup) < 3:
        return None
    if _signed_area(dedup) <= _TOL.area:
        return None
    return tuple(dedup)


def _bbox(pts: Sequence[Vertex]) -> tuple[float, float, float, float]:
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return (min(xs), min(ys), max(xs), max(ys))


def _bbox_overlap(a: tuple[float, float, float, float], b: tuple[float, float, float, float]) -> bool:
    return a[0] < b[2] and b[0] < a[2] and a[1] < b[3] and b[1] < a[3]


# ---------------------------------------------------------------------------
# public types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Counterclockwise, strictly convex polygon with positive area.

    Construct through :meth:`from_points`, which normalizes orientation and
    removes collinear vertices; the raw constructor trusts its input.
    """

    vertices: tuple[Vertex, ...]
    area: float = field(default=0.0)
    bbox: tuple[float, float, float, float] = field(default=(0.0, 0.0, 0.0, 0.0))

    @classmethod
    def _trusted(cls, verts: tuple[Vertex, ...]) -> ConvexPolygon:
        return cls(verts, _signed_area(verts), _bbox(verts))

    @classmethod
    def from_points(cls, pts: Iterable[Sequence[float]]) -> ConvexPolygon:
        raw = [(float(p[0]), float(p[1])) for p in pts]
        for x, y in raw:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise GeometryError("polygon vertex is not finite")
        if len(raw) >= 3 and _signed_area(raw) < 0:
            raw.reverse()
        cleaned = _clean(raw)
        if cleaned is None:
            raise GeometryError(f"degenerate polygon {raw}")
        n = len(cleaned)
        for i in range(n):
            a, b, c = cleaned[i - 1], cleaned[i], cleaned[(i + 1) % n]
            if (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) < 0:
                raise GeometryError(f"polygon is not convex: {raw}")
        return cls._trusted(cleaned)

    @classmethod
    def box(cls, x0: float, y0: float, x1: float, y1: float) -> ConvexPolygon:
        return cls.from_points([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])

    def perimeter(self) -> float:
        v = self.vertices
        return sum(math.dist(v[i - 1], v[i]) for i in range(len(v)))

    def centroid(self) -> Vertex:
        v = self.vertices
        cx = cy = 0.0
        for i in range(len(v)):
            x0, y0 = v[i - 1]
            x1, y1 = v[i]
            c = x0 * y1 - x1 * y0
            cx += (x0 + x1) * c
            cy += (y0 + y1) * c
        return (cx / (6 * self.area), cy / (6 * self.area))

    def contains(self, x: float, y: float, eps: float = 0.0) -> bool:
        v = self.vertices
        for i in range(len(v)):
            ax, ay = v[i - 1]
            bx, by = v[i]
            if (bx - ax) * (y - ay) - (by - ay) * (x - ax) < -eps:
                return False
        return True

    def intersect(self, other: ConvexPolygon) -> ConvexPolygon | None:
        if not _bbox_overlap(self.bbox, other.bbox):
            return None
        pts: list[Vertex] = list(self.vertices)
        ov = other.vertices
        for i in range(len(ov)):
            ax, ay = ov[i - 1]
            bx, by = ov[i]
            pts = _clip(pts, ax, ay, bx, by)
            if len(pts) < 3:
                return None
        cleaned = _clean(pts)
        return None if cleaned is None else ConvexPolygon._trusted(cleaned)

    def subtract(self, other: ConvexPolygon) -> list[ConvexPolygon]:
        """Convex pieces of ``self \\ other``, peeled off edge by edge of ``other``."""
        if not _bbox_overlap(self.bbox, other.bbox):
            return [self]
        inter = self.intersect(other)
        if inter is None:
            return [self]
        if inter.area >= self.area - _TOL.area:
            return []
        out: list[ConvexPolygon] = []
        rest: list[Vertex] = list(self.vertices)
        ov = other.vertices
        for i in range(len(ov)):
            ax, ay = ov[i - 1]
            bx, by = ov[i]
            outside = _clip(rest, bx, by, ax, ay)
            if len(outside) >= 3:
                cleaned = _clean(outside)
                if cleaned is not None:
                    out.append(ConvexPolygon._trusted(cleaned))
            rest = _clip(rest, ax, ay, bx, by)
            if len(rest) < 3:
                break
        return out

    def transformed(self, linear: np.ndarray, shift: Sequence[float] = (0.0, 0.0)) -> ConvexPolygon | None:
        a, b = float(linear[0, 0]), float(linear[0, 1])
        c, d = float(linear[1, 0]), float(linear[1, 1])
        sx, sy = float(shift[0]), float(shift[1])
        pts = [(a * x + b * y + sx, c * x + d * y + sy) for x, y in self.vertices]
        if a * d - b * c < 0:
            pts.reverse()
        cleaned = _clean(pts)
        return None if cleaned is None else ConvexPolygon._trusted(cleaned)

    def translated(self, tx: float, ty: float) -> ConvexPolygon:
        pts = tuple((x + tx, y + ty) for x, y in self.vertices)
        return ConvexPolygon(pts, self.area, _bbox(pts))

    def to_literal(self) -> list[list[float]]:
        return [[x, y] for x, y in self.vertices]


@dataclass(frozen=True)
class Region:
    """Finite union of interior-disjoint convex polygons."""

    pieces: tuple[ConvexPolygon, ...] = ()

    @classmethod
    def empty(cls) -> Region:
        return cls(())

    @classmethod
    def box(cls, x0: float, y0: float, x1: float, y1: float) -> Region:
        return cls((ConvexPolygon.box(x0, y0, x1, y1),))

    @classmethod
    def polygon(cls, pts: Iterable[Sequence[float]]) -> Region:
        return cls((ConvexPolygon.from_points(pts),))

    @classmethod
    def from_literal(cls, literal: Sequence[Sequence[Sequence[float]]]) -> Region:
        """Build from ``[[[x, y], ...], ...]``; overlapping input pieces are merged."""
        out = cls.empty()
        for poly in literal:
            out = region_union(out, cls((ConvexPolygon.from_points(poly),)))
        return out

    def to_literal(self) -> list[list[list[float]]]:
        return [p.to_literal() for p in self.pieces]

    def __len__(self) -> int:
        return len(self.pieces)

    def __iter__(self) -> Iterator[ConvexPolygon]:
        return iter(self.pieces)

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def bbox(self) -> tuple[float, float, float, float]:
        if not self.pieces:
            raise GeometryError("empty region has no bounding box")
        bs = [p.bbox for p in self.pieces]
        return (min(b[0] for b in bs), min(b[1] for b in bs), max(b[2] for b in bs), max(b[3] for b in bs))

    def perimeter(self) -> float:
        """Sum of piece perimeters (an upper bound for the boundary length)."""
        return sum(p.perimeter() for p in self.pieces)

    def translated(self, tx: float, ty: float) -> Region:
        return Region(tuple(p.translated(tx, ty) for p in self.pieces))

    def contains(self, x: float, y: float, eps: float = 1e-12) -> bool:
        return any(
            p.bbox[0] - eps <= x <= p.bbox[2] + eps and p.bbox[1] - eps <= y <= p.bbox[3] + eps and p.contains(x, y, eps)
            for p in self.pieces
        )

    def check_disjoint(self) -> float:
        """Total pairwise overlap area between pieces (should be ~0)."""
        total = 0.0
        ps = self.pieces
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                inter = ps[i].intersect(ps[j])
                if inter is not None:
                    total += inter.area
        return total


@dataclass(frozen=True)
class AffineMap:
    """``x -> linear @ x + shift``."""

    linear: np.ndarray
    shift: Point = Point(0.0, 0.0)

    def __post_init__(self) -> None:
        lin = np.asarray(self.linear, dtype=float)
        if lin.shape != (2, 2) or not np.all(np.isfinite(lin)):
            raise InvalidMapError("linear part must be a finite 2x2 matrix")
        object.__setattr__(self, "linear", lin)
        if abs(self.det) <= _TOL.det:
            raise InvalidMapError(f"singular linear part (det={self.det:g})")

    @property
    def det(self) -> float:
        m = self.linear
        return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])

    def inverse(self) -> AffineMap:
        inv = np.linalg.inv(self.linear)
        s = -inv @ self.shift.as_array()
        return AffineMap(inv, Point(float(s[0]), float(s[1])))


# ---------------------------------------------------------------------------
# region algebra
# ---------------------------------------------------------------------------


def affine_image(r: Region, m: AffineMap | np.ndarray) -> Region:
    if not isinstance(m, AffineMap):
        m = AffineMap(np.asarray(m, dtype=float))
    out = []
    for p in r.pieces:
        q = p.transformed(m.linear, (m.shift.x, m.shift.y))
        if q is not None:
            out.append(q)
    return Region(tuple(out))


def region_intersect(a: Region, b: Region) -> Region:
    out = []
    for p in a.pieces:
        for q in b.pieces:
            inter = p.intersect(q)
            if inter is not None:
                out.append(inter)
    return Region(tuple(out))


def _subtract_pieces(pieces: Iterable[ConvexPolygon], cutters: Sequence[ConvexPolygon]) -> list[ConvexPolygon]:
    out: list[ConvexPolygon] = []
    for p in pieces:
        current = [p]
        for c in cutters:
            if not _bbox_overlap(p.bbox, c.bbox):
                continue
            nxt: list[ConvexPolygon] = []
            for cur in current:
                nxt.extend(cur.subtract(c))
            current = nxt
            if not current:
                break
        out.extend(current)
    return out


def region_subtract(a: Region, b: Region) -> Region:
    return Region(tuple(_subtract_pieces(a.pieces, b.pieces)))


def region_union(a: Region, b: Region) -> Region:
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    return Region(a.pieces + tuple(_subtract_pieces(b.pieces, a.pieces)))


def region_concat(*regions: Region) -> Region:
    """Concatenate regions already known to be interior-disjoint (no checks)."""
    return Region(tuple(p for r in regions for p in r.pieces))


def area(r: Region) -> float:
    return float(sum(p.area for p in r.pieces))


def symmetric_difference_area(a: Region, b: Region) -> float:
    return area(region_subtract(a, b)) + area(region_subtract(b, a))


def intersection_area(a: Region, b: Region) -> float:
    total = 0.0
    for p in a.pieces:
        for q in b.pieces:
            inter = p.intersect(q)
            if inter is not None:
                total += inter.area
    return total


def union_area(polys: Sequence[ConvexPolygon]) -> float:
    """Exact area of a union of possibly overlapping convex polygons.

    Each polygon contributes the part not covered by earlier ones; only
    earlier polygons with a positive-area intersection are subtracted, so
    near-tilings stay cheap.
    """
    index = BoxIndex(polys)
    total = 0.0
    for i, p in enumerate(polys):
        cutters = []
        for j in index.query(p.bbox):
            if j >= i:
                continue
            inter = p.intersect(polys[j])
            if inter is not None:
                cutters.append(polys[j])
        if not cutters:
            total += p.area
        else:
            total += sum(q.area for q in _subtract_pieces([p], cutters))
    return total


class BoxIndex:
    """Uniform-grid bucket index over polygon bounding boxes."""

    def __init__(self, polys: Sequence[ConvexPolygon], cells: int | None = None) -> None:
        self.polys = polys
        self.buckets: dict[tuple[int, int], list[int]] = {}
        if not polys:
            self.x0 = self.y0 = 0.0
            self.h = 1.0
            return
        boxes = np.array([p.bbox for p in polys])
        self.x0 = float(boxes[:, 0].min())
        self.y0 = float(boxes[:, 1].min())
        span = max(float(boxes[:, 2].max()) - self.x0, float(boxes[:, 3].max()) - self.y0, 1e-300)
        if cells is None:
            cells = max(1, int(math.sqrt(len(polys))))
        # bucket size follows the typical piece size so big stragglers do not force a coarse grid
        typical = float(np.median(np.maximum(boxes[:, 2] - boxes[:, 0], boxes[:, 3] - boxes[:, 1])))
        self.h = max(span / cells, typical, 1e-300)
        for i, b in enumerate(boxes):
            for key in self._keys(b):
                self.buckets.setdefault(key, []).append(i)

    def _keys(self, b: Sequence[float]) -> Iterator[tuple[int, int]]:
        i0 = int(math.floor((b[0] - self.x0) / self.h))
        i1 = int(math.floor((b[2] - self.x0) / self.h))
        j0 = int(math.floor((b[1] - self.y0) / self.h))
        j1 = int(math.floor((b[3] - self.y0) / self.h))
        if (i1 - i0 + 1) * (j1 - j0 + 1) > 4096:
            # huge box: enumerate only occupied buckets
            for key in list(self.buckets):
                if i0 <= key[0] <= i1 and j0 <= key[1] <= j1:
                    yield key
            return
        for i in range(i0, i1 + 1):
            for j in range(j0, j1 + 1):
                yield (i, j)

    def query(self, bbox: Sequence[float]) -> list[int]:
        found: set[int] = set()
        for key in self._keys(bbox):
            found.update(self.buckets.get(key, ()))
        return sorted(i for i in found if _bbox_overlap(self.polys[i].bbox, tuple(bbox)))


# ---------------------------------------------------------------------------
# Fourier transform of indicators
# ---------------------------------------------------------------------------


def _polygon_arrays(r: Region) -> list[np.ndarray]:
    return [np.asarray(p.vertices, dtype=float) for p in r.pieces]


def indicator_fourier(r: Region, k: Point | Sequence[float] | np.ndarray) -> complex | np.ndarray:
    """``integral over r of exp(-2 pi i <k, x>) dx`` in closed form.

    ``k`` may be a single frequency or an ``(M, 2)`` array; the return type
    follows. Each polygon edge contributes through the divergence theorem;
    frequencies with ``|k| < phase`` use the first-order expansion about the
    piece centroid instead, and ``k == 0`` returns the area exactly.
    """
    single = isinstance(k, Point) or np.ndim(k) == 1
    ks = np.atleast_2d(np.asarray(tuple(k) if isinstance(k, Point) else k, dtype=float))
    out = np.zeros(len(ks), dtype=complex)
    knorm2 = np.einsum("ij,ij->i", ks, ks)
    zero = knorm2 == 0.0
    small = (~zero) & (knorm2 < _TOL.phase**2)
    big = ~(zero | small)
    out[zero] = area(r)
    kb = ks[big]
    ks_small = ks[small]
    for p in r.pieces:
        cx, cy = p.centroid()
        v = np.asarray(p.vertices, dtype=float) - (cx, cy)
        phase_c = np.exp(-2j * np.pi * (ks[:, 0] * cx + ks[:, 1] * cy))
        if len(kb):
            d = np.roll(v, -1, axis=0) - v
            mid = 0.5 * (np.roll(v, -1, axis=0) + v)
            flux = kb[:, :1] * d[None, :, 1] - kb[:, 1:] * d[None, :, 0]
            kd = kb @ d.T
            km = kb @ mid.T
            terms = flux * np.exp(-2j * np.pi * km) * np.sinc(kd)
            val = 1j / (2 * np.pi * knorm2[big]) * terms.sum(axis=1)
            out[big] += val * phase_c[big]
        if len(ks_small):
            # centered first moment vanishes, so the expansion is area to O(|k|^2)
            out[small] += p.area * phase_c[small]
    if single:
        return complex(out[0])
    return out


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------


def _coverage_mask(r: Region, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Boolean mask of grid cell centres (rows = ys, cols = xs) lying in r."""
    nx, ny = len(xs), len(ys)
    diff = np.zeros((ny, nx + 1), dtype=np.int32)
    x0, dx = xs[0], (xs[1] - xs[0]) if nx > 1 else 1.0
    for p in r.pieces:
        bx0, by0, bx1, by1 = p.bbox
        rows = np.nonzero((ys >= by0) & (ys <= by1))[0]
        if len(rows) == 0:
            continue
        y = ys[rows]
        lo = np.full(len(rows), -np.inf)
        hi = np.full(len(rows), np.inf)
        v = p.vertices
        for i in range(len(v)):
            ax, ay = v[i - 1]
            bx, by = v[i]
            # inside iff (bx-ax)(y-ay) - (by-ay)(x-ax) >= 0
            ey = by - ay
            ex = bx - ax
            rhs = ex * (y - ay)
            if ey == 0.0:
                bad = rhs < 0
                lo[bad] = np.inf
                continue
            bound = ax + rhs / ey
            if ey > 0:
                hi = np.minimum(hi, bound)
            else:
                lo = np.maximum(lo, bound)
        i0 = np.ceil((lo - x0) / dx).clip(0, nx)
        i1 = (np.floor((hi - x0) / dx) + 1).clip(0, nx)
        ok = i1 > i0
        rr = rows[ok]
        np.add.at(diff, (rr, i0[ok].astype(int)), 1)
        np.add.at(diff, (rr, i1[ok].astype(int)), -1)
    return np.cumsum(diff[:, :nx], axis=1) > 0


def raster_area(r: Region, window: Region, resolution: int) -> float:
    """Area of ``r`` inside ``window`` by counting cell centres on a grid over the window's bbox."""
    if resolution < 64:
        raise ValueError("resolution must be at least 64")
    if window.is_empty or r.is_empty:
        return 0.0
    x0, y0, x1, y1 = window.bbox()
    hx = (x1 - x0) / resolution
    hy = (y1 - y0) / resolution
    xs = x0 + hx * (np.arange(resolution) + 0.5)
    ys = y0 + hy * (np.arange(resolution) + 0.5)
    mask = _coverage_mask(r, xs, ys) & _coverage_mask(window, xs, ys)
    return float(mask.sum()) * hx * hy


def raster_error_bound(r: Region, window: Region, resolution: int) -> float:
    if window.is_empty or r.is_empty:
        return 0.0
    x0, y0, x1, y1 = window.bbox()
    diam = math.hypot(x1 - x0, y1 - y0)
    clipped = region_intersect(r, window)
    return clipped.perimeter() * diam / resolution


def _contains_points(r: Region, pts: np.ndarray) -> np.ndarray:
    inside = np.zeros(len(pts), dtype=bool)
    for p in r.pieces:
        bx0, by0, bx1, by1 = p.bbox
        cand = np.nonzero(
            (~inside) & (pts[:, 0] >= bx0) & (pts[:, 0] <= bx1) & (pts[:, 1] >= by0) & (pts[:, 1] <= by1)
        )[0]
        if len(cand) == 0:
            continue
        q = pts[cand]
        ok = np.ones(len(cand), dtype=bool)
        v = p.vertices
        for i in range(len(v)):
            ax, ay = v[i - 1]
            bx, by = v[i]
            ok &= (bx - ax) * (q[:, 1] - ay) - (by - ay) * (q[:, 0] - ax) >= 0
        inside[cand[ok]] = True
    return inside


MC_CHUNK = 1 << 17


def monte_carlo_area(r: Region, window: Region, samples: int, seed: int) -> tuple[float, float]:
    """Hit-or-miss estimate of ``area(r ∩ window)`` with its standard error.

    Samples are drawn uniformly from the window's bounding box in fixed
    chunks of ``MC_CHUNK``; chunk ``i`` uses the ``i``-th child of
    ``SeedSequence(seed)``, so the estimate does not depend on how many
    threads (``WAVESET_THREADS``) evaluate the chunks.
    """
    if samples < 10_000:
        raise ValueError("at least 10^4 samples are required")
    if r.is_empty or window.is_empty:
        return 0.0, 0.0
    x0, y0, x1, y1 = window.bbox()
    box_area = (x1 - x0) * (y1 - y0)
    n_chunks = -(-samples // MC_CHUNK)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    sizes = [MC_CHUNK] * (n_chunks - 1) + [samples - MC_CHUNK * (n_chunks - 1)]

    def hits(i: int) -> int:
        rng = np.random.default_rng(children[i])
        pts = rng.random((sizes[i], 2)) * (x1 - x0, y1 - y0) + (x0, y0)
        return int((_contains_points(r, pts) & _contains_points(window, pts)).sum())

    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            counts = list(ex.map(hits, range(n_chunks)))
    else:
        counts = [hits(i) for i in range(n_chunks)]
    p = sum(counts) / samples
    return box_area * p, box_area * math.sqrt(p * (1 - p) / samples)


# ---------------------------------------------------------------------------
# convenience shapes
# ---------------------------------------------------------------------------


def sector_fan(radius: float, angle: float, segments: int, start: float = 0.0) -> list[Vertex]:
    """Arc vertices of a polygonal circular arc (inscribed, equal angular steps)."""
    return [
        (radius * math.cos(start + angle * i / segments), radius * math.sin(start + angle * i / segments))
        for i in range(segments + 1)
    ]


def polygonal_sector(radius: float, angle: float, segments: int) -> Region:
    """Polygonal disc sector ``{0 <= arg <= angle, r <= radius}`` split into convex wedges."""
    arc = sector_fan(radius, angle, segments)
    if angle < math.pi - 1e-12:
        return Region((ConvexPolygon.from_points([(0.0, 0.0)] + arc),))
    pieces = []
    for i in range(segments):
        pieces.append(ConvexPolygon.from_points([(0.0, 0.0), arc[i], arc[i + 1]]))
    return Region(tuple(pieces))


def polygonal_annular_sector(r_in: float, r_out: float, angle: float, segments: int) -> Region:
    """``{r_in <= r <= r_out, 0 <= arg <= angle}`` with both arcs inscribed at the same angles.

    Using the same angular nodes on both arcs makes the outer arc an exact
    dilate of the inner one, so the dilates of this set by ``r_out / r_in``
    tile the polygonal sector exactly.
    """
    inner = sector_fan(r_in, angle, segments)
    outer = sector_fan(r_out, angle, segments)
    pieces = [
        ConvexPolygon.from_points([inner[i], outer[i], outer[i + 1], inner[i + 1]]) for i in range(segments)
    ]
    return Region(tuple(pieces))
