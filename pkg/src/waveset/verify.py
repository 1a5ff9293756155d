"""Tiling, spectral and wavelet checks on bounded windows."""

from __future__ import annotations

import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from . import geometry as geo
from .dilation import Lattice, as_matrix, dual_lattice, lattice_points_in_box
from .geometry import ConvexPolygon, Region, affine_image, area


class PreconditionError(ValueError):
    pass


def _sig(x: float) -> float:
    """Round to 12 significant digits for stable reports."""
    return float(f"{x:.12g}")


@dataclass
class TilingReport:
    kind: str
    max_pairwise_overlap: float
    total_overlap: float
    gap_area: float
    window_area: float
    tol: float
    copies: int
    truncation: dict[str, Any] = field(default_factory=dict)
    window: Region | None = None
    gap_tol: float | None = None

    @property
    def passed(self) -> bool:
        gap_tol = self.tol if self.gap_tol is None else self.gap_tol
        return self.total_overlap <= self.tol * self.window_area and self.gap_area <= gap_tol * self.window_area

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "pass": self.passed,
            "tol": self.tol,
            "gap_tol": self.tol if self.gap_tol is None else self.gap_tol,
            "copies": self.copies,
            "truncation": self.truncation,
            "window": self.window.to_literal() if self.window is not None else None,
            "masses": {
                "max_pairwise_overlap": _sig(self.max_pairwise_overlap),
                "total_overlap": _sig(self.total_overlap),
                "gap_area": _sig(self.gap_area),
                "window_area": _sig(self.window_area),
            },
        }


@dataclass
class SpectralReport:
    route: str
    max_offdiag: float
    diag_deviation: float
    measure_deviation: float
    tol: float
    truncation_K: int | None = None
    tiling: TilingReport | None = None

    @property
    def passed(self) -> bool:
        return max(self.max_offdiag, self.diag_deviation, self.measure_deviation) <= self.tol

    def to_dict(self) -> dict[str, Any]:
        out = {
            "kind": "spectral",
            "route": self.route,
            "pass": self.passed,
            "tol": self.tol,
            "lattice_truncation": self.truncation_K,
            "masses": {
                "max_offdiag": _sig(self.max_offdiag),
                "diag_deviation": _sig(self.diag_deviation),
                "measure_deviation": _sig(self.measure_deviation),
            },
        }
        if self.tiling is not None:
            out["tiling"] = self.tiling.to_dict()
        return out


@dataclass
class WaveletReport:
    same_dilation_gram: list[SpectralReport]
    cross_dilation_overlap: float
    coverage_gap: float
    window_area: float
    tol: float
    truncation_K: int
    parseval_error: float | None = None

    @property
    def worst_offdiag(self) -> float:
        return max((r.max_offdiag for r in self.same_dilation_gram), default=0.0)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.same_dilation_gram) and self.cross_dilation_overlap <= self.tol

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "wavelet",
            "pass": self.passed,
            "tol": self.tol,
            "truncation_K": self.truncation_K,
            "dilations": len(self.same_dilation_gram),
            "failing_dilations": [i for i, r in enumerate(self.same_dilation_gram) if not r.passed],
            "masses": {
                "worst_offdiag": _sig(self.worst_offdiag),
                "worst_measure_deviation": _sig(max((r.measure_deviation for r in self.same_dilation_gram), default=0.0)),
                "cross_dilation_overlap": _sig(self.cross_dilation_overlap),
                "coverage_gap": _sig(self.coverage_gap),
                "window_area": _sig(self.window_area),
                "parseval_error": None if self.parseval_error is None else _sig(self.parseval_error),
            },
        }


# ---------------------------------------------------------------------------
# overlap bookkeeping
# ---------------------------------------------------------------------------


def _clip_pieces(pieces: Iterable[ConvexPolygon], window: Region) -> list[ConvexPolygon]:
    out = []
    for p in pieces:
        for w in window.pieces:
            if not geo._bbox_overlap(p.bbox, w.bbox):
                continue
            q = p.intersect(w)
            if q is not None:
                out.append(q)
    return out


def _pair_masses(polys: Sequence[ConvexPolygon], owner: Sequence[Any]) -> tuple[float, float]:
    """Max and total overlap between pieces of different copies."""
    index = geo.BoxIndex(polys)
    pairs: dict[tuple[Any, Any], float] = defaultdict(float)
    for i, p in enumerate(polys):
        for j in index.query(p.bbox):
            if j <= i or owner[i] == owner[j]:
                continue
            inter = p.intersect(polys[j])
            if inter is not None:
                key = (owner[i], owner[j]) if owner[i] < owner[j] else (owner[j], owner[i])
                pairs[key] += inter.area
    if not pairs:
        return 0.0, 0.0
    return max(pairs.values()), float(sum(pairs.values()))


def family_overlap(copies: Sequence[Region]) -> float:
    """Total pairwise overlap area among a list of regions."""
    polys, owner = [], []
    for c, r in enumerate(copies):
        polys.extend(r.pieces)
        owner.extend([c] * len(r))
    return _pair_masses(polys, owner)[1]


def _effective_window(window: Region, exclude: Region | None) -> Region:
    if window.is_empty:
        raise PreconditionError("window is empty")
    return geo.region_subtract(window, exclude) if exclude is not None else window


def _tiling_report(
    kind: str,
    polys: list[ConvexPolygon],
    owner: list[Any],
    window: Region,
    tol: float,
    copies: int,
    trunc: dict[str, Any],
    gap_tol: float | None,
) -> TilingReport:
    max_pair, total = _pair_masses(polys, owner)
    covered = geo.union_area(polys)
    w_area = area(window)
    return TilingReport(kind, max_pair, total, max(0.0, w_area - covered), w_area, tol, copies, trunc, window, gap_tol)


def check_additive_tiling(
    omega: Region,
    lat: Lattice,
    window: Region,
    tol: float = 1e-6,
    exclude: Region | None = None,
    gap_tol: float | None = None,
) -> TilingReport:
    """Do the lattice translates ``omega + t`` tile ``window``?

    Each piece is translated only by the lattice vectors that bring it into
    the window's bounding box, so sets with far-flung pieces stay cheap.
    """
    win = _effective_window(window, exclude)
    wx0, wy0, wx1, wy1 = win.bbox()
    polys: list[ConvexPolygon] = []
    owner: list[Any] = []
    used = set()
    for p in omega.pieces:
        px0, py0, px1, py1 = p.bbox
        for t in lattice_points_in_box(lat, wx0 - px1, wy0 - py1, wx1 - px0, wy1 - py0):
            key = (round(float(t[0]), 9), round(float(t[1]), 9))
            moved = p.translated(float(t[0]), float(t[1]))
            clipped = _clip_pieces([moved], win)
            if clipped:
                used.add(key)
                polys.extend(clipped)
                owner.extend([key] * len(clipped))
    return _tiling_report("additive", polys, owner, win, tol, len(used), {"lattice": lat.to_dict()}, gap_tol)


def check_mult_tiling(
    omega: Region,
    family: Sequence[Any],
    window: Region,
    tol: float = 1e-6,
    exclude: Region | None = None,
    gap_tol: float | None = None,
) -> TilingReport:
    """Do the dilates ``D omega`` for ``D`` in the (truncated) family tile ``window``?"""
    win = _effective_window(window, exclude)
    wb = win.bbox()
    polys: list[ConvexPolygon] = []
    owner: list[int] = []
    for c, d in enumerate(family):
        img = affine_image(omega, as_matrix(d))
        clipped = _clip_pieces((p for p in img.pieces if geo._bbox_overlap(p.bbox, wb)), win)
        polys.extend(clipped)
        owner.extend([c] * len(clipped))
    return _tiling_report("multiplicative", polys, owner, win, tol, len(family), {"dilations": len(family)}, gap_tol)


# ---------------------------------------------------------------------------
# spectral checks
# ---------------------------------------------------------------------------


def _fundamental_cell(lat: Lattice) -> Region:
    b1, b2 = lat.basis[:, 0], lat.basis[:, 1]
    return Region.polygon([np.zeros(2), b1, b1 + b2, b2])


def spectral_window(omega: Region, lat: Lattice) -> Region:
    """Bounding box of ``omega`` together with one fundamental cell of the dual lattice."""
    x0, y0, x1, y1 = omega.bbox()
    cx0, cy0, cx1, cy1 = _fundamental_cell(dual_lattice(lat)).bbox()
    return Region.box(min(x0, cx0), min(y0, cy0), max(x1, cx1), max(y1, cy1))


def _gram_masses(ft, base_area: float, lat_basis: np.ndarray, K: int) -> tuple[float, float]:
    """Largest off-diagonal and diagonal deviation of the normalised Gram matrix.

    ``G[s, t] = FT(s - t)`` only depends on the difference, so the distinct
    entries are the frequencies ``B z`` for ``z`` in ``[-2K, 2K]^2``.
    """
    r = np.arange(-2 * K, 2 * K + 1)
    z = np.stack(np.meshgrid(r, r, indexing="ij"), axis=-1).reshape(-1, 2).astype(float)
    vals = ft(z @ lat_basis.T) / base_area
    zero = np.all(z == 0, axis=1)
    off = float(np.max(np.abs(vals[~zero]))) if (~zero).any() else 0.0
    diag = float(abs(vals[zero][0] - 1.0))
    return off, diag


ROUTES = {"fuglede": "fuglede-tiling", "gram": "gram-matrix"}


def check_spectral(
    omega: Region,
    lat: Lattice,
    route: str = "gram-matrix",
    truncation_K: int = 3,
    tol: float = 1e-3,
    window: Region | None = None,
) -> SpectralReport:
    """Is ``{exp(2 pi i <t, .>) : t in lat}`` an orthogonal basis of ``L^2(omega)``?

    ``fuglede-tiling`` checks that ``omega`` tiles by the dual lattice on a window
    and reports overlap and gap per unit window area. ``gram-matrix`` evaluates the
    Gram matrix of the exponentials indexed by ``[-K, K]^2`` in closed form.
    Both include the measure condition ``|omega| covol(lat) = 1``.
    """
    a = area(omega)
    if a <= geo.tolerances().area:
        raise PreconditionError("omega has zero area")
    measure = abs(a * lat.covolume - 1.0)
    route = ROUTES.get(route, route)
    if route == "fuglede-tiling":
        win = window if window is not None else spectral_window(omega, lat)
        tiling = check_additive_tiling(omega, dual_lattice(lat), win, tol)
        return SpectralReport(
            "fuglede-tiling",
            tiling.total_overlap / tiling.window_area,
            tiling.gap_area / tiling.window_area,
            measure,
            tol,
            None,
            tiling,
        )
    if route == "gram-matrix":
        if truncation_K < 1:
            raise ValueError("truncation_K must be >= 1")
        off, diag = _gram_masses(lambda k: geo.indicator_fourier(omega, k), a, lat.basis, truncation_K)
        return SpectralReport("gram-matrix", off, diag, measure, tol, truncation_K)
    raise ValueError(f"unknown route {route!r}")


def _map(fn, items: Sequence[Any]) -> list[Any]:
    workers = geo.worker_count()
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(workers) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def check_wavelet_system(
    omega: Region,
    family: Sequence[Any],
    lat: Lattice,
    truncation_K: int = 3,
    window: Region | None = None,
    tol: float = 1e-4,
    exclude: Region | None = None,
) -> WaveletReport:
    """Frequency-side test of ``{|det D|^{-1/2} psi(D^T x - t)}``.

    For each frequency dilation ``D`` the exponentials ``exp(2 pi i <D^{-T} t, .>)``,
    ``t`` in ``lat``, are tested on ``D omega`` through their Gram matrix
    (entries ``FT_{D omega}(D^{-T}(s - t)) / |det D|``). Across dilations the
    supports ``D omega`` must not overlap inside the window. The time-domain
    dilations are the transposes ``D^T``.
    """
    mats = [as_matrix(d) for d in family]
    a = area(omega)
    if a <= geo.tolerances().area:
        raise PreconditionError("omega has zero area")

    def one(d: np.ndarray) -> SpectralReport:
        det = abs(float(np.linalg.det(d)))
        image = affine_image(omega, d)
        basis = np.linalg.inv(d).T @ lat.basis
        off, diag = _gram_masses(lambda k: geo.indicator_fourier(image, k) / det, a, basis, truncation_K)
        measure = abs(area(image) / det * lat.covolume - 1.0)
        return SpectralReport("gram-matrix", off, diag, measure, tol, truncation_K)

    per = _map(one, mats)
    if window is None:
        window = Region.box(-2.0, -2.0, 2.0, 2.0)
    tiling = check_mult_tiling(omega, mats, window, tol, exclude)
    return WaveletReport(per, tiling.max_pairwise_overlap, tiling.gap_area, tiling.window_area, tol, truncation_K)


# ---------------------------------------------------------------------------
# Parseval test
# ---------------------------------------------------------------------------


@dataclass
class ParsevalReport:
    defects: dict[int, float]
    max_defect: float | None = None
    require_decrease: bool = True

    @property
    def passed(self) -> bool:
        ks = sorted(self.defects)
        ok = True
        if self.max_defect is not None:
            ok = self.defects[ks[-1]] <= self.max_defect
        if self.require_decrease and len(ks) > 1:
            ok = ok and self.defects[ks[-1]] < self.defects[ks[0]]
        return ok

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "parseval",
            "pass": self.passed,
            "max_defect": self.max_defect,
            "masses": {f"defect_K{k}": _sig(v) for k, v in sorted(self.defects.items())},
        }


def _parseval_energy_grid(
    omega: Region, family: Sequence[Any], lat: Lattice, target: Region, K: int
) -> np.ndarray:
    """``|<chi_target, psi_{D,t}>|^2`` summed over dilations, on the grid ``t = B z``, ``z`` in ``[-K, K]^2``."""
    a = area(omega)
    r = np.arange(-K, K + 1)
    z = np.stack(np.meshgrid(r, r, indexing="ij"), axis=-1).reshape(-1, 2).astype(float)
    tb = target.bbox()
    mats = [as_matrix(d) for d in family]

    def one(d: np.ndarray) -> np.ndarray | None:
        img = affine_image(omega, d)
        part = geo.region_intersect(target, Region(tuple(p for p in img.pieces if geo._bbox_overlap(p.bbox, tb))))
        if area(part) <= 0.0:
            return None
        det = abs(float(np.linalg.det(d)))
        freqs = z @ (np.linalg.inv(d).T @ lat.basis).T
        c = geo.indicator_fourier(part, freqs)
        return (np.abs(c) ** 2 / (det * a)).reshape(len(r), len(r))

    grids = [g for g in _map(one, mats) if g is not None]
    return np.sum(grids, axis=0) if grids else np.zeros((len(r), len(r)))


def _check_target(omega: Region, family: Sequence[Any], target: Region, tol: float) -> float:
    t_area = area(target)
    if t_area <= 0.0:
        raise PreconditionError("target has zero area")
    tb = target.bbox()
    polys = []
    for d in family:
        img = affine_image(omega, as_matrix(d))
        polys.extend(_clip_pieces((p for p in img.pieces if geo._bbox_overlap(p.bbox, tb)), target))
    uncovered = t_area - geo.union_area(polys)
    if uncovered > tol * max(1.0, t_area):
        raise PreconditionError(f"target not covered by the dilates of omega (uncovered area {uncovered:.3e})")
    return t_area


def parseval_defects(
    omega: Region,
    family: Sequence[Any],
    lat: Lattice,
    target: Region,
    truncations: Sequence[int],
    tol: float = 1e-6,
) -> dict[int, float]:
    """Relative Parseval defect for several box truncations, from one coefficient grid."""
    t_area = _check_target(omega, family, target, tol)
    Kmax = max(truncations)
    grid = _parseval_energy_grid(omega, family, lat, target, Kmax)
    out = {}
    for K in truncations:
        lo, hi = Kmax - K, Kmax + K + 1
        energy = float(grid[lo:hi, lo:hi].sum())
        out[K] = abs(t_area - energy) / t_area
    return out


def parseval_test(
    omega: Region,
    family: Sequence[Any],
    lat: Lattice,
    target: Region,
    truncation_K: int,
    tol: float = 1e-6,
) -> float:
    """``| ||chi_target||^2 - sum |<chi_target, psi_{D,t}>|^2 | / ||chi_target||^2``.

    Coefficients are computed on the frequency side: with ``psi_hat =
    |omega|^{-1/2} chi_omega``, ``<chi_target, psi_{D,t}> = |det D|^{-1/2}
    |omega|^{-1/2} FT_{target ∩ D omega}(D^{-T} t)``. Raises when ``target``
    is not covered by the dilates of ``omega`` up to ``tol``.
    """
    return parseval_defects(omega, family, lat, target, [truncation_K], tol)[truncation_K]


def coverage_of(omega: Region, family: Sequence[Any], window: Region) -> float:
    """Area of ``window`` covered by ``U D omega``."""
    wb = window.bbox()
    polys = []
    for d in family:
        img = affine_image(omega, as_matrix(d))
        polys.extend(_clip_pieces((p for p in img.pieces if geo._bbox_overlap(p.bbox, wb)), window))
    return geo.union_area(polys)


def sector_window(r_in: float, r_out: float, angle: float, segments: int = 64, start: float = 0.0) -> Region:
    """Polygonal annular sector used as a window for rotation-scaling families."""
    if start == 0.0:
        return geo.polygonal_annular_sector(r_in, r_out, angle, segments)
    rot = np.array([[math.cos(start), -math.sin(start)], [math.sin(start), math.cos(start)]])
    return affine_image(geo.polygonal_annular_sector(r_in, r_out, angle, segments), rot)
