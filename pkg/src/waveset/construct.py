"""Wavelet-set constructions in the frequency domain.

Three builders produce a :class:`ConstructionTrace`:

* :func:`construct_diag_rot` evaluates the explicit recursion for the
  ``{R^k A^n}``, ``A = diag(2, 3)`` example piece by piece;
* :func:`dls_exchange` is a deterministic greedy congruence exchange
  between a translation tile ``E`` and a dilation tile ``F``;
* :func:`construct_rot_scale` reduces ``{a^n R^k}`` to the scaling group on
  one sector and runs the exchange there.

:func:`induce_subspace_tile`, :func:`factor_dilation_set` and
:func:`exwave_pipeline` implement the stepwise composition of product
dilation sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Literal, NamedTuple, Sequence

import numpy as np

from . import geometry as geo
from .dilation import (
    DilationSpec,
    Lattice,
    as_matrix,
    enumerate_dilations,
    is_closed_under,
    is_direct_product,
    is_expansive,
    lattice_points_in_box,
    matrix_power,
    rotation,
)
from .geometry import ConvexPolygon, Point, Region, affine_image, area, region_subtract

A_DIAG = np.diag([2.0, 3.0])

# translation candidates examined per dilation before giving up on it
MAX_TRANSLATIONS = 4096


class ConstructionError(RuntimeError):
    """A construction could not be completed."""


class StuckExchangeError(ConstructionError):
    """No admissible (dilation, translation) fits a positive-area residue."""

    def __init__(self, message: str, residue: Region) -> None:
        super().__init__(message)
        self.residue = residue


class ConvergenceError(ConstructionError):
    def __init__(self, message: str, residue: Region) -> None:
        super().__init__(message)
        self.residue = residue


class HypothesisError(ConstructionError):
    """A named hypothesis of a construction does not hold."""

    def __init__(self, hypothesis: str, detail: str = "") -> None:
        super().__init__(f"hypothesis '{hypothesis}' failed" + (f": {detail}" if detail else ""))
        self.hypothesis = hypothesis


class FactorizationError(ConstructionError):
    pass


@dataclass(frozen=True)
class ExchangeStep:
    """``piece`` (a subset of E) is moved by ``translation`` into ``dilations[dilation_index] F``."""

    piece: Region
    translation: Point
    dilation_index: int
    iteration: int
    label: str = ""

    def __post_init__(self) -> None:
        if area(self.piece) <= geo.tolerances().area:
            raise ValueError("exchange step with empty piece")

    @property
    def placed(self) -> Region:
        return self.piece.translated(self.translation.x, self.translation.y)

    def to_dict(self) -> dict[str, Any]:
        return {
            "iteration": self.iteration,
            "label": self.label,
            "dilation_index": self.dilation_index,
            "translation": [self.translation.x, self.translation.y],
            "area": area(self.piece),
            "piece": self.piece.to_literal(),
        }


@dataclass
class ConstructionTrace:
    name: str
    steps: list[ExchangeStep]
    residual_area: float
    result: Region
    source_area: float
    family: DilationSpec | None = None
    lattice: Lattice = field(default_factory=Lattice)
    params: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    reports: dict[str, Any] = field(default_factory=dict)

    def dilations(self) -> list[np.ndarray]:
        return enumerate_dilations(self.family) if self.family is not None else []

    def digest(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "steps": len(self.steps),
            "pieces": len(self.result),
            "area": area(self.result),
            "residual_area": self.residual_area,
            "source_area": self.source_area,
        }

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            **self.digest(),
            "params": self.params,
            "notes": list(self.notes),
            "lattice": self.lattice.to_dict(),
            "family": self.family.to_dict() if self.family is not None else None,
            "time_domain_family": self.family.transposed().to_dict()
            if self.family is not None and len(self.family.extra_factors) == 1
            else None,
            "steps": [s.to_dict() for s in self.steps],
        }
        return out


# ---------------------------------------------------------------------------
# explicit recursion for {R^k A^n}, A = diag(2, 3)
# ---------------------------------------------------------------------------


def diag_rot_family(J: int) -> DilationSpec:
    """``{R^k_{pi/2} A^n}`` truncated to ``|n| <= J + 2``."""
    return DilationSpec(4, A_DIAG, (-J - 2, J + 2), order="rotations-then-powers")


def _a_pow(n: int) -> np.ndarray:
    return np.diag([2.0**n, 3.0**n])


def construct_diag_rot(truncation_J: int, variant: Literal["literal", "repaired"] = "literal") -> ConstructionTrace:
    """Evaluate ``W = U_{i=1,2} U_{j<=J} W_{i,j}`` for ``E = [0,1]^2``, ``A = diag(2,3)``.

    ``literal`` evaluates the recursion exactly as written::

        W_{1,1} = (E \\ A^{-1}E) + (1,0)          W_{2,1} = A^{-2}[(0,1) x (1,3)]
        W_{1,j} = [(A^{-j+1}E \\ A^{-j}E) \\ W_{2,j-1}] + (1,0)
        W_{2,j} = A^{-j-1}[W_{2,j-1} + (0,1)]

    That set is an additive Z^2 tile but not a multiplicative tile: the
    dilation preimage of ``W_{2,2}`` lies inside that of ``W_{2,1}`` and
    ``[1,2] x [1,3]`` is never reached. ``repaired`` uses
    ``W_{2,1} = A^{-2}[(0,2) x (1,3)]`` and shifts by ``(1,0)``, which
    refills exactly the holes left in ``[1,2] x [0,1]``.
    """
    if not 1 <= truncation_J <= 40:
        raise ValueError("truncation_J must lie in [1, 40]")
    if variant not in ("literal", "repaired"):
        raise ValueError(f"unknown variant {variant!r}")
    family = diag_rot_family(truncation_J)
    labels = family.labels()
    index = {lab: i for i, lab in enumerate(labels)}
    E = Region.box(0.0, 0.0, 1.0, 1.0)
    shift = (0.0, 1.0) if variant == "literal" else (1.0, 0.0)
    top = Region.box(0.0, 1.0, 1.0, 3.0) if variant == "literal" else Region.box(0.0, 1.0, 2.0, 3.0)

    def annulus(j: int) -> Region:
        return region_subtract(affine_image(E, _a_pow(-j + 1)), affine_image(E, _a_pow(-j)))

    steps: list[ExchangeStep] = []
    w2 = affine_image(top, _a_pow(-2))
    for j in range(1, truncation_J + 1):
        if j == 1:
            w1_src = annulus(1)
        else:
            w2_prev = w2
            w1_src = region_subtract(annulus(j), w2_prev)
            w2 = affine_image(w2_prev.translated(*shift), _a_pow(-j - 1))
        if area(w1_src) > geo.tolerances().area:
            steps.append(ExchangeStep(w1_src, Point(1.0, 0.0), index[(0, 0, 0)], j, f"W1,{j}"))
        if area(w2) > geo.tolerances().area:
            # W_{2,j} = A^{-(j+1)} X with X inside F, so its dilation is A^{-(j+1)}
            steps.append(ExchangeStep(w2, Point(0.0, 0.0), index[(-j - 1, 0, 0)], j, f"W2,{j}"))
    result = geo.region_concat(*(s.placed for s in steps))
    return ConstructionTrace(
        name="diag-rot",
        steps=steps,
        residual_area=1.0 - area(result),
        result=result,
        source_area=1.0,
        family=family,
        lattice=Lattice(np.eye(2)),
        params={"J": truncation_J, "variant": variant},
    )


# ---------------------------------------------------------------------------
# greedy congruence exchange
# ---------------------------------------------------------------------------


def _distance_to_origin(r: Region) -> float:
    best = math.inf
    for p in r.pieces:
        if p.contains(0.0, 0.0, 0.0):
            return 0.0
        v = p.vertices
        for i in range(len(v)):
            ax, ay = v[i - 1]
            bx, by = v[i]
            dx, dy = bx - ax, by - ay
            den = dx * dx + dy * dy
            s = 0.0 if den == 0 else max(0.0, min(1.0, -(ax * dx + ay * dy) / den))
            best = min(best, math.hypot(ax + s * dx, ay + s * dy))
    return best


class _Claims:
    """Claimed parts of F (disjoint convex pieces) with a bbox index rebuilt lazily."""

    def __init__(self) -> None:
        self.pieces: list[ConvexPolygon] = []

    def add(self, ps: Sequence[ConvexPolygon]) -> None:
        self.pieces.extend(ps)

    def overlap(self, poly: ConvexPolygon) -> float:
        total = 0.0
        for c in self.pieces:
            inter = poly.intersect(c)
            if inter is not None:
                total += inter.area
        return total


def _fit_area(poly: ConvexPolygon, dF: Region) -> float:
    total = 0.0
    for q in dF.pieces:
        inter = poly.intersect(q)
        if inter is not None:
            total += inter.area
    return total


def _exchange(
    E: Region,
    F: Region,
    mats: Sequence[np.ndarray],
    lat: Lattice,
    max_iters: int,
    tol: float,
    name: str,
    family: DilationSpec | None,
    allowed: Sequence[int] | None = None,
) -> ConstructionTrace:
    """Two-sided greedy exchange.

    Start from the block ``W = d* F`` (the largest dilate of F inside E);
    it already meets every dilation orbit once and leaves the residue
    ``E \\ d*F`` without a translation representative. Each iteration moves
    the largest residue piece P by a lattice vector into ``d F`` (``|det d| >
    |det d*|``) where F is still unclaimed. The claimed part of F is then
    removed from the block, and its ``d*`` image (measure smaller by
    ``|det d*| / |det d|``) joins the residue. Both congruences are exact at
    every step; only the residue is left over.
    """
    eps_area = geo.tolerances().area
    dets = [abs(float(np.linalg.det(m))) for m in mats]
    images = [affine_image(F, m) for m in mats]
    e_bbox = E.bbox()

    star = None
    usable = sorted(allowed) if allowed is not None else list(range(len(mats)))
    for i in sorted(usable, key=lambda i: (-dets[i], i)):
        bb = images[i].bbox()
        if bb[0] < e_bbox[0] - 1e-12 or bb[1] < e_bbox[1] - 1e-12 or bb[2] > e_bbox[2] + 1e-12 or bb[3] > e_bbox[3] + 1e-12:
            continue
        if area(region_subtract(images[i], E)) <= 1e-12 * max(1.0, area(images[i])):
            star = i
            break
    if star is None:
        raise StuckExchangeError("no dilate of F fits inside E within the truncation", E)
    d_star = mats[star]

    candidates = [i for i in usable if dets[i] > dets[star] * (1 + 1e-9)]
    inverses = [np.linalg.inv(m) for m in mats]

    residue: list[ConvexPolygon] = list(region_subtract(E, images[star]).pieces)
    claims = _Claims()
    steps: list[ExchangeStep] = []
    iteration = 0
    history: list[float] = []

    def residue_area() -> float:
        return sum(p.area for p in residue)

    history.append(residue_area())
    while residue_area() > tol:
        iteration += 1
        if iteration > max_iters:
            raise ConvergenceError(
                f"exchange did not reach residual {tol:g} within {max_iters} iterations "
                f"(residual {residue_area():.3e})",
                Region(tuple(residue)),
            )
        k = max(range(len(residue)), key=lambda i: (residue[i].area, -residue[i].bbox[0], -residue[i].bbox[1]))
        P = residue.pop(k)
        px0, py0, px1, py1 = P.bbox

        choice: tuple[int, np.ndarray] | None = None
        for i in candidates:
            bx0, by0, bx1, by1 = images[i].bbox()
            if bx1 - bx0 < px1 - px0 or by1 - by0 < py1 - py0:
                continue
            ts = lattice_points_in_box(lat, bx0 - px0, by0 - py0, bx1 - px1, by1 - py1)
            for t in ts[:MAX_TRANSLATIONS]:
                moved = P.translated(float(t[0]), float(t[1]))
                if _fit_area(moved, images[i]) < P.area - 1e-12 * max(1.0, P.area):
                    continue
                pre = moved.transformed(inverses[i])
                if pre is not None and claims.overlap(pre) * dets[i] > 1e-12 * max(1.0, P.area):
                    continue
                choice = (i, t)
                break
            if choice is not None:
                break

        if choice is not None:
            i, t = choice
            piece = Region((P,))
        else:
            best = (0.0, -1, None)
            for i in candidates:
                bx0, by0, bx1, by1 = images[i].bbox()
                ts = lattice_points_in_box(lat, bx0 - px1, by0 - py1, bx1 - px0, by1 - py0)
                if len(ts) > MAX_TRANSLATIONS:
                    continue
                for t in ts:
                    moved = P.translated(float(t[0]), float(t[1]))
                    fit = _fit_area(moved, images[i])
                    if fit <= best[0]:
                        continue
                    pre = moved.transformed(inverses[i])
                    if pre is not None:
                        fit -= claims.overlap(pre) * dets[i]
                    if fit > best[0] + 1e-15:
                        best = (fit, i, t)
            if best[2] is None or best[0] <= eps_area:
                residue.append(P)
                raise StuckExchangeError(
                    f"no admissible (dilation, translation) for a residue piece of area {P.area:.3e}",
                    Region(tuple(residue)),
                )
            _, i, t = best
            moved = Region((P.translated(float(t[0]), float(t[1])),))
            avail = region_subtract(geo.region_intersect(moved, images[i]), affine_image(Region(tuple(claims.pieces)), mats[i]))
            piece = avail.translated(-float(t[0]), -float(t[1]))
            if area(piece) <= eps_area:
                residue.append(P)
                raise StuckExchangeError("partial fit vanished after clipping", Region(tuple(residue)))
            residue.extend(region_subtract(Region((P,)), piece).pieces)

        placed = piece.translated(float(t[0]), float(t[1]))
        claimed = affine_image(placed, inverses[i])
        claims.add(claimed.pieces)
        residue.extend(affine_image(claimed, d_star).pieces)
        steps.append(ExchangeStep(piece, Point(float(t[0]), float(t[1])), i, iteration))
        history.append(residue_area())

    block = affine_image(region_subtract(F, Region(tuple(claims.pieces))), d_star)
    if area(block) > eps_area:
        steps.insert(0, ExchangeStep(block, Point(0.0, 0.0), star, 0, "block"))
    result = geo.region_concat(*(s.placed for s in steps))
    return ConstructionTrace(
        name=name,
        steps=steps,
        residual_area=residue_area(),
        result=result,
        source_area=area(E),
        family=family,
        lattice=lat,
        params={"block_dilation_index": star, "iterations": iteration, "residual_history": history},
    )


def right_multipliers(spec: DilationSpec, mats: Sequence[np.ndarray] | None = None) -> list[int]:
    """Indices of members ``d`` with ``D d`` inside ``D``.

    Only these may move pieces: if ``W = U d_i f_i`` with ``f_i`` partitioning
    F, then ``D W`` tiles as ``D F`` does exactly when every ``D d_i`` is a
    reindexing of D. Checked against the generators ``R^k A^n``, ``|n| <= 1``,
    inside the family widened by two powers.
    """
    mats = list(mats) if mats is not None else enumerate_dilations(spec)
    lo, hi = spec.power_range
    wide = np.array([m.ravel() for m in enumerate_dilations(spec.with_powers(lo - 2, hi + 2))])
    scale = max(1.0, float(np.abs(wide).max()))
    gens = [spec.matrix(n, k, 0) for n in (-1, 0, 1) for k in range(spec.rotation_order)]
    out = []
    for i, d in enumerate(mats):
        if all(np.min(np.linalg.norm(wide - (g @ d).ravel(), axis=1)) <= 1e-9 * scale for g in gens):
            out.append(i)
    return out


def dls_exchange(
    E: Region,
    F: Region,
    dils: DilationSpec,
    lat: Lattice,
    max_iters: int = 2000,
    tol: float = 1e-9,
) -> ConstructionTrace:
    """Greedy dilation/translation congruence exchange.

    ``E`` must have 0 in its closure and tile the plane by ``lat``;
    ``F`` must be a multiplicative tile for the dilation family and bounded
    away from 0. The result is ``lat``-translation congruent to E up to the
    residual and dilation congruent to F. Among pieces that fit whole, the
    smallest dilation index and then the lexicographically smallest
    translation win; otherwise the largest partial fit is taken.
    """
    if area(E) <= 0 or area(F) <= 0:
        raise ValueError("E and F must have positive area")
    if not E.contains(0.0, 0.0, 1e-12):
        raise ValueError("the origin must lie in the closure of E")
    if _distance_to_origin(F) <= 1e-12:
        raise ValueError("F must be bounded away from the origin")
    if tol < 1e-12:
        raise ValueError("tol must be >= 1e-12")
    mats = enumerate_dilations(dils)
    allowed = right_multipliers(dils, mats)
    trace = _exchange(E, F, mats, lat, max_iters, tol, "dls-exchange", dils, allowed)
    if len(allowed) < len(mats):
        trace.notes.append(f"exchange restricted to {len(allowed)} of {len(mats)} dilations d with D d inside D")
    return trace


# ---------------------------------------------------------------------------
# rotation-scaling family
# ---------------------------------------------------------------------------


def rot_scale_tiles(a: float, m: int, segments: int | None = None) -> tuple[Region, Region, Lattice]:
    """Translation tile E, bounded dilation tile F and tiling lattice for ``{a^n R^k_{2pi/m}}``.

    F is the polygonal annular sector ``{1 <= r <= a}`` with both arcs
    inscribed at the same angles (``ceil(64/m)`` segments). The lattice is
    the one E tiles by: ``Z^2`` for ``m`` in {1, 4, 8}.
    """
    if a <= 1:
        raise ValueError("a must exceed 1")
    angle = 2 * math.pi / m
    segs = segments if segments is not None else max(1, math.ceil(64 / m))
    if m == 1:
        E = Region.box(-0.5, -0.5, 0.5, 0.5)
        F = region_subtract(Region.box(-a / 2, -a / 2, a / 2, a / 2), E)
        return E, F, Lattice(np.eye(2))
    if m == 2:
        E = Region.box(-1.0, 0.0, 1.0, 1.0)
    elif m == 4:
        E = Region.box(0.0, 0.0, 1.0, 1.0)
    elif m >= 5:
        E = Region.box(0.0, 0.0, 1.0, math.tan(angle))
    else:
        raise ValueError("m = 3 is not supported: the sector leaves the right half-plane but E does not")
    x0, y0, x1, y1 = E.bbox()
    F = geo.polygonal_annular_sector(1.0, a, angle, segs)
    return E, F, Lattice(np.diag([x1 - x0, y1 - y0]))


def rot_scale_family(a: float, m: int, power_range: tuple[int, int]) -> DilationSpec:
    return DilationSpec(m, a * np.eye(2), power_range, order="powers-then-rotations")


def construct_rot_scale(
    a: float = 2.0,
    m: int = 4,
    max_iters: int = 5000,
    tol: float = 1e-5,
    segments: int | None = None,
    power_range: tuple[int, int] = (-2, 12),
) -> ConstructionTrace:
    """Wavelet set for ``{a^n R^k_{2pi/m}}`` built on the sector ``0 <= arg <= 2 pi / m``.

    Only the scaling group ``{a^n id}`` is exchanged against; the rotations
    then tile the plane with copies of the sector.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if tol < 1e-10:
        raise ValueError("tol must be >= 1e-10")
    E, F, lat = rot_scale_tiles(a, m, segments)
    scaling = DilationSpec(1, a * np.eye(2), power_range)
    trace = _exchange(E, F, enumerate_dilations(scaling), lat, max_iters, tol, "rot-scale", scaling)
    trace.family = rot_scale_family(a, m, (power_range[0] - 4, power_range[1] + 4))
    # dilation indices refer to the scaling family; keep it for reference
    trace.params.update({"a": a, "m": m, "tol": tol, "segments": segments or max(1, math.ceil(64 / m)), "scaling_family": scaling.to_dict()})
    trace.notes.append("bounded F: annular sector 1 <= r <= a replaces the unbounded strip {1 < x < a}")
    if not np.allclose(lat.basis, np.eye(2)):
        trace.notes.append("E tiles by diag(width, height); the time-domain translations are its dual lattice")
    return trace


# ---------------------------------------------------------------------------
# stepwise composition
# ---------------------------------------------------------------------------


class InducedTile(NamedTuple):
    region: Region
    overlap: float


def induce_subspace_tile(omega: Region, b_list: Sequence[Any]) -> InducedTile:
    """``N = U_b b(omega)`` as disjoint pieces, with the total pairwise overlap of the copies."""
    from .verify import family_overlap

    copies = [affine_image(omega, as_matrix(b)) for b in b_list]
    overlap = family_overlap(copies)
    out = Region.empty()
    for c in copies:
        out = geo.region_union(out, c)
    return InducedTile(out, overlap)


def factor_dilation_set(
    spec: DilationSpec, group: Literal["powers", "rotations"] = "powers"
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Split the family as ``D1 @ G`` with ``G`` the truncated group factor on the right."""
    lo, hi = spec.power_range
    powers = [matrix_power(spec.expansive_base, n) for n in range(lo, hi + 1)]
    rots = [rotation(spec.rotation_sign * 2 * math.pi * k / spec.rotation_order) for k in range(spec.rotation_order)]
    extras = list(spec.extra_factors)
    # the factor next to the extra factors is on the left; the other one must be on the right
    right_is_powers = spec.order == "rotations-then-powers"
    if group == "powers":
        g_list = powers
        if not right_is_powers and not all(np.allclose(r @ spec.expansive_base, spec.expansive_base @ r) for r in rots):
            raise FactorizationError("powers are not a right factor of this family")
        d1 = [x @ r for x in extras for r in rots]
    elif group == "rotations":
        g_list = rots
        if right_is_powers and not all(np.allclose(r @ spec.expansive_base, spec.expansive_base @ r) for r in rots):
            raise FactorizationError("rotations are not a right factor of this family")
        d1 = [x @ p for x in extras for p in powers]
    else:
        raise ValueError(f"unknown group factor {group!r}")
    if not is_direct_product(d1, g_list):
        raise FactorizationError("the product D1 G is not direct on the truncation")
    return d1, g_list


def _fundamental_domains(lat: Lattice) -> list[Region]:
    b1, b2 = lat.basis[:, 0], lat.basis[:, 1]
    out = [Region.polygon([-(b1 + b2) / 2, (b1 - b2) / 2, (b1 + b2) / 2, (b2 - b1) / 2])]
    for s1 in (1, -1):
        for s2 in (1, -1):
            u, v = s1 * b1, s2 * b2
            out.append(Region.polygon([np.zeros(2), u, u + v, v]))
    return out


def exwave_pipeline(
    E: Region,
    dils: DilationSpec,
    lat: Lattice,
    window: Region,
    tol: float = 1e-3,
    max_iters: int = 5000,
    exchange_tol: float = 1e-6,
) -> ConstructionTrace:
    """Subspace wavelet set from a multiplicative tile of a product family.

    Hypotheses (each fatal with its name): the base ``a`` is expansive,
    ``a D = D`` on the truncation, and ``D^T E`` tiles the window. Then
    ``N = U_k b^k E`` with ``b = a^T``, a lattice fundamental domain inside
    N with 0 on its closure is exchanged against ``{b^k}`` with E as the
    dilation tile, and the resulting set is checked for both tilings.
    """
    from .verify import check_mult_tiling

    a = dils.expansive_base
    if abs(np.linalg.det(a)) <= geo.tolerances().det or not is_expansive(a):
        raise HypothesisError("expansive", "the base matrix has an eigenvalue of modulus <= 1")
    if not is_closed_under(dils, a):
        raise HypothesisError("closure", "a D is not contained in D on the truncation")
    family_t = [d.T for d in enumerate_dilations(dils)]
    tiling = check_mult_tiling(E, family_t, window, tol)
    if not tiling.passed:
        raise HypothesisError(
            "tiling",
            f"D^T E does not tile the window (overlap {tiling.total_overlap:.3e}, gap {tiling.gap_area:.3e})",
        )
    b_spec = DilationSpec(1, a.T, dils.power_range)
    b_mats = enumerate_dilations(b_spec)
    N = induce_subspace_tile(E, b_mats).region
    starter = None
    for cand in _fundamental_domains(lat):
        if area(region_subtract(cand, N)) <= tol * area(cand):
            starter = cand
            break
    if starter is None:
        raise HypothesisError("starter", "no lattice fundamental domain at the origin lies inside N")
    trace = _exchange(starter, E, b_mats, lat, max_iters, exchange_tol, "exwave", b_spec)
    omega = trace.result
    n_report = check_mult_tiling(omega, b_mats, geo.region_intersect(window, N), tol)
    d_report = check_mult_tiling(omega, family_t, window, tol)
    trace.reports["b_tiling_of_N"] = n_report
    trace.reports["dT_tiling_of_window"] = d_report
    trace.params.update({"dilation_family": dils.to_dict(), "group": b_spec.to_dict()})
    return trace
