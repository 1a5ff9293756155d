"""Dilation families, directness of products, and lattices."""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Any, Literal, Sequence

import numpy as np

from .geometry import Point, Region, tolerances

Order = Literal["rotations-then-powers", "powers-then-rotations"]

EPS_EIG = 1e-10


class DirectProductWarning(UserWarning):
    """An enumerated family contains (numerically) repeated matrices."""


def as_matrix(m: Any) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.shape != (2, 2) or not np.all(np.isfinite(a)):
        raise ValueError(f"expected a finite 2x2 matrix, got {m!r}")
    return a


def rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    # snap quarter turns so R_{pi/2}^k is exact
    c = round(c) if abs(c - round(c)) < 1e-15 else c
    s = round(s) if abs(s - round(s)) < 1e-15 else s
    return np.array([[c, -s], [s, c]])


def matrix_power(a: np.ndarray, n: int) -> np.ndarray:
    if n >= 0:
        return np.linalg.matrix_power(a, n)
    return np.linalg.matrix_power(np.linalg.inv(a), -n)


def eigenvalues(m: np.ndarray) -> tuple[complex, complex]:
    """Roots of ``x^2 - tr x + det`` via the quadratic formula."""
    m = as_matrix(m)
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    disc = cmath.sqrt(tr * tr - 4 * det)
    return ((tr + disc) / 2, (tr - disc) / 2)


def is_expansive(m: Any) -> bool:
    """True iff both eigenvalues have modulus > 1 + 1e-10."""
    m = as_matrix(m)
    if abs(np.linalg.det(m)) <= tolerances().det:
        raise ValueError("matrix is singular")
    return all(abs(lam) > 1 + EPS_EIG for lam in eigenvalues(m))


@dataclass(frozen=True)
class DilationSpec:
    """Truncated parametric dilation family.

    ``rotations-then-powers`` enumerates ``X_e R^k A^n`` and
    ``powers-then-rotations`` enumerates ``X_e A^n R^k`` with
    ``R = R_{2 pi / rotation_order}``, ``A = expansive_base`` and ``X_e`` the
    extra factors. Enumeration is lexicographic in ``(n, k, e)``.
    """

    rotation_order: int = 1
    expansive_base: np.ndarray = field(default_factory=lambda: 2.0 * np.eye(2))
    power_range: tuple[int, int] = (-4, 4)
    extra_factors: tuple[np.ndarray, ...] = (np.eye(2),)
    order: Order = "rotations-then-powers"
    rotation_sign: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "expansive_base", as_matrix(self.expansive_base))
        object.__setattr__(self, "extra_factors", tuple(as_matrix(x) for x in self.extra_factors) or (np.eye(2),))
        lo, hi = (int(v) for v in self.power_range)
        object.__setattr__(self, "power_range", (lo, hi))
        if self.rotation_order < 1:
            raise ValueError("rotation_order must be >= 1")
        if lo > hi:
            raise ValueError("empty power range")
        if self.order not in ("rotations-then-powers", "powers-then-rotations"):
            raise ValueError(f"unknown order {self.order!r}")
        if abs(np.linalg.det(self.expansive_base)) <= tolerances().det:
            raise ValueError("expansive_base is singular")

    @property
    def size(self) -> int:
        lo, hi = self.power_range
        return self.rotation_order * (hi - lo + 1) * len(self.extra_factors)

    def with_powers(self, lo: int, hi: int) -> DilationSpec:
        return DilationSpec(self.rotation_order, self.expansive_base, (lo, hi), self.extra_factors, self.order, self.rotation_sign)

    def labels(self) -> list[tuple[int, int, int]]:
        lo, hi = self.power_range
        return [
            (n, k, e)
            for n in range(lo, hi + 1)
            for k in range(self.rotation_order)
            for e in range(len(self.extra_factors))
        ]

    def matrix(self, n: int, k: int, e: int = 0) -> np.ndarray:
        rot = rotation(self.rotation_sign * 2 * math.pi * k / self.rotation_order)
        pw = matrix_power(self.expansive_base, n)
        core = rot @ pw if self.order == "rotations-then-powers" else pw @ rot
        return self.extra_factors[e] @ core

    def transposed(self) -> DilationSpec:
        """The family of transposes (only for families without extra factors).

        ``(R^k A^n)^T = (A^T)^n R^{-k}`` so the order flips and the rotation
        sense reverses.
        """
        if any(not np.allclose(x, np.eye(2)) for x in self.extra_factors):
            raise ValueError("transposed() supports only the identity extra factor")
        flipped: Order = "powers-then-rotations" if self.order == "rotations-then-powers" else "rotations-then-powers"
        return DilationSpec(self.rotation_order, self.expansive_base.T, self.power_range, (np.eye(2),), flipped, -self.rotation_sign)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "rotation_order": self.rotation_order,
            "expansive_base": self.expansive_base.tolist(),
            "power_range": list(self.power_range),
            "extra_factors": [x.tolist() for x in self.extra_factors],
            "order": self.order,
        }
        if self.rotation_sign != 1:
            out["rotation_sign"] = self.rotation_sign
        return out

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> DilationSpec:
        return cls(
            rotation_order=int(d.get("rotation_order", 1)),
            expansive_base=as_matrix(d["expansive_base"]),
            power_range=tuple(d["power_range"]),
            extra_factors=tuple(as_matrix(x) for x in d.get("extra_factors", [np.eye(2)])),
            order=d.get("order", "rotations-then-powers"),
            rotation_sign=int(d.get("rotation_sign", 1)),
        )


def _distinct(mats: Sequence[np.ndarray], eps: float) -> bool:
    if len(mats) < 2:
        return True
    flat = np.array([np.asarray(m).ravel() for m in mats])
    # sort on the first coordinate so only near neighbours are compared
    order = np.argsort(flat[:, 0], kind="stable")
    flat = flat[order]
    n = len(flat)
    for i in range(n):
        j = i + 1
        while j < n and flat[j, 0] - flat[i, 0] <= eps:
            if np.linalg.norm(flat[j] - flat[i]) <= eps:
                return False
            j += 1
    return True


def enumerate_dilations(spec: DilationSpec) -> list[np.ndarray]:
    mats = [spec.matrix(n, k, e) for n, k, e in spec.labels()]
    if not _distinct(mats, tolerances().geom * max(1.0, max(np.abs(m).max() for m in mats))):
        warnings.warn(
            "enumerated dilation family has repeated matrices; the product is not direct",
            DirectProductWarning,
            stacklevel=2,
        )
    return mats


def is_direct_product(a_list: Sequence[Any], b_list: Sequence[Any]) -> bool:
    """All ``|A| * |B|`` products ``a @ b`` pairwise distinct (Frobenius > eps).

    Only certifies directness on the given truncations.
    """
    prods = [as_matrix(a) @ as_matrix(b) for a in a_list for b in b_list]
    scale = max((float(np.abs(p).max()) for p in prods), default=1.0)
    return _distinct(prods, tolerances().geom * max(1.0, scale))


def is_closed_under(spec: DilationSpec, a: Any) -> bool:
    """Truncated check of ``a D = D``: ``a`` times the family on ``[lo, hi-1]`` lies in the family on ``[lo, hi]``."""
    a = as_matrix(a)
    lo, hi = spec.power_range
    if hi == lo:
        return True
    full = enumerate_dilations(spec)
    scale = max(float(np.abs(m).max()) for m in full)
    eps = 1e-9 * max(1.0, scale)
    flat = np.array([m.ravel() for m in full])
    for m in enumerate_dilations(spec.with_powers(lo, hi - 1)):
        if np.min(np.linalg.norm(flat - (a @ m).ravel(), axis=1)) > eps:
            return False
    return True


@dataclass(frozen=True)
class Lattice:
    """``basis @ Z^2`` (basis vectors are the columns)."""

    basis: np.ndarray = field(default_factory=lambda: np.eye(2))

    def __post_init__(self) -> None:
        b = as_matrix(self.basis)
        object.__setattr__(self, "basis", b)
        if abs(np.linalg.det(b)) <= tolerances().det:
            raise ValueError("lattice basis is singular")

    @property
    def covolume(self) -> float:
        return float(abs(np.linalg.det(self.basis)))

    def point(self, z: Sequence[int]) -> np.ndarray:
        return self.basis @ np.asarray(z, dtype=float)

    def to_dict(self) -> dict[str, Any]:
        return {"basis": self.basis.tolist()}


def dual_lattice(t: Lattice) -> Lattice:
    return Lattice(np.linalg.inv(t.basis).T)


def lattice_points_in_box(t: Lattice, x0: float, y0: float, x1: float, y1: float, eps: float = 1e-12) -> np.ndarray:
    """Lattice points in the closed box, ordered lexicographically by (x, y)."""
    inv = np.linalg.inv(t.basis)
    corners = np.array([[x0, y0], [x1, y0], [x0, y1], [x1, y1]]).T
    z = inv @ corners
    zmin = np.floor(z.min(axis=1) - 1e-9).astype(int)
    zmax = np.ceil(z.max(axis=1) + 1e-9).astype(int)
    i = np.arange(zmin[0], zmax[0] + 1)
    j = np.arange(zmin[1], zmax[1] + 1)
    zz = np.stack(np.meshgrid(i, j, indexing="ij"), axis=-1).reshape(-1, 2)
    pts = zz @ t.basis.T
    tol = eps * max(1.0, abs(x0), abs(x1), abs(y0), abs(y1))
    ok = (pts[:, 0] >= x0 - tol) & (pts[:, 0] <= x1 + tol) & (pts[:, 1] >= y0 - tol) & (pts[:, 1] <= y1 + tol)
    pts = pts[ok]
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    return pts[order]


def lattice_points(t: Lattice, window: Region) -> list[Point]:
    if window.is_empty:
        return []
    pts = lattice_points_in_box(t, *window.bbox())
    return [Point(float(x), float(y)) for x, y in pts if window.contains(float(x), float(y))]
