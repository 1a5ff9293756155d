import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waveset import geometry as geo
from waveset.geometry import (
    AffineMap,
    ConvexPolygon,
    GeometryError,
    InvalidMapError,
    Region,
    affine_image,
    area,
    indicator_fourier,
    monte_carlo_area,
    raster_area,
    raster_error_bound,
    region_intersect,
    region_subtract,
    region_union,
)


def interval_ft(a, b, k):
    """integral_a^b exp(-2 pi i k x) dx, written without cancellation."""
    return cmath.exp(-1j * math.pi * k * (a + b)) * (b - a) * float(np.sinc(k * (b - a)))


def grid_quadrature(r, k, n=1500):
    x0, y0, x1, y1 = r.bbox()
    hx, hy = (x1 - x0) / n, (y1 - y0) / n
    xs = x0 + hx * (np.arange(n) + 0.5)
    ys = y0 + hy * (np.arange(n) + 0.5)
    X, Y = np.meshgrid(xs, ys)
    pts = np.stack([X.ravel(), Y.ravel()], axis=1)
    mask = geo._contains_points(r, pts)
    vals = np.exp(-2j * math.pi * (pts[:, 0] * k[0] + pts[:, 1] * k[1]))
    return complex(vals[mask].sum() * hx * hy)


boxes = st.tuples(
    st.floats(-3, 3), st.floats(-3, 3), st.floats(0.05, 3), st.floats(0.05, 3)
).map(lambda t: Region.box(t[0], t[1], t[0] + t[2], t[1] + t[3]))


class TestConvexPolygon:
    def test_cw_input_is_reoriented(self):
        p = ConvexPolygon.from_points([(0, 0), (0, 1), (1, 1), (1, 0)])
        assert p.area == pytest.approx(1.0)
        assert geo._signed_area(p.vertices) > 0

    def test_degenerate_and_nonconvex_rejected(self):
        with pytest.raises(GeometryError):
            ConvexPolygon.from_points([(0, 0), (1, 1), (2, 2)])
        with pytest.raises(GeometryError):
            ConvexPolygon.from_points([(0, 0), (2, 0), (1, 0.2), (1, 2)])

    def test_nonfinite_rejected(self):
        with pytest.raises((GeometryError, ValueError)):
            ConvexPolygon.from_points([(0, 0), (math.nan, 0), (1, 1)])

    def test_subtract_is_deterministic_decomposition(self):
        a = ConvexPolygon.box(0, 0, 2, 2)
        b = ConvexPolygon.box(0.5, 0.5, 1.5, 1.5)
        parts = a.subtract(b)
        assert sum(p.area for p in parts) == pytest.approx(3.0, abs=1e-14)
        assert [p.vertices for p in parts] == [p.vertices for p in a.subtract(b)]


class TestRegionAlgebra:
    def test_box_identities(self):
        a = Region.box(0, 0, 2, 1)
        b = Region.box(1, 0, 3, 1)
        assert area(region_intersect(a, b)) == pytest.approx(1.0)
        assert area(region_subtract(a, b)) == pytest.approx(1.0)
        assert area(region_union(a, b)) == pytest.approx(3.0)

    @settings(max_examples=60, deadline=None)
    @given(boxes, boxes)
    def test_inclusion_exclusion(self, a, b):
        inter = area(region_intersect(a, b))
        assert area(region_subtract(a, b)) + inter == pytest.approx(area(a), abs=1e-9)
        assert area(region_union(a, b)) == pytest.approx(area(a) + area(b) - inter, abs=1e-9)

    @settings(max_examples=40, deadline=None)
    @given(boxes, boxes)
    def test_union_pieces_disjoint(self, a, b):
        u = region_union(a, b)
        assert u.check_disjoint() <= 1e-12 * len(u)

    def test_literal_round_trip(self):
        r = Region.from_literal([[[0, 0], [1, 0], [0, 1]], [[1, 0], [1, 1], [0, 1]]])
        assert area(r) == pytest.approx(1.0)
        assert Region.from_literal(r.to_literal()).to_literal() == r.to_literal()

    def test_affine_image_area_scales_by_det(self):
        m = np.array([[2.0, 1.0], [0.5, 3.0]])
        r = Region.polygon([(0, 0), (1, 0), (0.3, 0.8)])
        assert area(affine_image(r, m)) == pytest.approx(abs(np.linalg.det(m)) * area(r))

    def test_orientation_reversing_map(self):
        r = affine_image(Region.box(0, 0, 1, 2), np.array([[-1.0, 0.0], [0.0, 1.0]]))
        assert area(r) == pytest.approx(2.0)
        assert r.bbox() == pytest.approx((-1, 0, 0, 2))

    def test_singular_map_rejected(self):
        with pytest.raises(InvalidMapError):
            AffineMap(np.array([[1.0, 2.0], [2.0, 4.0]]))

    def test_annular_sector_dilates_tile(self):
        f = geo.polygonal_annular_sector(1.0, 2.0, math.pi / 2, 16)
        two = affine_image(f, 2 * np.eye(2))
        assert area(region_intersect(f, two)) == pytest.approx(0.0, abs=1e-12)
        whole = geo.polygonal_sector(4.0, math.pi / 2, 16)
        inner = geo.polygonal_sector(1.0, math.pi / 2, 16)
        assert area(f) + area(two) == pytest.approx(area(whole) - area(inner), rel=1e-12)


class TestFourier:
    def test_zero_frequency_is_area(self):
        r = Region.polygon([(0, 0), (2, 0), (0, 1)])
        assert indicator_fourier(r, (0.0, 0.0)) == 1.0

    @pytest.mark.parametrize("k", [(0.5, 0.0), (1.0, 0.0), (0.3, -1.7), (2.5, 3.25), (1e-10, 0.0)])
    def test_box_matches_separable_closed_form(self, k):
        r = Region.box(0.2, -0.4, 1.7, 0.9)
        expect = interval_ft(0.2, 1.7, k[0]) * interval_ft(-0.4, 0.9, k[1])
        assert abs(indicator_fourier(r, k) - expect) < 1e-12

    def test_unit_square_half_frequency(self):
        assert indicator_fourier(Region.box(0, 0, 1, 1), (0.5, 0.0)) == pytest.approx(-2j / math.pi, abs=1e-15)

    @pytest.mark.parametrize("k", [(0.7, 0.2), (-1.3, 2.1)])
    def test_triangle_against_quadrature(self, k):
        r = Region.polygon([(0.1, 0.0), (1.2, 0.3), (0.4, 1.1)])
        assert abs(indicator_fourier(r, k) - grid_quadrature(r, k)) < 2e-4

    def test_vectorised_matches_scalar(self):
        r = region_subtract(Region.box(0, 0, 2, 3), Region.box(0, 0, 1, 1))
        ks = np.array([[0.0, 0.0], [0.5, 0.25], [-2.0, 1.0]])
        vec = indicator_fourier(r, ks)
        for k, v in zip(ks, vec):
            assert v == pytest.approx(indicator_fourier(r, k), abs=1e-14)

    def test_translation_phase(self):
        r = Region.polygon([(0, 0), (1, 0.2), (0.3, 0.9)])
        t, k = (0.7, -1.1), (0.4, 1.3)
        shifted = indicator_fourier(r.translated(*t), k)
        phase = cmath.exp(-2j * math.pi * (k[0] * t[0] + k[1] * t[1]))
        assert shifted == pytest.approx(phase * indicator_fourier(r, k), abs=1e-13)


class TestOracles:
    def test_raster_within_bound(self):
        r = Region.polygon([(0.1, 0.0), (1.2, 0.3), (0.4, 1.1)])
        w = Region.box(-1, -1, 2, 2)
        assert abs(raster_area(r, w, 1024) - area(r)) <= raster_error_bound(r, w, 1024)

    def test_raster_resolution_guard(self):
        with pytest.raises(ValueError):
            raster_area(Region.box(0, 0, 1, 1), Region.box(0, 0, 1, 1), 32)

    def test_monte_carlo_guard_and_empty(self):
        with pytest.raises(ValueError):
            monte_carlo_area(Region.box(0, 0, 1, 1), Region.box(0, 0, 1, 1), 100, 0)
        assert monte_carlo_area(Region.empty(), Region.box(0, 0, 1, 1), 10_000, 0) == (0.0, 0.0)

    def test_monte_carlo_standard_error(self):
        est, se = monte_carlo_area(Region.box(0, 0, 1, 1), Region.box(-1, -1, 1, 1), 1_000_000, 3)
        # p = 1/4 on a box of area 4
        assert se == pytest.approx(4 * math.sqrt(3 / 16 / 1e6), rel=1e-2)
        assert abs(est - 1.0) < 5 * se

    def test_monte_carlo_independent_of_threads(self, monkeypatch):
        r = Region.polygon([(0, 0), (1, 0), (0, 1)])
        w = Region.box(0, 0, 1, 1)
        monkeypatch.setenv("WAVESET_THREADS", "1")
        one = monte_carlo_area(r, w, 300_000, 11)
        monkeypatch.setenv("WAVESET_THREADS", "4")
        four = monte_carlo_area(r, w, 300_000, 11)
        assert one == four

    def test_tolerance_override_is_scoped(self):
        with geo.use_tolerances(area=1e-6) as t:
            assert t.area == 1e-6
            assert geo.tolerances().area == 1e-6
        assert geo.tolerances().area == 1e-12
