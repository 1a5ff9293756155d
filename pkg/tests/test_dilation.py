import itertools
import warnings

import numpy as np
import pytest

from waveset.dilation import (
    DilationSpec,
    DirectProductWarning,
    Lattice,
    dual_lattice,
    eigenvalues,
    enumerate_dilations,
    is_closed_under,
    is_direct_product,
    is_expansive,
    lattice_points,
    lattice_points_in_box,
    rotation,
)
from waveset.geometry import Region

A = np.diag([2.0, 3.0])


def test_quarter_turns_are_exact():
    r = rotation(np.pi / 2)
    assert np.array_equal(r, [[0.0, -1.0], [1.0, 0.0]])
    assert np.array_equal(np.linalg.matrix_power(r, 4), np.eye(2))


def test_enumeration_order_and_size():
    spec = DilationSpec(4, A, (-2, 2))
    mats = enumerate_dilations(spec)
    assert len(mats) == spec.size == 20
    assert spec.labels()[:5] == [(-2, 0, 0), (-2, 1, 0), (-2, 2, 0), (-2, 3, 0), (-1, 0, 0)]
    n, k, _ = spec.labels()[7]
    expect = np.linalg.matrix_power(rotation(np.pi / 2), k) @ np.linalg.matrix_power(np.linalg.inv(A), -n)
    assert np.allclose(mats[7], expect)


def test_order_variants_differ_for_noncommuting_base():
    a = DilationSpec(4, A, (1, 1), order="rotations-then-powers").matrix(1, 1)
    b = DilationSpec(4, A, (1, 1), order="powers-then-rotations").matrix(1, 1)
    assert not np.allclose(a, b)
    assert np.allclose(a, rotation(np.pi / 2) @ A)
    assert np.allclose(b, A @ rotation(np.pi / 2))


def test_extra_factors_multiply_on_the_left():
    x = np.array([[1.0, 1.0], [0.0, 1.0]])
    spec = DilationSpec(2, A, (0, 1), extra_factors=(np.eye(2), x))
    assert np.allclose(spec.matrix(1, 1, 1), x @ rotation(np.pi) @ A)


def test_transposed_family_is_elementwise_transpose():
    spec = DilationSpec(4, np.array([[2.0, 1.0], [0.0, 3.0]]), (-3, 3))
    t = spec.transposed()
    for n, k, e in spec.labels():
        assert np.allclose(t.matrix(n, k, e), spec.matrix(n, k, e).T)


@pytest.mark.parametrize(
    "m, expected",
    [
        (np.diag([2.0, 3.0]), True),
        (np.array([[1.0, 1.0], [0.0, 1.0]]), False),
        (np.diag([2.0, 0.5]), False),
        (np.array([[0.0, -2.0], [1.0, 0.0]]), True),  # eigenvalues +-i sqrt 2
        (1.00000001 * np.eye(2), True),
        ((1 + 1e-11) * np.eye(2), False),
    ],
)
def test_is_expansive(m, expected):
    assert is_expansive(m) is expected


def test_eigenvalues_against_numpy():
    m = np.array([[1.5, -2.0], [0.7, 0.3]])
    ours = sorted(eigenvalues(m), key=lambda z: (z.real, z.imag))
    ref = sorted(np.linalg.eigvals(m), key=lambda z: (z.real, z.imag))
    assert np.allclose(ours, ref)


def test_singular_matrix_rejected():
    with pytest.raises(ValueError):
        is_expansive(np.array([[1.0, 2.0], [2.0, 4.0]]))


def test_non_direct_product_detected():
    i, m = np.eye(2), -np.eye(2)
    assert not is_direct_product([i, m], [i, m])
    assert is_direct_product([rotation(k * np.pi / 2) for k in range(4)], [np.linalg.matrix_power(A, n) for n in range(-3, 4)])


def test_duplicate_enumeration_warns():
    spec = DilationSpec(2, A, (0, 1), extra_factors=(np.eye(2), -np.eye(2)))
    with pytest.warns(DirectProductWarning):
        enumerate_dilations(spec)


def test_no_warning_for_direct_family():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        enumerate_dilations(DilationSpec(4, A, (-5, 5)))


def test_closure_under_base():
    spec = DilationSpec(4, 2 * np.eye(2), (-4, 4), order="powers-then-rotations")
    assert is_closed_under(spec, 2 * np.eye(2))
    assert not is_closed_under(spec, np.diag([2.0, 3.0]))


def test_spec_round_trip():
    spec = DilationSpec(4, A, (-3, 5), order="powers-then-rotations")
    back = DilationSpec.from_dict(spec.to_dict())
    assert back.to_dict() == spec.to_dict()
    assert all(np.array_equal(x, y) for x, y in zip(enumerate_dilations(back), enumerate_dilations(spec)))


def test_invalid_specs():
    with pytest.raises(ValueError):
        DilationSpec(0, A, (0, 1))
    with pytest.raises(ValueError):
        DilationSpec(1, A, (2, 1))
    with pytest.raises(ValueError):
        DilationSpec(1, np.zeros((2, 2)), (0, 1))


def test_dual_lattice():
    b = np.array([[2.0, 1.0], [0.0, 0.5]])
    t = Lattice(b)
    d = dual_lattice(t)
    assert np.allclose(d.basis.T @ b, np.eye(2))
    assert d.covolume == pytest.approx(1 / t.covolume)


def test_lattice_points_against_brute_force():
    t = Lattice(np.array([[1.0, 0.5], [0.0, 0.75]]))
    box = (-1.3, -0.2, 2.1, 1.6)
    got = lattice_points_in_box(t, *box)
    brute = []
    for i, j in itertools.product(range(-10, 11), repeat=2):
        p = t.point((i, j))
        if box[0] <= p[0] <= box[2] and box[1] <= p[1] <= box[3]:
            brute.append(tuple(p))
    assert sorted(map(tuple, got)) == sorted(brute)
    assert [tuple(p) for p in got] == sorted(map(tuple, got))


def test_lattice_points_in_region():
    pts = lattice_points(Lattice(), Region.polygon([(0, 0), (3, 0), (0, 3)]))
    assert len(pts) == 10
