import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from carleson.geometry import (
    Arc,
    BergmanDisk,
    BoundaryPoint,
    CarlesonBox,
    DeltaBox,
    DiskPoint,
    DyadicArc,
    LusinCone,
    WholeDisk,
    aperture_arc,
    bergman_disk_euclidean,
    bergman_distance,
    bergman_distance_array,
    mobius,
    pseudo_distance,
    region_contains,
    ring_arcs,
)

coord = st.floats(-0.7, 0.7, allow_nan=False)
points = st.builds(complex, coord, coord)


def naive_distance(z, w):
    p = abs(z - w) / abs(1 - w.conjugate() * z)
    return 0.5 * math.log((1 + p) / (1 - p))


@pytest.mark.parametrize("a, z, expected", [
    (0.5, 0.5, 0.0),
    (0.0, 0.3 + 0.4j, -0.3 - 0.4j),
    (0.5, 0.0, 0.5),
])
def test_mobius_examples(a, z, expected):
    assert abs(mobius(a, z).z - expected) < 1e-15


@pytest.mark.parametrize("z, w, expected", [
    (0.2 + 0.1j, 0.2 + 0.1j, 0.0),
    (0.0, 0.761594, 1.0),
    (0.0, 0.462117, 0.5),
])
def test_distance_examples(z, w, expected):
    assert bergman_distance(z, w) == pytest.approx(expected, abs=1e-5)
    assert bergman_distance(z, w) == pytest.approx(naive_distance(complex(z), complex(w)), abs=1e-12)


def test_distance_precision_near_circle():
    # pseudo-distance rounds to 1 here, the stable form still resolves it
    z, w = 1 - 1e-12, -(1 - 1e-12)
    d = bergman_distance(z, w)
    assert math.isfinite(d)
    assert d == pytest.approx(2 * 0.5 * math.log(2 / 1e-12), rel=1e-6)


@given(points, points)
def test_mobius_involution(a, z):
    assert abs(mobius(a, mobius(a, z)).z - z) < 1e-12


@given(points, points, points)
def test_distance_mobius_invariance(a, z, w):
    d0 = bergman_distance(z, w)
    d1 = bergman_distance(mobius(a, z), mobius(a, w))
    assert d1 == pytest.approx(d0, abs=1e-9)


@given(points, points)
def test_distance_symmetric(z, w):
    assert bergman_distance(z, w) == pytest.approx(bergman_distance(w, z), abs=1e-12)


def test_distance_array_matches_scalar():
    rng = np.random.default_rng(1)
    z = 0.9 * rng.random(50) * np.exp(2j * np.pi * rng.random(50))
    w = 0.9 * rng.random(50) * np.exp(2j * np.pi * rng.random(50))
    expected = [naive_distance(a, b) for a, b in zip(z, w)]
    np.testing.assert_allclose(bergman_distance_array(z, w), expected, atol=1e-12)


def test_disk_point_rejects_outside():
    with pytest.raises(ValueError):
        DiskPoint(1.0, 0.0)
    with pytest.raises(ValueError):
        DiskPoint(float("nan"), 0.0)


def _disk_extent_oracle(a, t):
    # real-axis endpoints of D(a, t) for real a, by root finding on the distance
    lo = brentq(lambda x: naive_distance(complex(x), complex(a)) - t, -0.999999, a)
    hi = brentq(lambda x: naive_distance(complex(x), complex(a)) - t, a, 0.999999)
    return 0.5 * (lo + hi), 0.5 * (hi - lo)


@pytest.mark.parametrize("a, t, center, radius", [
    (0.0, 0.5, 0.0, 0.462117),
    (0.5, 0.5, 0.415401, 0.366135),
])
def test_bergman_disk_euclidean_examples(a, t, center, radius):
    disk = bergman_disk_euclidean(a, t)
    assert disk.center.z == pytest.approx(center, abs=1e-5)
    assert disk.radius == pytest.approx(radius, abs=1e-5)
    oc, orad = _disk_extent_oracle(a, t)
    assert disk.center.re == pytest.approx(oc, abs=1e-9)
    assert disk.radius == pytest.approx(orad, abs=1e-9)


def test_bergman_disk_membership_example():
    disk = bergman_disk_euclidean(0.5, 0.5)
    assert bool(disk.contains(0.7)) == (bergman_distance(0.7, 0.5) < 0.5)


@given(points, st.floats(0.05, 3.0))
@settings(max_examples=50)
def test_bergman_disk_membership_agrees(a, t):
    disk = bergman_disk_euclidean(a, t)
    rng = np.random.default_rng(abs(hash((a, t))) % 2**32)
    z = np.sqrt(rng.random(400)) * 0.999 * np.exp(2j * np.pi * rng.random(400))
    d = bergman_distance_array(z, a)
    clear = np.abs(d - t) > 1e-8
    np.testing.assert_array_equal(disk.contains(z)[clear], (d < t)[clear])
    np.testing.assert_array_equal(BergmanDisk(DiskPoint.from_complex(a), t).contains(z)[clear], (d < t)[clear])


@pytest.mark.parametrize("region, z, expected", [
    (CarlesonBox(Arc(0.0, 0.25)), 0.8 * np.exp(0.3j), True),
    (CarlesonBox(Arc(0.0, 0.25)), 0.7, False),
    (LusinCone(BoundaryPoint(0.0), 2.0), 0.0, True),
    (WholeDisk(), 0.99, True),
    (DeltaBox(DiskPoint(0.9, 0.0)), 0.9, True),
    (DeltaBox(DiskPoint(0.9, 0.0)), 0.5, False),
])
def test_region_examples(region, z, expected):
    assert region_contains(region, z) is expected


def test_cone_rejects_small_aperture():
    with pytest.raises(ValueError):
        LusinCone(BoundaryPoint(0.0), 1.0)


def _aperture_oracle(z, sigma, samples=2**20):
    th = 2 * np.pi * np.arange(samples) / samples
    inside = np.abs(1 - np.exp(-1j * th) * z) < sigma * (1 - abs(z))
    return inside.mean(), th[inside]


@pytest.mark.parametrize("z", [0.9, 0.9j, 0.5 * np.exp(2.0j), 0.999])
def test_aperture_matches_dense_sampling(z):
    arc, measure = aperture_arc(z, 2.0)
    oracle, _ = _aperture_oracle(z, 2.0)
    assert measure == pytest.approx(oracle, abs=1e-5)
    assert abs(np.angle(np.exp(1j * (arc.center_angle - np.angle(z))))) < 1e-12


def test_aperture_examples():
    assert aperture_arc(0.0, 2.0)[1] == 1.0
    assert aperture_arc(0.9, 2.0)[1] == pytest.approx(0.05816, abs=1e-4)
    assert aperture_arc(0.9j, 2.0)[1] == pytest.approx(aperture_arc(0.9, 2.0)[1], abs=1e-14)


def test_dyadic_arc_layout():
    arc = DyadicArc(3, 5)
    assert arc.length == 2.0**-3
    assert arc.contains_angle(2 * np.pi * 5.5 / 8)
    assert not arc.contains_angle(2 * np.pi * 6.5 / 8)


@pytest.mark.parametrize("region", [
    CarlesonBox(Arc(1.0, 0.125)),
    LusinCone(BoundaryPoint(2.0), 3.0),
    DeltaBox(DiskPoint.from_polar(0.8, -1.0)),
    BergmanDisk(DiskPoint.from_polar(0.6, 0.5), 0.7),
])
def test_ring_arcs_match_membership(region):
    rho = np.linspace(0.01, 0.995, 120)
    center, half, _ = ring_arcs(region, rho)
    th = np.linspace(-np.pi, np.pi, 721)
    for k in range(0, 120, 7):
        z = rho[k] * np.exp(1j * th)
        inside = region.contains(z)
        d = np.abs(np.angle(np.exp(1j * (th - center[k]))))
        clear = np.abs(d - half[k]) > 1e-6
        expected = np.ones_like(inside) if half[k] >= np.pi else d < half[k]
        np.testing.assert_array_equal(inside[clear], expected[clear])


def test_pseudo_distance_bounds():
    assert pseudo_distance(0.3, 0.3) == 0
    assert 0 < pseudo_distance(0.3, -0.3) < 1


def _comparability_constant(a, samples, seed):
    rng = np.random.default_rng(seed)
    disk = bergman_disk_euclidean(a, 1.0)
    z = disk.center.z + disk.radius * np.sqrt(rng.random(samples)) * np.exp(2j * np.pi * rng.random(samples))
    z = z[bergman_distance_array(z, a) < 1.0]
    ratios = [np.abs(1 - np.conj(a) * z) / (1 - np.abs(z)),
              (1 - np.abs(z)) / (1 - abs(a)),
              np.abs(1 - np.conj(a) * z) / (1 - abs(a))]
    return max(max(r.max(), 1 / r.min()) for r in ratios)


def test_point_comparability_in_bergman_disks():
    centers = [0.0, 0.5, 0.9 * np.exp(1j), 0.99, 0.999j]
    c = max(_comparability_constant(a, 20_000, 1) for a in centers)
    c2 = max(_comparability_constant(a, 40_000, 2) for a in centers)
    assert c < 20
    assert c2 == pytest.approx(c, rel=0.05)
