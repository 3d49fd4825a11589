"""Points, arcs and regions of the unit disk, and the Bergman metric.

All arc lengths are normalized so that the whole circle has length 1.
Angles are radians; stored angles live in ``[-pi, pi)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

TWO_PI = 2.0 * math.pi
MAX_MODULUS = 1.0 - 1e-12


def wrap_angle(theta):
    """Map an angle (or array of angles) into ``[-pi, pi)``."""
    return np.mod(np.asarray(theta, dtype=float) + math.pi, TWO_PI) - math.pi


def circular_distance(a, b):
    """Absolute angular distance on the circle, in ``[0, pi]``."""
    return np.abs(wrap_angle(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))


@dataclass(frozen=True)
class DiskPoint:
    """A point of the open unit disk in Cartesian coordinates."""

    re: float
    im: float

    def __post_init__(self):
        re, im = float(self.re), float(self.im)
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ValueError(f"non-finite disk point ({self.re}, {self.im})")
        if math.hypot(re, im) >= MAX_MODULUS:
            raise ValueError(
                f"point ({re}, {im}) has modulus {math.hypot(re, im)!r} >= 1 - 1e-12"
            )
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @classmethod
    def from_complex(cls, z: complex) -> "DiskPoint":
        z = complex(z)
        return cls(z.real, z.imag)

    @classmethod
    def from_polar(cls, rho: float, theta: float) -> "DiskPoint":
        return cls(rho * math.cos(theta), rho * math.sin(theta))

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    @property
    def rho(self) -> float:
        return math.hypot(self.re, self.im)

    @property
    def theta(self) -> float:
        return float(wrap_angle(math.atan2(self.im, self.re)))

    def __complex__(self) -> complex:
        return self.z


@dataclass(frozen=True)
class BoundaryPoint:
    """A point ``e^{i angle}`` of the unit circle, kept as its angle."""

    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", float(wrap_angle(float(self.angle))))

    @property
    def xi(self) -> complex:
        return complex(math.cos(self.angle), math.sin(self.angle))


@dataclass(frozen=True)
class Arc:
    """Closed boundary arc with normalized length in ``(0, 1]``."""

    center_angle: float
    length: float

    def __post_init__(self):
        if not (0.0 < self.length <= 1.0):
            raise ValueError(f"arc length must lie in (0, 1], got {self.length}")
        object.__setattr__(self, "center_angle", float(wrap_angle(float(self.center_angle))))
        object.__setattr__(self, "length", float(self.length))

    @property
    def half_width(self) -> float:
        """Half the angular width, in radians."""
        return math.pi * self.length

    def contains_angle(self, theta):
        return circular_distance(theta, self.center_angle) <= self.half_width

    @classmethod
    def dyadic(cls, depth: int, index: int) -> "DyadicArc":
        return DyadicArc(depth, index)


class DyadicArc(Arc):
    """The arc ``[k 2^-n, (k+1) 2^-n)`` of the normalized circle."""

    def __init__(self, depth: int, index: int):
        if depth < 0 or not (0 <= index < 2**depth):
            raise ValueError(f"no dyadic arc with depth={depth}, index={index}")
        length = 2.0**-depth
        super().__init__(TWO_PI * (index + 0.5) * length, length)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "index", index)

    def __repr__(self):
        return f"DyadicArc(depth={self.depth}, index={self.index})"

    def describe(self) -> str:
        lo = self.index * self.length
        return f"[{lo:.12g}, {lo + self.length:.12g}) (depth {self.depth}, index {self.index})"


@dataclass(frozen=True)
class EuclideanDisk:
    center: DiskPoint
    radius: float

    def contains(self, z):
        return np.abs(np.asarray(z, dtype=complex) - self.center.z) < self.radius


# -- Regions -----------------------------------------------------------------


@dataclass(frozen=True)
class CarlesonBox:
    arc: Arc

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        return (np.abs(z) > 1.0 - self.arc.length) & self.arc.contains_angle(np.angle(z))


@dataclass(frozen=True)
class BergmanDisk:
    center: DiskPoint
    t: float

    def __post_init__(self):
        if not self.t > 0:
            raise ValueError(f"Bergman disk radius must be positive, got {self.t}")

    def contains(self, z):
        return pseudo_distance(z, self.center.z) < math.tanh(self.t)


@dataclass(frozen=True)
class LusinCone:
    vertex: BoundaryPoint
    sigma: float = 2.0

    def __post_init__(self):
        if not self.sigma > 1:
            raise ValueError(f"cone aperture sigma must exceed 1, got {self.sigma}")

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        return np.abs(1.0 - np.conj(self.vertex.xi) * z) < self.sigma * (1.0 - np.abs(z))


@dataclass(frozen=True)
class DeltaBox:
    """Whitney-type box around ``anchor = r e^{i theta}``."""

    anchor: DiskPoint

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        h = 1.0 - self.anchor.rho
        u = 1.0 - np.abs(z)
        return (
            (circular_distance(np.angle(z), self.anchor.theta) < h)
            & (0.5 * h < u)
            & (u < 2.0 * h)
        )


@dataclass(frozen=True)
class WholeDisk:
    def contains(self, z):
        return np.ones(np.shape(z), dtype=bool)


Region = Union[CarlesonBox, BergmanDisk, LusinCone, DeltaBox, WholeDisk]


def _as_complex(p) -> complex:
    return p.z if isinstance(p, DiskPoint) else complex(p)


def region_contains(region: Region, z) -> bool:
    """Exact membership of a single point in a region."""
    return bool(region.contains(np.asarray(_as_complex(z))))


def ring_arcs(region: Region, rho):
    """Intersection of a region with the circles ``|z| = rho``.

    Every region meets a centered circle in a single arc.  Returns
    ``(center, half_width, closed)``: arrays of arc centers and half-widths
    (negative half-width means empty, ``>= pi`` means the full circle), and
    whether the arc boundary belongs to the region.
    """
    rho = np.asarray(rho, dtype=float)
    u = 1.0 - rho
    half = np.full(rho.shape, -1.0)
    center = np.zeros(rho.shape)
    closed = False
    if isinstance(region, WholeDisk):
        half[:] = 2 * math.pi
    elif isinstance(region, CarlesonBox):
        center[:] = region.arc.center_angle
        half = np.where(rho > 1.0 - region.arc.length, region.arc.half_width, -1.0)
        closed = True
    elif isinstance(region, LusinCone):
        center[:] = region.vertex.angle
        half = aperture_half_width(rho, region.sigma)
    elif isinstance(region, DeltaBox):
        h = 1.0 - region.anchor.rho
        center[:] = region.anchor.theta
        half = np.where((0.5 * h < u) & (u < 2.0 * h), h, -1.0)
    elif isinstance(region, BergmanDisk):
        disk = bergman_disk_euclidean(region.center, region.t)
        c, R = disk.center.rho, disk.radius
        center[:] = disk.center.theta
        with np.errstate(divide="ignore", invalid="ignore"):
            cosv = (rho**2 + c**2 - R**2) / (2.0 * rho * c)
        inside = np.abs(rho - c) < R
        full = rho + c < R
        half = np.where(inside, np.arccos(np.clip(cosv, -1.0, 1.0)), -1.0)
        half = np.where(full, 2 * math.pi, half)
    else:
        raise TypeError(f"unknown region {region!r}")
    return center, half, closed


# -- Metric ------------------------------------------------------------------


def mobius(a, z) -> DiskPoint:
    """The involution ``phi_a(z) = (a - z) / (1 - conj(a) z)``."""
    a, z = _as_complex(a), _as_complex(z)
    return DiskPoint.from_complex((a - z) / (1.0 - a.conjugate() * z))


def pseudo_distance(z, w):
    """Vectorized ``|phi_w(z)|``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.abs(z - w) / np.abs(1.0 - np.conj(w) * z)


def bergman_distance_array(z, w):
    """Vectorized Bergman distance ``artanh |phi_w(z)|``.

    ``1 - |phi_w(z)|^2`` is formed from the factored identity so points
    near the circle keep full relative precision.
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    az, aw = np.abs(z), np.abs(w)
    den = np.abs(1.0 - np.conj(w) * z)
    p = np.abs(z - w) / den
    one_minus_p2 = (1.0 - az) * (1.0 + az) * (1.0 - aw) * (1.0 + aw) / den**2
    return np.log1p(p) - 0.5 * np.log(one_minus_p2)


def bergman_distance(z, w) -> float:
    """``d(z, w) = 1/2 log((1 + |phi_w(z)|) / (1 - |phi_w(z)|))``."""
    return float(bergman_distance_array(_as_complex(z), _as_complex(w)))


def bergman_disk_euclidean(a, t: float) -> EuclideanDisk:
    """Euclidean center and radius of the Bergman disk ``D(a, t)``."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    a = _as_complex(a)
    r = math.tanh(t)
    a2 = abs(a) ** 2
    den = 1.0 - a2 * r * r
    return EuclideanDisk(DiskPoint.from_complex((1.0 - r * r) * a / den), (1.0 - a2) * r / den)


def aperture_half_width(rho, sigma: float):
    """Half-width (radians) of ``{xi : z in Gamma_sigma(xi)}`` for ``|z| = rho``.

    Solves ``1 - 2 rho cos(phi) + rho^2 < sigma^2 (1 - rho)^2`` for ``phi``.
    """
    rho = np.asarray(rho, dtype=float)
    u = 1.0 - rho
    with np.errstate(divide="ignore", invalid="ignore"):
        # 1 - cos(phi) = ((sigma^2 - 1) u^2) / (2 rho); use the half-angle form
        # for accuracy when u is tiny.
        s = np.sqrt((sigma * sigma - 1.0) * u * u / (4.0 * rho))
        half = 2.0 * np.arcsin(np.clip(s, 0.0, 1.0))
    return np.where((rho <= 0) | (s >= 1.0), 2 * math.pi, half)


def aperture_arc(z, sigma: float = 2.0) -> tuple[Arc, float]:
    """The arc of vertices ``xi`` whose cone contains ``z``, and its measure."""
    if not sigma > 1:
        raise ValueError(f"sigma must exceed 1, got {sigma}")
    p = DiskPoint.from_complex(_as_complex(z))
    if p.rho == 0.0:
        return Arc(0.0, 1.0), 1.0
    half = float(aperture_half_width(p.rho, sigma))
    measure = min(half / math.pi, 1.0)
    return Arc(p.theta, measure), measure
