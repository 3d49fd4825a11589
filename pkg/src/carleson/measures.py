"""Positive measures on the disk and their integration over regions.

Densities are taken with respect to normalized area ``dm_2`` (so the disk
has area 1).  Radial integration runs over dyadic layers
``1 - 2^-k < |z| < 1 - 2^-(k+1)``; each layer is split into ``radial_sub``
rings whose masses are integrated in closed form, so only the angular
direction and the integrand (if any) are sampled.
"""
from __future__ import annotations

import ast
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Union

import numpy as np
import yaml

from .geometry import (
    TWO_PI,
    BergmanDisk,
    CarlesonBox,
    DeltaBox,
    DiskPoint,
    LusinCone,
    Region,
    WholeDisk,
    bergman_disk_euclidean,
    ring_arcs,
)
from . import kernels


class MeasureError(ValueError):
    """A measure description is malformed or out of range."""


class DivergenceError(ValueError):
    """The requested weighted integral is infinite for this measure."""


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class QuadratureConfig:
    """Layered polar grid: ``depth`` dyadic layers, angular nodes per layer
    ``min(base_angular * 2**k, angular_cap)``, ``radial_sub`` rings per layer."""

    depth: int = 16
    base_angular: int = 16
    angular_cap: int = 2**14
    radial_sub: int = 2

    def __post_init__(self):
        if self.depth < 4:
            raise ValueError(f"depth K must be >= 4, got {self.depth}")
        if self.base_angular < 16 or not _is_pow2(self.base_angular):
            raise ValueError(f"base_angular must be a power of two >= 16, got {self.base_angular}")
        if self.angular_cap < self.base_angular or not _is_pow2(self.angular_cap):
            raise ValueError(f"angular_cap must be a power of two >= base_angular, got {self.angular_cap}")
        if self.radial_sub < 1:
            raise ValueError(f"radial_sub must be >= 1, got {self.radial_sub}")

    def angular_nodes(self, layer: int) -> int:
        return min(self.base_angular << min(layer, 60), self.angular_cap)

    def refined(self) -> "QuadratureConfig":
        """Double every resolution parameter."""
        return QuadratureConfig(
            2 * self.depth, 2 * self.base_angular, 2 * self.angular_cap, 2 * self.radial_sub
        )

    def at_least(self, depth: int = 0, angular_cap: int = 0) -> "QuadratureConfig":
        cap = self.angular_cap
        while cap < angular_cap:
            cap *= 2
        return replace(self, depth=max(self.depth, depth), angular_cap=cap)


# -- Measure models ----------------------------------------------------------


@dataclass(frozen=True)
class Atomic:
    """Finite sum of point masses ``sum w_j delta_{z_j}``."""

    atoms: tuple = ()

    def __post_init__(self):
        atoms = []
        for item in self.atoms:
            point, weight = item
            if not isinstance(point, DiskPoint):
                point = DiskPoint.from_complex(point)
            weight = float(weight)
            if not weight > 0 or not math.isfinite(weight):
                raise MeasureError(f"atom at {point.z} has non-positive weight {weight}")
            atoms.append((point, weight))
        object.__setattr__(self, "atoms", tuple(atoms))

    @property
    def points(self) -> np.ndarray:
        return np.array([p.z for p, _ in self.atoms], dtype=complex)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms], dtype=float)

    def describe(self) -> str:
        return "atomic[" + ", ".join(f"({p.re:g}{p.im:+g}i, {w:g})" for p, w in self.atoms) + "]"


@dataclass(frozen=True)
class AlphaArea:
    """``dm_alpha = (1 - |z|)^alpha dm_2``, optionally truncated at ``|z| < cutoff``."""

    alpha: float
    cutoff: float | None = None

    def __post_init__(self):
        if not self.alpha > -1:
            raise MeasureError(f"alpha must exceed -1, got {self.alpha}")
        _check_cutoff(self.cutoff)

    @property
    def exponent(self) -> float:
        return float(self.alpha)

    def describe(self) -> str:
        return f"alpha_area({self.alpha:g}" + (f", cutoff={self.cutoff!r})" if self.cutoff else ")")


@dataclass(frozen=True)
class RadialPower:
    """Density ``(1 - |z|)^exponent`` on ``|z| < cutoff``."""

    exponent: float
    cutoff: float | None = None

    def __post_init__(self):
        _check_cutoff(self.cutoff)
        if self.exponent <= -1 and self.cutoff is None:
            raise MeasureError(
                f"radial_power exponent {self.exponent} <= -1 has infinite mass; give a cutoff < 1"
            )

    def describe(self) -> str:
        return f"radial_power({self.exponent:g}" + (f", cutoff={self.cutoff!r})" if self.cutoff else ")")


@dataclass(frozen=True, eq=False)
class GridDensity:
    """Piecewise-constant density on the cells of a polar grid.

    ``values`` is row-major by (ring, angle) over the rings of
    ``config`` (inner ring first, angle counter-clockwise from 0).
    """

    config: QuadratureConfig
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        geom = _cells(self.config, 0.0)
        if values.shape[0] != geom.size:
            raise MeasureError(f"grid density needs {geom.size} samples, got {values.shape[0]}")
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise MeasureError("grid density samples must be finite and non-negative")
        object.__setattr__(self, "values", values)

    def describe(self) -> str:
        return f"grid_density({self.values.shape[0]} cells)"


MeasureModel = Union[Atomic, AlphaArea, RadialPower, GridDensity]
RadialModel = (AlphaArea, RadialPower)


def _check_cutoff(cutoff):
    if cutoff is not None and not (0 < cutoff < 1):
        raise MeasureError(f"cutoff must lie in (0, 1), got {cutoff}")


def zero_measure() -> Atomic:
    return Atomic(())


# -- Grid geometry -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Rings:
    u_in: np.ndarray  # 1 - |z| at the inner edge
    u_out: np.ndarray  # 1 - |z| at the outer edge (0 for the tail ring)
    cells: np.ndarray  # angular cells per ring
    layer: np.ndarray

    @property
    def u_mid(self):
        return 0.5 * (self.u_in + self.u_out)

    @property
    def rho_mid(self):
        return 1.0 - self.u_mid

    @property
    def tail(self):
        return self.u_out == 0.0


@lru_cache(maxsize=64)
def make_rings(config: QuadratureConfig, u_end: float = 0.0) -> Rings:
    """Rings of the layered grid, truncated at ``1 - |z| = u_end``.

    A positive ``u_end`` extends the dyadic layering down to the cutoff so
    that singular weights are resolved; with ``u_end == 0`` the region
    beyond layer ``depth`` is one tail layer.
    """
    depth = config.depth
    if u_end > 0:
        depth = max(depth, int(math.ceil(-math.log2(u_end))))
    bounds = [2.0**-k for k in range(depth + 1)] + [0.0]
    u_in, u_out, cells, layer = [], [], [], []
    for k in range(depth + 1):
        hi, lo = bounds[k], max(bounds[k + 1], u_end)
        if hi <= lo:
            continue
        m = config.angular_nodes(k)
        edges = np.linspace(hi, lo, config.radial_sub + 1)
        u_in.extend(edges[:-1])
        u_out.extend(edges[1:])
        cells.extend([m] * config.radial_sub)
        layer.extend([k] * config.radial_sub)
    return Rings(np.array(u_in), np.array(u_out), np.array(cells, dtype=np.int64), np.array(layer))


@dataclass(frozen=True, eq=False)
class CellGeometry:
    ring: np.ndarray
    theta: np.ndarray
    u: np.ndarray
    z: np.ndarray

    @property
    def size(self):
        return self.ring.shape[0]


@lru_cache(maxsize=16)
def _cells(config: QuadratureConfig, u_end: float) -> CellGeometry:
    rings = make_rings(config, u_end)
    ring = np.repeat(np.arange(rings.cells.shape[0]), rings.cells)
    starts = np.concatenate([[0], np.cumsum(rings.cells)[:-1]])
    idx = np.arange(ring.shape[0]) - np.repeat(starts, rings.cells)
    theta = TWO_PI * (idx + 0.5) / rings.cells[ring]
    u = rings.u_mid[ring]
    return CellGeometry(ring, theta, u, (1.0 - u) * np.exp(1j * theta))


def radial_weight(u_in, u_out, p):
    """``int 2 rho (1 - rho)^p d rho`` over ``1 - u_in < rho < 1 - u_out``.

    With normalized area this is the ``(1 - |z|)^p dm_2`` mass of the full
    annulus.  Infinite when ``u_out == 0`` and ``p <= -1``.
    """
    u_in = np.asarray(u_in, dtype=float)
    u_out = np.asarray(u_out, dtype=float)
    lower = _power_integral(u_in, u_out, p)
    with np.errstate(invalid="ignore"):
        val = 2.0 * (lower - _power_integral(u_in, u_out, p + 1.0))
    return np.where(np.isinf(lower), np.inf, val)


def _power_integral(a, b, q):
    """``int_b^a u^q du`` for ``a > b >= 0``, stable as ``q -> -1``."""
    s = q + 1.0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        log_ratio = np.log(b / a)
        if s == 0.0:
            return -log_ratio
        val = a**s * (-np.expm1(s * log_ratio)) / s
    return np.where(b == 0.0, np.inf if s <= 0 else a**s / s, val)


# -- Discretized measures ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class Nodes:
    """A measure reduced to weighted points: exact atoms or grid cells.

    ``weight`` already carries the ``(1 - |z|)^gamma`` factor.
    """

    z: np.ndarray
    u: np.ndarray
    theta: np.ndarray
    weight: np.ndarray
    truncated_at: float | None = None


def _u_end(mu) -> float:
    cutoff = getattr(mu, "cutoff", None)
    return 0.0 if cutoff is None else 1.0 - cutoff


def _density_exponent(mu) -> float:
    return mu.alpha if isinstance(mu, AlphaArea) else mu.exponent


def _tail_policy(weights_tail_infinite: bool, p: float, kind: str) -> bool:
    """Whether to drop an infinite tail ring; raises for divergent integrals."""
    if not weights_tail_infinite:
        return False
    if kind == "cone":
        if p <= -2:
            raise DivergenceError(
                f"cone integral diverges: density exponent + gamma = {p:g} <= -2"
            )
        return True
    if kind == "compact":
        return True
    raise DivergenceError(
        f"integral diverges near the circle: density exponent + gamma = {p:g} <= -1"
    )


def ring_weights(mu, gamma: float, quad: QuadratureConfig, kind: str = "box"):
    """Per-ring ``(1 - |z|)^gamma`` masses of a radial density.

    ``kind`` is ``"box"`` (regions touching the circle along an arc),
    ``"cone"`` (approach regions, integrable one order further) or
    ``"compact"``.  Returns ``(rings, weights, keep)``.
    """
    p = _density_exponent(mu) + gamma
    rings = make_rings(quad, _u_end(mu))
    w = radial_weight(rings.u_in, rings.u_out, p)
    infinite = ~np.isfinite(w)
    drop = _tail_policy(bool(np.any(infinite)), p, kind)
    keep = np.isfinite(w) if drop else np.ones(w.shape, dtype=bool)
    return rings, np.where(keep, w, 0.0), keep


def discretize(mu: MeasureModel, gamma: float = 0.0, quad: QuadratureConfig | None = None,
               kind: str = "box") -> Nodes:
    """Reduce ``(1 - |z|)^gamma dmu`` to weighted nodes."""
    quad = quad or QuadratureConfig()
    if isinstance(mu, Atomic):
        z = mu.points
        u = 1.0 - np.abs(z)
        return Nodes(z, u, np.mod(np.angle(z), TWO_PI), mu.weights * u**gamma)
    if isinstance(mu, RadialModel):
        rings, w, keep = ring_weights(mu, gamma, quad, kind)
        cells = _cells(quad, _u_end(mu))
        cw = (w / rings.cells)[cells.ring]
        mask = keep[cells.ring]
        truncated = None if np.all(keep) else float(1.0 - rings.u_out[keep].min())
        return Nodes(cells.z[mask], cells.u[mask], cells.theta[mask], cw[mask], truncated)
    if isinstance(mu, GridDensity):
        rings = make_rings(mu.config, 0.0)
        w = radial_weight(rings.u_in, rings.u_out, gamma)
        infinite = ~np.isfinite(w)
        drop = _tail_policy(bool(np.any(infinite)), gamma, kind)
        cells = _cells(mu.config, 0.0)
        cw = (np.where(np.isfinite(w), w, 0.0) / rings.cells)[cells.ring] * mu.values
        mask = np.isfinite(w)[cells.ring] if drop else np.ones(cells.size, dtype=bool)
        if not drop and np.any(infinite):
            raise DivergenceError(f"grid density integral diverges for gamma = {gamma:g}")
        return Nodes(cells.z[mask], cells.u[mask], cells.theta[mask], cw[mask])
    raise TypeError(f"unknown measure model {mu!r}")


def region_kind(region: Region) -> str:
    if isinstance(region, LusinCone):
        return "cone"
    if isinstance(region, (BergmanDisk, DeltaBox)):
        return "compact"
    return "box"


def integrate(mu: MeasureModel, region: Region, gamma: float = 0.0,
              quad: QuadratureConfig | None = None) -> float:
    """``int_region (1 - |z|)^gamma dmu(z)``.

    Atoms are summed exactly.  For rotation-invariant densities, boxes and
    Delta boxes are integrated in closed form, Bergman disks by Gauss-Legendre
    quadrature of the exact angular fraction, and cones by exact ring masses
    times the angular fraction at each ring's mid-radius; grid densities sum
    the cells whose midpoints lie in the region.
    """
    quad = quad or QuadratureConfig()
    kind = region_kind(region)
    if isinstance(mu, RadialModel):
        if isinstance(region, (CarlesonBox, DeltaBox)):
            return float(_radial_band_mass(mu, region, gamma))
        if isinstance(region, BergmanDisk):
            p = _density_exponent(mu) + gamma
            return float(_radial_disk_masses(p, _u_end(mu), np.array([region.center.rho]), region.t)[0])
        rings, w, keep = ring_weights(mu, gamma, quad, kind)
        _, half, _ = ring_arcs(region, rings.rho_mid)
        frac = np.clip(2.0 * half, 0.0, TWO_PI) / TWO_PI
        return float(np.sum(w[keep] * frac[keep]))
    nodes = discretize(mu, gamma, quad, kind)
    if nodes.z.shape[0] == 0:
        return 0.0
    return float(np.sum(nodes.weight[region.contains(nodes.z)]))


def total_mass(mu: MeasureModel, quad: QuadratureConfig | None = None) -> float:
    return integrate(mu, WholeDisk(), 0.0, quad)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(64)


def _radial_disk_masses(p: float, u_end: float, radii: np.ndarray, t: float) -> np.ndarray:
    """``int_{D(a,t)} (1 - |z|)^p dm_2`` for centers of modulus ``radii``.

    The annulus ``|rho - c| < R`` met by the Euclidean disk is parametrized
    by ``rho = m + h cos(phi)``, which removes the square-root endpoint
    behaviour of the angular fraction; any full disk around the origin is
    added in closed form.  A cutoff ``1 - |z| > u_end`` trims ``phi``.
    """
    radii = np.asarray(radii, dtype=float)
    r = math.tanh(t)
    a2 = radii**2
    den = 1.0 - a2 * r * r
    c = (1.0 - r * r) * radii / den
    R = (1.0 - a2) * r / den
    rho_cap = 1.0 - u_end
    lo, hi = np.abs(c - R), c + R
    m, h = 0.5 * (lo + hi), 0.5 * (hi - lo)
    # phi in [phi0, pi] keeps rho <= rho_cap
    with np.errstate(divide="ignore", invalid="ignore"):
        phi0 = np.arccos(np.clip(np.where(h > 0, (rho_cap - m) / h, 1.0), -1.0, 1.0))
    half_span = 0.5 * (math.pi - phi0)
    phi = phi0[:, None] + half_span[:, None] * (_GL_NODES[None, :] + 1.0)
    rho = m[:, None] + h[:, None] * np.cos(phi)
    cc, RR = c[:, None], R[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        cosv = (rho**2 + cc**2 - RR**2) / (2.0 * rho * cc)
        frac = np.where(cc > 0, np.arccos(np.clip(cosv, -1.0, 1.0)) / math.pi, 1.0)
        dens = 2.0 * rho * (1.0 - rho) ** p * frac * h[:, None] * np.sin(phi)
    partial = np.where(h > 0, half_span * (dens @ _GL_WEIGHTS), 0.0)
    inner_hi = np.minimum(R - c, rho_cap)
    inner = np.where(inner_hi > 0, radial_weight(1.0, 1.0 - np.maximum(inner_hi, 0.0), p), 0.0)
    return partial + inner


def _radial_band_mass(mu, region, gamma: float) -> float:
    """Closed form over a box or Delta box, both products of a ``1 - |z|`` band and an arc."""
    p = _density_exponent(mu) + gamma
    u_end = _u_end(mu)
    if isinstance(region, CarlesonBox):
        u_hi, u_lo = region.arc.length, 0.0
        frac = region.arc.length
    else:
        h = 1.0 - region.anchor.rho
        u_hi, u_lo = min(2.0 * h, 1.0), 0.5 * h
        frac = min(h / math.pi, 1.0)
    u_lo = max(u_lo, u_end)
    if u_hi <= u_lo:
        return 0.0
    w = radial_weight(u_hi, u_lo, p)
    if not np.isfinite(w):
        _tail_policy(True, p, "box")
    return float(w) * frac


# -- Batched region masses ---------------------------------------------------


def bergman_disk_masses(mu: MeasureModel, centers, t: float,
                        quad: QuadratureConfig | None = None) -> np.ndarray:
    """``mu(D(c, t))`` for an array of centers."""
    quad = quad or QuadratureConfig()
    centers = np.asarray(centers, dtype=complex).ravel()
    if isinstance(mu, Atomic):
        if not mu.atoms:
            return np.zeros(centers.shape[0])
        p = mu.points
        return kernels.ball_weights(centers.real, centers.imag, p.real, p.imag, mu.weights,
                                    math.tanh(t))
    if isinstance(mu, RadialModel):
        radii, inverse = np.unique(np.abs(centers), return_inverse=True)
        return _radial_disk_masses(_density_exponent(mu), _u_end(mu), radii, t)[inverse]
    return np.array([integrate(mu, BergmanDisk(DiskPoint.from_complex(c), t), 0.0, quad)
                     for c in centers])


def delta_box_masses(mu: MeasureModel, anchors, quad: QuadratureConfig | None = None) -> np.ndarray:
    """``mu(Delta_z)`` for an array of anchors ``z``."""
    quad = quad or QuadratureConfig()
    anchors = np.asarray(anchors, dtype=complex).ravel()
    h = 1.0 - np.abs(anchors)
    if isinstance(mu, Atomic):
        if not mu.atoms:
            return np.zeros(anchors.shape[0])
        p = mu.points
        up = 1.0 - np.abs(p)
        out = np.zeros(anchors.shape[0])
        ang = np.angle(p)
        for j in range(p.shape[0]):
            dth = np.abs(np.mod(np.angle(anchors) - ang[j] + math.pi, TWO_PI) - math.pi)
            inside = (dth < h) & (0.5 * h < up[j]) & (up[j] < 2.0 * h)
            out += mu.weights[j] * inside
        return out
    if isinstance(mu, RadialModel):
        p = _density_exponent(mu)
        u_end = _u_end(mu)
        hi = np.minimum(2.0 * h, 1.0)
        lo = np.maximum(0.5 * h, u_end)
        radial = np.where(hi > lo, radial_weight(hi, np.minimum(lo, hi), p), 0.0)
        return radial * np.minimum(h / math.pi, 1.0)
    return np.array([integrate(mu, DeltaBox(DiskPoint.from_complex(a)), 0.0, quad)
                     for a in anchors])


# -- Measure descriptions ----------------------------------------------------

MEASURE_KINDS = ("atomic", "alpha_area", "radial_power", "grid_density")


def make_measure(spec) -> MeasureModel:
    """Build a validated measure from a mapping, an inline string or a file.

    Inline strings look like ``"alpha_area: 0"``, ``"radial_power: -0.5,
    cutoff 0.9999"`` or ``"atomic: [(0.9, 0, 1.0)]"`` (re, im, weight).
    Files are YAML/JSON mappings with a ``kind`` key; see
    ``docs/measure_spec.md``.
    """
    if isinstance(spec, (AlphaArea, RadialPower, Atomic, GridDensity)):
        return spec
    if isinstance(spec, Path) or (isinstance(spec, str) and _looks_like_file(spec)):
        with open(spec) as fh:
            data = yaml.safe_load(fh)
        if not isinstance(data, dict):
            raise MeasureError(f"measure file {spec} must hold a mapping")
        base = Path(spec).parent
        return _from_mapping(data, base)
    if isinstance(spec, dict):
        return _from_mapping(spec, Path("."))
    if isinstance(spec, str):
        return _from_inline(spec)
    raise MeasureError(f"cannot interpret measure description {spec!r}")


def _looks_like_file(s: str) -> bool:
    return s.endswith((".yaml", ".yml", ".json")) or (":" not in s and Path(s).exists())


def _from_inline(text: str) -> MeasureModel:
    if ":" not in text:
        raise MeasureError(f"measure spec {text!r} must look like 'kind: parameters'")
    kind, rest = (s.strip() for s in text.split(":", 1))
    kind = kind.lower()
    if kind == "atomic":
        try:
            triples = ast.literal_eval(rest) if rest else []
        except (ValueError, SyntaxError) as exc:
            raise MeasureError(f"cannot parse atom list {rest!r}: {exc}") from None
        return _from_mapping({"kind": "atomic", "atoms": triples}, Path("."))
    tokens = [t.strip() for t in rest.split(",") if t.strip()]
    if not tokens:
        raise MeasureError(f"measure kind {kind!r} needs a parameter")
    data: dict = {"kind": kind}
    main = {"alpha_area": "alpha", "radial_power": "exponent"}.get(kind)
    if main is None:
        raise MeasureError(f"unknown inline measure kind {kind!r}; expected one of {MEASURE_KINDS}")
    data[main] = tokens[0]
    for tok in tokens[1:]:
        key, _, val = tok.replace("=", " ").partition(" ")
        data[key.strip()] = val.strip()
    return _from_mapping(data, Path("."))


def _num(data, key, default=None):
    if key not in data or data[key] is None:
        if default is None:
            raise MeasureError(f"measure spec is missing {key!r}")
        return default
    try:
        return float(data[key])
    except (TypeError, ValueError):
        raise MeasureError(f"measure field {key!r} must be a number, got {data[key]!r}") from None


def _from_mapping(data: dict, base: Path) -> MeasureModel:
    kind = str(data.get("kind", "")).lower()
    cutoff = data.get("cutoff")
    cutoff = None if cutoff is None else _num(data, "cutoff")
    if kind == "atomic":
        atoms = []
        for item in data.get("atoms") or []:
            try:
                re_, im_, w = (float(x) for x in item)
            except (TypeError, ValueError):
                raise MeasureError(f"atom {item!r} must be a (re, im, weight) triple") from None
            if not w > 0:
                raise MeasureError(f"atom {item!r} has non-positive weight {w}")
            try:
                atoms.append((DiskPoint(re_, im_), w))
            except ValueError as exc:
                raise MeasureError(f"atom {item!r}: {exc}") from None
        return Atomic(tuple(atoms))
    if kind == "alpha_area":
        return AlphaArea(_num(data, "alpha"), cutoff)
    if kind == "radial_power":
        return RadialPower(_num(data, "exponent"), cutoff)
    if kind == "grid_density":
        q = data.get("quadrature") or {}
        config = QuadratureConfig(**{k: int(v) for k, v in q.items()})
        if "values_file" in data:
            values = np.loadtxt(base / data["values_file"], ndmin=1)
        else:
            values = np.asarray(data.get("values", []), dtype=float)
        return GridDensity(config, values)
    raise MeasureError(f"unknown measure kind {kind!r}; expected one of {MEASURE_KINDS}")


def measure_to_mapping(mu: MeasureModel) -> dict:
    """Inverse of ``make_measure`` for the file schema."""
    if isinstance(mu, Atomic):
        return {"kind": "atomic", "atoms": [[p.re, p.im, w] for p, w in mu.atoms]}
    if isinstance(mu, AlphaArea):
        d = {"kind": "alpha_area", "alpha": mu.alpha}
    elif isinstance(mu, RadialPower):
        d = {"kind": "radial_power", "exponent": mu.exponent}
    else:
        c = mu.config
        return {
            "kind": "grid_density",
            "quadrature": {"depth": c.depth, "base_angular": c.base_angular,
                           "angular_cap": c.angular_cap, "radial_sub": c.radial_sub},
            "values": mu.values.tolist(),
        }
    if mu.cutoff is not None:
        d["cutoff"] = mu.cutoff
    return d
