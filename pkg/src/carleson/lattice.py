"""Separated, covering point sets for the Bergman metric (delta-lattices)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from . import kernels
from .geometry import TWO_PI, DiskPoint


@dataclass(frozen=True, eq=False)
class Lattice:
    """Lattice points in shell order; ``shell_index[j]`` is the shell of point ``j``."""

    points: tuple
    delta: float
    rho_max: float
    shell_index: np.ndarray = field(repr=False)

    def as_complex(self) -> np.ndarray:
        return np.array([p.z for p in self.points], dtype=complex)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class LatticeReport:
    covering_failures: int
    max_overlap: int
    min_pairwise_distance: float
    point_count: int
    samples: int
    sample_radius: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def shell_radii(delta: float, rho_max: float) -> np.ndarray:
    """Radii ``tanh(k delta / 4)`` (Bergman distance ``k delta / 4`` from 0) up to ``rho_max``."""
    step = delta / 4.0
    k_max = int(math.floor(math.atanh(rho_max) / step + 1e-12))
    return np.tanh(step * np.arange(k_max + 1))


def shell_count(r: float, delta: float) -> int:
    """Points needed on ``|z| = r`` so neighbours are within distance ``delta / 2``."""
    if r == 0.0:
        return 1
    s = math.tanh(delta / 2.0)
    cos_psi = (2 * r * r - s * s * (1 + r**4)) / (2 * r * r * (1 - s * s))
    if cos_psi <= -1.0:
        return 1
    psi = math.acos(min(cos_psi, 1.0))
    return max(1, math.ceil(TWO_PI / psi))


def build_lattice(delta: float, rho_max: float) -> Lattice:
    """Hyperbolic polar lattice truncated at ``|z| <= rho_max``.

    Shells sit at Bergman distance steps of ``delta / 4`` from the origin;
    each shell holds equispaced points at Bergman spacing at most
    ``delta / 2``, with odd shells rotated by half a step.
    """
    if not 0 < delta <= 2:
        raise ValueError(f"delta must lie in (0, 2], got {delta}")
    if not 0 < rho_max < 1:
        raise ValueError(f"rho_max must lie in (0, 1), got {rho_max}")
    pts, shells = [], []
    for k, r in enumerate(shell_radii(delta, rho_max)):
        n = shell_count(float(r), delta)
        theta = TWO_PI * (np.arange(n) + 0.5 * (k % 2)) / n
        for th in theta:
            pts.append(DiskPoint.from_polar(float(r), float(th)))
        shells.extend([k] * n)
    return Lattice(tuple(pts), float(delta), float(rho_max), np.array(shells))


def hyperbolic_samples(count: int, radius: float, seed: int = 0) -> np.ndarray:
    """Quasi-uniform samples for hyperbolic area in ``|z| <= radius`` (scrambled Halton)."""
    if count < 1:
        raise ValueError(f"sample count must be >= 1, got {count}")
    u = qmc.Halton(d=2, scramble=True, seed=seed).random(count)
    a_max = radius * radius / (1.0 - radius * radius)
    a = u[:, 0] * a_max
    rho = np.sqrt(a / (1.0 + a))
    return rho * np.exp(TWO_PI * 1j * u[:, 1])


def verify_lattice(lattice: Lattice, samples: int = 10_000, sample_radius: float | None = None,
                   seed: int = 0) -> LatticeReport:
    """Covering failures, overlap count and separation of a lattice.

    Samples default to ``|z| <= 1 - 1.5 (1 - rho_max)``, which leaves a
    margin inside the truncation radius.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if sample_radius is None:
        sample_radius = max(0.0, 1.0 - 1.5 * (1.0 - lattice.rho_max))
    zs = hyperbolic_samples(samples, sample_radius, seed)
    pts = lattice.as_complex()
    ones = np.ones(pts.shape[0])
    near = kernels.ball_weights(zs.real, zs.imag, pts.real, pts.imag, ones, math.tanh(lattice.delta))
    overlap = kernels.ball_weights(zs.real, zs.imag, pts.real, pts.imag, ones,
                                   math.tanh(5.0 * lattice.delta))
    p = kernels.min_pseudo_distance(pts.real, pts.imag)
    return LatticeReport(
        covering_failures=int(np.count_nonzero(near == 0)),
        max_overlap=int(np.max(overlap)),
        min_pairwise_distance=float(math.atanh(p)) if math.isfinite(p) else math.inf,
        point_count=len(lattice),
        samples=samples,
        sample_radius=float(sample_radius),
    )


def export_lattice(lattice: Lattice, path) -> None:
    """Write one ``re, im`` pair per line."""
    with open(path, "w") as fh:
        for p in lattice.points:
            fh.write(f"{p.re!r}, {p.im!r}\n")


def load_lattice_points(path) -> np.ndarray:
    data = np.loadtxt(path, delimiter=",", ndmin=2)
    return data[:, 0] + 1j * data[:, 1]
