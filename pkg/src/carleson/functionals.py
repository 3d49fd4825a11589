"""Scalar functionals: dyadic arc suprema, Carleson-type constants,
cone integrals, nontangential maxima and weak-Lorentz norms.

Boundary functions are sampled at ``xi_j = exp(2 pi i j / M)``.  Cone
integrals over ``xi`` are bin-averaged: sample ``j`` holds the mean over
the angular bin of width ``2 pi / M`` centred at ``xi_j``, which makes arc
integrals of these profiles exact (Fubini) for the discretized measure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .geometry import (
    TWO_PI,
    BoundaryPoint,
    DiskPoint,
    DyadicArc,
    LusinCone,
    aperture_half_width,
)
from .measures import (
    AlphaArea,
    Atomic,
    GridDensity,
    MeasureModel,
    Nodes,
    QuadratureConfig,
    RadialModel,
    bergman_disk_masses,
    delta_box_masses,
    discretize,
    integrate,
    make_rings,
    ring_weights,
    _cells,
    _u_end,
)

MAX_DYADIC_DEPTH = 20


@dataclass
class ConstantEstimate:
    """A supremum with its maximizer and a refinement diagnostic.

    ``depth_values[n]`` is the running maximum over all dyadic levels
    ``<= n`` (when the estimate comes from a dyadic family).
    """

    value: float
    argmax: str
    dyadic_depth: int
    refinement_delta: float
    depth_values: tuple = field(default=(), repr=False)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "argmax": self.argmax,
            "dyadic_depth": self.dyadic_depth,
            "refinement_delta": self.refinement_delta,
        }


def _relative_change(new: float, old: float) -> float:
    if new == old:
        return 0.0
    return abs(new - old) / max(abs(new), abs(old))


# -- Test functions and boundary samples -------------------------------------


@dataclass(frozen=True)
class AnalyticTestFunction:
    """``f(z) = (1 - |w|)^beta / (1 - z conj(w))^gamma``."""

    w: DiskPoint
    gamma: float
    beta: float = 0.0

    def __post_init__(self):
        if not isinstance(self.w, DiskPoint):
            object.__setattr__(self, "w", DiskPoint.from_complex(self.w))
        if self.gamma < 0:
            raise ValueError(f"kernel exponent must be non-negative, got {self.gamma}")
        if self.beta < 0:
            raise ValueError(f"normalization exponent must be non-negative, got {self.beta}")

    def log_abs(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        w = self.w.z
        out = -self.gamma * np.log(np.abs(1.0 - z * np.conj(w)))
        if self.beta:
            out = out + self.beta * math.log1p(-abs(w))
        return out

    def abs(self, z) -> np.ndarray:
        return np.exp(self.log_abs(z))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return (1.0 - abs(self.w.z)) ** self.beta * np.exp(
            -self.gamma * np.log(1.0 - z * np.conj(self.w.z))
        )

    def describe(self) -> str:
        return f"kernel(w={self.w.re:.12g}{self.w.im:+.12g}i, gamma={self.gamma:g}, beta={self.beta:g})"


def unit_function() -> AnalyticTestFunction:
    return AnalyticTestFunction(DiskPoint(0.0, 0.0), 0.0, 0.0)


@dataclass(frozen=True, eq=False)
class BoundaryFunctionSamples:
    """Non-negative samples of a boundary function at ``xi_j = e^{2 pi i j/M}``."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        M = v.shape[0]
        if M < 64 or M & (M - 1):
            raise ValueError(f"sample count must be a power of two >= 64, got {M}")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise ValueError("boundary samples must be finite and non-negative")
        object.__setattr__(self, "values", v)

    @property
    def M(self) -> int:
        return self.values.shape[0]

    def scaled(self, c: float) -> "BoundaryFunctionSamples":
        return BoundaryFunctionSamples(c * self.values)


def kernel_boundary_trace(w, gamma: float, M: int) -> BoundaryFunctionSamples:
    """Samples of ``|1 - conj(xi_j) conj(w)|^-gamma``."""
    w = w.z if isinstance(w, DiskPoint) else complex(w)
    if M < 1 or M & (M - 1):
        raise ValueError(f"M must be a power of two, got {M}")
    xi = np.exp(-TWO_PI * 1j * np.arange(M) / M)
    return BoundaryFunctionSamples(np.exp(-gamma * np.log(np.abs(1.0 - xi * np.conj(w)))))


# -- Dyadic suprema ----------------------------------------------------------


def _check_depth(N: int):
    if not (0 <= N <= MAX_DYADIC_DEPTH):
        raise ValueError(f"dyadic depth must lie in [0, {MAX_DYADIC_DEPTH}], got {N}")


def sup_over_dyadic_arcs(F: Callable, N: int, vectorized: bool = False) -> ConstantEstimate:
    """Maximum of ``F`` over the dyadic arcs of depth ``<= N``.

    ``F`` maps a :class:`DyadicArc` to a number, or, with
    ``vectorized=True``, maps a depth ``n`` to the array of its ``2**n``
    values ordered by arc index.
    """
    _check_depth(N)
    best, where = -np.inf, None
    running = []
    for n in range(N + 1):
        if vectorized:
            vals = np.asarray(F(n), dtype=float)
            if vals.shape != (2**n,):
                raise ValueError(f"F({n}) must return {2**n} values, got shape {vals.shape}")
        else:
            vals = np.array([float(F(DyadicArc(n, k))) for k in range(2**n)])
        bad = np.flatnonzero(~np.isfinite(vals))
        if bad.size:
            raise ValueError(f"non-finite value {vals[bad[0]]} on arc {DyadicArc(n, int(bad[0])).describe()}")
        k = int(np.argmax(vals))
        if vals[k] > best:
            best, where = float(vals[k]), (n, k)
        running.append(best)
    prev = running[-2] if N > 0 else running[-1]
    return ConstantEstimate(
        value=best,
        argmax=DyadicArc(*where).describe(),
        dyadic_depth=N,
        refinement_delta=_relative_change(best, prev),
        depth_values=tuple(running),
    )


def _node_box_tables(nodes: Nodes, values, N: int) -> list:
    """Sums of ``values`` over the nodes in each dyadic Carleson box."""
    t = nodes.theta / TWO_PI
    out = []
    for n in range(N + 1):
        size = 2**n
        mask = nodes.u < 1.0 / size
        idx = np.minimum((t[mask] * size).astype(np.int64), size - 1)
        out.append(np.bincount(idx, weights=values[mask], minlength=size))
    return out


def _quad_for_depth(quad: QuadratureConfig | None, N: int) -> QuadratureConfig:
    return (quad or QuadratureConfig()).at_least(depth=N + 1, angular_cap=2**N)


def box_tables(mu: MeasureModel, gamma: float, N: int, quad: QuadratureConfig | None = None) -> list:
    """``int_{box(I)} (1 - |z|)^gamma dmu`` for every dyadic arc up to depth ``N``.

    Rotation-invariant densities use exact layer sums (layer boundaries
    coincide with the dyadic box heights); atoms are exact.
    """
    _check_depth(N)
    quad = _quad_for_depth(quad, N)
    if isinstance(mu, RadialModel):
        rings, w, _ = ring_weights(mu, gamma, quad, "box")
        u_mid = rings.u_mid
        return [np.full(2**n, 2.0**-n * float(np.sum(w[u_mid < 2.0**-n]))) for n in range(N + 1)]
    nodes = discretize(mu, gamma, quad, "box")
    return _node_box_tables(nodes, nodes.weight, N)


def carleson_constant(mu: MeasureModel, lam: float, N: int = 12,
                      quad: QuadratureConfig | None = None) -> ConstantEstimate:
    """``sup_I mu(box(I)) / |I|^lam`` over dyadic arcs of depth ``<= N``."""
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    tables = box_tables(mu, 0.0, N, quad)
    return sup_over_dyadic_arcs(lambda n: tables[n] * 2.0 ** (n * lam), N, vectorized=True)


def a_functional(mu: MeasureModel, s: float, N: int = 12,
                 quad: QuadratureConfig | None = None) -> ConstantEstimate:
    """``A(mu) = sup_I |I|^-s int_{box(I)} dmu / (1 - |z|)``."""
    if not s > 0:
        raise ValueError(f"s must be positive, got {s}")
    tables = box_tables(mu, -1.0, N, quad)
    return sup_over_dyadic_arcs(lambda n: tables[n] * 2.0 ** (n * s), N, vectorized=True)


def _arc_sums(profile: np.ndarray, n: int) -> np.ndarray:
    """Normalized arc integrals of a bin profile over the depth-``n`` arcs."""
    M = profile.shape[0]
    return profile.reshape(2**n, M >> n).sum(axis=1) / M


def b_functional(mu: MeasureModel, s: float, sigma: float = 2.0, N: int = 12, M: int = 2**14,
                 quad: QuadratureConfig | None = None) -> ConstantEstimate:
    """``B(mu) = sup_I |I|^-s int_I int_{Gamma(xi)} dmu / (1 - |z|)^2 dm(xi)``."""
    if not s > 0:
        raise ValueError(f"s must be positive, got {s}")
    _check_samples(M, N)
    profile = cone_profile(None, mu, sigma, -2.0, M, quad, aligned=True).values
    return sup_over_dyadic_arcs(lambda n: _arc_sums(profile, n) * 2.0 ** (n * s), N, vectorized=True)


def bergman_disk_constant(mu: MeasureModel, t: float, lam: float, lattice,
                          quad: QuadratureConfig | None = None) -> ConstantEstimate:
    """``sup_j mu(D(z_j, t)) / (1 - |z_j|)^lam`` over lattice points.

    ``refinement_delta`` compares with the lattice minus its outermost
    shell; ``dyadic_depth`` reports the number of shells.
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    z = lattice.as_complex()
    masses = bergman_disk_masses(mu, z, t, quad)
    u = 1.0 - np.abs(z)
    ratios = masses / u**lam
    k = int(np.argmax(ratios))
    value = float(ratios[k])
    inner = lattice.shell_index < lattice.shell_index.max()
    prev = float(np.max(ratios[inner])) if np.any(inner) else value
    p = lattice.points[k]
    return ConstantEstimate(
        value=value,
        argmax=f"z=({p.re:.12g}, {p.im:.12g})",
        dyadic_depth=int(lattice.shell_index.max()),
        refinement_delta=_relative_change(value, prev),
    )


# -- Cone functionals --------------------------------------------------------


def _test_abs(f: AnalyticTestFunction | None, z) -> np.ndarray:
    if f is None:
        return np.ones(np.shape(z))
    return f.abs(z)


def cone_integral(f, mu: MeasureModel, xi: BoundaryPoint, sigma: float = 2.0, gamma: float = 0.0,
                  quad: QuadratureConfig | None = None) -> float:
    """``int_{Gamma_sigma(xi)} |f(z)| (1 - |z|)^gamma dmu(z)``; ``f=None`` means ``f = 1``."""
    if f is None and isinstance(mu, RadialModel):
        return integrate(mu, LusinCone(xi, sigma), gamma, quad)
    nodes = discretize(mu, gamma, quad, "cone")
    if nodes.z.shape[0] == 0:
        return 0.0
    inside = LusinCone(xi, sigma).contains(nodes.z)
    return float(np.sum(nodes.weight[inside] * _test_abs(f, nodes.z[inside])))


def _check_samples(M: int, N: int | None = None):
    if M < 64 or M & (M - 1):
        raise ValueError(f"boundary sample count must be a power of two >= 64, got {M}")
    if N is not None and 2**N > M:
        raise ValueError(f"dyadic depth {N} needs at least 2**{N} boundary samples, got {M}")


def _node_arcs(nodes: Nodes, sigma: float, M: int, shift: float):
    half = np.minimum(aperture_half_width(1.0 - nodes.u, sigma), math.pi)
    scale = M / TWO_PI
    center = nodes.theta * scale + shift
    return center - half * scale, center + half * scale


def cone_profile(f, mu: MeasureModel, sigma: float = 2.0, gamma: float = 0.0, M: int = 2**14,
                 quad: QuadratureConfig | None = None, nodes: Nodes | None = None,
                 node_weight=None, aligned: bool = False) -> BoundaryFunctionSamples:
    """Bin-averaged ``xi -> int_{Gamma(xi)} |f| (1 - |z|)^gamma dmu`` on ``M`` samples.

    Bin ``j`` is centred at ``xi_j``; with ``aligned=True`` it is
    ``[j/M, (j+1)/M)`` instead, so that sums of bins give exact dyadic arc
    integrals.  ``nodes`` may be supplied to reuse a discretization;
    ``node_weight`` overrides the node weights (used for integrands that
    are not of the form ``|f| dmu``).
    """
    _check_samples(M)
    if nodes is None:
        nodes = discretize(mu, gamma, quad, "cone")
    if nodes.z.shape[0] == 0:
        return BoundaryFunctionSamples(np.zeros(M))
    w = nodes.weight if node_weight is None else node_weight
    if f is not None:
        w = w * f.abs(nodes.z)
    lo, hi = _node_arcs(nodes, sigma, M, 0.0 if aligned else 0.5)
    return BoundaryFunctionSamples(np.maximum(kernels.arc_accumulate(lo, hi, w, M), 0.0))


def _sup_nodes(quad: QuadratureConfig, f: AnalyticTestFunction) -> Nodes:
    cells = _cells(quad, 0.0)
    extra = np.array([0.0, f.w.z], dtype=complex)
    z = np.concatenate([cells.z, extra])
    u = np.concatenate([cells.u, 1.0 - np.abs(extra)])
    theta = np.mod(np.angle(z), TWO_PI)
    return Nodes(z, u, theta, np.ones(z.shape[0]))


def nontangential_sup(f: AnalyticTestFunction, xi: BoundaryPoint, sigma: float = 2.0, beta: float = 0.0,
                      quad: QuadratureConfig | None = None) -> float:
    """``max |f(z)| (1 - |z|)^beta`` over quadrature nodes (plus 0 and the pole) in the cone."""
    if beta < 0:
        raise ValueError(f"beta must be non-negative, got {beta}")
    nodes = _sup_nodes(quad or QuadratureConfig(), f)
    inside = LusinCone(xi, sigma).contains(nodes.z)
    if not np.any(inside):
        raise ValueError("no quadrature node lies in the cone")
    z = nodes.z[inside]
    return float(np.max(np.exp(f.log_abs(z) + beta * np.log(nodes.u[inside]))))


def nontangential_profile(f: AnalyticTestFunction, sigma: float = 2.0, beta: float = 0.0, M: int = 2**14,
                          quad: QuadratureConfig | None = None) -> BoundaryFunctionSamples:
    """``xi_j -> nontangential_sup(f, xi_j, sigma, beta)`` for all ``M`` samples."""
    _check_samples(M)
    nodes = _sup_nodes(quad or QuadratureConfig(), f)
    vals = np.exp(f.log_abs(nodes.z) + beta * np.log(nodes.u))
    lo, hi = _node_arcs(nodes, sigma, M, 0.0)
    return BoundaryFunctionSamples(kernels.arc_max(lo, hi, vals, M))


def weighted_sup_norm(f: AnalyticTestFunction, beta: float, quad: QuadratureConfig | None = None) -> float:
    """``sup_z |f(z)| (1 - |z|)^beta`` over quadrature nodes, 0 and the pole."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    nodes = _sup_nodes(quad or QuadratureConfig(), f)
    return float(np.max(np.exp(f.log_abs(nodes.z) + beta * np.log(nodes.u))))


# -- Weak-Lorentz norms ------------------------------------------------------


@dataclass(frozen=True)
class Direct:
    """Distribution-function definition of the weak ``L^q`` quasi-norm."""


@dataclass(frozen=True)
class ArcRep:
    """Arc-average representation with exponent ``0 < r < q`` up to depth ``N``."""

    r: float = 1.0
    N: int | None = None


def weak_lorentz_norm(f: BoundaryFunctionSamples, q: float, method=Direct()) -> float:
    """Weak ``L^{q, infinity}`` norm of sampled boundary data.

    ``Direct`` computes ``sup_lambda lambda m(|f| > lambda)^(1/q)`` exactly
    for the step function defined by the samples.  ``ArcRep(r, N)``
    computes ``(sup_I |I|^-(1 - r/q) int_I |f|^r dm)^(1/r)`` over dyadic
    arcs up to depth ``N`` (default ``log2 M``).
    """
    if not q > 1:
        raise ValueError(f"q must exceed 1, got {q}")
    v = f.values
    M = f.M
    if isinstance(method, Direct):
        s = np.sort(v)[::-1]
        return float(np.max(s * (np.arange(1, M + 1) / M) ** (1.0 / q)))
    if isinstance(method, ArcRep):
        r = method.r
        if not 0 < r < q:
            raise ValueError(f"ArcRep needs 0 < r < q, got r={r}, q={q}")
        N = method.N if method.N is not None else M.bit_length() - 1
        _check_samples(M, N)
        vr = v**r
        best = 0.0
        for n in range(N + 1):
            best = max(best, float(np.max(_arc_sums(vr, n))) * 2.0 ** (n * (1.0 - r / q)))
        return best ** (1.0 / r)
    raise TypeError(f"unknown weak-norm method {method!r}")


# -- Theorem conditions ------------------------------------------------------

THEOREM_IDS = ("T1b", "T1c", "T2", "T3", "T4")


class ParameterError(ValueError):
    """Parameters violate a theorem's hypotheses."""


def check_params(theorem: str, params: dict) -> dict:
    """Validate and complete parameters for a theorem, naming the violated hypothesis."""
    p = dict(params)
    sigma = p.setdefault("sigma", 2.0)
    if not sigma > 1:
        raise ParameterError(f"{theorem}: cone aperture requires sigma > 1, got {sigma}")
    if theorem.startswith("T1"):
        p.setdefault("alpha", 0.0)
        p.setdefault("q", 2.0)
        p.setdefault("t", 1.0)
        p.setdefault("beta", 5.0)
        if not p["q"] > 1:
            raise ParameterError(f"{theorem}: Theorem 1 requires q > 1, got q={p['q']}")
        if not p["alpha"] > -1:
            raise ParameterError(f"{theorem}: Theorem 1 requires alpha > -1, got alpha={p['alpha']}")
        if not p["t"] > 0:
            raise ParameterError(f"{theorem}: Theorem 1 requires t > 0, got t={p['t']}")
    elif theorem == "T2":
        p.setdefault("beta", 1.0)
        p.setdefault("q", 2.0)
        p.setdefault("t", p["beta"] + 1.5)
        p.setdefault("tau", 1.0)
        if not p["beta"] > 0:
            raise ParameterError(f"T2: Theorem 2 requires beta > 0, got beta={p['beta']}")
        if not p["q"] > 1:
            raise ParameterError(f"T2: Theorem 2 requires q > 1, got q={p['q']}")
        if not p["t"] > p["beta"] + 1:
            raise ParameterError(f"T2: Theorem 2 requires t > beta + 1, got t={p['t']}, beta={p['beta']}")
        if not p["tau"] > 0:
            raise ParameterError(f"T2: Bergman radius tau must be positive, got {p['tau']}")
    elif theorem == "T3":
        p.setdefault("q", 3.0)
        if "p" not in p and "r" not in p:
            p["p"] = 1.5
        if "r" not in p:
            inv = 1.0 / p["p"] - 1.0 / p["q"]
            p["r"] = 1.0 / inv if inv > 0 else math.inf
        if "p" not in p:
            p["p"] = 1.0 / (1.0 / p["q"] + 1.0 / p["r"])
        p.setdefault("beta", 1.0)
        p.setdefault("t", 0.0)
        for key in ("p", "q", "r"):
            if not (p[key] > 1 and math.isfinite(p[key])):
                raise ParameterError(f"T3: Theorem 3 requires q, r, p > 1 with 1/p = 1/q + 1/r, got {key}={p[key]}")
        if abs(1.0 / p["p"] - 1.0 / p["q"] - 1.0 / p["r"]) > 1e-12:
            raise ParameterError(f"T3: Theorem 3 requires 1/p = 1/q + 1/r, got p={p['p']}, q={p['q']}, r={p['r']}")
        if not p["beta"] > 0:
            raise ParameterError(f"T3: Theorem 3 requires beta > 0, got beta={p['beta']}")
        if not p["t"] > -1:
            raise ParameterError(f"T3: Theorem 3 requires t > -1, got t={p['t']}")
    elif theorem == "T4":
        p.setdefault("p", 1.2)
        p.setdefault("q", 2.0)
        p.setdefault("alpha", 0.5)
        p.setdefault("beta", 5.0)
        if not 0 < p["p"] < p["q"]:
            raise ParameterError(f"T4: Theorem 4 requires 0 < p < q, got p={p['p']}, q={p['q']}")
        if not p["alpha"] > 0:
            raise ParameterError(f"T4: Theorem 4 requires alpha > 0, got alpha={p['alpha']}")
    else:
        raise ParameterError(f"unknown theorem id {theorem!r}")
    return p


def _area_nodes(quad: QuadratureConfig, gamma: float) -> Nodes:
    """Cells of ``(1 - |z|)^gamma dm_2``, dropping an infinite tail ring."""
    return discretize(AlphaArea(0.0), gamma, quad, "compact")


def theorem_condition(mu: MeasureModel, theorem: str, params: dict | None = None,
                      quad: QuadratureConfig | None = None, lattice=None) -> ConstantEstimate:
    """Measure-side condition of a theorem as a constant estimate.

    ``T1b``: ``sup_z mu(D(z,t)) / (1-|z|)^(alpha+2)`` over a lattice.
    ``T1c``: ``sup_I mu(box I) / |I|^(alpha+2)``.
    ``T2``: weak ``L^q`` norm over ``xi`` of
    ``int_Gamma (1-|z|)^(t-3-beta) mu(D(z,tau)) dm_2(z)``.
    ``T3``: ``sup_I int_{box I} (1-|z|)^t dmu / |I|^(beta+1-1/r)``.
    ``T4``: ``sup_I |I|^-1 int_{box I} (mu(Delta_z)/(1-|z|)^(alpha p+1))^(q/(q-p)) dm_2/(1-|z|)``.
    """
    p = check_params(theorem, params or {})
    quad = quad or QuadratureConfig()
    N = int(p.get("N", 12))
    if theorem == "T1b":
        if lattice is None:
            from .lattice import build_lattice

            lattice = build_lattice(float(p.get("delta", 1.0)), float(p.get("rho_max", 1.0 - 2.0**-10)))
        return bergman_disk_constant(mu, p["t"], p["alpha"] + 2.0, lattice, quad)
    if theorem == "T1c":
        return carleson_constant(mu, p["alpha"] + 2.0, N, quad)
    if theorem == "T2":
        M = int(p.get("M", 2**14))
        nodes = _area_nodes(quad, p["t"] - 3.0 - p["beta"])
        masses = bergman_disk_masses(mu, nodes.z, p["tau"], quad)
        prof = cone_profile(None, None, p["sigma"], 0.0, M, nodes=nodes, node_weight=nodes.weight * masses)
        value = weak_lorentz_norm(prof, p["q"])
        return ConstantEstimate(value, "weak norm over boundary samples", 0, 0.0)
    if theorem == "T3":
        expo = p["beta"] + 1.0 - 1.0 / p["r"]
        tables = box_tables(mu, p["t"], N, quad)
        return sup_over_dyadic_arcs(lambda n: tables[n] * 2.0 ** (n * expo), N, vectorized=True)
    if theorem == "T4":
        quad = _quad_for_depth(quad, N)
        if isinstance(mu, Atomic):
            tables = _t4_atomic_tables(mu, p, N, 32 * quad.radial_sub)
            return sup_over_dyadic_arcs(lambda n: tables[n] * 2.0**n, N, vectorized=True)
        nodes = _area_nodes(quad, -1.0)
        masses = delta_box_masses(mu, nodes.z, quad)
        kappa = p["q"] / (p["q"] - p["p"])
        vals = nodes.weight * (masses / nodes.u ** (p["alpha"] * p["p"] + 1.0)) ** kappa
        tables = _node_box_tables(nodes, vals, N)
        return sup_over_dyadic_arcs(lambda n: tables[n] * 2.0**n, N, vectorized=True)
    raise ParameterError(f"unknown theorem id {theorem!r}")


def _t4_atomic_tables(mu: Atomic, p: dict, N: int, per_octave: int) -> list:
    """Box integrals of the Theorem 4 integrand for atoms, exact in angle.

    For fixed ``|z|`` the map ``theta -> mu(Delta_z)`` is piecewise constant
    with jumps at ``theta_j +- (1 - |z|)``, so each ring is integrated
    exactly over every dyadic arc.  Rings are split at the radial edges
    ``u_j / 2``, ``2 u_j`` of the atoms' regions and at the dyadic box
    heights, then ``per_octave`` rings per factor of two in ``1 - |z|``.
    """
    size = 2**N
    tables = [np.zeros(2**n) for n in range(N + 1)]
    if not mu.atoms:
        return tables
    z = mu.points
    ua = 1.0 - np.abs(z)
    tha = np.mod(np.angle(z), TWO_PI)
    wa = mu.weights
    kappa = p["q"] / (p["q"] - p["p"])
    power = p["alpha"] * p["p"] + 1.0
    lo, hi = float(np.min(ua) / 2), float(min(1.0, np.max(2 * ua)))
    breaks = np.concatenate([ua / 2, np.minimum(2 * ua, 1.0), 2.0 ** -np.arange(N + 1.0)])
    breaks = np.unique(breaks[(breaks >= lo) & (breaks <= hi)])
    edges = []
    for a, b in zip(breaks[:-1], breaks[1:]):
        n = max(1, math.ceil(per_octave * math.log2(b / a)))
        edges.append(np.geomspace(a, b, n + 1)[:-1])
    edges = np.concatenate(edges + [breaks[-1:]])
    u_in, u_out = edges[1:], edges[:-1]  # u_in is the larger value
    from .measures import radial_weight

    ring_w = radial_weight(u_in, u_out, -1.0) / TWO_PI  # mass per radian of dm_2 / (1-|z|)
    ends = TWO_PI * np.arange(size + 1) / size
    buckets = np.zeros((N + 1, size))
    for um, rw in zip(0.5 * (u_in + u_out), ring_w):
        act = (ua / 2 < um) & (um < 2 * ua)
        if not np.any(act):
            continue
        cuts = np.mod(np.concatenate([tha[act] - um, tha[act] + um]), TWO_PI)
        xs = np.unique(np.concatenate([[0.0, TWO_PI], cuts]))
        mids = 0.5 * (xs[:-1] + xs[1:])
        dist = np.abs(np.mod(mids[:, None] - tha[act][None, :] + math.pi, TWO_PI) - math.pi)
        mass = (dist < um) @ wa[act]
        g = (mass / um**power) ** kappa
        F = np.concatenate([[0.0], np.cumsum(g * np.diff(xs))])
        level = min(N, int(math.floor(-math.log2(um))) if um < 1 else 0)
        if 2.0**-level <= um:
            level -= 1
        if level < 0:
            continue
        buckets[level] += rw * np.diff(np.interp(ends, xs, F))
    acc = np.zeros(size)
    for n in range(N, -1, -1):
        acc = acc + buckets[n]
        tables[n] = acc.reshape(2**n, -1).sum(axis=1)
    return tables


def kernel_box_comparability(w_length: float, quad: QuadratureConfig | None = None) -> float:
    """Largest of ``|1 - conj(w) z| / (1 - |w|)`` and its reciprocal over box nodes.

    The box is the one over the arc of length ``w_length`` centred at angle
    0 and ``w = 1 - w_length`` is its center.
    """
    quad = quad or QuadratureConfig()
    cells = _cells(quad.at_least(depth=16), 0.0)
    half = math.pi * w_length
    ang = np.abs(np.mod(cells.theta + math.pi, TWO_PI) - math.pi)
    inside = (cells.u < w_length) & (ang <= half)
    z = cells.z[inside]
    w = 1.0 - w_length
    ratio = np.abs(1.0 - w * z) / (1.0 - w)
    return float(max(np.max(ratio), np.max(1.0 / ratio)))
