"""Numerical checks of the embedding theorems on families of measures.

Each check evaluates both sides of an inequality along a sweep of kernel
test functions whose pole approaches the circle (``w = 1 - 2^-k``),
repeats the sweep on a refined grid, and turns the ratios into a verdict:

* ``Consistent``: the log2 ratio has least-squares slope ``<= 0.05`` in
  ``k`` and the maximal ratio moves by at most 20% under refinement;
* ``Inconsistent``: slope ``> 0.2`` with ratios increasing along the sweep;
* ``Inconclusive``: anything else.

Slopes are fitted on the approach window, the second half of the sweep
(``k = 6..10`` by default): a ratio that rises for small ``k`` and then
saturates is bounded, and only its tail says anything about growth.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .functionals import (
    ArcRep,
    AnalyticTestFunction,
    ConstantEstimate,
    Direct,
    _area_nodes,
    _arc_sums,
    _node_box_tables,
    _quad_for_depth,
    a_functional,
    b_functional,
    check_params,
    cone_profile,
    kernel_boundary_trace,
    nontangential_profile,
    theorem_condition,
    weak_lorentz_norm,
    weighted_sup_norm,
)
from .geometry import DiskPoint
from .measures import (
    AlphaArea,
    Atomic,
    DivergenceError,
    MeasureModel,
    QuadratureConfig,
    RadialPower,
    discretize,
)

CONSISTENT = "Consistent"
INCONSISTENT = "Inconsistent"
INCONCLUSIVE = "Inconclusive"

SLOPE_BOUNDED = 0.05
SLOPE_DIVERGING = 0.2
STABILITY = 0.2
DEFAULT_SWEEP = tuple(range(1, 11))


@dataclass
class InstanceRow:
    measure_id: str
    function_id: str
    lhs: float
    rhs: float
    ratio: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class TheoremReport:
    theorem: str
    params: dict
    rows: list
    summary: dict
    verdict: str
    resolution: dict
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": dict(self.params),
            "rows": [r.to_dict() for r in self.rows],
            "summary": dict(self.summary),
            "verdict": self.verdict,
            "resolution": dict(self.resolution),
            "notes": list(self.notes),
        }


# -- Measure families --------------------------------------------------------


@dataclass(frozen=True)
class FamilyMember:
    """A measure with the data needed to classify it analytically.

    ``radial_exponent`` is the density exponent ``e`` of ``(1-|z|)^e dm_2``
    (ignoring any cutoff); ``carleson_order`` is the largest ``lambda``
    with ``mu(box I) <= C |I|^lambda``.
    """

    id: str
    measure: MeasureModel
    carleson_order: float
    provenance: str
    radial_exponent: float | None = None

    def is_carleson(self, lam: float) -> bool:
        return lam <= self.carleson_order + 1e-12

    def expected(self, theorem: str, params: dict | None = None) -> bool:
        """Whether the theorem's measure condition holds (analytically)."""
        p = check_params(theorem, params or {})
        if theorem.startswith("T1"):
            return self.is_carleson(p["alpha"] + 2.0)
        e = self.radial_exponent
        if e is None:
            return True
        if theorem == "T2":
            return e > p["beta"] - p["t"] - 1.0
        if theorem == "T3":
            return e >= p["beta"] - 1.0 - 1.0 / p["r"] - p["t"] - 1e-12
        if theorem == "T4":
            return e > p["alpha"] * p["p"] - 1.0
        raise ValueError(f"unknown theorem id {theorem!r}")


@dataclass(frozen=True)
class MeasureFamily:
    name: str
    members: tuple

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def get(self, member_id: str) -> FamilyMember:
        for m in self.members:
            if m.id == member_id:
                return m
        raise KeyError(f"no member {member_id!r} in family {self.name!r}")


def standard_family() -> MeasureFamily:
    chasing = tuple((DiskPoint(1.0 - 2.0**-k, 0.0), 2.0 ** (-3 * k)) for k in range(1, 9))
    members = (
        FamilyMember("single_atom", Atomic(((DiskPoint(0.9, 0.0), 1.0),)), math.inf,
                     "one atom: mu(box I) = 0 for |I| <= 0.1"),
        FamilyMember("double_atom",
                     Atomic(((DiskPoint(0.5, 0.0), 1.0),
                             (DiskPoint.from_polar(0.8, 2.0), 0.5))), math.inf,
                     "two atoms away from the circle"),
        FamilyMember("chasing_atoms", Atomic(chasing), 3.0,
                     "atoms 2^-3k at 1-2^-k: mu(box I) ~ |I|^3"),
        FamilyMember("alpha_area_0", AlphaArea(0.0), 2.0, "area: mu(box I) ~ |I|^2", 0.0),
        FamilyMember("alpha_area_1", AlphaArea(1.0), 3.0, "mu(box I) ~ |I|^3", 1.0),
        FamilyMember("radial_power_-0.5", RadialPower(-0.5, 1.0 - 2.0**-20), 1.5,
                     "mu(box I) ~ |I|^1.5: not 2-Carleson (cutoff ignored)", -0.5),
        FamilyMember("radial_power_1", RadialPower(1.0), 3.0, "mu(box I) ~ |I|^3", 1.0),
    )
    return MeasureFamily("standard", members)


def equivalence_family() -> MeasureFamily:
    """The six members used for the A/B comparison."""
    return MeasureFamily("equivalence", standard_family().members[:6])


# -- Sweep machinery ---------------------------------------------------------


def approach_window(n: int) -> slice:
    """Indices of the second half of a sweep of length ``n``."""
    return slice(n // 2 if n >= 4 else 0, n)


def trend_slope(ks: Sequence[float], values: Sequence[float]) -> float:
    """Least-squares slope of ``log2(values)`` against ``ks``; 0 for all-zero data."""
    v = np.asarray(values, dtype=float)
    if v.shape[0] < 2:
        return 0.0
    if np.all(v == 0):
        return 0.0
    if np.any(v <= 0) or not np.all(np.isfinite(v)):
        return math.nan
    return float(np.polyfit(np.asarray(ks, dtype=float), np.log2(v), 1)[0])


def _increasing(values, tol: float = 0.01) -> bool:
    v = np.asarray(values, dtype=float)
    return bool(np.all(v[1:] >= v[:-1] * (1.0 - tol)))


def classify(ks, ratios, refined_ratios=None) -> tuple[str, dict]:
    ratios = np.asarray(ratios, dtype=float)
    ks = np.asarray(ks, dtype=float)
    win = approach_window(ratios.shape[0])
    slope = trend_slope(ks[win], ratios[win])
    max_ratio = float(np.max(ratios))
    summary = {
        "max_ratio": max_ratio,
        "min_ratio": float(np.min(ratios)),
        "trend_slope": slope,
    }
    change = 0.0
    if refined_ratios is not None:
        refined_max = float(np.max(refined_ratios))
        change = abs(refined_max - max_ratio) / max_ratio if max_ratio > 0 else (0.0 if refined_max == 0 else math.inf)
        summary["refined_max_ratio"] = refined_max
        summary["refinement_change"] = change
        summary["refined_trend_slope"] = trend_slope(ks[win], np.asarray(refined_ratios)[win])
    if np.all(ratios == 0):
        return CONSISTENT, summary
    if not math.isfinite(slope):
        return INCONCLUSIVE, summary
    if slope > SLOPE_DIVERGING and _increasing(ratios[win]):
        return INCONSISTENT, summary
    if slope <= SLOPE_BOUNDED and math.isfinite(max_ratio) and change <= STABILITY:
        return CONSISTENT, summary
    return INCONCLUSIVE, summary


def sweep_points(ks: Sequence[int]) -> list:
    return [DiskPoint(1.0 - 2.0**-k, 0.0) for k in ks]


def _measure_id(mu) -> str:
    return mu.describe() if hasattr(mu, "describe") else repr(mu)


def _resolution(quad: QuadratureConfig, M: int, N: int) -> dict:
    return {
        "depth": quad.depth,
        "base_angular": quad.base_angular,
        "angular_cap": quad.angular_cap,
        "radial_sub": quad.radial_sub,
        "boundary_samples": M,
        "dyadic_depth": N,
    }


def _refine(quad: QuadratureConfig, M: int):
    return quad.refined(), 2 * M


# -- Side evaluators (both sides of each theorem for one test function) ------


def _test_function(theorem: str, p: dict, w: DiskPoint) -> AnalyticTestFunction:
    if theorem == "T1":
        return AnalyticTestFunction(w, p["beta"] + p["alpha"] + 1.0 + 1.0 / p["q"], p["beta"])
    if theorem == "T2":
        return AnalyticTestFunction(w, p["beta"], 0.0)
    if theorem == "T3":
        return AnalyticTestFunction(w, p["beta"] + 1.0 / p["q"], 0.0)
    if theorem == "T4":
        return AnalyticTestFunction(w, p["beta"] + p["alpha"] + 1.0 / p["q"], p["beta"])
    raise ValueError(f"unknown theorem id {theorem!r}")


def _lhs(theorem, p, mu, f, quad, M, N):
    if theorem == "T1":
        return weak_lorentz_norm(cone_profile(f, mu, p["sigma"], -1.0, M, quad), p["q"])
    if theorem == "T2":
        return weak_lorentz_norm(cone_profile(f, mu, p["sigma"], p["t"] - 1.0, M, quad), p["q"])
    if theorem == "T3":
        nodes = discretize(mu, p["t"], _quad_for_depth(quad, N), "box")
        tables = _node_box_tables(nodes, nodes.weight * f.abs(nodes.z), N)
        e = 1.0 - 1.0 / p["p"]
        return max(float(np.max(tables[n])) * 2.0 ** (n * e) for n in range(N + 1))
    if theorem == "T4":
        nodes = discretize(mu, -1.0, quad, "cone")
        prof = cone_profile(None, None, p["sigma"], 0.0, M, nodes=nodes,
                            node_weight=nodes.weight * f.abs(nodes.z) ** p["p"], aligned=True).values
        e = 1.0 - p["p"] / p["q"]
        return max(float(np.max(_arc_sums(prof, n))) * 2.0 ** (n * e) for n in range(N + 1))
    raise ValueError(theorem)


def _rhs(theorem, p, f, quad, M, N):
    if theorem == "T1":
        return weak_lorentz_norm(cone_profile(f, AlphaArea(p["alpha"]), p["sigma"], -1.0, M, quad), p["q"])
    if theorem == "T2":
        return weighted_sup_norm(f, p["beta"], quad)
    if theorem == "T3":
        prof = nontangential_profile(f, p["sigma"], p["beta"], M, quad).values
        e = 1.0 - 1.0 / p["q"]
        return max(float(np.max(_arc_sums(prof, n))) * 2.0 ** (n * e) for n in range(N + 1))
    if theorem == "T4":
        nodes = _area_nodes(quad, p["alpha"] * p["q"] - 1.0)
        return float(np.sum(nodes.weight * f.abs(nodes.z) ** p["q"])) ** (1.0 / p["q"])
    raise ValueError(theorem)


_RHS_CACHE: dict = {}


def _cached_rhs(theorem, p, f, quad, M, N):
    key = (theorem, tuple(sorted((k, v) for k, v in p.items() if not isinstance(v, (list, dict)))),
           f, quad, M, N)
    if key not in _RHS_CACHE:
        if len(_RHS_CACHE) > 512:
            _RHS_CACHE.clear()
        _RHS_CACHE[key] = _rhs(theorem, p, f, quad, M, N)
    return _RHS_CACHE[key]


def _row(theorem, p, mu, w, quad, M, N, measure_id) -> InstanceRow:
    f = _test_function(theorem, p, w)
    lhs = _lhs(theorem, p, mu, f, quad, M, N)
    rhs = _cached_rhs(theorem, p, f, quad, M, N)
    ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else math.inf)
    return InstanceRow(measure_id, f.describe(), lhs, rhs, ratio)


def _sweep_rows(theorem, p, mu, ks, quad, M, N, measure_id):
    return [_row(theorem, p, mu, w, quad, M, N, measure_id) for w in sweep_points(ks)]


def kernel_sides(theorem: str, mu: MeasureModel, w, params: dict | None = None,
                 quad: QuadratureConfig | None = None, M: int = 2**14, N: int = 12,
                 measure_id: str | None = None) -> InstanceRow:
    """Both sides of a theorem's norm inequality for the kernel with pole ``w``."""
    if theorem not in ("T1", "T2", "T3", "T4"):
        raise ValueError(f"unknown theorem id {theorem!r}; expected T1..T4")
    p = check_params(theorem, params or {})
    w = w if isinstance(w, DiskPoint) else DiskPoint.from_complex(w)
    return _row(theorem, p, mu, w, quad or QuadratureConfig(), M, N, measure_id or _measure_id(mu))


def _condition_entry(est: ConstantEstimate, refined: ConstantEstimate | None) -> dict:
    d = est.to_dict()
    if refined is not None:
        d["refined_value"] = refined.value
        base = max(abs(est.value), abs(refined.value))
        d["refinement_change"] = abs(refined.value - est.value) / base if base > 0 else 0.0
    return d


def verify_theorem(theorem: str, mu: MeasureModel, params: dict | None = None,
                   ks: Sequence[int] = DEFAULT_SWEEP, quad: QuadratureConfig | None = None,
                   M: int = 2**14, N: int = 12, refine: bool = True,
                   measure_id: str | None = None, lattice=None) -> TheoremReport:
    """Kernel-sweep test of one theorem for one measure.

    ``theorem`` is ``T1`` .. ``T4``.  The report rows hold both sides of
    the norm inequality for each test function; the summary holds the
    measure-side condition(s), and for ``T1`` the ratio of the Bergman-disk
    and Carleson-box constants.
    """
    if theorem not in ("T1", "T2", "T3", "T4"):
        raise ValueError(f"unknown theorem id {theorem!r}; expected T1..T4")
    p = check_params(theorem, params or {})
    p.setdefault("N", N)
    quad = quad or QuadratureConfig()
    measure_id = measure_id or _measure_id(mu)
    notes = []
    if theorem != "T1":
        notes.append("the converse direction is tested on the kernel test-function family only; "
                     "Consistent is not an equivalence certificate")
    rows = _sweep_rows(theorem, p, mu, ks, quad, M, N, measure_id)
    ratios = [r.ratio for r in rows]
    refined_ratios = None
    rquad, rM = _refine(quad, M)
    if refine:
        refined_ratios = [r.ratio for r in _sweep_rows(theorem, p, mu, ks, rquad, rM, N, measure_id)]
    verdict, summary = classify(ks, ratios, refined_ratios)
    summary["sweep_k"] = list(ks)

    conditions = {}
    ids = ("T1b", "T1c") if theorem == "T1" else (theorem,)
    for cid in ids:
        est = theorem_condition(mu, cid, p, quad, lattice)
        ref = theorem_condition(mu, cid, p, rquad, lattice) if refine and cid != "T1b" else None
        conditions[cid] = _condition_entry(est, ref)
    if theorem == "T1":
        b, c = conditions["T1b"]["value"], conditions["T1c"]["value"]
        conditions["b_over_c"] = b / c if c > 0 else (1.0 if b == 0 else math.inf)
        depths = range(max(N - 4, 1), N + 1)
        conditions["T1c_depth_slope"] = trend_slope(
            depths, [theorem_condition(mu, "T1c", dict(p, N=n), quad).value for n in depths]
        )
    summary["conditions"] = conditions
    res = _resolution(quad, M, N)
    res["refined"] = _resolution(rquad, rM, N) if refine else None
    return TheoremReport(theorem, _jsonable_params(p), rows, summary, verdict, res, notes)


def _jsonable_params(p: dict) -> dict:
    return {k: (float(v) if isinstance(v, (int, float)) and not isinstance(v, bool) else v)
            for k, v in sorted(p.items())}


# -- Relation (2.2) ----------------------------------------------------------


def _with_cutoff(mu, quad: QuadratureConfig):
    cutoff = 1.0 - 2.0**-quad.depth
    if isinstance(mu, AlphaArea) and mu.cutoff is None:
        return AlphaArea(mu.alpha, cutoff), cutoff
    if isinstance(mu, RadialPower) and mu.cutoff is None:
        return RadialPower(mu.exponent, cutoff), cutoff
    return mu, None


def _ab(mu, s, sigma, N, M, quad):
    return a_functional(mu, s, N, quad), b_functional(mu, s, sigma, N, M, quad)


def verify_equivalence_2_2(mu: MeasureModel, s: float = 0.5, sigma: float = 2.0, N: int = 12,
                           M: int = 2**14, quad: QuadratureConfig | None = None,
                           refine: bool = True, measure_id: str | None = None) -> TheoremReport:
    """Compare ``A(mu)`` (box integrals) and ``B(mu)`` (cone integrals).

    Densities whose ``A``/``B`` integrals diverge at the circle are
    truncated at ``|z| < 1 - 2^-K`` with ``K`` the base grid depth, and the
    truncation is recorded in the notes.  ``B / A`` within
    ``[1e-2, 1e2]`` and stable under refinement is reported Consistent.
    The equivalence is claimed for ``0 < s < 1`` only; larger ``s`` is
    accepted for the one-sided bound ``A <= C B`` alone.
    """
    if not s > 0:
        raise ValueError(f"s must be positive, got {s}")
    quad = quad or QuadratureConfig()
    measure_id = measure_id or _measure_id(mu)
    notes = []
    try:
        A, B = _ab(mu, s, sigma, N, M, quad)
        used = mu
    except DivergenceError as exc:
        used, cutoff = _with_cutoff(mu, quad)
        if cutoff is None:
            raise
        notes.append(f"{measure_id}: {exc}; truncated at |z| < {cutoff!r}")
        A, B = _ab(used, s, sigma, N, M, quad)
    ratio = B.value / A.value if A.value > 0 else (1.0 if B.value == 0 else math.inf)
    rquad, rM = _refine(quad, M)
    summary = {"A": A.to_dict(), "B": B.to_dict(), "ratio": ratio, "A_over_B": 1.0 / ratio if ratio > 0 else math.inf}
    change = 0.0
    if refine:
        rA, rB = _ab(used, s, sigma, N, rM, rquad)
        rratio = rB.value / rA.value if rA.value > 0 else (1.0 if rB.value == 0 else math.inf)
        change = abs(rratio - ratio) / ratio if ratio > 0 and math.isfinite(ratio) else 0.0
        summary["refined_ratio"] = rratio
        summary["refinement_change"] = change
    summary["max_ratio"] = summary["min_ratio"] = ratio
    summary["trend_slope"] = 0.0
    equivalence = 0 < s < 1
    if not equivalence:
        notes.append(f"s={s:g} is outside (0, 1): only the one-sided bound A <= C B is tested")
        bounded = summary["A_over_B"] <= 1e2
    else:
        bounded = 1e-2 <= ratio <= 1e2
    if bounded and change <= STABILITY:
        verdict = CONSISTENT
    elif not bounded:
        verdict = INCONSISTENT
    else:
        verdict = INCONCLUSIVE
    rows = [InstanceRow(measure_id, "unit", A.value, B.value, ratio)]
    res = _resolution(quad, M, N)
    res["refined"] = _resolution(rquad, rM, N) if refine else None
    return TheoremReport("2.2", {"s": float(s), "sigma": float(sigma)}, rows, summary, verdict, res, notes)


# -- Relations (2.3)/(2.4) ---------------------------------------------------


def verify_lorentz_representation(w_list: Sequence, gamma: float, q: float = 2.0, r: float = 1.0,
                                  M: int = 2**14, N: int | None = None) -> TheoremReport:
    """Direct vs arc-average weak norms of kernel traces ``|1 - xi conj(w)|^-gamma``.

    The trend slope is taken against ``k = -log2(1 - |w|)`` (``k = 0`` for
    ``w = 0``).  Bounded Direct norms with method ratio in ``[1/8, 8]`` are
    Consistent; Direct norms growing with slope ``> 0.2`` are Inconsistent
    (the trace is not uniformly in weak ``L^q``).
    """
    if not q > 1:
        raise ValueError(f"q must exceed 1, got {q}")
    if not 0 < r < q:
        raise ValueError(f"need 0 < r < q, got r={r}, q={q}")
    rows, ks, direct = [], [], []
    for w in w_list:
        w = w if isinstance(w, DiskPoint) else DiskPoint.from_complex(w)
        trace = kernel_boundary_trace(w, gamma, M)
        d = weak_lorentz_norm(trace, q, Direct())
        a = weak_lorentz_norm(trace, q, ArcRep(r, N))
        rows.append(InstanceRow(f"trace(w={w.re:.12g}{w.im:+.12g}i, gamma={gamma:g})", "boundary", d, a, d / a))
        ks.append(-math.log2(1.0 - w.rho) if w.rho > 0 else 0.0)
        direct.append(d)
    method_ratios = [row.ratio for row in rows]
    ks, direct = np.asarray(ks), np.asarray(direct)
    win = approach_window(len(rows))
    slope = trend_slope(ks[win], direct[win])
    summary = {
        "max_ratio": float(max(method_ratios)),
        "min_ratio": float(min(method_ratios)),
        "trend_slope": slope,
        "max_direct": float(np.max(direct)),
    }
    in_band = all(1 / 8 <= x <= 8 for x in method_ratios)
    if slope > SLOPE_DIVERGING and _increasing(direct[win]):
        verdict = INCONSISTENT
    elif in_band and slope <= SLOPE_BOUNDED:
        verdict = CONSISTENT
    else:
        verdict = INCONCLUSIVE
    params = {"gamma": float(gamma), "q": float(q), "r": float(r)}
    res = {"boundary_samples": M, "dyadic_depth": N if N is not None else M.bit_length() - 1}
    return TheoremReport("2.3", params, rows, summary, verdict, res, [])
