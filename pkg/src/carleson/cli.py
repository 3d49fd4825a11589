"""Command-line interface: ``carleson {geometry,lattice,functional,verify,sweep}``.

Every run writes a JSON report (see ``report_schema.json``) and prints a
short summary.  Exit status: 0 when everything was computed and no
verdict is Inconsistent, 2 when some verdict is Inconsistent, 1 on errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field, fields
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np
import yaml

from . import functionals as fn
from . import geometry as geo
from . import kernels
from .lattice import build_lattice, export_lattice, verify_lattice
from .measures import QuadratureConfig, integrate, make_measure
from .verifier import (
    INCONSISTENT,
    TheoremReport,
    kernel_sides,
    standard_family,
    equivalence_family,
    trend_slope,
    verify_equivalence_2_2,
    verify_lorentz_representation,
    verify_theorem,
)

SCHEMA_VERSION = "1.0"
OUTPUT_DIR_ENV = "CARLESON_OUTPUT_DIR"
COMMANDS = ("geometry", "lattice", "functional", "verify", "sweep")
PARAM_NAMES = ("q", "r", "p", "alpha", "beta", "t", "s", "sigma", "delta", "lam", "tau", "gamma", "gamma_f",
               "rho_max")
RESOLUTION_NAMES = ("N", "K", "M0", "M", "M_cap", "radial_sub")
FUNCTIONALS = (
    "integrate", "carleson_constant", "bergman_disk_constant", "a_functional", "b_functional",
    "cone_integral", "nontangential_sup", "weighted_sup_norm", "weak_lorentz_norm", "theorem_condition",
)
GEOMETRY_OPS = ("mobius", "distance", "bergman_disk", "contains", "aperture")


class UsageError(Exception):
    """Bad command line or configuration; exit status 1."""


@dataclass
class RunConfig:
    command: str = "verify"
    measure: str | None = None
    family: str | None = None
    theorem: str | None = None
    name: str | None = None
    op: str | None = None
    params: dict = field(default_factory=dict)
    resolution: dict = field(default_factory=dict)
    a: str | None = None
    z: str | None = None
    w: list = field(default_factory=list)
    region: str | None = None
    method: str = "direct"
    samples: int = 10_000
    export: str | None = None
    axis: str | None = None
    values: list = field(default_factory=list)
    target: str | None = None
    refine: bool = True
    output: str | None = None
    format: str = "report"
    seed: int = 0

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"command: expected one of {COMMANDS}, got {self.command!r}")
        if self.format not in ("report", "table"):
            raise UsageError(f"format: expected 'report' or 'table', got {self.format!r}")
        for key in self.params:
            if key not in PARAM_NAMES:
                raise UsageError(f"params: unknown parameter {key!r}")
        for key in self.resolution:
            if key not in RESOLUTION_NAMES:
                raise UsageError(f"resolution: unknown field {key!r}")
        try:
            self.quadrature()
        except ValueError as exc:
            raise UsageError(f"resolution: {exc}") from None
        M = self.boundary_samples()
        if M < 64 or M & (M - 1):
            raise UsageError(f"resolution.M: must be a power of two >= 64, got {M}")
        if self.command == "functional" and self.name not in FUNCTIONALS:
            raise UsageError(f"name: expected one of {FUNCTIONALS}, got {self.name!r}")
        if self.command == "geometry" and self.op not in GEOMETRY_OPS:
            raise UsageError(f"op: expected one of {GEOMETRY_OPS}, got {self.op!r}")
        if self.command == "verify":
            if self.theorem not in ("T1", "T2", "T3", "T4", "2.2", "2.3"):
                raise UsageError(f"theorem: expected T1..T4, 2.2 or 2.3, got {self.theorem!r}")
            if self.theorem in ("T1", "T2", "T3", "T4"):
                try:
                    fn.check_params(self.theorem, self.theorem_params())
                except fn.ParameterError as exc:
                    raise UsageError(str(exc)) from None
        if self.command == "sweep":
            if not self.axis:
                raise UsageError("axis: a sweep needs --axis")
            if not self.values:
                raise UsageError("values: a sweep needs at least one value")
        if self.family not in (None, "standard", "equivalence"):
            raise UsageError(f"family: expected 'standard' or 'equivalence', got {self.family!r}")

    def quadrature(self) -> QuadratureConfig:
        r = self.resolution
        base = QuadratureConfig()
        return QuadratureConfig(
            depth=int(r.get("K", base.depth)),
            base_angular=int(r.get("M0", base.base_angular)),
            angular_cap=int(r.get("M_cap", base.angular_cap)),
            radial_sub=int(r.get("radial_sub", base.radial_sub)),
        )

    def boundary_samples(self) -> int:
        return int(self.resolution.get("M", 2**14))

    def depth(self) -> int:
        return int(self.resolution.get("N", 12))

    def theorem_params(self) -> dict:
        keep = ("q", "r", "p", "alpha", "beta", "t", "sigma", "tau", "delta", "rho_max")
        return {k: float(v) for k, v in self.params.items() if k in keep}

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))


# -- Parsing -----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common_parser() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--config", help="YAML config file; flags override its fields")
    p.add_argument("--measure", help="measure spec: inline 'kind: params' or a YAML file")
    p.add_argument("--family", choices=("standard", "equivalence"), help="run over a built-in measure family")
    p.add_argument("--theorem", help="T1..T4, 2.2 or 2.3 (verify); T1b, T1c, T2..T4 (theorem_condition)")
    p.add_argument("--output", help="report path (default: $%s or the working directory)" % OUTPUT_DIR_ENV)
    p.add_argument("--format", choices=("report", "table"), help="report document or CSV table")
    p.add_argument("--seed", type=int, help="seed for sampled verification (default 0)")
    p.add_argument("--no-refine", dest="refine", action="store_const", const=False,
                   help="skip the refinement rerun of verifiers")
    for name in PARAM_NAMES:
        flag = "--lambda" if name == "lam" else "--" + name.replace("_", "-")
        p.add_argument(flag, dest=name, type=float)
    p.add_argument("--depth", "-N", dest="N", type=int, help="dyadic depth N")
    p.add_argument("--K", dest="K", type=int, help="radial layers of the grid")
    p.add_argument("--M0", dest="M0", type=int, help="base angular nodes")
    p.add_argument("--M", dest="M", type=int, help="boundary samples")
    p.add_argument("--M-cap", dest="M_cap", type=int, help="angular node cap")
    p.add_argument("--radial-sub", dest="radial_sub", type=int, help="rings per layer")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = _Parser(prog="carleson", description="Carleson-measure geometry, functionals and verifiers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("geometry", parents=[common], help="evaluate a geometric formula")
    g.add_argument("--op", choices=GEOMETRY_OPS, required=True)
    g.add_argument("--a", help="complex point, e.g. 0.5+0.1j")
    g.add_argument("--z", help="complex point")
    g.add_argument("--region", help="box:angle,length | cone:angle[,sigma] | disk:re,im,t | delta:re,im | whole")

    lt = sub.add_parser("lattice", parents=[common], help="build and verify a delta-lattice")
    lt.add_argument("--samples", type=int)
    lt.add_argument("--export", help="write lattice points to this file")

    f = sub.add_parser("functional", parents=[common], help="evaluate one functional")
    f.add_argument("--name", choices=FUNCTIONALS, required=True)
    f.add_argument("--region")
    f.add_argument("--w", help="kernel poles, comma separated complex values")
    f.add_argument("--z", help="boundary angle for cone functionals (radians)")
    f.add_argument("--method", choices=("direct", "arcrep"))

    v = sub.add_parser("verify", parents=[common], help="run a theorem verifier")
    v.add_argument("--w", help="trace poles for 2.3, comma separated")

    s = sub.add_parser("sweep", parents=[common], help="tabulate a functional or verifier along one axis")
    s.add_argument("--axis", required=True, help="parameter or resolution field, 'w' (pole) or 'k' (pole 1-2^-k)")
    s.add_argument("--values", required=True, help="comma list, or 'a..b' for an integer range")
    s.add_argument("--target", choices=("functional", "verify"))
    s.add_argument("--name", choices=FUNCTIONALS)
    return parser


def parse_values(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    if ".." in text and "," not in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    out = []
    for item in text.split(","):
        item = item.strip()
        if item:
            out.append(float(item))
    return out


def _complex_list(text) -> list:
    if text is None:
        return []
    if isinstance(text, (list, tuple)):
        return [complex(x) for x in text]
    return [complex(x.strip().replace(" ", "")) for x in str(text).split(",") if x.strip()]


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh) or {}
    except FileNotFoundError:
        raise UsageError(f"config: file {path} not found") from None
    except yaml.YAMLError as exc:
        raise UsageError(f"config: cannot parse {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config: {path} must hold a mapping")
    known = {f.name for f in fields(RunConfig)}
    for key in data:
        if key not in known:
            raise UsageError(f"config: unknown field {key!r}")
    return data


def config_from_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    data = load_config(ns.config) if ns.config else {}
    cfg = RunConfig(**{k: v for k, v in data.items()})
    cfg.params = dict(cfg.params or {})
    cfg.resolution = dict(cfg.resolution or {})
    cfg.command = ns.command
    for key in ("measure", "family", "theorem", "output", "format", "seed", "refine"):
        val = getattr(ns, key, None)
        if val is not None:
            setattr(cfg, key, val)
    for key in ("op", "a", "z", "region", "method", "samples", "export", "axis", "target", "name"):
        val = getattr(ns, key, None)
        if val is not None:
            setattr(cfg, key, val)
    if getattr(ns, "w", None) is not None:
        cfg.w = [str(c) for c in _complex_list(ns.w)]
    if getattr(ns, "values", None) is not None:
        cfg.values = parse_values(ns.values)
    for name in PARAM_NAMES:
        val = getattr(ns, name, None)
        if val is not None:
            cfg.params[name] = val
    for name in RESOLUTION_NAMES:
        val = getattr(ns, name, None)
        if val is not None:
            cfg.resolution[name] = val
    cfg.validate()
    return cfg


# -- Execution ---------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _value(name: str, value, **extra) -> dict:
    d = {"kind": "value", "name": name, "value": value}
    d.update(extra)
    return d


def _theorem_entry(rep: TheoremReport, measure_id: str | None = None, expected=None) -> dict:
    d = {"kind": "theorem_report"}
    d.update(rep.to_dict())
    if measure_id is not None:
        d["measure_id"] = measure_id
    d["expected_condition"] = expected
    return d


def _parse_region(text: str):
    if not text:
        raise UsageError("region: required for this operation")
    kind, _, rest = text.partition(":")
    nums = [float(x) for x in rest.split(",") if x.strip()] if rest else []
    try:
        if kind == "box":
            return geo.CarlesonBox(geo.Arc(nums[0], nums[1]))
        if kind == "cone":
            return geo.LusinCone(geo.BoundaryPoint(nums[0]), nums[1] if len(nums) > 1 else 2.0)
        if kind == "disk":
            return geo.BergmanDisk(geo.DiskPoint(nums[0], nums[1]), nums[2])
        if kind == "delta":
            return geo.DeltaBox(geo.DiskPoint(nums[0], nums[1]))
        if kind == "whole":
            return geo.WholeDisk()
    except IndexError:
        raise UsageError(f"region: missing numbers in {text!r}") from None
    raise UsageError(f"region: unknown kind {kind!r}")


def _point(text, name):
    if text is None:
        raise UsageError(f"{name}: required for this operation")
    try:
        return geo.DiskPoint.from_complex(complex(str(text).replace(" ", "")))
    except ValueError as exc:
        raise UsageError(f"{name}: {exc}") from None


def _measures(cfg: RunConfig):
    """``(id, measure, member-or-None)`` triples selected by the config."""
    if cfg.family:
        fam = standard_family() if cfg.family == "standard" else equivalence_family()
        return [(m.id, m.measure, m) for m in fam]
    if not cfg.measure:
        raise UsageError("measure: give --measure or --family")
    mu = make_measure(cfg.measure)
    return [(str(cfg.measure), mu, None)]


def run_geometry(cfg: RunConfig) -> list:
    P = cfg.params
    if cfg.op == "mobius":
        r = geo.mobius(_point(cfg.a, "a"), _point(cfg.z, "z"))
        return [_value("mobius", [r.re, r.im])]
    if cfg.op == "distance":
        return [_value("bergman_distance", geo.bergman_distance(_point(cfg.z, "z"), _point(cfg.a, "a")))]
    if cfg.op == "bergman_disk":
        d = geo.bergman_disk_euclidean(_point(cfg.a, "a"), P.get("t", 1.0))
        return [_value("bergman_disk", {"center": [d.center.re, d.center.im], "radius": d.radius})]
    if cfg.op == "contains":
        return [_value("contains", geo.region_contains(_parse_region(cfg.region), _point(cfg.z, "z")))]
    if cfg.op == "aperture":
        arc, meas = geo.aperture_arc(_point(cfg.z, "z"), P.get("sigma", 2.0))
        return [_value("aperture_arc", {"center_angle": arc.center_angle, "measure": meas})]
    raise UsageError(f"op: unknown {cfg.op!r}")


def run_lattice(cfg: RunConfig) -> list:
    lat = build_lattice(cfg.params.get("delta", 1.0), cfg.params.get("rho_max", 0.99))
    rep = verify_lattice(lat, cfg.samples, seed=cfg.seed)
    if cfg.export:
        export_lattice(lat, cfg.export)
    return [_value("lattice", rep.to_dict())]


def _estimate(name, est: fn.ConstantEstimate, measure_id=None) -> dict:
    extra = {"measure_id": measure_id} if measure_id else {}
    return _value(name, est.value, estimate=est.to_dict(), **extra)


def run_functional(cfg: RunConfig) -> list:
    P, quad, N, M = cfg.params, cfg.quadrature(), cfg.depth(), cfg.boundary_samples()
    name = cfg.name
    sigma = P.get("sigma", 2.0)
    if name in ("nontangential_sup", "weighted_sup_norm", "weak_lorentz_norm"):
        poles = _complex_list(cfg.w) or [0j]
        out = []
        for w in poles:
            f = fn.AnalyticTestFunction(geo.DiskPoint.from_complex(w), P.get("gamma_f", 1.0), 0.0)
            if name == "nontangential_sup":
                xi = geo.BoundaryPoint(float(cfg.z) if cfg.z else 0.0)
                val = fn.nontangential_sup(f, xi, sigma, P.get("beta", 0.0), quad)
            elif name == "weighted_sup_norm":
                val = fn.weighted_sup_norm(f, P.get("beta", 1.0), quad)
            else:
                trace = fn.kernel_boundary_trace(f.w, P.get("gamma", 0.5), M)
                method = fn.ArcRep(P.get("r", 1.0), cfg.resolution.get("N")) if cfg.method == "arcrep" else fn.Direct()
                val = fn.weak_lorentz_norm(trace, P.get("q", 2.0), method)
            out.append(_value(name, val, w=[w.real, w.imag]))
        return out
    out = []
    for mid, mu, _ in _measures(cfg):
        if name == "integrate":
            val = integrate(mu, _parse_region(cfg.region), P.get("gamma", 0.0), quad)
            out.append(_value(name, val, measure_id=mid))
        elif name == "carleson_constant":
            out.append(_estimate(name, fn.carleson_constant(mu, P.get("lam", 2.0), N, quad), mid))
        elif name == "a_functional":
            out.append(_estimate(name, fn.a_functional(mu, P.get("s", 0.5), N, quad), mid))
        elif name == "b_functional":
            out.append(_estimate(name, fn.b_functional(mu, P.get("s", 0.5), sigma, N, M, quad), mid))
        elif name == "bergman_disk_constant":
            lat = build_lattice(P.get("delta", 1.0), P.get("rho_max", 1.0 - 2.0**-10))
            est = fn.bergman_disk_constant(mu, P.get("t", 1.0), P.get("lam", 2.0), lat, quad)
            out.append(_estimate(name, est, mid))
        elif name == "cone_integral":
            xi = geo.BoundaryPoint(float(cfg.z) if cfg.z else 0.0)
            poles = _complex_list(cfg.w)
            f = None
            if poles:
                f = fn.AnalyticTestFunction(geo.DiskPoint.from_complex(poles[0]), P.get("gamma_f", 1.0),
                                            P.get("beta", 0.0))
            val = fn.cone_integral(f, mu, xi, sigma, P.get("gamma", 0.0), quad)
            out.append(_value(name, val, measure_id=mid))
        elif name == "theorem_condition":
            if cfg.theorem not in fn.THEOREM_IDS:
                raise UsageError(f"theorem: expected one of {fn.THEOREM_IDS}, got {cfg.theorem!r}")
            params = dict(cfg.theorem_params(), N=N)
            est = fn.theorem_condition(mu, cfg.theorem, params, quad)
            out.append(_estimate(name, est, mid))
        else:
            raise UsageError(f"name: unknown functional {name!r}")
    return out


def run_verify(cfg: RunConfig) -> list:
    quad, N, M = cfg.quadrature(), cfg.depth(), cfg.boundary_samples()
    P = cfg.params
    if cfg.theorem == "2.3":
        poles = _complex_list(cfg.w) or [1.0 - 2.0**-k for k in range(1, 11)]
        rep = verify_lorentz_representation(poles, P.get("gamma", 1.0 / P.get("q", 2.0)), P.get("q", 2.0),
                                            P.get("r", 1.0), M, cfg.resolution.get("N"))
        return [_theorem_entry(rep)]
    out = []
    for mid, mu, member in _measures(cfg):
        if cfg.theorem == "2.2":
            rep = verify_equivalence_2_2(mu, P.get("s", 0.5), P.get("sigma", 2.0), N, M, quad,
                                         refine=cfg.refine, measure_id=mid)
            out.append(_theorem_entry(rep, mid))
        else:
            params = cfg.theorem_params()
            rep = verify_theorem(cfg.theorem, mu, params, quad=quad, M=M, N=N, refine=cfg.refine, measure_id=mid)
            expected = member.expected(cfg.theorem, params) if member else None
            out.append(_theorem_entry(rep, mid, expected))
    return out


def _sweep_cfg(cfg: RunConfig, value) -> RunConfig:
    new = RunConfig(**{f.name: getattr(cfg, f.name) for f in fields(RunConfig)})
    new.params, new.resolution = dict(cfg.params), dict(cfg.resolution)
    if cfg.axis in RESOLUTION_NAMES:
        new.resolution[cfg.axis] = int(value)
    elif cfg.axis in PARAM_NAMES:
        new.params[cfg.axis] = float(value)
    else:
        raise UsageError(f"axis: unknown parameter {cfg.axis!r}")
    new.command = new.target or ("verify" if cfg.theorem else "functional")
    new.validate()
    return new


def run_sweep(cfg: RunConfig) -> tuple[list, str]:
    """Rows of ``(value, outputs...)``; returns report entries and CSV text."""
    rows, entries = [], []
    target = cfg.target or ("verify" if cfg.theorem else "functional")
    if cfg.axis in ("w", "k"):
        if cfg.theorem not in ("T1", "T2", "T3", "T4"):
            raise UsageError("axis: 'w'/'k' sweeps need --theorem T1..T4")
        quad, N, M = cfg.quadrature(), cfg.depth(), cfg.boundary_samples()
        for mid, mu, _ in _measures(cfg):
            for value in cfg.values:
                w = 1.0 - 2.0 ** -float(value) if cfg.axis == "k" else float(value)
                row = kernel_sides(cfg.theorem, mu, w, cfg.theorem_params(), quad, M, N, mid)
                rows.append({"measure_id": mid, cfg.axis: value, "lhs": row.lhs, "rhs": row.rhs, "ratio": row.ratio})
        header = ["measure_id", cfg.axis, "lhs", "rhs", "ratio"]
    else:
        for value in cfg.values:
            sub = _sweep_cfg(cfg, value)
            res = run_functional(sub) if target == "functional" else run_verify(sub)
            for r in res:
                if r["kind"] == "value":
                    est = r.get("estimate", {})
                    rows.append({"measure_id": r.get("measure_id", ""), cfg.axis: value, "value": r["value"],
                                 "refinement_delta": est.get("refinement_delta", "")})
                else:
                    s = r["summary"]
                    rows.append({"measure_id": r.get("measure_id", ""), cfg.axis: value, "verdict": r["verdict"],
                                 "max_ratio": s["max_ratio"], "trend_slope": s["trend_slope"]})
        header = list(rows[0].keys()) if rows else ["measure_id", cfg.axis]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(v) for k, v in row.items()})
    table = buf.getvalue()
    # growth along the axis, per measure
    for mid in dict.fromkeys(r["measure_id"] for r in rows):
        key = "value" if "value" in header else "ratio" if "ratio" in header else None
        if key is None:
            continue
        pts = [(float(r[cfg.axis]), r[key]) for r in rows if r["measure_id"] == mid]
        xs, ys = zip(*pts)
        slope = trend_slope(xs, ys) if all(isinstance(y, float) and y > 0 for y in ys) else math.nan
        entries.append(_value("sweep_slope", slope, measure_id=mid, axis=cfg.axis))
    return entries, table


def _csv_cell(v):
    if isinstance(v, float):
        return repr(v)
    return v


def _default_output(cfg: RunConfig, ext: str) -> Path:
    base = Path(os.environ.get(OUTPUT_DIR_ENV, "."))
    tag = cfg.theorem or cfg.name or cfg.op or ""
    stem = f"{cfg.command}-{tag}".rstrip("-").replace(".", "_")
    return base / f"{stem}.{ext}"


def load_schema() -> dict:
    return json.loads(resources.files("carleson").joinpath("report_schema.json").read_text())


def validate_report(report: dict) -> None:
    jsonschema.validate(report, load_schema())


def execute(cfg: RunConfig) -> tuple[dict, int]:
    """Run a validated config; returns the report document and exit status."""
    table = None
    if cfg.command == "geometry":
        results = run_geometry(cfg)
    elif cfg.command == "lattice":
        results = run_lattice(cfg)
    elif cfg.command == "functional":
        results = run_functional(cfg)
    elif cfg.command == "verify":
        results = run_verify(cfg)
    else:
        results, table = run_sweep(cfg)
    verdicts = [r["verdict"] for r in results if r.get("kind") == "theorem_report"]
    overall = None
    if verdicts:
        if INCONSISTENT in verdicts:
            overall = INCONSISTENT
        elif all(v == "Consistent" for v in verdicts):
            overall = "Consistent"
        else:
            overall = "Inconclusive"
    status = 2 if overall == INCONSISTENT else 0
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": cfg.command,
        "backend": kernels.BACKEND_NAME,
        "config": cfg.to_dict(),
        "results": _jsonable(results),
        "verdict": overall,
        "status": status,
        "table": table,
    }
    validate_report(report)
    return report, status


def _summary_lines(report: dict) -> list:
    lines = []
    for r in report["results"]:
        if r["kind"] == "theorem_report":
            s = r["summary"]
            who = r.get("measure_id") or r["theorem"]
            lines.append(f"{r['theorem']} {who}: {r['verdict']} (max ratio {_fmt(s['max_ratio'])}, "
                         f"slope {_fmt(s['trend_slope'])})")
        else:
            who = f" [{r['measure_id']}]" if r.get("measure_id") else ""
            lines.append(f"{r['name']}{who}: {_fmt(r['value'])}")
    if report["verdict"]:
        lines.append(f"verdict: {report['verdict']}")
    return lines


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.10g}"
    return json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else str(v)


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
        report, status = execute(cfg)
        if cfg.format == "table" and report["table"] is not None:
            path = Path(cfg.output) if cfg.output else _default_output(cfg, "csv")
            text = report["table"]
        else:
            path = Path(cfg.output) if cfg.output else _default_output(cfg, "json")
            text = dumps_report(report)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        for line in _summary_lines(report):
            print(line)
        if report["table"] is not None and cfg.format != "table":
            sys.stdout.write(report["table"])
        print(f"wrote {path}")
        return status
    except (UsageError, ValueError, FileNotFoundError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
