"""Batch front-end: parse a config, dispatch verification suites, emit reports.

Command shape:

    bscd <suite|all> --config path.json [--tol NAME=V] [--out path]
         [--format json|csv] [...suite options]

Exit codes: 0 all pass, 1 any fail, 2 config error, 3 inconclusive (stability
could not be decided near the boundary).  BSCD_THREADS caps how many suites
run concurrently; results are assembled in suite-name order either way, and
identical configs produce byte-identical reports apart from wall times.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import cd_kernel, measure, parametric, schur_cohn, subspaces
from .errors import (
    BscdError,
    ConfigInvalid,
    InconclusiveNearBoundary,
    IoFailure,
)
from .poly import BivariateLaurentPoly, DegreePair

SUITE_ORDER = (
    "stability",
    "moments",
    "schur-cohn",
    "cd-kernel",
    "verify-orthogonality",
    "verify-cd",
    "verify-kernel",
    "parametric",
)

DEFAULT_TOLERANCES = {
    "stability": 1.0,
    "orthogonality": 1e-8,
    "identity": 1e-9,
    "cross-path": 1e-10,
    "moments": 1e-11,
}

SUITE_TOLERANCE_NAME = {
    "stability": "stability",
    "moments": "cross-path",
    "schur-cohn": "orthogonality",
    "cd-kernel": "cross-path",
    "verify-orthogonality": "orthogonality",
    "verify-cd": "identity",
    "verify-kernel": "orthogonality",
    "parametric": "identity",
}

CONFIG_KEYS = {
    "polynomial",
    "suites",
    "tolerances",
    "window",
    "margin",
    "shift_max",
    "theta_grid",
    "seed",
    "method",
    "j",
    "k_max",
    "output",
    "format",
}


@dataclass
class RunConfig:
    polynomial: BivariateLaurentPoly
    deg: DegreePair
    suites: list[str]
    tolerances: dict[str, float]
    window: tuple[int, int]
    margin: int = 4
    shift_max: int = 2
    theta_grid: int = 32
    seed: int = 0
    method: str = "grid"
    j_index: int | None = None
    k_max: int | None = None
    output: str | None = None
    format: str = "json"


@dataclass
class SuiteReport:
    suite: str
    status: str
    max_violation: float
    tolerance: float
    details: dict = field(default_factory=dict)
    wall_time: float = 0.0


def default_window(deg: DegreePair, margin: int, shift_max: int) -> tuple[int, int]:
    n, m = deg
    return (
        max(3 * n + margin + shift_max, n + 2 * margin),
        max(2 * m + margin, m + 2 * margin),
    )


def load_config(path: str, overrides: dict | None = None) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigInvalid(f"cannot read config {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigInvalid("config must be a JSON object")
    unknown = set(doc) - CONFIG_KEYS
    if unknown:
        raise ConfigInvalid(f"unknown config keys: {sorted(unknown)}")
    if "polynomial" not in doc:
        raise ConfigInvalid("config needs a 'polynomial' entry")
    overrides = overrides or {}
    merged = dict(doc)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    try:
        poly, deg = BivariateLaurentPoly.from_json_dict(merged["polynomial"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigInvalid(f"bad polynomial: {exc}") from exc
    if poly.is_zero:
        raise ConfigInvalid("polynomial must be nonzero")

    suites = merged.get("suites", list(SUITE_ORDER))
    if not isinstance(suites, list) or not all(isinstance(s, str) for s in suites):
        raise ConfigInvalid("'suites' must be a list of names")
    bad = [s for s in suites if s not in SUITE_ORDER]
    if bad:
        raise ConfigInvalid(f"unknown suites: {bad}")

    tolerances = dict(DEFAULT_TOLERANCES)
    for name, value in dict(merged.get("tolerances", {})).items():
        if name not in tolerances:
            raise ConfigInvalid(f"unknown tolerance name: {name}")
        value = float(value)
        if value <= 0:
            raise ConfigInvalid(f"tolerance {name} must be positive")
        tolerances[name] = value

    margin = int(merged.get("margin", 4))
    shift_max = int(merged.get("shift_max", 2))
    if margin < 0 or shift_max < 0:
        raise ConfigInvalid("margin and shift_max must be nonnegative")
    window = merged.get("window")
    if window is None:
        window = default_window(deg, margin, shift_max)
    else:
        window = (int(window[0]), int(window[1]))
        if window[0] < 0 or window[1] < 0:
            raise ConfigInvalid("window bounds must be nonnegative")
    fmt = merged.get("format", "json")
    if fmt not in ("json", "csv"):
        raise ConfigInvalid(f"unknown format: {fmt}")
    method = merged.get("method", "grid")
    if method not in ("grid", "series"):
        raise ConfigInvalid(f"unknown moment method: {method}")
    theta_grid = int(merged.get("theta_grid", 32))
    if theta_grid < 1:
        raise ConfigInvalid("theta_grid must be positive")
    j_index = merged.get("j")
    k_max = merged.get("k_max")
    return RunConfig(
        polynomial=poly,
        deg=deg,
        suites=list(suites),
        tolerances=tolerances,
        window=window,
        margin=margin,
        shift_max=shift_max,
        theta_grid=theta_grid,
        seed=int(merged.get("seed", 0)),
        method=method,
        j_index=None if j_index is None else int(j_index),
        k_max=None if k_max is None else int(k_max),
        output=merged.get("output"),
        format=fmt,
    )


# ----------------------------------------------------------------------
# Shared artifacts
# ----------------------------------------------------------------------


class Artifacts:
    """Lazily built objects shared between suites of one run."""

    def __init__(self, config: RunConfig):
        self.config = config
        self._cache: dict[str, object] = {}

    def stability(self):
        if "stability" not in self._cache:
            self._cache["stability"] = measure.check_stability(
                self.config.polynomial, self.config.deg
            )
        return self._cache["stability"]

    def moments(self):
        if "moments" not in self._cache:
            self._cache["moments"] = measure.moments_from_grid(
                self.config.polynomial,
                self.config.window,
                self.config.tolerances["moments"],
            )
        return self._cache["moments"]

    def matrix(self):
        if "matrix" not in self._cache:
            self._cache["matrix"] = schur_cohn.schur_cohn_matrix(
                self.config.polynomial, self.config.deg
            )
        return self._cache["matrix"]

    def kernelset(self):
        if "kernelset" not in self._cache:
            self._cache["kernelset"] = cd_kernel.cd_kernel_set(
                self.config.polynomial, self.config.deg
            )
        return self._cache["kernelset"]


# ----------------------------------------------------------------------
# Suites
# ----------------------------------------------------------------------


def _suite_stability(art: Artifacts, cfg: RunConfig):
    report = art.stability()
    details = {
        "stable": report.stable,
        "witness": None
        if report.witness is None
        else [
            [report.witness[0].real, report.witness[0].imag],
            [report.witness[1].real, report.witness[1].imag],
        ],
        "min_modulus": report.min_modulus,
    }
    return (0.0 if report.stable else 1.0), details


def _suite_moments(art: Artifacts, cfg: RunConfig):
    grid_table = art.moments()
    series_table = measure.moments_from_series(
        cfg.polynomial, cfg.deg, cfg.window
    )
    violation = grid_table.max_difference(series_table)
    chosen = grid_table if cfg.method == "grid" else series_table
    details = {
        "cross_path_difference": violation,
        "grid_size": grid_table.grid_size,
        "grid_est_error": grid_table.est_error,
        "series_order": series_table.grid_size,
        "series_est_error": series_table.est_error,
        "table": chosen.to_json_dict(),
    }
    return violation, details


def _suite_schur_cohn(art: Artifacts, cfg: RunConfig):
    T = art.matrix()
    m = cfg.deg.m
    rows = []
    violation = 0.0
    min_eig_global = np.inf
    for idx in range(cfg.theta_grid):
        theta = 2.0 * np.pi * idx / cfg.theta_grid
        M = schur_cohn.evaluate_on_circle(T, theta)
        profile = schur_cohn.principal_determinants(T, theta)
        eig = float(np.linalg.eigvalsh(M)[0])
        min_eig_global = min(min_eig_global, eig)
        sl = measure._slice_moments_unchecked(cfg.polynomial, cfg.deg, theta, m - 1)
        moment_matrix = np.array(
            [[sl.get(j - i) for j in range(m)] for i in range(m)]
        )
        residual = float(np.max(np.abs(M @ moment_matrix - np.eye(m))))
        violation = max(violation, residual)
        rows.append(
            {
                "theta": theta,
                "D_list": list(profile.D),
                "min_eig": eig,
                "inverse_moment_residual": residual,
            }
        )
    if min_eig_global <= 0.0:
        violation = max(violation, 1.0)
    details = {"rows": rows, "min_eig": float(min_eig_global)}
    return violation, details


def _suite_cd_kernel(art: Artifacts, cfg: RunConfig):
    ks = art.kernelset()
    n, m = cfg.deg
    rng = np.random.default_rng(cfg.seed)
    violation = 0.0
    for _ in range(20):
        eta = complex(rng.normal(), rng.normal()) * 0.5
        direct = cd_kernel.kernel_by_divided_difference(cfg.polynomial, cfg.deg, eta)
        violation = max(violation, (direct - ks.parameter_sum(eta)).max_abs())
    for j in range(m):
        recombined = cfg.polynomial * ks.A[j] + cfg.polynomial.reflect(cfg.deg) * ks.B[j]
        violation = max(violation, (recombined - ks.a[j]).max_abs())
        mirrored = ks.a[m - j - 1].reflect(DegreePair(2 * n, m - 1))
        violation = max(violation, (mirrored - ks.a[j]).max_abs())
    details = {
        "a": [aj.to_json_dict(DegreePair(2 * n, m - 1)) for aj in ks.a],
        "A": [Aj.to_json_dict(DegreePair(n, m - 1)) for Aj in ks.A],
        "B": [Bj.to_json_dict(DegreePair(n, m - 1)) for Bj in ks.B],
    }
    return violation, details


def _orth_pairs_json(report):
    return [
        [label, ij[0], ij[1], value.real, value.imag]
        for label, ij, value in report.pairs
    ]


def _suite_verify_orthogonality(art: Artifacts, cfg: RunConfig):
    ks = art.kernelset()
    moments = art.moments()
    scale = min(
        measure.norm(ak, moments) for ak in ks.a
    )
    base = subspaces.orthogonality_report(
        cfg.polynomial, cfg.deg, ks, moments, cfg.margin
    )
    shifts = subspaces.shift_orthogonality_report(
        cfg.polynomial, cfg.deg, ks, moments, cfg.shift_max, cfg.margin
    )
    violation = max(base.max_violation, shifts.max_violation) / scale
    details = {
        "normalization": scale,
        "window_max_violation": base.max_violation,
        "shift_max_violation": shifts.max_violation,
        "pairs": _orth_pairs_json(base) + _orth_pairs_json(shifts),
    }
    return violation, details


def _random_bidisk_points(rng, count, entries):
    points = []
    for _ in range(count):
        point = []
        for _ in range(entries):
            radius = np.sqrt(rng.uniform())
            angle = rng.uniform(0.0, 2.0 * np.pi)
            point.append(radius * np.exp(1j * angle))
        points.append(tuple(point))
    return points


def _suite_verify_cd(art: Artifacts, cfg: RunConfig):
    moments = art.moments()
    rng = np.random.default_rng(cfg.seed)
    points = _random_bidisk_points(rng, 100, 4)
    result = subspaces.cd_formula_residual(cfg.polynomial, cfg.deg, moments, points)
    return result["max_residual"], {"points": result["points"]}


def _suite_verify_kernel(art: Artifacts, cfg: RunConfig):
    moments = art.moments()
    rng = np.random.default_rng(cfg.seed)
    functions = subspaces.default_lshape_monomials(cfg.deg, count=10)
    functions.append(BivariateLaurentPoly.monomial(cfg.deg.n, cfg.deg.m))
    points = [
        (0.9 * z, 0.9 * w) for z, w in _random_bidisk_points(rng, 10, 2)
    ]
    result = subspaces.closed_form_kernel_residual(
        cfg.polynomial, cfg.deg, moments, functions, points
    )
    details = {
        "reproducing_max": result["reproducing_max"],
        "projection_max": result["projection_max"],
    }
    return result["max_residual"], details


def _suite_parametric(art: Artifacts, cfg: RunConfig):
    n, m = cfg.deg
    T = art.matrix()
    rows = []
    violation = 0.0
    for idx in range(cfg.theta_grid):
        theta = 2.0 * np.pi * idx / cfg.theta_grid
        op = parametric.parametric_polynomials(cfg.polynomial, cfg.deg, theta, T)
        check = parametric.orthogonality_check(cfg.polynomial, cfg.deg, theta, op)
        violation = max(violation, check["offdiag_max"], check["lu_law_residual"])
        rows.append(
            {
                "theta": theta,
                "phi": [[[c.real, c.imag] for c in coeffs] for coeffs in op.phi],
                "D_list": list(op.D.D),
                "offdiag_max": check["offdiag_max"],
                "lu_law_residual": check["lu_law_residual"],
                "variant_law_residual": check["variant_law_residual"],
                "matches_variant_law": check["matches_variant_law"],
            }
        )
    vanishing = {}
    j_values = range(m) if cfg.j_index is None else [cfg.j_index]
    for j in j_values:
        bound = n * (m - j)
        k_top = cfg.k_max if cfg.k_max is not None else bound + 3
        k_list = list(range(bound + 1, max(k_top, bound + 1) + 1))
        result = parametric.moment_vanishing(cfg.polynomial, cfg.deg, j, k_list)
        for value in result["values"]:
            violation = max(violation, abs(value))
        vanishing[str(j)] = {
            "k_list": result["k_list"],
            "values": [[v.real, v.imag] for v in result["values"]],
            "theta_grid": result["theta_grid"],
        }
    details = {"rows": rows, "vanishing": vanishing}
    return violation, details


SUITE_RUNNERS = {
    "stability": _suite_stability,
    "moments": _suite_moments,
    "schur-cohn": _suite_schur_cohn,
    "cd-kernel": _suite_cd_kernel,
    "verify-orthogonality": _suite_verify_orthogonality,
    "verify-cd": _suite_verify_cd,
    "verify-kernel": _suite_verify_kernel,
    "parametric": _suite_parametric,
}


def _run_one(name: str, art: Artifacts, cfg: RunConfig) -> SuiteReport:
    tolerance = cfg.tolerances[SUITE_TOLERANCE_NAME[name]]
    start = time.perf_counter()
    try:
        violation, details = SUITE_RUNNERS[name](art, cfg)
        status = "pass" if violation < tolerance else "fail"
    except InconclusiveNearBoundary as exc:
        violation, details, status = 0.0, {"message": str(exc)}, "inconclusive"
    except BscdError as exc:
        violation = float(tolerance)
        details = {"error": type(exc).__name__, "message": str(exc)}
        status = "fail"
    elapsed = time.perf_counter() - start
    return SuiteReport(name, status, float(violation), tolerance, details, elapsed)


def run(config: RunConfig) -> list[SuiteReport]:
    """Execute the configured suites and return their reports, name-ordered."""
    art = Artifacts(config)
    ordered = [s for s in SUITE_ORDER if s in config.suites]
    threads = int(os.environ.get("BSCD_THREADS", "1") or "1")
    if threads > 1 and len(ordered) > 1:
        # shared artifacts are built serially first so workers only read
        try:
            art.stability()
            if any(s != "stability" for s in ordered):
                art.moments()
                art.matrix()
                art.kernelset()
        except BscdError:
            pass
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(lambda s: _run_one(s, art, config), ordered))
    else:
        reports = [_run_one(s, art, config) for s in ordered]
    return sorted(reports, key=lambda r: r.suite)


def exit_code(reports: list[SuiteReport]) -> int:
    if any(r.status == "fail" for r in reports):
        return 1
    if any(r.status == "inconclusive" for r in reports):
        return 3
    return 0


# ----------------------------------------------------------------------
# Serialization
# ----------------------------------------------------------------------


def _dump_json(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format(float(obj), ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_dump_json(v) for v in obj) + "]"
    if isinstance(obj, dict):
        parts = [f"{json.dumps(str(k))}:{_dump_json(v)}" for k, v in obj.items()]
        return "{" + ",".join(parts) + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def report_document(reports: list[SuiteReport]) -> dict:
    doc = {}
    for r in sorted(reports, key=lambda r: r.suite):
        doc[r.suite] = {
            "status": r.status,
            "max_violation": r.max_violation,
            "tolerance": r.tolerance,
            "details": r.details,
            "wall_time": r.wall_time,
        }
    return doc


def render_report(reports: list[SuiteReport], fmt: str) -> str:
    if fmt == "json":
        return _dump_json(report_document(reports)) + "\n"
    lines = ["suite,status,max_violation,tolerance,wall_time"]
    for r in sorted(reports, key=lambda r: r.suite):
        lines.append(
            ",".join(
                [
                    r.suite,
                    r.status,
                    format(r.max_violation, ".17g"),
                    format(r.tolerance, ".17g"),
                    format(r.wall_time, ".17g"),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def emit_report(reports: list[SuiteReport], fmt: str, path: str | None) -> None:
    text = render_report(reports, fmt)
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write report to {path}: {exc}") from exc


def _suite_payload(report: SuiteReport) -> str:
    """Suite-specific stdout payload for single-suite invocations."""
    if report.suite == "schur-cohn" and "rows" in report.details:
        return "\n".join(_dump_json(row) for row in report.details["rows"]) + "\n"
    body = {
        "status": report.status,
        "max_violation": report.max_violation,
        "details": report.details,
    }
    return _dump_json(body) + "\n"


# ----------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------


def _parse_tol(pairs, default_name=None):
    out = {}
    for item in pairs or []:
        if "=" in item:
            name, _, value = item.partition("=")
        elif default_name is not None:
            # bare value form, e.g. `moments --tol 1e-9`
            name, value = default_name, item
        else:
            raise ConfigInvalid(f"--tol expects NAME=VALUE, got {item!r}")
        try:
            out[name] = float(value)
        except ValueError as exc:
            raise ConfigInvalid(f"bad tolerance value in {item!r}") from exc
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bscd",
        description="verify kernel and orthogonality identities of a stable polynomial",
    )
    parser.add_argument("suite", choices=SUITE_ORDER + ("all",))
    parser.add_argument("--config", required=True)
    parser.add_argument("--tol", action="append", metavar="NAME=V")
    parser.add_argument("--out")
    parser.add_argument("--format", choices=("json", "csv"))
    parser.add_argument("--window", metavar="A,B")
    parser.add_argument("--method", choices=("grid", "series"))
    parser.add_argument("--theta-grid", type=int)
    parser.add_argument("--margin", type=int)
    parser.add_argument("--shift-max", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--j", type=int)
    parser.add_argument("--k-max", type=int)
    args = parser.parse_args(argv)

    try:
        overrides = {
            "format": args.format,
            "method": args.method,
            "theta_grid": args.theta_grid,
            "margin": args.margin,
            "shift_max": args.shift_max,
            "seed": args.seed,
            "j": args.j,
            "k_max": args.k_max,
            "output": args.out,
        }
        if args.window is not None:
            parts = args.window.split(",")
            if len(parts) != 2:
                raise ConfigInvalid("--window expects A,B")
            overrides["window"] = [int(parts[0]), int(parts[1])]
        if args.suite != "all":
            overrides["suites"] = [args.suite]
        config = load_config(args.config, overrides)
        if args.tol:
            default_name = (
                SUITE_TOLERANCE_NAME[args.suite] if args.suite != "all" else None
            )
            for name, value in _parse_tol(args.tol, default_name).items():
                if name not in config.tolerances:
                    raise ConfigInvalid(f"unknown tolerance name: {name}")
                if value <= 0:
                    raise ConfigInvalid(f"tolerance {name} must be positive")
                config.tolerances[name] = value
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    reports = run(config)
    try:
        if args.suite == "all":
            emit_report(reports, config.format, config.output)
        else:
            sys.stdout.write(_suite_payload(reports[0]))
            if config.output is not None:
                emit_report(reports, config.format, config.output)
    except IoFailure as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    return exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
