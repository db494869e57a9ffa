"""Command-line front end.

Parses a map specification (a JSON file or a named catalog entry with
``--param key=value`` overrides), runs one analysis subcommand, and emits a
deterministic report: JSON (default, stable key order, schema "1"), flat
CSV for the tabular parts, or a plain-text summary.  Warnings go to
standard error.  Exit status is 0 on success, 2 when the result is
inconclusive, and 1 on error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from typing import Any

from . import __version__
from .catalog import CATALOG_SCHEMA, catalog_map
from .coeffcore import (
    CoeffStream,
    HarmonicMap,
    evaluate,
)
from .errors import HemapError
from .gapseq import exp_type_bound, rf_lower_bound, rho_upper_bound, univalent_gap_analysis
from .growth import (
    cauchy_pair_bound_check,
    convergence_radii,
    max_modulus,
    order_from_coeffs,
    order_of_sum_check,
    recover_coefficients,
    type_from_coeffs,
)
from .univalence import (
    AnalysisConfig,
    coeff_growth_bound_check,
    exponential_type_bound_check,
    gamma_empirical,
    normalize_map,
    radius_certificate,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2

_LOG_SERIALIZE_CUTOFF = 700.0  # beyond this, complex values leave double range


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _sanitize(obj: Any) -> Any:
    """Make a report JSON-safe and deterministic.

    Non-finite floats become strings; complex values become [re, im] pairs
    or {"log_abs", "phase"} objects when they leave the double range.
    """
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, complex):
        return [_sanitize(obj.real), _sanitize(obj.imag)]
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if hasattr(obj, "log_abs") and hasattr(obj, "phase"):
        if obj.log_abs != float("-inf") and abs(obj.log_abs) < _LOG_SERIALIZE_CUTOFF:
            return _sanitize(obj.to_complex())
        return {"log_abs": _sanitize(obj.log_abs), "phase": _sanitize(obj.phase)}
    return obj


def _emit_json(report: dict) -> str:
    return json.dumps(_sanitize(report), sort_keys=True, separators=(",", ":")) + "\n"


def _emit_csv(rows: list[dict], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_cell(row.get(h)) for h in header])
    return buf.getvalue()


def _csv_cell(v: Any) -> Any:
    v = _sanitize(v)
    if isinstance(v, list):
        return ";".join(str(x) for x in v)
    return v


def _emit_text(report: dict) -> str:
    lines = [f"hemap {report['command']}"]

    def walk(prefix: str, obj: Any) -> None:
        obj = _sanitize(obj)
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(f"{prefix}{k}.", obj[k])
        elif isinstance(obj, list) and len(obj) > 8:
            lines.append(f"{prefix[:-1]}: [{len(obj)} rows]")
        else:
            lines.append(f"{prefix[:-1]}: {obj}")

    walk("", report["results"])
    for w in report.get("warnings", []):
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# map loading
# ---------------------------------------------------------------------------


def _parse_scalar(text: str) -> complex:
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError as exc:
        raise HemapError(f"cannot parse numeric value {text!r}") from exc


def _params_from_args(pairs: list[str]) -> dict:
    out: dict[str, Any] = {}
    for pair in pairs:
        if "=" not in pair:
            raise HemapError(f"--param expects key=value, got {pair!r}")
        key, raw = pair.split("=", 1)
        key = key.strip()
        if key in ("coeffs", "bcoeffs"):
            out[key] = raw
        else:
            val = _parse_scalar(raw)
            out[key] = val if isinstance(val, float) else complex(val)
    return out


def _coeffs_from_spec(entries: list, field: str) -> list[complex]:
    vals = []
    for i, e in enumerate(entries):
        if isinstance(e, (list, tuple)) and len(e) == 2:
            vals.append(complex(float(e[0]), float(e[1])))
        elif isinstance(e, (int, float)):
            vals.append(complex(e))
        elif isinstance(e, str):
            vals.append(complex(_parse_scalar(e)))
        else:
            raise HemapError(f"{field}[{i}]: expected number or [re, im] pair")
    return vals


def _load_map(args: argparse.Namespace) -> tuple[HarmonicMap, dict]:
    if args.map_file:
        with open(args.map_file, "r", encoding="utf-8") as fh:
            spec = json.load(fh)
        kind = spec.get("kind")
        if kind == "catalog":
            params = dict(spec.get("params", {}))
            for k, v in list(params.items()):
                if isinstance(v, str) and k not in ("coeffs", "bcoeffs"):
                    params[k] = _parse_scalar(v)
                elif isinstance(v, (list, tuple)) and k not in ("coeffs", "bcoeffs"):
                    params[k] = complex(float(v[0]), float(v[1]))
            entry = catalog_map(spec.get("name", ""), params)
            return entry.map, {"kind": "catalog", "name": entry.name, "params": entry.params}
        if kind == "coeffs":
            a = _coeffs_from_spec(spec.get("a", []), "a")
            b = _coeffs_from_spec(spec.get("b", []), "b")
            if b and b[0] != 0:
                raise HemapError("field b[0] must be zero (canonical decomposition)")
            h = CoeffStream.from_complex_seq(a or [0j], label="user-h")
            g = (
                CoeffStream.from_complex_seq(b, label="user-g")
                if any(v != 0 for v in b)
                else CoeffStream.zeros()
            )
            return HarmonicMap(h, g), {"kind": "coeffs", "a": a, "b": b}
        raise HemapError('map file field "kind" must be "catalog" or "coeffs"')
    if args.catalog:
        params = _params_from_args(args.param or [])
        entry = catalog_map(args.catalog, params)
        return entry.map, {"kind": "catalog", "name": entry.name, "params": entry.params}
    raise HemapError("a map is required: pass --map FILE or --catalog NAME")


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (results, csv_rows, csv_header, exit_code)
# ---------------------------------------------------------------------------


def _report_growth(rep) -> dict:
    return {
        "raw_tail_value": rep.raw_tail_value,
        "extrapolated": rep.extrapolated,
        "window_lo": rep.window_lo,
        "window_hi": rep.window_hi,
        "converged": rep.converged,
        "n_skipped_zero": rep.n_skipped_zero,
        "n_skipped_large": rep.n_skipped_large,
        "samples": [[n, v] for n, v in rep.samples],
    }


def _cmd_order(args, f, _spec):
    rep = order_from_coeffs(f, n_lo=args.nlo, n_hi=args.nmax, rel_tol=args.tol)
    rows = [{"n": n, "value": v} for n, v in rep.samples]
    code = EXIT_OK if rep.converged else EXIT_INCONCLUSIVE
    return {"order": _report_growth(rep)}, rows, ["n", "value"], code


def _cmd_type(args, f, _spec):
    rho = args.rho
    results: dict[str, Any] = {}
    if rho is None:
        order_rep = order_from_coeffs(f, n_lo=args.nlo, n_hi=args.nmax, rel_tol=args.tol)
        rho = order_rep.extrapolated
        results["order_used"] = rho
    if not (0 < rho < math.inf):
        raise HemapError(f"type needs a finite positive order, got {rho}")
    rep = type_from_coeffs(f, rho, n_lo=args.nlo, n_hi=args.nmax, rel_tol=args.tol)
    results["type"] = _report_growth(rep)
    results["rho"] = rho
    rows = [{"n": n, "value": v} for n, v in rep.samples]
    code = EXIT_OK if rep.converged else EXIT_INCONCLUSIVE
    return results, rows, ["n", "value"], code


def _cmd_maxmod(args, f, _spec):
    rows = []
    for r in args.r:
        log_m = max_modulus(f, r, n_theta=args.ntheta, N=args.nmax)
        rows.append({"r": r, "log_max_modulus": log_m})
    return {"table": rows}, rows, ["r", "log_max_modulus"], EXIT_OK


def _cmd_radii(args, f, _spec):
    rad = convergence_radii(f, n_lo=args.nlo, n_hi=args.nmax)
    res = {"r_h": rad.r_h, "r_g": rad.r_g, "r_f": rad.r_f}
    rows = [{"part": k, "radius": v} for k, v in res.items()]
    return res, rows, ["part", "radius"], EXIT_OK


def _cmd_radius(args, f, _spec):
    config = AnalysisConfig(
        alpha=args.alpha,
        beta=args.beta,
        bisect_tol=args.tol if args.tol < 1 else 1e-9,
        upper_r_max=args.rmax,
    )
    cert = radius_certificate(f, args.deriv, config)
    res = {
        "n": cert.n,
        "r_lower": cert.r_lower,
        "r_upper": cert.r_upper,
        "lower_method": cert.lower_method,
        "upper_method": cert.upper_method,
        "witness": cert.witness,
        "degenerate": cert.degenerate,
        "lower_capped": cert.lower_capped,
        "grid_params": cert.grid_params,
    }
    rows = [{"field": k, "value": v} for k, v in res.items() if k != "grid_params"]
    code = EXIT_INCONCLUSIVE if cert.degenerate else EXIT_OK
    return res, rows, ["field", "value"], code


def _cmd_gaps(args, f, _spec):
    config = AnalysisConfig(alpha=args.alpha, beta=args.beta, tail_fraction=args.tail)
    ga = univalent_gap_analysis(f, args.nmax, config)
    res: dict[str, Any] = {
        "indices": list(ga.indices),
        "inconclusive": ga.inconclusive,
        "skipped": {str(k): v for k, v in ga.skipped.items()},
    }
    rows = [{"p": i + 1, "n": n} for i, n in enumerate(ga.indices)]
    if not ga.inconclusive:
        res.update(
            {
                "lambda_tail": ga.stats.lambda_tail,
                "gaplog_tail": ga.stats.gaplog_tail,
                "second_diff_ratios": ga.stats.second_diff_ratios,
                "lambda_used": ga.lambda_used,
                "rf_lower_bound": ga.rf_bound,
                "rho_upper_bound": ga.rho_bound,
            }
        )
    code = EXIT_INCONCLUSIVE if ga.inconclusive else EXIT_OK
    return res, rows, ["p", "n"], code


def _cmd_bounds(args, _f, _spec):
    res: dict[str, Any] = {}
    rows = []
    if args.lam is not None:
        v = rf_lower_bound(args.lam)
        res["rf_lower_bound"] = {"lambda": args.lam, "value": v}
        rows.append({"bound": "rf_lower_bound", "input": args.lam, "value": v})
    if args.gaplog is not None:
        v = rho_upper_bound(args.gaplog)
        res["rho_upper_bound"] = {"gaplog": args.gaplog, "value": v}
        rows.append({"bound": "rho_upper_bound", "input": args.gaplog, "value": v})
    if args.mu is not None:
        v = exp_type_bound(args.mu)
        res["exp_type_bound"] = {"mu": args.mu, "value": v}
        rows.append({"bound": "exp_type_bound", "input": args.mu, "value": v})
    if not rows:
        raise HemapError("bounds needs at least one of --lambda, --gaplog, --mu")
    return res, rows, ["bound", "input", "value"], EXIT_OK


def _cmd_verify(args, f, _spec):
    if args.theorem == "2.3":
        h_map = HarmonicMap.analytic(f.h)
        g_map = HarmonicMap.analytic(f.g)
        oh = order_from_coeffs(h_map, n_lo=args.nlo, n_hi=args.nmax).extrapolated
        og = order_from_coeffs(g_map, n_lo=args.nlo, n_hi=args.nmax).extrapolated
        of = order_from_coeffs(f, n_lo=args.nlo, n_hi=args.nmax).extrapolated
        ok = order_of_sum_check(oh, og, of, args.tol)
        res = {
            "check": "order-of-sum",
            "h_order": oh,
            "g_order": og,
            "f_order": of,
            "tol": args.tol,
            "ok": ok,
        }
        rows = [{"field": k, "value": v} for k, v in res.items()]
        return res, rows, ["field", "value"], EXIT_OK if ok else EXIT_INCONCLUSIVE

    if args.theorem == "3.1":
        fn = normalize_map(f)
        gamma = gamma_empirical(fn, args.nmax)
        if gamma <= 0:
            raise HemapError("empirical gamma is zero; the bound chain is vacuous")
        coeff_rows = coeff_growth_bound_check(fn, gamma, args.nmax)
        first_bad = next((n for n, ok in coeff_rows if not ok), None)
        type_rows = exponential_type_bound_check(
            fn, gamma, args.r, n_theta=args.ntheta or 1024, N=args.nmax
        )
        ok = first_bad is None and all(ok for *_x, ok in type_rows)
        res = {
            "check": "exponential-type-chain",
            "gamma": gamma,
            "coeff_bound_ok": first_bad is None,
            "coeff_first_violation": first_bad,
            "modulus_rows": [list(row) for row in type_rows],
            "ok": ok,
        }
        rows = [
            {"r": r, "log_max": lm, "log_bound": lb, "ok": okr}
            for r, lm, lb, okr in type_rows
        ]
        return res, rows, ["r", "log_max", "log_bound", "ok"], (
            EXIT_OK if ok else EXIT_INCONCLUSIVE
        )

    if args.theorem == "2.11":
        all_rows = []
        ok = True
        for r in args.r:
            for row in cauchy_pair_bound_check(
                f, r, N=min(args.nmax, 50), n_theta=args.ntheta or 1024
            ):
                all_rows.append(
                    {"r": r, "n": row.n, "lhs_log": row.lhs_log, "rhs_log": row.rhs_log, "ok": row.ok}
                )
                ok = ok and row.ok
        res = {"check": "coefficient-pair-bound", "rows": all_rows, "ok": ok}
        return res, all_rows, ["r", "n", "lhs_log", "rhs_log", "ok"], (
            EXIT_OK if ok else EXIT_INCONCLUSIVE
        )

    raise HemapError(f"unknown verify target {args.theorem!r}")


def _cmd_catalog_list(_args, _f, _spec):
    res = {"catalog": CATALOG_SCHEMA}
    rows = [
        {"name": name, "param": p, "description": d}
        for name in sorted(CATALOG_SCHEMA)
        for p, d in sorted(CATALOG_SCHEMA[name].items())
    ]
    return res, rows, ["name", "param", "description"], EXIT_OK


def _cmd_recover(args, f, _spec):
    def sampler(t: float) -> complex:
        return evaluate(f, args.r * complex(math.cos(t), math.sin(t)), args.nmax, 1e-14).value

    a, b = recover_coefficients(sampler, args.r, args.n, args.m)
    rows = [
        {"n": n, "a_re": a[n].real, "a_im": a[n].imag, "b_re": b[n].real, "b_im": b[n].imag}
        for n in range(len(a))
    ]
    res = {"a": a, "b": b, "r": args.r, "m": args.m}
    return res, rows, ["n", "a_re", "a_im", "b_re", "b_im"], EXIT_OK


_NEEDS_MAP = {"order", "type", "maxmod", "radii", "radius", "gaps", "verify", "recover"}

_HANDLERS = {
    "order": _cmd_order,
    "type": _cmd_type,
    "maxmod": _cmd_maxmod,
    "radii": _cmd_radii,
    "radius": _cmd_radius,
    "gaps": _cmd_gaps,
    "bounds": _cmd_bounds,
    "verify": _cmd_verify,
    "catalog-list": _cmd_catalog_list,
    "recover": _cmd_recover,
}


def _float_list(text: str) -> list[float]:
    return [float(p) for p in text.split(",") if p.strip()]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hemap",
        description="Analyze harmonic entire mappings given as coefficient streams.",
    )
    parser.add_argument("--version", action="version", version=f"hemap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--map", dest="map_file", help="JSON map specification file")
    common.add_argument("--catalog", help="catalog map name (see catalog-list)")
    common.add_argument(
        "--param",
        action="append",
        metavar="K=V",
        help="catalog parameter; repeatable (complex values as re+imi)",
    )
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--nmax", type=int, default=2000, help="index/series budget")
    common.add_argument("--nlo", type=int, default=2, help="lowest estimator index")
    common.add_argument("--ntheta", type=int, default=None, help="circle grid size (power of two)")
    common.add_argument("--tail", type=float, default=0.5, help="tail fraction for gap statistics")
    common.add_argument("--alpha", type=float, default=3.0)
    common.add_argument("--beta", type=float, default=3.0)
    common.add_argument("--tol", type=float, default=0.05, help="tolerance knob (per command)")

    p = sub.add_parser("order", parents=[common], help="coefficient-based growth order")
    p = sub.add_parser("type", parents=[common], help="coefficient-based growth type")
    p.add_argument("--rho", type=float, default=None, help="order; estimated when omitted")
    p = sub.add_parser("maxmod", parents=[common], help="log maximum modulus over a radius grid")
    p.add_argument("--r", type=_float_list, default=[1.0], help="comma list of radii")
    p = sub.add_parser("radii", parents=[common], help="radii of convergence")
    p = sub.add_parser("radius", parents=[common], help="univalence radius certificate")
    p.add_argument("--deriv", type=int, default=0, help="derivative order n")
    p.add_argument("--rmax", type=float, default=1.0, help="upper-scan radius cap")
    p = sub.add_parser("gaps", parents=[common], help="certified-derivative gap analysis")
    p = sub.add_parser("bounds", parents=[common], help="closed-form gap-sequence bounds")
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--gaplog", type=float, default=None)
    p.add_argument("--mu", type=int, default=None)
    p = sub.add_parser("verify", parents=[common], help="named verification suites")
    p.add_argument("--theorem", required=True, choices=("2.3", "3.1", "2.11"))
    p.add_argument("--r", type=_float_list, default=[0.5, 1.0, 2.0, 5.0])
    p = sub.add_parser("catalog-list", parents=[common], help="catalog names and parameters")
    p = sub.add_parser("recover", parents=[common], help="trapezoid coefficient recovery")
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--m", type=int, default=256, help="quadrature points (power of two)")
    p.add_argument("--n", type=int, default=20, help="highest recovered index")
    return parser


def run(argv: list[str]) -> int:
    """Parse argv, run the subcommand, print the report; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else EXIT_OK

    captured: list[str] = []
    try:
        with warnings.catch_warnings(record=True) as wlist:
            warnings.simplefilter("always")
            if args.command in _NEEDS_MAP:
                fmap, spec_echo = _load_map(args)
            else:
                fmap, spec_echo = None, None
            results, rows, header, code = _HANDLERS[args.command](args, fmap, spec_echo)
            captured = [str(w.message) for w in wlist]
    except (HemapError, ValueError, OverflowError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    config_echo = {
        k: _sanitize(v)
        for k, v in sorted(vars(args).items())
        if k not in ("command",) and v is not None
    }
    report = {
        "schema": "1",
        "command": args.command,
        "map": spec_echo,
        "config": config_echo,
        "results": results,
        "warnings": captured,
    }
    if args.format == "json":
        sys.stdout.write(_emit_json(report))
    elif args.format == "csv":
        sys.stdout.write(_emit_csv(rows, header))
    else:
        sys.stdout.write(_emit_text(report))
    for w in captured:
        print(f"warning: {w}", file=sys.stderr)
    return code


def main() -> None:  # pragma: no cover
    sys.exit(run(sys.argv[1:]))
