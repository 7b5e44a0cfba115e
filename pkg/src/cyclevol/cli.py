"""Batch front-end: JSON jobs in, JSON reports out.

Subcommands mirror the library: ``constants``, ``bounds``, ``volhat``,
``seshadri``, ``wmob``, ``mc``, plus ``run`` (dispatch a job file) and
``verify`` (the acceptance suite).  All interchange is JSON with exact
rationals as string fractions ("3/4"), so serialize-parse round trips
are lossless.  Output for identical inputs is deterministic.

Exit codes: 0 success, 2 parse/validation error, 3 bound inapplicable,
4 optimization infeasible, 5 internal tolerance failure.

When ``CYCLEVOL_CACHE_DIR`` is set, ``volhat`` results are cached on
disk keyed by a hash of the job, written atomically (write to a
temporary file, then rename).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Optional

from . import acceptance
from . import bounds as _bounds
from . import seshadri as _seshadri
from . import volhat as _volhat
from .constants import DegenerateRecursionError, epsilon, tau
from .cycles import CycleClass, DivisorClass, VarietySpec, h0

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INAPPLICABLE = 3
EXIT_INFEASIBLE = 4
EXIT_TOLERANCE = 5


class ParseError(Exception):
    pass


# ---------------------------------------------------------------------------
# JSON codecs
# ---------------------------------------------------------------------------


def parse_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad fraction string {value!r}") from exc
    if isinstance(value, dict) and "numerator" in value and "denominator" in value:
        return Fraction(int(value["numerator"]), int(value["denominator"]))
    raise ParseError(f"cannot read a rational from {value!r}")


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_variety(obj) -> VarietySpec:
    if not isinstance(obj, dict) or "dims" not in obj:
        raise ParseError("variety must be an object with a 'dims' list")
    return VarietySpec(tuple(int(d) for d in obj["dims"]))


def parse_divisor(obj, variety: VarietySpec) -> DivisorClass:
    if isinstance(obj, dict) and "coords" in obj:
        coords = obj["coords"]
    elif isinstance(obj, list):
        coords = obj
    else:
        raise ParseError("divisor must be a coordinate list or an object with 'coords'")
    return DivisorClass(variety, tuple(parse_fraction(x) for x in coords))


def parse_cycle(obj, variety: VarietySpec) -> CycleClass:
    if not isinstance(obj, dict) or "codim" not in obj or "coeffs" not in obj:
        raise ParseError("cycle must be an object with 'codim' and 'coeffs'")
    coeffs = []
    for entry in obj["coeffs"]:
        mono = tuple(int(a) for a in entry["exponents"])
        if "coefficient" in entry:
            coeffs.append((mono, parse_fraction(entry["coefficient"])))
        else:
            coeffs.append((mono, parse_fraction(entry)))
    return CycleClass(variety, int(obj["codim"]), tuple(coeffs))


def _load_json(path: str) -> dict:
    try:
        with open(path) as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read JSON from {path}: {exc}") from exc


def _emit(doc, output: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _decimal_str(q: Fraction, digits: int = 6) -> str:
    scaled = q * 10**digits
    whole = scaled.numerator // scaled.denominator
    sign = "-" if whole < 0 else ""
    whole = abs(whole)
    return f"{sign}{whole // 10**digits}.{whole % 10**digits:0{digits}d}"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_constants(args) -> int:
    try:
        e = epsilon(args.n, args.k)
        t = tau(args.n, args.k)
    except DegenerateRecursionError as exc:
        _emit({"n": args.n, "k": args.k, "error": str(exc)}, args.output)
        return EXIT_INAPPLICABLE
    doc = {
        "n": args.n,
        "k": args.k,
        "epsilon": fraction_str(e),
        "epsilon_decimal": _decimal_str(e, 12),
        "tau": fraction_str(t),
        "tau_decimal": _decimal_str(t, 12),
    }
    _emit(doc, args.output)
    return EXIT_OK


def _bound_dispatch(payload: dict, s: int) -> _bounds.BoundReport:
    variety = parse_variety(payload["variety"])
    alpha = parse_cycle(payload["alpha"], variety)
    A = parse_divisor(payload["A"], variety)
    formula = payload.get("formula", "mc-precise")
    variant = int(payload.get("variant", 1))
    t = payload.get("t")
    t = int(t) if t is not None else None
    if formula == "mc-precise":
        return _bounds.mc_upper_precise(alpha, A, s, variant, t)
    if formula == "wmc-precise":
        return _seshadri.wmc_upper_precise(alpha, A, s, variant, t)
    if formula == "mc-nonbig":
        return _bounds.mc_upper_nonbig(alpha, A, s)
    if formula == "mc-generic":
        c = parse_fraction(payload.get("c", _bounds.largest_valid_dyadic_c(A)))
        return _bounds.mc_upper_generic(alpha, A, c)
    raise ParseError(f"unknown bound formula {formula!r}")


def _cmd_bounds(args) -> int:
    payload = _load_json(args.input)
    digits = args.digits
    if args.sweep:
        lo, hi = _parse_sweep(args.sweep)
        values = list(range(lo, hi + 1))
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(lambda s: _bound_dispatch(payload, s), values))
        doc = {
            "sweep": [
                {"s": s, "report": rep.to_json(digits)} for s, rep in zip(values, reports)
            ]
        }
        _emit(doc, args.output)
        return EXIT_OK
    report = _bound_dispatch(payload, int(payload.get("s", 1)))
    _emit(report.to_json(digits), args.output)
    return EXIT_OK if report.applicable else EXIT_INAPPLICABLE


def _cache_path(key_doc: dict) -> Optional[str]:
    cache_dir = os.environ.get("CYCLEVOL_CACHE_DIR")
    if not cache_dir:
        return None
    digest = hashlib.sha256(json.dumps(key_doc, sort_keys=True).encode()).hexdigest()
    return os.path.join(cache_dir, f"{digest}.json")


def _cache_read(path: Optional[str]) -> Optional[dict]:
    if path and os.path.exists(path):
        with open(path) as handle:
            return json.load(handle)
    return None


def _cache_write(path: Optional[str], doc: dict) -> None:
    if not path:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            json.dump(doc, handle, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cmd_volhat(args) -> int:
    payload = _load_json(args.input)
    variety = parse_variety(payload["variety"])
    alpha = parse_cycle(payload["alpha"], variety)
    tol = parse_fraction(args.tol)
    key = {
        "command": "volhat",
        "payload": payload,
        "formulation": args.formulation,
        "tol": fraction_str(tol),
        "grid": args.grid,
    }
    cache = _cache_path(key)
    cached = _cache_read(cache)
    if cached is not None:
        _emit(cached, args.output)
        return int(cached.get("exit_code", EXIT_OK))

    doc: dict = {}
    code = EXIT_OK
    try:
        if args.formulation in ("sup", "both"):
            res = _volhat.volhat_sup(alpha, tol)
            doc["sup"] = res.to_json()
            if res.status == "infeasible":
                code = EXIT_INFEASIBLE
        if args.formulation in ("xiao", "both"):
            res = _volhat.volhat_curve_xiao(alpha, tol, args.grid)
            doc["xiao"] = res.to_json()
    except RuntimeError as exc:
        _emit({"error": str(exc)}, args.output)
        return EXIT_TOLERANCE
    doc["exit_code"] = code
    _cache_write(cache, doc)
    _emit(doc, args.output)
    return code


def _divisor_from_args(args, key: str) -> tuple[VarietySpec, DivisorClass]:
    if args.input:
        payload = _load_json(args.input)
        variety = parse_variety(payload["variety"])
        return variety, parse_divisor(payload[key], variety)
    if not args.dims or not args.coords:
        raise ParseError(f"need either --input or both --dims and --coords for {key}")
    variety = VarietySpec(tuple(int(d) for d in args.dims.split(",")))
    coords = tuple(parse_fraction(x) for x in args.coords.split(","))
    return variety, DivisorClass(variety, coords)


def _cmd_seshadri(args) -> int:
    _, A = _divisor_from_args(args, "A")
    est = _seshadri.seshadri_interval(args.b, A)
    _emit(est.to_json(), args.output)
    return EXIT_OK


def _cmd_wmob(args) -> int:
    variety, H = _divisor_from_args(args, "H")
    if args.divisor:
        value = _seshadri.wmob_divisor(H)
        _emit({"wmob": fraction_str(value), "wmob_decimal": _decimal_str(value, 6)}, args.output)
        return EXIT_OK
    k = args.k
    if not 0 < k < variety.n:
        raise ParseError(f"need 0 < k < {variety.n}, got k = {k}")

    def one(t: int) -> dict:
        lower, upper = _seshadri.wmob_ci_bounds(H, k, t)
        ratio = _seshadri.wmob_ci_relative_gap(H, k, t)
        return {
            "t": t,
            "lower_decimal": _decimal_str(lower.lower(6), 6),
            "upper": fraction_str(upper),
            "relative_gap_decimal": _decimal_str(1 - ratio.lower(9), 9),
        }

    if args.sweep:
        lo, hi = _parse_sweep(args.sweep)
        values = [t for t in range(max(lo, 2), hi + 1)]
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(one, values))
        _emit({"sweep": rows}, args.output)
        return EXIT_OK
    _emit(one(args.t), args.output)
    return EXIT_OK


def _cmd_mc(args) -> int:
    _, L = _divisor_from_args(args, "L")
    doc = {"h0": h0(L), "mc": _bounds.mc_divisor_exact(L)}
    _emit(doc, args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = acceptance.run_all(verbose=True)
    return EXIT_OK if all(r.passed for r in results) else 1


def _cmd_run(args) -> int:
    job = _load_json(args.input)
    command = job.get("command")
    if command not in {"constants", "bounds", "volhat", "seshadri", "wmob", "mc", "verify"}:
        raise ParseError(f"unknown command {command!r}")
    payload = job.get("payload", {})
    argv = [command]
    tmp = None
    try:
        if command == "constants":
            argv += ["--n", str(payload["n"]), "--k", str(payload["k"])]
        elif command != "verify" and payload:
            fd, tmp = tempfile.mkstemp(suffix=".json")
            with os.fdopen(fd, "w") as handle:
                json.dump(payload, handle)
            argv += ["--input", tmp]
        for key in ("formulation", "tol", "grid", "sweep", "b", "t", "k", "digits"):
            if key in job:
                argv += [f"--{key}", str(job[key])]
        if job.get("output_path"):
            argv += ["--output", str(job["output_path"])]
        return main(argv)
    finally:
        if tmp and os.path.exists(tmp):
            os.unlink(tmp)


def _parse_sweep(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        lo, hi = int(lo), int(hi)
    except ValueError as exc:
        raise ParseError(f"--sweep expects lo:hi, got {text!r}") from exc
    if lo > hi:
        raise ParseError(f"empty sweep range {text!r}")
    return lo, hi


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclevol",
        description="volume-type invariants for cycle classes on products of projective spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, jobs=False):
        p.add_argument("--output", help="write the JSON report here instead of stdout")
        if jobs:
            p.add_argument("--jobs", type=int, default=1, help="parallel workers for sweeps")

    p = sub.add_parser("constants", help="the recursion constants as exact fractions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("bounds", help="evaluate a mobility-count bound from a JSON job")
    p.add_argument("--input", required=True, help="JSON file {variety, alpha, A, s, t, c, variant, formula}")
    p.add_argument("--sweep", help="iterate s over lo:hi")
    p.add_argument("--digits", type=int, default=6, help="decimal digits for the outward-rounded value")
    common(p, jobs=True)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("volhat", help="cone-constrained volume optimization")
    p.add_argument("--input", required=True, help="JSON file {variety, alpha}")
    p.add_argument("--formulation", choices=("sup", "xiao", "both"), default="sup")
    p.add_argument("--tol", default="1/1000000")
    p.add_argument("--grid", type=int, default=_volhat.DEFAULT_GRID)
    common(p)
    p.set_defaults(func=_cmd_volhat)

    p = sub.add_parser("seshadri", help="two-sided multi-point Seshadri estimate")
    p.add_argument("--b", type=int, required=True, help="number of general points")
    p.add_argument("--input", help="JSON file {variety, A}")
    p.add_argument("--dims", help="comma-separated factor dimensions, e.g. 2,1")
    p.add_argument("--coords", help="comma-separated divisor coordinates, e.g. 1,1")
    common(p)
    p.set_defaults(func=_cmd_seshadri)

    p = sub.add_parser("wmob", help="weighted-mobility envelopes for complete intersections")
    p.add_argument("--k", type=int, default=1, help="dimension of the cycle class")
    p.add_argument("--t", type=int, default=2, help="construction refinement parameter (>= 2)")
    p.add_argument("--sweep", help="iterate t over lo:hi")
    p.add_argument("--divisor", action="store_true", help="weighted mobility of the big divisor itself")
    p.add_argument("--input", help="JSON file {variety, H}")
    p.add_argument("--dims")
    p.add_argument("--coords")
    common(p, jobs=True)
    p.set_defaults(func=_cmd_wmob)

    p = sub.add_parser("mc", help="exact divisor mobility count h0 - 1")
    p.add_argument("--input", help="JSON file {variety, L}")
    p.add_argument("--dims")
    p.add_argument("--coords")
    common(p)
    p.set_defaults(func=_cmd_mc)

    p = sub.add_parser("run", help="dispatch a JSON job file {command, payload, output_path}")
    p.add_argument("--input", required=True)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParseError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DegenerateRecursionError as exc:
        print(f"inapplicable: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
