"""Command-line front end.

Every value printed here is produced by the library API with the same
configuration; the CLI only parses arguments, formats output, and maps
outcomes onto exit codes:

  0  success (including sweeps that contain pole rows)
  1  a limit failed to converge or an endpoint fit failed
  2  usage error
  3  a point query landed exactly on a pole
"""

from __future__ import annotations

import argparse
import csv as csv_mod
import io
import json
import math
import sys
from fractions import Fraction
from typing import Optional

import numpy as np

from .climits import CesaroResult, cesaro_limit, cesaro_limit_discrete
from .config import DEFAULT_CONFIG, LimitConfig
from .errors import (FitFailureError, IllegalCancellationError,
                     NotConvergentError, PoleSignal, SAtPoleError, is_pole)
from .integrals import DomainSpec, SingularPoint, cesaro_integral, \
    mellin_1_over_1px
from .seqfun import (alt_naturals, alt_ones, n_pow_minus_s, naturals, ones,
                     psum_function, zero_padded)
from .zeta import (eta, zeta, zeta_discrete_corrected, zeta_discrete_ext,
                   zeta_residue_at_1)
from .climits import clim_k_alpha, clim_x_alpha

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_POLE = 3


# ---------------------------------------------------------------------------
# Series grammar

def parse_series(text: str):
    """ones | alt_ones | n | alt_n | n_pow(re[,im]) | zero_padded(series,p,...)"""
    text = text.strip()
    if text == "ones":
        return ones()
    if text == "alt_ones":
        return alt_ones()
    if text == "n":
        return naturals()
    if text == "alt_n":
        return alt_naturals()
    if text.startswith("n_pow(") and text.endswith(")"):
        body = text[len("n_pow("):-1]
        parts = [p.strip() for p in body.split(",")]
        if len(parts) not in (1, 2):
            raise ValueError(f"n_pow takes (re) or (re,im), got {body!r}")
        re = float(parts[0])
        im = float(parts[1]) if len(parts) == 2 else 0.0
        s = re + 1j * im if im else re
        return n_pow_minus_s(-s)
    if text.startswith("zero_padded(") and text.endswith(")"):
        body = text[len("zero_padded("):-1]
        depth = 0
        split_at = None
        for i, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                split_at = i
                break
        if split_at is None:
            raise ValueError("zero_padded needs a series and a 0/1 pattern")
        inner = parse_series(body[:split_at])
        bits = [p.strip() for p in body[split_at + 1:].split(",")]
        if not bits or any(b not in ("0", "1") for b in bits):
            raise ValueError(f"pattern must be a comma list of 0/1, got "
                             f"{body[split_at + 1:]!r}")
        return zero_padded(inner, tuple(int(b) for b in bits))
    raise ValueError(f"unknown series {text!r}")


def series_dirichlet_s(text: str) -> Optional[complex]:
    """Dirichlet exponent such that the series terms are n^{-s}, if known.

    Power series have a known partial-sum expansion, which is what lets
    the generalised driver assign them a value; alternating and padded
    series are handled by pure averaging instead and return None here.
    """
    text = text.strip()
    if text == "ones":
        return 0.0
    if text == "n":
        return -1.0
    if text.startswith("n_pow(") and text.endswith(")"):
        parts = [p.strip() for p in text[len("n_pow("):-1].split(",")]
        re = float(parts[0])
        im = float(parts[1]) if len(parts) == 2 else 0.0
        return complex(-re, -im) if im else -re
    return None


def parse_scalar(text: str):
    """'re' or 're,im' -> float or complex."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        return float(parts[0])
    if len(parts) == 2:
        re, im = float(parts[0]), float(parts[1])
        return complex(re, im) if im else re
    raise ValueError(f"scalar must be re or re,im, got {text!r}")


# ---------------------------------------------------------------------------
# Formatting

def format_scalar(v, digits: int) -> str:
    if isinstance(v, Fraction):
        return str(v)
    vc = complex(v)
    if vc.imag:
        return (f"{vc.real:.{digits}g}"
                + (f"+{vc.imag:.{digits}g}j" if vc.imag >= 0
                   else f"{vc.imag:.{digits}g}j"))
    return f"{vc.real:.{digits}g}"


def emit_record(record: dict, fmt: str, digits: int, out=None):
    out = out or sys.stdout
    if fmt == "json":
        def default(o):
            if isinstance(o, Fraction):
                return str(o)
            if isinstance(o, complex):
                return {"re": o.real, "im": o.imag}
            if isinstance(o, (np.floating, np.integer)):
                return float(o)
            return str(o)
        json.dump(record, out, default=default, indent=2)
        out.write("\n")
        return
    if fmt == "csv":
        writer = csv_mod.writer(out)
        writer.writerow(list(record))
        writer.writerow([repr(v) if isinstance(v, float) else str(v)
                         for v in record.values()])
        return
    width = max(len(k) for k in record)
    for k, v in record.items():
        if isinstance(v, (int, float, complex, Fraction)) \
                and not isinstance(v, bool):
            v = format_scalar(v, digits)
        out.write(f"{k:<{width}}  {v}\n")


def emit_rows(header, rows, fmt: str, digits: int, out=None):
    out = out or sys.stdout
    if fmt == "json":
        docs = [dict(zip(header, row)) for row in rows]
        emit_record({"rows": docs}, "json", digits, out)
        return
    if fmt == "csv":
        writer = csv_mod.writer(out)
        writer.writerow(header)
        for row in rows:
            writer.writerow(["" if v is None
                             else repr(v) if isinstance(v, float)
                             else str(v) for v in row])
        return
    cells = [["" if v is None
              else format_scalar(v, digits)
              if isinstance(v, (int, float, complex, Fraction))
              and not isinstance(v, bool) else str(v) for v in row]
             for row in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h)
              for i, h in enumerate(header)]
    out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)) + "\n")
    for c in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(c, widths)) + "\n")


# ---------------------------------------------------------------------------
# Configuration plumbing

def build_cfg(args) -> LimitConfig:
    cfg = DEFAULT_CONFIG
    overrides = {}
    if args.horizon is not None:
        overrides["horizon"] = args.horizon
    if args.tol is not None:
        overrides["tail_tolerance"] = args.tol
    if args.max_power is not None:
        overrides["max_pure_power"] = args.max_power
    if args.exact:
        overrides["exact_mode"] = True
    return cfg.with_(**overrides) if overrides else cfg


def add_common(p: argparse.ArgumentParser):
    p.add_argument("--horizon", type=int, default=None,
                   help="tail horizon for limit extraction")
    p.add_argument("--tol", type=float, default=None,
                   help="tail tolerance override")
    p.add_argument("--max-power", type=int, default=None,
                   help="maximum averaging escalation depth")
    p.add_argument("--exact", action="store_true",
                   help="snap recognizable rationals and keep them exact")
    p.add_argument("--digits", type=int, default=12,
                   help="significant digits for table output")
    p.add_argument("--dump-expansion", action="store_true",
                   help="include removed terms and diagnostics in the output")
    p.add_argument("--format", choices=("table", "csv", "json"),
                   default="table")


# ---------------------------------------------------------------------------
# Verbs

def _pole_record(value: PoleSignal) -> dict:
    rec = {"status": "pole", "log_power": value.log_power}
    if value.residue is not None:
        rec["residue"] = value.residue
    if value.detail:
        rec["detail"] = value.detail
    return rec


def cmd_sum(args) -> int:
    cfg = build_cfg(args)
    series = parse_series(args.series)
    f = psum_function(series)
    try:
        result = cesaro_limit(f, None, cfg)
    except NotConvergentError:
        # pure power series: their value is the zeta continuation, which
        # carries its own dual-route cross-check
        s_dir = series_dirichlet_s(args.series)
        if s_dir is None:
            raise
        ev = zeta(s_dir, cfg)
        if is_pole(ev.value):
            emit_record(_pole_record(ev.value), args.format, args.digits)
            return EXIT_POLE
        result = CesaroResult(limit=ev.value, mechanism=ev.path,
                              q_used=ev.q_used, diagnostics=ev.diagnostics)
    if is_pole(result.limit):
        emit_record(_pole_record(result.limit), args.format, args.digits)
        return EXIT_POLE
    rec = {"value": result.limit, "mechanism": result.mechanism}
    if args.dump_expansion:
        rec["removed_terms"] = repr(result.removed_terms)
        rec["q"] = result.q_used.describe() if result.q_used else ""
        rec["diagnostics"] = repr(result.diagnostics)
    emit_record(rec, args.format, args.digits)
    return EXIT_OK


def cmd_limit(args) -> int:
    cfg = build_cfg(args)
    series = parse_series(args.series)
    terms = [complex(v) for v in series.term_array(min(cfg.horizon, 10 ** 5))]
    if all(abs(t.imag) < 1e-15 for t in terms):
        terms = [t.real for t in terms]
    s_dir = series_dirichlet_s(args.series)
    # a pure power sequence is its own (known-coefficient) divergent content
    decomposition = [] if s_dir is None else [(1.0, -complex(s_dir))]
    result = cesaro_limit_discrete(terms, decomposition, cfg)
    if is_pole(result.limit):
        emit_record(_pole_record(result.limit), args.format, args.digits)
        return EXIT_POLE
    rec = {"value": result.limit, "mechanism": result.mechanism}
    if args.dump_expansion:
        rec["removed_terms"] = repr(result.removed_terms)
        rec["diagnostics"] = repr(result.diagnostics)
    emit_record(rec, args.format, args.digits)
    return EXIT_OK


def cmd_zeta(args) -> int:
    cfg = build_cfg(args)
    s = parse_scalar(args.s)
    if args.corrected:
        s_int = int(round(complex(s).real))
        value = zeta_discrete_corrected(s_int, cfg)
        emit_record({"value": value, "path": "discrete-corrected"},
                    args.format, args.digits)
        return EXIT_OK
    fn = zeta_discrete_ext if args.discrete else zeta
    try:
        ev = fn(s, cfg)
    except SAtPoleError:
        rec = {"status": "pole", "residue": 1, "detail": "pole at s = 1"}
        emit_record(rec, args.format, args.digits)
        return EXIT_POLE
    if is_pole(ev.value):
        emit_record(_pole_record(ev.value), args.format, args.digits)
        return EXIT_POLE
    rec = {"value": ev.value, "path": ev.path}
    if args.discrete:
        rec["anomaly"] = ev.anomaly
    if args.dump_expansion:
        rec["q"] = ev.q_used.describe() if ev.q_used else ""
        rec["diagnostics"] = repr(ev.diagnostics)
    emit_record(rec, args.format, args.digits)
    return EXIT_OK


def cmd_eta(args) -> int:
    cfg = build_cfg(args)
    value = eta(parse_scalar(args.s), cfg)
    emit_record({"value": value}, args.format, args.digits)
    return EXIT_OK


FUNCTION_REGISTRY = {
    "exp": (lambda x: math.exp(-x), "e^-x"),
    "gauss": (lambda x: math.exp(-x * x), "e^-x^2"),
    "one_over_x": (lambda x: 1.0 / x, "1/x"),
}


def _registry_fn(name: str):
    if name in FUNCTION_REGISTRY:
        return FUNCTION_REGISTRY[name][0]
    if name.startswith("mellin(") and name.endswith(")"):
        s = parse_scalar(name[len("mellin("):-1])
        sc = complex(s)
        if sc.imag:
            return lambda x: complex(x) ** (sc - 1) / (1 + x)
        return lambda x: x ** (sc.real - 1) / (1 + x)
    raise ValueError(f"unknown builtin function {name!r}; have "
                     + ", ".join(sorted(FUNCTION_REGISTRY)) + ", mellin(s)")


def _spec_from_json(doc) -> DomainSpec:
    points = []
    for entry in doc:
        points.append(SingularPoint(
            kind=entry["kind"],
            z0=entry.get("z0"),
            fit_exponents=tuple(entry.get("fit_exponents", ()))))
    return DomainSpec(points=tuple(points))


def cmd_integral(args) -> int:
    cfg = build_cfg(args)
    f = _registry_fn(args.f)
    doc = json.loads(args.spec)
    spec = _spec_from_json(doc)
    out = cesaro_integral(f, spec, cfg, strict_cutoffs=args.strict_cutoffs)
    if is_pole(out.value):
        rec = _pole_record(out.value)
        rec["log_flags"] = ",".join(out.log_flags)
        emit_record(rec, args.format, args.digits)
        return EXIT_POLE
    rec = {"value": out.value, "cutoff_variables": out.cutoff_variables}
    if args.dump_expansion:
        rec["per_endpoint"] = repr(out.per_endpoint)
    emit_record(rec, args.format, args.digits)
    return EXIT_OK


def cmd_mellin(args) -> int:
    cfg = build_cfg(args)
    value = mellin_1_over_1px(parse_scalar(args.s), cfg)
    if is_pole(value):
        emit_record(_pole_record(value), args.format, args.digits)
        return EXIT_POLE
    emit_record({"value": value}, args.format, args.digits)
    return EXIT_OK


SWEEPABLE = ("zeta", "zeta-discrete", "eta", "mellin")


def cmd_sweep(args) -> int:
    cfg = build_cfg(args)
    if args.count < 1:
        raise ValueError("sweep needs a nonempty grid (count >= 1)")
    if args.count == 1:
        grid = [args.start]
    else:
        step = (args.stop - args.start) / (args.count - 1)
        grid = [args.start + i * step for i in range(args.count)]
    rows = []
    for s in grid:
        path = ""
        removed = 0
        status = "ok"
        value = None
        try:
            if args.target == "zeta":
                ev = zeta(s, cfg)
                value, path = ev.value, ev.path
                removed = ev.q_used.degree if ev.q_used else 0
            elif args.target == "zeta-discrete":
                ev = zeta_discrete_ext(s, cfg)
                value, path = ev.value, ev.path
            elif args.target == "eta":
                value = eta(s, cfg)
            else:
                value = mellin_1_over_1px(s, cfg)
        except (SAtPoleError,) as exc:
            status = "pole"
        except (NotConvergentError, FitFailureError) as exc:
            status = f"error: {exc}"
        if value is not None and is_pole(value):
            status = "pole"
            value = None
        if value is None:
            rows.append((s, None, None, path, removed, status))
        else:
            vc = complex(value)
            rows.append((s, vc.real, vc.imag, path, removed, status))
    emit_rows(("s", "value_re", "value_im", "path", "removed", "status"),
              rows, args.format, args.digits)
    return EXIT_OK


def cmd_table(args) -> int:
    rows = []
    for delta in range(0, args.max_delta + 1):
        for r in range(0, args.max_r + 1):
            if args.kind == "k":
                v = clim_k_alpha(delta, r)
            else:
                v = clim_x_alpha(delta, r)
            rows.append((delta, r, v))
    emit_rows(("delta", "r", "limit"), rows, args.format, args.digits)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cesaro",
        description="Generalised Cesaro limits, zeta/eta continuation, and "
                    "regularized integrals.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("sum", help="generalised value of a series")
    p.add_argument("series", help="ones | alt_ones | n | alt_n | "
                                  "n_pow(re[,im]) | zero_padded(series,p,...)")
    add_common(p)
    p.set_defaults(fn=cmd_sum)

    p = sub.add_parser("limit", help="generalised limit of a sequence")
    p.add_argument("series")
    add_common(p)
    p.set_defaults(fn=cmd_limit)

    p = sub.add_parser("zeta", help="zeta continuation at s")
    p.add_argument("--s", required=True, help="re or re,im")
    p.add_argument("--discrete", action="store_true",
                   help="discrete-operator evaluation (anomalous at "
                        "nonpositive integers)")
    p.add_argument("--corrected", action="store_true",
                   help="anomaly-corrected discrete value at integer s")
    add_common(p)
    p.set_defaults(fn=cmd_zeta)

    p = sub.add_parser("eta", help="alternating zeta at s")
    p.add_argument("--s", required=True)
    add_common(p)
    p.set_defaults(fn=cmd_eta)

    p = sub.add_parser("integral", help="regularized integral of a builtin")
    p.add_argument("--f", required=True)
    p.add_argument("--spec", required=True,
                   help='JSON list of singular points, e.g. '
                        '[{"kind":"zero"},{"kind":"infinity"}]')
    p.add_argument("--strict-cutoffs", action="store_true")
    add_common(p)
    p.set_defaults(fn=cmd_integral)

    p = sub.add_parser("mellin", help="Mellin transform of 1/(1+x) at s")
    p.add_argument("--s", required=True)
    add_common(p)
    p.set_defaults(fn=cmd_mellin)

    p = sub.add_parser("sweep", help="evaluate over a real parameter grid")
    p.add_argument("target", choices=SWEEPABLE)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--count", type=int, required=True)
    add_common(p)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("table", help="closed-form mixed-coordinate limits")
    p.add_argument("--kind", choices=("k", "x"), default="k")
    p.add_argument("--max-delta", type=int, default=4)
    p.add_argument("--max-r", type=int, default=4)
    add_common(p)
    p.set_defaults(fn=cmd_table)
    return parser


#: flags whose values are often negative numbers; fused with "=" before
#: parsing so argparse does not mistake "-1,0" for an option
_NUMERIC_FLAGS = ("--s", "--start", "--stop", "--tol")


def _fuse_numeric_flags(argv):
    out = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in _NUMERIC_FLAGS and i + 1 < len(argv) \
                and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            skip = True
        else:
            out.append(tok)
    return out


def run(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _fuse_numeric_flags(list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (NotConvergentError, FitFailureError,
            IllegalCancellationError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
