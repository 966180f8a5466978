"""Command-line front end.

    loglogbound bound  --n 4 --R 1 --H 1 --eps 0.5 --majorant constant:c=2.718281828
    loglogbound check  [--registry samples.json] [--grid 201] [--tol 1e-9]
    loglogbound trace  --c 1 --C 5 --z0 0,0.8 [--grid 1001]
    loglogbound curves --majorant doubleexp:alpha=0.5 [--out DIR]

Exit codes: 0 success, 1 malformed input, 2 Levinson condition fails,
3 Domar condition unsatisfiable, 4 a registry sample violates its certificate.
Set ``LEVINSON_CERT_LOG`` to a logging level name for diagnostics on stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import __version__
from .domar import DEFAULT_POLICY, domar_escape_trace, domar_sum_log
from .errors import (
    CertificateError,
    GeometryError,
    LevinsonConditionFails,
    MajorantParseError,
    NoCertificate,
    NonSummableTail,
    PreconditionError,
    QuadratureConfigError,
)
from .grid import SampledField
from .harness import GridConfig, check_sample, default_registry, load_registry, make_boundary_blowup, sample_from_dict
from .majorant import parse_majorant
from .pipeline import CylinderSpec, certify_bound

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_LEVINSON = 2
EXIT_DOMAR = 3
EXIT_VIOLATION = 4

log = logging.getLogger("loglogbound")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class CliConfig:
    command: str
    n: int
    R: float
    H: float
    eps: float
    majorant: Optional[str]
    format: str
    out: Optional[str]
    grid: Optional[int]
    tol: Optional[float]
    registry: Optional[str]

    def cylinder(self) -> CylinderSpec:
        return CylinderSpec(self.n, self.R, self.H, self.eps)


# ---------------------------------------------------------------------------
# deterministic formatting
# ---------------------------------------------------------------------------

def _json_ready(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {str(k): _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, np.generic):
        return _json_ready(obj.item())
    return obj


def format_json(obj) -> str:
    """JSON with floats at 17 significant digits, non-finite values as ``null``."""
    text = json.dumps(_tokenize(_json_ready(obj)), indent=2)
    return _detokenize(text) + "\n"


_TOKENS: List[str] = []


def _tokenize(o):
    if isinstance(o, bool) or o is None:
        return o
    if isinstance(o, float):
        text = format(o, ".17g")
        _TOKENS.append(text if any(ch in text for ch in ".en") else text + ".0")
        return f"\x00{len(_TOKENS) - 1}\x00"
    if isinstance(o, dict):
        return {k: _tokenize(v) for k, v in o.items()}
    if isinstance(o, list):
        return [_tokenize(v) for v in o]
    return o


def _detokenize(text: str) -> str:
    parts = text.split('"\\u0000')
    out = [parts[0]]
    for p in parts[1:]:
        idx, rest = p.split('\\u0000"', 1)
        out.append(_TOKENS[int(idx)] + rest)
    _TOKENS.clear()
    return "".join(out)


def fmt_csv(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".12g") if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    return str(x)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt_csv(v) for v in r])
    return buf.getvalue()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _flatten(d, prefix=""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        elif isinstance(v, list):
            for i, item in enumerate(v):
                if isinstance(item, dict):
                    yield from _flatten(item, f"{key}.{i}.")
                else:
                    yield f"{key}.{i}", item
        else:
            yield key, v


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _require_majorant(cfg: CliConfig):
    if not cfg.majorant:
        raise UsageError("--majorant is required")
    return parse_majorant(cfg.majorant, H=cfg.H)


def cmd_bound(cfg: CliConfig) -> int:
    spec = cfg.cylinder()
    m = _require_majorant(cfg)
    cert = certify_bound(spec, m)
    d = cert.to_dict()
    if cfg.format == "csv":
        _emit(_csv_text(["key", "value"], list(_flatten(d))), cfg.out)
    else:
        _emit(format_json(d), cfg.out)
    return EXIT_OK


def cmd_check(cfg: CliConfig) -> int:
    if cfg.registry is None:
        samples = [sample_from_dict(e) for e in default_registry()]
    else:
        if not Path(cfg.registry).is_file():
            raise UsageError(f"registry file not found: {cfg.registry}")
        samples = load_registry(cfg.registry)
    gc = GridConfig(
        points=cfg.grid or GridConfig.points,
        abs_tol=cfg.tol if cfg.tol is not None else GridConfig.abs_tol,
    )
    rows = []
    bad = []
    for s in samples:
        r = check_sample(s, gc)
        rows.append(
            {
                "name": r.name,
                "n": r.n,
                "residual": r.membership.residual,
                "residual_order": r.membership.residual_order,
                "ratio": r.membership.ratio,
                "membership_ok": r.membership.ok,
                "measured_sup": r.measured_sup,
                "log_bound": r.log_bound,
                "sound": r.sound,
                "message": r.message,
            }
        )
        if not r.sound:
            bad.append(r)
    if cfg.format == "csv":
        header = list(rows[0]) if rows else ["name", "n", "sound"]
        _emit(_csv_text(header, [list(r.values()) for r in rows]), cfg.out)
    else:
        _emit(format_json(rows), cfg.out)
    if not samples:
        print("0 samples", file=sys.stderr)
    for r in bad:
        print(f"violation: {r.name}: {r.message}", file=sys.stderr)
    if bad:
        return EXIT_VIOLATION
    if samples:
        print(f"{len(samples)} samples, all sound", file=sys.stderr)
    return EXIT_OK


def cmd_trace(cfg: CliConfig, c: float, C: float, z0) -> int:
    """Escape trace on ``log|f|`` for the strip blowup sample with half-width ``H``."""
    b = cfg.H
    N = cfg.grid or 1001
    s = make_boundary_blowup(c, b, R=cfg.R)
    m = parse_majorant(cfg.majorant, H=b) if cfg.majorant else s.majorant
    # the top row y = b is the singular boundary; stop one spacing short
    top = b - 2.0 * b / N
    v = SampledField.from_function(s.log_abs, [(-cfg.R, cfg.R), (-b, top)], [N, N], names=("x", "y"), tag="log|f|")
    trace = domar_escape_trace(v, z0, C, m, b)
    if cfg.format == "json":
        _emit(
            format_json(
                {
                    "points": [list(p) for p in trace.points],
                    "levels": trace.levels,
                    "radii": trace.radii,
                    "terminated": trace.terminated,
                    "escaped_domain": trace.escaped_domain,
                    "spacing": trace.spacing,
                }
            ),
            cfg.out,
        )
    else:
        rows = [(i, x, y, lv, r) for i, ((x, y), lv, r) in enumerate(zip(trace.points, trace.levels, trace.radii))]
        _emit(_csv_text(["step", "x", "y", "level", "radius"], rows), cfg.out)
    return EXIT_OK


def curve_blocks(m, cfg: CliConfig, points: int):
    """The three plot tables: ``F(t)``, ``S(C)``, and the bound against ``eps``."""
    b = cfg.H
    t = np.logspace(-2, 3, points)
    F = np.atleast_1d(m.distribution_log(np.log(t), b))
    f_rows = list(zip(t, F))

    Cs = np.logspace(-1, 3, points)
    s_rows = []
    for C in Cs:
        ds = domar_sum_log(m, math.log(C), b, DEFAULT_POLICY)
        s_rows.append((C, ds.value, ds.i_max))

    e_rows = []
    top = min(cfg.R, cfg.H)
    for eps in np.linspace(0.1, 0.9, 9) * top:
        try:
            cert = certify_bound(CylinderSpec(cfg.n, cfg.R, cfg.H, float(eps)), m)
            e_rows.append((eps, cert.log_bound, cert.final_bound))
        except NoCertificate:
            e_rows.append((eps, math.inf, None))
    return {
        "distribution": (["t", "F"], f_rows),
        "domar_sum": (["C", "S", "i_max"], s_rows),
        "bound_vs_eps": (["eps", "log_bound", "final_bound"], e_rows),
    }


def cmd_curves(cfg: CliConfig) -> int:
    m = _require_majorant(cfg)
    blocks = curve_blocks(m, cfg, cfg.grid or 65)
    if cfg.out:
        outdir = Path(cfg.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for name, (header, rows) in blocks.items():
            (outdir / f"{name}.csv").write_text(_csv_text(header, rows))
    else:
        chunks = [f"# {name}\n" + _csv_text(header, rows) for name, (header, rows) in blocks.items()]
        sys.stdout.write("\n".join(chunks))
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _point(text: str):
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected x,y, got {text!r}") from exc
    return x, y


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=4, help="ambient dimension (default 4)")
    common.add_argument("--R", type=float, default=1.0, help="cylinder radius")
    common.add_argument("--H", type=float, default=1.0, help="cylinder half-height")
    common.add_argument("--eps", type=float, default=0.5, help="margin of the compact target")
    common.add_argument("--majorant", help="majorant spec, e.g. doubleexp:alpha=0.5")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", help="output file (directory for curves)")
    common.add_argument("--grid", type=int, help="grid points per axis")
    common.add_argument("--tol", type=float, help="residual tolerance for check")
    common.add_argument("--registry", help="sample registry JSON for check")

    p = _Parser(prog="loglogbound", description="Certified sup bounds for harmonic functions on cylinders.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("bound", parents=[common], help="certify a bound and print the certificate")
    sub.add_parser("check", parents=[common], help="verify registry samples against their certificates")
    tr = sub.add_parser("trace", parents=[common], help="Domar escape trace on a sampled log|f|")
    tr.add_argument("--c", type=float, default=1.0, help="blowup strength of the sample")
    tr.add_argument("--C", type=float, required=True, help="starting level")
    tr.add_argument("--z0", type=_point, required=True, help="start point x,y")
    sub.add_parser("curves", parents=[common], help="CSV data for F(t), S(C) and bound-vs-eps")
    return p


def _configure_logging():
    level = os.environ.get("LEVINSON_CERT_LOG", "WARNING").upper()
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _configure_logging()
    try:
        args = build_parser().parse_args(argv)
        default_fmt = "csv" if args.command in ("trace", "curves") else "json"
        cfg = CliConfig(
            command=args.command,
            n=args.n,
            R=args.R,
            H=args.H,
            eps=args.eps,
            majorant=args.majorant,
            format=args.format or default_fmt,
            out=args.out,
            grid=args.grid,
            tol=args.tol,
            registry=args.registry,
        )
        if cfg.command in ("bound", "curves"):
            cfg.cylinder()
        if cfg.command == "bound":
            return cmd_bound(cfg)
        if cfg.command == "check":
            return cmd_check(cfg)
        if cfg.command == "trace":
            return cmd_trace(cfg, args.c, args.C, args.z0)
        return cmd_curves(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (LevinsonConditionFails, NonSummableTail) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LEVINSON
    except NoCertificate as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAR
    except (MajorantParseError, PreconditionError, GeometryError, QuadratureConfigError, CertificateError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
