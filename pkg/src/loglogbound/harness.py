"""Harmonic test fields with known majorants, and numerical checks against certificates.

Every sample is described by a *core* function of two variables:

* ``planar``: ``u(a, h)`` harmonic in the ``(x1, y)`` plane, extended constantly
  in the remaining ``x``-coordinates;
* ``axial``: ``u(rho, h)`` solving the Euler-Darboux equation of dimension
  ``core_n``, extended constantly in the coordinates beyond the first
  ``core_n - 1``.

Constant extension keeps the field harmonic and leaves both its sup over a
sub-cylinder and its majorant unchanged, so all checks run on the 2-D core.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .errors import GeometryError, LevinsonConditionFails, MajorantParseError, PreconditionError
from .majorant import Constant, ExpBlowup, Majorant, Scaled, parse_majorant
from .pipeline import CylinderSpec, certify_bound
from .reduction import euler_darboux_residual, laplacian_residual

__all__ = [
    "GridConfig",
    "Generator",
    "HarmonicSample",
    "MembershipReport",
    "SampleCheck",
    "parse_generator",
    "make_boundary_blowup",
    "make_axial_from_2d",
    "make_harmonic_polynomial",
    "make_point_source",
    "pad",
    "verify_membership",
    "measured_sup",
    "check_sample",
    "default_registry",
    "sample_from_dict",
    "load_registry",
    "save_registry",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)


@dataclass(frozen=True)
class GridConfig:
    """Grid sizes and tolerances for the numerical checks.

    ``points`` nodes per axis for membership (the residual is also computed
    at twice the resolution to measure its order); ``sup_points`` nodes per
    axis for sup measurements (odd, so the coarse Richardson grid is a subgrid).
    """

    points: int = 201
    sup_points: int = 401
    abs_tol: float = 1e-9
    min_order: float = 1.5
    ratio_tol: float = 1e-9

    def __post_init__(self):
        if self.points < 5 or self.sup_points < 5:
            raise PreconditionError("grids need at least 5 points per axis")
        if self.sup_points % 2 == 0:
            raise PreconditionError("sup_points must be odd")


@dataclass(frozen=True)
class HarmonicSample:
    name: str
    family: str
    params: dict
    spec: CylinderSpec
    majorant: Majorant
    core: str
    core_n: int
    u: Callable = field(repr=False, compare=False)
    # log|u|, for fields whose modulus overflows before its logarithm does
    log_abs: Optional[Callable] = field(default=None, repr=False, compare=False)
    # pointwise log-bound in h replacing log M(|h|) for membership
    profile_log: Optional[Callable] = field(default=None, repr=False, compare=False)
    # exact PDE residual for polynomial samples
    exact_residual: Optional[Callable] = field(default=None, repr=False, compare=False)
    theorem1: bool = True

    @property
    def n(self) -> int:
        return self.spec.n

    def evaluate(self, x, y):
        """Field value at points ``x`` (trailing axis of length ``n - 1``) and heights ``y``."""
        x = np.asarray(x, dtype=float)
        if self.core == "planar":
            return self.u(x[..., 0], np.asarray(y, dtype=float))
        rho = np.linalg.norm(x[..., : self.core_n - 1], axis=-1)
        return self.u(rho, np.asarray(y, dtype=float))

    def log_modulus(self, a, h):
        if self.log_abs is not None:
            return self.log_abs(a, h)
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.u(a, h)))

    def bound_log(self, h):
        if self.profile_log is not None:
            return self.profile_log(h)
        return self.majorant.log_value(np.abs(h))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "family": self.family,
            "params": dict(self.params),
            "spec": self.spec.to_dict(),
            "majorant": self.majorant.spec,
        }


# ---------------------------------------------------------------------------
# generators for the four-dimensional axial family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    """Holomorphic closed form ``F`` with derivative ``dF``."""

    name: str
    params: dict
    F: Callable = field(repr=False, compare=False)
    dF: Callable = field(repr=False, compare=False)

    @property
    def spec(self) -> str:
        body = ",".join(f"{k}={v!r}" for k, v in sorted(self.params.items()))
        return f"{self.name}:{body}"

    def check_domain(self, R: float, H: float) -> None:
        if self.name == "blowup" and not self.params["b"] > R:
            raise GeometryError(f"blowup generator is singular at i*b with b={self.params['b']} <= R={R}")
        hh, tt = np.meshgrid(np.linspace(-H, H, 65), np.linspace(-R, R, 65))
        with np.errstate(all="ignore"):
            vals = self.F(hh + 1j * tt)
        if not np.all(np.isfinite(vals)):
            raise GeometryError(f"generator {self.spec} is not finite on the reflected rectangle")

    def axial_majorant(self, R: float, H: float) -> Majorant:
        """Bound on ``|u| <= 2 sup |F'|`` over the segment ``h + i t``, ``|t| <= R``."""
        if self.name == "power":
            p = self.params["p"]
            return Constant(2.0 * p * math.hypot(R, H) ** (p - 1), H=H)
        c, b = self.params["c"], self.params["b"]
        if c == 0:
            return Constant(0.0, H=H)
        # |F(h + it)| <= exp(c / (2|h|)) and |F'| <= |F| c / (b - R)**2
        return Scaled(ExpBlowup(1.0, H=H, a=c / 2.0), 2.0 * c / (b - R) ** 2)


def parse_generator(text: str) -> Generator:
    """``power:p=3`` for ``zeta**p`` or ``blowup:c=1,b=1`` for ``exp(-i c / (zeta - i b))``."""
    name, _, body = text.partition(":")
    params = {}
    for part in filter(None, body.split(",")):
        k, _, v = part.partition("=")
        try:
            params[k.strip()] = float(v)
        except ValueError as exc:
            raise MajorantParseError(f"bad generator parameter {part!r}") from exc
    if name == "power":
        p = int(params.get("p", 1))
        if p < 1:
            raise MajorantParseError("power generator needs p >= 1")
        return Generator("power", {"p": p}, lambda z: z**p, lambda z: p * z ** (p - 1))
    if name == "blowup":
        try:
            c, b = params["c"], params["b"]
        except KeyError as exc:
            raise MajorantParseError(f"blowup generator needs {exc}") from exc
        if c < 0 or not b > 0:
            raise MajorantParseError("blowup generator needs c >= 0 and b > 0")

        def F(z):
            return np.exp(-1j * c / (z - 1j * b))

        def dF(z):
            return F(z) * 1j * c / (z - 1j * b) ** 2

        return Generator("blowup", {"c": c, "b": b}, F, dF)
    raise MajorantParseError(f"unknown generator {text!r}")


# ---------------------------------------------------------------------------
# sample constructors
# ---------------------------------------------------------------------------

def make_boundary_blowup(
    c: float,
    b: float,
    R: Optional[float] = None,
    H: Optional[float] = None,
    eps: Optional[float] = None,
    orientation: str = "strip",
) -> HarmonicSample:
    """``f(z) = exp(-i c / (z - i b))`` with ``|f| = exp(c (b - Im z) / |z - i b|**2)``.

    ``strip``: ``z = x + i y`` on ``|y| < b``; membership is checked against the
    one-sided profile ``exp(c / (b - y))`` and the declared majorant is its
    equimeasurable rearrangement ``exp(c / (2|y|))``, which has the same
    distribution function.  Not a member of the symmetric class, so it only
    feeds the two-dimensional certificate.

    ``axis``: ``u(x, y) = Re f(y + i x)`` on ``|x| < R < b``, where
    ``|f| <= exp(c / (2|y|))`` by the AM-GM inequality.
    """
    if c < 0 or not b > 0:
        raise PreconditionError("boundary blowup needs c >= 0 and b > 0")
    params = {"c": c, "b": b, "orientation": orientation}
    if orientation == "strip":
        R = 1.0 if R is None else R
        spec = CylinderSpec(2, R, b, b / 2.0 if eps is None else eps)
        maj = ExpBlowup(1.0, H=b, a=c / 2.0) if c > 0 else Constant(1.0, H=b)

        def u(a, h):
            return np.exp(-1j * c / (a + 1j * h - 1j * b))

        def log_abs(a, h):
            s = b - h
            return c * s / (a * a + s * s)

        def profile_log(h):
            with np.errstate(divide="ignore"):
                return c / (b - np.asarray(h, dtype=float))

        return HarmonicSample(
            f"blowup2d-strip(c={c:g},b={b:g})", "blowup2d", params, spec, maj, "planar", 2,
            u, log_abs=log_abs, profile_log=profile_log, theorem1=False,
        )
    if orientation == "axis":
        R = b / 2.0 if R is None else R
        H = b if H is None else H
        if not R < b:
            raise GeometryError(f"axis orientation needs R < b, got R={R}, b={b}")
        spec = CylinderSpec(2, R, H, min(R, H) / 2.0 if eps is None else eps)
        maj = ExpBlowup(1.0, H=H, a=c / 2.0) if c > 0 else Constant(1.0, H=H)

        def u(a, h):
            return np.exp(-1j * c / (h + 1j * a - 1j * b)).real

        return HarmonicSample(f"blowup2d-axis(c={c:g},b={b:g})", "blowup2d", params, spec, maj, "planar", 2, u)
    raise PreconditionError(f"unknown orientation {orientation!r}")


def make_axial_from_2d(generator, spec: CylinderSpec) -> HarmonicSample:
    """Axially symmetric harmonic field in R^4 from a holomorphic generator ``F``.

    With ``zeta = h + i rho`` the odd planar harmonic is
    ``v(rho, h) = Im F(h + i rho) - Im F(h - i rho)`` and
    ``u = v / rho = int_{-1}^{1} Re F'(h + i rho s) ds``, evaluated by
    Gauss-Legendre quadrature; at ``rho = 0`` this is exactly ``2 Re F'(h)``.
    """
    if spec.n != 4:
        raise PreconditionError("make_axial_from_2d builds four-dimensional samples; pad afterwards")
    gen = parse_generator(generator) if isinstance(generator, str) else generator
    gen.check_domain(spec.R, spec.H)

    def u(rho, h):
        rho = np.asarray(rho, dtype=float)[..., None]
        h = np.asarray(h, dtype=float)[..., None]
        vals = gen.dF(h + 1j * rho * _GL_NODES).real
        return vals @ _GL_WEIGHTS

    return HarmonicSample(
        f"axial4({gen.spec})", "axial_from_2d", {"generator": gen.spec}, spec,
        gen.axial_majorant(spec.R, spec.H), "axial", 4, u,
    )


def make_harmonic_polynomial(coeffs: Sequence[Tuple[int, int, float]], core_n: int, spec: CylinderSpec) -> HarmonicSample:
    """``u = sum c * rho**i * h**j`` (``i`` even) solving the Euler-Darboux equation of ``core_n``.

    The declared majorant is the constant ``sum |c| R**i H**j``.
    """
    terms = [(int(i), int(j), float(c)) for i, j, c in coeffs]
    if any(i % 2 or i < 0 or j < 0 for i, j, _ in terms):
        raise PreconditionError("polynomial exponents must be non-negative with even powers of rho")
    if spec.n < core_n:
        raise PreconditionError(f"cannot realize a {core_n}-dimensional field in dimension {spec.n}")

    def u(rho, h):
        rho = np.asarray(rho, dtype=float)
        h = np.asarray(h, dtype=float)
        return sum(c * rho**i * h**j for i, j, c in terms) + 0.0 * (rho + h)

    # Euler-Darboux operator applied monomial by monomial
    lap = {}
    for i, j, c in terms:
        if i >= 2:
            key = (i - 2, j)
            lap[key] = lap.get(key, 0.0) + c * i * (i + core_n - 3)
        if j >= 2:
            key = (i, j - 2)
            lap[key] = lap.get(key, 0.0) + c * j * (j - 1)

    def exact_residual(rho, h):
        return sum(c * np.asarray(rho) ** i * np.asarray(h) ** j for (i, j), c in lap.items()) + 0.0 * (rho + h)

    bound = sum(abs(c) * spec.R**i * spec.H**j for i, j, c in terms)
    label = " + ".join(f"{c:g}*rho^{i}*h^{j}" for i, j, c in terms) or "0"
    return HarmonicSample(
        f"poly{core_n}({label})", "polynomial", {"coeffs": [list(t) for t in terms], "core_n": core_n},
        spec, Constant(bound, H=spec.H), "axial", core_n, u, exact_residual=exact_residual,
    )


def make_point_source(pole: float, core_n: int, spec: CylinderSpec) -> HarmonicSample:
    """Fundamental solution centred at ``(0, pole)`` on the axis, ``|pole| > H``."""
    if not abs(pole) > spec.H:
        raise GeometryError(f"pole {pole} must lie outside |y| < {spec.H}")
    if spec.n < core_n or core_n < 2:
        raise PreconditionError(f"cannot realize a {core_n}-dimensional point source in dimension {spec.n}")
    near = abs(pole) - spec.H
    far = math.hypot(spec.R, abs(pole) + spec.H)
    if core_n == 2:

        def u(rho, h):
            return 0.5 * np.log(np.asarray(rho) ** 2 + (np.asarray(h) - pole) ** 2)

        bound = max(abs(math.log(near)), abs(math.log(far)))
    else:
        p = 0.5 * (2 - core_n)

        def u(rho, h):
            return (np.asarray(rho) ** 2 + (np.asarray(h) - pole) ** 2) ** p

        bound = near ** (2 - core_n)
    return HarmonicSample(
        f"source{core_n}(pole={pole:g})", "point_source", {"pole": pole, "core_n": core_n},
        spec, Constant(bound, H=spec.H), "axial", core_n, u,
    )


def pad(s: HarmonicSample, n: int) -> HarmonicSample:
    """Same field seen in dimension ``n`` through fake coordinates."""
    if n < s.core_n:
        raise PreconditionError(f"cannot pad a {s.core_n}-dimensional core down to n={n}")
    spec = replace(s.spec, n=n)
    name = s.name if n == s.spec.n else f"{s.name}@n={n}"
    return replace(s, spec=spec, name=name)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

class MembershipReport(NamedTuple):
    residual: float
    residual_order: float
    ratio: float
    ok: bool


class SampleCheck(NamedTuple):
    name: str
    n: int
    membership: MembershipReport
    measured_sup: float
    log_bound: float
    sound: bool
    message: str = ""


def _residual(s: HarmonicSample, rw: float, hw: float, points: int) -> Tuple[float, float]:
    """Max PDE residual on the window relative to max |u| there, and its rounding floor.

    Second differences of exact data still carry rounding error of order
    ``eps_mach / g**2``; residuals below that floor count as zero.
    """
    h_axis = np.linspace(-hw, hw, points)
    if s.core == "planar":
        a_axis = np.linspace(-rw, rw, points)
        A, Hh = np.meshgrid(a_axis, h_axis, indexing="ij")
        vals = s.u(A, Hh)
        res = laplacian_residual(vals, (a_axis[1] - a_axis[0], h_axis[1] - h_axis[0]))
    else:
        # the axis is a coordinate singularity: start one spacing away
        g = rw / (points - 1)
        a_axis = np.linspace(g, rw, points)
        A, Hh = np.meshgrid(a_axis, h_axis, indexing="ij")
        vals = s.u(A, Hh)
        if s.exact_residual is not None:
            res = s.exact_residual(A, Hh)
        else:
            res = euler_darboux_residual(s.u, s.core_n, a_axis, h_axis)
    scale = max(float(np.max(np.abs(vals))), 1.0)
    g = min(a_axis[1] - a_axis[0], h_axis[1] - h_axis[0])
    floor = 256.0 * np.finfo(float).eps / g**2
    return float(np.max(np.abs(res))) / scale, floor


def verify_membership(s: HarmonicSample, grid_cfg: GridConfig = GridConfig()) -> MembershipReport:
    """PDE residual on ``K`` and the domination ratio ``|u| / M`` on the open cylinder.

    The residual passes when it is below ``abs_tol`` (or the rounding floor of
    the grid) or decays at order at least ``min_order`` from ``points`` to ``2 * points - 1`` nodes per axis.
    """
    rw, hw = s.spec.K
    coarse, floor = _residual(s, rw, hw, grid_cfg.points)
    tol = max(grid_cfg.abs_tol, floor)
    if coarse <= tol:
        fine, order = coarse, math.inf
    else:
        fine, floor = _residual(s, rw, hw, 2 * grid_cfg.points - 1)
        order = math.log2(coarse / fine) if fine > 0 else math.inf
    res_ok = fine <= max(grid_cfg.abs_tol, floor) or order >= grid_cfg.min_order

    R, H = s.spec.R, s.spec.H
    N = grid_cfg.points
    h_axis = np.linspace(-H, H, N + 2)[1:-1]
    a_axis = np.linspace(-R, R, N + 2)[1:-1] if s.core == "planar" else np.linspace(0.0, R, N + 1)[:-1]
    A, Hh = np.meshgrid(a_axis, h_axis, indexing="ij")
    with np.errstate(all="ignore"):
        gap = s.log_modulus(A, Hh) - s.bound_log(Hh)
    gap = np.where(np.isnan(gap), -np.inf, gap)
    ratio = float(np.exp(np.max(gap)))
    ratio_ok = bool(np.max(gap) <= math.log1p(grid_cfg.ratio_tol))
    return MembershipReport(fine, order, ratio, bool(res_ok and ratio_ok))


def measured_sup(s: HarmonicSample, K: Tuple[float, float], grid_cfg: GridConfig = GridConfig()) -> float:
    """``max |u|`` over the nodal grid of ``K = {|x| <= K[0], |y| <= K[1]}`` plus a Richardson bias term.

    The bias is the gap between the fine grid and its every-other-node subgrid;
    adding it keeps under-sampling from hiding a violation.
    """
    rx, hy = K
    R, H = s.spec.R, s.spec.H
    if not (0 <= rx < R and 0 <= hy < H):
        raise GeometryError(f"K = {K} is not inside the cylinder (R={R}, H={H})")
    N = grid_cfg.sup_points
    h_axis = np.linspace(-hy, hy, N)
    a_axis = np.linspace(-rx, rx, N) if s.core == "planar" else np.linspace(0.0, rx, N)
    A, Hh = np.meshgrid(a_axis, h_axis, indexing="ij")
    vals = np.abs(s.u(A, Hh))
    fine = float(np.max(vals))
    coarse = float(np.max(vals[::2, ::2]))
    return fine + abs(fine - coarse)


def check_sample(s: HarmonicSample, grid_cfg: GridConfig = GridConfig()) -> SampleCheck:
    """Membership, then ``measured_sup(K) <= final_bound`` compared in log form."""
    rep = verify_membership(s, grid_cfg)
    if not rep.ok:
        msg = f"membership fails: residual={rep.residual:.3g} (order {rep.residual_order:.3g}), ratio={rep.ratio:.6g}"
        return SampleCheck(s.name, s.n, rep, math.nan, math.nan, False, msg)
    sup = measured_sup(s, s.spec.K, grid_cfg)
    try:
        cert = certify_bound(s.spec, s.majorant)
    except LevinsonConditionFails as exc:
        return SampleCheck(s.name, s.n, rep, sup, math.inf, False, str(exc))
    log_sup = math.log(sup) if sup > 0 else -math.inf
    sound = log_sup <= cert.log_bound
    msg = "" if sound else f"measured sup {sup:.6g} exceeds certified bound exp({cert.log_bound:.6g})"
    return SampleCheck(s.name, s.n, rep, sup, cert.log_bound, sound, msg)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def sample_from_dict(d: dict, base_dir: Optional[Path] = None) -> HarmonicSample:
    """Build a sample from a registry entry ``{name?, family, params, spec, majorant?}``.

    ``majorant`` overrides the declared majorant, e.g. to plant a violation.
    """
    fam = d["family"]
    p = dict(d.get("params", {}))
    spec_d = d.get("spec")
    spec = CylinderSpec(**spec_d) if spec_d is not None else None
    if fam == "blowup2d":
        kw = {}
        if spec is not None:
            kw = {"R": spec.R, "eps": spec.eps}
            if p.get("orientation", "strip") == "axis":
                kw["H"] = spec.H
        s = make_boundary_blowup(p["c"], p["b"], orientation=p.get("orientation", "strip"), **kw)
        if spec is not None:
            s = pad(s, spec.n)
    elif fam == "axial_from_2d":
        s = make_axial_from_2d(p["generator"], replace(spec, n=4))
        s = pad(s, spec.n)
    elif fam == "polynomial":
        s = make_harmonic_polynomial(p["coeffs"], int(p.get("core_n", spec.n)), spec)
    elif fam == "point_source":
        s = make_point_source(p["pole"], int(p.get("core_n", spec.n)), spec)
    else:
        raise MajorantParseError(f"unknown sample family {fam!r}")
    if "majorant" in d and d["majorant"] is not None and d["majorant"] != s.majorant.spec:
        m = parse_majorant(d["majorant"], H=s.spec.H, base_dir=base_dir)
        s = replace(s, majorant=m, profile_log=None)
    if "name" in d:
        s = replace(s, name=d["name"])
    return s


def default_registry() -> List[dict]:
    """Majorized samples covering dimensions 2 through 7."""
    cyl = {"R": 0.5, "H": 1.0, "eps": 0.25}
    entries = [
        {"family": "blowup2d", "params": {"c": 1.0, "b": 1.0, "orientation": "axis"}, "spec": {"n": 2, **cyl}},
        {"family": "polynomial", "params": {"coeffs": [[0, 2, 1.0], [2, 0, -1.0]], "core_n": 2}, "spec": {"n": 2, **cyl}},
        {"family": "blowup2d", "params": {"c": 1.0, "b": 1.0, "orientation": "axis"}, "spec": {"n": 3, **cyl}},
        {"family": "polynomial", "params": {"coeffs": [[0, 2, 2.0], [2, 0, -1.0]], "core_n": 3}, "spec": {"n": 3, **cyl}},
        {"family": "point_source", "params": {"pole": 1.5, "core_n": 3}, "spec": {"n": 3, **cyl}},
        {"family": "axial_from_2d", "params": {"generator": "power:p=3"}, "spec": {"n": 4, **cyl}},
        {"family": "axial_from_2d", "params": {"generator": "blowup:c=1,b=1"}, "spec": {"n": 4, **cyl}},
        {"family": "polynomial", "params": {"coeffs": [[0, 2, 3.0], [2, 0, -1.0]], "core_n": 4}, "spec": {"n": 4, **cyl}},
        {"family": "axial_from_2d", "params": {"generator": "blowup:c=1,b=1"}, "spec": {"n": 5, **cyl}},
        {"family": "polynomial", "params": {"coeffs": [[2, 0, 1.0], [0, 2, -4.0]], "core_n": 5}, "spec": {"n": 5, **cyl}},
        {"family": "point_source", "params": {"pole": -1.5, "core_n": 5}, "spec": {"n": 5, **cyl}},
        {"family": "axial_from_2d", "params": {"generator": "blowup:c=2,b=1"}, "spec": {"n": 6, **cyl}},
        {"family": "point_source", "params": {"pole": 1.25, "core_n": 6}, "spec": {"n": 6, **cyl}},
        {"family": "blowup2d", "params": {"c": 2.0, "b": 1.0, "orientation": "axis"}, "spec": {"n": 7, **cyl}},
        {"family": "polynomial", "params": {"coeffs": [[0, 2, 6.0], [2, 0, -1.0]], "core_n": 7}, "spec": {"n": 7, **cyl}},
        {"family": "point_source", "params": {"pole": 1.5, "core_n": 7}, "spec": {"n": 7, **cyl}},
    ]
    for e in entries:
        e["name"] = sample_from_dict(e).name
    return entries


def load_registry(path) -> List[HarmonicSample]:
    path = Path(path)
    with open(path) as fh:
        entries = json.load(fh)
    if not isinstance(entries, list):
        raise MajorantParseError("registry must be a JSON list of sample entries")
    return [sample_from_dict(e, base_dir=path.parent) for e in entries]


def save_registry(entries: Sequence, path) -> None:
    data = [e.to_dict() if isinstance(e, HarmonicSample) else e for e in entries]
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
