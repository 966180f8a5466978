"""Domar's explicit estimate for subharmonic functions on a rectangle.

For a subharmonic ``v`` on ``(-a, a) x (-b, b)`` with ``v(x + iy) <= log M(|y|)``,
write ``F(t)`` for the measure of ``{y : log+ M(|y|) >= t}``.  If

    (8 / pi) * sum_{i >= -1} F(2**i * C) < d,

then ``v <= C`` on every compact set at distance ``>= d`` from the boundary.
Applied to ``log|f|`` for holomorphic ``f`` this gives ``|f| <= exp(C)``.
"""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .errors import GeometryError, NoCertificate, PreconditionError
from .grid import SampledField
from .majorant import Majorant, _require_summable

__all__ = [
    "TruncationPolicy",
    "DomarSum",
    "DomarCertificate",
    "EscapeTrace",
    "MeanCheck",
    "domar_terms",
    "domar_terms_log",
    "domar_sum_log",
    "domar_sum",
    "minimal_constant",
    "certify_bound_2d",
    "subharmonic_mean_check",
    "domar_escape_trace",
]

log = logging.getLogger(__name__)

STEP_FACTOR = 8.0 / math.pi
C_FLOOR = 1e-9
LOG_C_CAP = 1e300
LOG_C_REPRESENTABLE = 709.0
# exp(C) stays inside binary64 below this
EXP_CAP = 700.0
_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class TruncationPolicy:
    tolerance: float = 1e-12
    max_terms: int = 200


DEFAULT_POLICY = TruncationPolicy()


class DomarSum(NamedTuple):
    value: float
    i_max: int
    tail: float
    terms: Tuple[float, ...]


@dataclass(frozen=True)
class DomarCertificate:
    """Outcome of the minimal-constant search.

    ``C`` is ``None`` when only ``log_C`` is representable; ``bound = exp(C)`` is
    ``None`` once ``C`` exceeds 700.
    """

    log_C: float
    sum_value: float
    i_max: int
    tail_bound: float
    distance: float
    halfwidth: float

    @property
    def C(self) -> Optional[float]:
        return math.exp(self.log_C) if self.log_C < LOG_C_REPRESENTABLE else None

    @property
    def bound(self) -> Optional[float]:
        C = self.C
        return math.exp(C) if C is not None and C <= EXP_CAP else None

    @property
    def log_bound(self) -> float:
        C = self.C
        return C if C is not None else math.inf

    @property
    def representable(self) -> bool:
        return self.bound is not None

    def to_dict(self) -> dict:
        return {
            "C": self.C,
            "log_C": self.log_C,
            "bound": self.bound,
            "sum_value": self.sum_value,
            "tail_bound": self.tail_bound,
            "i_max": self.i_max,
            "distance": self.distance,
            "halfwidth": self.halfwidth,
        }


def domar_terms(m: Majorant, C: float, b: float, i_max: int) -> np.ndarray:
    """``F(2**i C)`` for ``i = -1 .. i_max``."""
    return domar_terms_log(m, math.log(C), b, i_max)


def domar_terms_log(m: Majorant, log_C: float, b: float, i_max: int) -> np.ndarray:
    idx = np.arange(-1, i_max + 1)
    return np.atleast_1d(m.distribution_log(log_C + idx * _LOG2, b))


def domar_sum(m: Majorant, C: float, b: float, policy: TruncationPolicy = DEFAULT_POLICY) -> DomarSum:
    """``(8/pi) * (sum_{i=-1}^{i_max} F(2**i C) + tail)`` with a closed-form tail bound.

    ``i_max`` is the first index whose envelope term falls below
    ``policy.tolerance``, capped so that at most ``policy.max_terms`` terms are
    summed explicitly.
    """
    if not C > 0:
        raise PreconditionError(f"Domar constant must be positive, got {C}")
    return domar_sum_log(m, math.log(C), b, policy)


def domar_sum_log(m: Majorant, log_C: float, b: float, policy: TruncationPolicy = DEFAULT_POLICY) -> DomarSum:
    """``domar_sum`` parametrized by ``log C``."""
    _require_summable(m)
    idx = np.arange(-1, policy.max_terms - 1)
    env = np.atleast_1d(m.envelope_log(log_C + idx * _LOG2, b))
    small = np.nonzero(env < policy.tolerance)[0]
    i_max = int(idx[small[0]]) if small.size else int(idx[-1])
    terms = domar_terms_log(m, log_C, b, i_max)
    tail = float(m.envelope_tail_log(log_C, i_max, b))
    value = STEP_FACTOR * (math.fsum(terms) + tail)
    return DomarSum(value, i_max, STEP_FACTOR * tail, tuple(float(t) for t in terms))


def minimal_constant(
    m: Majorant,
    d: float,
    b: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
    rel_tol: float = 1e-7,
) -> DomarCertificate:
    """Smallest ``C`` (to relative ``rel_tol``) with ``domar_sum(m, C, b) < d``.

    The sum is non-increasing in ``C``; the search brackets and bisects
    ``log C`` and returns the upper bracket, where the strict inequality has
    been checked.
    """
    if not d > 0 or not b > 0:
        raise PreconditionError("distance and half-width must be positive")

    def S(lam):
        return domar_sum_log(m, lam, b, policy)

    hi = math.log(C_FLOOR)
    s_hi = S(hi)
    if s_hi.value >= d:
        lo, hi = hi, 0.0
        s_hi = S(hi)
        while s_hi.value >= d:
            lo, hi = hi, (1.0 if hi == 0.0 else 2.0 * hi)
            if hi > LOG_C_CAP:
                raise NoCertificate(
                    f"Domar condition unsatisfiable for log C below {LOG_C_CAP:g} ({m.spec}, d={d})"
                )
            s_hi = S(hi)
        while hi - lo > max(rel_tol, 8.0 * math.ulp(hi)):
            mid = 0.5 * (lo + hi)
            s_mid = S(mid)
            if s_mid.value < d:
                hi, s_hi = mid, s_mid
            else:
                lo = mid
    cert = DomarCertificate(
        log_C=hi,
        sum_value=s_hi.value,
        i_max=s_hi.i_max,
        tail_bound=s_hi.tail,
        distance=d,
        halfwidth=b,
    )
    if cert.bound is None:
        log.info("bound exceeds representable range: log C = %.17g", hi)
    return cert


def certify_bound_2d(m: Majorant, d: float, b: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """``exp(C)`` bounding ``|f|`` at distance ``>= d`` from the boundary (``inf`` on overflow)."""
    cert = minimal_constant(m, d, b, policy)
    return cert.bound if cert.bound is not None else math.inf


# ---------------------------------------------------------------------------
# grid-level checks of the doubling argument
# ---------------------------------------------------------------------------

class MeanCheck(NamedTuple):
    lhs: float
    rhs: float
    ok: bool


def _interp(v: SampledField, point) -> float:
    f = RegularGridInterpolator(v.axes, v.values)
    return float(f(np.atleast_2d(point))[0])


def subharmonic_mean_check(v: SampledField, center, radius: float, tol_factor: float = 2.0) -> MeanCheck:
    """Compare ``v(center)`` with the area average of ``v`` over a disk.

    The tolerance is ``tol_factor * (h / r) * osc``, the pixelation error of a
    disk rendered on a grid of spacing ``h``.
    """
    if not v.contains_ball(center, radius):
        raise GeometryError(f"ball at {tuple(center)} with radius {radius} leaves the sampled rectangle")
    X, Y = v.mesh()
    inside = (X - center[0]) ** 2 + (Y - center[1]) ** 2 <= radius**2
    vals = v.values[inside]
    lhs = _interp(v, center)
    rhs = float(np.mean(vals))
    h = max(v.spacing)
    tol = tol_factor * (h / radius) * float(np.ptp(vals)) + 1e-12
    return MeanCheck(lhs, rhs, lhs <= rhs + tol)


@dataclass
class EscapeTrace:
    points: List[Tuple[float, float]] = field(default_factory=list)
    levels: List[float] = field(default_factory=list)
    # radii[j] is the search radius that located points[j]; radii[0] = 0
    radii: List[float] = field(default_factory=list)
    terminated: bool = False
    escaped_domain: bool = False
    spacing: float = 0.0

    def __len__(self):
        return len(self.points)

    def step_violations(self) -> List[int]:
        """Indices ``i`` where ``|z_{i+1} - z_i| > radii[i+1] + spacing``."""
        bad = []
        for i in range(len(self.points) - 1):
            step = math.dist(self.points[i], self.points[i + 1])
            if step > self.radii[i + 1] + self.spacing:
                bad.append(i)
        return bad

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["step", "x", "y", "level", "radius"])
            for i, ((x, y), lv, r) in enumerate(zip(self.points, self.levels, self.radii)):
                w.writerow([i, f"{x:.12g}", f"{y:.12g}", f"{lv:.12g}", f"{r:.12g}"])


def domar_escape_trace(
    v: SampledField,
    z0,
    C: float,
    m: Majorant,
    b: float,
    max_steps: int = 64,
) -> EscapeTrace:
    """Replay the doubling step on grid data.

    From ``z_i`` with ``v(z_i) >= 2**i C`` the closed disk of radius
    ``(8/pi) F(2**(i-1) C)`` is scanned exhaustively for grid points with
    ``v >= 2**(i+1) C``; the nearest one (first in grid order on ties) becomes
    ``z_{i+1}``.  A disk reaching past the grid sets ``escaped_domain`` and is
    clipped to the grid.
    """
    X, Y = v.mesh()
    i0 = v.nearest_index(z0)
    level0 = float(v.values[i0])
    if level0 < C:
        raise PreconditionError(f"v(z0) = {level0:.6g} is below the starting level C = {C:.6g}")
    z = (float(v.axes[0][i0[0]]), float(v.axes[1][i0[1]]))
    trace = EscapeTrace([z], [level0], [0.0], spacing=math.hypot(*v.spacing))
    for i in range(max_steps):
        r = STEP_FACTOR * float(m.distribution_log(math.log(C) + (i - 1) * _LOG2, b))
        target = math.ldexp(C, i + 1)
        if not v.contains_ball(z, r):
            trace.escaped_domain = True
        dist2 = (X - z[0]) ** 2 + (Y - z[1]) ** 2
        hits = (dist2 <= r * r) & (v.values >= target)
        if not hits.any():
            trace.terminated = True
            break
        flat = np.where(hits, dist2, np.inf).ravel()
        k = int(np.argmin(flat))
        j = np.unravel_index(k, X.shape)
        z = (float(X[j]), float(Y[j]))
        trace.points.append(z)
        trace.levels.append(float(v.values[j]))
        trace.radii.append(r)
    return trace
