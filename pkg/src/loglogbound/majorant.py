"""Decreasing majorants ``M: (0, H) -> [0, inf)`` and their distribution data.

Every family works in log space: ``log_value(y)`` returns ``log M(y)`` so the
double-exponential family and derived majorants stay finite long after
``M(y)`` itself overflows.  The quantities the certificate chain consumes are

* ``logplus(y) = log+ M(y)``,
* the distribution function ``F(t) = |{y in (-b, b) : log+ M(|y|) >= t}|``,
* an analytic envelope ``E(t) >= F(t)`` whose dyadic tail
  ``sum_{i > I} E(2**i C)`` has a closed form.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, special

from .errors import MajorantDomainError, MajorantParseError, NonSummableTail

__all__ = [
    "Majorant",
    "Constant",
    "ExpBlowup",
    "DoubleExpBlowup",
    "Tabulated",
    "Scaled",
    "Derived",
    "DistributionQuery",
    "evaluate",
    "loglog_integral",
    "distribution",
    "derived_majorant",
    "soundness_factor",
    "tail_envelope",
    "parse_majorant",
    "majorant_from_dict",
]

CAUCHY_CONSTANT = 100.0
_LOG2 = math.log(2.0)
# exponent search range for the generic inverse (in log2 units below H)
_BISECT_DEPTH = 1000.0
_BISECT_STEPS = 90


def _arr(x):
    return np.asarray(x, dtype=float)


def _scalarize(out, like):
    if np.ndim(like) == 0:
        return float(np.asarray(out).reshape(()))
    return out


def _loglog_from_log(log_m):
    lp = np.maximum(log_m, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ll = np.where(lp > 1.0, np.log(np.where(lp > 1.0, lp, 1.0)), 0.0)
    return ll


def _shifted_loglog(shift, log_m, loglog_m):
    """log+ log+ (e**shift * M) from log M and log+ log+ M, overflow-safe."""
    shift = _arr(shift)
    log_m = _arr(log_m)
    big = ~np.isfinite(log_m) | (log_m > 1e8)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        direct = shift + np.where(big, 0.0, log_m)
        small = np.where(direct > 1.0, np.log(np.where(direct > 1.0, direct, 1.0)), 0.0)
        large = loglog_m + np.log1p(shift * np.exp(-loglog_m))
    small = np.where(np.isneginf(log_m), 0.0, small)
    return np.where(big & (log_m > 0), large, small)


@dataclass(frozen=True)
class DistributionQuery:
    """Threshold ``t`` and half-width ``b`` of the interval ``(-b, b)``."""

    t: float
    b: float

    def __post_init__(self):
        if not (self.t > 0 and self.b > 0):
            raise MajorantDomainError(f"distribution query needs t > 0 and b > 0, got {self}")


class Majorant:
    """Base class; subclasses supply ``log_value`` and (optionally) closed forms.

    Thresholds enter the superlevel-set methods through ``tau = log t`` so that
    dyadic thresholds ``2**i * C`` stay representable when ``C`` itself does not.
    """

    H: float

    # -- evaluation -------------------------------------------------------
    def log_value(self, y):
        raise NotImplementedError

    def evaluate(self, y):
        """Return ``M(y)`` for ``0 < y < H``; raises outside the open interval."""
        ya = _arr(y)
        if np.any(~(ya > 0)) or np.any(~(ya < self.H)):
            raise MajorantDomainError(f"majorant argument must lie in (0, {self.H})")
        with np.errstate(over="ignore"):
            out = np.exp(self.log_value(ya))
        return _scalarize(out, y)

    __call__ = evaluate

    def logplus(self, y):
        return np.maximum(self.log_value(_arr(y)), 0.0)

    def loglog_value(self, y):
        """``log+ log+ M(y)``."""
        return _loglog_from_log(self.log_value(_arr(y)))

    # -- superlevel sets --------------------------------------------------
    def _above(self, y, tau):
        # log+ M(y) >= exp(tau), without forming exp(tau) for large tau
        with np.errstate(over="ignore"):
            small = self.logplus(y) >= np.exp(np.minimum(tau, 0.0))
        return np.where(tau > 0, self.loglog_value(y) >= tau, small)

    def inverse_log(self, tau):
        """``sup{y in (0, H] : log+ M(y) >= exp(tau)}``, 0 if the set is empty."""
        return self.inverse_by_bisection_log(tau)

    def inverse_by_bisection_log(self, tau):
        """Generic monotone bisection in ``log2 y``; returns the upper bracket."""
        ta = np.atleast_1d(_arr(tau))
        top = math.log2(self.H)
        lo = np.full(ta.shape, top - _BISECT_DEPTH)
        hi = np.full(ta.shape, top)
        full = self._above(np.full(ta.shape, self.H), ta)
        empty = ~self._above(np.exp2(lo), ta)
        for _ in range(_BISECT_STEPS):
            mid = 0.5 * (lo + hi)
            ok = self._above(np.exp2(mid), ta)
            lo = np.where(ok, mid, lo)
            hi = np.where(ok, hi, mid)
        out = np.where(full, self.H, np.where(empty, 0.0, np.minimum(np.exp2(hi), self.H)))
        return _scalarize(out, tau)

    def inverse(self, t):
        return self.inverse_log(_log(t))

    def inverse_by_bisection(self, t):
        return self.inverse_by_bisection_log(_log(t))

    def distribution_log(self, tau, b):
        out = 2.0 * np.minimum(b, self.inverse_log(tau))
        return _scalarize(out, tau)

    def distribution(self, t, b):
        """Lebesgue measure of ``{y in (-b, b) : log+ M(|y|) >= t}``."""
        return self.distribution_log(_log(t), b)

    # -- dyadic tail ------------------------------------------------------
    def envelope_log(self, tau, b):
        raise NotImplementedError

    def envelope(self, t, b):
        """Non-increasing ``E(t) >= F(t)`` with a closed-form dyadic tail."""
        return self.envelope_log(_log(t), b)

    def envelope_tail_log(self, log_C: float, i_max: int, b: float) -> float:
        raise NotImplementedError

    def envelope_tail(self, C: float, i_max: int, b: float) -> float:
        """Upper bound for ``sum_{i > i_max} envelope(2**i * C, b)``."""
        return self.envelope_tail_log(math.log(C), i_max, b)

    # -- log-log integral -------------------------------------------------
    @property
    def loglog_finite(self) -> bool:
        return True

    def loglog_head(self, delta: float) -> float:
        """``int_0^delta log+ log+ M``; numeric fallback via ``y = exp(-s)``."""

        def f(s):
            y = math.exp(-s)
            return float(self.loglog_value(y)) * y

        # beyond s = 700 the weight exp(-s) is below 1e-304
        val, _ = integrate.quad(f, -math.log(delta), 700.0, limit=400)
        return val

    def breakpoints(self) -> Sequence[float]:
        return ()

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        raise NotImplementedError

    @property
    def spec(self) -> str:
        raise NotImplementedError


def _log(t):
    with np.errstate(divide="ignore"):
        return np.log(_arr(t)) if np.ndim(t) else math.log(t) if t > 0 else -math.inf


def _check_H(H):
    if not H > 0:
        raise MajorantDomainError(f"domain height must be positive, got {H}")


def _step_tail(m: Majorant, level: float, log_C: float, i_max: int, b: float) -> float:
    # envelope == distribution, zero once 2**i C > level
    if level <= 0:
        return 0.0
    top = math.floor((math.log(level) - log_C) / _LOG2)
    total = 0.0
    for i in range(i_max + 1, top + 1):
        total += m.distribution_log(log_C + i * _LOG2, b)
    return total


@dataclass(frozen=True)
class Constant(Majorant):
    c: float
    H: float = 1.0

    def __post_init__(self):
        _check_H(self.H)
        if self.c < 0:
            raise MajorantDomainError("constant majorant must be non-negative")

    @property
    def level(self) -> float:
        return math.log(self.c) if self.c > 1 else 0.0

    def log_value(self, y):
        lv = math.log(self.c) if self.c > 0 else -np.inf
        return np.full(np.shape(y), lv)

    def inverse_log(self, tau):
        if self.level <= 0:
            out = np.zeros(np.shape(tau))
        else:
            out = np.where(math.log(self.level) >= _arr(tau), self.H, 0.0)
        return _scalarize(out, tau)

    def envelope_log(self, tau, b):
        return self.distribution_log(tau, b)

    def envelope_tail_log(self, log_C, i_max, b):
        return _step_tail(self, self.level, log_C, i_max, b)

    def loglog_head(self, delta):
        ll = math.log(self.level) if self.level > 1 else 0.0
        return delta * ll

    def to_dict(self):
        return {"family": "constant", "c": self.c, "H": self.H}

    @property
    def spec(self):
        return f"constant:c={self.c!r}"


@dataclass(frozen=True)
class ExpBlowup(Majorant):
    """``M(y) = exp(a * y**(-beta))``; ``a`` defaults to 1."""

    beta: float
    H: float = 1.0
    a: float = 1.0

    def __post_init__(self):
        _check_H(self.H)
        if not (self.beta > 0 and self.a > 0):
            raise MajorantDomainError("expblowup needs beta > 0 and a > 0")

    def log_value(self, y):
        with np.errstate(divide="ignore", over="ignore"):
            return self.a * np.power(_arr(y), -self.beta)

    def inverse_log(self, tau):
        with np.errstate(over="ignore"):
            out = np.minimum(self.H, np.exp((math.log(self.a) - _arr(tau)) / self.beta))
        return _scalarize(out, tau)

    def envelope_log(self, tau, b):
        return self.distribution_log(tau, b)

    def envelope_tail_log(self, log_C, i_max, b):
        p = 1.0 / self.beta
        r = 2.0 ** (-p)
        with np.errstate(over="ignore"):
            lead = float(np.exp(p * (math.log(self.a) - log_C) - p * _LOG2 * (i_max + 1)))
        return 2.0 * lead / (1.0 - r)

    def loglog_head(self, delta):
        m = min(delta, self.a ** (1.0 / self.beta))
        if m <= 0:
            return 0.0
        return m * math.log(self.a) - self.beta * (m * math.log(m) - m)

    def to_dict(self):
        return {"family": "expblowup", "beta": self.beta, "a": self.a, "H": self.H}

    @property
    def spec(self):
        extra = "" if self.a == 1.0 else f",a={self.a!r}"
        return f"expblowup:beta={self.beta!r}{extra}"


@dataclass(frozen=True)
class DoubleExpBlowup(Majorant):
    """``M(y) = exp(exp(y**(-alpha)))``; log-log integrable iff ``alpha < 1``."""

    alpha: float
    H: float = 1.0

    def __post_init__(self):
        _check_H(self.H)
        if not self.alpha > 0:
            raise MajorantDomainError("doubleexp needs alpha > 0")

    def log_value(self, y):
        with np.errstate(divide="ignore", over="ignore"):
            return np.exp(np.power(_arr(y), -self.alpha))

    def loglog_value(self, y):
        with np.errstate(divide="ignore", over="ignore"):
            return np.power(_arr(y), -self.alpha)

    def inverse_log(self, tau):
        # exp(y**-alpha) >= exp(tau)  <=>  y <= tau**(-1/alpha)
        ta = _arr(tau)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            y = np.power(np.where(ta > 0, ta, 1.0), -1.0 / self.alpha)
        out = np.where(ta > 0, np.minimum(self.H, y), self.H)
        return _scalarize(out, tau)

    def envelope_log(self, tau, b):
        return self.distribution_log(tau, b)

    @property
    def loglog_finite(self):
        return self.alpha < 1.0

    def envelope_tail_log(self, log_C, i_max, b):
        if self.alpha >= 1.0:
            raise NonSummableTail(
                f"doubleexp(alpha={self.alpha}) has a non-summable dyadic tail (needs alpha < 1)"
            )
        p = 1.0 / self.alpha
        shift = log_C / _LOG2
        i = i_max + 1
        total = 0.0
        while i + shift <= 0.0:
            total += self.envelope_log(log_C + i * _LOG2, b)
            i += 1
        # sum_{j >= i} 2 * ((j + shift) log 2)**(-p) is a Hurwitz zeta value
        return total + 2.0 * _LOG2 ** (-p) * float(special.zeta(p, i + shift))

    def loglog_head(self, delta):
        if self.alpha >= 1.0:
            return math.inf
        return delta ** (1.0 - self.alpha) / (1.0 - self.alpha)

    def to_dict(self):
        return {"family": "doubleexp", "alpha": self.alpha, "H": self.H}

    @property
    def spec(self):
        return f"doubleexp:alpha={self.alpha!r}"


@dataclass(frozen=True)
class Tabulated(Majorant):
    """Right-continuous piecewise-constant majorant.

    ``M(y) = value_j`` for ``y_j <= y < y_{j+1}``; below the first breakpoint the
    first value is used.
    """

    points: Tuple[Tuple[float, float], ...]
    H: float = 1.0
    source: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        _check_H(self.H)
        pts = tuple((float(y), float(v)) for y, v in self.points)
        if not pts:
            raise MajorantDomainError("tabulated majorant needs at least one breakpoint")
        ys = [p[0] for p in pts]
        vs = [p[1] for p in pts]
        if any(b <= a for a, b in zip(ys, ys[1:])):
            raise MajorantDomainError("tabulated breakpoints must be strictly increasing in y")
        if any(b > a for a, b in zip(vs, vs[1:])):
            raise MajorantDomainError("tabulated values must be non-increasing")
        if min(vs) < 0:
            raise MajorantDomainError("tabulated values must be non-negative")
        object.__setattr__(self, "points", pts)

    @property
    def _ys(self):
        return np.array([p[0] for p in self.points])

    @property
    def _logs(self):
        vs = np.array([p[1] for p in self.points])
        with np.errstate(divide="ignore"):
            return np.log(vs)

    def _piece(self, y):
        idx = np.searchsorted(self._ys, y, side="right") - 1
        return np.clip(idx, 0, len(self.points) - 1)

    def log_value(self, y):
        return self._logs[self._piece(_arr(y))]

    def evaluate(self, y):
        # stored values exactly, not exp(log(value))
        Majorant.evaluate(self, y)
        vals = np.array([p[1] for p in self.points])
        return _scalarize(vals[self._piece(_arr(y))], y)

    __call__ = evaluate

    def inverse_log(self, tau):
        ta = np.atleast_1d(_arr(tau))
        lp = np.maximum(self._logs, 0.0)
        with np.errstate(divide="ignore"):
            llp = np.log(lp)
        edges = np.minimum(np.append(self._ys[1:], self.H), self.H)
        out = np.zeros_like(ta)
        for k, tk in enumerate(ta):
            # the largest piece still above the threshold fixes the right edge
            hits = np.nonzero(llp >= tk)[0]
            out[k] = edges[hits[-1]] if hits.size else 0.0
        return _scalarize(out, tau)

    @property
    def level(self) -> float:
        return float(np.max(np.maximum(self._logs, 0.0)))

    def envelope_log(self, tau, b):
        return self.distribution_log(tau, b)

    def envelope_tail_log(self, log_C, i_max, b):
        return _step_tail(self, self.level, log_C, i_max, b)

    def breakpoints(self):
        return tuple(y for y, _ in self.points if 0 < y < self.H)

    def to_dict(self):
        return {"family": "tabulated", "points": [list(p) for p in self.points], "H": self.H}

    @property
    def spec(self):
        return f"tabulated:@{self.source}" if self.source else "tabulated:<inline>"

    @classmethod
    def from_csv(cls, path, H: float = 1.0) -> "Tabulated":
        with open(path, newline="") as fh:
            rows = [(float(r["y"]), float(r["value"])) for r in csv.DictReader(fh)]
        return cls(tuple(rows), H=H, source=str(path))


@dataclass(frozen=True)
class Scaled(Majorant):
    """``factor * inner(y)``."""

    inner: Majorant
    factor: float
    H: float = field(default=None)

    def __post_init__(self):
        if not self.factor > 0:
            raise MajorantDomainError("scale factor must be positive")
        object.__setattr__(self, "H", self.inner.H)

    @property
    def shift(self) -> float:
        return math.log(self.factor)

    def log_value(self, y):
        return self.shift + self.inner.log_value(y)

    def loglog_value(self, y):
        ya = _arr(y)
        return _shifted_loglog(self.shift, self.inner.log_value(ya), self.inner.loglog_value(ya))

    @property
    def loglog_finite(self):
        return self.inner.loglog_finite

    def envelope_log(self, tau, b):
        # log+(f M) >= t with f > 1 and t >= 2 log f forces log M >= t/2
        ta = _arr(tau)
        if self.shift <= 0:
            return self.inner.envelope_log(ta, b)
        full = 2.0 * min(b, self.H)
        out = np.where(ta >= math.log(2.0 * self.shift), self.inner.envelope_log(ta - _LOG2, b), full)
        return _scalarize(out, tau)

    def envelope_tail_log(self, log_C, i_max, b):
        if self.shift <= 0:
            return self.inner.envelope_tail_log(log_C, i_max, b)
        full = 2.0 * min(b, self.H)
        i = i_max + 1
        total = 0.0
        while log_C + i * _LOG2 < math.log(2.0 * self.shift):
            total += full
            i += 1
        return total + self.inner.envelope_tail_log(log_C - _LOG2, i - 1, b)

    def breakpoints(self):
        return self.inner.breakpoints()

    def to_dict(self):
        return {"family": "scaled", "factor": self.factor, "inner": self.inner.to_dict()}

    @property
    def spec(self):
        return f"scaled:factor={self.factor!r};{self.inner.spec}"


def soundness_factor(eps: float) -> float:
    """``max(1, eps)``: accounts for ``|rho * w| <= eps * M`` when ``eps > 1``."""
    return max(1.0, eps)


@dataclass(frozen=True)
class Derived(Majorant):
    """Gradient majorant ``s(eps) * max(100/eps, 100/h) * inner(h/2)``."""

    inner: Majorant
    eps: float
    H: float = field(default=None)

    def __post_init__(self):
        if not self.eps > 0:
            raise MajorantDomainError(f"derived majorant needs eps > 0, got {self.eps}")
        object.__setattr__(self, "H", self.inner.H)

    @property
    def log_gain(self) -> float:
        return math.log(CAUCHY_CONSTANT * soundness_factor(self.eps))

    @property
    def plateau(self) -> float:
        # log of the prefactor on h >= eps; at least log(100)
        return self.log_gain - math.log(self.eps)

    def prefactor(self, h):
        ha = _arr(h)
        out = soundness_factor(self.eps) * np.maximum(CAUCHY_CONSTANT / self.eps, CAUCHY_CONSTANT / ha)
        return _scalarize(out, h)

    def _shift(self, h):
        with np.errstate(divide="ignore"):
            return self.log_gain + np.maximum(-math.log(self.eps), -np.log(h))

    def log_value(self, y):
        ya = _arr(y)
        return self._shift(ya) + self.inner.log_value(ya / 2.0)

    def loglog_value(self, y):
        ya = _arr(y)
        return _shifted_loglog(
            self._shift(ya), self.inner.log_value(ya / 2.0), self.inner.loglog_value(ya / 2.0)
        )

    @property
    def loglog_finite(self):
        return self.inner.loglog_finite

    def envelope_log(self, tau, b):
        # log M~ >= t forces the prefactor or M(h/2) above level t/2
        ta = _arr(tau)
        full = 2.0 * min(b, self.H)
        with np.errstate(over="ignore"):
            half_t = np.exp(ta - _LOG2)
            part = 2.0 * np.minimum(min(b, self.H), np.exp(self.log_gain - half_t))
        pref = np.where(half_t <= self.plateau, full, part)
        out = np.minimum(pref + 2.0 * _arr(self.inner.envelope_log(ta - _LOG2, b / 2.0)), full)
        return _scalarize(out, tau)

    def envelope_tail_log(self, log_C, i_max, b):
        i = i_max + 1
        total = 0.0
        while log_C + (i - 1) * _LOG2 <= math.log(self.plateau):
            total += 2.0 * min(b, self.H)
            i += 1
        with np.errstate(over="ignore"):
            x = float(np.exp(log_C + (i - 1) * _LOG2))
        # sum_{m >= 0} exp(-x 2**m) <= exp(-x) / (1 - exp(-x))
        total += 2.0 * math.exp(self.log_gain) * math.exp(-x) / -math.expm1(-x)
        return total + 2.0 * self.inner.envelope_tail_log(log_C - _LOG2, i_max, b / 2.0)

    def breakpoints(self):
        return tuple(2.0 * y for y in self.inner.breakpoints() if 2.0 * y < self.H) + (
            (self.eps,) if self.eps < self.H else ()
        )

    def to_dict(self):
        return {"family": "derived", "eps": self.eps, "inner": self.inner.to_dict()}

    @property
    def spec(self):
        return f"derived:eps={self.eps!r};{self.inner.spec}"


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def evaluate(m: Majorant, y):
    return m.evaluate(y)


def distribution(m: Majorant, q: DistributionQuery) -> float:
    return float(m.distribution(q.t, q.b))


def derived_majorant(m: Majorant, eps: float) -> Derived:
    return Derived(m, eps)


def tail_envelope(m: Majorant, t: float, b: float = 1.0) -> float:
    """Analytic envelope ``E(t) >= F(t)``; raises ``NonSummableTail`` if none exists."""
    if t < 1:
        raise MajorantDomainError("tail envelope is defined for t >= 1")
    _require_summable(m)
    return float(m.envelope(t, b))


def _require_summable(m: Majorant):
    if not m.loglog_finite:
        # the same families fail both conditions
        m.envelope_tail(1.0, 0, 1.0)
        raise NonSummableTail(f"{m.spec} has no summable envelope")


def loglog_integral(m: Majorant, delta_frac: float = 1e-3, epsrel: float = 1e-10) -> Tuple[float, bool]:
    """``int_0^H log+ log+ M(y) dy`` with a closed-form head on ``(0, delta)``.

    Returns ``(math.inf, False)`` when the integrand is not integrable at 0.
    """
    if not m.loglog_finite:
        return math.inf, False
    delta = delta_frac * m.H
    head = m.loglog_head(delta)
    f = lambda y: float(m.loglog_value(y))
    pts = [p for p in m.breakpoints() if delta < p < m.H] or None
    body, _ = integrate.quad(f, delta, m.H, points=pts, limit=400, epsabs=0.0, epsrel=epsrel)
    return head + body, True


# ---------------------------------------------------------------------------
# text / dict forms
# ---------------------------------------------------------------------------

def _kv(body: str) -> dict:
    out = {}
    for part in filter(None, body.split(",")):
        if "=" not in part:
            raise MajorantParseError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        try:
            out[k.strip()] = float(v)
        except ValueError as exc:
            raise MajorantParseError(f"non-numeric value in {part!r}") from exc
    return out


def parse_majorant(text: str, H: float = 1.0, base_dir: Optional[Path] = None) -> Majorant:
    """Parse ``constant:c=2.7``, ``expblowup:beta=1[,a=0.5]``, ``doubleexp:alpha=0.5``,
    ``tabulated:@file.csv``, and the composite ``scaled:factor=2;<inner>`` form."""
    if ":" not in text:
        raise MajorantParseError(f"majorant spec needs a family prefix: {text!r}")
    family, body = text.split(":", 1)
    family = family.strip().lower()
    try:
        if family == "constant":
            kv = _kv(body)
            return Constant(kv["c"], H=H)
        if family == "expblowup":
            kv = _kv(body)
            return ExpBlowup(kv["beta"], H=H, a=kv.get("a", 1.0))
        if family == "doubleexp":
            kv = _kv(body)
            return DoubleExpBlowup(kv["alpha"], H=H)
        if family == "tabulated":
            if not body.startswith("@"):
                raise MajorantParseError("tabulated majorant must reference a CSV file: tabulated:@file.csv")
            path = Path(body[1:])
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            return Tabulated.from_csv(path, H=H)
        if family in ("scaled", "derived"):
            head, _, rest = body.partition(";")
            kv = _kv(head)
            inner = parse_majorant(rest, H=H, base_dir=base_dir)
            return Scaled(inner, kv["factor"]) if family == "scaled" else Derived(inner, kv["eps"])
    except KeyError as exc:
        raise MajorantParseError(f"missing parameter {exc} in {text!r}") from exc
    except (OSError, MajorantDomainError) as exc:
        raise MajorantParseError(str(exc)) from exc
    raise MajorantParseError(f"unknown majorant family {family!r}")


def majorant_from_dict(d: dict) -> Majorant:
    fam = d["family"]
    if fam == "constant":
        return Constant(d["c"], H=d.get("H", 1.0))
    if fam == "expblowup":
        return ExpBlowup(d["beta"], H=d.get("H", 1.0), a=d.get("a", 1.0))
    if fam == "doubleexp":
        return DoubleExpBlowup(d["alpha"], H=d.get("H", 1.0))
    if fam == "tabulated":
        return Tabulated(tuple(tuple(p) for p in d["points"]), H=d.get("H", 1.0))
    if fam == "scaled":
        return Scaled(majorant_from_dict(d["inner"]), d["factor"])
    if fam == "derived":
        return Derived(majorant_from_dict(d["inner"]), d["eps"])
    raise MajorantParseError(f"unknown majorant family {fam!r}")
