"""End-to-end sup bounds for harmonic functions on cylinders.

Route by dimension ``n`` of ``Omega = {|x| < R, |y| < H}``:

* ``n = 2, 3``: add fake coordinates up to ``n = 4``;
* ``n = 4``: Domar's estimate for ``f = d/drho(rho w) - i d/dh(rho w)`` with the
  gradient majorant ``M~``, half-width ``H - eps/2`` and distance ``eps/2``;
* odd ``n = 2k + 3``: bound the lifted field in ``R^3`` with majorant
  ``eps**k M`` and margin ``eps/2``, then divide the ``k``-th derivative
  estimate by ``k!``;
* even ``n >= 6``: add one fake coordinate.

Every step is recorded as a stage; ``replay`` folds the recorded stages back
into the final bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

from .domar import DEFAULT_POLICY, DomarCertificate, TruncationPolicy, minimal_constant
from .errors import LevinsonConditionFails, PreconditionError
from .majorant import Majorant, Scaled, loglog_integral, soundness_factor
from .reduction import cauchy_branch, cauchy_gradient_majorant, derivative_bound_constant

__all__ = [
    "CylinderSpec",
    "Stage",
    "BoundCertificate",
    "certify_bound",
    "bound_on_axis",
    "replay",
]

_LOG_REPRESENTABLE = 709.0


@dataclass(frozen=True)
class CylinderSpec:
    n: int
    R: float
    H: float
    eps: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise PreconditionError(f"dimension must be an integer >= 2, got {self.n}")
        if not (self.R > 0 and self.H > 0 and self.eps > 0):
            raise PreconditionError("R, H and eps must be positive")
        if not self.eps < min(self.R, self.H):
            raise PreconditionError(f"eps must be below min(R, H); got eps={self.eps}, R={self.R}, H={self.H}")

    @property
    def K(self):
        """Radius and half-height of the compact target ``{|x| <= R-eps, |y| <= H-eps}``."""
        return self.R - self.eps, self.H - self.eps

    def to_dict(self):
        return {"n": self.n, "R": self.R, "H": self.H, "eps": self.eps}


@dataclass
class Stage:
    name: str
    majorant_in: str
    majorant_out: Optional[str] = None
    constants: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "name": self.name,
            "majorant_in": self.majorant_in,
            "majorant_out": self.majorant_out,
            "constants": dict(self.constants),
        }


@dataclass
class BoundCertificate:
    spec: CylinderSpec
    stages: List[Stage]
    domar: DomarCertificate
    log_bound: float
    loglog_bound: float

    @property
    def final_bound(self) -> Optional[float]:
        if self.log_bound < _LOG_REPRESENTABLE:
            return math.exp(self.log_bound)
        return None

    @property
    def route(self) -> List[str]:
        return [s.name for s in self.stages]

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "stages": [s.to_dict() for s in self.stages],
            "domar": self.domar.to_dict(),
            "final_bound": self.final_bound,
            "log_bound": self.log_bound,
            "loglog_bound": self.loglog_bound,
        }


def _log_or_neginf(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def _fold(stages: List[Stage]):
    """Turn a stage chain into ``(log_bound, loglog_bound)``."""
    log_b = loglog_b = None
    for st in stages:
        c = st.constants
        if st.name == "exp":
            lam = c["log_C"]
            log_b = math.exp(lam) if lam < _LOG_REPRESENTABLE else math.inf
            loglog_b = lam
        elif st.name == "derivative":
            shift = math.log(c["C_k"]) - math.lgamma(c["k"] + 1)
            if math.isfinite(log_b):
                log_b = log_b + shift
                loglog_b = _log_or_neginf(log_b)
            else:
                # log(exp(lam) + shift) for astronomically large exp(lam)
                loglog_b = loglog_b + math.log1p(shift * math.exp(-loglog_b))
    return log_b, loglog_b


def _route4(spec: CylinderSpec, m: Majorant, policy: TruncationPolicy):
    eps, H = spec.eps, spec.H
    mt = cauchy_gradient_majorant(m, eps)
    b = H - eps / 2.0
    d = eps / 2.0
    grad_stage = Stage(
        "cauchy_gradient",
        m.spec,
        mt.spec,
        {
            "eps": eps,
            "soundness_factor": soundness_factor(eps),
            "cauchy_constant": 100.0,
            "crossover": eps,
            "branch_near_axis": cauchy_branch(eps / 2.0, eps),
            "branch_at_halfwidth": cauchy_branch(b, eps),
        },
    )
    cert = minimal_constant(mt, d, b, policy)
    domar_stage = Stage(
        "domar",
        mt.spec,
        None,
        {
            "halfwidth": b,
            "distance": d,
            "log_C": cert.log_C,
            "C": cert.C,
            "sum_value": cert.sum_value,
            "tail_bound": cert.tail_bound,
            "i_max": cert.i_max,
        },
    )
    exp_stage = Stage("exp", mt.spec, None, {"log_C": cert.log_C})
    return [grad_stage, domar_stage, exp_stage], cert


def _chain(spec: CylinderSpec, m: Majorant, policy: TruncationPolicy):
    n = spec.n
    if n in (2, 3):
        pad = Stage("pad", m.spec, m.spec, {"from_n": n, "to_n": 4})
        stages, cert = _route4(CylinderSpec(4, spec.R, spec.H, spec.eps), m, policy)
        return [pad] + stages, cert
    if n == 4:
        return _route4(spec, m, policy)
    if n % 2 == 0:
        pad = Stage("pad", m.spec, m.spec, {"from_n": n, "to_n": n + 1})
        stages, cert = _chain(CylinderSpec(n + 1, spec.R, spec.H, spec.eps), m, policy)
        return [pad] + stages, cert
    k = (n - 3) // 2
    eps = spec.eps
    scale = eps**k
    m3 = Scaled(m, scale)
    lift = Stage(
        "lift_odd",
        m.spec,
        m3.spec,
        {"k": k, "scale": scale, "R3": eps, "H3": spec.H, "eps3": eps / 2.0},
    )
    sub_stages, cert = _chain(CylinderSpec(3, eps, spec.H, eps / 2.0), m3, policy)
    deriv = Stage(
        "derivative",
        m3.spec,
        None,
        {"k": k, "radius": eps / 2.0, "C_k": derivative_bound_constant(k, eps / 2.0), "k_factorial": math.factorial(k)},
    )
    return [lift] + sub_stages + [deriv], cert


def certify_bound(spec: CylinderSpec, m: Majorant, policy: TruncationPolicy = DEFAULT_POLICY) -> BoundCertificate:
    """Certified ``sup_K |u|`` over all ``u`` harmonic in ``Omega`` with ``|u(x, y)| <= M(|y|)``."""
    _, finite = loglog_integral(m)
    if not finite:
        raise LevinsonConditionFails(f"no certificate: Levinson condition fails for {m.spec}")
    stages, cert = _chain(spec, m, policy)
    log_b, loglog_b = _fold(stages)
    return BoundCertificate(spec, stages, cert, log_b, loglog_b)


def bound_on_axis(spec: CylinderSpec, m: Majorant, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Bound on ``|u(x0, h)|`` for ``|x0| <= R - eps``; identical to the cylinder bound.

    Translating ``x0`` to the axis and averaging over rotations leaves
    ``u(x0, h)`` unchanged, so the axis bound is the uniform bound on ``K``.
    """
    cert = certify_bound(spec, m, policy)
    return cert.final_bound if cert.final_bound is not None else math.inf


def replay(cert: BoundCertificate) -> float:
    """Recompute ``log_bound`` from the recorded stages."""
    return _fold(cert.stages)[0]
