"""Dimension reductions for axially symmetric harmonic functions.

An axially symmetric harmonic ``u(rho, h)`` in ``R^n`` solves

    u_rr + u_hh + (n - 2) / rho * u_r = 0.

Two lifts turn such solutions into ordinary harmonic functions:

* ``n = 4``: ``v(rho, h) = rho * u(|rho|, h)`` is harmonic and odd in the plane;
* ``n = 2k + 3``: ``v = rho**k * exp(i k phi) * u(rho, h)`` is harmonic in R^3.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import special

from .errors import PreconditionError, QuadratureConfigError
from .majorant import Derived, Majorant, derived_majorant

__all__ = [
    "AxialField",
    "PlanarField",
    "SpatialField",
    "sphere_rule",
    "symmetrize",
    "lift_4_to_2",
    "lift_odd_to_3",
    "gradient_to_holomorphic",
    "cauchy_riemann_residual",
    "derivative_bound_constant",
    "cauchy_gradient_majorant",
    "cauchy_branch",
    "laplacian_residual",
    "euler_darboux_residual",
]


@dataclass(frozen=True)
class AxialField:
    """``u(rho, h)`` for ``0 <= rho < eps``, ``|h| < H``, axially symmetric in ``R^n``."""

    func: Callable
    n: int
    eps: float = 1.0
    H: float = 1.0
    grad: Optional[Callable] = None

    def __call__(self, rho, h):
        return self.func(np.asarray(rho, dtype=float), np.asarray(h, dtype=float))


@dataclass(frozen=True)
class PlanarField:
    """Real function of ``(rho, h)`` on a rectangle symmetric in ``rho``."""

    func: Callable
    grad: Optional[Callable] = None

    def __call__(self, rho, h):
        return self.func(np.asarray(rho, dtype=float), np.asarray(h, dtype=float))


@dataclass(frozen=True)
class SpatialField:
    """Complex field ``rho**k e^{ik phi} u(rho, h)`` in cylindrical coordinates of R^3."""

    axial: AxialField
    k: int

    def __call__(self, phi, rho, h):
        phi, rho, h = (np.asarray(a, dtype=float) for a in (phi, rho, h))
        return rho**self.k * np.exp(1j * self.k * phi) * self.axial(rho, h)

    def cartesian(self, x, y, h):
        x, y, h = (np.asarray(a, dtype=float) for a in (x, y, h))
        # (x + iy)**k avoids the angle singularity on the axis
        return (x + 1j * y) ** self.k * self.axial(np.hypot(x, y), h)


# ---------------------------------------------------------------------------
# sphere averages
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def sphere_rule(dim: int, degree: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes (J, dim) and weights (J,) on the unit sphere of ``R^dim``.

    Weights sum to 1 and the rule integrates polynomials of degree ``<= degree``
    exactly.  For ``dim >= 3`` it is a product of a Gauss-Jacobi rule in the
    first coordinate and the rule on the equatorial sphere.
    """
    if dim < 1:
        raise QuadratureConfigError("sphere dimension must be >= 1")
    if dim == 1:
        return np.array([[1.0], [-1.0]]), np.array([0.5, 0.5])
    if dim == 2:
        m = degree + 1
        th = 2.0 * np.pi * np.arange(m) / m
        return np.column_stack([np.cos(th), np.sin(th)]), np.full(m, 1.0 / m)
    q = degree // 2 + 1
    a = 0.5 * (dim - 3)
    if a == 0:
        t, wt = special.roots_legendre(q)
    else:
        t, wt = special.roots_jacobi(q, a, a)
    sub_x, sub_w = sphere_rule(dim - 1, degree)
    s = np.sqrt(1.0 - t**2)
    nodes = np.concatenate(
        [np.column_stack([np.full(len(sub_w), ti), si * sub_x]) for ti, si in zip(t, s)]
    )
    weights = np.concatenate([wi * sub_w for wi in wt])
    return nodes, weights / weights.sum()


def symmetrize(
    u: Callable,
    n: int,
    x0=None,
    eps: float = 1.0,
    H: float = 1.0,
    degree: int = 16,
    tol: Optional[float] = None,
) -> AxialField:
    """Average ``u(x0 + g x, y)`` over rotations ``g`` of the first ``n - 1`` coordinates.

    ``u(x, y)`` takes ``x`` with trailing axis of length ``n - 1``.  The Haar
    average over ``O(n-1)`` reduces to the mean over the sphere of radius
    ``rho``, computed with ``sphere_rule(n - 1, degree)``.  With ``tol`` set,
    the rule is compared against one eight degrees higher at a few probe
    points and ``QuadratureConfigError`` is raised if they disagree.
    """
    if n < 2:
        raise PreconditionError("symmetrization needs n >= 2")
    if degree < 1:
        raise QuadratureConfigError(f"quadrature degree must be >= 1, got {degree}")
    dim = n - 1
    x0 = np.zeros(dim) if x0 is None else np.asarray(x0, dtype=float)

    def average(rho, h, deg):
        nodes, weights = sphere_rule(dim, deg)
        rho = np.asarray(rho, dtype=float)
        h = np.asarray(h, dtype=float)
        rho, h = np.broadcast_arrays(rho, h)
        pts = x0 + rho[..., None, None] * nodes
        vals = u(pts, h[..., None])
        return np.tensordot(vals, weights, axes=([-1], [0]))

    if tol is not None:
        probe_r = np.array([0.25, 0.5, 0.9]) * eps
        probe_h = np.array([0.0, 0.5, -0.5]) * H
        diff = np.max(np.abs(average(probe_r, probe_h, degree) - average(probe_r, probe_h, degree + 8)))
        if diff > tol:
            raise QuadratureConfigError(
                f"sphere rule of degree {degree} misses tolerance {tol:g} (discrepancy {diff:.3g})"
            )

    return AxialField(lambda rho, h: average(rho, h, degree), n=n, eps=eps, H=H)


# ---------------------------------------------------------------------------
# lifts
# ---------------------------------------------------------------------------

def lift_4_to_2(u: AxialField) -> PlanarField:
    """``v(rho, h) = rho * u(|rho|, h)``: odd in ``rho`` and harmonic in the plane."""
    if u.n != 4:
        raise PreconditionError(f"lift_4_to_2 needs an axial field in R^4, got n={u.n}")

    def v(rho, h):
        return rho * u(np.abs(rho), h)

    grad = None
    if u.grad is not None:

        def grad(rho, h):
            r = np.abs(rho)
            ur, uh = u.grad(r, h)
            return u(r, h) + r * ur, rho * uh

    return PlanarField(v, grad)


def lift_odd_to_3(u: AxialField, k: int) -> SpatialField:
    """``v = rho**k e^{ik phi} u(rho, h)``, harmonic in R^3 when ``u`` solves the n = 2k+3 equation."""
    if k < 1 or u.n != 2 * k + 3:
        raise PreconditionError(f"lift_odd_to_3 needs n = 2k + 3 with k >= 1, got n={u.n}, k={k}")
    return SpatialField(u, k)


def gradient_to_holomorphic(v: PlanarField, step: float = 1e-5) -> Callable:
    """``f = v_rho - i v_h`` as a function of ``zeta = rho + i h``; ``|f| = |grad v|``.

    Uses ``v.grad`` when available, centered differences otherwise.
    """
    if v.grad is not None:

        def f(rho, h):
            vr, vh = v.grad(np.asarray(rho, dtype=float), np.asarray(h, dtype=float))
            return vr - 1j * vh

        return f

    def f(rho, h):
        rho = np.asarray(rho, dtype=float)
        h = np.asarray(h, dtype=float)
        vr = (v(rho + step, h) - v(rho - step, h)) / (2 * step)
        vh = (v(rho, h + step) - v(rho, h - step)) / (2 * step)
        return vr - 1j * vh

    return f


def cauchy_riemann_residual(f: Callable, rho, h, step: float = 1e-3) -> float:
    """Max of ``|P_rho - Q_h| + |P_h + Q_rho|`` for ``f = P + iQ`` at the given points."""
    rho = np.asarray(rho, dtype=float)
    h = np.asarray(h, dtype=float)
    d_rho = (f(rho + step, h) - f(rho - step, h)) / (2 * step)
    d_h = (f(rho, h + step) - f(rho, h - step)) / (2 * step)
    r1 = np.abs(d_rho.real - d_h.imag)
    r2 = np.abs(d_rho.imag + d_h.real)
    return float(np.max(r1 + r2))


# ---------------------------------------------------------------------------
# explicit constants
# ---------------------------------------------------------------------------

def derivative_bound_constant(k: int, r: float, n: int = 3) -> float:
    """``(n k)**k / r**k``.

    A harmonic ``v`` in ``R^n`` has ``|grad v|(x) <= (n / s) sup_{B_s(x)} |v|``;
    applying this ``k`` times on nested balls of radius ``r / k`` bounds any
    ``k``-th directional derivative at the centre by the returned constant
    times ``sup_{B_r} |v|``.
    """
    if k < 1 or not r > 0:
        raise PreconditionError("derivative bound needs k >= 1 and r > 0")
    return (n * k / r) ** k


def cauchy_branch(h: float, eps: float) -> str:
    """Which Cauchy estimate sets the gradient prefactor at height ``|h|``."""
    h = abs(h)
    if h < eps:
        return "h<=eps"
    if h > eps:
        return "h>=eps"
    return "crossover"


def cauchy_gradient_majorant(m: Majorant, eps: float) -> Derived:
    """Majorant of ``|grad(rho w)|`` on the half-width strip: ``derived_majorant(m, eps)``.

    For ``|h| <= eps`` the estimate uses the disk of radius ``|h|/2`` (prefactor
    ``100/|h|``); for ``|h| >= eps`` the disk of radius ``eps/4`` (prefactor
    ``100/eps``).  Both use ``M(|h|/2)`` as the sup of the lifted field.
    """
    return derived_majorant(m, eps)


# ---------------------------------------------------------------------------
# finite-difference residuals
# ---------------------------------------------------------------------------

def laplacian_residual(values: np.ndarray, spacings) -> np.ndarray:
    """Centered second-order Laplacian on interior points of a tensor grid."""
    values = np.asarray(values)
    inner = tuple(slice(1, -1) for _ in range(values.ndim))
    out = np.zeros(tuple(s - 2 for s in values.shape), dtype=values.dtype)
    for ax, hx in enumerate(spacings):
        lo = list(inner)
        hi = list(inner)
        lo[ax] = slice(0, -2)
        hi[ax] = slice(2, None)
        out = out + (values[tuple(hi)] - 2.0 * values[inner] + values[tuple(lo)]) / hx**2
    return out


def euler_darboux_residual(u: Callable, n: int, rho_axis, h_axis) -> np.ndarray:
    """``u_rr + u_hh + (n-2)/rho u_r`` on interior grid points (the axis row must be excluded)."""
    rho_axis = np.asarray(rho_axis, dtype=float)
    h_axis = np.asarray(h_axis, dtype=float)
    if rho_axis[0] <= 0:
        raise PreconditionError("Euler-Darboux residual grid must start at rho > 0")
    R, Hh = np.meshgrid(rho_axis, h_axis, indexing="ij")
    vals = u(R, Hh)
    dr = rho_axis[1] - rho_axis[0]
    dh = h_axis[1] - h_axis[0]
    lap = laplacian_residual(vals, (dr, dh))
    ur = (vals[2:, 1:-1] - vals[:-2, 1:-1]) / (2 * dr)
    return lap + (n - 2) / R[1:-1, 1:-1] * ur
