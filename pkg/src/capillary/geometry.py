"""Operators in triply orthogonal coordinates adapted to the equal-density surfaces.

Coordinates (x1, x2, x3) with scale factors h_i; x3 runs along the normal
e3, oriented towards increasing density.  Curvatures are
``r[i, j] = -h_{i,j} / (h_i h_j)`` where ``h_{i,j} = d h_i / d x_j``.

Sign convention: ``div e3 = -2 / R_m``.  For a sphere of radius r with e3
pointing outward, ``R_m = -r``.  A planar layer has ``R_m = inf``.

The identity checks at the bottom integrate sampled 1D profiles across the
layer under the thin-layer assumptions: purely normal motion
``u3 = Q / rho``, tangential scale factors and ``R_m`` constant along x3.
"""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import DomainError


@dataclass(frozen=True)
class OrthoFrame:
    """Scale factors and curvatures of an orthogonal frame at one point.

    ``parallel`` marks equal-density surfaces that are parallel, which
    forces ``r[2, 0] = r[2, 1] = 0``.
    """

    h: tuple = (1.0, 1.0, 1.0)
    r: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))
    parallel: bool = False

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float)
        if h.shape != (3,) or np.any(h <= 0.0):
            raise DomainError("scale factors must be three positive numbers")
        r = np.array(self.r, dtype=float)
        if r.shape != (3, 3):
            raise DomainError("curvature array must be 3x3")
        np.fill_diagonal(r, 0.0)
        if self.parallel:
            if r[2, 0] != 0.0 or r[2, 1] != 0.0:
                raise DomainError("parallel surfaces require r31 = r32 = 0")
        object.__setattr__(self, "h", tuple(h))
        object.__setattr__(self, "r", r)

    @classmethod
    def cartesian(cls):
        return cls(parallel=True)

    @classmethod
    def from_scale_derivatives(cls, h, dh, parallel=False):
        """Frame from scale factors and ``dh[i][j] = d h_i / d x_j``."""
        h = np.asarray(h, dtype=float)
        dh = np.asarray(dh, dtype=float)
        r = -dh / np.outer(h, h)
        if parallel:
            r[2, 0] = r[2, 1] = 0.0
        return cls(h=tuple(h), r=r, parallel=parallel)


@dataclass(frozen=True)
class VelocitySample:
    """Velocity components ``u[i]`` and coordinate derivatives ``du[i][j] = d u_i / d x_j``."""

    u: tuple
    du: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        du = np.asarray(self.du, dtype=float)
        if u.shape != (3,) or du.shape != (3, 3):
            raise DomainError("velocity sample needs 3 components and a 3x3 derivative array")
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(du))):
            raise DomainError("velocity sample must be finite")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "du", du)


def laplacian_normal(rho_prime, rho_second, r_m, h3=1.0, dh3=0.0):
    """Laplacian of a field that varies only along the normal coordinate x3.

        lap = -(2/R_m) rho_,3 / h3 + (1/h3) d/dx3 (rho_,3 / h3)

    ``rho_prime`` and ``rho_second`` are d/dx3 and d2/dx3**2 of the field;
    ``dh3`` is d h3 / d x3 (zero for the usual thin-layer frame).
    """
    if np.any(np.asarray(r_m) == 0.0):
        raise DomainError("mean curvature radius must be nonzero")
    h3 = np.asarray(h3, dtype=float)
    if np.any(h3 <= 0.0):
        raise DomainError("h3 must be positive")
    rho_prime = np.asarray(rho_prime, dtype=float)
    curv = np.where(np.isinf(r_m), 0.0, -2.0 / np.asarray(r_m, dtype=float))
    normal = rho_second / h3 ** 2 - rho_prime * dh3 / h3 ** 3
    out = curv * rho_prime / h3 + normal
    return float(out) if np.ndim(out) == 0 else out


def deformation_tensor(v, frame):
    """Symmetric strain-rate tensor D in the orthogonal frame.

    Diagonal terms ``D_ii = u_i,i / h_i - sum_{k != i} r[i, k] u_k`` and
    off-diagonal terms
    ``D_ij = (u_i,j / h_j + u_j,i / h_i + r[i, j] u_i + r[j, i] u_j) / 2``.
    """
    u, du = v.u, v.du
    h, r = np.asarray(frame.h), frame.r
    d = np.empty((3, 3))
    for i in range(3):
        d[i, i] = du[i, i] / h[i] - sum(r[i, k] * u[k] for k in range(3) if k != i)
        for j in range(i + 1, 3):
            d[i, j] = d[j, i] = 0.5 * (du[i, j] / h[j] + du[j, i] / h[i]
                                       + r[i, j] * u[i] + r[j, i] * u[j])
    return d


def dissipation(d, mu, eta):
    """Viscous dissipation ``(eta (tr D)**2 + 2 mu tr(D**2)) / 2``."""
    d = np.asarray(d, dtype=float)
    tr = np.trace(d)
    return 0.5 * (eta * tr ** 2 + 2.0 * mu * np.sum(d * d.T))


def _profile_arrays(z, *arrays):
    z = np.asarray(z, dtype=float)
    out = []
    for a in arrays:
        a = np.asarray(a, dtype=float)
        if a.ndim == 0:
            a = np.full(z.shape, float(a))
        if a.shape != z.shape:
            raise DomainError("profiles must be sampled on the same grid")
        out.append(a)
    if z.ndim != 1 or np.any(np.diff(z) <= 0.0):
        raise DomainError("grid must be one-dimensional and strictly increasing")
    return z, out


def _curvature_factor(r_m):
    if r_m == 0.0:
        raise DomainError("mean curvature radius must be nonzero")
    return 0.0 if math.isinf(r_m) else 2.0 / r_m


@dataclass(frozen=True)
class JumpBrackets:
    """Differences between each station and the vapour end (index 0)."""

    eta_u3_jump: np.ndarray
    normal_viscous_jump: np.ndarray


def jump_relations(q, z, rho, eta, mu, h3=1.0):
    """Brackets ``[eta u3]`` and ``[(eta + 2 mu) D33]`` across the layer.

    Normal motion with ``u3 = Q / rho`` so that ``u3,3 = -(Q / rho**2) rho,3``
    and ``D33 = u3,3 / h3``; ``rho,3`` is a second-order finite difference.
    """
    z, (rho, eta, mu, h3) = _profile_arrays(z, rho, eta, mu, h3)
    u3 = q / rho
    rho_3 = np.gradient(rho, z, edge_order=2)
    d33 = -(q / rho ** 2) * rho_3 / h3
    eta_u3 = eta * u3
    normal = (eta + 2.0 * mu) * d33
    return JumpBrackets(eta_u3 - eta_u3[0], normal - normal[0])


def verify_property2(z, rho, eta, mu, q, r_m, h3=1.0):
    """Residual of the normal viscous-stress identity at each station.

    Left side, integrated from the vapour end::

        int ( d(eta div u)/dx3 + 2 h3 (div mu D)_3 ) dx3

    with ``div u = D33 - (2/R_m) u3`` and the unbounded part of
    ``(div mu D)_3`` equal to ``(1/h3) d(mu D33)/dx3``.  Right side::

        [(eta + 2 mu) D33] - (2/R_m) [eta u3]

    Derivatives are second-order finite differences of the sampled ``u3``
    and the integral is a cumulative trapezoid, so the residual converges at
    second order in the grid step.  Returns ``(residual, rhs)`` arrays.
    """
    z, (rho, eta, mu, h3) = _profile_arrays(z, rho, eta, mu, h3)
    if len(z) < 16:
        raise DomainError("profile too coarse for the identity check")
    c = _curvature_factor(r_m)
    u3 = q / rho
    d33 = np.gradient(u3, z, edge_order=2) / h3
    div_u = d33 - c * u3
    integrand = (np.gradient(eta * div_u, z, edge_order=2)
                 + 2.0 * np.gradient(mu * d33, z, edge_order=2))
    lhs = cumulative_trapezoid(integrand, z, initial=0.0)
    visc = (eta + 2.0 * mu) * d33
    eta_u3 = eta * u3
    rhs = (visc - visc[0]) - c * (eta_u3 - eta_u3[0])
    return np.abs(lhs - rhs), rhs


def verify_property6(z, rho, q, h3=1.0):
    """Inertia integral across the layer for steady normal motion.

    ``lhs = int rho a3 h3 dx3`` with ``a3 = u3 du3/ds``, ``u3 = Q/rho`` and
    ``ds = h3 dx3``, integrated numerically from the vapour end;
    ``rhs = Q**2 (1/rho - 1/rho_v)``.  Both are returned per station.
    """
    z, (rho, h3) = _profile_arrays(z, rho, h3)
    if len(z) < 16:
        raise DomainError("profile too coarse for the identity check")
    u3 = q / rho
    a3 = u3 * np.gradient(u3, z, edge_order=2) / h3
    lhs = cumulative_trapezoid(rho * a3 * h3, z, initial=0.0)
    rhs = q ** 2 * (1.0 / rho - 1.0 / rho[0])
    return lhs, rhs
