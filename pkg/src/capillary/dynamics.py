"""Interface jump conditions with mass transfer and the Marangoni balance.

Across a thin capillary layer crossed by a mass flux Q the normal stress
balance reduces to

    P_l - P_v = Q**2 (1/rho_v - 1/rho_l) + 2 K / R_m,
    K = H - Q (eta_l / rho_l - eta_v / rho_v),

where K is the viscous dynamical surface tension.  The planar limit
``R_m = inf`` drops the capillary term.
"""

from dataclasses import dataclass, asdict
import math

import numpy as np

from .coexistence import maxwell_construction
from .errors import DomainError
from .geometry import laplacian_normal
from .interface import surface_tension

PLANAR = math.inf
EQ12_RATIO = 1e-6


def _check_densities(rho_v, rho_l):
    if not (rho_v > 0.0 and rho_l > 0.0):
        raise DomainError("densities must be positive")


def _check_rm(r_m):
    if r_m == 0.0 or math.isnan(r_m):
        raise DomainError("mean curvature radius must be nonzero (use inf for planar)")


@dataclass(frozen=True)
class JumpInputs:
    """Flux, curvature, bulk states and static tension for one interface point."""

    q: float
    r_m: float
    rho_v: float
    rho_l: float
    eta_v: float
    eta_l: float
    mu_l: float
    h_static: float

    def __post_init__(self):
        _check_densities(self.rho_v, self.rho_l)
        if not self.rho_v < self.rho_l:
            raise DomainError("expected rho_v < rho_l")
        _check_rm(self.r_m)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


@dataclass(frozen=True)
class JumpResult:
    """``dp = P_l - P_v`` split into its inertial and capillary parts."""

    k_dyn: float
    dp: float
    inertial_term: float
    capillary_term: float

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def viscous_tension(h_static, q, eta_l, rho_l, eta_v, rho_v):
    """K = H - Q (eta_l/rho_l - eta_v/rho_v)."""
    _check_densities(rho_v, rho_l)
    return h_static - q * (eta_l / rho_l - eta_v / rho_v)


def laplace_jump(inputs):
    """Pressure jump across the layer for the given flux and curvature."""
    k = viscous_tension(inputs.h_static, inputs.q, inputs.eta_l, inputs.rho_l,
                        inputs.eta_v, inputs.rho_v)
    inertial = inputs.q ** 2 * (1.0 / inputs.rho_v - 1.0 / inputs.rho_l)
    capillary = 0.0 if math.isinf(inputs.r_m) else 2.0 * k / inputs.r_m
    return JumpResult(k_dyn=k, dp=inertial + capillary, inertial_term=inertial,
                      capillary_term=capillary)


def marangoni_shear(grad_tg_h, mu_l):
    """Liquid-side tangential strain ``(D13, D23) = -grad_tg H / (2 mu_l)``."""
    if not mu_l > 0.0:
        raise DomainError("liquid viscosity must be positive")
    g = np.asarray(grad_tg_h, dtype=float)
    if g.shape != (2,):
        raise DomainError("tangential tension gradient must have two components")
    return -g / (2.0 * mu_l)


def tension_temperature_gradient(temp, dtemp, fluid):
    """dH/dT by a central difference of the equilibrium tension.

    Multiply by dT/ds along the interface to obtain grad_tg H.
    """
    if not dtemp > 0.0:
        raise DomainError("dtemp must be positive")
    if not 0.0 < temp - dtemp:
        raise DomainError("temp - dtemp must be positive")
    if temp + dtemp >= fluid.t_crit:
        raise DomainError("temp + dtemp reaches the critical temperature")
    h = [surface_tension(maxwell_construction(t, fluid), fluid).h_static
         for t in (temp + dtemp, temp - dtemp)]
    return (h[0] - h[1]) / (2.0 * dtemp)


@dataclass(frozen=True)
class Eq12Check:
    """Bulk-vanishing brackets of the layer momentum balance.

    ``capillary`` is ``lam (rho lap(rho) - rho'**2 / 2)`` and ``viscous``
    is ``Q (eta + 2 mu) rho' / rho**2``.  Endpoint values are the larger of
    the two truncated ends; maxima are over the whole profile.
    """

    capillary_end: float
    capillary_max: float
    viscous_end: float
    viscous_max: float
    ratio: float = EQ12_RATIO

    @property
    def capillary_ratio(self):
        return self.capillary_end / self.capillary_max if self.capillary_max else 0.0

    @property
    def viscous_ratio(self):
        return self.viscous_end / self.viscous_max if self.viscous_max else 0.0

    @property
    def passed(self):
        return self.capillary_ratio < self.ratio and self.viscous_ratio < self.ratio


def eq12_interior(profile, q, r_m, fluid):
    """Evaluate the two bulk-vanishing brackets at the profile ends."""
    if len(profile.z) < 64:
        raise DomainError("profile too coarse: need at least 64 samples")
    _check_rm(r_m)
    z, rho, grad = profile.z, profile.rho, profile.drho_dz
    second = np.gradient(grad, z, edge_order=2)
    lap = laplacian_normal(grad, second, r_m)
    cap = np.abs(fluid.lam * (rho * lap - 0.5 * grad ** 2))
    visc = np.abs(q * (fluid.visc_eta(rho) + 2.0 * fluid.visc_mu(rho)) * grad / rho ** 2)
    return Eq12Check(capillary_end=float(max(cap[0], cap[-1])),
                     capillary_max=float(cap.max()),
                     viscous_end=float(max(visc[0], visc[-1])),
                     viscous_max=float(visc.max()))
