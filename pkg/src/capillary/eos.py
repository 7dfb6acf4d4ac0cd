"""Van der Waals fluid in specific (per unit mass) variables.

    P(rho, T)     = rho r T / (1 - b rho) - a rho**2
    alpha(rho, T) = r T ln(rho / (1 - b rho)) - a rho
    mu(rho, T)    = alpha + P / rho

``alpha`` omits every additive term that depends on temperature alone, so
only density derivatives and same-temperature differences of ``alpha`` and
``mu`` are physically meaningful.  In reduced units (a=3, b=1/3, r=8/3) the
critical point sits at rho = T = P = 1.

All functions broadcast over numpy arrays.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import DomainError, NoCoexistenceError
from .numerics import find_root

REDUCED_CONSTANTS = {"a": 3.0, "b": 1.0 / 3.0, "r_specific": 8.0 / 3.0}


@dataclass(frozen=True)
class ViscosityLaw:
    """Affine viscosity law ``value(rho) = intercept + slope * rho`` (poise)."""

    intercept: float
    slope: float = 0.0

    @classmethod
    def constant(cls, value):
        return cls(float(value), 0.0)

    @classmethod
    def two_point(cls, rho_a, value_a, rho_b, value_b):
        """Line through two (density, viscosity) samples, e.g. the two bulks."""
        if rho_a == rho_b:
            if value_a != value_b:
                raise DomainError("two-point viscosity table needs distinct densities")
            return cls.constant(value_a)
        slope = (value_b - value_a) / (rho_b - rho_a)
        return cls(value_a - slope * rho_a, slope)

    def scaled(self, factor):
        return ViscosityLaw(factor * self.intercept, factor * self.slope)

    def __call__(self, rho):
        return self.intercept + self.slope * np.asarray(rho, dtype=float)


def _default_mu():
    return ViscosityLaw.constant(1.0)


@dataclass(frozen=True)
class FluidParams:
    """Equation-of-state constants, capillarity coefficient and viscosities.

    ``visc_eta`` defaults to the Stokes law eta = -(2/3) mu.  Units are either
    ``"cgs"`` or ``"reduced"``; the reduced flag only documents how numbers
    are meant to be read, the formulas are identical.
    """

    a: float
    b: float
    r_specific: float
    lam: float
    visc_mu: ViscosityLaw = field(default_factory=_default_mu)
    visc_eta: ViscosityLaw = None
    units: str = "cgs"

    def __post_init__(self):
        for name in ("a", "b", "r_specific", "lam"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be a positive finite number, got {value}")
        if self.units not in ("cgs", "reduced"):
            raise DomainError(f"units must be 'cgs' or 'reduced', got {self.units!r}")
        if self.visc_eta is None:
            object.__setattr__(self, "visc_eta", self.visc_mu.scaled(-2.0 / 3.0))
        # affine laws: positivity on the closed density range reduces to the ends
        ends = np.array([0.0, 1.0 / self.b])
        if np.any(self.visc_mu(ends) <= 0.0):
            raise DomainError("dynamic viscosity must be positive on [0, 1/b)")
        if np.any(self.visc_eta(ends) + 2.0 * self.visc_mu(ends) <= 0.0):
            raise DomainError("eta + 2 mu must be positive on [0, 1/b)")

    @classmethod
    def reduced(cls, lam=1.0, visc_mu=None, visc_eta=None):
        """Fluid in reduced units, critical point at (1, 1, 1)."""
        return cls(lam=lam, visc_mu=visc_mu or _default_mu(), visc_eta=visc_eta,
                   units="reduced", **REDUCED_CONSTANTS)

    @property
    def rho_max(self):
        return 1.0 / self.b

    @property
    def t_crit(self):
        return 8.0 * self.a / (27.0 * self.b * self.r_specific)

    @property
    def rho_crit(self):
        return 1.0 / (3.0 * self.b)

    @property
    def p_crit(self):
        return self.a / (27.0 * self.b ** 2)

    def temp(self, reduced_temp):
        """Absolute temperature for a reduced temperature T / T_c."""
        return reduced_temp * self.t_crit

    def mu_crit(self):
        """Chemical-potential scale used in convergence tests."""
        return abs(chemical_potential(self.rho_crit, self.t_crit, self))


@dataclass(frozen=True)
class ThermoPoint:
    """A (density, temperature) state."""

    rho: float
    temp: float

    def check(self, fluid):
        _check(self.rho, self.temp, fluid)
        return self


def _check(rho, temp, fluid):
    rho = np.asarray(rho, dtype=float)
    if np.any(~np.isfinite(rho)) or np.any(rho <= 0.0) or np.any(rho * fluid.b >= 1.0):
        raise DomainError(f"density outside (0, 1/b) = (0, {fluid.rho_max:g})")
    if not (np.all(np.isfinite(temp)) and np.all(np.asarray(temp) > 0.0)):
        raise DomainError("temperature must be positive")
    return rho


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


def pressure(rho, temp, fluid):
    """Van der Waals pressure."""
    rho = _check(rho, temp, fluid)
    p = rho * fluid.r_specific * temp / (1.0 - fluid.b * rho) - fluid.a * rho ** 2
    return _scalar_or_array(p)


def dpressure_drho(rho, temp, fluid):
    """Isothermal slope dP/drho."""
    rho = _check(rho, temp, fluid)
    d = fluid.r_specific * temp / (1.0 - fluid.b * rho) ** 2 - 2.0 * fluid.a * rho
    return _scalar_or_array(d)


def d2pressure_drho2(rho, temp, fluid):
    rho = _check(rho, temp, fluid)
    d2 = 2.0 * fluid.b * fluid.r_specific * temp / (1.0 - fluid.b * rho) ** 3 - 2.0 * fluid.a
    return _scalar_or_array(d2)


def specific_free_energy(rho, temp, fluid):
    """Specific free energy alpha with rho**2 d(alpha)/d(rho) = P."""
    rho = _check(rho, temp, fluid)
    alpha = fluid.r_specific * temp * np.log(rho / (1.0 - fluid.b * rho)) - fluid.a * rho
    return _scalar_or_array(alpha)


def chemical_potential(rho, temp, fluid):
    """Specific Gibbs energy alpha + P/rho."""
    rho = _check(rho, temp, fluid)
    rt = fluid.r_specific * temp
    one_m = 1.0 - fluid.b * rho
    mu = rt * np.log(rho / one_m) + rt / one_m - 2.0 * fluid.a * rho
    return _scalar_or_array(mu)


def free_energy_difference(rho, rho_ref, temp, fluid):
    """alpha(rho) - alpha(rho_ref), accurate when rho is close to rho_ref."""
    rho = _check(rho, temp, fluid)
    rho_ref = _check(rho_ref, temp, fluid)
    d = rho - rho_ref
    b = fluid.b
    logs = np.log1p(d / rho_ref) - np.log1p(-b * d / (1.0 - b * rho_ref))
    return _scalar_or_array(fluid.r_specific * temp * logs - fluid.a * d)


def chemical_potential_difference(rho, rho_ref, temp, fluid):
    """mu(rho) - mu(rho_ref) without catastrophic cancellation."""
    dalpha = free_energy_difference(rho, rho_ref, temp, fluid)
    rho = np.asarray(rho, dtype=float)
    d = rho - rho_ref
    b = fluid.b
    # P/rho = rT/(1 - b rho) - a rho
    dp_over_rho = (fluid.r_specific * temp * b * d / ((1.0 - b * rho) * (1.0 - b * rho_ref))
                   - fluid.a * d)
    return _scalar_or_array(dalpha + dp_over_rho)


def spinodal(temp, fluid):
    """Densities where dP/drho vanishes, ``(rho_low, rho_high)``.

    The lower root lies in (0, rho_c), the upper in (rho_c, 1/b).
    """
    if not temp > 0.0:
        raise DomainError("temperature must be positive")
    if temp >= fluid.t_crit:
        raise NoCoexistenceError("no spinodal at or above the critical temperature")
    rho_c = fluid.rho_crit
    rt = fluid.r_specific * temp

    # dP/drho = 0  <=>  rT = 2 a rho (1 - b rho)**2; this form stays finite near 1/b
    def g(rho):
        return rt - 2.0 * fluid.a * rho * (1.0 - fluid.b * rho) ** 2

    low = find_root(g, (0.0, rho_c))
    high = find_root(g, (rho_c, fluid.rho_max))
    return low, high
