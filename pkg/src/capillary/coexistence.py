"""Liquid-vapour coexistence from equal pressure and equal chemical potential.

The equal-chemical-potential condition is the equilibrium case of the
integral invariant

    int_{rho_v}^{rho_l} P / rho**2 d(rho) = P_v / rho_v - P_l / rho_l,

which also holds when the two bulk pressures differ, for motions that keep
the equal-density surfaces material.  :func:`maxwell_residual` evaluates it
for arbitrary bulk states.
"""

from dataclasses import dataclass, asdict
import math

import numpy as np

from . import eos
from .errors import ConvergenceError, DomainError, NoCoexistenceError
from .numerics import find_root

PRESSURE_TOL = 1e-12
MAX_NEWTON = 100


@dataclass(frozen=True)
class CoexistenceState:
    """Binodal at one temperature.

    Attributes
    ----------
    temp : float
    rho_v, rho_l : float
        Vapour and liquid bulk densities.
    p0 : float
        Common bulk pressure.
    spinodal : tuple of float
        ``(rho_s_low, rho_s_high)``, strictly between ``rho_v`` and ``rho_l``.
    """

    temp: float
    rho_v: float
    rho_l: float
    p0: float
    spinodal: tuple

    @property
    def rho_i(self):
        """Mid density (rho_v + rho_l) / 2 that splits the two branches."""
        return 0.5 * (self.rho_v + self.rho_l)

    @property
    def delta_rho(self):
        return self.rho_l - self.rho_v

    def to_dict(self):
        d = asdict(self)
        d["spinodal"] = list(self.spinodal)
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["spinodal"] = tuple(d["spinodal"])
        return cls(**d)

    def validate(self, fluid, tol=1e-10):
        """Raise :class:`DomainError` unless every binodal invariant holds."""
        s_low, s_high = self.spinodal
        if not 0.0 < self.rho_v < s_low < s_high < self.rho_l < fluid.rho_max:
            raise DomainError("coexistence densities are not ordered around the spinodal")
        p_scale = fluid.p_crit
        for rho in (self.rho_v, self.rho_l):
            if abs(eos.pressure(rho, self.temp, fluid) - self.p0) > tol * p_scale:
                raise DomainError("bulk pressure does not match the coexistence pressure")
        res = maxwell_residual(self.rho_v, self.rho_l, self.p0, self.p0, self.temp, fluid)
        if abs(res) > tol * p_scale / fluid.rho_crit:
            raise DomainError(f"Maxwell residual {res:.3e} exceeds tolerance")
        return self


def maxwell_residual(rho_v, rho_l, p_v, p_l, temp, fluid):
    """Residual of the integral invariant for bulk states (rho_v, P_v), (rho_l, P_l).

    ``int_{rho_v}^{rho_l} P/rho**2 - (P_v/rho_v - P_l/rho_l)``, with the
    integral taken in closed form as ``alpha(rho_l) - alpha(rho_v)``.
    """
    if rho_v > rho_l:
        raise DomainError("expected rho_v <= rho_l")
    dalpha = eos.free_energy_difference(rho_l, rho_v, temp, fluid)
    return dalpha - p_v / rho_v + p_l / rho_l


def _residuals(rho_v, rho_l, temp, fluid):
    dp = eos.pressure(rho_v, temp, fluid) - eos.pressure(rho_l, temp, fluid)
    dmu = -eos.chemical_potential_difference(rho_l, rho_v, temp, fluid)
    return dp, dmu


def _branch_root(p0, lo, hi, temp, fluid):
    return find_root(lambda r: eos.pressure(r, temp, fluid) - p0, (lo, hi))


def _fallback(temp, fluid, s_low, s_high):
    """Bisection on the coexistence pressure between the spinodal pressures."""
    p_hi = eos.pressure(s_low, temp, fluid)
    p_lo = eos.pressure(s_high, temp, fluid)
    # below zero pressure the vapour branch has no root
    p_lo = max(p_lo, p_hi * 1e-200)
    rho_top = fluid.rho_max * (1.0 - 1e-15)

    def residual(p0):
        rv = _branch_root(p0, rho_top * 1e-300, s_low, temp, fluid)
        rl = _branch_root(p0, s_high, rho_top, temp, fluid)
        return maxwell_residual(rv, rl, p0, p0, temp, fluid)

    span = p_hi - p_lo
    p0 = find_root(residual, (p_lo + 1e-12 * span, p_hi - 1e-12 * span))
    rv = _branch_root(p0, rho_top * 1e-300, s_low, temp, fluid)
    rl = _branch_root(p0, s_high, rho_top, temp, fluid)
    return rv, rl


def _newton(rv, rl, temp, fluid, bracket, tols):
    """Damped Newton from ``(rv, rl)``; returns ``(rv, rl, converged)``.

    A step is halved until the iterate stays on its own side of the spinodal
    and the scaled residual norm decreases.
    """
    s_low, s_high = bracket
    p_tol, mu_tol = tols

    def scaled(v, l):
        f_p, f_mu = _residuals(v, l, temp, fluid)
        return f_p, f_mu, math.hypot(f_p / p_tol, f_mu / mu_tol)

    f_p, f_mu, norm = scaled(rv, rl)
    for _ in range(MAX_NEWTON):
        if abs(f_p) < p_tol and abs(f_mu) < mu_tol:
            return rv, rl, True
        dpv = eos.dpressure_drho(rv, temp, fluid)
        dpl = eos.dpressure_drho(rl, temp, fluid)
        jac = np.array([[dpv, -dpl], [dpv / rv, -dpl / rl]])
        try:
            step = np.linalg.solve(jac, [-f_p, -f_mu])
        except np.linalg.LinAlgError:
            break
        damp = 1.0
        while damp > 1e-12:
            nv = rv + damp * step[0]
            nl = rl + damp * step[1]
            if 0.0 < nv < s_low and s_high < nl < fluid.rho_max:
                n_p, n_mu, n_norm = scaled(nv, nl)
                if n_norm < (1.0 - 1e-4 * damp) * norm:
                    break
            damp *= 0.5
        else:
            break
        rv, rl, f_p, f_mu, norm = nv, nl, n_p, n_mu, n_norm
    return rv, rl, abs(f_p) < p_tol and abs(f_mu) < mu_tol


def maxwell_construction(temp, fluid):
    """Solve for the coexisting densities and pressure at ``temp``.

    Damped two-variable Newton iteration on ``(P_v - P_l, mu_v - mu_l)``
    seeded outside the spinodal.  If Newton stalls (typically close to the
    critical point, where the seeds are far from the binodal) the pressure
    is bisected on the Maxwell residual and Newton polishes the result.

    Raises
    ------
    NoCoexistenceError
        If ``temp >= T_c``.
    ConvergenceError
        If both Newton and the fallback fail; ``exc.last`` is the final
        ``(rho_v, rho_l)`` iterate.
    """
    if temp >= fluid.t_crit:
        raise NoCoexistenceError("no coexistence above critical temperature")
    bracket = eos.spinodal(temp, fluid)
    s_low, s_high = bracket
    tols = (PRESSURE_TOL * fluid.p_crit,
            PRESSURE_TOL * max(fluid.mu_crit(), fluid.p_crit / fluid.rho_crit))

    rv, rl, ok = _newton(0.5 * s_low, 0.5 * (s_high + fluid.rho_max), temp, fluid,
                         bracket, tols)
    if not ok:
        try:
            rv, rl = _fallback(temp, fluid, s_low, s_high)
        except (DomainError, RuntimeError, ValueError) as exc:
            raise ConvergenceError(f"coexistence solve failed at T={temp}: {exc}",
                                   last=(rv, rl)) from exc
        rv, rl, ok = _newton(rv, rl, temp, fluid, bracket, tols)
        if not ok:
            raise ConvergenceError(f"coexistence solve failed at T={temp}", last=(rv, rl))

    # the vapour-side pressure carries no cancellation, the liquid side does
    p0 = eos.pressure(rv, temp, fluid)
    return CoexistenceState(temp=float(temp), rho_v=float(rv), rho_l=float(rl),
                            p0=p0, spinodal=(s_low, s_high))


def binodal(temps, fluid):
    """Coexistence states for a sequence of temperatures, in input order."""
    return [maxwell_construction(t, fluid) for t in temps]
