"""Independent reference computations used by the tests.

These deliberately avoid the package's own solvers: polynomial roots from
numpy, integrals from scipy.integrate.quad, plain bisection and grid scans.
"""

import warnings

import numpy as np
from scipy.integrate import quad


def vdw_pressure(rho, t, a=3.0, b=1.0 / 3.0, r=8.0 / 3.0):
    return rho * r * t / (1.0 - b * rho) - a * rho ** 2


def cubic_roots(p0, t, a=3.0, b=1.0 / 3.0, r=8.0 / 3.0):
    """Real roots of P(rho) = p0, ascending."""
    roots = np.roots([-a * b, a, -(p0 * b + r * t), p0])
    real = np.sort(roots[np.abs(roots.imag) < 1e-9].real)
    return real


def spinodal_scan(t, n=100_001, a=3.0, b=1.0 / 3.0, r=8.0 / 3.0):
    """Sign changes of dP/drho on a uniform grid; returns cell midpoints."""
    rho = np.linspace(1e-6, 1.0 / b - 1e-6, n)
    slope = r * t / (1.0 - b * rho) ** 2 - 2.0 * a * rho
    idx = np.nonzero(np.diff(np.sign(slope)))[0]
    return 0.5 * (rho[idx] + rho[idx + 1]), rho[1] - rho[0]


def equal_area_binodal(t, iters=200):
    """Bisect the coexistence pressure on the equal-area rule.

    Area is int (P - p0) / rho**2 d(rho) between the outer roots of
    P(rho) = p0, evaluated by adaptive quadrature.
    """
    lo_rho, hi_rho = spinodal_scan(t, n=20_001)[0]
    p_lo = max(vdw_pressure(hi_rho, t), 1e-300)
    p_hi = vdw_pressure(lo_rho, t)

    def area(p0):
        roots = cubic_roots(p0, t)
        rv, rl = roots[0], roots[-1]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            val, _ = quad(lambda x: (vdw_pressure(x, t) - p0) / x ** 2, rv, rl,
                          epsabs=0.0, epsrel=1e-13, limit=200)
        return val, rv, rl

    f_lo = area(p_lo)[0]
    for _ in range(iters):
        mid = 0.5 * (p_lo + p_hi)
        f_mid = area(mid)[0]
        if np.sign(f_mid) == np.sign(f_lo):
            p_lo, f_lo = mid, f_mid
        else:
            p_hi = mid
        if p_hi - p_lo <= 1e-15 * p_hi:
            break
    p0 = 0.5 * (p_lo + p_hi)
    _, rv, rl = area(p0)
    return rv, rl, p0


def vdw_alpha(rho, t, a=3.0, b=1.0 / 3.0, r=8.0 / 3.0):
    return r * t * np.log(rho / (1.0 - b * rho)) - a * rho


def excess_closed_form(rho, rho_ref, p0, t):
    """W(rho) straight from the closed-form free energy, no offset tricks."""
    return rho * (vdw_alpha(rho, t) - vdw_alpha(rho_ref, t)) + p0 * (1.0 - rho / rho_ref)


def excess_by_quadrature(rho, rho_ref, p0, t):
    """W(rho) = rho * int_{rho_ref}^{rho} (P(u) - p0) / u**2 du."""
    val, _ = quad(lambda u: (vdw_pressure(u, t) - p0) / u ** 2, rho_ref, rho,
                  epsabs=0.0, epsrel=1e-12)
    return rho * val


def tension_quad(rv, rl, p0, t, lam=1.0):
    """sqrt(2 lam) int sqrt(W) over [rho_v, rho_l], split at the midpoint."""
    mid = 0.5 * (rv + rl)
    total = 0.0
    for lo, hi, ref in ((rv, mid, rv), (mid, rl, rl)):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            val, _ = quad(lambda x: np.sqrt(max(excess_closed_form(x, ref, p0, t), 0.0)),
                          lo, hi, epsabs=0.0, epsrel=1e-11, limit=200)
        total += val
    return np.sqrt(2.0 * lam) * total


def thickness_trapezoid(rv, rl, p0, t, lam=1.0, n=1_000_000):
    """10-90 thickness as the trapezoid rule of d(rho) / rho' on n panels."""
    delta = rl - rv
    rho = np.linspace(rv + 0.1 * delta, rv + 0.9 * delta, n + 1)
    mid = 0.5 * (rv + rl)
    w = np.where(rho <= mid, excess_closed_form(rho, rv, p0, t),
                 excess_closed_form(rho, rl, p0, t))
    return np.trapezoid(1.0 / np.sqrt(2.0 * w / lam), rho)


def cartesian_laplacian(field, x, y, z, h=1e-4):
    """Seven-point Laplacian of field(x, y, z) at one point."""
    f0 = field(x, y, z)
    s = (field(x + h, y, z) + field(x - h, y, z) + field(x, y + h, z)
         + field(x, y - h, z) + field(x, y, z + h) + field(x, y, z - h))
    return (s - 6.0 * f0) / h ** 2
