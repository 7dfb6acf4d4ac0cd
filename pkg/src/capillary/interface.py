"""Planar equilibrium capillary layer: density profile and surface tension.

With the first integral ``(lam/2) rho'(z)**2 = W(rho)`` the excess free
energy density

    W(rho) = rho * int_{rho_ref}^{rho} (P(u) - P0) / u**2 du
           = rho * (alpha(rho) - alpha(rho_ref)) + P0 * (1 - rho / rho_ref)

fixes the gradient at every density.  ``rho_ref`` is the vapour density on
the vapour branch (rho <= rho_i) and the liquid density on the liquid
branch; at coexistence the two branches describe the same function, the
split only keeps the evaluation well conditioned near each bulk.

The surface tension ``H = lam * int rho'**2 dz`` becomes the density
quadrature ``sqrt(2 lam) * int sqrt(W) d(rho)``.
"""

from dataclasses import dataclass, field
import csv
import io
import json
import math

import numpy as np
from scipy.integrate import simpson
from scipy.special import expit

from . import eos
from .coexistence import CoexistenceState
from .errors import DomainError
from .numerics import DEFAULT_QUAD, integrate, panel_integrals, second_difference

VAPOUR = "vapour"
LIQUID = "liquid"


def _side_ref(side, coex):
    if side == VAPOUR:
        return coex.rho_v
    if side == LIQUID:
        return coex.rho_l
    raise DomainError(f"side must be {VAPOUR!r} or {LIQUID!r}, got {side!r}")


def _excess_from_offset(rho_ref, d, coex, fluid):
    """W at rho = rho_ref + d, computed from the offset to keep precision."""
    d = np.asarray(d, dtype=float)
    rho = rho_ref + d
    b = fluid.b
    dalpha = (fluid.r_specific * coex.temp
              * (np.log1p(d / rho_ref) - np.log1p(-b * d / (1.0 - b * rho_ref)))
              - fluid.a * d)
    return rho * dalpha - coex.p0 * d / rho_ref


def _check_range(rho, coex):
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < coex.rho_v) or np.any(rho > coex.rho_l):
        raise DomainError(f"density outside [rho_v, rho_l] = [{coex.rho_v}, {coex.rho_l}]")
    return rho


def excess_w(rho, side, coex, fluid):
    """Excess free energy per unit volume W(rho) on the given branch."""
    rho = _check_range(rho, coex)
    ref = _side_ref(side, coex)
    w = _excess_from_offset(ref, rho - ref, coex, fluid)
    return float(w) if np.ndim(w) == 0 else w


def density_gradient(rho, coex, fluid, full_output=False):
    """drho/dz = sqrt(2 W / lam) through the layer.

    The vapour branch of W is used up to rho_i and the liquid branch above.
    Tiny negative W from rounding next to the bulks is clamped to zero; with
    ``full_output=True`` the boolean mask of clamped samples is returned too.
    """
    rho = _check_range(rho, coex)
    w = np.where(rho <= coex.rho_i,
                 _excess_from_offset(coex.rho_v, rho - coex.rho_v, coex, fluid),
                 _excess_from_offset(coex.rho_l, rho - coex.rho_l, coex, fluid))
    clamped = w < 0.0
    grad = np.sqrt(2.0 * np.where(clamped, 0.0, w) / fluid.lam)
    if np.ndim(grad) == 0:
        grad = float(grad)
        clamped = bool(clamped)
    return (grad, clamped) if full_output else grad


@dataclass(frozen=True)
class InterfaceProfile:
    """Sampled planar profile, vapour at negative z, z = 0 at rho_i.

    The exponential tails are cut where the density is within
    ``tail_cut * (rho_l - rho_v)`` of either bulk.
    """

    z: np.ndarray
    rho: np.ndarray
    drho_dz: np.ndarray
    thickness_10_90: float
    coex: CoexistenceState
    lam: float
    tail_cut: float
    h_static: float = field(default=float("nan"))

    def __len__(self):
        return len(self.z)

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["z", "rho", "drho_dz"])
        for row in zip(self.z, self.rho, self.drho_dz):
            writer.writerow([f"{v:.17g}" for v in row])
        return buf.getvalue()

    def to_dict(self):
        return {
            "temp": self.coex.temp,
            "thickness_10_90": self.thickness_10_90,
            "h_static": self.h_static,
            "lam": self.lam,
            "tail_cut": self.tail_cut,
            "coex": self.coex.to_dict(),
            "z": self.z.tolist(),
            "rho": self.rho.tolist(),
            "drho_dz": self.drho_dz.tolist(),
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        return cls(z=np.asarray(d["z"], dtype=float), rho=np.asarray(d["rho"], dtype=float),
                   drho_dz=np.asarray(d["drho_dz"], dtype=float),
                   thickness_10_90=d["thickness_10_90"],
                   coex=CoexistenceState.from_dict(d["coex"]), lam=d["lam"],
                   tail_cut=d["tail_cut"], h_static=d.get("h_static", float("nan")))


def _profile_maps(coex, fluid):
    """Density, gradient and dz/dt as functions of the tanh parameter t.

    rho(t) = rho_i + (delta/2) tanh(t); the bulk offsets are evaluated with
    ``expit`` so they stay accurate deep in the tails.
    """
    delta = coex.delta_rho

    def offsets(t):
        return delta * expit(2.0 * t), delta * expit(-2.0 * t)

    def gradient(t):
        t = np.asarray(t, dtype=float)
        d_v, d_l = offsets(t)
        w = np.where(t <= 0.0,
                     _excess_from_offset(coex.rho_v, d_v, coex, fluid),
                     _excess_from_offset(coex.rho_l, -d_l, coex, fluid))
        return np.sqrt(2.0 * np.maximum(w, 0.0) / fluid.lam)

    def density(t):
        t = np.asarray(t, dtype=float)
        d_v, d_l = offsets(t)
        return np.where(t <= 0.0, coex.rho_v + d_v, coex.rho_l - d_l)

    def dz_dt(t):
        d_v, d_l = offsets(t)
        return 2.0 * d_v * d_l / delta / gradient(t)

    return density, gradient, dz_dt


def build_profile(coex, fluid, n_points=2001, tail_cut=1e-6):
    """Reconstruct the planar density profile by inverting the first integral.

    ``z(rho) = int_{rho_i}^{rho} d(rho) / sqrt(2 W / lam)`` is integrated
    outward from rho_i on both branches.  Nodes are uniform in ``t`` where
    ``rho = rho_i + (delta/2) tanh(t)``, which clusters them towards the
    bulks and gives nearly uniform spacing in ``z`` along the tails.
    """
    if n_points < 16:
        raise DomainError("n_points must be at least 16")
    if not 0.0 < tail_cut < 0.1:
        raise DomainError("tail_cut must lie in (0, 0.1)")
    coex.validate(fluid)

    density, gradient, dz_dt = _profile_maps(coex, fluid)
    t_max = math.atanh(1.0 - 2.0 * tail_cut)
    t = np.linspace(-t_max, t_max, n_points)

    z = np.concatenate([[0.0], np.cumsum(panel_integrals(dz_dt, t))])
    j = int(np.searchsorted(t, 0.0, side="right")) - 1
    z_origin = z[j] + (panel_integrals(dz_dt, [t[j], 0.0])[0] if t[j] < 0.0 else 0.0)
    z -= z_origin

    t90 = math.atanh(0.8)
    thickness, _ = integrate(dz_dt, -t90, t90, DEFAULT_QUAD)

    return InterfaceProfile(z=z, rho=density(t), drho_dz=gradient(t),
                            thickness_10_90=thickness, coex=coex, lam=fluid.lam,
                            tail_cut=tail_cut)


@dataclass(frozen=True)
class TensionResult:
    """Static surface tension and its split at rho_i."""

    h_static: float
    branch_v: float
    branch_l: float
    temp: float

    def to_dict(self):
        return {"h_static": self.h_static, "branch_v": self.branch_v,
                "branch_l": self.branch_l, "temp": self.temp}

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def _sqrt_w(rho_ref, coex, fluid):
    def f(d):
        return np.sqrt(np.maximum(_excess_from_offset(rho_ref, d, coex, fluid), 0.0))
    return f


def _branch_integral(side, extent, coex, fluid, spec):
    """int sqrt(W) over ``extent`` of density measured from the branch bulk."""
    if extent == 0.0:
        return 0.0
    if side == VAPOUR:
        value, _ = integrate(_sqrt_w(coex.rho_v, coex, fluid), 0.0, extent, spec)
    else:
        value, _ = integrate(_sqrt_w(coex.rho_l, coex, fluid), -extent, 0.0, spec)
    return value


def surface_tension(coex, fluid, spec=DEFAULT_QUAD):
    """Surface tension by density quadrature on each branch.

    Raises :class:`~capillary.errors.QuadratureError` (carrying the best
    estimate) if the adaptive quadrature does not converge.
    """
    scale = math.sqrt(2.0 * fluid.lam)
    half = 0.5 * coex.delta_rho
    branch_v = scale * _branch_integral(VAPOUR, half, coex, fluid, spec)
    branch_l = scale * _branch_integral(LIQUID, half, coex, fluid, spec)
    return TensionResult(h_static=branch_v + branch_l, branch_v=branch_v,
                         branch_l=branch_l, temp=coex.temp)


def partial_tension(rho_upto, side, coex, fluid, spec=DEFAULT_QUAD):
    """Running tension from the branch's bulk up to ``rho_upto``.

    Vapour side: integral over [rho_v, rho_upto] with rho_upto <= rho_i.
    Liquid side: integral over [rho_upto, rho_l] with rho_upto >= rho_i.
    """
    _side_ref(side, coex)
    if side == VAPOUR:
        if not coex.rho_v <= rho_upto <= coex.rho_i:
            raise DomainError("vapour partial tension needs rho_v <= rho <= rho_i")
        extent = rho_upto - coex.rho_v
    else:
        if not coex.rho_i <= rho_upto <= coex.rho_l:
            raise DomainError("liquid partial tension needs rho_i <= rho <= rho_l")
        extent = coex.rho_l - rho_upto
    return math.sqrt(2.0 * fluid.lam) * _branch_integral(side, extent, coex, fluid, spec)


def profile_tension(profile):
    """lam * int rho'(z)**2 dz over the sampled profile (composite Simpson)."""
    return profile.lam * float(simpson(profile.drho_dz ** 2, x=profile.z))


def interior_residual(profile, fluid):
    """Pointwise residual of lam * rho'' = mu(rho) - mu(rho_v) at interior samples.

    ``rho''`` is the three-point second difference on the (non-uniform) z
    grid, so the residual measures the discretisation error of the profile.
    """
    if len(profile.z) < 5:
        raise DomainError("interior residual needs at least 5 samples")
    coex = profile.coex
    lap = second_difference(profile.z, profile.rho)
    rhs = eos.chemical_potential_difference(profile.rho[1:-1], coex.rho_v, coex.temp, fluid)
    return fluid.lam * lap - rhs


def chemical_potential_scale(profile, fluid):
    """max |mu(rho) - mu(rho_v)| over the profile samples."""
    coex = profile.coex
    return float(np.max(np.abs(
        eos.chemical_potential_difference(profile.rho, coex.rho_v, coex.temp, fluid))))
