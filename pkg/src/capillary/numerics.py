"""Shared numerical kernels: adaptive quadrature, bracketed root finding, grids.

The quadrature is a globally adaptive 7-point Gauss / 15-point Kronrod
scheme.  Intervals are refined worst-first and ties are broken by position,
so the subdivision sequence (and therefore the result) is deterministic.
"""

from dataclasses import dataclass
import heapq

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, QuadratureError

# Nonnegative Kronrod abscissae on [-1, 1]; odd indices are the Gauss nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_W_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_W_GAUSS = np.zeros(15)
_W_GAUSS[1:7:2] = _WG[:3]
_W_GAUSS[7] = _WG[3]
_W_GAUSS[9:15:2] = _WG[2::-1]

_EPS = np.finfo(float).eps

RULES = ("gk15",)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and limits for :func:`integrate`.

    ``max_depth`` bounds how many times any single interval may be halved.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 0.0
    max_depth: int = 50
    node_rule: str = "gk15"

    def __post_init__(self):
        if not 0.0 < self.rel_tol <= 1e-2:
            raise DomainError(f"rel_tol must lie in (0, 1e-2], got {self.rel_tol}")
        if self.abs_tol < 0.0:
            raise DomainError("abs_tol must be nonnegative")
        if not 1 <= self.max_depth <= 60:
            raise DomainError(f"max_depth must lie in [1, 60], got {self.max_depth}")
        if self.node_rule not in RULES:
            raise DomainError(f"unknown node rule {self.node_rule!r}")


DEFAULT_QUAD = QuadratureSpec()
VERIFY_QUAD = QuadratureSpec(rel_tol=1e-6)


def _gk15(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = np.asarray(f(mid + half * _NODES), dtype=float)
    if fx.shape != (15,):
        fx = np.broadcast_to(fx, (15,))
    if not np.all(np.isfinite(fx)):
        raise DomainError(f"integrand is not finite on [{a!r}, {b!r}]")
    kronrod = half * float(fx @ _W_KRONROD)
    gauss = half * float(fx @ _W_GAUSS)
    err = abs(kronrod - gauss)
    # QUADPACK-style rescaling of the raw Gauss/Kronrod difference
    resasc = half * float(np.abs(fx - kronrod / (2 * half)) @ _W_KRONROD) if half else 0.0
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    resabs = abs(half) * float(np.abs(fx) @ _W_KRONROD)
    if resabs > np.finfo(float).tiny / (50 * _EPS):
        err = max(err, 50 * _EPS * resabs)
    return kronrod, err


def integrate(f, a, b, spec=DEFAULT_QUAD):
    """Integrate ``f`` over ``[a, b]`` adaptively.

    ``f`` must accept a numpy array of abscissae and return values of the same
    shape.  Integrands that are finite but have unbounded derivatives at the
    endpoints (square-root zeros) are handled by local refinement.

    Returns
    -------
    value, error_estimate : float
        On success ``error_estimate <= max(abs_tol, rel_tol * |value|)``.

    Raises
    ------
    QuadratureError
        If an interval needs more than ``spec.max_depth`` halvings.  The best
        estimate is attached as ``exc.last``.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        if a == b:
            return 0.0, 0.0
        raise DomainError(f"integration bounds must satisfy a < b, got [{a}, {b}]")

    value, err = _gk15(f, a, b)
    # heap entries: (-err, left endpoint, right, depth, value)
    heap = [(-err, a, b, 0, value)]
    total, total_err = value, err
    while True:
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if total_err <= tol:
            return total, total_err
        neg_err, lo, hi, depth, val = heapq.heappop(heap)
        if depth >= spec.max_depth:
            raise QuadratureError(
                f"quadrature did not converge on [{a}, {b}] within depth {spec.max_depth}",
                last=(total, total_err),
            )
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise QuadratureError("quadrature interval collapsed to machine resolution",
                                  last=(total, total_err))
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        total += v1 + v2 - val
        total_err = max(total_err + e1 + e2 + neg_err, 0.0)
        heapq.heappush(heap, (-e1, lo, mid, depth + 1, v1))
        heapq.heappush(heap, (-e2, mid, hi, depth + 1, v2))


def find_root(f, bracket, tol=0.0):
    """Root of a scalar function inside a sign-changing bracket.

    Brent's hybrid of bisection, secant and inverse quadratic steps.  The
    result is accurate to a few ulps of the root unless ``tol`` (absolute
    width in ``x``) asks for less.
    """
    a, b = (float(v) for v in bracket)
    if not a < b:
        raise DomainError(f"invalid bracket [{a}, {b}]")
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if not (np.isfinite(fa) and np.isfinite(fb)) or np.sign(fa) == np.sign(fb):
        raise DomainError(f"bracket [{a}, {b}] does not enclose a sign change "
                          f"(f(a)={fa}, f(b)={fb})")
    xtol = max(tol, 1e-300)
    return brentq(f, a, b, xtol=xtol, rtol=4 * _EPS, maxiter=500)


def gauss_legendre(n):
    """Nodes and weights of the ``n``-point Gauss-Legendre rule on [-1, 1]."""
    return np.polynomial.legendre.leggauss(n)


def panel_integrals(f, edges, order=8):
    """Integrals of ``f`` over each panel ``[edges[k], edges[k+1]]``.

    Fixed-order Gauss-Legendre per panel, vectorised over panels.  Suitable
    for smooth integrands on fine grids.
    """
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = mid[:, None] + half[:, None] * x[None, :]
    return half * (f(pts) @ w)


def second_difference(x, y):
    """Second derivative of samples ``y(x)`` at the interior nodes.

    Three-point formula valid for non-uniform grids; second order when the
    grid spacing varies smoothly.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    hm = x[1:-1] - x[:-2]
    hp = x[2:] - x[1:-1]
    return 2.0 * ((y[2:] - y[1:-1]) / hp - (y[1:-1] - y[:-2]) / hm) / (hp + hm)
