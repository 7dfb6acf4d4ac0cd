"""
Pressure jump across an evaporating interface
==============================================

With a mass flux Q through the layer the Laplace formula picks up an
inertial term and the tension is replaced by the viscous dynamical
tension K.  Numbers below use water-like kinematic viscosities
(0.01 and 0.15 cm^2/s) and the Stokes hypothesis.
"""

import math

import numpy as np

from capillary import JumpInputs, laplace_jump, marangoni_shear

rho_l, rho_v = 0.998, 1.73e-5
mu_l, mu_v = 0.01 * rho_l, 0.15 * rho_v
h = 72.8


def jump(q, r_m):
    return laplace_jump(JumpInputs(q=q, r_m=r_m, rho_v=rho_v, rho_l=rho_l,
                                   eta_v=-2 / 3 * mu_v, eta_l=-2 / 3 * mu_l,
                                   mu_l=mu_l, h_static=h))


# K - H is linear in Q with slope (2/3)(nu_l - nu_v)
for q in (0.0, 0.1, 1.0):
    print(f"Q = {q:4.1f}: K - H = {jump(q, math.inf).k_dyn - h:+.5f}")

# a 1 micron droplet: capillary term against the recoil of the vapour
print(f"\n{'Q':>8} {'inertial':>14} {'capillary':>14} {'dp':>14}")
for q in (0.0, 1e-2, 1.0, 1e2):
    r = jump(q, 1e-4)
    print(f"{q:8.2g} {r.inertial_term:14.6e} {r.capillary_term:14.6e} {r.dp:14.6e}")

# Marangoni: a tension gradient along the surface needs liquid shear
grad_h = np.array([-0.15 * 2.0, 0.0])  # dH/dT ~ -0.15 dyn/(cm K), dT/ds = 2 K/cm
d13, d23 = marangoni_shear(grad_h, mu_l)
print(f"\nliquid-side strain: D13 = {d13:.4f} 1/s, D23 = {abs(d23):.4f} 1/s")
