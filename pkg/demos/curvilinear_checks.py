"""
Curvilinear operators and the layer identities
==============================================

Check the normal-only Laplacian against a Cartesian stencil on a sphere,
then integrate the momentum identities across a synthetic tanh layer.
"""

import math

import numpy as np

from capillary.geometry import laplacian_normal, verify_property2, verify_property6

# field exp(-r**2) at radius r; e3 outward on a sphere means R_m = -r
x, y, z, step = 0.3, 0.4, 0.5, 1e-4
r = math.sqrt(x * x + y * y + z * z)


def f(x, y, z):
    return np.exp(-(x * x + y * y + z * z))


stencil = (f(x + step, y, z) + f(x - step, y, z) + f(x, y + step, z) + f(x, y - step, z)
           + f(x, y, z + step) + f(x, y, z - step) - 6 * f(x, y, z)) / step ** 2
normal = laplacian_normal(-2 * r * math.exp(-r * r), (4 * r * r - 2) * math.exp(-r * r), -r)
print(f"Laplacian at r = {r:.4f}: stencil {stencil:.9f}, normal form {normal:.9f}")

# synthetic layer from rho = 0.5 to 2 with a linear viscosity law
zs = np.linspace(-10, 10, 20_000)
rho = 1.25 + 0.75 * np.tanh(zs)
mu = 0.01 + 0.005 * rho
eta = -2 / 3 * mu

for r_m in (math.inf, -50.0):
    res, rhs = verify_property2(zs, rho, eta, mu, q=1.0, r_m=r_m)
    print(f"normal stress identity, R_m = {r_m}: max residual / max |rhs| = "
          f"{res.max() / np.abs(rhs).max():.2e}")

lhs, rhs = verify_property6(zs, rho, q=1.0)
print(f"inertia integral across the layer: {lhs[-1]:.10f} vs Q^2(1/rho_l - 1/rho_v) = {rhs[-1]:.10f}")
