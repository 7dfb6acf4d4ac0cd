"""
Coexistence curve and surface tension of a van der Waals fluid
===============================================================

Walk down the binodal in reduced units and watch the surface tension
vanish as the two phases merge at the critical point.
"""

import numpy as np

from capillary import FluidParams, maxwell_construction, surface_tension

fluid = FluidParams.reduced(lam=1.0)

# coexisting densities, common pressure and tension at a few temperatures
print(f"{'T/Tc':>6} {'rho_v':>10} {'rho_l':>10} {'P0':>10} {'H':>12}")
for t in [0.5, 0.7, 0.8, 0.9, 0.95, 0.99]:
    state = maxwell_construction(t, fluid)
    h = surface_tension(state, fluid).h_static
    print(f"{t:6.2f} {state.rho_v:10.6f} {state.rho_l:10.6f} {state.p0:10.6f} {h:12.6e}")

# close to T_c the tension follows the mean-field law H ~ (1 - T)**1.5
temps = 1.0 - np.logspace(-4, -2, 5)
h = np.array([surface_tension(maxwell_construction(t, fluid), fluid).h_static
              for t in temps])
slope = np.polyfit(np.log(1.0 - temps), np.log(h), 1)[0]
print(f"\nfitted exponent of H against (1 - T/Tc): {slope:.3f}")
