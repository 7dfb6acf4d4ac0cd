"""Liquid-vapour capillary layers of a van der Waals fluid with internal capillarity."""

from .coexistence import CoexistenceState, binodal, maxwell_construction, maxwell_residual
from .config import fluid_from_dict, load_fluid
from .dynamics import (JumpInputs, JumpResult, eq12_interior, laplace_jump, marangoni_shear,
                       tension_temperature_gradient, viscous_tension)
from .eos import FluidParams, ThermoPoint, ViscosityLaw
from .errors import (CapillaryError, ConvergenceError, DomainError, NoCoexistenceError,
                     QuadratureError)
from .interface import (InterfaceProfile, TensionResult, build_profile, density_gradient,
                        excess_w, partial_tension, surface_tension)
from .numerics import QuadratureSpec, find_root, integrate

__version__ = "0.1.0"
