"""Fluid definitions from JSON files.

Keys::

    a, b, r_specific      equation-of-state constants (optional when units="reduced")
    lambda                capillarity coefficient
    mu_liquid, mu_vapour  dynamic viscosity at the liquid / vapour anchor density
    eta_mode              "stokes" (eta = -2/3 mu) or "explicit"
    eta_liquid, eta_vapour  volume viscosity anchors, required when explicit
    rho_liquid, rho_vapour  optional anchor densities, default 1/b and 0
    units                 "cgs" or "reduced"
"""

from importlib import resources
import json
import os

from .eos import REDUCED_CONSTANTS, FluidParams, ViscosityLaw
from .errors import DomainError

ENV_VAR = "CAPILLARY_FLUID"
BUILTIN = ("water", "reduced")

_KNOWN = {"a", "b", "r_specific", "lambda", "mu_liquid", "mu_vapour", "eta_mode",
          "eta_liquid", "eta_vapour", "rho_liquid", "rho_vapour", "units", "name"}


def _number(d, key, default=None):
    if key not in d:
        if default is None:
            raise DomainError(f"fluid config is missing {key!r}")
        return default
    value = d[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DomainError(f"fluid config key {key!r} must be a number")
    return float(value)


def fluid_from_dict(d):
    """Build :class:`FluidParams` from a parsed config mapping."""
    if not isinstance(d, dict):
        raise DomainError("fluid config must be a JSON object")
    unknown = set(d) - _KNOWN
    if unknown:
        raise DomainError(f"unknown fluid config keys: {sorted(unknown)}")
    units = d.get("units", "cgs")
    if units == "reduced":
        consts = {k: _number(d, k, v) for k, v in REDUCED_CONSTANTS.items()}
    else:
        consts = {k: _number(d, k) for k in ("a", "b", "r_specific")}
    if consts["b"] <= 0.0:
        raise DomainError("b must be positive")
    rho_l = _number(d, "rho_liquid", 1.0 / consts["b"])
    rho_v = _number(d, "rho_vapour", 0.0)
    mu = ViscosityLaw.two_point(rho_v, _number(d, "mu_vapour", 1.0),
                                rho_l, _number(d, "mu_liquid", 1.0))
    mode = d.get("eta_mode", "stokes")
    if mode == "stokes":
        eta = None
    elif mode == "explicit":
        eta = ViscosityLaw.two_point(rho_v, _number(d, "eta_vapour"),
                                     rho_l, _number(d, "eta_liquid"))
    else:
        raise DomainError(f"eta_mode must be 'stokes' or 'explicit', got {mode!r}")
    return FluidParams(lam=_number(d, "lambda"), visc_mu=mu, visc_eta=eta,
                       units=units, **consts)


def load_fluid(source=None):
    """Load a fluid from a path, a built-in name, or ``$CAPILLARY_FLUID``.

    With no source and no environment variable the reduced fluid is used.
    """
    if source is None:
        source = os.environ.get(ENV_VAR) or "reduced"
    if source in BUILTIN:
        text = resources.files("capillary.data").joinpath(f"{source}.json").read_text()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DomainError(f"cannot read fluid config {source!r}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"fluid config {source!r} is not valid JSON: {exc}") from exc
    return fluid_from_dict(data)
