import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from capillary.dynamics import (JumpInputs, JumpResult, eq12_interior, laplace_jump,
                                marangoni_shear, tension_temperature_gradient,
                                viscous_tension)
from capillary.errors import DomainError
from capillary.interface import build_profile

NU_L, NU_V = 0.01, 0.15
RHO_L, RHO_V = 0.998, 1.73e-5


def normal_floats(lo, hi):
    # zero or magnitudes far from underflow
    return st.floats(lo, hi).filter(lambda x: x == 0.0 or abs(x) > 1e-100)


def stokes_inputs(q, r_m=math.inf, h=72.8):
    mu_l, mu_v = NU_L * RHO_L, NU_V * RHO_V
    return JumpInputs(q=q, r_m=r_m, rho_v=RHO_V, rho_l=RHO_L, eta_v=-2 / 3 * mu_v,
                      eta_l=-2 / 3 * mu_l, mu_l=mu_l, h_static=h)


@pytest.mark.parametrize("q", [0.1, 1.0])
def test_water_viscous_tension(q):
    i = stokes_inputs(q)
    k = viscous_tension(i.h_static, q, i.eta_l, i.rho_l, i.eta_v, i.rho_v)
    np.testing.assert_allclose((k - i.h_static) / q, 2 / 3 * (NU_L - NU_V), rtol=1e-12)
    assert round((k - i.h_static) / q, 3) == -0.093


def test_static_limit_and_cancellation():
    assert viscous_tension(72.8, 0.0, -1.0, 1.0, -5.0, 0.1) == 72.8
    assert viscous_tension(72.8, 3.0, 0.4, 2.0, 0.1, 0.5) == 72.8


def test_laplace_static():
    res = laplace_jump(JumpInputs(0.0, 1e-4, 0.5, 2.0, -1.0, -1.0, 1.0, 72.8))
    assert res.dp == 2 * 72.8 / 1e-4
    np.testing.assert_allclose(res.dp, 1.456e6, rtol=1e-15)


def test_laplace_planar():
    res = laplace_jump(JumpInputs(1.0, math.inf, 0.5, 2.0, -1.0, -1.0, 1.0, 72.8))
    assert res.dp == 1.5 and res.capillary_term == 0.0
    res0 = laplace_jump(JumpInputs(0.0, math.inf, 0.5, 2.0, -1.0, -1.0, 1.0, 72.8))
    assert res0.dp == 0.0


@settings(max_examples=100, deadline=None)
@given(normal_floats(-50, 50), st.one_of(st.floats(1e-6, 1e3), st.floats(-1e3, -1e-6),
                                      st.just(math.inf)),
       st.floats(1e-4, 1.0), st.floats(1.1, 5.0))
def test_decomposition_exact(q, r_m, rho_v, ratio):
    res = laplace_jump(JumpInputs(q, r_m, rho_v, rho_v * ratio, -0.1, -0.2, 0.3, 10.0))
    assert res.dp == res.inertial_term + res.capillary_term
    if math.isinf(r_m) and q != 0:
        assert res.dp > 0


def test_small_flux_continuity():
    base = laplace_jump(stokes_inputs(0.0, r_m=1e-3))
    inert, shift = [], []
    for q in (1e-3, 1e-2, 1e-1):
        r = laplace_jump(stokes_inputs(q, r_m=1e-3))
        inert.append(r.inertial_term / q ** 2)
        shift.append((r.k_dyn - base.k_dyn) / q)
    np.testing.assert_allclose(inert, inert[0], rtol=1e-12)
    np.testing.assert_allclose(shift, shift[0], rtol=1e-9)


def test_jump_inputs_validation():
    with pytest.raises(DomainError):
        JumpInputs(1.0, math.inf, 2.0, 0.5, 0, 0, 1, 1)
    with pytest.raises(DomainError):
        JumpInputs(1.0, 0.0, 0.5, 2.0, 0, 0, 1, 1)
    with pytest.raises(DomainError):
        JumpInputs(1.0, math.inf, -0.5, 2.0, 0, 0, 1, 1)


def test_jump_round_trip():
    i = stokes_inputs(1.0, r_m=-2e-4)
    r = laplace_jump(i)
    assert JumpResult.from_dict(json.loads(json.dumps(r.to_dict()))) == r
    assert JumpInputs.from_dict(json.loads(json.dumps(i.to_dict()))) == i


def test_marangoni_examples():
    np.testing.assert_array_equal(marangoni_shear((0.0, 0.0), 0.01), [0.0, 0.0])
    np.testing.assert_allclose(marangoni_shear((0.2, 0.0), 0.01), [-10.0, 0.0], rtol=1e-15)
    a = marangoni_shear((0.3, -0.1), 0.02)
    b = marangoni_shear((0.3, -0.1), 0.04)
    np.testing.assert_allclose(b, a / 2, rtol=1e-15)
    with pytest.raises(DomainError):
        marangoni_shear((0.1, 0.1), 0.0)


@settings(max_examples=100, deadline=None)
@given(normal_floats(-1e3, 1e3), normal_floats(-1e3, 1e3), st.sampled_from([0.125, 0.5, 2.0, 64.0]))
def test_marangoni_round_trip_exact(s1, s2, mu):
    # power-of-two viscosities make both the product and the quotient exact
    s = np.array([s1, s2])
    np.testing.assert_array_equal(marangoni_shear(-2 * mu * s, mu), s)


@settings(max_examples=100, deadline=None)
@given(normal_floats(-1e3, 1e3), normal_floats(-1e3, 1e3), st.floats(1e-4, 10.0))
def test_marangoni_round_trip(s1, s2, mu):
    s = np.array([s1, s2])
    np.testing.assert_allclose(marangoni_shear(-2 * mu * s, mu), s, rtol=2.3e-16, atol=0)


@pytest.mark.parametrize("t", [0.8, 0.9])
def test_tension_slope_negative(fluid, t):
    assert tension_temperature_gradient(t, 0.01, fluid) < 0


def test_tension_slope_richardson(fluid):
    coarse = tension_temperature_gradient(0.9, 0.01, fluid)
    fine = tension_temperature_gradient(0.9, 0.005, fluid)
    assert abs(coarse - fine) < 0.01 * abs(fine)
    assert tension_temperature_gradient(0.9, 0.005, fluid) == fine


def test_tension_slope_crossing_critical(fluid):
    with pytest.raises(DomainError):
        tension_temperature_gradient(0.99, 0.02, fluid)
    with pytest.raises(DomainError):
        tension_temperature_gradient(0.9, 0.0, fluid)


def test_eq12_zero_flux(profile09, fluid):
    chk = eq12_interior(profile09, 0.0, math.inf, fluid)
    assert chk.viscous_end == 0.0 and chk.viscous_max == 0.0
    assert chk.capillary_max > 0.0


def test_eq12_brackets_vanish_in_bulk(coex09, fluid):
    chk = eq12_interior(build_profile(coex09, fluid, tail_cut=1e-8), 1.0, math.inf, fluid)
    assert chk.passed
    assert chk.capillary_ratio < 1e-6 and chk.viscous_ratio < 1e-6


def test_eq12_linear_in_tail_cut(coex09, profile09, fluid):
    # the capillary bracket equals P - P0 in the planar layer, so it is O(delta) at the ends
    wide = eq12_interior(profile09, 1.0, math.inf, fluid)
    narrow = eq12_interior(build_profile(coex09, fluid, tail_cut=1e-8), 1.0, math.inf, fluid)
    np.testing.assert_allclose(wide.capillary_ratio / narrow.capillary_ratio, 100.0, rtol=0.01)
    assert not wide.passed


def test_eq12_curved(coex09, fluid):
    chk = eq12_interior(build_profile(coex09, fluid, tail_cut=1e-8), 1.0, -1e3, fluid)
    assert chk.passed


def test_eq12_coarse(coex09, fluid):
    with pytest.raises(DomainError):
        eq12_interior(build_profile(coex09, fluid, n_points=32), 1.0, math.inf, fluid)
