from math import erf, sqrt

import numpy as np
import pytest

from nsklab.coefficients import constant_model, default_model, power_law_model
from nsklab.contact import ContactWave, solve_selfsimilar
from nsklab.errors import DomainError
from nsklab.thermo import ThermoParams

THERMO = ThermoParams(R=1.0, gamma=1.1, A=1.0)


def test_equal_temperatures_constant_profile():
    prof = solve_selfsimilar(1.3, 1.3, 1.0, THERMO, default_model(), N=201)
    assert np.all(prof.Theta == 1.3)
    assert np.all(prof.dTheta == 0.0)
    assert np.all(prof.d2Theta == 0.0)


def test_erf_oracle_default_family():
    coeff = default_model(alpha0=1.0)
    prof = solve_selfsimilar(1.0, 1.05, 1.0, THERMO, coeff, N=2001)
    diffusivity = prof.a_coef  # alpha_hat(T)/T = alpha0 = 1
    oracle = 1.0 + 0.025 * (1.0 + np.array(
        [erf(z) for z in prof.xi_grid / (2.0 * sqrt(diffusivity))]))
    assert np.max(np.abs(prof.Theta - oracle)) < 1e-6
    assert float(prof.theta_of_xi(0.0)) == pytest.approx(1.025, abs=1e-10)
    assert np.max(np.abs(prof.ode_residual())) < 1e-8


def test_profile_monotone_and_bounded():
    prof = solve_selfsimilar(1.2, 0.9, 1.0, THERMO, default_model(), N=1001)
    assert np.all(np.diff(prof.Theta) <= 1e-14)  # decreasing jump
    assert prof.Theta.min() >= 0.9 - 1e-12 and prof.Theta.max() <= 1.2 + 1e-12
    assert abs(prof.Theta[0] - 1.2) < 1e-8 and abs(prof.Theta[-1] - 0.9) < 1e-8


def test_nonlinear_family_converges_and_refines():
    coeff = power_law_model(alpha0=0.8, alpha_exp=2.0)  # alpha_hat ~ T**2
    coarse = solve_selfsimilar(1.0, 1.1, 0.9, THERMO, coeff, N=501)
    fine = solve_selfsimilar(1.0, 1.1, 0.9, THERMO, coeff, N=2001)
    assert np.max(np.abs(coarse.ode_residual())) < 1e-8
    assert np.max(np.abs(fine.ode_residual())) < 1e-8
    # grids agree at the coarse solve's O(h**2) truncation level
    mid = float(coarse.theta_of_xi(0.37)) - float(fine.theta_of_xi(0.37))
    assert abs(mid) < 1e-5


def test_solver_input_guards():
    with pytest.raises(DomainError):
        solve_selfsimilar(-1.0, 1.0, 1.0, THERMO, default_model())
    with pytest.raises(DomainError):
        solve_selfsimilar(1.0, 1.1, 1.0, THERMO, default_model(), N=100)
    with pytest.raises(DomainError):
        solve_selfsimilar(1.0, 1.1, 1.0, THERMO, default_model(), N=2000)


@pytest.fixture(scope="module")
def wave():
    prof = solve_selfsimilar(1.0, 1.05, 1.0, THERMO, default_model(), N=2001)
    return ContactWave(prof, u_anchor=0.2, thermo=THERMO)


def test_contact_mass_identity_and_pressure(wave):
    x = np.linspace(-40.0, 40.0, 1501)
    for t in (0.0, 1.0, 10.0, 100.0):
        c = wave.eval(x, t)
        assert np.max(np.abs(c.V_t - c.U_x)) < 1e-8
        assert np.max(np.abs(THERMO.R * c.Theta / c.V - 1.0)) < 1e-15


def test_contact_degenerate_velocity():
    prof = solve_selfsimilar(1.1, 1.1, 1.0, THERMO, default_model(), N=201)
    cw = ContactWave(prof, u_anchor=0.7, thermo=THERMO)
    c = cw.eval(np.linspace(-5, 5, 21), 3.0)
    assert np.all(c.U == 0.7)
    assert np.all(c.V == pytest.approx(1.1))
    assert np.all(c.U_x == 0.0) and np.all(c.Theta_t == 0.0)


def test_contact_derivatives_match_finite_differences(wave):
    # U_x, Theta_xx, Theta_xxx are defined through the profile equation, so
    # they agree with differencing the evaluator only up to the boundary-value
    # solve's O(h**2) truncation error, not to FD precision.
    x = np.linspace(-6.0, 6.0, 301)
    t = 2.0
    c = wave.eval(x, t)
    h = 1e-5
    cp, cm = wave.eval(x + h, t), wave.eval(x - h, t)
    assert np.max(np.abs((cp.Theta - cm.Theta) / (2 * h) - c.Theta_x)) < 1e-9
    assert np.max(np.abs((cp.U - cm.U) / (2 * h) - c.U_x)) < 5e-7
    assert np.max(np.abs((cp.Theta_x - cm.Theta_x) / (2 * h) - c.Theta_xx)) < 5e-6
    assert np.max(np.abs((cp.U_x - cm.U_x) / (2 * h) - c.U_xx)) < 5e-6
    assert np.max(np.abs((cp.Theta_xx - cm.Theta_xx) / (2 * h) - c.Theta_xxx)) < 5e-5
    ht = 1e-5
    tp, tm = wave.eval(x, t + ht), wave.eval(x, t - ht)
    assert np.max(np.abs((tp.Theta - tm.Theta) / (2 * ht) - c.Theta_t)) < 1e-9
    assert np.max(np.abs((tp.U - tm.U) / (2 * ht) - c.U_t)) < 5e-7
    assert np.max(np.abs((tp.V - tm.V) / (2 * ht) - c.V_t)) < 1e-9


def test_tail_clamping(wave):
    prof = wave.profile
    far = prof.Xi * np.sqrt(2.0) + 5.0
    c = wave.eval(np.array([-far, far]), 1.0)
    assert c.Theta[0] == prof.theta_minus and c.Theta[1] == prof.theta_plus
    assert c.Theta_x[0] == 0.0 and c.Theta_x[1] == 0.0
    assert c.U_x[0] == 0.0 and c.U_xx[1] == 0.0


def test_profile_velocity_matches_reduced_conductivity(wave):
    # U - u_anchor = b * alpha_hat(Theta) * Theta_x / Theta
    x = np.linspace(-4, 4, 101)
    t = 0.5
    c = wave.eval(x, t)
    b = THERMO.delta / (THERMO.gamma * THERMO.R)
    ah = wave.profile.alpha_hat
    expected = b * ah(c.Theta) * c.Theta_x / c.Theta
    assert np.max(np.abs((c.U - 0.2) - expected)) < 1e-14
