import numpy as np
import pytest

from nsklab.coefficients import default_model
from nsklab.composite import build_composite_wave, build_contact_wave
from nsklab.errors import DomainError
from nsklab.riemann import EndStates, ends_from_middle
from nsklab.thermo import ThermoParams, lambda_pm

THERMO = ThermoParams(R=1.0, gamma=1.1, A=1.0)
COEFF = default_model()


@pytest.fixture(scope="module")
def composite():
    ends = ends_from_middle(THERMO, p_mid=1.0, u_mid=0.0, theta_m_minus=1.0,
                            contact_jump=0.05, rarefaction_jump_minus=0.05,
                            rarefaction_jump_plus=0.05)
    return build_composite_wave(THERMO, COEFF, ends)


def test_zero_strength_composite_is_constant():
    ends = EndStates(1.0, 0.3, 1.0, 1.0, 0.3, 1.0)
    wave = build_composite_wave(THERMO, COEFF, ends)
    f = wave.eval(np.linspace(-30, 30, 101), 2.0)
    assert np.all(f.V == pytest.approx(1.0, abs=1e-14))
    assert np.all(f.U == pytest.approx(0.3, abs=1e-14))
    assert np.all(f.Theta == pytest.approx(1.0, abs=1e-14))
    for name in ("V_x", "U_x", "Theta_x", "V_xx", "U_xx", "Theta_xx",
                 "V_t", "U_t", "Theta_t"):
        assert np.all(getattr(f, name) == 0.0)


def test_far_field_limits(composite):
    ends = composite.ends
    f = composite.eval(np.array([-1e3, 1e3]), 1.0)
    assert f.V[0] == pytest.approx(ends.v_minus, abs=1e-6)
    assert f.U[0] == pytest.approx(ends.u_minus, abs=1e-6)
    assert f.Theta[0] == pytest.approx(ends.theta_minus, abs=1e-6)
    assert f.V[1] == pytest.approx(ends.v_plus, abs=1e-6)
    assert f.U[1] == pytest.approx(ends.u_plus, abs=1e-6)
    assert f.Theta[1] == pytest.approx(ends.theta_plus, abs=1e-6)


def test_contact_part_pressure(composite):
    c = composite.eval_contact_part(np.linspace(-20, 20, 501), 3.0)
    p = THERMO.R * c.Theta / c.V
    assert np.max(np.abs(p - composite.middle.p_mid)) < 1e-15


def test_modes_select_parts(composite):
    x = np.linspace(-25, 25, 301)
    t = 1.5
    full = composite.eval(x, t)
    from nsklab.composite import CompositeWave
    contact_only = CompositeWave(THERMO, COEFF, composite.ends, composite.middle,
                                 mode="contact-only")
    rm_only = CompositeWave(THERMO, COEFF, composite.ends, composite.middle,
                            mode="rarefaction-only-minus")
    rp_only = CompositeWave(THERMO, COEFF, composite.ends, composite.middle,
                            mode="rarefaction-only-plus")
    mid = composite.middle
    recomposed = (contact_only.eval(x, t).V + rm_only.eval(x, t).V
                  + rp_only.eval(x, t).V - mid.v_m_minus - mid.v_m_plus)
    assert np.max(np.abs(recomposed - full.V)) < 1e-14


def test_composite_derivatives_match_finite_differences(composite):
    x = np.linspace(-30.0, 30.0, 901)
    t = 1.0
    f = composite.eval(x, t)
    h = 1e-5
    fp, fm = composite.eval(x + h, t), composite.eval(x - h, t)
    # the contact part's U_x / second derivatives carry the profile solve's
    # O(h**2) truncation, so the cross-check tolerances sit above FD precision
    for name, dname, tol in (("V", "V_x", 1e-8), ("U", "U_x", 5e-7),
                             ("Theta", "Theta_x", 1e-8)):
        num = (getattr(fp, name) - getattr(fm, name)) / (2 * h)
        assert np.max(np.abs(num - getattr(f, dname))) < tol
    for name, dname, tol in (("V_x", "V_xx", 5e-6), ("U_x", "U_xx", 5e-6),
                             ("Theta_x", "Theta_xx", 5e-6)):
        num = (getattr(fp, name) - getattr(fm, name)) / (2 * h)
        assert np.max(np.abs(num - getattr(f, dname))) < tol
    ht = 1e-5
    tp, tm = composite.eval(x, t + ht), composite.eval(x, t - ht)
    for name, dname, tol in (("V", "V_t", 1e-8), ("U", "U_t", 5e-7),
                             ("Theta", "Theta_t", 1e-8)):
        num = (getattr(tp, name) - getattr(tm, name)) / (2 * ht)
        assert np.max(np.abs(num - getattr(f, dname))) < tol


def _exact_fan(wave, s):
    """Exact self-similar Riemann fan (two rarefactions + middle plateau)."""
    thermo = wave.thermo
    ends, mid = wave.ends, wave.middle
    gamma = thermo.gamma
    out_v = np.empty_like(s)
    out_u = np.empty_like(s)
    out_th = np.empty_like(s)
    lm_lo = float(lambda_pm(thermo, ends.v_minus, mid.s_minus, -1))
    lm_hi = float(lambda_pm(thermo, mid.v_m_minus, mid.s_minus, -1))
    lp_lo = float(lambda_pm(thermo, mid.v_m_plus, mid.s_plus, +1))
    lp_hi = float(lambda_pm(thermo, ends.v_plus, mid.s_plus, +1))
    Bm = gamma * thermo.R * ends.theta_minus * ends.v_minus**thermo.delta
    Bp = gamma * thermo.R * ends.theta_plus * ends.v_plus**thermo.delta
    from nsklab.riemann import velocity_along_curve
    for i, si in enumerate(s):
        if si <= lm_lo:
            out_v[i], out_u[i], out_th[i] = ends.v_minus, ends.u_minus, ends.theta_minus
        elif si < lm_hi:
            v = (Bm / si**2) ** (1.0 / (gamma + 1.0))
            out_v[i] = v
            out_u[i] = velocity_along_curve(thermo, -1, ends.v_minus,
                                            ends.u_minus, ends.theta_minus, v)
            out_th[i] = ends.theta_minus * (ends.v_minus / v) ** thermo.delta
        elif si <= 0.0:
            out_v[i], out_u[i], out_th[i] = mid.v_m_minus, mid.u_mid, mid.theta_m_minus
        elif si <= lp_lo:
            out_v[i], out_u[i], out_th[i] = mid.v_m_plus, mid.u_mid, mid.theta_m_plus
        elif si < lp_hi:
            v = (Bp / si**2) ** (1.0 / (gamma + 1.0))
            out_v[i] = v
            out_u[i] = velocity_along_curve(thermo, +1, ends.v_plus,
                                            ends.u_plus, ends.theta_plus, v)
            out_th[i] = ends.theta_plus * (ends.v_plus / v) ** thermo.delta
        else:
            out_v[i], out_u[i], out_th[i] = ends.v_plus, ends.u_plus, ends.theta_plus
    return out_v, out_u, out_th


def test_large_time_convergence_to_riemann_fan(composite):
    t = 100.0
    x = np.linspace(-2.2 * t, 2.2 * t, 4001)
    s = x / t
    f = composite.eval(x, t)
    v_fan, u_fan, th_fan = _exact_fan(composite, s)
    # compare away from the contact layer (the fan has a jump there, the
    # composite a diffusion layer of width sqrt(t))
    mask = np.abs(x) > 6.0 * np.sqrt(THERMO.delta * (1.0 + t))
    dist = np.max(np.abs(f.V - v_fan)[mask]) \
        + np.max(np.abs(f.U - u_fan)[mask]) \
        + np.max(np.abs(f.Theta - th_fan)[mask])
    assert dist < 0.05


def test_contact_builder_guards():
    with pytest.raises(DomainError):
        build_contact_wave(THERMO, COEFF, EndStates(1.0, 0.0, 1.0, 1.05, 0.3, 1.05))
    with pytest.raises(DomainError):
        build_contact_wave(THERMO, COEFF, EndStates(1.0, 0.0, 1.0, 1.05, 0.0, 1.2))


def test_boundary_states(composite):
    (l, r) = composite.boundary_states(-500.0, 500.0, 2.0)
    f = composite.eval(np.array([-500.0, 500.0]), 2.0)
    assert l == (f.V[0], f.U[0], f.Theta[0])
    assert r == (f.V[1], f.U[1], f.Theta[1])


def test_contact_anchor_modes():
    ends = EndStates(1.0, 0.4, 1.0, 1.05, 0.4, 1.05)
    w_mid = build_contact_wave(THERMO, COEFF, ends, contact_anchor="middle")
    w_left = build_contact_wave(THERMO, COEFF, ends, contact_anchor="left")
    x = np.linspace(-5, 5, 51)
    # pure contact data: both anchors coincide with u_minus
    assert np.max(np.abs(w_mid.eval(x, 1.0).U - w_left.eval(x, 1.0).U)) < 1e-12
