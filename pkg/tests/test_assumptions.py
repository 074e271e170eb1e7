import numpy as np
import pytest

from nsklab.assumptions import check_assumptions, coupling_f, coupling_g
from nsklab.coefficients import constant_model, default_model, power_law_model
from nsklab.errors import DomainError

BOX = ((0.05, 20.0), (0.5, 1.5))


def test_default_family_report():
    report = check_assumptions(default_model(), *BOX, n_samples=300)
    assert report.flags["positivity"]
    assert report.flags["coupling_identity_g"]
    assert report.flags["coupling_either"]
    assert report.flags["kappa_thetatheta_negative_strict"]
    assert report.flags["mu_over_alpha_bounded"]
    assert report.flags["derivatives_consistent"]
    # mu is constant: both growth exponents vanish
    assert report.mu_exp_origin == pytest.approx(0.0, abs=0.01)
    assert report.mu_exp_infinity == pytest.approx(0.0, abs=0.01)
    # kappa ~ v**3 on both ends: c = -3 (fine), d = -3 (violates the lower bound)
    assert report.kappa_exp_origin == pytest.approx(-3.0, abs=0.05)
    assert not report.flags["growth_kappa_infinity"]
    assert report.flags["growth_mu_family"]
    assert report.flags["growth_either_family"]
    assert report.g_abs_max < 1e-12 * max(1.0, report.kappa_range[1])


def test_constant_family_flat_derivatives():
    report = check_assumptions(constant_model(mu=1.0, kappa=0.5, alpha=2.0), *BOX,
                               n_samples=200, kappa_theta_threshold=1e-6)
    assert report.kappa_theta_sup == 0.0
    assert report.flags["kappa_theta_small"]
    # kappa_thetatheta == 0: nonpositive but not strictly negative
    assert report.flags["kappa_thetatheta_nonpositive"]
    assert not report.flags["kappa_thetatheta_negative_strict"]
    assert report.mu_over_alpha_sup == pytest.approx(0.5)


def test_inverse_volume_viscosity_flagged():
    # mu ~ v**-1 grows too fast at infinity: the upper exponent bound is 1/2
    report = check_assumptions(power_law_model(mu_exp=-1.0, kappa_exp=2.0), *BOX,
                               n_samples=200)
    assert report.mu_exp_infinity == pytest.approx(1.0, abs=0.05)
    assert not report.flags["growth_mu_infinity"]
    assert not report.flags["growth_mu_family"]


def test_coupling_values_finite_and_consistent():
    coeff = power_law_model(mu0=0.8, mu_exp=-0.3, kappa0=0.4, kappa_exp=1.2,
                            alpha0=1.0, alpha_exp=1.0)
    v = np.linspace(0.4, 2.5, 17)
    theta = np.linspace(0.6, 1.4, 17)
    g = coupling_g(coeff, v, theta)
    f = coupling_f(coeff, v, theta)
    assert np.all(np.isfinite(g)) and np.all(np.isfinite(f))
    # power-law family: g = kappa*mu*v**0 * (3 + 2*mu_exp - kappa_exp)
    expected = (3.0 + 2.0 * (-0.3) - 1.2) * coeff.mu(v, theta) * coeff.kappa(v, theta)
    assert np.max(np.abs(g - expected)) < 1e-12 * np.max(np.abs(expected))


def test_report_summary_text():
    report = check_assumptions(default_model(), *BOX, n_samples=100)
    text = report.summary()
    assert "mu in [" in text
    assert "flag coupling_identity_g = ok" in text


def test_checker_input_guards():
    with pytest.raises(DomainError):
        check_assumptions(default_model(), (0.0, 1.0), (0.5, 1.5))
    with pytest.raises(DomainError):
        check_assumptions(default_model(), (0.1, 1.0), (0.5, 1.5), n_samples=1)
