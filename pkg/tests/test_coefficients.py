import numpy as np
import pytest

from nsklab.assumptions import coupling_g
from nsklab.coefficients import (constant_model, default_model,
                                 make_coefficient_model, power_law_model)
from nsklab.errors import DomainError

RNG = np.random.default_rng(42)


def _sample_states(n=200):
    return RNG.uniform(0.3, 3.0, n), RNG.uniform(0.5, 1.8, n)


def test_default_identity_g_vanishes():
    coeff = default_model()
    v, theta = _sample_states()
    g = coupling_g(coeff, v, theta)
    scale = np.max(np.abs(coeff.mu(v, theta) * coeff.kappa(v, theta)))
    assert np.max(np.abs(g)) < 1e-12 * max(scale, 1.0)


def test_default_positive_and_concave_in_theta():
    coeff = default_model(eps=0.01, K1=1.0, theta_max=2.0)
    v, theta = _sample_states()
    assert np.min(coeff.kappa(v, theta)) > 0
    assert np.min(coeff.alpha(v, theta)) > 0
    assert np.max(coeff.kappa_thetatheta(v, theta)) < 0


def test_default_k1_guard():
    with pytest.raises(DomainError):
        default_model(eps=0.1, K1=0.5, theta_max=2.0)  # K1 <= eps*(2*theta_max)**2


@pytest.mark.parametrize("coeff", [
    default_model(mu0=0.7, kappa0=0.2, alpha0=1.3, eps=0.02, K1=2.0),
    power_law_model(mu0=0.9, mu_exp=-0.4, kappa0=0.3, kappa_exp=1.5,
                    alpha0=1.1, alpha_exp=0.8),
])
def test_partials_match_finite_differences(coeff):
    v, theta = _sample_states(80)
    hv, ht = 1e-5 * v, 1e-5 * theta
    pairs = [
        (coeff.mu_v(v, theta), (coeff.mu(v + hv, theta) - coeff.mu(v - hv, theta)) / (2 * hv)),
        (coeff.mu_theta(v, theta), (coeff.mu(v, theta + ht) - coeff.mu(v, theta - ht)) / (2 * ht)),
        (coeff.kappa_v(v, theta), (coeff.kappa(v + hv, theta) - coeff.kappa(v - hv, theta)) / (2 * hv)),
        (coeff.kappa_theta(v, theta), (coeff.kappa(v, theta + ht) - coeff.kappa(v, theta - ht)) / (2 * ht)),
        (coeff.kappa_vtheta(v, theta),
         (coeff.kappa_theta(v + hv, theta) - coeff.kappa_theta(v - hv, theta)) / (2 * hv)),
        (coeff.kappa_thetatheta(v, theta),
         (coeff.kappa_theta(v, theta + ht) - coeff.kappa_theta(v, theta - ht)) / (2 * ht)),
        (coeff.alpha_v(v, theta), (coeff.alpha(v + hv, theta) - coeff.alpha(v - hv, theta)) / (2 * hv)),
        (coeff.alpha_theta(v, theta), (coeff.alpha(v, theta + ht) - coeff.alpha(v, theta - ht)) / (2 * ht)),
    ]
    for analytic, numeric in pairs:
        scale = np.maximum(np.abs(numeric), 1e-6)
        assert np.max(np.abs(analytic - numeric) / scale) < 1e-6


@pytest.mark.parametrize("coeff,p_ref", [
    (default_model(alpha0=1.4), 0.9),
    (power_law_model(alpha0=0.8, alpha_exp=1.7), 1.2),
    (constant_model(alpha=0.6), 1.0),
])
def test_alpha_hat_consistency(coeff, p_ref):
    R = 1.1
    ah = coeff.alpha_hat(R, p_ref)
    T = np.linspace(0.6, 1.8, 40)
    direct = coeff.alpha(R * T / p_ref, T)
    assert np.max(np.abs(ah(T) - direct)) < 1e-12 * np.max(np.abs(direct))
    h = 1e-6
    d1_num = (ah(T + h) - ah(T - h)) / (2 * h)
    d2_num = (ah(T + h) - 2 * ah(T) + ah(T - h)) / h**2
    assert np.max(np.abs(ah.d1(T) - d1_num)) < 1e-6 * max(1.0, np.max(np.abs(d1_num)))
    assert np.max(np.abs(ah.d2(T) - d2_num)) < 1e-3


def test_factory_and_guards():
    with pytest.raises(DomainError):
        make_coefficient_model("nope")
    with pytest.raises(DomainError):
        constant_model(mu=0.0)  # zero needs allow_degenerate
    degenerate = constant_model(mu=0.0, kappa=0.0, alpha=0.0, allow_degenerate=True)
    degenerate.validate_positive(1.0, 1.0)  # degenerate mode skips the check
    good = make_coefficient_model("default", mu0=2.0, kappa0=0.3)
    assert good.params["mu0"] == 2.0
    # production validation rejects states where kappa turns nonpositive
    hot = default_model(eps=0.05, K1=1.0, theta_max=2.0)
    with pytest.raises(DomainError):
        hot.validate_positive(np.array([1.0]), np.array([5.0]))


def test_theta_minimized_coefficients():
    coeff = default_model(kappa0=0.2, eps=0.05, K1=2.0)
    v = np.array([0.5, 1.0, 2.0])
    # kappa decreases in theta, so the minimum sits at the hot end of the box
    expected = coeff.kappa(v, 1.6)
    got = coeff.kappa_min_over_theta(v, 0.4, 1.6)
    assert np.max(np.abs(got - expected)) < 1e-12
    assert coeff.mu_min_over_theta(1.0, 0.4, 1.6) == pytest.approx(1.0)
