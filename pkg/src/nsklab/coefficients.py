"""Viscosity, capillarity, and heat-conductivity models with analytic partials.

Each model family hand-codes mu(v, theta), kappa(v, theta), alpha_tilde(v, theta)
together with the partial derivatives the PDE and the diagnostics need.  The
contact-wave construction additionally needs the reduced conductivity
alpha_hat(T) = alpha_tilde(R*T/p_ref, T) as a 1-D function with two derivatives,
so every family supplies those in closed form as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np

from .errors import DomainError

__all__ = [
    "AlphaHat",
    "CoefficientModel",
    "default_model",
    "constant_model",
    "power_law_model",
    "make_coefficient_model",
]


@dataclass(frozen=True)
class AlphaHat:
    """Reduced conductivity alpha_hat(T) along the constant-pressure line v = R*T/p_ref."""

    value: Callable[[np.ndarray], np.ndarray]
    d1: Callable[[np.ndarray], np.ndarray]
    d2: Callable[[np.ndarray], np.ndarray]

    def __call__(self, T):
        return self.value(T)


@dataclass(frozen=True)
class CoefficientModel:
    """Closed-form coefficient triple and the partial derivatives used downstream.

    ``allow_degenerate`` permits zero coefficients so the solver can be
    regression-tested against its Euler / Navier-Stokes reductions; production
    configurations reject it.
    """

    name: str
    params: Dict[str, float]
    mu: Callable
    mu_v: Callable
    mu_theta: Callable
    kappa: Callable
    kappa_v: Callable
    kappa_theta: Callable
    kappa_thetatheta: Callable
    kappa_vtheta: Callable
    alpha: Callable
    alpha_v: Callable
    alpha_theta: Callable
    alpha_hat_factory: Callable[[float, float], AlphaHat]
    allow_degenerate: bool = False

    def alpha_hat(self, R: float, p_ref: float) -> AlphaHat:
        """1-D reduced conductivity for the contact-wave diffusion equation."""
        return self.alpha_hat_factory(R, p_ref)

    def validate_positive(self, v, theta) -> None:
        """Check mu, kappa, alpha > 0 at the sampled states (production mode)."""
        if self.allow_degenerate:
            return
        for label, fn in (("mu", self.mu), ("kappa", self.kappa), ("alpha_tilde", self.alpha)):
            if not np.all(np.asarray(fn(v, theta)) > 0.0):
                raise DomainError(f"coefficient {label} is nonpositive on the sampled states")

    def mu_min_over_theta(self, v, theta_lo: float, theta_hi: float, n: int = 64):
        """mu_1(v): minimum of mu over the temperature box, sampled on a theta grid."""
        return _min_over_theta(self.mu, v, theta_lo, theta_hi, n)

    def kappa_min_over_theta(self, v, theta_lo: float, theta_hi: float, n: int = 64):
        """kappa_1(v): minimum of kappa over the temperature box."""
        return _min_over_theta(self.kappa, v, theta_lo, theta_hi, n)


def _min_over_theta(fn, v, theta_lo, theta_hi, n):
    v = np.atleast_1d(np.asarray(v, dtype=float))
    thetas = np.linspace(theta_lo, theta_hi, n)
    vals = fn(v[:, None], thetas[None, :])
    vals = np.broadcast_to(vals, (v.size, thetas.size))
    out = vals.min(axis=1)
    return out if out.size > 1 else float(out[0])


def _zero(v, theta):
    return 0.0


def _const(c):
    c = float(c)

    def fn(v, theta):
        return c
    return fn


def default_model(mu0: float = 1.0, kappa0: float = 0.1, alpha0: float = 1.0,
                  eps: float = 0.01, K1: float = 1.0,
                  theta_max: float = 2.0) -> CoefficientModel:
    """Family mu = mu0, kappa = kappa0*v**3*(K1 - eps*theta**2), alpha_tilde = alpha0*theta.

    Chosen so that 3*kappa*mu + 2*v*kappa*mu_v - v*mu*kappa_v vanishes identically,
    kappa_thetatheta < 0 strictly, and alpha_hat(T) = alpha0*T turns the contact
    diffusion equation into a plain heat equation with an erf profile.
    ``theta_max`` is the configured temperature ceiling used to verify kappa > 0.
    """
    if min(mu0, kappa0, alpha0) <= 0.0 or eps < 0.0:
        raise DomainError("default model needs mu0, kappa0, alpha0 > 0 and eps >= 0")
    if K1 <= eps * (2.0 * theta_max) ** 2:
        raise DomainError(
            f"K1 = {K1} must exceed eps*(2*theta_max)**2 = {eps * (2 * theta_max) ** 2} "
            "to keep kappa positive on the admissible box")

    def kappa(v, theta):
        return kappa0 * v**3 * (K1 - eps * theta**2)

    def alpha_hat_factory(R, p_ref):
        a0 = alpha0
        return AlphaHat(value=lambda T: a0 * np.asarray(T, dtype=float),
                        d1=lambda T: np.full_like(np.asarray(T, dtype=float), a0),
                        d2=lambda T: np.zeros_like(np.asarray(T, dtype=float)))

    return CoefficientModel(
        name="default",
        params={"mu0": mu0, "kappa0": kappa0, "alpha0": alpha0, "eps": eps,
                "K1": K1, "theta_max": theta_max},
        mu=_const(mu0),
        mu_v=_zero,
        mu_theta=_zero,
        kappa=kappa,
        kappa_v=lambda v, theta: 3.0 * kappa0 * v**2 * (K1 - eps * theta**2),
        kappa_theta=lambda v, theta: -2.0 * eps * kappa0 * v**3 * theta,
        kappa_thetatheta=lambda v, theta: -2.0 * eps * kappa0 * v**3,
        kappa_vtheta=lambda v, theta: -6.0 * eps * kappa0 * v**2 * theta,
        alpha=lambda v, theta: alpha0 * theta,
        alpha_v=_zero,
        alpha_theta=lambda v, theta: alpha0,
        alpha_hat_factory=alpha_hat_factory,
    )


def constant_model(mu: float = 1.0, kappa: float = 0.1, alpha: float = 1.0,
                   allow_degenerate: bool = False) -> CoefficientModel:
    """State-independent coefficients; with allow_degenerate, zeros give the
    Navier-Stokes (kappa = 0) and Euler (all zero) reductions used as solver oracles."""
    lo = min(mu, kappa, alpha)
    if lo < 0.0 or (lo == 0.0 and not allow_degenerate):
        raise DomainError("constant model needs positive coefficients "
                          "(zeros require allow_degenerate)")

    def alpha_hat_factory(R, p_ref):
        return AlphaHat(value=lambda T: np.full_like(np.asarray(T, dtype=float), alpha),
                        d1=lambda T: np.zeros_like(np.asarray(T, dtype=float)),
                        d2=lambda T: np.zeros_like(np.asarray(T, dtype=float)))

    return CoefficientModel(
        name="constant",
        params={"mu": mu, "kappa": kappa, "alpha": alpha},
        mu=_const(mu), mu_v=_zero, mu_theta=_zero,
        kappa=_const(kappa), kappa_v=_zero, kappa_theta=_zero,
        kappa_thetatheta=_zero, kappa_vtheta=_zero,
        alpha=_const(alpha), alpha_v=_zero, alpha_theta=_zero,
        alpha_hat_factory=alpha_hat_factory,
        allow_degenerate=allow_degenerate,
    )


def power_law_model(mu0: float = 1.0, mu_exp: float = 0.0,
                    kappa0: float = 0.1, kappa_exp: float = 0.0,
                    alpha0: float = 1.0, alpha_exp: float = 1.0) -> CoefficientModel:
    """mu = mu0*v**mu_exp, kappa = kappa0*v**kappa_exp, alpha_tilde = alpha0*theta**alpha_exp.

    Mainly exercises the assumption checker's growth-exponent fits (e.g.
    mu_exp = -1 violates the upper viscosity growth bound).
    """
    if min(mu0, kappa0, alpha0) <= 0.0:
        raise DomainError("power-law model needs positive prefactors")

    def alpha_hat_factory(R, p_ref):
        a0, q = alpha0, alpha_exp
        return AlphaHat(
            value=lambda T: a0 * np.asarray(T, dtype=float) ** q,
            d1=lambda T: a0 * q * np.asarray(T, dtype=float) ** (q - 1.0),
            d2=lambda T: a0 * q * (q - 1.0) * np.asarray(T, dtype=float) ** (q - 2.0),
        )

    return CoefficientModel(
        name="powerlaw",
        params={"mu0": mu0, "mu_exp": mu_exp, "kappa0": kappa0,
                "kappa_exp": kappa_exp, "alpha0": alpha0, "alpha_exp": alpha_exp},
        mu=lambda v, theta: mu0 * v**mu_exp,
        mu_v=lambda v, theta: mu0 * mu_exp * v**(mu_exp - 1.0),
        mu_theta=_zero,
        kappa=lambda v, theta: kappa0 * v**kappa_exp,
        kappa_v=lambda v, theta: kappa0 * kappa_exp * v**(kappa_exp - 1.0),
        kappa_theta=_zero, kappa_thetatheta=_zero, kappa_vtheta=_zero,
        alpha=lambda v, theta: alpha0 * theta**alpha_exp,
        alpha_v=_zero,
        alpha_theta=lambda v, theta: alpha0 * alpha_exp * theta**(alpha_exp - 1.0),
        alpha_hat_factory=alpha_hat_factory,
    )


_FAMILIES = {
    "default": default_model,
    "constant": constant_model,
    "powerlaw": power_law_model,
}


def make_coefficient_model(name: str, **params) -> CoefficientModel:
    """Build a coefficient model by family name (used by the run configuration)."""
    try:
        factory = _FAMILIES[name]
    except KeyError:
        raise DomainError(f"unknown coefficient family '{name}'; "
                          f"known: {sorted(_FAMILIES)}") from None
    return factory(**params)
