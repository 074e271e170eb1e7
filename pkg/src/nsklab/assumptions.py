"""Pointwise verification of the structural conditions on mu, kappa, alpha.

The checker samples the coefficient triple on a log-spaced-plus-random box,
reports extrema, the viscosity/conductivity ratio bound, the capillarity
derivative smallness and concavity, both coupling quantities (the inequality
form f and the identity form g), and least-squares growth exponents of the
theta-minimized viscosity and capillarity at the ends of the volume range.
It never aborts: every violation is recorded as a flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from .coefficients import CoefficientModel
from .errors import DomainError

__all__ = ["AssumptionReport", "check_assumptions", "coupling_g", "coupling_f"]

_EXPONENT_TOL = 0.05


def coupling_g(coeff: CoefficientModel, v, theta):
    """Identity form of the coupling condition: 3*kappa*mu + 2*v*kappa*mu_v - v*mu*kappa_v."""
    mu = coeff.mu(v, theta)
    kappa = coeff.kappa(v, theta)
    return (3.0 * kappa * mu + 2.0 * v * kappa * coeff.mu_v(v, theta)
            - v * mu * coeff.kappa_v(v, theta))


def coupling_f(coeff: CoefficientModel, v, theta, rel_h: float = 1e-5):
    """Inequality form of the coupling condition (must be <= 0 where required).

    Inner factors use the model's analytic first partials; the outermost
    volume derivatives are central differences, since second partials are not
    part of the model contract.
    """
    v = np.asarray(v, dtype=float)
    theta = np.asarray(theta, dtype=float)

    def sqrt_mukappa_over_v3(vv):
        return np.sqrt(coeff.mu(vv, theta) * coeff.kappa(vv, theta)) / vv**3

    def a_v(vv):
        mu = coeff.mu(vv, theta)
        kappa = coeff.kappa(vv, theta)
        root = np.sqrt(mu * kappa)
        num = 0.5 * (coeff.mu_v(vv, theta) * kappa + mu * coeff.kappa_v(vv, theta)) / root
        return (num - 3.0 * root / vv) / vv**3

    def mu_over_v_v(vv):
        return coeff.mu_v(vv, theta) / vv - coeff.mu(vv, theta) / vv**2

    def term1_inner(vv):
        return sqrt_mukappa_over_v3(vv) * a_v(vv)

    def term3_inner(vv):
        return coeff.kappa(vv, theta) / vv**5 * mu_over_v_v(vv)

    def term5_inner(vv):
        return (coeff.mu(vv, theta) / (2.0 * vv**7)
                * (5.0 * coeff.kappa(vv, theta) - vv * coeff.kappa_v(vv, theta)))

    h = rel_h * v

    def ddv(fn):
        return (fn(v + h) - fn(v - h)) / (2.0 * h)

    t1 = -(2.0 / 3.0) * ddv(term1_inner)
    t2 = a_v(v) ** 2
    t3 = (1.0 / 3.0) * ddv(term3_inner)
    t4 = mu_over_v_v(v) * (5.0 * coeff.kappa(v, theta)
                           - v * coeff.kappa_v(v, theta)) / (2.0 * v**6)
    t5 = -(1.0 / 3.0) * ddv(term5_inner)
    return t1 + t2 + t3 + t4 + t5


@dataclass
class AssumptionReport:
    """Sampled extrema, coupling values, growth exponents, and pass/fail flags."""

    mu_range: tuple
    kappa_range: tuple
    alpha_range: tuple
    mu_over_alpha_sup: float
    kappa_theta_sup: float
    kappa_thetatheta_max: float
    g_abs_max: float
    f_max: float
    derivative_mismatch: float
    mu_exp_origin: float
    mu_exp_infinity: float
    kappa_exp_origin: float
    kappa_exp_infinity: float
    flags: Dict[str, bool] = field(default_factory=dict)

    def summary(self) -> str:
        lines = [
            f"mu in [{self.mu_range[0]:.6g}, {self.mu_range[1]:.6g}]",
            f"kappa in [{self.kappa_range[0]:.6g}, {self.kappa_range[1]:.6g}]",
            f"alpha in [{self.alpha_range[0]:.6g}, {self.alpha_range[1]:.6g}]",
            f"sup mu/alpha = {self.mu_over_alpha_sup:.6g}",
            f"sup |kappa_theta| = {self.kappa_theta_sup:.6g}",
            f"max kappa_thetatheta = {self.kappa_thetatheta_max:.6g}",
            f"max |g| = {self.g_abs_max:.3g}",
            f"max f = {self.f_max:.3g}",
            f"max analytic-vs-FD partial mismatch = {self.derivative_mismatch:.3g}",
            f"mu growth exponents: a = {self.mu_exp_origin:.3g} (v->0), "
            f"b = {self.mu_exp_infinity:.3g} (v->inf)",
            f"kappa growth exponents: c = {self.kappa_exp_origin:.3g} (v->0), "
            f"d = {self.kappa_exp_infinity:.3g} (v->inf)",
        ]
        lines += [f"flag {k} = {'ok' if ok else 'VIOLATED'}"
                  for k, ok in sorted(self.flags.items())]
        return "\n".join(lines)


def _sample_box(v_range, theta_range, n_samples: int, seed: int = 20240901):
    v_lo, v_hi = v_range
    t_lo, t_hi = theta_range
    n_grid = max(2, int(np.sqrt(n_samples)))
    v_grid = np.geomspace(v_lo, v_hi, n_grid)
    t_grid = np.linspace(t_lo, t_hi, n_grid)
    vv, tt = np.meshgrid(v_grid, t_grid, indexing="ij")
    rng = np.random.default_rng(seed)
    v_rand = np.exp(rng.uniform(np.log(v_lo), np.log(v_hi), n_samples))
    t_rand = rng.uniform(t_lo, t_hi, n_samples)
    return (np.concatenate([vv.ravel(), v_rand]),
            np.concatenate([tt.ravel(), t_rand]))


def _derivative_mismatch(coeff: CoefficientModel, v, theta) -> float:
    """Max relative error between analytic partials and central differences."""
    hv = 1e-5 * v
    ht = 1e-5 * theta
    checks = [
        (coeff.mu_v(v, theta),
         (coeff.mu(v + hv, theta) - coeff.mu(v - hv, theta)) / (2 * hv)),
        (coeff.mu_theta(v, theta),
         (coeff.mu(v, theta + ht) - coeff.mu(v, theta - ht)) / (2 * ht)),
        (coeff.kappa_v(v, theta),
         (coeff.kappa(v + hv, theta) - coeff.kappa(v - hv, theta)) / (2 * hv)),
        (coeff.kappa_theta(v, theta),
         (coeff.kappa(v, theta + ht) - coeff.kappa(v, theta - ht)) / (2 * ht)),
        (coeff.kappa_vtheta(v, theta),
         (coeff.kappa_theta(v + hv, theta) - coeff.kappa_theta(v - hv, theta)) / (2 * hv)),
        (coeff.kappa_thetatheta(v, theta),
         (coeff.kappa_theta(v, theta + ht) - coeff.kappa_theta(v, theta - ht)) / (2 * ht)),
        (coeff.alpha_v(v, theta),
         (coeff.alpha(v + hv, theta) - coeff.alpha(v - hv, theta)) / (2 * hv)),
        (coeff.alpha_theta(v, theta),
         (coeff.alpha(v, theta + ht) - coeff.alpha(v, theta - ht)) / (2 * ht)),
    ]
    worst = 0.0
    for analytic, numeric in checks:
        scale = np.maximum(np.abs(analytic), np.maximum(np.abs(numeric), 1e-8))
        worst = max(worst, float(np.max(np.abs(analytic - numeric) / scale)))
    return worst


def _growth_exponent(min_fn, v_lo: float, v_hi: float, origin: bool) -> float:
    """Slope of log(coefficient_min) vs log(v) on the outer decade of the range.

    Returns the exponent q of coefficient ~ v**-q at the chosen end.
    """
    if origin:
        vs = np.geomspace(v_lo, min(10.0 * v_lo, v_hi), 24)
    else:
        vs = np.geomspace(max(v_hi / 10.0, v_lo), v_hi, 24)
    vals = np.asarray(min_fn(vs), dtype=float)
    if np.any(vals <= 0.0):
        return np.nan
    slope = np.polyfit(np.log(vs), np.log(vals), 1)[0]
    return -float(slope)


def check_assumptions(coeff: CoefficientModel, v_range, theta_range,
                      n_samples: int = 400, kappa_theta_threshold=None) -> AssumptionReport:
    """Sample every structural condition on the given admissibility box."""
    if min(v_range) <= 0.0 or min(theta_range) <= 0.0:
        raise DomainError("admissibility box must be positive")
    if n_samples < 2:
        raise DomainError("need at least two samples")
    v, theta = _sample_box(v_range, theta_range, n_samples)

    mu = coeff.mu(v, theta)
    kappa = coeff.kappa(v, theta)
    alpha = coeff.alpha(v, theta)
    kt = coeff.kappa_theta(v, theta)
    ktt = coeff.kappa_thetatheta(v, theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(alpha > 0, mu / np.where(alpha > 0, alpha, 1.0), np.inf)
    g_vals = coupling_g(coeff, v, theta)
    f_vals = coupling_f(coeff, v, theta)

    # theta-minimized growth exponents on the paper's doubled temperature box
    t_lo, t_hi = theta_range
    box = (0.5 * t_lo, 2.0 * t_hi)
    mu_exp_0 = _growth_exponent(lambda vv: coeff.mu_min_over_theta(vv, *box),
                                v_range[0], v_range[1], origin=True)
    mu_exp_inf = _growth_exponent(lambda vv: coeff.mu_min_over_theta(vv, *box),
                                  v_range[0], v_range[1], origin=False)
    ka_exp_0 = _growth_exponent(lambda vv: coeff.kappa_min_over_theta(vv, *box),
                                v_range[0], v_range[1], origin=True)
    ka_exp_inf = _growth_exponent(lambda vv: coeff.kappa_min_over_theta(vv, *box),
                                  v_range[0], v_range[1], origin=False)

    mismatch = _derivative_mismatch(coeff, v, theta)
    g_abs_max = float(np.max(np.abs(g_vals)))
    f_max = float(np.max(f_vals))
    ktt_max = float(np.max(ktt))
    kt_sup = float(np.max(np.abs(kt)))

    flags = {
        "positivity": bool(np.min(mu) > 0 and np.min(kappa) > 0 and np.min(alpha) > 0),
        "mu_over_alpha_bounded": bool(np.isfinite(ratio).all()),
        "kappa_thetatheta_negative_strict": bool(ktt_max < 0.0),
        "kappa_thetatheta_nonpositive": bool(ktt_max <= 0.0),
        "coupling_identity_g": bool(g_abs_max < 1e-10 * max(1.0, float(np.max(np.abs(mu * kappa))))),
        "coupling_inequality_f": bool(f_max <= 1e-10),
        "growth_mu_origin": bool(np.isnan(mu_exp_0) or mu_exp_0 >= -_EXPONENT_TOL),
        "growth_mu_infinity": bool(np.isnan(mu_exp_inf) or mu_exp_inf <= 0.5 + _EXPONENT_TOL),
        "growth_kappa_origin": bool(np.isnan(ka_exp_0) or ka_exp_0 <= 3.0 + _EXPONENT_TOL),
        "growth_kappa_infinity": bool(np.isnan(ka_exp_inf) or ka_exp_inf >= 2.0 - _EXPONENT_TOL),
        "derivatives_consistent": bool(mismatch < 1e-6),
    }
    flags["coupling_either"] = flags["coupling_identity_g"] or flags["coupling_inequality_f"]
    flags["growth_mu_family"] = flags["growth_mu_origin"] and flags["growth_mu_infinity"]
    flags["growth_kappa_family"] = (flags["growth_kappa_origin"]
                                    and flags["growth_kappa_infinity"])
    flags["growth_either_family"] = flags["growth_mu_family"] or flags["growth_kappa_family"]
    if kappa_theta_threshold is not None:
        flags["kappa_theta_small"] = bool(kt_sup < kappa_theta_threshold)

    return AssumptionReport(
        mu_range=(float(np.min(mu)), float(np.max(mu))),
        kappa_range=(float(np.min(kappa)), float(np.max(kappa))),
        alpha_range=(float(np.min(alpha)), float(np.max(alpha))),
        mu_over_alpha_sup=float(np.max(ratio)),
        kappa_theta_sup=kt_sup,
        kappa_thetatheta_max=ktt_max,
        g_abs_max=g_abs_max,
        f_max=f_max,
        derivative_mismatch=mismatch,
        mu_exp_origin=mu_exp_0,
        mu_exp_infinity=mu_exp_inf,
        kappa_exp_origin=ka_exp_0,
        kappa_exp_infinity=ka_exp_inf,
        flags=flags,
    )
