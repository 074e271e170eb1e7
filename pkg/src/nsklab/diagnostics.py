"""Energy functionals, ansatz residuals, heat-kernel pair, and decay fits.

Everything here is a pure read-only computation over state snapshots or wave
evaluators; records are emitted as flat rows for the CSV sink.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt
from typing import Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import erf

from .coefficients import CoefficientModel
from .composite import CompositeWave, WaveFields
from .errors import DomainError
from .grid import Grid, d1, integrate, l2_norm, sup_norm
from .solver import State
from .thermo import ThermoParams, phi_entropy, pressure

__all__ = [
    "PerturbationFields",
    "HeatKernelPair",
    "HuangTerms",
    "DiagnosticsRecord",
    "perturbation",
    "basic_energy",
    "dissipation",
    "capillary_energy",
    "kanel_functionals",
    "KanelReport",
    "contact_residuals",
    "composite_residuals",
    "huang_estimate_terms",
    "fit_decay",
    "decay_report",
    "make_record",
    "RECORD_COLUMNS",
]


@dataclass(frozen=True)
class PerturbationFields:
    """phi = v - V, psi = u - U, zeta = theta - Theta on the grid at time t."""

    t: float
    phi: np.ndarray
    psi: np.ndarray
    zeta: np.ndarray


def perturbation(state: State, wave_fields: WaveFields) -> PerturbationFields:
    return PerturbationFields(t=state.t,
                              phi=state.v - wave_fields.V,
                              psi=state.u - wave_fields.U,
                              zeta=state.theta - wave_fields.Theta)


# ---------------------------------------------------------------------------
# heat-kernel weight pair


@dataclass(frozen=True)
class HeatKernelPair:
    """Gaussian weight w and primitive g with the exact identity 4*alpha*g_t = delta*w_x."""

    alpha: float
    delta: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0.0 and self.delta > 0.0):
            raise DomainError("heat-kernel pair needs alpha > 0 and delta > 0")

    def w(self, t, x):
        x = np.asarray(x, dtype=float)
        r = 1.0 + t
        return r**-0.5 * np.exp(-self.alpha * x**2 / (self.delta * r))

    def w_x(self, t, x):
        x = np.asarray(x, dtype=float)
        r = 1.0 + t
        return self.w(t, x) * (-2.0 * self.alpha * x / (self.delta * r))

    def g(self, t, x):
        x = np.asarray(x, dtype=float)
        r = 1.0 + t
        z = x * sqrt(self.alpha / (self.delta * r))
        return 0.5 * sqrt(pi * self.delta / self.alpha) * (1.0 + erf(z))

    def g_t(self, t, x):
        x = np.asarray(x, dtype=float)
        r = 1.0 + t
        z2 = self.alpha * x**2 / (self.delta * r)
        return -0.5 * x * r**-1.5 * np.exp(-z2)

    def g_sup(self) -> float:
        """sup_x g = sqrt(pi) * alpha**-1/2 * delta**1/2."""
        return sqrt(pi) * self.alpha**-0.5 * self.delta**0.5


@dataclass(frozen=True)
class HuangTerms:
    """Terms of the weighted space-time estimate; the bound asserts
    lhs <= init_term + grad_term + dual_term."""

    lhs: float
    init_term: float
    grad_term: float
    dual_term: float

    @property
    def rhs(self) -> float:
        return self.init_term + self.grad_term + self.dual_term

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs


def huang_estimate_terms(h_series: Sequence[np.ndarray],
                         hx_series: Sequence[np.ndarray],
                         ht_series: Sequence[np.ndarray],
                         times: Sequence[float],
                         pair: HeatKernelPair, grid: Grid) -> HuangTerms:
    """Quadrature of both sides of the weighted estimate for a sampled h(t, x)."""
    n = len(times)
    if not (len(h_series) == len(hx_series) == len(ht_series) == n):
        raise DomainError("huang_estimate_terms needs equally long series")
    if n < 2:
        raise DomainError("need at least two time samples")
    times = np.asarray(times, dtype=float)
    lhs_vals = np.empty(n)
    grad_vals = np.empty(n)
    dual_vals = np.empty(n)
    for k, t in enumerate(times):
        w = pair.w(t, grid.x)
        g = pair.g(t, grid.x)
        lhs_vals[k] = integrate(h_series[k] ** 2 * w**2, grid)
        grad_vals[k] = integrate(hx_series[k] ** 2, grid)
        dual_vals[k] = integrate(ht_series[k] * h_series[k] * g**2, grid)
    lhs = float(np.trapezoid(lhs_vals, times))
    init_term = 4.0 * pi * l2_norm(h_series[0], grid) ** 2
    grad_term = 4.0 * pi * (pair.delta / pair.alpha) * float(np.trapezoid(grad_vals, times))
    dual_term = (8.0 * pair.alpha / pair.delta) * float(np.trapezoid(dual_vals, times))
    return HuangTerms(lhs=lhs, init_term=init_term,
                      grad_term=grad_term, dual_term=dual_term)


# ---------------------------------------------------------------------------
# energy functionals


def basic_energy(state: State, wave_fields: WaveFields, thermo: ThermoParams,
                 coeff: CoefficientModel, grid: Grid) -> float:
    """Relative-entropy energy with the capillary gradient term,
    integral of R*Theta*Phi(v/V) + psi**2/2 + (R/delta)*Theta*Phi(theta/Theta)
    + kappa*v_x**2/(2*v**5)."""
    V, U, Theta = wave_fields.V, wave_fields.U, wave_fields.Theta
    ratio_v = state.v / V
    ratio_th = state.theta / Theta
    if not (np.all(ratio_v > 0.0) and np.all(ratio_th > 0.0)):
        raise DomainError("state/ansatz ratios must be positive in the energy")
    psi = state.u - U
    dens = (thermo.R * Theta * phi_entropy(ratio_v)
            + 0.5 * psi**2
            + (thermo.R / thermo.delta) * Theta * phi_entropy(ratio_th))
    return integrate(dens, grid) + capillary_energy(state, coeff, grid)


def capillary_energy(state: State, coeff: CoefficientModel, grid: Grid) -> float:
    v_x = d1(state.v, grid)
    dens = coeff.kappa(state.v, state.theta) * v_x**2 / (2.0 * state.v**5)
    return integrate(dens, grid)


def dissipation(state: State, wave_fields: WaveFields, thermo: ThermoParams,
                coeff: CoefficientModel, grid: Grid) -> float:
    """Instantaneous dissipation integral of mu*Theta*psi_x**2/(theta*v)
    + alpha*Theta*zeta_x**2/(v*theta**2)."""
    psi_x = d1(state.u - wave_fields.U, grid)
    zeta_x = d1(state.theta - wave_fields.Theta, grid)
    v, theta = state.v, state.theta
    dens = (coeff.mu(v, theta) * wave_fields.Theta * psi_x**2 / (theta * v)
            + coeff.alpha(v, theta) * wave_fields.Theta * zeta_x**2 / (v * theta**2))
    return integrate(dens, grid)


# ---------------------------------------------------------------------------
# Kanel functionals


@dataclass(frozen=True)
class KanelReport:
    phi_bar: np.ndarray
    psi_bar: np.ndarray
    phi_bar_max: float
    psi_bar_max: float
    cs_bound_mu: float
    cs_bound_kappa: float

    @property
    def cauchy_schwarz_ok(self) -> bool:
        tol = 1e-12
        return (self.phi_bar_max <= self.cs_bound_mu * (1.0 + tol) + tol
                and self.psi_bar_max <= self.cs_bound_kappa * (1.0 + tol) + tol)


def kanel_functionals(v_field, V_field, coeff: CoefficientModel, grid: Grid,
                      theta_lo: float, theta_hi: float) -> KanelReport:
    """Pointwise bounds on vtilde = v/V via the entropy-weighted volume integrals.

    phi_bar(vtilde) integrates sqrt(Phi(eta))/eta * mu_1(eta); psi_bar uses
    sqrt(kappa_1(eta))/eta**(5/2).  Both are compared against their
    Cauchy-Schwarz majorants so the caller can assert the inequality.
    """
    v_field = np.asarray(v_field, dtype=float)
    V_field = np.asarray(V_field, dtype=float)
    if not (np.all(v_field > 0.0) and np.all(V_field > 0.0)):
        raise DomainError("Kanel functionals need positive fields")
    vt = v_field / V_field

    def mu1(eta):
        return coeff.mu_min_over_theta(eta, theta_lo, theta_hi)

    def kappa1(eta):
        return coeff.kappa_min_over_theta(eta, theta_lo, theta_hi)

    def phi_bar_integrand(eta):
        return sqrt(phi_entropy(eta)) / eta * mu1(eta)

    def psi_bar_integrand(eta):
        return sqrt(phi_entropy(eta)) * sqrt(kappa1(eta)) / eta**2.5

    phi_bar = np.array([_signed_quad(phi_bar_integrand, z) for z in vt])
    psi_bar = np.array([_signed_quad(psi_bar_integrand, z) for z in vt])

    vt_x = d1(vt, grid)
    sqrt_phi_l2 = l2_norm(np.sqrt(phi_entropy(vt)), grid)
    mu1_vt = coeff.mu_min_over_theta(vt, theta_lo, theta_hi)
    kappa1_vt = coeff.kappa_min_over_theta(vt, theta_lo, theta_hi)
    cs_mu = sqrt_phi_l2 * l2_norm(mu1_vt * vt_x / vt, grid)
    cs_kappa = sqrt_phi_l2 * l2_norm(np.sqrt(kappa1_vt) * vt_x / vt**2.5, grid)
    return KanelReport(phi_bar=phi_bar, psi_bar=psi_bar,
                       phi_bar_max=float(np.max(np.abs(phi_bar))),
                       psi_bar_max=float(np.max(np.abs(psi_bar))),
                       cs_bound_mu=float(cs_mu), cs_bound_kappa=float(cs_kappa))


def _signed_quad(fn, upper: float) -> float:
    if upper == 1.0:
        return 0.0
    val, _ = quad(fn, 1.0, upper, limit=200)
    return val


# ---------------------------------------------------------------------------
# ansatz residuals


def contact_residuals(wave: CompositeWave, coeff: CoefficientModel,
                      grid: Grid, t: float):
    """(R1, R2) of the contact ansatz: R1 = U_t - d1(mu*U_x/V), R2 = -mu*U_x**2/V."""
    c = wave.eval_contact_part(grid.x, t)
    mu = coeff.mu(c.V, c.Theta)
    r1 = c.U_t - d1(mu * c.U_x / c.V, grid)
    r2 = -mu * c.U_x**2 / c.V
    return r1, r2


def composite_residuals(wave: CompositeWave, thermo: ThermoParams,
                        coeff: CoefficientModel, grid: Grid, t: float):
    """Defect (G, H) of the composite ansatz in the full system, plus L1 norms.

    The conduction term expands through the chain rule with the model's
    analytic partials so that on contact-only input H collapses to R2 exactly;
    the pressure and viscous fluxes are differenced with the same stencil the
    contact residual uses, making G match R1 identically there.
    """
    f = wave.eval(grid.x, t)
    V, U, Theta = f.V, f.U, f.Theta
    p = pressure(thermo, V, Theta)
    mu = coeff.mu(V, Theta)
    G = f.U_t + d1(p, grid) - d1(mu * f.U_x / V, grid)

    alpha = coeff.alpha(V, Theta)
    alpha_x = coeff.alpha_v(V, Theta) * f.V_x + coeff.alpha_theta(V, Theta) * f.Theta_x
    conduction = (alpha_x * f.Theta_x + alpha * f.Theta_xx) / V \
        - alpha * f.Theta_x * f.V_x / V**2
    H = ((thermo.R / thermo.delta) * f.Theta_t + p * f.U_x
         - conduction - mu * f.U_x**2 / V)
    g_l1 = integrate(np.abs(G), grid)
    h_l1 = integrate(np.abs(H), grid)
    return G, H, g_l1, h_l1


# ---------------------------------------------------------------------------
# decay fitting and run summaries


def fit_decay(times, values):
    """Least-squares power-law fit log(y) ~ intercept + slope*log(1+t).

    Returns (slope, intercept, rms_residual).  Requires at least five samples
    with t >= 1 and positive values.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    if t.size < 5:
        raise DomainError(f"need at least 5 samples for a decay fit, got {t.size}")
    if np.any(y <= 0.0):
        raise DomainError("decay fit requires positive values")
    if np.any(t < 1.0 - 1e-12):
        raise DomainError("decay fit expects samples at t >= 1")
    lx = np.log1p(t)
    ly = np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (intercept + slope * lx)
    return float(slope), float(intercept), float(np.sqrt(np.mean(resid**2)))


RECORD_COLUMNS = (
    "t", "sup_phi", "sup_psi", "sup_zeta",
    "l2_phi", "l2_psi", "l2_zeta",
    "l2_phi_x", "l2_psi_x", "l2_zeta_x",
    "energy", "dissipation", "capillary_energy",
    "v_min", "v_max", "theta_min", "theta_max",
    "mass_drift", "r1_sup", "r2_sup", "gh_l1",
)


@dataclass(frozen=True)
class DiagnosticsRecord:
    """One scalar ledger row per cadence tick; column order is RECORD_COLUMNS."""

    t: float
    sup_phi: float
    sup_psi: float
    sup_zeta: float
    l2_phi: float
    l2_psi: float
    l2_zeta: float
    l2_phi_x: float
    l2_psi_x: float
    l2_zeta_x: float
    energy: float
    dissipation: float
    capillary_energy: float
    v_min: float
    v_max: float
    theta_min: float
    theta_max: float
    mass_drift: float
    r1_sup: float
    r2_sup: float
    gh_l1: float

    def as_row(self):
        return [getattr(self, name) for name in RECORD_COLUMNS]


def make_record(state: State, wave: CompositeWave, thermo: ThermoParams,
                coeff: CoefficientModel, grid: Grid,
                mass_reference: float) -> DiagnosticsRecord:
    """Assemble the full diagnostics row for one snapshot."""
    fields = wave.eval(grid.x, state.t)
    pert = perturbation(state, fields)
    r1, r2 = contact_residuals(wave, coeff, grid, state.t)
    _, _, g_l1, h_l1 = composite_residuals(wave, thermo, coeff, grid, state.t)
    return DiagnosticsRecord(
        t=state.t,
        sup_phi=sup_norm(pert.phi, grid),
        sup_psi=sup_norm(pert.psi, grid),
        sup_zeta=sup_norm(pert.zeta, grid),
        l2_phi=l2_norm(pert.phi, grid),
        l2_psi=l2_norm(pert.psi, grid),
        l2_zeta=l2_norm(pert.zeta, grid),
        l2_phi_x=l2_norm(d1(pert.phi, grid), grid),
        l2_psi_x=l2_norm(d1(pert.psi, grid), grid),
        l2_zeta_x=l2_norm(d1(pert.zeta, grid), grid),
        energy=basic_energy(state, fields, thermo, coeff, grid),
        dissipation=dissipation(state, fields, thermo, coeff, grid),
        capillary_energy=capillary_energy(state, coeff, grid),
        v_min=float(np.min(state.v)),
        v_max=float(np.max(state.v)),
        theta_min=float(np.min(state.theta)),
        theta_max=float(np.max(state.theta)),
        mass_drift=integrate(state.v - fields.V, grid) - mass_reference,
        r1_sup=sup_norm(r1, grid),
        r2_sup=sup_norm(r2, grid),
        gh_l1=g_l1 + h_l1,
    )


@dataclass(frozen=True)
class DecayReport:
    initial_sup: float
    final_sup: float
    sup_ratio: float
    v_min: float
    v_max: float
    theta_min: float
    theta_max: float
    monotone_after_transient: bool


def decay_report(records: Sequence[DiagnosticsRecord], transient: float = 0.0,
                 wiggle: float = 0.05) -> DecayReport:
    """Summary of a run's perturbation decay and uniform bounds.

    ``monotone_after_transient`` allows a relative wiggle per sample, since
    sup norms of dispersive systems are not strictly monotone.
    """
    if len(records) < 2:
        raise DomainError("need at least two records for a decay report")
    sups = np.array([max(r.sup_phi, r.sup_psi, r.sup_zeta) for r in records])
    times = np.array([r.t for r in records])
    late = sups[times >= transient]
    monotone = bool(np.all(late[1:] <= late[:-1] * (1.0 + wiggle) + 1e-15))
    return DecayReport(
        initial_sup=float(sups[0]),
        final_sup=float(sups[-1]),
        sup_ratio=float(sups[-1] / sups[0]) if sups[0] > 0 else 0.0,
        v_min=float(min(r.v_min for r in records)),
        v_max=float(max(r.v_max for r in records)),
        theta_min=float(min(r.theta_min for r in records)),
        theta_max=float(max(r.theta_max for r in records)),
        monotone_after_transient=monotone,
    )
