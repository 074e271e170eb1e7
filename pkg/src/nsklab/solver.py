"""Finite-difference evolution of the capillary compressible system.

Method of lines: second-order central stencils in space (flux form for the
momentum and heat fluxes), classical four-stage Runge-Kutta in time with a
diffusive step-size controller, positivity retries, and far-field Dirichlet
clamping of the two outermost nodes on each side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .coefficients import CoefficientModel
from .errors import BlowUpError, ModelViolationError, PositivityError
from .grid import Grid
from .thermo import ThermoParams

__all__ = ["State", "SolverSettings", "korteweg_stress", "capillary_work",
           "rhs", "step", "run"]

BoundaryFn = Callable[[float], Tuple[Tuple[float, float, float],
                                     Tuple[float, float, float]]]


@dataclass
class State:
    """Fields (v, u, theta) on a grid at time t; v and theta must stay positive."""

    v: np.ndarray
    u: np.ndarray
    theta: np.ndarray
    t: float = 0.0

    def copy(self) -> "State":
        return State(self.v.copy(), self.u.copy(), self.theta.copy(), self.t)

    def require_positive(self) -> None:
        if not (np.min(self.v) > 0.0 and np.min(self.theta) > 0.0):
            raise PositivityError(
                f"state lost positivity at t = {self.t:.6g} "
                f"(v_min = {np.min(self.v):.3g}, theta_min = {np.min(self.theta):.3g})")


@dataclass
class SolverSettings:
    """Time-stepping controls, abort thresholds, and the absorbing fringe.

    ``sponge_width`` > 0 activates exponential relaxation of the deviation
    from the far-field values over a fringe of that width at each domain end,
    so outgoing perturbations are absorbed instead of reflecting off the
    Dirichlet clamp (reflections of under-resolved dispersive waves otherwise
    produce spurious discrete energy over long runs).
    """

    cfl: float = 0.1
    t_final: float = 1.0
    cadence: int = 10
    max_halvings: int = 10
    dt_refresh: int = 25
    advective_cfl: float = 0.4
    v_floor: float = 0.0
    v_ceil: float = np.inf
    theta_floor: float = 0.0
    theta_ceil: float = np.inf
    sponge_width: float = 0.0
    sponge_rate: float = 2.0

    def __post_init__(self) -> None:
        if not (0.0 < self.cfl <= 1.0):
            raise ValueError(f"cfl coefficient must lie in (0, 1], got {self.cfl}")
        if self.t_final < 0.0:
            raise ValueError("t_final must be nonnegative")
        if self.cadence < 1:
            raise ValueError("cadence must be a positive step count")
        if self.sponge_width < 0.0 or self.sponge_rate < 0.0:
            raise ValueError("sponge parameters must be nonnegative")


def _pad1(f: np.ndarray) -> np.ndarray:
    out = np.empty(f.size + 2)
    out[1:-1] = f
    out[0] = f[0]
    out[-1] = f[-1]
    return out


def korteweg_stress(v, theta, v_x, v_xx, theta_x, coeff: CoefficientModel):
    """Capillary stress -kappa*v_xx/v**5 + (5*kappa - v*kappa_v)*v_x**2/(2*v**6)
    - kappa_theta*v_x*theta_x/v**5, assembled pointwise."""
    kappa = coeff.kappa(v, theta)
    kappa_v = coeff.kappa_v(v, theta)
    kappa_theta = coeff.kappa_theta(v, theta)
    v5 = v * v
    v5 = v5 * v5 * v
    return (-kappa * v_xx + (5.0 * kappa - v * kappa_v) * (0.5 / v) * v_x**2
            - kappa_theta * v_x * theta_x) / v5


def capillary_work(v, theta, u_x, u_xx, v_x, coeff: CoefficientModel):
    """Capillary contribution to the energy equation,
    theta*kappa_theta*v_x*u_xx/v**5 + (v*kappa_vtheta - kappa_theta)*theta*u_x*v_x**2/(2*v**6)."""
    kappa_theta = coeff.kappa_theta(v, theta)
    kappa_vtheta = coeff.kappa_vtheta(v, theta)
    v5 = v * v
    v5 = v5 * v5 * v
    return (theta * kappa_theta * v_x * u_xx
            + (v * kappa_vtheta - kappa_theta) * (0.5 / v) * theta * u_x * v_x**2) / v5


def rhs(v: np.ndarray, u: np.ndarray, theta: np.ndarray,
        thermo: ThermoParams, coeff: CoefficientModel, grid: Grid):
    """Semi-discrete right-hand side (v_t, u_t, theta_t) of the full system.

    The capillary stress and work are assembled inline so the powers of v and
    the capillarity evaluations are shared; korteweg_stress/capillary_work
    remain the reference implementations of the same closed forms.
    """
    inv2dx = 0.5 / grid.dx
    invdx2 = 1.0 / grid.dx**2

    pv = _pad1(v)
    pu = _pad1(u)
    pth = _pad1(theta)
    v_x = (pv[2:] - pv[:-2]) * inv2dx
    u_x = (pu[2:] - pu[:-2]) * inv2dx
    theta_x = (pth[2:] - pth[:-2]) * inv2dx
    v_xx = (pv[2:] - 2.0 * v + pv[:-2]) * invdx2
    u_xx = (pu[2:] - 2.0 * u + pu[:-2]) * invdx2

    inv_v = 1.0 / v
    v2 = v * v
    inv_v5 = inv_v / (v2 * v2)
    vx2 = v_x * v_x
    p = (thermo.R * theta) * inv_v
    kappa = coeff.kappa(v, theta)
    kappa_theta = coeff.kappa_theta(v, theta)
    K = (-kappa * v_xx + (5.0 * kappa - v * coeff.kappa_v(v, theta)) * (0.5 * inv_v) * vx2
         - kappa_theta * v_x * theta_x) * inv_v5
    mu = coeff.mu(v, theta)
    mu_ux_v = mu * u_x * inv_v
    pf = _pad1(mu_ux_v - p + K)
    u_t = (pf[2:] - pf[:-2]) * inv2dx

    ph = _pad1(coeff.alpha(v, theta) * theta_x * inv_v)
    conduction = (ph[2:] - ph[:-2]) * inv2dx

    c_eff = thermo.Cv - 0.5 * theta * coeff.kappa_thetatheta(v, theta) * vx2 * inv_v5
    if not np.all(c_eff > 0.0):
        raise ModelViolationError("effective heat capacity lost positivity")
    F = (theta * kappa_theta * v_x * u_xx
         + (v * coeff.kappa_vtheta(v, theta) - kappa_theta)
         * (0.5 * inv_v) * theta * u_x * vx2) * inv_v5
    theta_t = (conduction + (mu_ux_v - p) * u_x + F) / c_eff
    return u_x, u_t, theta_t


def stable_dt(v, u, theta, thermo: ThermoParams, coeff: CoefficientModel,
              grid: Grid, settings: SolverSettings) -> float:
    """Diffusive step bound c*dx**2 / (max(mu/v) + max(alpha/(v*C_eff)) + max(sqrt(kappa/v**5))),
    capped by an acoustic CFL so degenerate (inviscid) test runs stay stable."""
    pv = _pad1(v)
    v_x = (pv[2:] - pv[:-2]) * (0.5 / grid.dx)
    v5 = v * v
    v5 = v5 * v5 * v
    c_eff = thermo.Cv - 0.5 * theta * coeff.kappa_thetatheta(v, theta) * v_x**2 / v5
    c_eff = np.maximum(c_eff, 1e-30)
    diffusive = (np.max(coeff.mu(v, theta) / v)
                 + np.max(coeff.alpha(v, theta) / (v * c_eff))
                 + np.max(np.sqrt(np.maximum(coeff.kappa(v, theta), 0.0) / v5)))
    sound = np.max(np.sqrt(thermo.gamma * thermo.R * theta) / v)
    dt_adv = settings.advective_cfl * grid.dx / max(sound, 1e-30)
    if diffusive <= 0.0:
        return dt_adv
    return min(settings.cfl * grid.dx**2 / diffusive, dt_adv)


def _clamp(arrs, bc) -> None:
    (vl, ul, tl), (vr, ur, tr) = bc
    v, u, theta = arrs
    v[:2] = vl
    u[:2] = ul
    theta[:2] = tl
    v[-2:] = vr
    u[-2:] = ur
    theta[-2:] = tr


def _stage_ok(v, theta) -> bool:
    return bool(np.min(v) > 0.0 and np.min(theta) > 0.0)


def step(state: State, dt: float, thermo: ThermoParams, coeff: CoefficientModel,
         grid: Grid, boundary: Optional[BoundaryFn] = None) -> State:
    """One classical RK4 step; raises PositivityError if any stage leaves v, theta > 0."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    v0, u0, th0, t0 = state.v, state.u, state.theta, state.t

    def stage(v, u, th):
        if not _stage_ok(v, th):
            raise PositivityError(f"stage state lost positivity near t = {t0:.6g}")
        return rhs(v, u, th, thermo, coeff, grid)

    def clamped(v, u, th, t_stage):
        if boundary is not None:
            _clamp((v, u, th), boundary(t_stage))
        return v, u, th

    k1 = stage(v0, u0, th0)
    half = 0.5 * dt
    a1 = clamped(v0 + half * k1[0], u0 + half * k1[1], th0 + half * k1[2], t0 + half)
    k2 = stage(*a1)
    a2 = clamped(v0 + half * k2[0], u0 + half * k2[1], th0 + half * k2[2], t0 + half)
    k3 = stage(*a2)
    a3 = clamped(v0 + dt * k3[0], u0 + dt * k3[1], th0 + dt * k3[2], t0 + dt)
    k4 = stage(*a3)
    sixth = dt / 6.0
    v1 = v0 + sixth * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
    u1 = u0 + sixth * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
    th1 = th0 + sixth * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
    clamped(v1, u1, th1, t0 + dt)
    new = State(v1, u1, th1, t0 + dt)
    new.require_positive()
    return new


def run(state: State, settings: SolverSettings, thermo: ThermoParams,
        coeff: CoefficientModel, grid: Grid,
        boundary: Optional[BoundaryFn] = None,
        sink: Optional[Callable[[State, int], None]] = None) -> State:
    """Advance to settings.t_final, emitting the state to ``sink`` every
    ``cadence`` steps (and at both endpoints).  Aborts with BlowUpError after
    ``max_halvings`` consecutive step rejections, and raises PositivityError
    if the state leaves the configured admissible box."""
    state = state.copy()
    state.require_positive()
    if boundary is not None:
        _clamp((state.v, state.u, state.theta), boundary(state.t))
    if sink is not None:
        sink(state, 0)
    n_step = 0
    sponge = None
    if settings.sponge_width > 0.0 and boundary is not None:
        sponge = _Sponge(grid, settings)
    dt_ctrl = stable_dt(state.v, state.u, state.theta, thermo, coeff, grid, settings)
    t_end = settings.t_final
    while state.t < t_end - 1e-12 * max(1.0, t_end):
        if n_step % settings.dt_refresh == 0:
            dt_ctrl = stable_dt(state.v, state.u, state.theta,
                                thermo, coeff, grid, settings)
        dt = min(dt_ctrl, t_end - state.t)
        advanced = None
        for _ in range(settings.max_halvings + 1):
            try:
                advanced = step(state, dt, thermo, coeff, grid, boundary)
                break
            except PositivityError:
                dt *= 0.5
        if advanced is None:
            raise BlowUpError(
                f"step at t = {state.t:.6g} still loses positivity after "
                f"{settings.max_halvings} halvings")
        state = advanced
        if sponge is not None:
            sponge.apply(state, dt, boundary(state.t))
        n_step += 1
        _check_box(state, settings)
        if sink is not None and (n_step % settings.cadence == 0
                                 or state.t >= t_end - 1e-12 * max(1.0, t_end)):
            sink(state, n_step)
    return state


class _Sponge:
    """Relaxes the deviation from the boundary targets inside the fringes."""

    def __init__(self, grid: Grid, settings: SolverSettings):
        ramp = np.zeros(grid.n_points)
        w = settings.sponge_width
        left = (grid.x + grid.half_width) < w
        right = (grid.half_width - grid.x) < w
        ramp[left] = ((w - (grid.x[left] + grid.half_width)) / w) ** 2
        ramp[right] = ((w - (grid.half_width - grid.x[right])) / w) ** 2
        self.sigma = settings.sponge_rate * ramp
        self.active = np.nonzero(self.sigma > 0.0)[0]
        self.left_mask = left[self.active]
        self._dt = -1.0
        self._factor = None

    def apply(self, state: State, dt: float, bc) -> None:
        if self.active.size == 0:
            return
        if dt != self._dt:
            self._factor = np.exp(-self.sigma[self.active] * dt)
            self._dt = dt
        (vl, ul, tl), (vr, ur, tr) = bc
        idx = self.active
        tv = np.where(self.left_mask, vl, vr)
        tu = np.where(self.left_mask, ul, ur)
        tt = np.where(self.left_mask, tl, tr)
        state.v[idx] = tv + (state.v[idx] - tv) * self._factor
        state.u[idx] = tu + (state.u[idx] - tu) * self._factor
        state.theta[idx] = tt + (state.theta[idx] - tt) * self._factor


def _check_box(state: State, settings: SolverSettings) -> None:
    v_min, v_max = float(np.min(state.v)), float(np.max(state.v))
    th_min, th_max = float(np.min(state.theta)), float(np.max(state.theta))
    u_max = float(np.max(np.abs(state.u)))
    if not (np.isfinite(v_max) and np.isfinite(th_max) and np.isfinite(u_max)):
        raise PositivityError(f"state became non-finite at t = {state.t:.6g}")
    if (v_min < settings.v_floor or v_max > settings.v_ceil
            or th_min < settings.theta_floor or th_max > settings.theta_ceil):
        raise PositivityError(
            f"state left the admissible box at t = {state.t:.6g}: "
            f"v in [{v_min:.4g}, {v_max:.4g}], theta in [{th_min:.4g}, {th_max:.4g}]")
