"""Viscous contact wave: self-similar temperature profile and field evaluator.

The temperature solves the two-point problem

    a * (alpha_hat(T) * T' / T)' + (xi/2) * T' = 0,   T(-Xi) = theta_minus,
                                                      T(+Xi) = theta_plus,

in the similarity variable xi = x / sqrt(1+t), with a = p_ref*(gamma-1)/(gamma*R**2).
The solver is a damped Newton iteration on a conservative second-order
discretization, started from an erf profile (exact when alpha_hat(T)/T is
constant, which is the default coefficient family).

Downstream evaluation never differentiates the profile numerically a second
time: writing q = m(T)*T' with m = alpha_hat/T, the equation gives
q' = -xi*T'/(2a) and q'' = -(T' + xi*T'')/(2a), so the velocity field
U = u_anchor + b*(1+t)**-1/2 * q(xi) and the conduction flux have derivatives
expressed through (T, T') alone.  The mass identity V_t = U_x then holds to
rounding error by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import erf, sqrt
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import solve_banded

from .coefficients import AlphaHat, CoefficientModel
from .errors import ConvergenceError, DomainError
from .thermo import ThermoParams

__all__ = ["SelfSimilarProfile", "solve_selfsimilar", "ContactWave", "ContactFields"]

_NEWTON_TOL = 1e-11
_NEWTON_MAX_ITER = 60


@dataclass
class SelfSimilarProfile:
    """Solved diffusion-wave temperature on a similarity grid.

    The stored second derivative is the one consistent with the differential
    equation evaluated from (Theta, dTheta); the discrete boundary-value
    residual is available via ode_residual().
    """

    xi_grid: np.ndarray
    Theta: np.ndarray
    dTheta: np.ndarray
    d2Theta: np.ndarray
    theta_minus: float
    theta_plus: float
    a_coef: float
    p_ref: float
    alpha_hat: AlphaHat
    _spline: Optional[CubicSpline] = field(default=None, repr=False)
    _dspline: Optional[CubicSpline] = field(default=None, repr=False)

    @property
    def Xi(self) -> float:
        return float(self.xi_grid[-1])

    def _m(self, T):
        return self.alpha_hat(T) / T

    def _m1(self, T):
        T = np.asarray(T, dtype=float)
        return (self.alpha_hat.d1(T) * T - self.alpha_hat(T)) / T**2

    def _m2(self, T):
        T = np.asarray(T, dtype=float)
        return (self.alpha_hat.d2(T) / T - 2.0 * self.alpha_hat.d1(T) / T**2
                + 2.0 * self.alpha_hat(T) / T**3)

    def _ensure_splines(self) -> None:
        if self._spline is None:
            self._spline = CubicSpline(self.xi_grid, self.Theta,
                                       bc_type=((1, 0.0), (1, 0.0)))
            self._dspline = self._spline.derivative()

    def theta_of_xi(self, xi):
        """Profile value with constant extension beyond the stored grid."""
        self._ensure_splines()
        xi = np.asarray(xi, dtype=float)
        inner = np.clip(xi, -self.Xi, self.Xi)
        vals = self._spline(inner)
        return np.where(xi < -self.Xi, self.theta_minus,
                        np.where(xi > self.Xi, self.theta_plus, vals))

    def dtheta_of_xi(self, xi):
        """First xi-derivative, zero beyond the stored grid."""
        self._ensure_splines()
        xi = np.asarray(xi, dtype=float)
        inner = np.clip(xi, -self.Xi, self.Xi)
        vals = self._dspline(inner)
        return np.where(np.abs(xi) > self.Xi, 0.0, vals)

    def higher_derivatives(self, xi, T, dT):
        """(T'', T''') consistent with the equation, from pointwise (T, T')."""
        m = self._m(T)
        m1 = self._m1(T)
        m2 = self._m2(T)
        qp = -xi * dT / (2.0 * self.a_coef)
        d2T = (qp - m1 * dT**2) / m
        qpp = -(dT + xi * d2T) / (2.0 * self.a_coef)
        d3T = (qpp - m2 * dT**3 - 3.0 * m1 * dT * d2T) / m
        return d2T, d3T

    def ode_residual(self) -> np.ndarray:
        """Discrete flux-form residual on the interior nodes (the solver target)."""
        return _discrete_residual(self.xi_grid, self.Theta, self.a_coef, self._m)


def _discrete_residual(xi, theta, a, m_fn) -> np.ndarray:
    h = xi[1] - xi[0]
    t_mid = 0.5 * (theta[1:] + theta[:-1])
    flux = m_fn(t_mid) * (theta[1:] - theta[:-1]) / h
    return (a * (flux[1:] - flux[:-1]) / h
            + (xi[1:-1] / 2.0) * (theta[2:] - theta[:-2]) / (2.0 * h))


def _erf_guess(xi, theta_minus, theta_plus, diffusivity):
    scale = 2.0 * sqrt(diffusivity)
    e = np.array([erf(z) for z in xi / scale])
    return theta_minus + 0.5 * (theta_plus - theta_minus) * (1.0 + e)


def default_half_width(a: float, alpha_hat: AlphaHat, theta_minus: float,
                       theta_plus: float) -> float:
    """Xi sized so the Gaussian tails sit far below solver precision."""
    t_lo = min(theta_minus, theta_plus)
    t_hi = max(theta_minus, theta_plus)
    alpha_max = float(np.max(alpha_hat(np.linspace(t_lo, t_hi, 32))))
    return max(1.0, 12.0 * sqrt(a * alpha_max / t_lo))


def solve_selfsimilar(theta_minus: float, theta_plus: float, p_plus: float,
                      thermo: ThermoParams, coeff: CoefficientModel,
                      Xi: Optional[float] = None, N: int = 2001) -> SelfSimilarProfile:
    """Solve the similarity boundary-value problem for the contact temperature."""
    if theta_minus <= 0.0 or theta_plus <= 0.0:
        raise DomainError("contact end temperatures must be positive")
    if N < 101 or N % 2 == 0:
        raise DomainError(f"need an odd node count >= 101, got {N}")
    a = p_plus * thermo.delta / (thermo.gamma * thermo.R**2)
    alpha_hat = coeff.alpha_hat(thermo.R, p_plus)
    if Xi is None:
        Xi = default_half_width(a, alpha_hat, theta_minus, theta_plus)
    xi = np.linspace(-Xi, Xi, N)
    h = xi[1] - xi[0]

    def m_fn(T):
        return alpha_hat(T) / T

    def m1_fn(T):
        return (alpha_hat.d1(T) * T - alpha_hat(T)) / np.asarray(T, dtype=float)**2

    if theta_plus == theta_minus:
        theta = np.full(N, float(theta_minus))
    else:
        t_mid_val = 0.5 * (theta_minus + theta_plus)
        theta = _erf_guess(xi, theta_minus, theta_plus, a * float(m_fn(t_mid_val)))
        theta[0], theta[-1] = theta_minus, theta_plus
        res = _discrete_residual(xi, theta, a, m_fn)
        theta_max = max(theta_minus, theta_plus)
        # rounding floor of the discrete residual (second difference / h**2)
        floor = np.finfo(float).eps * theta_max * (
            4.0 * a * float(m_fn(theta_max)) / h**2 + Xi / h)
        tol = max(_NEWTON_TOL * abs(theta_plus - theta_minus), 30.0 * floor)
        for _ in range(_NEWTON_MAX_ITER):
            if np.max(np.abs(res)) < tol:
                break
            # tridiagonal Jacobian of the interior residuals
            t_mid = 0.5 * (theta[1:] + theta[:-1])
            dthdh = (theta[1:] - theta[:-1]) / h
            m_mid = m_fn(t_mid)
            m1_mid = m1_fn(t_mid)
            dflux_dleft = 0.5 * m1_mid * dthdh - m_mid / h
            dflux_dright = 0.5 * m1_mid * dthdh + m_mid / h
            n_int = N - 2
            lower = np.zeros(n_int)
            diag = np.zeros(n_int)
            upper = np.zeros(n_int)
            conv = xi[1:-1] / (4.0 * h)
            diag[:] = (a / h) * (dflux_dleft[1:] - dflux_dright[:-1])
            lower[:] = (a / h) * (-dflux_dleft[:-1]) - conv
            upper[:] = (a / h) * (dflux_dright[1:]) + conv
            ab = np.zeros((3, n_int))
            ab[0, 1:] = upper[:-1]
            ab[1, :] = diag
            ab[2, :-1] = lower[1:]
            step = solve_banded((1, 1), ab, -res)
            lam = 1.0
            norm0 = np.max(np.abs(res))
            for _ in range(30):
                trial = theta.copy()
                trial[1:-1] += lam * step
                if np.min(trial) > 0.0:
                    trial_res = _discrete_residual(xi, trial, a, m_fn)
                    if np.max(np.abs(trial_res)) < max(norm0, tol):
                        theta, res = trial, trial_res
                        break
                lam *= 0.5
            else:
                raise ConvergenceError(
                    "damped Newton stalled; increase Xi or the node count")
        else:
            raise ConvergenceError(
                f"self-similar solve did not reach tolerance {_NEWTON_TOL:g} "
                f"in {_NEWTON_MAX_ITER} iterations")

    if theta_plus == theta_minus:
        dtheta = np.zeros_like(theta)
    else:
        dtheta = _fourth_order_d1(theta, h)
    profile = SelfSimilarProfile(
        xi_grid=xi, Theta=theta, dTheta=dtheta,
        d2Theta=np.zeros_like(theta),
        theta_minus=float(theta_minus), theta_plus=float(theta_plus),
        a_coef=a, p_ref=float(p_plus), alpha_hat=alpha_hat)
    d2, _ = profile.higher_derivatives(xi, theta, dtheta)
    profile.d2Theta = np.asarray(d2)
    return profile


def _fourth_order_d1(f: np.ndarray, h: float) -> np.ndarray:
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
    out[1] = (f[2] - f[0]) / (2.0 * h)
    out[-2] = (f[-1] - f[-3]) / (2.0 * h)
    out[-1] = (3.0 * f[-1] - 4.0 * f[-2] + f[-3]) / (2.0 * h)
    return out


@dataclass(frozen=True)
class ContactFields:
    """Contact-wave values with x-derivatives (V, Theta to third order, U to second)."""

    V: np.ndarray
    U: np.ndarray
    Theta: np.ndarray
    V_x: np.ndarray
    U_x: np.ndarray
    Theta_x: np.ndarray
    V_xx: np.ndarray
    U_xx: np.ndarray
    Theta_xx: np.ndarray
    V_xxx: np.ndarray
    Theta_xxx: np.ndarray
    V_t: np.ndarray
    U_t: np.ndarray
    Theta_t: np.ndarray


class ContactWave:
    """Evaluator for the viscous contact ansatz built on a similarity profile.

    V = R*Theta/p_ref and U = u_anchor + b*alpha_hat(Theta)*Theta_x/Theta with
    b = (gamma-1)/(gamma*R); since b/a = R/p_ref, the mass identity
    V_t - U_x = 0 holds identically for the evaluated fields.
    """

    def __init__(self, profile: SelfSimilarProfile, u_anchor: float,
                 thermo: ThermoParams):
        self.profile = profile
        self.u_anchor = float(u_anchor)
        self.thermo = thermo
        self.b_coef = thermo.delta / (thermo.gamma * thermo.R)

    def eval(self, x, t) -> ContactFields:
        prof = self.profile
        thermo = self.thermo
        x = np.asarray(x, dtype=float)
        r = 1.0 + t
        if r <= 0.0:
            raise DomainError("contact wave defined for t > -1")
        xi = x / sqrt(r)
        T = prof.theta_of_xi(xi)
        dT = prof.dtheta_of_xi(xi)
        d2T, d3T = prof.higher_derivatives(xi, T, dT)

        inv_sqrt_r = 1.0 / sqrt(r)
        Theta_x = dT * inv_sqrt_r
        Theta_xx = d2T / r
        Theta_xxx = d3T * inv_sqrt_r / r
        Theta_t = -0.5 * xi * dT / r

        scale_v = thermo.R / prof.p_ref
        b = self.b_coef
        m = prof._m(T)
        q = m * dT
        qp = -xi * dT / (2.0 * prof.a_coef)
        qpp = -(dT + xi * d2T) / (2.0 * prof.a_coef)

        U = self.u_anchor + b * inv_sqrt_r * q
        U_x = b * qp / r
        U_xx = b * qpp * inv_sqrt_r / r
        U_t = -0.5 * b * (q + xi * qp) * inv_sqrt_r / r

        return ContactFields(
            V=scale_v * T, U=U, Theta=T,
            V_x=scale_v * Theta_x, U_x=U_x, Theta_x=Theta_x,
            V_xx=scale_v * Theta_xx, U_xx=U_xx, Theta_xx=Theta_xx,
            V_xxx=scale_v * Theta_xxx, Theta_xxx=Theta_xxx,
            V_t=scale_v * Theta_t, U_t=U_t, Theta_t=Theta_t)
