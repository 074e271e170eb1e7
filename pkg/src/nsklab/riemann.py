"""Riemann wave-curve machinery: middle states and smooth rarefaction waves.

Both rarefaction curves are isentropes, parameterized here by the common
pressure p.  The middle pressure is the root of the velocity mismatch between
the curve traced forward from the left state and backward from the right
state; both velocity integrals have closed forms, so the root solve is the
only numerical step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .burgers import BurgersWave
from .errors import BracketError, DomainError
from .thermo import ThermoParams, entropy, pressure

__all__ = [
    "EndStates",
    "MiddleStates",
    "solve_middle_states",
    "RarefactionWave",
    "velocity_along_curve",
    "ends_from_middle",
]


@dataclass(frozen=True)
class EndStates:
    """Far-field states (v, u, theta) at x = -inf and x = +inf."""

    v_minus: float
    u_minus: float
    theta_minus: float
    v_plus: float
    u_plus: float
    theta_plus: float

    def __post_init__(self) -> None:
        for name in ("v_minus", "v_plus", "theta_minus", "theta_plus"):
            if not (getattr(self, name) > 0.0):
                raise DomainError(f"end state field {name} must be positive")


@dataclass(frozen=True)
class MiddleStates:
    """States flanking the contact layer, sharing pressure p_mid and velocity u_mid."""

    v_m_minus: float
    theta_m_minus: float
    v_m_plus: float
    theta_m_plus: float
    u_mid: float
    p_mid: float
    s_minus: float
    s_plus: float


def velocity_along_curve(thermo: ThermoParams, sign: int, v_anchor: float,
                         u_anchor: float, theta_anchor: float, v) -> np.ndarray:
    """Velocity on the rarefaction curve of the given family through the anchor.

    Closed form of u_anchor - integral of lambda_sign(eta, s_anchor) from
    v_anchor to v; the antiderivative of eta**-(gamma+1)/2 is explicit.
    """
    gamma, delta = thermo.gamma, thermo.delta
    B = gamma * thermo.R * theta_anchor * v_anchor**delta
    v = np.asarray(v, dtype=float)
    integral = sign * (-2.0 * np.sqrt(B) / delta) * (v ** (-delta / 2.0)
                                                     - v_anchor ** (-delta / 2.0))
    return u_anchor - integral


def _volume_at_pressure(thermo: ThermoParams, v_anchor: float, theta_anchor: float, p):
    """Specific volume on the isentrope through the anchor at pressure p."""
    p_anchor = thermo.R * theta_anchor / v_anchor
    return v_anchor * (p_anchor / np.asarray(p, dtype=float)) ** (1.0 / thermo.gamma)


def solve_middle_states(ends: EndStates, thermo: ThermoParams,
                        tol: float = 1e-14) -> MiddleStates:
    """Middle states of the two-rarefactions-plus-contact pattern.

    Raises BracketError when the velocity mismatch has no root below
    min(p_minus, p_plus), i.e. the end states are outside the admissible
    wave-pattern region.
    """
    p_minus = pressure(thermo, ends.v_minus, ends.theta_minus)
    p_plus = pressure(thermo, ends.v_plus, ends.theta_plus)
    s_minus = float(entropy(thermo, ends.v_minus, ends.theta_minus))
    s_plus = float(entropy(thermo, ends.v_plus, ends.theta_plus))

    def u_from_left(p):
        v = _volume_at_pressure(thermo, ends.v_minus, ends.theta_minus, p)
        return velocity_along_curve(thermo, -1, ends.v_minus, ends.u_minus,
                                    ends.theta_minus, v)

    def u_from_right(p):
        v = _volume_at_pressure(thermo, ends.v_plus, ends.theta_plus, p)
        return velocity_along_curve(thermo, +1, ends.v_plus, ends.u_plus,
                                    ends.theta_plus, v)

    def mismatch(p):
        return float(u_from_left(p) - u_from_right(p))

    p_hi = min(p_minus, p_plus)
    f_hi = mismatch(p_hi)
    scale = max(1.0, abs(ends.u_minus), abs(ends.u_plus),
                float(np.sqrt(thermo.gamma * p_hi * max(ends.v_minus, ends.v_plus))))
    if abs(f_hi) <= 1e-13 * scale:
        p_mid = p_hi
    elif f_hi > 0.0:
        # matching the velocities would need a compression (shock),
        # outside the rarefaction-contact-rarefaction pattern
        raise BracketError(
            "end states need a compressive wave; no rarefaction-contact solution")
    else:
        # the mismatch increases as p drops; walk down until it changes sign
        p_lo = p_hi
        for _ in range(200):
            p_lo *= 0.5
            if mismatch(p_lo) >= 0.0:
                break
        else:
            raise BracketError(
                "velocity mismatch has no sign change down to vacuum pressure; "
                "end states are outside the admissible region")
        p_mid = brentq(mismatch, p_lo, p_hi, xtol=tol, rtol=8.9e-16)

    v_m_minus = float(_volume_at_pressure(thermo, ends.v_minus, ends.theta_minus, p_mid))
    v_m_plus = float(_volume_at_pressure(thermo, ends.v_plus, ends.theta_plus, p_mid))
    theta_m_minus = p_mid * v_m_minus / thermo.R
    theta_m_plus = p_mid * v_m_plus / thermo.R
    u_left = float(u_from_left(p_mid))
    u_right = float(u_from_right(p_mid))
    return MiddleStates(
        v_m_minus=v_m_minus,
        theta_m_minus=theta_m_minus,
        v_m_plus=v_m_plus,
        theta_m_plus=theta_m_plus,
        u_mid=0.5 * (u_left + u_right),
        p_mid=p_mid,
        s_minus=s_minus,
        s_plus=s_plus,
    )


@dataclass(frozen=True)
class RarefactionFields:
    """Pointwise rarefaction values with spatial and temporal derivatives."""

    V: np.ndarray
    U: np.ndarray
    Theta: np.ndarray
    V_x: np.ndarray
    U_x: np.ndarray
    Theta_x: np.ndarray
    V_xx: np.ndarray
    U_xx: np.ndarray
    Theta_xx: np.ndarray
    V_t: np.ndarray
    U_t: np.ndarray
    Theta_t: np.ndarray


class RarefactionWave:
    """Smooth approximate rarefaction of one acoustic family.

    The profile inverts lambda_sign(V, s_anchor) = w(t, x) in closed form,
    with w the tanh-smoothed Burgers wave between the family's end speeds.
    Time derivatives come from the exact Euler identities the profile
    satisfies, so no time differencing is involved.
    """

    def __init__(self, thermo: ThermoParams, sign: int, v_anchor: float,
                 u_anchor: float, theta_anchor: float,
                 w_minus: float, w_plus: float):
        if sign not in (-1, 1):
            raise DomainError(f"family sign must be -1 or +1, got {sign}")
        if sign < 0 and w_plus > 0.0:
            raise DomainError("1-family speeds must be negative")
        if sign > 0 and w_minus < 0.0:
            raise DomainError("3-family speeds must be positive")
        self.thermo = thermo
        self.sign = sign
        self.v_anchor = float(v_anchor)
        self.u_anchor = float(u_anchor)
        self.theta_anchor = float(theta_anchor)
        self.burgers = BurgersWave(w_minus, w_plus)
        # B = A*gamma*exp(delta*s_anchor/R) collapses to anchor quantities
        self.B = thermo.gamma * thermo.R * theta_anchor * self.v_anchor**thermo.delta

    @property
    def strength(self) -> float:
        return self.burgers.strength

    def volume_from_speed(self, w):
        return (self.B / np.asarray(w) ** 2) ** (1.0 / (self.thermo.gamma + 1.0))

    def eval(self, x, t) -> RarefactionFields:
        thermo = self.thermo
        gamma, delta = thermo.gamma, thermo.delta
        x = np.asarray(x, dtype=float)
        if self.strength == 0.0:
            z = np.zeros(x.shape)
            const = lambda c: np.full(x.shape, c)
            return RarefactionFields(
                V=const(self.v_anchor), U=const(self.u_anchor),
                Theta=const(self.theta_anchor),
                V_x=z, U_x=z.copy(), Theta_x=z.copy(),
                V_xx=z.copy(), U_xx=z.copy(), Theta_xx=z.copy(),
                V_t=z.copy(), U_t=z.copy(), Theta_t=z.copy())

        w, w_x, w_xx, _ = self.burgers.derivatives(x, t)
        V = self.volume_from_speed(w)
        U = velocity_along_curve(thermo, self.sign, self.v_anchor,
                                 self.u_anchor, self.theta_anchor, V)
        Theta = self.theta_anchor * (self.v_anchor / V) ** delta

        dV_dw = -2.0 * V / ((gamma + 1.0) * w)
        d2V_dw2 = 2.0 * (gamma + 3.0) * V / ((gamma + 1.0) ** 2 * w**2)
        V_x = dV_dw * w_x
        V_xx = d2V_dw2 * w_x**2 + dV_dw * w_xx
        # dU/dV = -lambda(V) = -w on the curve
        U_x = -w * V_x
        U_xx = -(w_x * V_x + w * V_xx)
        Theta_x = -delta * Theta * V_x / V
        Theta_xx = -delta * (Theta_x * V_x * V + Theta * V_xx * V
                             - Theta * V_x**2) / V**2
        # exact Euler identities: V_t = U_x, U_t = -p_x, (R/delta)Theta_t = -p*U_x
        p = thermo.R * Theta / V
        V_t = U_x.copy()
        U_t = w**2 * V_x
        Theta_t = -(delta / thermo.R) * p * U_x
        return RarefactionFields(V=V, U=U, Theta=Theta,
                                 V_x=V_x, U_x=U_x, Theta_x=Theta_x,
                                 V_xx=V_xx, U_xx=U_xx, Theta_xx=Theta_xx,
                                 V_t=V_t, U_t=U_t, Theta_t=Theta_t)


def ends_from_middle(thermo: ThermoParams, p_mid: float, u_mid: float,
                     theta_m_minus: float, contact_jump: float,
                     rarefaction_jump_minus: float,
                     rarefaction_jump_plus: float) -> EndStates:
    """Walk outward along both rarefaction curves from prescribed middle states.

    The inverse of solve_middle_states: contact_jump sets theta_m_plus -
    theta_m_minus, and each rarefaction_jump sets how much hotter the far
    field is than its middle state.  Useful for building admissible composite
    end states with prescribed wave strengths.
    """
    if min(rarefaction_jump_minus, rarefaction_jump_plus) < 0.0:
        raise DomainError("rarefaction jumps must be nonnegative (end states are hotter)")
    delta = thermo.delta
    theta_m_plus = theta_m_minus + contact_jump
    if theta_m_plus <= 0.0:
        raise DomainError("contact jump makes theta_m_plus nonpositive")
    v_m_minus = thermo.R * theta_m_minus / p_mid
    v_m_plus = thermo.R * theta_m_plus / p_mid

    theta_minus = theta_m_minus + rarefaction_jump_minus
    v_minus = v_m_minus * (theta_m_minus / theta_minus) ** (1.0 / delta)
    u_minus = float(velocity_along_curve(thermo, -1, v_m_minus, u_mid,
                                         theta_m_minus, v_minus))

    theta_plus = theta_m_plus + rarefaction_jump_plus
    v_plus = v_m_plus * (theta_m_plus / theta_plus) ** (1.0 / delta)
    u_plus = float(velocity_along_curve(thermo, +1, v_m_plus, u_mid,
                                        theta_m_plus, v_plus))
    return EndStates(v_minus=v_minus, u_minus=u_minus, theta_minus=theta_minus,
                     v_plus=v_plus, u_plus=u_plus, theta_plus=theta_plus)
