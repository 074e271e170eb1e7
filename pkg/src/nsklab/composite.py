"""Composite ansatz: 1-rarefaction + viscous contact + 3-rarefaction.

The three profiles are superposed and the shared middle states subtracted, so
the far fields match the end states while the contact layer sits between the
two expansion fans.  Degenerate strengths reduce the composite to any of its
parts, which the evaluation mode makes explicit for testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .coefficients import CoefficientModel
from .contact import ContactFields, ContactWave, solve_selfsimilar
from .errors import DomainError
from .riemann import EndStates, MiddleStates, RarefactionWave, solve_middle_states
from .thermo import ThermoParams, lambda_pm, pressure

__all__ = ["WaveFields", "CompositeWave", "build_composite_wave", "build_contact_wave"]

Mode = Literal["full-composite", "contact-only", "rarefaction-only-minus",
               "rarefaction-only-plus"]


def _family_speeds(w_lo: float, w_hi: float):
    """Collapse rounding-level inversions of a degenerate speed pair."""
    if w_hi < w_lo:
        if w_lo - w_hi > 1e-12 * max(abs(w_lo), abs(w_hi)):
            raise DomainError("rarefaction end speeds are ordered the wrong way")
        w_hi = w_lo
    return w_lo, w_hi


@dataclass(frozen=True)
class WaveFields:
    """Ansatz values and the derivatives the solver and diagnostics consume."""

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


class CompositeWave:
    """Evaluator for the combined wave (or one of its parts, per ``mode``)."""

    def __init__(self, thermo: ThermoParams, coeff: CoefficientModel,
                 ends: EndStates, middle: MiddleStates,
                 mode: Mode = "full-composite",
                 contact_anchor: Literal["middle", "left"] = "middle",
                 profile_n: int = 2001, profile_half_width=None):
        self.thermo = thermo
        self.coeff = coeff
        self.ends = ends
        self.middle = middle
        self.mode: Mode = mode

        wm_lo, wm_hi = _family_speeds(
            float(lambda_pm(thermo, ends.v_minus, middle.s_minus, -1)),
            float(lambda_pm(thermo, middle.v_m_minus, middle.s_minus, -1)))
        self.rarefaction_minus = RarefactionWave(
            thermo, -1, ends.v_minus, ends.u_minus, ends.theta_minus,
            w_minus=wm_lo, w_plus=wm_hi)
        wp_lo, wp_hi = _family_speeds(
            float(lambda_pm(thermo, middle.v_m_plus, middle.s_plus, +1)),
            float(lambda_pm(thermo, ends.v_plus, middle.s_plus, +1)))
        self.rarefaction_plus = RarefactionWave(
            thermo, +1, ends.v_plus, ends.u_plus, ends.theta_plus,
            w_minus=wp_lo, w_plus=wp_hi)

        u_anchor = middle.u_mid if contact_anchor == "middle" else ends.u_minus
        profile = solve_selfsimilar(middle.theta_m_minus, middle.theta_m_plus,
                                    middle.p_mid, thermo, coeff,
                                    Xi=profile_half_width, N=profile_n)
        self.contact = ContactWave(profile, u_anchor, thermo)

    @property
    def contact_strength(self) -> float:
        return abs(self.middle.theta_m_plus - self.middle.theta_m_minus)

    @property
    def rarefaction_strengths(self):
        return (self.rarefaction_minus.strength, self.rarefaction_plus.strength)

    def eval(self, x, t) -> WaveFields:
        x = np.asarray(x, dtype=float)
        if self.mode == "contact-only":
            c = self.contact.eval(x, t)
            return _from_contact(c)
        if self.mode == "rarefaction-only-minus":
            return _from_rarefaction(self.rarefaction_minus.eval(x, t))
        if self.mode == "rarefaction-only-plus":
            return _from_rarefaction(self.rarefaction_plus.eval(x, t))

        rm = self.rarefaction_minus.eval(x, t)
        rp = self.rarefaction_plus.eval(x, t)
        c = self.contact.eval(x, t)
        mid = self.middle
        v_shift = mid.v_m_minus + mid.v_m_plus
        u_shift = 2.0 * mid.u_mid
        th_shift = mid.theta_m_minus + mid.theta_m_plus
        return WaveFields(
            V=rm.V + rp.V + c.V - v_shift,
            U=rm.U + rp.U + c.U - u_shift,
            Theta=rm.Theta + rp.Theta + c.Theta - th_shift,
            V_x=rm.V_x + rp.V_x + c.V_x,
            U_x=rm.U_x + rp.U_x + c.U_x,
            Theta_x=rm.Theta_x + rp.Theta_x + c.Theta_x,
            V_xx=rm.V_xx + rp.V_xx + c.V_xx,
            U_xx=rm.U_xx + rp.U_xx + c.U_xx,
            Theta_xx=rm.Theta_xx + rp.Theta_xx + c.Theta_xx,
            V_t=rm.V_t + rp.V_t + c.V_t,
            U_t=rm.U_t + rp.U_t + c.U_t,
            Theta_t=rm.Theta_t + rp.Theta_t + c.Theta_t)

    def eval_contact_part(self, x, t) -> ContactFields:
        """Contact component alone, with third-order derivatives."""
        return self.contact.eval(x, t)

    def boundary_states(self, x_left: float, x_right: float, t):
        """(v, u, theta) of the ansatz at the two domain ends (for clamping)."""
        f = self.eval(np.array([x_left, x_right]), t)
        return ((f.V[0], f.U[0], f.Theta[0]), (f.V[1], f.U[1], f.Theta[1]))


def _from_contact(c: ContactFields) -> WaveFields:
    return WaveFields(V=c.V, U=c.U, Theta=c.Theta,
                      V_x=c.V_x, U_x=c.U_x, Theta_x=c.Theta_x,
                      V_xx=c.V_xx, U_xx=c.U_xx, Theta_xx=c.Theta_xx,
                      V_t=c.V_t, U_t=c.U_t, Theta_t=c.Theta_t)


def _from_rarefaction(r) -> WaveFields:
    return WaveFields(V=r.V, U=r.U, Theta=r.Theta,
                      V_x=r.V_x, U_x=r.U_x, Theta_x=r.Theta_x,
                      V_xx=r.V_xx, U_xx=r.U_xx, Theta_xx=r.Theta_xx,
                      V_t=r.V_t, U_t=r.U_t, Theta_t=r.Theta_t)


def build_composite_wave(thermo: ThermoParams, coeff: CoefficientModel,
                         ends: EndStates, mode: Mode = "full-composite",
                         contact_anchor: Literal["middle", "left"] = "middle",
                         profile_n: int = 2001,
                         profile_half_width=None) -> CompositeWave:
    """Solve the middle states and assemble the composite evaluator."""
    middle = solve_middle_states(ends, thermo)
    return CompositeWave(thermo, coeff, ends, middle, mode=mode,
                         contact_anchor=contact_anchor, profile_n=profile_n,
                         profile_half_width=profile_half_width)


def build_contact_wave(thermo: ThermoParams, coeff: CoefficientModel,
                       ends: EndStates, contact_anchor: Literal["middle", "left"] = "middle",
                       profile_n: int = 2001,
                       profile_half_width=None) -> CompositeWave:
    """Pure contact ansatz; requires matched velocities and pressures."""
    p_minus = pressure(thermo, ends.v_minus, ends.theta_minus)
    p_plus = pressure(thermo, ends.v_plus, ends.theta_plus)
    if abs(ends.u_minus - ends.u_plus) > 1e-12 * max(1.0, abs(ends.u_minus)):
        raise DomainError("contact data requires u_minus == u_plus")
    if abs(p_minus - p_plus) > 1e-12 * p_plus:
        raise DomainError("contact data requires matched end pressures")
    wave = build_composite_wave(thermo, coeff, ends, mode="contact-only",
                                contact_anchor=contact_anchor,
                                profile_n=profile_n,
                                profile_half_width=profile_half_width)
    return wave
