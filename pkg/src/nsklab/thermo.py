"""Ideal-gas thermodynamic closure: pressure, entropy, characteristic speeds.

The gas law is p = R*theta/v, equivalently p = A*v**(-gamma)*exp((gamma-1)*s/R)
along isentropes.  Specific volume v and temperature theta must stay positive;
every routine raises DomainError otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "ThermoParams",
    "pressure",
    "entropy",
    "temp_from_entropy",
    "pressure_from_entropy",
    "lambda_pm",
    "phi_entropy",
    "effective_heat_capacity",
]


@dataclass(frozen=True)
class ThermoParams:
    """Gas constants R, gamma, A with derived Cv = R/(gamma-1), delta = gamma-1."""

    R: float = 1.0
    gamma: float = 1.4
    A: float = 1.0
    Cv: float = field(init=False)
    delta: float = field(init=False)

    def __post_init__(self) -> None:
        if not (self.R > 0.0):
            raise DomainError(f"gas constant R must be positive, got {self.R}")
        if not (self.gamma > 1.0):
            raise DomainError(f"adiabatic exponent gamma must exceed 1, got {self.gamma}")
        if not (self.A > 0.0):
            raise DomainError(f"pressure-law constant A must be positive, got {self.A}")
        object.__setattr__(self, "delta", self.gamma - 1.0)
        object.__setattr__(self, "Cv", self.R / self.delta)


def _require_positive(name, value):
    arr = np.asarray(value)
    if not np.all(arr > 0.0):
        raise DomainError(f"{name} must be positive")


def pressure(params: ThermoParams, v, theta):
    """Ideal-gas pressure R*theta/v."""
    _require_positive("specific volume v", v)
    _require_positive("temperature theta", theta)
    return params.R * theta / v


def entropy(params: ThermoParams, v, theta):
    """Specific entropy s = (R/(gamma-1))*ln(R*theta/A) + R*ln(v)."""
    _require_positive("specific volume v", v)
    _require_positive("temperature theta", theta)
    return params.Cv * np.log(params.R * theta / params.A) + params.R * np.log(v)


def temp_from_entropy(params: ThermoParams, v, s):
    """Invert entropy(v, theta) = s for theta at fixed v."""
    _require_positive("specific volume v", v)
    return (params.A / params.R) * np.exp(params.delta * np.asarray(s) / params.R) * v ** (-params.delta)


def pressure_from_entropy(params: ThermoParams, v, s):
    """Isentropic form of the gas law, p = A*v**(-gamma)*exp((gamma-1)*s/R)."""
    _require_positive("specific volume v", v)
    return params.A * v ** (-params.gamma) * np.exp(params.delta * np.asarray(s) / params.R)


def lambda_pm(params: ThermoParams, v, s, sign: int):
    """Acoustic characteristic speed +-sqrt(A*gamma*v**(-gamma-1)*exp((gamma-1)*s/R)).

    ``sign`` selects the family: -1 for the 1-family, +1 for the 3-family.
    """
    if sign not in (-1, 1):
        raise ValueError(f"sign must be -1 or +1, got {sign}")
    _require_positive("specific volume v", v)
    speed = np.sqrt(params.A * params.gamma * v ** (-params.gamma - 1.0)
                    * np.exp(params.delta * np.asarray(s) / params.R))
    return sign * speed


def phi_entropy(s):
    """Convex entropy weight s - 1 - ln(s), nonnegative with minimum 0 at s = 1."""
    _require_positive("argument of the entropy weight", s)
    s = np.asarray(s, dtype=float)
    out = s - 1.0 - np.log(s)
    # rounding can produce -1e-17 near s = 1; the weight is provably >= 0
    return np.maximum(out, 0.0) if out.ndim else max(float(out), 0.0)


def effective_heat_capacity(params: ThermoParams, coeff, v, theta, v_x):
    """Heat capacity of the temperature equation, Cv - (theta/2)*kappa_thetatheta*v_x**2/v**5.

    Raises ModelViolationError if the result is not strictly positive, which
    signals an inadmissible capillarity model rather than a state error.
    """
    from .errors import ModelViolationError

    _require_positive("specific volume v", v)
    _require_positive("temperature theta", theta)
    v = np.asarray(v, dtype=float)
    theta = np.asarray(theta, dtype=float)
    v_x = np.asarray(v_x, dtype=float)
    c_eff = params.Cv - 0.5 * theta * coeff.kappa_thetatheta(v, theta) * v_x**2 / v**5
    if not np.all(np.asarray(c_eff) > 0.0):
        raise ModelViolationError("effective heat capacity is nonpositive")
    return c_eff
