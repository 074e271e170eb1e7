"""Smooth Burgers waves from tanh-regularized expansion data.

w(t, x) is the classical solution of w_t + w*w_x = 0 with initial data
w0(x) = (w_plus + w_minus)/2 + ((w_plus - w_minus)/2) * tanh(x), found as the
unique root of the implicit characteristic equation w = w0(x - w*t).  The root
is bracketed by (w_minus, w_plus) and unique because 1 + t*w0'(y) > 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["BurgersWave", "burgers_eval"]

_RESIDUAL_TOL = 1e-13
_BISECT_ITERS = 30
_NEWTON_ITERS = 12


@dataclass(frozen=True)
class BurgersWave:
    """Expansion wave between end speeds w_minus < w_plus (equal: constant wave)."""

    w_minus: float
    w_plus: float

    def __post_init__(self) -> None:
        if self.w_minus > self.w_plus:
            raise ValueError(f"need w_minus <= w_plus, got {self.w_minus} > {self.w_plus}")

    @property
    def strength(self) -> float:
        return self.w_plus - self.w_minus

    def initial_data(self, y):
        mid = 0.5 * (self.w_plus + self.w_minus)
        half = 0.5 * (self.w_plus - self.w_minus)
        return mid + half * np.tanh(y)

    def _d_initial(self, y):
        half = 0.5 * (self.w_plus - self.w_minus)
        sech2 = 1.0 / np.cosh(np.clip(y, -350.0, 350.0)) ** 2
        return half * sech2

    def value(self, x, t):
        """Root of w - w0(x - w*t) = 0, elementwise over x."""
        x = np.asarray(x, dtype=float)
        if self.strength == 0.0:
            return np.full(x.shape, self.w_minus)
        if np.any(np.asarray(t) < 0.0):
            raise ValueError("Burgers evaluation requires t >= 0")
        lo = np.full(x.shape, self.w_minus)
        hi = np.full(x.shape, self.w_plus)
        # bisection brings every component into the Newton basin
        for _ in range(_BISECT_ITERS):
            midp = 0.5 * (lo + hi)
            pos = midp - self.initial_data(x - midp * t) > 0.0
            hi = np.where(pos, midp, hi)
            lo = np.where(pos, lo, midp)
        w = 0.5 * (lo + hi)
        # Newton polish; F'(w) = 1 + t*w0' >= 1 so the iteration is safe
        for _ in range(_NEWTON_ITERS):
            y = x - w * t
            res = w - self.initial_data(y)
            if np.max(np.abs(res)) < _RESIDUAL_TOL:
                break
            w = w - res / (1.0 + t * self._d_initial(y))
        return np.clip(w, self.w_minus, self.w_plus)

    def derivatives(self, x, t):
        """(w, w_x, w_xx, w_t) with w_x = w0'/(1 + t*w0'), w_xx = w0''/(1 + t*w0')**3."""
        x = np.asarray(x, dtype=float)
        w = self.value(x, t)
        if self.strength == 0.0:
            z = np.zeros(x.shape)
            return w, z, z.copy(), z.copy()
        y = x - w * t
        d0 = self._d_initial(y)
        dd0 = -2.0 * np.tanh(y) * d0
        denom = 1.0 + t * d0
        w_x = d0 / denom
        w_xx = dd0 / denom**3
        w_t = -w * w_x
        return w, w_x, w_xx, w_t


def burgers_eval(w_minus: float, w_plus: float, x, t):
    """Convenience wrapper returning only w(t, x)."""
    return BurgersWave(w_minus, w_plus).value(x, t)
