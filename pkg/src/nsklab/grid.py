"""Uniform grid, second-order finite-difference stencils, and trapezoid norms."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["Grid", "d1", "d2", "d3", "integrate", "sup_norm", "l2_norm"]


@dataclass(frozen=True)
class Grid:
    """Uniform nodes on [-L, L] with spacing dx = 2L/(N-1)."""

    half_width: float
    n_points: int
    dx: float = field(init=False)
    x: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        if not (self.half_width > 0.0):
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if self.n_points < 8:
            raise ValueError(f"need at least 8 grid points, got {self.n_points}")
        dx = 2.0 * self.half_width / (self.n_points - 1)
        x = np.linspace(-self.half_width, self.half_width, self.n_points)
        object.__setattr__(self, "dx", dx)
        object.__setattr__(self, "x", x)


def _pad(field_vals: np.ndarray, width: int) -> np.ndarray:
    """Ghost extension by constant extrapolation of the edge values."""
    return np.pad(field_vals, width, mode="edge")


def _check(field_vals, n: int) -> np.ndarray:
    f = np.asarray(field_vals, dtype=float)
    if f.shape != (n,):
        raise ValueError(f"field length {f.shape} does not match grid size {n}")
    return f


def d1(field_vals, grid: Grid) -> np.ndarray:
    """Second-order central first derivative; constant-extrapolated ghosts at the edges."""
    f = _pad(_check(field_vals, grid.n_points), 1)
    return (f[2:] - f[:-2]) / (2.0 * grid.dx)


def d2(field_vals, grid: Grid) -> np.ndarray:
    """Second-order central second derivative with ghost extension."""
    f = _pad(_check(field_vals, grid.n_points), 1)
    return (f[2:] - 2.0 * f[1:-1] + f[:-2]) / grid.dx**2


def d3(field_vals, grid: Grid) -> np.ndarray:
    """Central third derivative (5-point), two ghost nodes each side."""
    f = _pad(_check(field_vals, grid.n_points), 2)
    return (f[4:] - 2.0 * f[3:-1] + 2.0 * f[1:-3] - f[:-4]) / (2.0 * grid.dx**3)


def integrate(field_vals, grid: Grid) -> float:
    """Trapezoid quadrature over [-L, L]."""
    f = _check(field_vals, grid.n_points)
    return float(np.trapezoid(f, dx=grid.dx))


def sup_norm(field_vals, grid: Grid) -> float:
    f = _check(field_vals, grid.n_points)
    return float(np.max(np.abs(f)))


def l2_norm(field_vals, grid: Grid) -> float:
    """Continuum L2 norm via trapezoid quadrature of the squared field."""
    f = _check(field_vals, grid.n_points)
    return float(np.sqrt(np.trapezoid(f * f, dx=grid.dx)))
