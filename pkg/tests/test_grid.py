import numpy as np
import pytest

from nsklab.grid import Grid, d1, d2, d3, integrate, l2_norm, sup_norm


def test_grid_nodes():
    g = Grid(2.0, 9)
    assert g.x[0] == -2.0 and g.x[-1] == 2.0
    assert np.all(np.diff(g.x) > 0)
    assert g.dx == pytest.approx(0.5)
    with pytest.raises(ValueError):
        Grid(-1.0, 9)
    with pytest.raises(ValueError):
        Grid(1.0, 4)


def test_d1_annihilates_constants_exactly():
    g = Grid(3.0, 64)
    assert np.all(d1(np.full(64, 3.7), g) == 0.0)
    assert np.all(d2(np.full(64, -1.2), g) == 0.0)
    assert np.all(d3(np.full(64, 0.4), g) == 0.0)


def test_d1_linear_exact_interior():
    g = Grid(3.0, 64)
    out = d1(g.x, g)
    assert np.max(np.abs(out[1:-1] - 1.0)) < 1e-13


def test_d2_quadratic_exact_interior():
    g = Grid(3.0, 64)
    out = d2(g.x**2, g)
    assert np.max(np.abs(out[2:-2] - 2.0)) < 1e-11


def test_d3_cubic_interior():
    g = Grid(3.0, 128)
    out = d3(g.x**3, g)
    assert np.max(np.abs(out[3:-3] - 6.0)) < 1e-9


def test_d2_convergence_order():
    errs = []
    for n in (101, 201):
        g = Grid(np.pi, n)
        err = np.max(np.abs(d2(np.sin(g.x), g) + np.sin(g.x))[2:-2])
        errs.append(err)
    order = np.log2(errs[0] / errs[1])
    assert 1.8 <= order <= 2.2


def test_quadrature_and_norms():
    g = Grid(5.0, 501)
    assert integrate(np.ones(g.n_points), g) == pytest.approx(10.0, rel=1e-14)
    assert l2_norm(np.zeros(g.n_points), g) == 0.0
    assert sup_norm(-2.5 * np.ones(g.n_points), g) == 2.5
    f = np.sin(g.x)
    assert l2_norm(f, g) ** 2 == pytest.approx(integrate(f * f, g), rel=1e-13)


def test_gaussian_integral():
    g = Grid(10.0, 2001)
    val = integrate(np.exp(-g.x**2), g)
    assert val == pytest.approx(np.sqrt(np.pi), abs=1e-10)


def test_summation_by_parts():
    # central differences + trapezoid telescope exactly for compactly
    # supported fields, so the discrepancy sits at rounding level
    for n in (201, 401):
        g = Grid(6.0, n)
        f = np.exp(-g.x**2)
        h = np.exp(-((g.x - 0.5) ** 2))
        lhs = integrate(f * d1(h, g), g) + integrate(d1(f, g) * h, g)
        boundary = f[-1] * h[-1] - f[0] * h[0]
        assert abs(lhs - boundary) < 1e-12


def test_length_mismatch():
    g = Grid(1.0, 16)
    for op in (d1, d2, d3, integrate, sup_norm, l2_norm):
        with pytest.raises(ValueError):
            op(np.zeros(15), g)
