import math

import numpy as np
import pytest

from wenodec.errors import ConfigurationError
from wenodec.grid import (
    BoundaryCondition,
    CellField,
    apply_boundary,
    cell_average_init,
    gauss_legendre_points,
    ghost_width_for_order,
    make_grid,
)


def test_make_grid_four_cells():
    g = make_grid(-1.0, 1.0, 4)
    assert g.dx == 0.5
    np.testing.assert_allclose(g.centers, [-0.75, -0.25, 0.25, 0.75], atol=0)


def test_make_grid_single_cell():
    g = make_grid(0.0, 1.0, 1)
    assert g.dx == 1.0
    assert g.cell_face(0) == 0.0 and g.cell_face(1) == 1.0


def test_faces_close_the_domain():
    g = make_grid(0.0, 1.0, 100)
    assert abs(g.cell_face(100) - 1.0) <= 4 * np.spacing(1.0)
    np.testing.assert_allclose(np.diff(g.faces), g.dx, rtol=1e-12)


@pytest.mark.parametrize("args", [(0.0, 1.0, 0), (1.0, 0.0, 10), (0.0, 0.0, 5), (0.0, 1.0, -3)])
def test_make_grid_rejects_bad_input(args):
    with pytest.raises(ConfigurationError):
        make_grid(*args)


def _field(vals, g):
    return CellField.from_interior(np.array(vals, dtype=float), g)


def test_periodic_fill():
    f = apply_boundary(_field([1, 2, 3, 4], 2), BoundaryCondition.periodic())
    np.testing.assert_array_equal(f.values[:2, 0], [3, 4])
    np.testing.assert_array_equal(f.values[-2:, 0], [1, 2])


def test_transmissive_fill():
    f = apply_boundary(_field([1, 2, 3, 4], 2), BoundaryCondition.transmissive())
    np.testing.assert_array_equal(f.values[:2, 0], [1, 1])
    np.testing.assert_array_equal(f.values[-2:, 0], [4, 4])


def test_inflow_fill():
    w = np.array([1.5, 0.8, 4.0])
    f = CellField.from_interior(np.ones((5, 3)), 3)
    apply_boundary(f, (BoundaryCondition.inflow(w), BoundaryCondition.transmissive()))
    np.testing.assert_array_equal(f.values[:3], np.tile(w, (3, 1)))


def test_boundary_leaves_interior_alone_and_fills_finite():
    rng = np.random.default_rng(3)
    inner = rng.normal(size=(9, 3))
    for bc in (BoundaryCondition.periodic(), BoundaryCondition.transmissive()):
        f = CellField.from_interior(inner, 4)
        f.values[:4] = np.nan
        f.values[-4:] = np.nan
        apply_boundary(f, bc)
        np.testing.assert_array_equal(f.interior, inner)
        assert np.all(np.isfinite(f.values))


def test_boundary_errors():
    with pytest.raises(ConfigurationError):
        BoundaryCondition("reflective")
    with pytest.raises(ConfigurationError):
        BoundaryCondition.inflow([-1.0, 0.0, 1.0])
    with pytest.raises(ConfigurationError):
        BoundaryCondition.inflow([1.0, 2.0, 1.0])  # negative internal energy
    with pytest.raises(ConfigurationError):
        apply_boundary(_field([1, 2, 3], 1), (BoundaryCondition.periodic(), BoundaryCondition.transmissive()))
    with pytest.raises(ConfigurationError):
        apply_boundary(np.zeros((6, 1)), BoundaryCondition.periodic())


def test_ghost_width_is_stencil_radius():
    assert [ghost_width_for_order(p) for p in (3, 5, 7, 9, 11, 13)] == [2, 3, 4, 5, 6, 7]


@pytest.mark.parametrize("order", [3, 5, 7, 9, 11, 13])
def test_gauss_legendre_is_minimal(order):
    x, w = gauss_legendre_points(order)
    assert x.size == math.ceil(order / 2)
    assert abs(w.sum() - 1.0) < 1e-15
    assert np.all(np.abs(x) < 0.5)


def test_init_constant_and_linear():
    g = make_grid(0.0, 1.0, 1)
    f = cell_average_init(g, lambda x: np.full_like(x, 2.5), 5)
    assert f.interior[0, 0] == 2.5
    for order in (1, 3, 5):
        f = cell_average_init(g, lambda x: x, order)
        assert abs(f.interior[0, 0] - 0.5) < 1e-15


def test_init_sin4_mean():
    g = make_grid(-1.0, 1.0, 40)
    f = cell_average_init(g, lambda x: np.sin(np.pi * x) ** 4, 5)
    assert abs(f.interior.mean() - 3.0 / 8.0) < 1e-12


@pytest.mark.parametrize("order", [3, 5, 7, 9, 11, 13])
def test_init_polynomial_exactness(order):
    rng = np.random.default_rng(order)
    coeffs = rng.normal(size=order)  # degree order - 1
    poly = np.polynomial.Polynomial(coeffs)
    g = make_grid(-0.7, 0.9, 13)
    f = cell_average_init(g, poly, order)
    prim = poly.integ()
    exact = (prim(g.faces[1:]) - prim(g.faces[:-1])) / g.dx
    np.testing.assert_allclose(f.interior[:, 0], exact, atol=1e-12, rtol=0)


def test_init_vector_valued_and_ghosts():
    g = make_grid(0.0, 1.0, 8)
    f = cell_average_init(g, lambda x: np.stack([x, 2 * x, 3 * x], axis=-1), 3)
    assert f.values.shape == (8 + 2 * 2, 3)
    np.testing.assert_allclose(f.interior[:, 2], 3 * g.centers, rtol=1e-14)
