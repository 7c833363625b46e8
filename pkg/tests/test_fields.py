import numpy as np
import pytest

from helicity_algebra.errors import GridError, PlaneWaveError, RepresentationError
from helicity_algebra.fields import (
    FieldGrid,
    Lattice,
    dh_field,
    dh_residual,
    dirac_apply,
    em_from_potential,
    field_spinor,
    max_norm,
    maxwell_residuals,
    riemann_silberstein,
    rs_to_grid,
    weyl_residual,
)
from helicity_algebra.waves import weyl_plane_wave

SPACE = ("x", "y", "z")


def space_lattice(points=5, h=0.1):
    return Lattice.cube(points, h, axes=SPACE, origin=(0.1, -0.2, 0.3))


def test_lattice_validation():
    with pytest.raises(GridError):
        Lattice(("x", "t"), (3, 3), (0.1, 0.1))
    with pytest.raises(GridError):
        Lattice(("x",), (3,), (0.0,))
    with pytest.raises(GridError):
        Lattice(("x", "y"), (3,), (0.1, 0.1))
    with pytest.raises(GridError):
        Lattice(("w",), (3,), (0.1,))


def test_grid_validation():
    with pytest.raises(GridError, match="disagree"):
        FieldGrid(("x",), (0.1,), {"a": np.zeros(3), "b": np.zeros(4)})
    with pytest.raises(GridError, match="rank"):
        FieldGrid(("x", "y"), (0.1, 0.1), {"a": np.zeros(3)})
    with pytest.raises(GridError, match="missing component"):
        FieldGrid(("x",), (0.1,), {"a": np.zeros(3)})["b"]


def test_derivative_of_quadratic_is_exact():
    lattice = Lattice(("x",), (6,), (0.25,), origin=(-0.5,))
    x = lattice.coordinates()["x"]
    grid = lattice.grid({"f": x * x})
    assert np.allclose(grid.derivative("f", "x"), 2 * x)


def test_derivative_along_absent_axis_is_zero():
    lattice = space_lattice()
    grid = lattice.grid({"f": lattice.coordinates()["x"]})
    assert max_norm(grid.derivative("f", "t")) == 0.0
    with pytest.raises(GridError):
        grid.derivative("f", "w")


def test_periodic_derivative():
    n, h = 64, 2 * np.pi / 64
    grid = FieldGrid(("x",), (h,), {"f": np.sin(h * np.arange(n))}, periodic=(True,))
    expected = np.cos(h * np.arange(n))
    assert max_norm(grid.derivative("f", "x") - expected) < 5e-3


def test_too_few_samples():
    grid = FieldGrid(("x",), (0.1,), {"f": np.zeros(2)})
    with pytest.raises(GridError, match="at least 3 samples"):
        grid.derivative("f", "x")


def test_constant_potential_gives_zero_fields():
    lattice = space_lattice()
    grid = lattice.grid({f"A{mu}": np.full(lattice.extent, value) for mu, value in enumerate((1.0, -2.0, 0.5, 3.0))})
    em = em_from_potential(grid)
    for name in ("E1", "E2", "E3", "H1", "H2", "H3", "L"):
        assert max_norm(em[name]) == 0.0


def test_static_potential():
    lattice = space_lattice()
    c = lattice.coordinates()
    zeros = np.zeros(lattice.extent)
    grid = lattice.grid({"A0": c["x"] ** 2, "A1": zeros, "A2": zeros, "A3": c["x"]})
    em = em_from_potential(grid)
    assert np.allclose(em["E1"], 2 * c["x"])
    assert np.allclose(em["H2"], -1.0)
    assert np.allclose(em_from_potential(grid, physical=True)["E1"], -2 * c["x"])


def test_potential_components_required():
    lattice = space_lattice()
    zeros = np.zeros(lattice.extent)
    grid = lattice.grid({"A0": zeros, "A1": zeros, "A3": zeros})
    with pytest.raises(GridError, match="missing components: A2"):
        em_from_potential(grid)


def test_zero_fields_have_zero_residuals():
    lattice = space_lattice()
    grid = lattice.grid({name: np.zeros(lattice.extent) for name in ("E1", "E2", "E3", "H1", "H2", "H3")})
    assert set(maxwell_residuals(grid).norms().values()) == {0.0}


def test_sources_enter_residuals():
    lattice = space_lattice()
    c = lattice.coordinates()
    zeros = np.zeros(lattice.extent)
    fields = {"E1": c["x"] / 3, "E2": c["y"] / 3, "E3": c["z"] / 3, "H1": zeros, "H2": zeros, "H3": zeros}
    without = maxwell_residuals(lattice.grid(fields))
    assert np.allclose(without.div_e, 1.0)
    with_rho = maxwell_residuals(lattice.grid({**fields, "rho": np.ones(lattice.extent)}))
    assert max(with_rho.norms().values()) < 1e-12
    current = maxwell_residuals(lattice.grid({**fields, "j2": np.full(lattice.extent, 2.0)}))
    assert np.allclose(current.ampere[1], -2.0)


def test_riemann_silberstein_round_trip():
    lattice = space_lattice(points=3)
    ones, zeros = np.ones(lattice.extent), np.zeros(lattice.extent)
    grid = lattice.grid({"E1": ones, "E2": zeros, "E3": zeros, "H1": zeros, "H2": ones, "H3": zeros})
    rs = riemann_silberstein(grid)
    assert np.allclose(rs.F1, 1.0) and np.allclose(rs.F2, 1j) and np.allclose(rs.F3, 0.0)
    back = rs_to_grid(rs, grid)
    for name in ("E1", "E2", "H2"):
        assert np.allclose(back[name], grid[name])
    assert np.allclose(rs.conjugate().F2, -1j)


def test_field_spinor():
    assert np.allclose(field_spinor([1, 1j, 0]), [0, 1, 1j, 0])
    assert np.allclose(field_spinor([1, 1j, 0], conjugate=True), [0, 1, -1j, 0])
    with pytest.raises(GridError):
        field_spinor([1, 2])


def test_weyl_residual_of_constant_spinor():
    lattice = space_lattice()
    grid = lattice.grid({"u": np.ones(lattice.extent), "v": np.full(lattice.extent, 2j)})
    assert max_norm(weyl_residual(grid, ("u", "v"))) == 0.0
    with pytest.raises(GridError):
        weyl_residual(grid, ("u", "v", "u"))
    with pytest.raises(GridError):
        weyl_residual(grid, np.zeros(lattice.extent + (3,)))
    with pytest.raises(GridError):
        weyl_residual(grid, ("u", "v"), chirality="up")


def test_weyl_plane_wave_and_wrong_chirality():
    k = (0.0, 0.0, 1.0)
    lattice = Lattice.cube(9, 0.01, origin=(0.1, 0.2, 0.3, 0.4))
    grid = lattice.grid({"t": lattice.coordinates()["t"]})
    right = weyl_plane_wave(k, lattice, chirality=1)
    assert max_norm(weyl_residual(grid, right, "+")) < 1e-3
    wrong = weyl_plane_wave(k, lattice, chirality=-1)
    assert max_norm(weyl_residual(grid, wrong, "+")) == pytest.approx(2.0, rel=1e-3)


def test_dirac_operator_on_constant_field():
    lattice = Lattice.cube(3, 0.5)
    grid = lattice.grid({f"phi{i}": np.full(lattice.extent, 1 + 1j) for i in (1, 2, 3, 4)})
    phi = dh_field(grid)
    assert phi.shape == lattice.extent + (4, 4)
    assert max_norm(dirac_apply(grid, phi)) == 0.0
    assert max_norm(dh_residual(grid, phi)) == 0.0


def test_dh_residual_validation():
    lattice = Lattice.cube(3, 0.5)
    grid = lattice.grid({f"phi{i}": np.ones(lattice.extent) for i in (1, 2, 3, 4)})
    phi = dh_field(grid)
    with pytest.raises(PlaneWaveError):
        dh_residual(grid, phi, mass=-1.0)
    with pytest.raises(RepresentationError):
        dh_residual(grid, np.zeros(lattice.extent + (4, 4)) + np.diag([1, 2, 3, 4]))
    with pytest.raises(RepresentationError):
        dh_residual(grid, phi[..., :2, :2])
