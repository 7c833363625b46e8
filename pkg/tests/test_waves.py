from fractions import Fraction

import numpy as np
import pytest

from helicity_algebra.errors import PlaneWaveError
from helicity_algebra.fields import Lattice, dh_field, dh_residual, em_from_potential, max_norm, maxwell_residuals
from helicity_algebra.matrices import dh_matrix_array, dirac_operator_symbol, gamma_basis, null_momentum_spinors
from helicity_algebra.waves import (
    PIPELINES,
    PlaneWaveSpec,
    composite_photon,
    convergence_table,
    dh_amplitude,
    dh_float_nullspace,
    dh_float_plane_wave,
    dh_plane_wave,
    exact_frequency,
    helicity_amplitude,
    periodic_lattice,
    plane_wave_em,
    plane_wave_potential,
    polarization,
    weyl_amplitude,
)

SIGMA = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]])


@pytest.fixture
def fine_lattice():
    return Lattice.cube(7, 0.01, origin=(0.1, 0.2, 0.3, 0.4))


def test_polarization_along_z():
    assert np.allclose(polarization((0, 0, 1), 1), np.array([1, 1j, 0]) / np.sqrt(2))
    assert np.allclose(polarization((0, 0, 2), -1), np.array([1, -1j, 0]) / np.sqrt(2))


@pytest.mark.parametrize("k", [(0.3, -1.1, 0.7), (0, 1, 0), (3, 4, 0)])
def test_polarization_is_transverse_unit(k):
    eps = polarization(k, 1)
    assert abs(np.dot(eps, k)) < 1e-12
    assert np.isclose(np.vdot(eps, eps).real, 1.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"k": (0, 0, 0)},
        {"k": (0, 0, 1), "helicity": 2},
        {"k": (0, 0, 1), "omega": 2.0},
        {"k": (0, 0, 1), "polarization": (0, 0, 1)},
        {"k": (0, 1)},
    ],
)
def test_invalid_plane_waves(kwargs):
    with pytest.raises(PlaneWaveError):
        PlaneWaveSpec(**kwargs)


def test_zero_amplitude_gives_zero_fields(fine_lattice):
    grid = plane_wave_em(PlaneWaveSpec((0, 0, 1), amplitude=0), fine_lattice)
    assert all(max_norm(grid[name]) == 0.0 for name in ("E1", "E2", "E3", "H1", "H2", "H3"))


def test_plane_wave_geometry(fine_lattice):
    spec = PlaneWaveSpec((1.0, 2.0, 2.0), helicity=-1)
    assert spec.omega == pytest.approx(3.0)
    grid = plane_wave_em(spec, fine_lattice)
    e = np.stack([grid["E1"], grid["E2"], grid["E3"]], axis=-1)
    h = np.stack([grid["H1"], grid["H2"], grid["H3"]], axis=-1)
    assert max_norm(e @ np.array(spec.k)) < 1e-12
    assert np.allclose(h, np.cross(spec.khat, e))


def test_plane_wave_solves_maxwell(fine_lattice):
    grid = plane_wave_em(PlaneWaveSpec((0.3, -1.1, 0.7)), fine_lattice)
    assert max(maxwell_residuals(grid).norms().values()) < 1e-3


def test_potential_reproduces_fields(fine_lattice):
    spec = PlaneWaveSpec((0.0, 0.0, 1.0), helicity=1)
    derived = em_from_potential(plane_wave_potential(spec, fine_lattice), physical=True)
    sampled = plane_wave_em(spec, fine_lattice)
    for name in ("E1", "E2", "E3", "H1", "H2", "H3"):
        assert max_norm(derived[name] - sampled[name]) < 1e-3
    assert max_norm(derived["L"]) < 1e-12


@pytest.mark.parametrize("helicity", [1, -1])
def test_helicity_amplitude(helicity):
    k = np.array([1.0, 2.0, 2.0])
    u = helicity_amplitude(k, helicity)
    assert np.allclose(np.einsum("i,ijk->jk", k / 3, SIGMA) @ u, helicity * u)


def test_exact_frequency():
    assert exact_frequency((3, 4, 0)) == 5
    assert exact_frequency((0, 0, 3), mass=4) == 5
    assert exact_frequency((Fraction(3, 5), Fraction(4, 5), 0)) == 1
    with pytest.raises(PlaneWaveError):
        exact_frequency((1, 1, 0))


def test_dh_amplitude_is_annihilated():
    amp = dh_amplitude((1, 2, 2))
    symbol = dirac_operator_symbol((1, 2, 2), 3).to_numpy()
    assert np.abs(amp).max() > 0
    assert np.allclose(symbol @ amp, 0.0)


@pytest.mark.parametrize("chirality", [1, -1])
def test_weyl_amplitude_solves_momentum_equation(chirality):
    k = np.array([1.0, 2.0, 2.0])
    u = weyl_amplitude(k, chirality)
    # omega u = -chirality (sigma . k) u
    assert np.allclose(3.0 * u + chirality * np.einsum("i,ijk->jk", k, SIGMA) @ u, 0.0)


def _float_symbol(k, omega):
    basis = gamma_basis()
    return omega * basis.gamma0.to_numpy() - sum(ki * basis.gamma(i + 1).to_numpy() for i, ki in enumerate(k))


@pytest.mark.parametrize("k, omega", [((0.0, 0.0, 1.0), 1.0), ((1.0, 1.0, 0.0), np.sqrt(2.0)), ((0.3, -1.1, 0.7), np.sqrt(1.79))])
def test_float_nullspace_annihilated(k, omega):
    basis = dh_float_nullspace(k, omega)
    assert basis.shape[0] == 4 and basis.shape[1] >= 1
    mats = dh_matrix_array(basis.T)
    assert np.allclose(_float_symbol(k, omega) @ mats, 0.0, atol=1e-10)


def test_float_nullspace_matches_exact_dimension():
    assert dh_float_nullspace((3.0, 4.0, 0.0), 5.0).shape[1] == len(null_momentum_spinors((3, 4, 0), 5))


def test_float_nullspace_off_shell():
    with pytest.raises(PlaneWaveError):
        dh_float_nullspace((0.0, 0.0, 1.0), 2.0)


def test_float_dh_plane_wave_residual(fine_lattice):
    grid = dh_float_plane_wave((1.0, 1.0, 0.0), fine_lattice)
    phi = dh_field(grid)
    assert np.abs(phi).max() > 0
    assert max_norm(dh_residual(grid, phi)) < 3e-3 * np.abs(phi).max()


def test_dh_plane_wave_residual(fine_lattice):
    grid = dh_plane_wave((0, 0, 1), fine_lattice)
    assert max_norm(dh_residual(grid, dh_field(grid))) < 1e-3


@pytest.mark.parametrize("k", [(0, 0, 1), (3, 4, 0), (0.3, -1.1, 0.7)])
@pytest.mark.parametrize("helicity", [1, -1])
def test_composite_photon(k, helicity):
    check = composite_photon(k, helicity)
    assert check.deviation < 1e-10
    assert abs(check.constant) > 0


def test_periodic_lattice_geometry():
    lattice = periodic_lattice((1, 2, 2), 32)
    assert lattice.extent == (8, 32, 32, 32)
    assert all(lattice.periodic)
    assert lattice.spacing[0] == pytest.approx(2 * np.pi / 24)
    assert lattice.spacing[1] == pytest.approx(2 * np.pi / 32)
    assert lattice.spacing[3] == pytest.approx(np.pi / 32)
    assert periodic_lattice((0, 0, 1), 16).extent == (4, 1, 1, 16)


@pytest.mark.parametrize("samples", [4, 10])
def test_periodic_lattice_rejects_sample_counts(samples):
    with pytest.raises(PlaneWaveError):
        periodic_lattice((0, 0, 1), samples)


def test_periodic_table_defaults():
    table = convergence_table((0, 0, 1), helicity=1)
    assert table.periodic
    assert set(table.errors) == set(PIPELINES)
    assert table.spacings == pytest.approx([1 / 16, 1 / 24, 1 / 32])
    assert table.extents == [(4, 1, 1, 16), (6, 1, 1, 24), (8, 1, 1, 32)]
    lines = table.render().split("\n")
    assert len(lines) == 5
    assert lines[-1].split()[0] == "order"


def test_periodic_box_at_full_scale(settings):
    table = convergence_table((1, 2, 2), helicity=1, settings=settings)
    assert table.extents[-1] == (8, 32, 32, 32)
    assert all(table.within(settings.order_window).values())
    for name in ("curlH", "curlE", "potential", "weyl", "dh", "split"):
        order = table.orders[name]
        assert order is not None
        assert settings.order_window[0] <= order <= settings.order_window[1]
        assert all(settings.order_window[0] <= o <= settings.order_window[1] for o in table.local_orders(name))


def test_periodic_divergences_vanish():
    table = convergence_table((3, 4, 0), helicity=-1, refine=2)
    assert max(table.errors["divE"] + table.errors["divH"]) < 1e-9
    assert table.orders["divE"] is None


def test_periodic_spacing_must_fit_wavelength():
    with pytest.raises(PlaneWaveError):
        convergence_table((0, 0, 1), h=0.05)


def test_patch_table_orders():
    table = convergence_table((0, 0, 1), helicity=1, periodic=False)
    assert not table.periodic
    assert set(table.errors) == set(PIPELINES)
    assert table.spacings == [0.05, 0.025, 0.0125]
    assert table.extents == [(7, 7, 7, 7)] * 3
    assert all(table.within((1.6, 2.4)).values())


def test_helicities_converge_alike():
    for helicity in (1, -1):
        table = convergence_table((3, 4, 0), helicity=helicity)
        assert all(table.within((1.6, 2.4)).values())
        assert table.orders["weyl"] is not None


def test_single_level_has_no_order():
    table = convergence_table((0, 0, 1), refine=1)
    assert table.orders == {}
    assert "order" not in table.to_json()
    assert len(table.render().split("\n")) == 2


def test_irrational_frequency_uses_float_modes():
    table = convergence_table((1, 1, 0), refine=2)
    assert "dh" in table.errors and "split" in table.errors
    assert all(table.within((1.6, 2.4)).values())


def test_table_json():
    data = convergence_table((0, 0, 1), helicity=-1, refine=2).to_json()
    assert data["helicity"] == "-"
    assert data["k"] == [0.0, 0.0, 1.0]
    assert data["boundary"] == "periodic"
    assert [row["h"] for row in data["rows"]] == pytest.approx([1 / 16, 1 / 24])
    assert data["rows"][0]["extent"] == [4, 1, 1, 16]
    assert set(data["order"]) == set(PIPELINES)


def test_patch_table_json():
    data = convergence_table((0, 0, 1), refine=2, periodic=False).to_json()
    assert data["boundary"] == "patch"
    assert [row["h"] for row in data["rows"]] == [0.05, 0.025]


def test_refine_must_be_positive():
    with pytest.raises(PlaneWaveError):
        convergence_table((0, 0, 1), refine=0)
