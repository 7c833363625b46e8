"""
Numerical field engine
Finite-difference evaluation of the potential, Maxwell, Weyl and
Dirac-Hestenes expansions on sampled grids (units with c = hbar = 1).
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from .errors import GridError, PlaneWaveError, RepresentationError
from .matrices import SIGMAS, dh_matrix_array, gamma21, gamma_basis

log = logging.getLogger(__name__)

AXES = ("t", "x", "y", "z")
SPATIAL = ("x", "y", "z")

_SIGMA = np.stack([s.to_numpy() for s in SIGMAS])


@dataclass(frozen=True)
class Lattice:
    """Sampling geometry: ordered axes, sizes, spacing, origin and periodicity"""
    axes: Tuple[str, ...]
    extent: Tuple[int, ...]
    spacing: Tuple[float, ...]
    origin: Optional[Tuple[float, ...]] = None
    periodic: Optional[Tuple[bool, ...]] = None

    def __post_init__(self):
        _check_axes(self.axes)
        n = len(self.axes)
        if len(self.extent) != n or len(self.spacing) != n:
            raise GridError(f"extent {self.extent} and spacing {self.spacing} must match axes {self.axes}")
        if any(h <= 0 for h in self.spacing):
            raise GridError(f"spacing must be positive, got {self.spacing}")
        if any(e < 1 for e in self.extent):
            raise GridError(f"extent must be positive, got {self.extent}")
        object.__setattr__(self, "origin", tuple(self.origin) if self.origin is not None else (0.0,) * n)
        object.__setattr__(self, "periodic", tuple(self.periodic) if self.periodic is not None else (False,) * n)

    @classmethod
    def cube(cls, points: int, h: float, axes: Sequence[str] = AXES, origin=None) -> "Lattice":
        n = len(axes)
        return cls(tuple(axes), (points,) * n, (h,) * n, tuple(origin) if origin is not None else None)

    def coordinates(self) -> Dict[str, np.ndarray]:
        """Broadcast coordinate arrays; absent axes are scalar zero"""
        lines = [o + h * np.arange(e) for o, h, e in zip(self.origin, self.spacing, self.extent)]
        grids = np.meshgrid(*lines, indexing="ij")
        coords = {a: np.zeros(self.extent) for a in AXES}
        coords.update(dict(zip(self.axes, grids)))
        return coords

    def grid(self, components: Dict[str, np.ndarray]) -> "FieldGrid":
        return FieldGrid(self.axes, self.spacing, components, self.periodic, self.origin)


def _check_axes(axes: Sequence[str]) -> None:
    if not axes or any(a not in AXES for a in axes):
        raise GridError(f"axes must be drawn from {AXES}, got {tuple(axes)}")
    order = [AXES.index(a) for a in axes]
    if order != sorted(set(order)):
        raise GridError(f"axes must be unique and ordered t, x, y, z; got {tuple(axes)}")


@dataclass
class FieldGrid:
    """
    Named sample arrays on a shared lattice

    A derivative along an axis the grid does not carry is zero.
    """
    axes: Tuple[str, ...]
    spacing: Tuple[float, ...]
    components: Dict[str, np.ndarray] = field(default_factory=dict)
    periodic: Optional[Tuple[bool, ...]] = None
    origin: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        self.axes = tuple(self.axes)
        self.spacing = tuple(float(h) for h in self.spacing)
        _check_axes(self.axes)
        if len(self.spacing) != len(self.axes):
            raise GridError(f"spacing {self.spacing} does not match axes {self.axes}")
        if any(h <= 0 for h in self.spacing):
            raise GridError(f"spacing must be positive, got {self.spacing}")
        self.periodic = tuple(self.periodic) if self.periodic is not None else (False,) * len(self.axes)
        self.origin = tuple(self.origin) if self.origin is not None else (0.0,) * len(self.axes)
        self.components = {k: np.asarray(v) for k, v in self.components.items()}
        shapes = {v.shape for v in self.components.values()}
        if len(shapes) > 1:
            raise GridError(f"component arrays disagree on extent: {sorted(shapes)}")
        if shapes and len(next(iter(shapes))) != len(self.axes):
            raise GridError(f"component rank {len(next(iter(shapes)))} does not match axes {self.axes}")

    @property
    def extent(self) -> Tuple[int, ...]:
        if not self.components:
            raise GridError("grid has no components")
        return next(iter(self.components.values())).shape

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.axes, self.extent, self.spacing, self.origin, self.periodic)

    def __getitem__(self, name: str) -> np.ndarray:
        try:
            return self.components[name]
        except KeyError:
            raise GridError(f"missing component {name}") from None

    def require(self, names: Iterable[str]) -> None:
        missing = [n for n in names if n not in self.components]
        if missing:
            raise GridError(f"missing components: {', '.join(missing)}")

    def get(self, name: str) -> np.ndarray:
        """Component or zeros (for optional sources such as rho and j)"""
        if name in self.components:
            return self.components[name]
        return np.zeros(self.extent)

    def with_components(self, components: Dict[str, np.ndarray]) -> "FieldGrid":
        return FieldGrid(self.axes, self.spacing, components, self.periodic, self.origin)

    def derivative(self, values, axis: str) -> np.ndarray:
        """
        Second-order finite difference along `axis`

        `values` is a component name or an array whose leading dimensions are
        the grid extent. Non-periodic axes use one-sided second-order stencils
        at the edges.
        """
        f = self[values] if isinstance(values, str) else np.asarray(values)
        if axis not in AXES:
            raise GridError(f"unknown axis {axis!r}")
        if axis not in self.axes:
            return np.zeros_like(f)
        idx = self.axes.index(axis)
        h = self.spacing[idx]
        if self.periodic[idx]:
            return (np.roll(f, -1, axis=idx) - np.roll(f, 1, axis=idx)) / (2.0 * h)
        if f.shape[idx] < 3:
            raise GridError(f"axis {axis} needs at least 3 samples to differentiate, got {f.shape[idx]}")
        return np.gradient(f, h, axis=idx, edge_order=2)

    def d(self, values, mu: int) -> np.ndarray:
        """Derivative by index: 0 -> t, 1..3 -> x, y, z"""
        return self.derivative(values, AXES[mu])


# {{{ potential and Maxwell

def em_from_potential(grid: FieldGrid, physical: bool = False) -> FieldGrid:
    """
    E, H and the Lorentz scalar from A0..A3

    Printed grouping: E^i = d0 A^i + d_i A^0, H = curl A,
    L = d0 A^0 + div A. With `physical` the textbook E = -(d0 A + grad A^0)
    is returned instead.
    """
    grid.require(["A0", "A1", "A2", "A3"])
    d = grid.d
    e = [d("A" + str(i), 0) + d("A0", i) for i in (1, 2, 3)]
    if physical:
        e = [-x for x in e]
    h = [
        d("A3", 2) - d("A2", 3),
        d("A1", 3) - d("A3", 1),
        d("A2", 1) - d("A1", 2),
    ]
    lorentz = d("A0", 0) + d("A1", 1) + d("A2", 2) + d("A3", 3)
    log.debug("em_from_potential on extent %s", grid.extent)
    return grid.with_components({
        "E1": e[0], "E2": e[1], "E3": e[2],
        "H1": h[0], "H2": h[1], "H3": h[2],
        "L": lorentz,
    })


def _curl(grid: FieldGrid, prefix: str) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    d = grid.d
    return (
        d(prefix + "3", 2) - d(prefix + "2", 3),
        d(prefix + "1", 3) - d(prefix + "3", 1),
        d(prefix + "2", 1) - d(prefix + "1", 2),
    )


def _div(grid: FieldGrid, prefix: str) -> np.ndarray:
    return sum(grid.d(prefix + str(i), i) for i in (1, 2, 3))


def max_norm(values) -> float:
    arr = np.asarray(values)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


@dataclass(frozen=True)
class MaxwellResiduals:
    """
    div E - rho, curl H - d0 E - j, curl E + d0 H, div H

    Vector residuals are stacked on a leading axis of length 3.
    """
    div_e: np.ndarray
    ampere: np.ndarray
    faraday: np.ndarray
    div_h: np.ndarray

    def norms(self) -> Dict[str, float]:
        return {
            "divE": max_norm(self.div_e),
            "curlH": max_norm(self.ampere),
            "curlE": max_norm(self.faraday),
            "divH": max_norm(self.div_h),
        }


def maxwell_residuals(grid: FieldGrid) -> MaxwellResiduals:
    """
    Residuals of the four Maxwell equations

    E and H are required; rho and j1..j3 are optional sources (zero when absent).
    """
    grid.require(["E1", "E2", "E3", "H1", "H2", "H3"])
    d = grid.d
    curl_h = _curl(grid, "H")
    curl_e = _curl(grid, "E")
    ampere = np.stack([curl_h[i - 1] - d("E" + str(i), 0) - grid.get("j" + str(i)) for i in (1, 2, 3)])
    faraday = np.stack([curl_e[i - 1] + d("H" + str(i), 0) for i in (1, 2, 3)])
    return MaxwellResiduals(_div(grid, "E") - grid.get("rho"), ampere, faraday, _div(grid, "H"))

# }}}


# {{{ Riemann-Silberstein

@dataclass(frozen=True)
class RSField:
    """F = E + iH"""
    F1: np.ndarray
    F2: np.ndarray
    F3: np.ndarray

    def vector(self) -> np.ndarray:
        return np.stack([self.F1, self.F2, self.F3], axis=-1)

    def electric(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return np.real(self.F1), np.real(self.F2), np.real(self.F3)

    def magnetic(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return np.imag(self.F1), np.imag(self.F2), np.imag(self.F3)

    def conjugate(self) -> "RSField":
        """E + iH -> E - iH"""
        return RSField(np.conj(self.F1), np.conj(self.F2), np.conj(self.F3))


def riemann_silberstein(grid: FieldGrid) -> RSField:
    grid.require(["E1", "E2", "E3", "H1", "H2", "H3"])
    f = [np.real(grid["E" + i]) + 1j * np.real(grid["H" + i]) for i in "123"]
    return RSField(*f)


def rs_to_grid(rs: RSField, like: FieldGrid) -> FieldGrid:
    """Inverse of riemann_silberstein onto the geometry of `like`"""
    e, h = rs.electric(), rs.magnetic()
    return like.with_components({
        "E1": e[0], "E2": e[1], "E3": e[2],
        "H1": h[0], "H2": h[1], "H3": h[2],
    })


def field_spinor(F: Sequence, conjugate: bool = False) -> np.ndarray:
    """
    Column (0, F1, F2, F3); the conjugate variant holds (0, F1*, F2*, F3*)

    Works pointwise or on arrays, with the spinor index last.
    """
    if len(F) != 3:
        raise GridError(f"field spinor needs 3 components, got {len(F)}")
    parts = [np.asarray(c, dtype=complex) for c in F]
    if conjugate:
        parts = [np.conj(c) for c in parts]
    return np.stack([np.zeros_like(parts[0])] + parts, axis=-1)

# }}}


# {{{ Weyl and Dirac-Hestenes

def _chirality_sign(chirality) -> int:
    sign = {"+": 1, "plus": 1, 1: 1, "-": -1, "minus": -1, -1: -1}.get(chirality)
    if sign is None:
        raise GridError(f"chirality must be + or -, got {chirality!r}")
    return sign


def sigma_gradient(grid: FieldGrid, xi: np.ndarray) -> np.ndarray:
    """sigma . grad xi for a 2-spinor field with the spinor index last"""
    out = np.zeros(xi.shape, dtype=complex)
    for i, axis in enumerate(SPATIAL):
        out = out + np.einsum("ij,...j->...i", _SIGMA[i], grid.derivative(xi, axis))
    return out


def weyl_residual(grid: FieldGrid, xi, chirality="+") -> np.ndarray:
    """
    (d0 - sigma.grad) xi for chirality +, (d0 + sigma.grad) xi for chirality -

    Args:
        grid: geometry (and the components when `xi` is a pair of names)
        xi: array with a trailing spinor axis of length 2, or two component names
        chirality: "+" or "-"
    """
    sign = _chirality_sign(chirality)
    if isinstance(xi, (tuple, list)) and all(isinstance(n, str) for n in xi):
        if len(xi) != 2:
            raise GridError(f"Weyl spinors have 2 components, got {len(xi)}")
        grid.require(xi)
        xi = np.stack([grid[n] for n in xi], axis=-1)
    xi = np.asarray(xi, dtype=complex)
    if xi.shape[-1] != 2:
        raise GridError(f"Weyl spinors have 2 components, got {xi.shape[-1]}")
    return grid.derivative(xi, "t") - sign * sigma_gradient(grid, xi)


def dirac_apply(grid: FieldGrid, field_values: np.ndarray) -> np.ndarray:
    """gamma_0 d0 + sum_i Gamma_i d_i applied to a matrix field [..., 4, 4]"""
    basis = gamma_basis()
    out = np.zeros(field_values.shape, dtype=complex)
    for mu, axis in enumerate(AXES):
        gamma = basis.gamma(mu).to_numpy()
        out = out + np.einsum("ij,...jk->...ik", gamma, grid.derivative(field_values, axis))
    return out


def dh_field(grid: FieldGrid, names: Sequence[str] = ("phi1", "phi2", "phi3", "phi4")) -> np.ndarray:
    """Matrix field [..., 4, 4] from the four spinor components"""
    grid.require(names)
    return dh_matrix_array(np.stack([grid[n] for n in names], axis=-1))


def dh_residual(grid: FieldGrid, phi: np.ndarray, mass: float = 0.0, tol: float = 1e-9) -> np.ndarray:
    """
    D phi gamma_2 gamma_1 - m phi gamma_0 at every grid point

    Raises:
        RepresentationError: phi is not a field of Dirac-Hestenes matrices
        PlaneWaveError: negative mass
    """
    phi = np.asarray(phi, dtype=complex)
    if phi.shape[-2:] != (4, 4) or phi.shape[:-2] != tuple(grid.extent):
        raise RepresentationError(f"expected a [{grid.extent}, 4, 4] matrix field, got {phi.shape}")
    if mass < 0:
        raise PlaneWaveError(f"mass must be non-negative, got {mass}")
    if not np.allclose(phi, dh_matrix_array(phi[..., :, 0]), atol=tol):
        raise RepresentationError("matrix field is not of Dirac-Hestenes form")
    g21 = gamma21().to_numpy()
    g0 = gamma_basis().gamma0.to_numpy()
    return dirac_apply(grid, phi @ g21) - mass * (phi @ g0)

# }}}
