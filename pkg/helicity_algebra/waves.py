"""
Analytic plane-wave oracles and the refinement harness
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
import sympy
from pytools.convergence import EOCRecorder

from .coefficients import GAUSSIAN
from .config import Settings, get_settings
from .errors import PlaneWaveError
from .fields import (
    AXES,
    FieldGrid,
    Lattice,
    dh_field,
    dh_residual,
    em_from_potential,
    field_spinor,
    max_norm,
    maxwell_residuals,
    riemann_silberstein,
    weyl_residual,
)
from .matrices import (
    SIGMAS,
    DHSpinor,
    dh_matrix,
    dh_matrix_array,
    gamma_basis,
    null_momentum_spinors,
    split_spinor_array,
    spintensor_to_vector,
    sym_spintensor,
)

log = logging.getLogger(__name__)

_SIGMA = np.stack([s.to_numpy() for s in SIGMAS])


def _unit(k: Sequence[float]) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    norm = np.linalg.norm(k)
    if norm == 0:
        raise PlaneWaveError("wavevector must be nonzero for a massless mode")
    return k / norm


def polarization(k: Sequence[float], helicity: int) -> np.ndarray:
    """
    Circular polarization (e1 + h i e2) / sqrt(2) with e1 x e2 = k/|k|

    For k along z this is (1, h i, 0) / sqrt(2).
    """
    khat = _unit(k)
    ref = np.array([0.0, 0.0, 1.0]) if abs(khat[1]) > 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(ref, khat)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(khat, e1)
    return (e1 + helicity * 1j * e2) / np.sqrt(2.0)


@dataclass(frozen=True)
class PlaneWaveSpec:
    """
    Massless plane wave E = Re(amplitude eps exp(i(k.x - omega t))), H = khat x E

    `polarization` defaults to the circular vector of the given helicity.
    """
    k: Tuple[float, float, float]
    helicity: int = 1
    amplitude: complex = 1.0
    omega: Optional[float] = None
    polarization: Optional[Tuple[complex, complex, complex]] = None
    tol: float = 1e-12

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float)
        if k.shape != (3,):
            raise PlaneWaveError(f"wavevector needs 3 components, got {self.k}")
        if self.helicity not in (1, -1):
            raise PlaneWaveError(f"helicity must be +1 or -1, got {self.helicity}")
        norm = float(np.linalg.norm(k))
        if norm == 0:
            raise PlaneWaveError("wavevector must be nonzero for a massless mode")
        omega = norm if self.omega is None else float(self.omega)
        if abs(omega * omega - norm * norm) > self.tol * max(1.0, norm * norm):
            raise PlaneWaveError(f"omega={omega} is not |k|={norm}")
        object.__setattr__(self, "omega", omega)
        eps = polarization(k, self.helicity) if self.polarization is None else np.asarray(self.polarization, complex)
        if abs(np.dot(eps, k)) > self.tol * norm * max(1.0, float(np.linalg.norm(eps))):
            raise PlaneWaveError("polarization is not transverse to k")
        object.__setattr__(self, "polarization", tuple(complex(v) for v in eps))

    @property
    def khat(self) -> np.ndarray:
        return _unit(self.k)

    def phase(self, lattice: Lattice) -> np.ndarray:
        c = lattice.coordinates()
        return self.k[0] * c["x"] + self.k[1] * c["y"] + self.k[2] * c["z"] - self.omega * c["t"]


def _cross(khat: np.ndarray, vec: List[np.ndarray]) -> List[np.ndarray]:
    return [
        khat[1] * vec[2] - khat[2] * vec[1],
        khat[2] * vec[0] - khat[0] * vec[2],
        khat[0] * vec[1] - khat[1] * vec[0],
    ]


def plane_wave_em(spec: PlaneWaveSpec, lattice: Lattice) -> FieldGrid:
    """Sampled E and H of the analytic mode"""
    wave = np.exp(1j * spec.phase(lattice)) * spec.amplitude
    e = [np.real(p * wave) for p in spec.polarization]
    h = _cross(spec.khat, e)
    return lattice.grid({
        "E1": e[0], "E2": e[1], "E3": e[2],
        "H1": h[0], "H2": h[1], "H3": h[2],
    })


def plane_wave_potential(spec: PlaneWaveSpec, lattice: Lattice) -> FieldGrid:
    """A0 = 0, A = Re(-i/omega amplitude eps exp(i theta)); its physical E, H equal plane_wave_em"""
    alpha = -1j / spec.omega * spec.amplitude
    wave = np.exp(1j * spec.phase(lattice)) * alpha
    a = [np.real(p * wave) for p in spec.polarization]
    return lattice.grid({"A0": np.zeros(lattice.extent), "A1": a[0], "A2": a[1], "A3": a[2]})


# {{{ Weyl modes

def helicity_amplitude(k: Sequence[float], helicity: int) -> np.ndarray:
    """Unit 2-spinor u with (sigma . khat) u = helicity u"""
    khat = _unit(k)
    _, vecs = np.linalg.eigh(np.einsum("i,ijk->jk", khat, _SIGMA))
    return vecs[:, 1] if helicity > 0 else vecs[:, 0]


def weyl_amplitude(k: Sequence[float], chirality: int) -> np.ndarray:
    """u with (omega -+ sigma.k) u = 0: chirality + needs helicity -1"""
    return helicity_amplitude(k, -chirality)


def weyl_plane_wave(k: Sequence[float], lattice: Lattice, chirality: int = 1,
                    amplitude: Optional[np.ndarray] = None) -> np.ndarray:
    """xi = u exp(-i(omega t - k.x)) with the spinor index last"""
    k = np.asarray(k, dtype=float)
    omega = float(np.linalg.norm(k))
    u = weyl_amplitude(k, chirality) if amplitude is None else np.asarray(amplitude, dtype=complex)
    c = lattice.coordinates()
    theta = k[0] * c["x"] + k[1] * c["y"] + k[2] * c["z"] - omega * c["t"]
    return np.exp(1j * theta)[..., None] * u


# }}}


# {{{ Dirac-Hestenes modes

def exact_frequency(k: Sequence, mass=0) -> Fraction:
    """sqrt(|k|^2 + m^2) when it is rational"""
    k = [Fraction(v) for v in k]
    mass = Fraction(mass)
    root = sympy.sqrt(sympy.Rational(sum(v * v for v in k) + mass * mass))
    if not root.is_Rational:
        raise PlaneWaveError(f"|k|^2 + m^2 = {sum(v * v for v in k) + mass * mass} has no rational square root")
    return Fraction(int(root.p), int(root.q))


def dh_amplitude(k: Sequence, mass=0) -> np.ndarray:
    """Sum of the exact null-space basis as a float 4x4 matrix"""
    omega = exact_frequency(k, mass)
    spinors = null_momentum_spinors(k, omega, mass)
    acc = dh_matrix(spinors[0])
    for s in spinors[1:]:
        acc = acc + dh_matrix(s)
    return acc.to_numpy()


def _dh_wave(column: np.ndarray, k: Sequence[float], omega: float, lattice: Lattice) -> FieldGrid:
    c = lattice.coordinates()
    theta = omega * c["t"] - k[0] * c["x"] - k[1] * c["y"] - k[2] * c["z"]
    wave = np.exp(1j * theta)
    return lattice.grid({f"phi{i + 1}": column[i] * wave for i in range(4)})


def dh_plane_wave(k: Sequence, lattice: Lattice, mass=0) -> FieldGrid:
    """
    phi(x) = phi_hat R(theta), theta = omega t - k.x, R = diag(e^{i theta}, e^{-i theta}, ...)

    Stored as phi1..phi4 (the first column); dh_field rebuilds the matrices.

    Raises:
        PlaneWaveError: |k|^2 + m^2 has no rational square root
    """
    omega = float(exact_frequency(k, mass))
    phi_hat = dh_amplitude(k, mass)
    return _dh_wave(phi_hat[:, 0], [float(Fraction(v)) for v in k], omega, lattice)


def dh_float_nullspace(k: Sequence[float], omega: float, mass: float = 0.0, rcond: float = 1e-10) -> np.ndarray:
    """
    Float basis of Dirac-Hestenes amplitudes with K phi + m phi gamma_0 = 0

    Solves the real 32 x 8 system over the eight spinor coefficients. Columns
    of the result are first columns phi1..phi4; dh_matrix_array rebuilds the
    matrices.

    Raises:
        PlaneWaveError: no amplitude survives (off-shell momentum)
    """
    basis = gamma_basis()
    gammas = [basis.gamma(mu).to_numpy() for mu in range(4)]
    kf = np.asarray(k, dtype=float)
    operator = omega * gammas[0] - sum(ki * g for ki, g in zip(kf, gammas[1:]))
    units = np.array([
        [GAUSSIAN.to_complex(p) for p in DHSpinor(*[1 if j == i else 0 for j in range(8)]).phi]
        for i in range(8)
    ])
    mats = dh_matrix_array(units)
    images = operator @ mats + mass * (mats @ gammas[0])
    system = np.concatenate([images.real.reshape(8, -1), images.imag.reshape(8, -1)], axis=1).T
    coeffs = scipy.linalg.null_space(system, rcond=rcond)
    if coeffs.shape[1] == 0:
        raise PlaneWaveError(f"no Dirac-Hestenes amplitude for k={tuple(kf)}, omega={omega}, m={mass}")
    log.debug("float null space for k=%s: dimension %d", tuple(kf), coeffs.shape[1])
    return units.T @ coeffs


def dh_float_plane_wave(k: Sequence[float], lattice: Lattice) -> FieldGrid:
    """Massless mode from the float null space, for momenta with irrational |k|"""
    kf = [float(v) for v in k]
    omega = float(np.linalg.norm(kf))
    column = dh_float_nullspace(kf, omega).sum(axis=1)
    return _dh_wave(column, kf, omega, lattice)

# }}}


# {{{ composite photon

@dataclass(frozen=True)
class CompositeCheck:
    helicity: int
    constant: complex
    deviation: float


def composite_photon(k: Sequence[float], helicity: int) -> CompositeCheck:
    """
    Compare the field spinor of the EM mode with the symmetric square of the Weyl amplitude

    Helicity + uses (0, F1, F2, F3), helicity - the conjugate spinor; one complex
    constant is fitted and the relative deviation returned.
    """
    spec = PlaneWaveSpec(tuple(float(v) for v in k), helicity)
    point = Lattice(("t", "x", "y", "z"), (1, 1, 1, 1), (1.0, 1.0, 1.0, 1.0))
    rs = riemann_silberstein(plane_wave_em(spec, point))
    em = field_spinor([rs.F1.ravel()[0], rs.F2.ravel()[0], rs.F3.ravel()[0]], conjugate=helicity < 0)
    u = helicity_amplitude(k, helicity)
    vec = spintensor_to_vector(sym_spintensor(list(u), list(u)))
    weyl = np.array([0.0, *vec], dtype=complex)
    constant = complex(np.vdot(weyl, em) / np.vdot(weyl, weyl))
    deviation = float(np.max(np.abs(em - constant * weyl)) / np.max(np.abs(em)))
    return CompositeCheck(helicity, constant, deviation)

# }}}


# {{{ refinement harness

PIPELINES = ("divE", "curlH", "curlE", "divH", "potential", "weyl", "dh", "split")

PERIODIC_H = 1 / 16
PATCH_H = 0.05


@dataclass
class ConvergenceTable:
    """
    Residual max-norms per refinement level

    Periodic tables measure h in wavelengths (1 / samples per wavelength).
    """
    k: Tuple[float, float, float]
    helicity: int
    periodic: bool = True
    spacings: List[float] = field(default_factory=list)
    extents: List[Tuple[int, ...]] = field(default_factory=list)
    errors: Dict[str, List[float]] = field(default_factory=dict)
    orders: Dict[str, Optional[float]] = field(default_factory=dict)

    def render(self) -> str:
        names = list(self.errors)
        header = ["h"] + names
        lines = ["  ".join(f"{c:>12}" for c in header)]
        for row, h in enumerate(self.spacings):
            cells = [f"{h:12.5e}"] + [f"{self.errors[n][row]:12.5e}" for n in names]
            lines.append("  ".join(cells))
        if len(self.spacings) > 1:
            cells = [f"{'order':>12}"]
            for n in names:
                order = self.orders.get(n)
                cells.append(f"{'exact':>12}" if order is None else f"{order:12.4f}")
            lines.append("  ".join(cells))
        return "\n".join(lines)

    def to_json(self) -> Dict:
        out: Dict = {
            "k": list(self.k),
            "helicity": "+" if self.helicity > 0 else "-",
            "boundary": "periodic" if self.periodic else "patch",
            "rows": [{"h": h, "extent": list(self.extents[i]),
                      "residual": {n: self.errors[n][i] for n in self.errors}}
                     for i, h in enumerate(self.spacings)],
        }
        if len(self.spacings) > 1:
            out["order"] = {n: self.orders.get(n) for n in self.errors}
        return out

    def within(self, window: Tuple[float, float], floor: float = 1e-9) -> Dict[str, bool]:
        """Order in the window, or every error already below `floor`"""
        out = {}
        for name, errs in self.errors.items():
            order = self.orders.get(name)
            out[name] = max(errs) < floor or (order is not None and window[0] <= order <= window[1])
        return out

    def local_orders(self, name: str) -> List[float]:
        """log(e_coarse / e_fine) / log(h_coarse / h_fine) between neighboring levels"""
        errs, hs = self.errors[name], self.spacings
        return [
            float(np.log(errs[i] / errs[i + 1]) / np.log(hs[i] / hs[i + 1]))
            for i in range(len(hs) - 1)
        ]


def periodic_lattice(k: Sequence[float], samples: int) -> Lattice:
    """
    One wavelength per spatial axis and one period in time, periodic on every axis

    Space gets `samples` points per wavelength and time `samples // 4` per
    period. Axes along which the mode is constant keep a single sample.
    """
    if samples < 8 or samples % 4:
        raise PlaneWaveError(f"periodic boxes need a multiple of 4 samples, at least 8; got {samples}")
    kf = np.asarray(k, dtype=float)
    omega = float(np.linalg.norm(kf))
    if omega == 0:
        raise PlaneWaveError("wavevector must be nonzero for a massless mode")
    steps = samples // 4
    extent, spacing = [steps], [2 * np.pi / (omega * steps)]
    for ka in kf:
        if ka == 0:
            extent.append(1)
            spacing.append(1.0)
        else:
            extent.append(samples)
            spacing.append(2 * np.pi / (abs(ka) * samples))
    return Lattice(AXES, tuple(extent), tuple(spacing), periodic=(True,) * len(AXES))


def _rational_k(k: Sequence) -> Optional[List[Fraction]]:
    try:
        return [Fraction(v) if not isinstance(v, float) else Fraction(v).limit_denominator(10**6) for v in k]
    except (TypeError, ValueError):
        return None


def _spinor_mode(k, lattice: Lattice) -> FieldGrid:
    exact_k = _rational_k(k)
    if exact_k is not None:
        try:
            return dh_plane_wave(exact_k, lattice)
        except PlaneWaveError:
            log.debug("no rational frequency for k=%s; using the float null space", k)
    return dh_float_plane_wave(k, lattice)


def _level(k, helicity: int, lattice: Lattice) -> Dict[str, float]:
    spec = PlaneWaveSpec(tuple(float(v) for v in k), helicity)
    grid = plane_wave_em(spec, lattice)
    out = maxwell_residuals(grid).norms()

    # E, H differentiated from the potential against the sampled closed form
    derived = em_from_potential(plane_wave_potential(spec, lattice), physical=True)
    out["potential"] = max(
        max_norm(derived[name] - grid[name]) for name in ("E1", "E2", "E3", "H1", "H2", "H3")
    )

    xi = weyl_plane_wave(spec.k, lattice, chirality=-helicity)
    out["weyl"] = max_norm(weyl_residual(grid, xi, -helicity))

    dh = _spinor_mode(k, lattice)
    phi = dh_field(dh)
    out["dh"] = max_norm(dh_residual(dh, phi))
    psi = split_spinor_array(phi)
    out["split"] = max(
        max_norm(weyl_residual(dh, psi[..., j, :], "+" if j < 4 else "-")) for j in range(8)
    )
    return out


def convergence_table(
    k: Sequence,
    helicity: int = 1,
    h: Optional[float] = None,
    refine: int = 3,
    points: int = 7,
    origin: Sequence[float] = (0.1, 0.2, 0.3, 0.4),
    periodic: bool = True,
    settings: Optional[Settings] = None,
) -> ConvergenceTable:
    """
    Evaluate every residual pipeline over `refine` levels

    Periodic (default): h is the coarsest spacing in wavelengths (1/16 by
    default, 1/h a multiple of 8). Level l samples 1/h * (1 + l/2) points per
    wavelength, so three levels end on a 32^3 x 8 box.

    Patches: cubes of `points` samples per axis at `origin` with spacing
    h, h/2, ... (0.05 by default); one-sided edge stencils set the error level.
    """
    settings = settings or get_settings()
    if refine < 1:
        raise PlaneWaveError(f"refine must be at least 1, got {refine}")
    if periodic:
        h = PERIODIC_H if h is None else h
        base = int(round(1 / h))
        if base < 8 or base % 8 or abs(base * h - 1) > 1e-9:
            raise PlaneWaveError(f"periodic refinement needs 1/h to be a multiple of 8, got h={h}")
    else:
        h = PATCH_H if h is None else h
    table = ConvergenceTable(tuple(float(v) for v in k), helicity, periodic)
    recorders: Dict[str, EOCRecorder] = {}
    for level in range(refine):
        if periodic:
            samples = base + level * base // 2
            lattice = periodic_lattice(table.k, samples)
            spacing = 1 / samples
        else:
            spacing = h / 2**level
            lattice = Lattice.cube(points, spacing, origin=origin)
        errors = _level(k, helicity, lattice)
        table.spacings.append(spacing)
        table.extents.append(tuple(lattice.extent))
        for name, err in errors.items():
            table.errors.setdefault(name, []).append(err)
            recorders.setdefault(name, EOCRecorder()).add_data_point(spacing, err)
        log.debug("h=%g extent=%s residuals=%s", spacing, lattice.extent, errors)
    if refine > 1:
        for name, errs in table.errors.items():
            if min(errs) <= settings.tolerance * 1e-3:
                table.orders[name] = None
            else:
                table.orders[name] = float(recorders[name].order_estimate())
    return table

# }}}
