"""
Fixed matrix representations
Pauli basis for C2 / Cl(3,0), the gamma basis for Cl(1,3) / C4, the
Dirac-Hestenes spinor matrix, helicity projectors and the minimal left ideal.
"""
import logging
from dataclasses import dataclass, fields
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from .algebra import CL13, Multivector, Signature, blade, blade_indices, volume_element
from .coefficients import GAUSSIAN, Rational, format_fraction, parse_fraction
from .errors import PlaneWaveError, RepresentationError

log = logging.getLogger(__name__)

Entry = Any
Rows = Tuple[Tuple[Entry, ...], ...]


def matmul_rows(a: Sequence[Sequence[Entry]], b: Sequence[Sequence[Entry]]) -> Rows:
    """Row-major matrix product for any entry type with + and *"""
    if not a or len(a[0]) != len(b):
        raise RepresentationError(f"cannot multiply {len(a)}x{len(a[0]) if a else 0} by {len(b)}x?")
    cols = range(len(b[0]))
    inner = range(len(b))
    return tuple(
        tuple(reduce(lambda s, k: s + row[k] * b[k][j], inner[1:], row[0] * b[0][j]) for j in cols)
        for row in a
    )


class ExactMatrix:
    """
    Immutable matrix over the Gaussian rationals

    Products and sums are done row-wise; rank goes through sympy's
    DomainMatrix over QQ_I so it is computed by exact elimination.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Any]]):
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise RepresentationError("ragged matrix rows")
        self.rows: Rows = tuple(tuple(GAUSSIAN.coerce(v) for v in r) for r in rows)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: Optional[int] = None) -> "ExactMatrix":
        return cls([[0] * (m or n) for _ in range(n)])

    @classmethod
    def diag(cls, *values: Any) -> "ExactMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def blocks(cls, a: "ExactMatrix", b: "ExactMatrix", c: "ExactMatrix", d: "ExactMatrix") -> "ExactMatrix":
        """[[a, b], [c, d]] from four equally sized blocks"""
        top = [ra + rb for ra, rb in zip(a.rows, b.rows)]
        bottom = [rc + rd for rc, rd in zip(c.rows, d.rows)]
        return cls(top + bottom)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, index: Tuple[int, int]) -> Any:
        i, j = index
        return self.rows[i][j]

    def column(self, j: int) -> Tuple[Any, ...]:
        return tuple(r[j] for r in self.rows)

    # {{{ arithmetic

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(matmul_rows(self.rows, other.rows))

    def __mul__(self, other: Any) -> "ExactMatrix":
        if isinstance(other, ExactMatrix):
            return self @ other
        value = GAUSSIAN.coerce(other)
        return ExactMatrix([[v * value for v in r] for r in self.rows])

    def __rmul__(self, other: Any) -> "ExactMatrix":
        value = GAUSSIAN.coerce(other)
        return ExactMatrix([[value * v for v in r] for r in self.rows])

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise RepresentationError(f"shape mismatch {self.shape} vs {other.shape}")
        return ExactMatrix([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-v for v in r] for r in self.rows])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    # }}}

    def conjugate(self) -> "ExactMatrix":
        return ExactMatrix([[GAUSSIAN.conjugate(v) for v in r] for r in self.rows])

    def is_zero(self) -> bool:
        return all(GAUSSIAN.is_zero(v) for r in self.rows for v in r)

    def nonzero_columns(self) -> List[int]:
        return [j for j in range(self.shape[1]) if not all(GAUSSIAN.is_zero(v) for v in self.column(j))]

    def trace(self) -> Any:
        return reduce(lambda s, i: s + self.rows[i][i], range(1, self.shape[0]), self.rows[0][0])

    def rank(self) -> int:
        return int(DomainMatrix([list(r) for r in self.rows], self.shape, QQ_I).rank())

    def to_numpy(self) -> np.ndarray:
        return np.array([[GAUSSIAN.to_complex(v) for v in r] for r in self.rows], dtype=complex)

    def to_json(self) -> List[List[Dict[str, str]]]:
        out = []
        for r in self.rows:
            row = []
            for v in r:
                re, im = GAUSSIAN.parts(v)
                row.append({"re": format_fraction(re), "im": format_fraction(im)})
            out.append(row)
        return out

    def __repr__(self) -> str:
        body = "; ".join(", ".join(GAUSSIAN.format(v) for v in r) for r in self.rows)
        return f"ExactMatrix([{body}])"


# {{{ bases

def _g(re: Rational, im: Rational = 0) -> Any:
    return GAUSSIAN.from_parts(re, im)


I2 = ExactMatrix.identity(2)
Z2 = ExactMatrix.zeros(2)
SIGMA1 = ExactMatrix([[0, 1], [1, 0]])
SIGMA2 = ExactMatrix([[0, _g(0, -1)], [_g(0, 1), 0]])
SIGMA3 = ExactMatrix([[1, 0], [0, -1]])
SIGMAS = (SIGMA1, SIGMA2, SIGMA3)

I4 = ExactMatrix.identity(4)


@dataclass(frozen=True)
class GammaBasis:
    """gamma_0 and the printed Gamma_1..Gamma_3, plus gamma_5 = -i g0 g1 g2 g3"""
    gamma0: ExactMatrix
    gamma1: ExactMatrix
    gamma2: ExactMatrix
    gamma3: ExactMatrix
    gamma5: ExactMatrix

    def gamma(self, mu: int) -> ExactMatrix:
        if not 0 <= mu <= 3:
            raise RepresentationError(f"gamma index {mu} outside 0..3")
        return (self.gamma0, self.gamma1, self.gamma2, self.gamma3)[mu]

    def anticommutator(self, mu: int, nu: int) -> ExactMatrix:
        a, b = self.gamma(mu), self.gamma(nu)
        return a @ b + b @ a


@lru_cache(maxsize=None)
def gamma_basis() -> GammaBasis:
    g0 = ExactMatrix.blocks(I2, Z2, Z2, -I2)
    big = [ExactMatrix.blocks(Z2, s, -s, Z2) for s in SIGMAS]
    g5 = (g0 @ big[0] @ big[1] @ big[2]) * _g(0, -1)
    return GammaBasis(g0, big[0], big[1], big[2], g5)


def gamma5() -> ExactMatrix:
    return gamma_basis().gamma5


def gamma21() -> ExactMatrix:
    """gamma_2 gamma_1 = diag(i, -i, i, -i)"""
    basis = gamma_basis()
    return basis.gamma2 @ basis.gamma1


def gamma_multivector(mu: int) -> Multivector:
    """gamma_mu as a generator of Cl(1,3) (gamma_0 is e1, gamma_i is e_{i+1})"""
    return Multivector.generator(CL13, mu + 1)


def gamma5_multivector() -> Multivector:
    return volume_element(CL13) * _g(0, -1)

# }}}


# {{{ representations

def _representation(x: Multivector, images: Dict[int, ExactMatrix], size: int) -> ExactMatrix:
    if x.ring is not GAUSSIAN:
        raise RepresentationError(f"matrix images need exact coefficients, got {x.ring.name}")
    acc = ExactMatrix.zeros(size)
    for mask, coeff in x.terms.items():
        mat = reduce(lambda m, i: m @ images[i], blade_indices(mask), ExactMatrix.identity(size))
        acc = acc + mat * coeff
    return acc


def pauli_rep(x: Multivector) -> ExactMatrix:
    """e_i -> sigma_i on C2 or Cl(3,0) (C3 maps onto the same matrices, non-faithfully)"""
    sig = x.signature
    if sig.q or sig.n not in (2, 3):
        raise RepresentationError(f"pauli representation needs C2 or Cl(3,0), got {sig}")
    return _representation(x, {i + 1: s for i, s in enumerate(SIGMAS)}, 2)


def gamma_rep(x: Multivector) -> ExactMatrix:
    """
    Image in the gamma basis

    Cl(1,3): e1 -> gamma_0, e_{j+1} -> Gamma_j.
    C4 (all squares +1): e1 -> gamma_0, e_{j+1} -> i Gamma_j.
    """
    sig = x.signature
    basis = gamma_basis()
    if sig == CL13:
        images = {1: basis.gamma0, 2: basis.gamma1, 3: basis.gamma2, 4: basis.gamma3}
    elif sig == Signature.complex(4):
        i = _g(0, 1)
        images = {1: basis.gamma0, 2: basis.gamma1 * i, 3: basis.gamma2 * i, 4: basis.gamma3 * i}
    else:
        raise RepresentationError(f"gamma representation needs Cl(1,3) or C4, got {sig}")
    return _representation(x, images, 4)


def even_embedding(x: Multivector) -> Multivector:
    """Cl(3,0) -> even part of Cl(1,3), e_i -> gamma_0 gamma_i"""
    sig = x.signature
    if sig.n != 3 or sig.q:
        raise RepresentationError(f"even embedding needs Cl(3,0) or C3, got {sig}")
    one = Multivector.scalar(CL13, x.ring.one, x.ring)
    images = {i: Multivector.from_blade(CL13, (1, i + 1), x.ring.one, x.ring) for i in (1, 2, 3)}
    acc = Multivector.zero(CL13, x.ring)
    for mask, coeff in x.terms.items():
        image = reduce(lambda m, i: m * images[i], blade_indices(mask), one)
        acc = acc + image * coeff
    return acc

# }}}


# {{{ Dirac-Hestenes spinors

@dataclass(frozen=True)
class DHSpinor:
    """
    Even element of Cl(1,3) with eight real coefficients

    The a13 coefficient multiplies gamma_3 gamma_1 so that the closed-form
    matrix agrees with the gamma-basis image.
    """
    a0: Fraction = Fraction(0)
    a01: Fraction = Fraction(0)
    a02: Fraction = Fraction(0)
    a03: Fraction = Fraction(0)
    a12: Fraction = Fraction(0)
    a13: Fraction = Fraction(0)
    a23: Fraction = Fraction(0)
    a0123: Fraction = Fraction(0)

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, Fraction(getattr(self, f.name)))

    @property
    def phi(self) -> Tuple[Any, Any, Any, Any]:
        return (
            _g(self.a0, -self.a12),
            _g(self.a13, -self.a23),
            _g(self.a03, -self.a0123),
            _g(self.a01, self.a02),
        )

    @classmethod
    def from_phi(cls, phi1: Any, phi2: Any, phi3: Any, phi4: Any) -> "DHSpinor":
        (r1, i1), (r2, i2), (r3, i3), (r4, i4) = (GAUSSIAN.parts(GAUSSIAN.coerce(p)) for p in (phi1, phi2, phi3, phi4))
        return cls(a0=r1, a12=-i1, a13=r2, a23=-i2, a03=r3, a0123=-i3, a01=r4, a02=i4)

    @classmethod
    def from_matrix(cls, m: ExactMatrix) -> "DHSpinor":
        if m.shape != (4, 4):
            raise RepresentationError(f"expected a 4x4 matrix, got {m.shape}")
        spinor = cls.from_phi(*m.column(0))
        if dh_matrix(spinor) != m:
            raise RepresentationError("matrix is not of Dirac-Hestenes form")
        return spinor

    @classmethod
    def random(cls, rng: np.random.Generator, spread: int = 4) -> "DHSpinor":
        return cls(*(Fraction(int(rng.integers(-spread, spread + 1)), int(rng.integers(1, 4))) for _ in range(8)))

    def to_multivector(self) -> Multivector:
        return Multivector(CL13, {
            0: self.a0,
            blade(1, 2): self.a01,
            blade(1, 3): self.a02,
            blade(1, 4): self.a03,
            blade(2, 3): self.a12,
            blade(2, 4): -self.a13,
            blade(3, 4): self.a23,
            blade(1, 2, 3, 4): self.a0123,
        })

    def as_tuple(self) -> Tuple[Fraction, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))


def _dh_rows(p1: Any, p2: Any, p3: Any, p4: Any, conj: Any) -> List[List[Any]]:
    c1, c2, c3, c4 = conj(p1), conj(p2), conj(p3), conj(p4)
    return [
        [p1, -c2, p3, c4],
        [p2, c1, p4, -c3],
        [p3, c4, p1, -c2],
        [p4, -c3, p2, c1],
    ]


def dh_matrix(s: DHSpinor) -> ExactMatrix:
    """Closed-form 4x4 matrix of a Dirac-Hestenes spinor"""
    return ExactMatrix(_dh_rows(*s.phi, conj=GAUSSIAN.conjugate))


def dh_matrix_array(phi: np.ndarray) -> np.ndarray:
    """Vectorized closed form: phi[..., 4] complex -> [..., 4, 4]"""
    phi = np.asarray(phi, dtype=complex)
    if phi.shape[-1] != 4:
        raise RepresentationError(f"expected 4 spinor components, got {phi.shape[-1]}")
    rows = _dh_rows(phi[..., 0], phi[..., 1], phi[..., 2], phi[..., 3], conj=np.conj)
    return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)


def is_dh_form(m: ExactMatrix) -> bool:
    if m.shape != (4, 4):
        return False
    return dh_matrix(DHSpinor.from_phi(*m.column(0))) == m

# }}}


# {{{ helicity projectors and the split

@lru_cache(maxsize=None)
def helicity_projectors() -> Tuple[ExactMatrix, ExactMatrix]:
    """P+- = (1 +- gamma_5) / 2"""
    half = GAUSSIAN.half()
    g5 = gamma5()
    return (I4 + g5) * half, (I4 - g5) * half


def helicity_split(phi: ExactMatrix) -> Tuple[ExactMatrix, ExactMatrix]:
    """phi+- = P+- phi gamma_2 gamma_1 for a matrix of Dirac-Hestenes form"""
    if not is_dh_form(phi):
        raise RepresentationError("helicity split needs a matrix of Dirac-Hestenes form")
    p_plus, p_minus = helicity_projectors()
    right = phi @ gamma21()
    return p_plus @ right, p_minus @ right


def split_spinors(phi: ExactMatrix) -> Tuple[Tuple[Any, Any], ...]:
    """psi_1..psi_8: upper halves of the columns of phi+ then phi-"""
    plus, minus = helicity_split(phi)
    return tuple((m[0, j], m[1, j]) for m in (plus, minus) for j in range(4))


def split_spinor_array(phi: np.ndarray) -> np.ndarray:
    """Float version of split_spinors over a field: [..., 4, 4] -> [..., 8, 2]"""
    p_plus, p_minus = (p.to_numpy() for p in helicity_projectors())
    right = np.asarray(phi, dtype=complex) @ gamma21().to_numpy()
    plus = p_plus @ right
    minus = p_minus @ right
    return np.concatenate([np.swapaxes(plus[..., 0:2, :], -1, -2), np.swapaxes(minus[..., 0:2, :], -1, -2)], axis=-2)

# }}}


# {{{ minimal left ideal

@lru_cache(maxsize=None)
def primitive_idempotent_e41() -> ExactMatrix:
    """e41 = (1 + gamma_0)/2 (1 + i gamma_1 gamma_2)/2"""
    basis = gamma_basis()
    half = GAUSSIAN.half()
    left = (I4 + basis.gamma0) * half
    right = (I4 + basis.gamma1 @ basis.gamma2 * _g(0, 1)) * half
    return left @ right


def left_ideal_project(phi: ExactMatrix) -> Tuple[Any, Any, Any, Any]:
    """Column spinor (psi_1..psi_4) of phi e41"""
    if phi.shape != (4, 4):
        raise RepresentationError(f"expected a 4x4 matrix, got {phi.shape}")
    product = phi @ primitive_idempotent_e41()
    return product.column(0)


def field_matrix(f1: Any, f2: Any, f3: Any) -> ExactMatrix:
    """F1 g0g1 + F2 g0g2 + F3 g0g3 = [[0, F.sigma], [F.sigma, 0]]"""
    basis = gamma_basis()
    g0 = basis.gamma0
    return g0 @ basis.gamma1 * f1 + g0 @ basis.gamma2 * f2 + g0 @ basis.gamma3 * f3

# }}}


# {{{ spintensors

def _half_of(x: Any) -> Any:
    if hasattr(x, "x") and hasattr(x, "y"):
        return x * GAUSSIAN.half()
    return x * 0.5


def _i_times(x: Any) -> Any:
    if hasattr(x, "x") and hasattr(x, "y"):
        return x * GAUSSIAN.i
    return x * 1j


def _conj(x: Any) -> Any:
    if hasattr(x, "x") and hasattr(x, "y"):
        return GAUSSIAN.conjugate(x)
    return np.conj(x)


def sym_spintensor(xi: Sequence[Any], eta: Sequence[Any], dotted: bool = False) -> Tuple[Any, Any, Any]:
    """
    Symmetric tensor square components (f00, f01, f11)

    Args:
        xi: 2-spinor
        eta: 2-spinor
        dotted: conjugate both inputs first (the dotted spinor variant)

    Returns:
        (xi0 eta0, (xi0 eta1 + xi1 eta0)/2, xi1 eta1)
    """
    if len(xi) != 2 or len(eta) != 2:
        raise RepresentationError("spintensors are built from 2-component spinors")
    if dotted:
        xi = [_conj(v) for v in xi]
        eta = [_conj(v) for v in eta]
    return xi[0] * eta[0], _half_of(xi[0] * eta[1] + xi[1] * eta[0]), xi[1] * eta[1]


def spintensor_to_vector(f: Sequence[Any]) -> Tuple[Any, Any, Any]:
    """(f00, f01, f11) -> (f00 - f11, i (f00 + f11), -2 f01)"""
    f00, f01, f11 = f
    return f00 - f11, _i_times(f00 + f11), -(f01 + f01)


def vector_to_spintensor(vec: Sequence[Any]) -> Tuple[Any, Any, Any]:
    f1, f2, f3 = vec
    f00 = _half_of(f1 - _i_times(f2))
    f11 = _half_of(-f1 - _i_times(f2))
    f01 = -_half_of(f3)
    return f00, f01, f11

# }}}


# {{{ momentum space

def _exact(value: Union[Rational, str]) -> Fraction:
    if isinstance(value, str):
        return parse_fraction(value)
    return Fraction(value)


def dirac_operator_symbol(k: Sequence[Rational], omega: Rational) -> ExactMatrix:
    """omega gamma_0 - sum_i k_i Gamma_i"""
    basis = gamma_basis()
    acc = basis.gamma0 * _g(_exact(omega))
    for i, ki in enumerate(k, start=1):
        acc = acc - basis.gamma(i) * _g(_exact(ki))
    return acc


def null_momentum_spinors(k: Sequence[Rational], omega: Rational, mass: Rational = 0) -> List[DHSpinor]:
    """
    Exact basis of Dirac-Hestenes amplitudes phi with K phi + m phi gamma_0 = 0

    K is dirac_operator_symbol(k, omega). A plane wave phi R(theta) built from
    any such amplitude solves the Dirac-Hestenes equation with mass m.

    Raises:
        PlaneWaveError: off-shell momentum, negative mass or a zero mode
    """
    k = [_exact(v) for v in k]
    omega, mass = _exact(omega), _exact(mass)
    if len(k) != 3:
        raise PlaneWaveError(f"wavevector needs 3 components, got {len(k)}")
    if mass < 0:
        raise PlaneWaveError(f"mass must be non-negative, got {mass}")
    if omega * omega != sum(v * v for v in k) + mass * mass:
        raise PlaneWaveError(f"omega^2 = {omega * omega} is not |k|^2 + m^2 = {sum(v * v for v in k) + mass * mass}")
    if omega == 0:
        raise PlaneWaveError("zero-frequency mode has no propagating solution")

    operator = dirac_operator_symbol(k, omega)
    g0 = gamma_basis().gamma0
    m = _g(mass)
    columns = []
    units = [DHSpinor(*[1 if j == i else 0 for j in range(8)]) for i in range(8)]
    for unit in units:
        b = dh_matrix(unit)
        image = operator @ b + b @ g0 * m
        column = []
        for v in (x for r in image.rows for x in r):
            re, im = GAUSSIAN.parts(v)
            column.extend([sympy.Rational(re.numerator, re.denominator), sympy.Rational(im.numerator, im.denominator)])
        columns.append(column)
    system = sympy.Matrix(columns).T
    basis = system.nullspace()
    log.debug("null space of the momentum-space operator: dimension %d", len(basis))
    spinors = []
    for vec in basis:
        coeffs = [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in vec]
        spinors.append(DHSpinor(*coeffs))
    if not spinors:
        raise PlaneWaveError(f"no Dirac-Hestenes mode for k={k}, omega={omega}, m={mass}")
    return spinors

# }}}
