"""
Representation suite
Gamma basis, Dirac-Hestenes matrices, helicity projectors and the left ideal
"""
from fractions import Fraction

import numpy as np

from helicity_algebra.algebra import C3, CL13, Multivector, random_multivector
from helicity_algebra.coefficients import GAUSSIAN
from helicity_algebra.decomposition import central_idempotents
from helicity_algebra.matrices import (
    I2,
    I4,
    SIGMAS,
    DHSpinor,
    ExactMatrix,
    dh_matrix,
    even_embedding,
    gamma5,
    gamma_basis,
    gamma_rep,
    helicity_projectors,
    left_ideal_project,
    null_momentum_spinors,
    pauli_rep,
    primitive_idempotent_e41,
    spintensor_to_vector,
    split_spinors,
    sym_spintensor,
    vector_to_spintensor,
)
from helicity_algebra.registry import invariant

NULL_MOMENTA = ((0, 0, 1), (3, 4, 0), (1, 2, 2))

_METRIC = (1, -1, -1, -1)


@invariant(suite="rep")
def gamma_anticommutators(rng, settings):
    """
    {gamma_mu, gamma_nu} = 2 eta_mu_nu I, gamma_5^2 = I, gamma_5 anticommutes with every gamma_mu,
    and gamma_rep is multiplicative on every pair of basis blades
    """
    basis = gamma_basis()
    for mu in range(4):
        for nu in range(mu, 4):
            expected = I4 * (2 * _METRIC[mu]) if mu == nu else ExactMatrix.zeros(4)
            if basis.anticommutator(mu, nu) != expected:
                return False, f"anticommutator ({mu}, {nu}) is wrong"
    g5 = gamma5()
    if g5 @ g5 != I4:
        return False, "gamma_5^2 != I"
    if any(not (g5 @ basis.gamma(mu) + basis.gamma(mu) @ g5).is_zero() for mu in range(4)):
        return False, "gamma_5 does not anticommute with the gamma basis"
    for a in range(16):
        for b in range(16):
            x, y = Multivector(CL13, {a: 1}), Multivector(CL13, {b: 1})
            if gamma_rep(x * y) != gamma_rep(x) @ gamma_rep(y):
                return False, f"gamma_rep not multiplicative on blades {a:b}, {b:b}"
    for _ in range(10):
        x, y = random_multivector(C3, rng), random_multivector(C3, rng)
        if pauli_rep(x * y) != pauli_rep(x) @ pauli_rep(y):
            return False, "pauli_rep not multiplicative"
    return True


@invariant(suite="rep")
def dh_matrix_matches_gamma_rep(rng, settings):
    """Closed-form Dirac-Hestenes matrix equals the gamma image of the even element, 100 draws"""
    for _ in range(100):
        spinor = DHSpinor.random(rng)
        if dh_matrix(spinor) != gamma_rep(spinor.to_multivector()):
            return False, f"mismatch for {spinor.as_tuple()}"
    for _ in range(20):
        x = random_multivector(CL13, rng)
        even = x.grade(0) + x.grade(2) + x.grade(4)
        if even.reverse() != even.reverse().involute():
            return False, "reversion and its starred form differ on an even element"
    return True


@invariant(suite="rep")
def e41_primitive(rng, settings):
    """e41 is an idempotent of rank 1 and trace 1"""
    e41 = primitive_idempotent_e41()
    if e41 @ e41 != e41:
        return False, "e41^2 != e41"
    if e41.rank() != 1 or e41.trace() != GAUSSIAN.one:
        return False, f"rank {e41.rank()}, trace {e41.trace()}"
    return True


@invariant(suite="rep")
def minimal_ideal_single_column(rng, settings):
    """phi e41 has only its first column nonzero for 100 random spinor matrices"""
    e41 = primitive_idempotent_e41()
    for _ in range(100):
        phi = dh_matrix(DHSpinor.random(rng))
        cols = (phi @ e41).nonzero_columns()
        if cols not in ([], [0]):
            return False, f"nonzero columns {cols}"
        if tuple((phi @ e41).column(0)) != left_ideal_project(phi):
            return False, "left_ideal_project disagrees with phi e41"
    return True


@invariant(suite="rep")
def helicity_split_weyl(rng, settings):
    """
    P+- are complementary projectors covering lambda+- of C3, and the split
    of every null-momentum mode satisfies (omega +- sigma.k) psi = 0
    """
    p_plus, p_minus = helicity_projectors()
    if p_plus @ p_plus != p_plus or p_minus @ p_minus != p_minus:
        return False, "P+- are not idempotent"
    if not (p_plus @ p_minus).is_zero() or p_plus + p_minus != I4:
        return False, "P+- are not complementary"
    if p_plus.rank() != 2:
        return False, f"rank P+ = {p_plus.rank()}"
    pair = central_idempotents(3)
    covered = (gamma_rep(even_embedding(pair.lambda_plus)), gamma_rep(even_embedding(pair.lambda_minus)))
    if covered != (p_plus, p_minus):
        return False, "P+- do not cover the central idempotents of C3"

    for k in NULL_MOMENTA:
        omega = Fraction(int(round(float(np.linalg.norm(k)))))
        sigma_k = sum((s * ki for s, ki in zip(SIGMAS[1:], k[1:])), SIGMAS[0] * k[0])
        plus_op, minus_op = I2 * omega + sigma_k, I2 * omega - sigma_k
        for spinor in null_momentum_spinors(k, omega):
            psi = split_spinors(dh_matrix(spinor))
            for j, (top, bottom) in enumerate(psi):
                op = plus_op if j < 4 else minus_op
                if not (op @ ExactMatrix([[top], [bottom]])).is_zero():
                    return False, f"psi_{j + 1} of k={k} violates its Weyl relation"
    return True


@invariant(suite="rep")
def spintensor_round_trip(rng, settings):
    """vector_to_spintensor inverts spintensor_to_vector and sym_spintensor is bilinear"""
    for _ in range(20):
        xi = rng.normal(size=2) + 1j * rng.normal(size=2)
        eta = rng.normal(size=2) + 1j * rng.normal(size=2)
        zeta = rng.normal(size=2) + 1j * rng.normal(size=2)
        c = complex(rng.normal(), rng.normal())
        f = np.array(sym_spintensor(xi, eta))
        if not np.allclose(vector_to_spintensor(spintensor_to_vector(f)), f, atol=settings.tolerance):
            return False, "spintensor round trip"
        lhs = np.array(sym_spintensor(xi, c * eta + zeta))
        rhs = c * f + np.array(sym_spintensor(xi, zeta))
        if not np.allclose(lhs, rhs, atol=settings.tolerance):
            return False, "sym_spintensor is not linear in its second argument"
    return True
