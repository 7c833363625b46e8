"""
Invariant suites for helicity-algebra
Each module holds the @invariant functions of one suite
"""
from helicity_algebra.checks.algebra import (
    associativity,
    central_form_reversion,
    conjugation_swap_rule,
    idempotent_laws,
    ideal_rank_halving,
    involution_laws,
    omega_square_sign,
    quotient_homomorphism,
    volume_element_center,
)
from helicity_algebra.checks.rep import (
    dh_matrix_matches_gamma_rep,
    gamma_anticommutators,
    helicity_split_weyl,
    minimal_ideal_single_column,
    e41_primitive,
    spintensor_round_trip,
)
from helicity_algebra.checks.field import (
    chirality_separation,
    composite_photon_identity,
    constant_potential_vanishes,
    dh_null_momentum_modes,
    maxwell_plane_wave_convergence,
)

__all__ = [
    "associativity",
    "central_form_reversion",
    "conjugation_swap_rule",
    "idempotent_laws",
    "ideal_rank_halving",
    "involution_laws",
    "omega_square_sign",
    "quotient_homomorphism",
    "volume_element_center",
    "dh_matrix_matches_gamma_rep",
    "gamma_anticommutators",
    "helicity_split_weyl",
    "minimal_ideal_single_column",
    "e41_primitive",
    "spintensor_round_trip",
    "chirality_separation",
    "composite_photon_identity",
    "constant_potential_vanishes",
    "dh_null_momentum_modes",
    "maxwell_plane_wave_convergence",
]
