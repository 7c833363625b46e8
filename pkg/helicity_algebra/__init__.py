"""
Helicity Algebra - Clifford-algebra kernel for helicity idempotents and field checks
"""

from .algebra import Multivector, Signature, blade, geometric_product, reversion, volume_element
from .coefficients import FLOAT, GAUSSIAN
from .config import Settings, get_settings
from .decomposition import central_idempotents, decompose, quotient_map
from .errors import HelicityAlgebraError
from .matrices import DHSpinor, ExactMatrix, dh_matrix, gamma_rep, helicity_split, pauli_rep
from .registry import Invariant, InvariantRegistry, default_registry, invariant
from .symbolic import FORMAL, FormalSum, nabla_F_product, nabla_product

__all__ = [
    "Multivector",
    "Signature",
    "blade",
    "geometric_product",
    "reversion",
    "volume_element",
    "FLOAT",
    "GAUSSIAN",
    "FORMAL",
    "FormalSum",
    "nabla_product",
    "nabla_F_product",
    "Settings",
    "get_settings",
    "central_idempotents",
    "decompose",
    "quotient_map",
    "HelicityAlgebraError",
    "DHSpinor",
    "ExactMatrix",
    "dh_matrix",
    "gamma_rep",
    "helicity_split",
    "pauli_rep",
    "Invariant",
    "InvariantRegistry",
    "default_registry",
    "invariant",
]

__version__ = "0.1.0"
