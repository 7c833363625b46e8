"""
Exception hierarchy
Every error raised on purpose by the package derives from HelicityAlgebraError
"""


class HelicityAlgebraError(ValueError):
    """Base class for all package errors"""


class ConfigurationError(HelicityAlgebraError):
    """Invalid settings or environment values"""


class DimensionError(HelicityAlgebraError):
    """Generator index or algebra dimension out of range"""


class SignatureMismatchError(HelicityAlgebraError):
    """Operands live in different algebras"""


class RingMismatchError(HelicityAlgebraError):
    """Operands use different coefficient rings"""


class ParityError(HelicityAlgebraError):
    """An odd-dimensional algebra was required"""


class IdealMembershipError(HelicityAlgebraError):
    """Element does not lie in the requested ideal"""


class SymbolicError(HelicityAlgebraError):
    """Unsupported operation on formal sums"""


class RepresentationError(HelicityAlgebraError):
    """Element cannot be mapped by the requested matrix representation"""


class GridError(HelicityAlgebraError):
    """Malformed or undersized field grid"""


class PlaneWaveError(HelicityAlgebraError):
    """Plane-wave parameters violate the dispersion or transversality rules"""


class SerializationError(HelicityAlgebraError):
    """Malformed JSON document or grid file"""
