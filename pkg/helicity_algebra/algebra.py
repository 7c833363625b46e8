"""
Blade arithmetic for complex algebras C_n and real algebras Cl(p,q)
Blades are bitmasks: bit (i-1) set means generator e_i is present, so the
canonical ascending order is implicit and the scalar blade is 0.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Any, Callable, Dict, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .coefficients import GAUSSIAN, CoefficientRing
from .config import get_settings
from .errors import DimensionError, RingMismatchError, SignatureMismatchError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Signature:
    """
    Algebra descriptor

    Generators e_1..e_p square to +1 and e_{p+1}..e_{p+q} square to -1.
    A complexified algebra C_n is stored as (n, 0, complexified=True).
    """
    p: int
    q: int = 0
    complexified: bool = False

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise DimensionError(f"p and q must be non-negative, got ({self.p}, {self.q})")
        cap = get_settings().max_generators
        if self.p + self.q > cap:
            raise DimensionError(f"p + q = {self.p + self.q} exceeds the generator cap {cap}")
        if self.complexified and self.q:
            raise DimensionError("complexified algebras are stored with q = 0")

    @classmethod
    def complex(cls, n: int) -> "Signature":
        return cls(n, 0, True)

    @classmethod
    def real(cls, p: int, q: int = 0) -> "Signature":
        return cls(p, q, False)

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def dimension(self) -> int:
        return 1 << self.n

    def square(self, index: int) -> int:
        """Square of generator e_index (1-based)"""
        if not 1 <= index <= self.n:
            raise DimensionError(f"generator e{index} outside 1..{self.n}")
        return 1 if index <= self.p else -1

    @property
    def label(self) -> str:
        return f"C{self.n}" if self.complexified else f"Cl({self.p},{self.q})"

    def __str__(self) -> str:
        return self.label


C3 = Signature.complex(3)
C5 = Signature.complex(5)
CL30 = Signature.real(3, 0)
CL13 = Signature.real(1, 3)
CL41 = Signature.real(4, 1)


# {{{ blades

def blade(*indices: int) -> int:
    """
    Bitmask of the canonical blade e_i e_j ... (indices strictly ascending)

    The index 0 alone denotes the scalar unit (the e0 of Cl(3,0)).
    """
    if indices == (0,):
        return 0
    mask = 0
    previous = 0
    for index in indices:
        if index <= previous:
            raise DimensionError(f"blade indices must be positive and strictly ascending: {indices}")
        mask |= 1 << (index - 1)
        previous = index
    return mask


def blade_indices(mask: int) -> Tuple[int, ...]:
    out = []
    index = 1
    while mask:
        if mask & 1:
            out.append(index)
        mask >>= 1
        index += 1
    return tuple(out)


def blade_grade(mask: int) -> int:
    return mask.bit_count()


def blade_name(mask: int) -> str:
    if not mask:
        return "1"
    return "".join(f"e{i}" for i in blade_indices(mask))


def canonical_reordering_sign(a_bits: int, b_bits: int) -> int:
    """Sign from the transpositions that bring the concatenation a b into canonical order"""
    a_bits >>= 1
    s = 0
    while a_bits:
        s += (a_bits & b_bits).bit_count()
        a_bits >>= 1
    return -1 if s & 1 else 1


@lru_cache(maxsize=None)
def blade_product(signature: Signature, a: int, b: int) -> Tuple[int, int]:
    """
    Product of two basis blades

    Returns:
        (sign, blade) with sign in {+1, -1}
    """
    sign = canonical_reordering_sign(a, b)
    shared = (a & b) >> signature.p
    if shared.bit_count() & 1:
        sign = -sign
    return sign, a ^ b


def _sort_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    return blade_grade(mask), blade_indices(mask)

# }}}


class Multivector:
    """
    Sparse multivector: blade bitmask -> coefficient in a pluggable ring

    Values are immutable; every operation returns a new multivector.
    """

    __slots__ = ("signature", "ring", "_terms")

    def __init__(
        self,
        signature: Signature,
        terms: Optional[Mapping[int, Any]] = None,
        ring: CoefficientRing = GAUSSIAN,
    ):
        self.signature = signature
        self.ring = ring
        limit = 1 << signature.n
        clean: Dict[int, Any] = {}
        for mask, value in (terms or {}).items():
            if not 0 <= mask < limit:
                raise DimensionError(f"blade {blade_indices(mask)} is not in {signature}")
            value = ring.coerce(value)
            if not ring.is_zero(value):
                clean[mask] = value
        self._terms = clean

    @classmethod
    def _raw(cls, signature: Signature, terms: Dict[int, Any], ring: CoefficientRing) -> "Multivector":
        obj = cls.__new__(cls)
        obj.signature = signature
        obj.ring = ring
        obj._terms = {m: c for m, c in terms.items() if not ring.is_zero(c)}
        return obj

    # {{{ constructors

    @classmethod
    def zero(cls, signature: Signature, ring: CoefficientRing = GAUSSIAN) -> "Multivector":
        return cls._raw(signature, {}, ring)

    @classmethod
    def scalar(cls, signature: Signature, value: Any = 1, ring: CoefficientRing = GAUSSIAN) -> "Multivector":
        return cls(signature, {0: value}, ring)

    @classmethod
    def generator(
        cls, signature: Signature, index: int, value: Any = 1, ring: CoefficientRing = GAUSSIAN
    ) -> "Multivector":
        signature.square(index)
        return cls(signature, {blade(index): value}, ring)

    @classmethod
    def from_blade(
        cls, signature: Signature, indices: Sequence[int], value: Any = 1, ring: CoefficientRing = GAUSSIAN
    ) -> "Multivector":
        return cls(signature, {blade(*indices): value}, ring)

    # }}}

    @property
    def terms(self) -> Mapping[int, Any]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> Tuple[Tuple[int, Any], ...]:
        return tuple((m, self._terms[m]) for m in sorted(self._terms, key=_sort_key))

    def coefficient(self, mask: int) -> Any:
        return self._terms.get(mask, self.ring.zero)

    def scalar_part(self) -> Any:
        return self.coefficient(0)

    def grades(self) -> Tuple[int, ...]:
        return tuple(sorted({blade_grade(m) for m in self._terms}))

    def is_zero(self) -> bool:
        return not self._terms

    def _check_compatible(self, other: "Multivector") -> None:
        if self.signature != other.signature:
            raise SignatureMismatchError(f"cannot combine {self.signature} with {other.signature}")
        if self.ring is not other.ring:
            raise RingMismatchError(f"cannot combine {self.ring.name} with {other.ring.name} coefficients")

    def _lift(self, value: Any) -> "Multivector":
        if isinstance(value, Multivector):
            return value
        return Multivector.scalar(self.signature, value, self.ring)

    # {{{ arithmetic

    def __add__(self, other: Any) -> "Multivector":
        other = self._lift(other)
        self._check_compatible(other)
        out = dict(self._terms)
        for mask, value in other._terms.items():
            out[mask] = out[mask] + value if mask in out else value
        return Multivector._raw(self.signature, out, self.ring)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector._raw(self.signature, {m: -c for m, c in self._terms.items()}, self.ring)

    def __sub__(self, other: Any) -> "Multivector":
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> "Multivector":
        return self._lift(other) - self

    def __mul__(self, other: Any) -> "Multivector":
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        value = self.ring.coerce(other)
        return Multivector._raw(self.signature, {m: c * value for m, c in self._terms.items()}, self.ring)

    def __rmul__(self, other: Any) -> "Multivector":
        value = self.ring.coerce(other)
        return Multivector._raw(self.signature, {m: value * c for m, c in self._terms.items()}, self.ring)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return (
            self.signature == other.signature
            and self.ring is other.ring
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.signature, self.ring.name, frozenset(self._terms.items())))

    # }}}

    # {{{ shorthands

    def grade(self, k: int) -> "Multivector":
        return grade_project(self, k)

    def reverse(self) -> "Multivector":
        return reversion(self)

    def involute(self) -> "Multivector":
        return grade_involution(self)

    def conjugate(self) -> "Multivector":
        return pseudo_conjugate(self)

    # }}}

    def __repr__(self) -> str:
        return f"Multivector({self.signature.label}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        fmt = getattr(self.ring, "format", str)
        parts = []
        for mask, value in self.sorted_terms():
            text = fmt(value)
            parts.append(text if not mask else f"{text}*{blade_name(mask)}")
        return " + ".join(parts)


# {{{ operations

def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    """
    Geometric product

    Bilinear and associative; the sign of each blade pair comes from
    canonical_reordering_sign and the squares of shared generators.
    Coefficients are multiplied left-to-right (a's coefficient first).
    """
    a._check_compatible(b)
    sig = a.signature
    out: Dict[int, Any] = {}
    for am, ac in a._terms.items():
        for bm, bc in b._terms.items():
            sign, mask = blade_product(sig, am, bm)
            value = ac * bc
            if sign < 0:
                value = -value
            out[mask] = out[mask] + value if mask in out else value
    return Multivector._raw(sig, out, a.ring)


def _grade_signed(a: Multivector, sign_of: Callable[[int], int]) -> Multivector:
    out = {}
    for mask, value in a._terms.items():
        out[mask] = value if sign_of(blade_grade(mask)) > 0 else -value
    return Multivector._raw(a.signature, out, a.ring)


def reversion(a: Multivector) -> Multivector:
    """Grade-k part times (-1)^(k(k-1)/2)"""
    return _grade_signed(a, lambda k: -1 if (k * (k - 1) // 2) % 2 else 1)


def grade_involution(a: Multivector) -> Multivector:
    """Grade-k part times (-1)^k"""
    return _grade_signed(a, lambda k: -1 if k % 2 else 1)


def clifford_conjugate(a: Multivector) -> Multivector:
    """Composition of grade involution and reversion"""
    return grade_involution(reversion(a))


def pseudo_conjugate(a: Multivector) -> Multivector:
    """Complex-conjugate every coefficient, blades unchanged (charge conjugation)"""
    conj = a.ring.conjugate
    return Multivector._raw(a.signature, {m: conj(c) for m, c in a._terms.items()}, a.ring)


def volume_element(signature: Signature, ring: CoefficientRing = GAUSSIAN) -> Multivector:
    """omega = e_1 e_2 ... e_n"""
    return Multivector._raw(signature, {(1 << signature.n) - 1: ring.one}, ring)


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.signature.n:
        raise DimensionError(f"grade {k} outside 0..{a.signature.n}")
    return Multivector._raw(
        a.signature, {m: c for m, c in a._terms.items() if blade_grade(m) == k}, a.ring
    )


def commutator(a: Multivector, b: Multivector) -> Multivector:
    return a * b - b * a


class RealClass(NamedTuple):
    residue: int
    tag: str


_REAL_TAGS = {0: "real", 2: "real", 4: "quaternionic", 6: "quaternionic",
              1: "quotient", 5: "quotient", 3: "other", 7: "other"}


def classify_real(p: int, q: int) -> RealClass:
    """(p - q) mod 8 and its class tag"""
    if p < 0 or q < 0:
        raise DimensionError(f"p and q must be non-negative, got ({p}, {q})")
    residue = (p - q) % 8
    return RealClass(residue, _REAL_TAGS[residue])


def random_multivector(
    signature: Signature,
    rng: np.random.Generator,
    density: float = 1.0,
    real: bool = False,
) -> Multivector:
    """Random exact multivector; each blade is present with probability `density`"""
    terms = {}
    for mask in range(1 << signature.n):
        if density >= 1.0 or rng.random() < density:
            terms[mask] = GAUSSIAN.sample_real(rng) if real else GAUSSIAN.sample(rng)
    return Multivector(signature, terms, GAUSSIAN)

# }}}


# {{{ central form of Cl(3,0)

@dataclass(frozen=True)
class CentralForm:
    """
    An element of Cl(3,0) (or C3) written as sum_i (a_i + omega b_i) e_i

    Index 0 stands for the scalar unit; `pairs[i] = (a_i, b_i)`.
    Uses omega e1 = e2e3, omega e2 = e3e1, omega e3 = e1e2, omega e0 = e1e2e3.
    """
    signature: Signature
    ring: CoefficientRing
    pairs: Tuple[Tuple[Any, Any], ...]

    def expand(self) -> Multivector:
        sig, ring = self.signature, self.ring
        omega = volume_element(sig, ring)
        acc = Multivector.zero(sig, ring)
        for index, (plain, paired) in enumerate(self.pairs):
            unit = Multivector.scalar(sig, ring.one, ring) if index == 0 else Multivector.generator(
                sig, index, ring.one, ring
            )
            coeff = Multivector.scalar(sig, plain, ring) + omega * Multivector.scalar(sig, paired, ring)
            acc = acc + coeff * unit
        return acc

    def reverse(self) -> "CentralForm":
        """Reversion fixes every a_i and negates every omega-paired b_i"""
        return CentralForm(self.signature, self.ring, tuple((a, -b) for a, b in self.pairs))


_CENTRAL_PARTNERS = {0: (blade(1, 2, 3), 1), 1: (blade(2, 3), 1), 2: (blade(1, 3), -1), 3: (blade(1, 2), 1)}


def central_form(x: Multivector) -> CentralForm:
    """Rewrite a three-generator element in the (a + omega b) e_i layout"""
    if x.signature.n != 3 or x.signature.q:
        raise SignatureMismatchError(f"central form needs Cl(3,0) or C3, got {x.signature}")
    pairs = []
    for index in range(4):
        plain = x.coefficient(0 if index == 0 else blade(index))
        mask, sign = _CENTRAL_PARTNERS[index]
        paired = x.coefficient(mask)
        pairs.append((plain, paired if sign > 0 else -paired))
    return CentralForm(x.signature, x.ring, tuple(pairs))

# }}}


def to_ring(x: Multivector, ring: CoefficientRing) -> Multivector:
    """Re-express the coefficients of `x` in another ring (e.g. exact -> float)"""
    if x.ring is ring:
        return x
    return Multivector(x.signature, {m: ring.coerce(c) for m, c in x.terms.items()}, ring)
