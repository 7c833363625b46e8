"""
Formal coefficients for operator expansions
A FormalSum is a linear combination of derivative tokens with Gaussian-rational
weights; it plugs into the multivector kernel as a coefficient ring.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Any, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .algebra import CL30, Multivector, blade, reversion, volume_element
from .coefficients import GAUSSIAN, CoefficientRing, format_fraction
from .errors import RingMismatchError, SymbolicError
from .matrices import gamma21, helicity_projectors, matmul_rows

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Token:
    """
    d<mu><Sym><nu> building block

    An operator token has only `derivative`, a field token only `symbol`
    (and usually `component`), an applied token has both. The token with
    neither is the unit that carries constants.
    """
    derivative: Optional[int] = None
    symbol: Optional[str] = None
    component: Optional[int] = None
    conjugate: bool = False

    def __post_init__(self):
        if self.derivative is not None and not 0 <= self.derivative <= 3:
            raise SymbolicError(f"derivative index {self.derivative} outside 0..3")
        if self.symbol is None and (self.component is not None or self.conjugate):
            raise SymbolicError("component and conjugate flags need a field symbol")

    @property
    def kind(self) -> str:
        if self.symbol is None:
            return "unit" if self.derivative is None else "operator"
        return "field" if self.derivative is None else "applied"

    def sort_key(self) -> Tuple[int, int, str, int, bool]:
        return (
            0 if self.derivative is None else 1,
            self.derivative or 0,
            self.symbol or "",
            -1 if self.component is None else self.component,
            self.conjugate,
        )

    def conjugated(self) -> "Token":
        if self.symbol is None:
            return self
        return Token(self.derivative, self.symbol, self.component, not self.conjugate)

    def __mul__(self, other: "Token") -> "Token":
        if self.kind == "unit":
            return other
        if other.kind == "unit":
            return self
        if self.kind == "operator" and other.kind == "field":
            return Token(self.derivative, other.symbol, other.component, other.conjugate)
        raise SymbolicError(f"product {self} * {other} is not a first-order expansion term")

    def __str__(self) -> str:
        if self.kind == "unit":
            return "1"
        out = "" if self.derivative is None else f"d{self.derivative}"
        if self.symbol is not None:
            out += self.symbol + ("" if self.component is None else str(self.component))
            if self.conjugate:
                out += "*"
        return out

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"d": self.derivative, "sym": self.symbol, "c": self.component}
        if self.conjugate:
            out["conj"] = True
        return out


UNIT = Token()


class FormalSum:
    """Immutable mapping Token -> Gaussian rational with no zero entries"""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Token, Any]] = None):
        clean = {}
        for tok, value in (terms or {}).items():
            value = GAUSSIAN.coerce(value)
            if not GAUSSIAN.is_zero(value):
                clean[tok] = value
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def token(cls, tok: Token, value: Any = 1) -> "FormalSum":
        return cls({tok: value})

    @classmethod
    def constant(cls, value: Any) -> "FormalSum":
        return cls({UNIT: value})

    @classmethod
    def field(cls, symbol: str, component: Optional[int] = None, conjugate: bool = False) -> "FormalSum":
        return cls.token(Token(None, symbol, component, conjugate))

    @classmethod
    def operator(cls, mu: int) -> "FormalSum":
        return cls.token(Token(derivative=mu))

    @property
    def terms(self) -> Mapping[Token, Any]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> List[Tuple[Token, Any]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: Any) -> "FormalSum":
        other = _as_formal(other)
        out = dict(self._terms)
        for tok, value in other._terms.items():
            out[tok] = out[tok] + value if tok in out else value
        return FormalSum(out)

    __radd__ = __add__

    def __neg__(self) -> "FormalSum":
        return FormalSum({t: -v for t, v in self._terms.items()})

    def __sub__(self, other: Any) -> "FormalSum":
        return self + (-_as_formal(other))

    def __rsub__(self, other: Any) -> "FormalSum":
        return _as_formal(other) - self

    def __mul__(self, other: Any) -> "FormalSum":
        other = _as_formal(other)
        out: Dict[Token, Any] = {}
        for ta, va in self._terms.items():
            for tb, vb in other._terms.items():
                tok = ta * tb
                value = va * vb
                out[tok] = out[tok] + value if tok in out else value
        return FormalSum(out)

    def __rmul__(self, other: Any) -> "FormalSum":
        return _as_formal(other) * self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FormalSum):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def conjugate(self) -> "FormalSum":
        return FormalSum({t.conjugated(): GAUSSIAN.conjugate(v) for t, v in self._terms.items()})

    def render(self) -> str:
        """Display form, e.g. 'd1A2 - d2A1'"""
        if not self._terms:
            return "0"
        out = ""
        for index, (tok, value) in enumerate(self.sorted_terms()):
            re, im = GAUSSIAN.parts(value)
            negative = (im == 0 and re < 0) or (re == 0 and im < 0)
            if negative:
                value = -value
            weight = GAUSSIAN.format(value)
            if tok == UNIT:
                body = weight
            elif weight == "1":
                body = str(tok)
            else:
                body = f"{weight}*{tok}"
            if index == 0:
                out = f"-{body}" if negative else body
            else:
                out += f" - {body}" if negative else f" + {body}"
        return out

    def to_json(self) -> List[Dict[str, Any]]:
        out = []
        for tok, value in self.sorted_terms():
            re, im = GAUSSIAN.parts(value)
            out.append({"token": tok.to_json(), "re": format_fraction(re), "im": format_fraction(im)})
        return out

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"FormalSum({self.render()})"


def _as_formal(value: Any) -> FormalSum:
    if isinstance(value, FormalSum):
        return value
    try:
        return FormalSum.constant(GAUSSIAN.coerce(value))
    except RingMismatchError:
        raise SymbolicError(f"cannot use {value!r} as a formal coefficient") from None


class FormalSumRing(CoefficientRing):
    """Coefficient ring of FormalSums; conjugation also flips field tokens to their conjugates"""

    name = "formal"
    exact = True

    @property
    def zero(self) -> FormalSum:
        return FormalSum()

    @property
    def one(self) -> FormalSum:
        return FormalSum.constant(1)

    def from_parts(self, re, im=0) -> FormalSum:
        return FormalSum.constant(GAUSSIAN.from_parts(re, im))

    def conjugate(self, x: FormalSum) -> FormalSum:
        return x.conjugate()

    def is_zero(self, x: FormalSum) -> bool:
        return x.is_zero()

    def coerce(self, value: Any) -> FormalSum:
        return _as_formal(value)

    def format(self, x: FormalSum) -> str:
        return f"({x.render()})"


FORMAL = FormalSumRing()


# {{{ expansions in Cl(3,0)

def _vector(coeffs: Sequence[FormalSum]) -> Multivector:
    """c0 + c1 e1 + c2 e2 + c3 e3 with e0 read as the scalar unit"""
    return Multivector(CL30, {(0 if i == 0 else blade(i)): c for i, c in enumerate(coeffs)}, FORMAL)


def nabla() -> Multivector:
    return _vector([FormalSum.operator(mu) for mu in range(4)])


def four_vector(symbol: str) -> Multivector:
    return _vector([FormalSum.field(symbol, nu) for nu in range(4)])


def nabla_product(symbol: str = "A") -> Multivector:
    """(d0 + d1 e1 + d2 e2 + d3 e3)(X0 + X1 e1 + X2 e2 + X3 e3) over formal coefficients"""
    if not symbol or not symbol.isalpha():
        raise SymbolicError(f"field symbol must be alphabetic, got {symbol!r}")
    return nabla() * four_vector(symbol)


def lorentz_gauge(nabla_a: Multivector) -> Multivector:
    """Drop the scalar part (imposes d0A0 + div A = 0)"""
    return Multivector(
        nabla_a.signature, {m: c for m, c in nabla_a.terms.items() if m != 0}, nabla_a.ring
    )


def rs_field(e_symbol: str = "E", h_symbol: str = "H") -> Multivector:
    """F = sum_i (E^i + omega H^i) e_i"""
    omega = volume_element(CL30, FORMAL)
    acc = Multivector.zero(CL30, FORMAL)
    for i in (1, 2, 3):
        ei = Multivector.generator(CL30, i, FORMAL.one, FORMAL)
        acc = acc + ei * FormalSum.field(e_symbol, i) + omega * ei * FormalSum.field(h_symbol, i)
    return acc


def nabla_F_product() -> Multivector:
    return nabla() * rs_field()


@dataclass(frozen=True)
class RSForm:
    """
    Expansion written as sum_i (E^i + omega H^i) e_i

    `electric[i]` multiplies e_i and `magnetic[i]` multiplies omega e_i.
    """
    electric: Tuple[FormalSum, FormalSum, FormalSum]
    magnetic: Tuple[FormalSum, FormalSum, FormalSum]

    def expand(self) -> Multivector:
        omega = volume_element(CL30, FORMAL)
        acc = Multivector.zero(CL30, FORMAL)
        for i in (1, 2, 3):
            ei = Multivector.generator(CL30, i, FORMAL.one, FORMAL)
            acc = acc + ei * self.electric[i - 1] + omega * ei * self.magnetic[i - 1]
        return acc

    def reverse(self) -> "RSForm":
        """Reversion keeps every E group and flips every omega-paired H group"""
        return RSForm(self.electric, tuple(-h for h in self.magnetic))


# omega e1 = e2e3, omega e2 = e3e1 = -e1e3, omega e3 = e1e2
_OMEGA_PARTNERS = ((blade(2, 3), 1), (blade(1, 3), -1), (blade(1, 2), 1))


def riemann_silberstein_form(nabla_a: Multivector) -> RSForm:
    """
    Rewrite bivector terms through omega e_i = e_j e_k

    Returns the grouped view sum_i (E^i + omega H^i) e_i. Its expand() is the
    formal Cl(3,0) multivector again, equal to `nabla_a` term for term.

    Raises:
        SymbolicError: scalar part present (Lorentz condition not imposed)
            or grades other than 1 and 2
    """
    if nabla_a.ring is not FORMAL or nabla_a.signature != CL30:
        raise SymbolicError("expected a formal Cl(3,0) expansion")
    if not nabla_a.scalar_part().is_zero():
        raise SymbolicError(f"scalar part {nabla_a.scalar_part()} is nonzero; impose the Lorentz condition first")
    if any(g not in (1, 2) for g in nabla_a.grades()):
        raise SymbolicError(f"grades {nabla_a.grades()} do not fit the (E + omega H) e_i layout")
    electric = tuple(nabla_a.coefficient(blade(i)) for i in (1, 2, 3))
    magnetic = tuple(
        nabla_a.coefficient(mask) if sign > 0 else -nabla_a.coefficient(mask) for mask, sign in _OMEGA_PARTNERS
    )
    return RSForm(electric, magnetic)


def reverse_rs_form(form: RSForm) -> Multivector:
    """Reversion applied to the expanded (E + omega H) e_i element"""
    return reversion(form.expand())

# }}}


# {{{ labeled groups

class Group(NamedTuple):
    blade: str
    label: str
    expression: FormalSum


# (printed blade, mask, sign folded into the printed orientation)
_PRINTED = (
    ("e0", 0, 1),
    ("e1", blade(1), 1),
    ("e2", blade(2), 1),
    ("e3", blade(3), 1),
    ("e2e3", blade(2, 3), 1),
    ("e3e1", blade(1, 3), -1),
    ("e1e2", blade(1, 2), 1),
    ("e1e2e3", blade(1, 2, 3), 1),
)

NABLA_A_LABELS = ("Lorentz", "E1", "E2", "E3", "H1", "H2", "H3", "zero")
NABLA_F_LABELS = (
    "divE",
    "d0E1-curlH1",
    "d0E2-curlH2",
    "d0E3-curlH3",
    "curlE1+d0H1",
    "curlE2+d0H2",
    "curlE3+d0H3",
    "divH",
)


def labeled_groups(x: Multivector, labels: Sequence[str]) -> List[Group]:
    """Eight coefficient groups in printed order, e3e1 instead of canonical e1e3"""
    if x.signature.n != 3 or len(labels) != len(_PRINTED):
        raise SymbolicError("labeled groups are defined for three-generator expansions")
    out = []
    for (name, mask, sign), label in zip(_PRINTED, labels):
        value = x.coefficient(mask)
        out.append(Group(name, label, value if sign > 0 else -value))
    return out


@lru_cache(maxsize=None)
def nabla_groups() -> Tuple[Group, ...]:
    return tuple(labeled_groups(nabla_product("A"), NABLA_A_LABELS))


@lru_cache(maxsize=None)
def maxwell_groups() -> Tuple[Group, ...]:
    return tuple(labeled_groups(nabla_F_product(), NABLA_F_LABELS))

# }}}


# {{{ Weyl split over formal phi

def _formal_matrix(rows: Sequence[Sequence[Any]]) -> Tuple[Tuple[FormalSum, ...], ...]:
    return tuple(tuple(_as_formal(v) for v in r) for r in rows)


def formal_dh_matrix() -> Tuple[Tuple[FormalSum, ...], ...]:
    """Closed-form Dirac-Hestenes matrix over formal phi1..phi4 and their conjugates"""
    p = [FormalSum.field("phi", k) for k in (1, 2, 3, 4)]
    c = [x.conjugate() for x in p]
    return (
        (p[0], -c[1], p[2], c[3]),
        (p[1], c[0], p[3], -c[2]),
        (p[2], c[3], p[0], -c[1]),
        (p[3], -c[2], p[1], c[0]),
    )


@lru_cache(maxsize=None)
def weyl_split_formulas() -> Tuple[Tuple[FormalSum, FormalSum], ...]:
    """
    psi_1..psi_8 with the common factor i/2 pulled out

    Computed as P+- phi gamma_2 gamma_1 over formal entries; psi_j is the upper
    half of column j of phi+ (j = 1..4) or phi- (j = 5..8).
    """
    phi = formal_dh_matrix()
    right = matmul_rows(phi, _formal_matrix(gamma21().rows))
    scale = _as_formal(GAUSSIAN.from_parts(0, -2))
    out = []
    for projector in helicity_projectors():
        half = matmul_rows(_formal_matrix(projector.rows), right)
        for j in range(4):
            out.append((half[0][j] * scale, half[1][j] * scale))
    log.debug("weyl split: %d spinor formulas", len(out))
    return tuple(out)

# }}}
