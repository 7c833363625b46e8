"""
Central idempotents of odd complex algebras C_{2k+1}
Ideal split, the quotient map onto C_{2k} and the spinspace layouts.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Tuple

from .algebra import (
    Multivector,
    Signature,
    commutator,
    pseudo_conjugate,
    reversion,
    volume_element,
)
from .coefficients import GAUSSIAN
from .errors import DimensionError, HelicityAlgebraError, IdealMembershipError, ParityError
from .matrices import ExactMatrix

log = logging.getLogger(__name__)

PLUS = "plus"
MINUS = "minus"
UNION = "union"
DIRECT_SUM = "direct-sum"


def _side(side: str) -> str:
    normalized = {"plus": PLUS, "+": PLUS, "minus": MINUS, "-": MINUS}.get(str(side).lower())
    if normalized is None:
        raise HelicityAlgebraError(f"side must be 'plus' or 'minus', got {side!r}")
    return normalized


def _check_odd(n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise ParityError(f"n must be odd, got {n}")
    return (n - 1) // 2


def epsilon_for(n: int) -> Any:
    """1 when k = (n-1)/2 is even, i when k is odd"""
    k = _check_odd(n)
    return GAUSSIAN.one if k % 2 == 0 else GAUSSIAN.i


def epsilon_label(n: int) -> str:
    return "1" if epsilon_for(n) == GAUSSIAN.one else "i"


@dataclass(frozen=True)
class IdempotentPair:
    """lambda+- = (1 +- epsilon omega) / 2, stored plus-first"""
    n: int
    lambda_plus: Multivector
    lambda_minus: Multivector
    epsilon: Any

    def get(self, side: str) -> Multivector:
        return self.lambda_plus if _side(side) == PLUS else self.lambda_minus

    def verify(self) -> Dict[str, bool]:
        """Idempotent laws under the exact product"""
        lp, lm = self.lambda_plus, self.lambda_minus
        sig = lp.signature
        one = Multivector.scalar(sig)
        generators = [Multivector.generator(sig, i) for i in range(1, sig.n + 1)]
        return {
            "plus_idempotent": lp * lp == lp,
            "minus_idempotent": lm * lm == lm,
            "annihilating": (lp * lm).is_zero() and (lm * lp).is_zero(),
            "partition_of_unity": lp + lm == one,
            "central": all(commutator(lam, g).is_zero() for lam in (lp, lm) for g in generators),
        }

    def conjugation_swaps(self) -> bool:
        """True when pseudo-conjugation exchanges lambda+ and lambda-"""
        return pseudo_conjugate(self.lambda_plus) == self.lambda_minus


@lru_cache(maxsize=None)
def central_idempotents(n: int) -> IdempotentPair:
    eps = epsilon_for(n)
    sig = Signature.complex(n)
    half = GAUSSIAN.half()
    one = Multivector.scalar(sig)
    eps_omega = volume_element(sig) * eps
    return IdempotentPair(n, (one + eps_omega) * half, (one - eps_omega) * half, eps)


def _odd_complex(x: Multivector) -> int:
    sig = x.signature
    if not sig.complexified:
        raise ParityError(f"projection needs a complexified algebra, got {sig}")
    _check_odd(sig.n)
    return sig.n


def project(phi: Multivector, side: str) -> Multivector:
    """lambda+- phi"""
    n = _odd_complex(phi)
    return central_idempotents(n).get(side) * phi


def in_ideal(x: Multivector, side: str) -> bool:
    return project(x, side) == x


@lru_cache(maxsize=None)
def _top_generator_image(n: int, side: str) -> Multivector:
    """Image of e_n in C_{n-1}: +-epsilon^{-1} (e_1 ... e_{n-1})^{-1}"""
    eps = epsilon_for(n)
    target = Signature.complex(n - 1)
    inverse = reversion(volume_element(target))
    factor = GAUSSIAN.conjugate(eps)
    if side == MINUS:
        factor = -factor
    return inverse * factor


def quotient_map(x: Multivector, side: str) -> Multivector:
    """
    Map an element of the ideal lambda+- C_{2k+1} onto C_{2k}

    Blades without e_n keep their name; e_n is replaced by its image, which
    makes the map an algebra homomorphism sending lambda+- to 1.

    Raises:
        IdealMembershipError: x is not fixed by lambda+-
    """
    side = _side(side)
    n = _odd_complex(x)
    if not in_ideal(x, side):
        raise IdealMembershipError(f"element is not in the lambda_{side} ideal of C{n}")
    target = Signature.complex(n - 1)
    top = 1 << (n - 1)
    image_top = _top_generator_image(n, side)
    acc = Multivector.zero(target, x.ring)
    for mask, coeff in x.terms.items():
        lower = Multivector(target, {mask & ~top: coeff}, x.ring)
        acc = acc + (lower * image_top if mask & top else lower)
    return acc


def union_images(x: Multivector) -> Tuple[Multivector, Multivector]:
    """Ordered pair of both quotient images (the components of the union)"""
    n = _odd_complex(x)
    pair = central_idempotents(n)
    return quotient_map(pair.lambda_plus * x, PLUS), quotient_map(pair.lambda_minus * x, MINUS)


def ideal_basis_rank(n: int, side: str) -> int:
    """Rank of the quotient images of lambda+- times every basis blade"""
    side = _side(side)
    _check_odd(n)
    sig = Signature.complex(n)
    lam = central_idempotents(n).get(side)
    width = 1 << (n - 1)
    rows = []
    for mask in range(1 << n):
        image = quotient_map(lam * Multivector(sig, {mask: 1}), side)
        rows.append([image.coefficient(m) for m in range(width)])
    rank = ExactMatrix(rows).rank()
    log.debug("C%d %s ideal: quotient image rank %d", n, side, rank)
    return rank


# {{{ spinspace layouts

DOT = "\u0307"


def _dotted(label: str) -> str:
    return "".join(ch + DOT for ch in label)


@dataclass(frozen=True)
class SpinspaceLayout:
    """
    Labeled spinor-component matrix

    Union cells hold an ordered pair of labels; direct-sum cells hold one
    label, with "0" off the diagonal blocks.
    """
    kind: str
    rank: int
    cells: Tuple[Tuple[Tuple[str, ...], ...], ...]

    def render(self) -> str:
        lines = []
        for row in self.cells:
            if self.kind == UNION:
                lines.append(" ".join(f"[{','.join(cell)}]" for cell in row))
            else:
                lines.append(" ".join(cell[0] for cell in row))
        return "\n".join(lines)


def _labels(rank: int):
    bits = rank.bit_length() - 1
    return [[f"{row:0{bits}b}{col:0{bits}b}" for col in range(rank)] for row in range(rank)]


def spinspace_layout(rank: int, kind: str = UNION) -> SpinspaceLayout:
    if rank not in (2, 4):
        raise DimensionError(f"spinspace rank must be 2 or 4, got {rank}")
    labels = _labels(rank)
    if kind == UNION:
        cells = tuple(tuple((lab, _dotted(lab)) for lab in row) for row in labels)
    elif kind == DIRECT_SUM:
        zero = "0"
        rows = []
        for row in labels:
            rows.append(tuple((lab,) for lab in row) + tuple((zero,) for _ in row))
        for row in labels:
            rows.append(tuple((zero,) for _ in row) + tuple((_dotted(lab),) for lab in row))
        cells = tuple(rows)
    else:
        raise HelicityAlgebraError(f"layout kind must be 'union' or 'direct-sum', got {kind!r}")
    return SpinspaceLayout(kind, rank, cells)


def conjugate_layout(layout: SpinspaceLayout) -> SpinspaceLayout:
    """Pseudo-conjugation: undotted and dotted parts change places"""
    if layout.kind == UNION:
        cells = tuple(tuple(tuple(reversed(cell)) for cell in row) for row in layout.cells)
        return SpinspaceLayout(layout.kind, layout.rank, cells)
    r = layout.rank
    rows = [row[r:] + row[:r] for row in layout.cells]
    return SpinspaceLayout(layout.kind, r, tuple(rows[r:] + rows[:r]))

# }}}


@dataclass(frozen=True)
class DecompositionReport:
    n: int
    pair: IdempotentPair
    laws: Dict[str, bool]
    swap: bool

    @property
    def ok(self) -> bool:
        return all(self.laws.values())


def decompose(n: int, max_n: int = 9) -> DecompositionReport:
    """Idempotents of C_n with every law checked and the conjugation behavior"""
    _check_odd(n)
    if n > max_n:
        raise DimensionError(f"decompose supports n <= {max_n}, got {n}")
    pair = central_idempotents(n)
    laws = pair.verify()
    log.info("C%d: epsilon=%s laws=%s", n, epsilon_label(n), laws)
    return DecompositionReport(n, pair, laws, pair.conjugation_swaps())

