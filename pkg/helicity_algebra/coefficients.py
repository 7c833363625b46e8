"""
Coefficient rings
A ring supplies zero/one, conversions, complex conjugation and a zero test;
element arithmetic (+, -, *) is done with the elements' own operators.
"""
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Tuple, Union

import numpy as np
from sympy.polys.domains import QQ, QQ_I

from .errors import RingMismatchError, SerializationError

Rational = Union[int, Fraction]


def _qq(value: Rational) -> Any:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _fraction(q: Any) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def format_fraction(value: Fraction) -> str:
    """Render a rational as 'num/den' (denominator always present)"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Parse 'num/den' or a plain integer string"""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise SerializationError(f"invalid rational {text!r}") from None


class CoefficientRing(ABC):
    """Ring contract used by the multivector kernel"""

    name: str = "ring"
    exact: bool = True

    @property
    @abstractmethod
    def zero(self) -> Any: ...

    @property
    @abstractmethod
    def one(self) -> Any: ...

    @abstractmethod
    def from_parts(self, re: Rational, im: Rational = 0) -> Any:
        """Build the element re + i*im"""

    @abstractmethod
    def conjugate(self, x: Any) -> Any: ...

    @abstractmethod
    def is_zero(self, x: Any) -> bool: ...

    @abstractmethod
    def coerce(self, value: Any) -> Any:
        """Convert an int, Fraction or native element into this ring"""

    def from_int(self, n: int) -> Any:
        return self.from_parts(n, 0)

    @property
    def i(self) -> Any:
        return self.from_parts(0, 1)

    def half(self) -> Any:
        return self.from_parts(Fraction(1, 2), 0)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class GaussianRationalRing(CoefficientRing):
    """Exact complex rationals, backed by sympy's QQ_I domain"""

    name = "gaussian"
    exact = True

    @property
    def zero(self) -> Any:
        return QQ_I.zero

    @property
    def one(self) -> Any:
        return QQ_I.one

    def from_parts(self, re: Rational, im: Rational = 0) -> Any:
        return QQ_I(_qq(re), _qq(im))

    def conjugate(self, x: Any) -> Any:
        return QQ_I(x.x, -x.y)

    def is_zero(self, x: Any) -> bool:
        return x == QQ_I.zero

    def coerce(self, value: Any) -> Any:
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            return self.from_parts(int(value))
        if isinstance(value, Fraction):
            return self.from_parts(value)
        if isinstance(value, complex):
            raise RingMismatchError("floating complex values cannot enter the exact ring")
        if hasattr(value, "x") and hasattr(value, "y"):
            return QQ_I(value.x, value.y)
        if hasattr(value, "numerator") and hasattr(value, "denominator"):
            return self.from_parts(Fraction(int(value.numerator), int(value.denominator)))
        raise RingMismatchError(f"cannot coerce {value!r} into the Gaussian rationals")

    def parts(self, x: Any) -> Tuple[Fraction, Fraction]:
        """Real and imaginary parts as Fractions"""
        return _fraction(x.x), _fraction(x.y)

    def to_complex(self, x: Any) -> complex:
        re, im = self.parts(x)
        return complex(float(re), float(im))

    def sample(self, rng: np.random.Generator, spread: int = 4) -> Any:
        """Random small Gaussian rational (nonzero denominators up to 3)"""
        re = Fraction(int(rng.integers(-spread, spread + 1)), int(rng.integers(1, 4)))
        im = Fraction(int(rng.integers(-spread, spread + 1)), int(rng.integers(1, 4)))
        return self.from_parts(re, im)

    def sample_real(self, rng: np.random.Generator, spread: int = 4) -> Any:
        re = Fraction(int(rng.integers(-spread, spread + 1)), int(rng.integers(1, 4)))
        return self.from_parts(re)

    def format(self, x: Any) -> str:
        re, im = self.parts(x)
        if im == 0:
            return str(re)
        if re == 0:
            return "i" if im == 1 else "-i" if im == -1 else f"{im}i"
        sign = "+" if im > 0 else "-"
        mag = abs(im)
        return f"({re}{sign}{'' if mag == 1 else mag}i)"


class ComplexFloatRing(CoefficientRing):
    """Double-precision complex numbers"""

    name = "float"
    exact = False

    @property
    def zero(self) -> complex:
        return 0j

    @property
    def one(self) -> complex:
        return 1 + 0j

    def from_parts(self, re: Rational, im: Rational = 0) -> complex:
        return complex(float(re), float(im))

    def conjugate(self, x: complex) -> complex:
        return complex(x).conjugate()

    def is_zero(self, x: complex) -> bool:
        return x == 0

    def coerce(self, value: Any) -> complex:
        if hasattr(value, "x") and hasattr(value, "y"):
            return GAUSSIAN.to_complex(value)
        try:
            return complex(value)
        except TypeError:
            raise RingMismatchError(f"cannot coerce {value!r} into floating complex") from None

    def to_complex(self, x: complex) -> complex:
        return complex(x)

    def format(self, x: complex) -> str:
        return repr(complex(x))


GAUSSIAN = GaussianRationalRing()
FLOAT = ComplexFloatRing()
