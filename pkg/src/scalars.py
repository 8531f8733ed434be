"""
Exact Scalar Domains - rationals, quadratic extensions and first-order jets
"""
import logging
from fractions import Fraction
from functools import lru_cache

from sympy import factorint

logger = logging.getLogger(__name__)

AMPLITUDE_COUNT = 32


class DomainError(ValueError):
    """Raised when two scalars live in incompatible domains (radicand mismatch)"""


def to_fraction(value):
    """Parse an int, Fraction or 'p/q' string into an exact Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError(f"Refusing to treat boolean {value!r} as a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch not in '+-0123456789/' for ch in text):
            raise ValueError(f"Not an exact fraction string: {value!r}")
        return Fraction(text)
    raise TypeError(f"Cannot convert {type(value).__name__} to an exact rational")


@lru_cache(maxsize=None)
def is_square_free(n):
    """True for positive integers with no repeated prime factor (1 counts as square-free)"""
    if n < 1:
        return False
    return all(exponent == 1 for exponent in factorint(n).values())


class QuadExt:
    """Exact number a + b*sqrt(n) with rational a, b and square-free radicand n.

    A value whose surd part is zero is purely rational and combines with a
    QuadExt of any radicand. Two values with nonzero surd parts must share
    the radicand, otherwise a DomainError is raised.
    """

    __slots__ = ('rat_part', 'surd_part', 'radicand')

    def __init__(self, rat_part=0, surd_part=0, radicand=1):
        rat_part = to_fraction(rat_part)
        surd_part = to_fraction(surd_part)
        if not is_square_free(radicand):
            raise DomainError(f"Radicand {radicand} is not a square-free positive integer")
        if radicand == 1:
            rat_part, surd_part = rat_part + surd_part, Fraction(0)
        elif surd_part == 0:
            radicand = 1
        self.rat_part = rat_part
        self.surd_part = surd_part
        self.radicand = radicand

    @classmethod
    def coerce(cls, value):
        if isinstance(value, QuadExt):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls(value)
        return None

    @property
    def is_rational(self):
        return self.surd_part == 0

    def _common_radicand(self, other):
        if self.is_rational:
            return other.radicand
        if other.is_rational or other.radicand == self.radicand:
            return self.radicand
        raise DomainError(f"Cannot combine sqrt({self.radicand}) with sqrt({other.radicand})")

    def __add__(self, other):
        other = QuadExt.coerce(other)
        if other is None:
            return NotImplemented
        n = self._common_radicand(other)
        return QuadExt(self.rat_part + other.rat_part, self.surd_part + other.surd_part, n)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.rat_part, -self.surd_part, self.radicand)

    def __sub__(self, other):
        other = QuadExt.coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = QuadExt.coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = QuadExt.coerce(other)
        if other is None:
            return NotImplemented
        n = self._common_radicand(other)
        a, b = self.rat_part, self.surd_part
        c, d = other.rat_part, other.surd_part
        return QuadExt(a * c + n * b * d, a * d + b * c, n)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = QuadExt(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __truediv__(self, other):
        # exact division by a nonzero rational only
        divisor = to_fraction(other) if not isinstance(other, QuadExt) else None
        if divisor is None:
            if not other.is_rational:
                return NotImplemented
            divisor = other.rat_part
        if divisor == 0:
            raise ZeroDivisionError("QuadExt division by zero")
        return QuadExt(self.rat_part / divisor, self.surd_part / divisor, self.radicand)

    def norm(self):
        """Field norm a^2 - n*b^2"""
        return self.rat_part ** 2 - self.radicand * self.surd_part ** 2

    def __bool__(self):
        return self.rat_part != 0 or self.surd_part != 0

    def __eq__(self, other):
        other = QuadExt.coerce(other)
        if other is None:
            return NotImplemented
        return (self.rat_part == other.rat_part and self.surd_part == other.surd_part
                and (self.is_rational or self.radicand == other.radicand))

    def __hash__(self):
        if self.is_rational:
            return hash(self.rat_part)
        return hash((self.rat_part, self.surd_part, self.radicand))

    def __str__(self):
        if self.is_rational:
            return str(self.rat_part)
        surd = f"{abs(self.surd_part)}*sqrt({self.radicand})"
        if self.rat_part == 0:
            return surd if self.surd_part > 0 else f"-{surd}"
        sign = '+' if self.surd_part > 0 else '-'
        return f"{self.rat_part} {sign} {surd}"

    def __repr__(self):
        return f"QuadExt({self.rat_part!s}, {self.surd_part!s}, {self.radicand})"

    def to_dict(self):
        return {'a': str(self.rat_part), 'b': str(self.surd_part)}


class Jet:
    """First-order jet: an exact value with its 32 partial derivatives.

    Arithmetic follows the product rule so that pushing jets through any
    polynomial pipeline yields the exact gradient at the seed point.
    """

    __slots__ = ('value', 'partials')

    def __init__(self, value, partials=None):
        self.value = to_fraction(value)
        if partials is None:
            partials = (Fraction(0),) * AMPLITUDE_COUNT
        self.partials = tuple(partials)

    @classmethod
    def variable(cls, value, index):
        partials = [Fraction(0)] * AMPLITUDE_COUNT
        partials[index] = Fraction(1)
        return cls(value, partials)

    @staticmethod
    def _lift(other):
        if isinstance(other, Jet):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Jet(other)
        return None

    def __add__(self, other):
        other = Jet._lift(other)
        if other is None:
            return NotImplemented
        return Jet(self.value + other.value,
                   tuple(p + q for p, q in zip(self.partials, other.partials)))

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.value, tuple(-p for p in self.partials))

    def __sub__(self, other):
        other = Jet._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Jet._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Jet(self.value * other, tuple(p * other for p in self.partials))
        if not isinstance(other, Jet):
            return NotImplemented
        u, v = self.value, other.value
        return Jet(u * v, tuple(u * q + v * p for p, q in zip(self.partials, other.partials)))

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        if exponent == 0:
            return Jet(1)
        scale = exponent * self.value ** (exponent - 1)
        return Jet(self.value ** exponent, tuple(scale * p for p in self.partials))

    def __truediv__(self, other):
        other = to_fraction(other)
        return Jet(self.value / other, tuple(p / other for p in self.partials))

    def __bool__(self):
        return self.value != 0 or any(self.partials)

    def __eq__(self, other):
        other = Jet._lift(other)
        if other is None:
            return NotImplemented
        return self.value == other.value and self.partials == other.partials

    def __hash__(self):
        return hash((self.value, self.partials))

    def __repr__(self):
        nonzero = {i: str(p) for i, p in enumerate(self.partials) if p}
        return f"Jet({self.value!s}, {nonzero})"
