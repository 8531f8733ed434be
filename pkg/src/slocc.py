"""
SLOCC Action - unimodular local operations on 5-qubit amplitude tensors
"""
import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from .scalars import QuadExt
from .states import PureState5

logger = logging.getLogger(__name__)


class InvalidOperationError(ValueError):
    """Raised when a local operation is not unimodular"""


def _matrix(entries):
    (a, b), (c, d) = entries
    return ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d)))


def determinant(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


@dataclass(frozen=True)
class LocalOperation:
    """Five 2x2 rational matrices, one per slot, each of determinant exactly 1"""
    matrices: tuple

    def __post_init__(self):
        matrices = tuple(_matrix(m) for m in self.matrices)
        if len(matrices) != 5:
            raise InvalidOperationError(f"Need five matrices, got {len(matrices)}")
        for slot, m in enumerate(matrices):
            det = determinant(m)
            if det != 1:
                raise InvalidOperationError(f"Matrix for slot {slot} has determinant {det}, not 1")
        object.__setattr__(self, 'matrices', matrices)

    @classmethod
    def identity(cls):
        return cls(tuple(((1, 0), (0, 1)) for _ in range(5)))


def sl2_from_parameters(b, c, b2):
    """[[1,b],[0,1]] . [[1,0],[c,1]] . [[1,b2],[0,1]]"""
    b, c, b2 = Fraction(b), Fraction(c), Fraction(b2)
    return ((1 + b * c, (1 + b * c) * b2 + b), (c, c * b2 + 1))


def _random_rational(rng, bound):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_sl2(seed, bound=5):
    """Seeded unimodular matrix from three elementary triangular factors.

    Args:
        seed: int seed or a random.Random to draw from
        bound: bound on numerators (absolute) and denominators of b, c, b'
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    rng = _rng(seed)
    b, c, b2 = (_random_rational(rng, bound) for _ in range(3))
    return sl2_from_parameters(b, c, b2)


def random_local_operation(seed, bound=5):
    rng = _rng(seed)
    return LocalOperation(tuple(random_sl2(rng, bound) for _ in range(5)))


def random_state(seed, bound=5):
    """Seeded rational state with amplitudes p/q, |p| <= bound, 1 <= q <= bound"""
    rng = _rng(seed)
    return PureState5(tuple(QuadExt(_random_rational(rng, bound)) for _ in range(32)))


def random_product_state(seed, bound=5):
    """Seeded product state a (x) b (x) c (x) d (x) e of rational qubit vectors"""
    rng = _rng(seed)
    factors = [(_random_rational(rng, bound), _random_rational(rng, bound)) for _ in range(5)]
    amplitudes = []
    for index in range(32):
        bits = f"{index:05b}"
        value = Fraction(1)
        for (v0, v1), bit in zip(factors, bits):
            value *= v1 if bit == '1' else v0
        amplitudes.append(QuadExt(value))
    return PureState5(tuple(amplitudes))


def apply_slocc(g, psi):
    """A'_{j1..j5} = sum_i g1[j1][i1] ... g5[j5][i5] A_{i1..i5}, one slot at a time"""
    if not isinstance(g, LocalOperation):
        g = LocalOperation(tuple(g))
    amplitudes = list(psi.amplitudes)
    for position, m in enumerate(g.matrices):
        shift = 4 - position
        updated = [None] * 32
        for index in range(32):
            j = (index >> shift) & 1
            base = index & ~(1 << shift)
            a0 = amplitudes[base]
            a1 = amplitudes[base | (1 << shift)]
            updated[index] = a0 * m[j][0] + a1 * m[j][1]
        amplitudes = updated
    return PureState5(tuple(amplitudes), psi.radicand)
