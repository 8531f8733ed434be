"""
Symmetric Group Characters - Murnaghan-Nakayama evaluation and invariant dimensions of k-qubit systems
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from sympy.utilities.iterables import partitions as sympy_partitions

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing positive parts"""
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(not isinstance(p, int) or p <= 0 for p in parts):
            raise ValueError(f"Partition parts must be positive integers, got {self.parts!r}")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"Partition parts must be weakly decreasing, got {self.parts!r}")
        object.__setattr__(self, 'parts', parts)

    @property
    def n(self):
        return sum(self.parts)

    def __str__(self):
        return '(' + ','.join(str(p) for p in self.parts) + ')'


def _as_partition(value):
    return value if isinstance(value, Partition) else Partition(tuple(value))


def partitions(n):
    """All partitions of n in lexicographic order (largest first part first)"""
    if n < 0:
        raise ValueError(f"Cannot partition a negative integer {n}")
    if n == 0:
        return [Partition(())]
    found = []
    for multiplicities in sympy_partitions(n):
        parts = []
        for part, count in sorted(multiplicities.items(), reverse=True):
            parts.extend([part] * count)
        found.append(Partition(tuple(parts)))
    return sorted(found, reverse=True)


def z_mu(mu):
    """Centralizer order prod_i i^{m_i} m_i! of a permutation of cycle type mu"""
    mu = _as_partition(mu)
    result = 1
    for part in set(mu.parts):
        count = mu.parts.count(part)
        result *= part ** count * factorial(count)
    return result


@lru_cache(maxsize=None)
def _border_strip_sum(shape, cycles):
    if not cycles:
        return 1 if not shape else 0
    length = cycles[0]
    rows = len(shape)
    betas = [shape[i] + rows - 1 - i for i in range(rows)]
    occupied = set(betas)
    total = 0
    for beta in betas:
        lowered = beta - length
        if lowered < 0 or lowered in occupied:
            continue
        height = sum(1 for other in betas if lowered < other < beta)
        new_betas = sorted((lowered if b == beta else b for b in betas), reverse=True)
        new_shape = tuple(p for p in (b - (rows - 1 - i) for i, b in enumerate(new_betas)) if p > 0)
        total += (-1) ** height * _border_strip_sum(new_shape, cycles[1:])
    return total


def mn_character(lam, mu):
    """Irreducible character chi^lam at the class of cycle type mu (border-strip recursion)"""
    lam, mu = _as_partition(lam), _as_partition(mu)
    if lam.n != mu.n:
        raise ValueError(f"Partition sizes differ: |{lam}| = {lam.n}, |{mu}| = {mu.n}")
    return _border_strip_sum(lam.parts, mu.parts)


def dim_invariants(d, qubits=5):
    """Dimension of degree-d SL2^k invariants: sum over mu |- d of chi^{(m,m)}(mu)^k / z_mu.

    Odd degrees have no invariants. The rational sum must clear to an integer.
    """
    if d < 0:
        raise ValueError(f"Degree must be non-negative, got {d}")
    if qubits < 1:
        raise ValueError(f"Number of qubits must be positive, got {qubits}")
    if d % 2:
        return 0
    m = d // 2
    shape = (m, m) if m else ()
    total = Fraction(0)
    for mu in partitions(d):
        chi = _border_strip_sum(shape, mu.parts)
        if chi:
            total += Fraction(chi ** qubits, z_mu(mu))
    if total.denominator != 1 or total < 0:
        raise ArithmeticError(f"Character sum at degree {d} is {total}, not a non-negative integer")
    return int(total)


def dimension_series(max_degree, qubits=5):
    return [dim_invariants(d, qubits) for d in range(max_degree + 1)]
