"""
Covariant Fingerprints - Table 2 style zero/nonzero patterns and exact Jacobian ranks
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .polynomial import SLOTS
from .scalars import Jet
from .transvectant import (
    covariant_chain, discriminant, ground_form, invariant_F, slot_quadratic,
)

logger = logging.getLogger(__name__)

ROWS = ('Dx', 'Dy', 'Dz', 'Dt', 'Du', 'F', 'Bx', 'C31111', 'E11111')
INVARIANT_NAMES = ('Dx', 'Dy', 'Dz', 'Dt', 'Du', 'F')
NONZERO, ZERO = 'x', '0'


class UnsupportedPointError(ValueError):
    """Raised when jets are requested at a point outside the rationals"""


@dataclass
class Fingerprint:
    """Nonvanishing pattern of the nine covariant rows, plus the exact invariant values"""
    pattern: tuple
    values: dict = field(default_factory=dict)
    slot_quadratics: tuple = ()

    def as_dict(self):
        return dict(zip(ROWS, self.pattern))

    def symbols(self):
        return [NONZERO if flag else ZERO for flag in self.pattern]


def evaluate_invariants(f, names=INVARIANT_NAMES):
    """Evaluate named invariants on one ground form, sharing the covariant chain"""
    values = {}
    for name in names:
        if name == 'F':
            values[name] = invariant_F(f)
        elif name in INVARIANT_NAMES:
            values[name] = discriminant(slot_quadratic(f, name[1]))
        else:
            raise ValueError(f"Unknown invariant {name!r}; expected one of {', '.join(INVARIANT_NAMES)}")
    return values


def fingerprint(psi):
    """Evaluate the nine rows of the covariant table on a state, numerically"""
    if psi.is_zero:
        raise ValueError("Cannot fingerprint the zero state")
    f = ground_form(psi)
    quadratics = tuple(slot_quadratic(f, slot) for slot in SLOTS)
    D = [discriminant(b) for b in quadratics]
    chain = covariant_chain(f)
    F = invariant_F(f, chain)
    pattern = tuple(bool(v) for v in D) + (
        bool(F),
        not quadratics[0].is_zero,
        not chain.C31111.is_zero,
        not chain.E11111.is_zero,
    )
    values = dict(zip(INVARIANT_NAMES, D + [F]))
    logger.debug(f"Fingerprint {''.join(NONZERO if p else ZERO for p in pattern)}")
    return Fingerprint(pattern, values, tuple(not b.is_zero for b in quadratics))


def compare_table2(computed, table):
    """List the cells where computed fingerprints differ from the published table.

    Args:
        computed: dict state label -> Fingerprint
        table: dict with 'states' (labels) and 'rows' (row -> list of 'x'/'0')

    Returns:
        list of dicts {row, state, expected, computed}
    """
    mismatches = []
    for row in ROWS:
        expected_row = table['rows'][row]
        for label, expected in zip(table['states'], expected_row):
            got = computed[label].as_dict()[row]
            if (expected == NONZERO) != got:
                mismatches.append({
                    'row': row, 'state': label,
                    'expected': expected, 'computed': NONZERO if got else ZERO,
                })
    return mismatches


def fraction_free_rank(matrix):
    """Exact rank by Bareiss elimination on an integer-scaled copy"""
    rows = []
    for row in matrix:
        scale = lcm(*(Fraction(v).denominator for v in row)) if len(row) else 1
        rows.append([int(Fraction(v) * scale) for v in row])
    if not rows:
        return 0
    m = np.array(rows, dtype=object)
    n_rows, n_cols = m.shape
    rank = 0
    previous_pivot = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot_row = next((r for r in range(rank, n_rows) if m[r, col] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != rank:
            m[[rank, pivot_row]] = m[[pivot_row, rank]]
        pivot = m[rank, col]
        for r in range(rank + 1, n_rows):
            # exact integer division is guaranteed by Sylvester's identity
            m[r, :] = (pivot * m[r, :] - m[r, col] * m[rank, :]) // previous_pivot
        previous_pivot = pivot
        rank += 1
    return rank


def jacobian_rows(invariants, point):
    """Gradients (32 partials each) of the named invariants at a rational point"""
    if point.radicand != 1 or not point.is_rational:
        raise UnsupportedPointError(f"Jacobians need a rational point, got radicand {point.radicand}")
    jets = tuple(Jet.variable(a.rat_part, i) for i, a in enumerate(point.amplitudes))
    values = evaluate_invariants(ground_form(jets), invariants)
    rows = []
    for name in invariants:
        value = values[name]
        rows.append(list(value.partials) if isinstance(value, Jet) else [Fraction(0)] * 32)
    return rows


def jacobian_rank(invariants, point):
    """Exact rank over Q of the len(invariants) x 32 Jacobian matrix at point"""
    rank = fraction_free_rank(jacobian_rows(invariants, point))
    logger.debug(f"Jacobian rank of {list(invariants)}: {rank}")
    return rank
