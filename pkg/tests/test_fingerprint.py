"""
Tests for covariant fingerprints, the covariant table comparison and Jacobian ranks
"""
import json
import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy as sp

from src.fingerprint import (
    INVARIANT_NAMES, ROWS, UnsupportedPointError, compare_table2, evaluate_invariants, fingerprint,
    fraction_free_rank, jacobian_rank,
)
from src.polynomial import Poly
from src.slocc import apply_slocc, random_local_operation, random_state
from src.states import PureState5, osterloh_state
from src.transvectant import covariant_chain, ground_form

T, F = True, False

EXPECTED_PATTERNS = {
    1: (T, T, T, T, T, F, T, T, F),
    2: (T, T, F, F, F, F, T, T, T),
    3: (F, F, F, F, F, F, T, T, F),
    4: (F, F, F, F, F, F, T, T, T),
}


@pytest.fixture(scope='module')
def computed():
    return {f"phi{k}": fingerprint(osterloh_state(k)) for k in range(1, 5)}


@pytest.fixture
def table(root):
    with open(root / 'config' / 'table2.json') as f:
        return json.load(f)


class TestFingerprint:
    @pytest.mark.parametrize('k', [1, 2, 3, 4])
    def test_patterns(self, computed, k):
        assert computed[f"phi{k}"].pattern == EXPECTED_PATTERNS[k]

    def test_patterns_are_distinct(self, computed):
        for a, b in combinations(computed.values(), 2):
            assert a.pattern != b.pattern

    def test_values_and_symbols(self, computed):
        fp = computed['phi1']
        assert [fp.values[name] for name in INVARIANT_NAMES] == [4, 4, 4, 4, 4, 0]
        assert fp.symbols() == ['x'] * 5 + ['0', 'x', 'x', '0']
        assert list(fp.as_dict()) == list(ROWS)
        assert computed['phi2'].values['Dx'] == 16

    def test_all_slot_quadratics_recorded(self, computed):
        assert computed['phi1'].slot_quadratics == (T, T, T, T, T)

    @pytest.mark.parametrize('k', [1, 2, 3, 4])
    def test_pattern_survives_slocc(self, computed, k):
        for seed in range(3):
            image = apply_slocc(random_local_operation(seed, 3), osterloh_state(k))
            moved = fingerprint(image)
            assert moved.pattern == computed[f"phi{k}"].pattern
            assert moved.slot_quadratics == computed[f"phi{k}"].slot_quadratics

    def test_zero_state(self):
        with pytest.raises(ValueError):
            fingerprint(PureState5.from_mapping({}))

    def test_c31111_on_ghz_like_state(self):
        C = covariant_chain(osterloh_state(1)).C31111
        expected = Poly.monomial({'x0': 2, 'x1': 1, 'y0': 1, 'z0': 1, 't0': 1, 'u0': 1}, Fraction(2)) \
            + Poly.monomial({'x0': 1, 'x1': 2, 'y1': 1, 'z1': 1, 't1': 1, 'u1': 1}, Fraction(2))
        assert C.body == expected

    def test_evaluate_invariants_rejects_unknown(self, anchor_one):
        with pytest.raises(ValueError):
            evaluate_invariants(ground_form(anchor_one), ['G'])


class TestCompareTable:
    def test_only_c31111_cells_differ(self, computed, table):
        mismatches = compare_table2(computed, table)
        assert {(m['row'], m['state']) for m in mismatches} == {('C31111', 'phi1'), ('C31111', 'phi2')}
        assert all(m['expected'] == '0' and m['computed'] == 'x' for m in mismatches)

    def test_matching_cells(self, computed, table):
        cells = len(ROWS) * len(table['states'])
        assert cells - len(compare_table2(computed, table)) == 34


class TestRank:
    def test_fraction_free_rank_matches_sympy(self):
        rng = random.Random(31)
        for _ in range(10):
            rows = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(7)] for _ in range(5)]
            rows.append([a + b for a, b in zip(rows[0], rows[1])])
            assert fraction_free_rank(rows) == sp.Matrix(rows).rank()

    def test_degenerate_matrices(self):
        assert fraction_free_rank([]) == 0
        assert fraction_free_rank([[0, 0], [0, 0]]) == 0
        assert fraction_free_rank([[0, 1], [0, 2]]) == 1

    def test_zero_point(self):
        assert jacobian_rank(INVARIANT_NAMES, PureState5.from_mapping({})) == 0

    def test_anchor_ranks(self, anchor_one, anchor_two):
        for point in (anchor_one, anchor_two):
            assert jacobian_rank(INVARIANT_NAMES[:5], point) == 5
            assert jacobian_rank(INVARIANT_NAMES, point) == 6

    def test_seeded_point(self):
        assert jacobian_rank(INVARIANT_NAMES, random_state(101)) == 6

    def test_irrational_point(self):
        with pytest.raises(UnsupportedPointError):
            jacobian_rank(INVARIANT_NAMES, osterloh_state(3))
