"""
Tests for symmetric group characters and invariant dimensions
"""
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

import pytest

from src.characters import Partition, dim_invariants, dimension_series, mn_character, partitions, z_mu

FIVE_QUBITS = [1, 0, 0, 0, 5, 0, 1, 0, 36, 0, 15, 0, 228, 0, 231, 0, 1313, 0, 1939, 0, 6971]
FOUR_QUBITS = [1, 0, 1, 0, 3, 0, 4, 0, 7, 0, 9, 0, 14, 0, 17, 0, 24]


def cycle_type(perm):
    seen, lengths = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        length, i = 0, start
        while i not in seen:
            seen.add(i)
            i = perm[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def brute_force_character(shape, perm):
    """chi^(2,2) = fixed 2-subsets - fixed points; chi^(3,1) = fixed points - 1"""
    fixed = sum(1 for i, image in enumerate(perm) if i == image)
    if shape == (3, 1):
        return fixed - 1
    fixed_pairs = sum(1 for pair in combinations(range(4), 2) if {perm[i] for i in pair} == set(pair))
    return fixed_pairs - fixed


class TestPartitions:
    def test_lexicographic_order(self):
        assert [p.parts for p in partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_counts(self):
        assert [len(partitions(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]

    def test_validation(self):
        with pytest.raises(ValueError):
            Partition((1, 2))
        with pytest.raises(ValueError):
            Partition((2, 0))
        with pytest.raises(ValueError):
            partitions(-1)


class TestCentralizer:
    @pytest.mark.parametrize('mu,expected', [
        ((1, 1, 1, 1), 24), ((2, 1, 1), 4), ((2, 2), 8), ((3, 1), 3), ((4,), 4), ((), 1),
    ])
    def test_examples(self, mu, expected):
        assert z_mu(mu) == expected

    def test_class_sizes_sum_to_group_order(self):
        for n in range(1, 8):
            assert sum(Fraction(factorial(n), z_mu(mu)) for mu in partitions(n)) == factorial(n)


class TestMurnaghanNakayama:
    @pytest.mark.parametrize('mu,expected', [
        ((1, 1, 1, 1), 2), ((3, 1), -1), ((2, 2), 2), ((2, 1, 1), 0), ((4,), 0),
    ])
    def test_two_two_shape(self, mu, expected):
        assert mn_character((2, 2), mu) == expected

    def test_against_brute_force_on_s4(self):
        for perm in permutations(range(4)):
            mu = cycle_type(perm)
            for shape in ((2, 2), (3, 1)):
                assert mn_character(shape, mu) == brute_force_character(shape, perm)

    def test_trivial_and_sign(self):
        for mu in partitions(5):
            assert mn_character((5,), mu) == 1
            sign = (-1) ** (5 - len(mu.parts))
            assert mn_character((1, 1, 1, 1, 1), mu) == sign

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            mn_character((2, 2), (3,))

    def test_orthogonality(self):
        for n in range(1, 9):
            shapes = partitions(n)
            for lam in shapes:
                for nu in shapes:
                    inner = sum(Fraction(mn_character(lam, mu) * mn_character(nu, mu), z_mu(mu))
                                for mu in shapes)
                    assert inner == (1 if lam == nu else 0)


class TestInvariantDimensions:
    def test_five_qubits(self):
        assert dimension_series(20) == FIVE_QUBITS

    def test_four_qubits(self):
        assert dimension_series(16, qubits=4) == FOUR_QUBITS

    def test_small_systems(self):
        assert dimension_series(12, qubits=3) == [1 if d % 4 == 0 else 0 for d in range(13)]
        assert dimension_series(12, qubits=2) == [1 if d % 2 == 0 else 0 for d in range(13)]
        assert dimension_series(12, qubits=1) == [1] + [0] * 12

    def test_odd_degrees_vanish(self):
        assert all(dim_invariants(d) == 0 for d in range(1, 21, 2))

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            dim_invariants(-2)
        with pytest.raises(ValueError):
            dim_invariants(4, qubits=0)
