"""
Tests for the iterated residue engine
"""
from fractions import Fraction
from itertools import permutations

import pytest
import sympy as sp

from src.characters import dimension_series
from src.polynomial import Poly, make_monomial
from src.residue import (
    ContourOrder, FactoredRational, FactoredTerm, UnsupportedDegeneracyError, build_integrand,
    hilbert_series_residue, inner_residue, naive_constant_term,
)


def single_term(numerator, factors):
    """One FactoredTerm; factors maps {name: exponent} dicts to multiplicities"""
    keys = {(1, make_monomial(exponents)): mult for exponents, mult in factors}
    return FactoredRational([FactoredTerm(numerator, keys)])


@pytest.fixture
def order_one():
    return ContourOrder.default(1)


class TestIntegrand:
    def test_shape(self):
        F = build_integrand(3)
        assert len(F) == 1
        term = F.terms[0]
        assert len(term.factors) == 8
        assert len(term.numerator) == 8
        assert F.variables() == {'t', 'u_1', 'u_2', 'u_3'}

    def test_weyl_sign(self):
        minus = build_integrand(1).terms[0].numerator
        plus = build_integrand(1, weyl_sign=1).terms[0].numerator
        assert minus.coefficient({'u_1': -3}) == -1
        assert plus.coefficient({'u_1': -3}) == 1

    @pytest.mark.parametrize('kwargs', [{'k': 0}, {'k': 6}, {'k': 2, 'weyl_sign': 0}])
    def test_rejects_bad_arguments(self, kwargs):
        with pytest.raises(ValueError):
            build_integrand(**kwargs)


class TestInnerResidue:
    def test_outside_pole_only(self, order_one):
        F = single_term(Poly.monomial({'u_1': -1}), [({'t': 1, 'u_1': 1}, 1)])
        result = inner_residue(F, 'u_1', order_one)
        assert result.series(3) == [1, 0, 0, 0]

    def test_inside_pole(self, order_one):
        F = single_term(Poly.monomial({'u_1': -1}), [({'t': 1, 'u_1': -1}, 1)])
        result = inner_residue(F, 'u_1', order_one)
        assert 'u_1' not in result.variables()
        assert result.series(3) == [1, 0, 0, 0]

    def test_double_inside_pole(self, order_one):
        F = single_term(Poly.constant(Fraction(1)), [({'t': 1, 'u_1': -1}, 2)])
        result = inner_residue(F, 'u_1', order_one)
        assert result.series(3) == [0, 2, 0, 0]

    def test_unsupported_degeneracy(self, order_one):
        F = single_term(Poly.constant(Fraction(1)), [({'t': 1, 'u_1': -3}, 1)])
        with pytest.raises(UnsupportedDegeneracyError):
            inner_residue(F, 'u_1', order_one)

    def test_eliminates_variables_in_order(self):
        order = ContourOrder.default(3)
        F = build_integrand(3)
        for var in order.integration_sequence():
            F = inner_residue(F, var, order)
            assert var not in F.variables()
        assert F.variables() <= {'t'}


class TestHilbertSeriesResidue:
    @pytest.mark.parametrize('k', [1, 2, 3])
    def test_matches_character_sums(self, k):
        assert hilbert_series_residue(k).series(12) == dimension_series(12, qubits=k)

    def test_two_qubits_every_order(self):
        for tail in permutations(['u_1', 'u_2']):
            order = ContourOrder(('t',) + tail)
            assert hilbert_series_residue(2, order).series(10) == dimension_series(10, qubits=2)

    @pytest.mark.parametrize('tail', [('u_1', 'u_2', 'u_3'), ('u_2', 'u_3', 'u_1'), ('u_3', 'u_1', 'u_2')])
    def test_three_qubits_other_orders(self, tail):
        order = ContourOrder(('t',) + tail)
        assert hilbert_series_residue(3, order).series(12) == dimension_series(12, qubits=3)

    @pytest.mark.slow
    def test_four_qubits(self):
        t = sp.Symbol('t')
        closed = 1 / ((1 - t ** 2) * (1 - t ** 4) ** 2 * (1 - t ** 6))
        expansion = sp.series(closed, t, 0, 13).removeO()
        coefficients = hilbert_series_residue(4).series(12)
        assert coefficients == dimension_series(12, qubits=4)
        assert coefficients == [expansion.coeff(t, n) for n in range(13)]

    def test_closed_form_two_qubits(self):
        t = sp.Symbol('t')
        expr = hilbert_series_residue(2).to_sympy()
        assert sp.simplify(expr - 1 / (1 - t ** 2)) == 0

    def test_five_qubits_need_allow_long(self):
        with pytest.raises(ValueError):
            hilbert_series_residue(5)

    def test_order_must_match_qubits(self):
        with pytest.raises(ValueError):
            hilbert_series_residue(2, ContourOrder.default(3))


class TestWeylSign:
    def test_naive_constant_term(self):
        assert naive_constant_term(5, 2, weyl_sign=1) == 122
        assert naive_constant_term(5, 2, weyl_sign=-1) == 0

    def test_printed_sign_overcounts(self):
        assert hilbert_series_residue(1, weyl_sign=1).series(8) == [1, 0, 2, 0, 2, 0, 2, 0, 2]
        assert hilbert_series_residue(1).series(8) == [1] + [0] * 8


class TestContourOrder:
    def test_default(self):
        order = ContourOrder.default(3)
        assert order.variables == ('t', 'u_3', 'u_2', 'u_1')
        assert order.integration_sequence() == ('u_1', 'u_2', 'u_3')
        assert order.qubits == 3

    def test_smallness(self):
        order = ContourOrder.default(2)
        assert order.is_small(make_monomial({'t': 1, 'u_1': -5}))
        assert not order.is_small(make_monomial({'u_2': -1, 'u_1': 3}))
        assert not order.is_small(())

    @pytest.mark.parametrize('names', [('u_1', 't'), ('t', 'u_1', 'u_1'), ('t', 'u_2'), ()])
    def test_rejects_bad_orders(self, names):
        with pytest.raises(ValueError):
            ContourOrder(names)
